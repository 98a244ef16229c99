//! Number fields given by a monic defining polynomial, and the splitting of
//! rational primes into prime ideals.
//!
//! Only the splitting *shape* `{(e_i, f_i)}` of each rational prime is
//! tracked; every quantity downstream depends on ideals through norms and
//! factorization combinatorics alone.
//!
//! Supported primes:
//! * degree 1: all primes;
//! * degree 2: all primes, via the Kronecker symbol of the field discriminant;
//! * degree >= 3: primes not dividing `disc(min_poly)` (Dedekind's theorem on
//!   the factorization of `min_poly` mod p), plus any prime with an explicit
//!   override in the config. Other primes are refused with
//!   [`Error::UnsupportedPrime`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{fundamental_discriminant, is_prime, kronecker_symbol, squarefree_part};
use crate::error::{Error, Result};
use crate::irreducible::ensure_irreducible;
use crate::poly_fp::{factor_poly_mod_p, Fp, PolyFp};

/// Default number of good primes used by the factor-degree irreducibility sieve.
pub const DEFAULT_TRIAL_PRIMES: usize = 30;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Invariants {
    pub r1: Option<u32>,
    pub r2: Option<u32>,
    pub h: Option<u64>,
    #[serde(rename = "R")]
    pub regulator: Option<f64>,
    pub w: Option<u32>,
    #[serde(rename = "d_K")]
    pub d_k: Option<i64>,
}

/// Ramification index and residue degree of one prime ideal above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimeShape {
    pub e: u32,
    pub f: u32,
}

/// Shape of the factorization of a rational prime, sorted by `(f, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplittingType {
    factors: Vec<PrimeShape>,
}

impl SplittingType {
    pub fn new(mut factors: Vec<PrimeShape>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidOverride("empty splitting type".into()));
        }
        if factors.iter().any(|s| s.e == 0 || s.f == 0) {
            return Err(Error::InvalidOverride("e and f must be >= 1".into()));
        }
        factors.sort_by_key(|s| (s.f, s.e));
        Ok(SplittingType { factors })
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(e, f)| PrimeShape { e, f }).collect())
    }

    pub fn factors(&self) -> &[PrimeShape] {
        &self.factors
    }

    /// `sum e_i f_i`, which equals the field degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|s| s.e * s.f).sum()
    }

    /// Residue degrees of the prime ideals above `p`, in slot order.
    pub fn residue_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|s| s.f)
    }

    pub fn label(&self) -> &'static str {
        if self.factors.iter().any(|s| s.e > 1) {
            "ramified"
        } else if self.factors.len() == 1 && self.factors[0].f > 1 {
            "inert"
        } else if self.factors.iter().all(|s| s.f == 1) {
            "split"
        } else {
            "partial"
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", s.e, s.f)?;
        }
        write!(f, "]")
    }
}

/// One prime ideal, identified by the rational prime below it and its slot
/// among the primes above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeIdealRef {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub slot: u32,
    pub norm: u64,
}

impl PrimeIdealRef {
    pub fn new(p: u64, shape: PrimeShape, slot: u32) -> Result<Self> {
        let norm = p
            .checked_pow(shape.f)
            .ok_or_else(|| Error::Overflow(format!("norm {p}^{}", shape.f)))?;
        Ok(PrimeIdealRef {
            p,
            f: shape.f,
            e: shape.e,
            slot,
            norm,
        })
    }

    fn key(&self) -> (u64, u64, u32) {
        (self.norm, self.p, self.slot)
    }
}

impl PartialOrd for PrimeIdealRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdealRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Clone, Debug)]
pub struct FieldSpec {
    name: Option<String>,
    min_poly: Vec<i64>,
    invariants: Option<Invariants>,
    overrides: BTreeMap<u64, SplittingType>,
    /// Fundamental discriminant, for quadratic fields only.
    quadratic_disc: Option<i64>,
    hash: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    min_poly: Vec<i64>,
    invariants: Option<Invariants>,
    #[serde(default)]
    overrides: BTreeMap<String, Vec<(u32, u32)>>,
    irreducibility_trial_primes: Option<usize>,
}

/// Parses and validates a field config (TOML).
pub fn parse_field_spec(config_text: &str) -> Result<FieldSpec> {
    let raw: RawConfig =
        toml::from_str(config_text).map_err(|e| Error::Config(e.to_string()))?;
    let mut overrides = BTreeMap::new();
    for (key, pairs) in raw.overrides {
        let p: u64 = key
            .trim()
            .parse()
            .map_err(|_| Error::InvalidOverride(format!("override key {key:?} is not an integer")))?;
        overrides.insert(p, SplittingType::from_pairs(&pairs)?);
    }
    let mut spec = FieldSpec::with_trial_primes(
        raw.min_poly,
        raw.invariants,
        overrides,
        raw.irreducibility_trial_primes.unwrap_or(DEFAULT_TRIAL_PRIMES),
    )?;
    spec.name = raw.name;
    Ok(spec)
}

impl FieldSpec {
    pub fn new(
        min_poly: Vec<i64>,
        invariants: Option<Invariants>,
        overrides: BTreeMap<u64, SplittingType>,
    ) -> Result<Self> {
        Self::with_trial_primes(min_poly, invariants, overrides, DEFAULT_TRIAL_PRIMES)
    }

    pub fn with_trial_primes(
        min_poly: Vec<i64>,
        invariants: Option<Invariants>,
        overrides: BTreeMap<u64, SplittingType>,
        trial_primes: usize,
    ) -> Result<Self> {
        if min_poly.len() < 2 {
            return Err(Error::InvalidPolynomial(
                "min_poly needs degree >= 1 (at least two coefficients)".into(),
            ));
        }
        let lead = *min_poly.last().expect("non-empty");
        if lead != 1 {
            return Err(Error::NonMonic(lead));
        }
        let d = (min_poly.len() - 1) as u32;
        ensure_irreducible(&min_poly, trial_primes)?;

        for (&p, st) in &overrides {
            if !is_prime(p) {
                return Err(Error::InvalidOverride(format!("override key {p} is not prime")));
            }
            if st.degree() != d {
                return Err(Error::InvalidOverride(format!(
                    "override for p={p}: sum e*f = {} but degree is {d}",
                    st.degree()
                )));
            }
        }

        let quadratic_disc = if d == 2 {
            let (c, b) = (min_poly[0] as i128, min_poly[1] as i128);
            let disc = b * b - 4 * c;
            let disc = i64::try_from(disc)
                .map_err(|_| Error::Overflow("polynomial discriminant".into()))?;
            let m = squarefree_part(disc);
            Some(fundamental_discriminant(m))
        } else {
            None
        };

        if let Some(inv) = &invariants {
            validate_invariants(inv, d, quadratic_disc)?;
        }
        let quadratic_disc = match (&invariants, quadratic_disc) {
            (Some(Invariants { d_k: Some(dk), .. }), Some(_)) => Some(*dk),
            (_, q) => q,
        };

        let hash = content_hash(&min_poly, invariants.as_ref(), &overrides);
        Ok(FieldSpec {
            name: None,
            min_poly,
            invariants,
            overrides,
            quadratic_disc,
            hash,
        })
    }

    /// The rational field, defined by `x`.
    pub fn rationals() -> Self {
        let inv = Invariants {
            r1: Some(1),
            r2: Some(0),
            h: Some(1),
            regulator: Some(1.0),
            w: Some(2),
            d_k: Some(1),
        };
        Self::new(vec![0, 1], Some(inv), BTreeMap::new()).expect("Q is valid")
    }

    pub fn degree(&self) -> u32 {
        (self.min_poly.len() - 1) as u32
    }

    pub fn min_poly(&self) -> &[i64] {
        &self.min_poly
    }

    pub fn invariants(&self) -> Option<&Invariants> {
        self.invariants.as_ref()
    }

    pub fn overrides(&self) -> &BTreeMap<u64, SplittingType> {
        &self.overrides
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    /// Field discriminant used for quadratic splitting.
    pub fn quadratic_discriminant(&self) -> Option<i64> {
        self.quadratic_disc
    }

    /// Stable content hash (hex) of the polynomial, invariants and overrides.
    pub fn content_hash(&self) -> &str {
        &self.hash
    }

    /// Human-readable label: the configured name, or the polynomial.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("min_poly={:?}", self.min_poly))
    }
}

fn validate_invariants(inv: &Invariants, d: u32, quadratic_disc: Option<i64>) -> Result<()> {
    if inv.r1.is_some() || inv.r2.is_some() {
        let r1 = inv.r1.unwrap_or(0);
        let r2 = inv.r2.unwrap_or(0);
        if r1 + 2 * r2 != d {
            return Err(Error::InconsistentInvariants(format!(
                "r1 + 2*r2 = {} but degree is {d}",
                r1 + 2 * r2
            )));
        }
        if let Some(dq) = quadratic_disc {
            let expect_r1 = if dq > 0 { 2 } else { 0 };
            if r1 != expect_r1 {
                return Err(Error::InconsistentInvariants(format!(
                    "quadratic field of discriminant {dq} has r1 = {expect_r1}, config says {r1}"
                )));
            }
        }
    }
    if let Some(w) = inv.w {
        if w < 2 {
            return Err(Error::InconsistentInvariants(format!("w = {w} < 2")));
        }
    }
    if let Some(h) = inv.h {
        if h < 1 {
            return Err(Error::InconsistentInvariants("h must be >= 1".into()));
        }
    }
    if let Some(r) = inv.regulator {
        if !(r > 0.0) {
            return Err(Error::InconsistentInvariants(format!("R = {r} must be > 0")));
        }
    }
    if let (Some(dk), Some(dq)) = (inv.d_k, quadratic_disc) {
        if dk != dq {
            return Err(Error::InconsistentInvariants(format!(
                "d_K = {dk} but the defining polynomial gives {dq}"
            )));
        }
    }
    if let Some(dk) = inv.d_k {
        if dk == 0 {
            return Err(Error::InconsistentInvariants("d_K = 0".into()));
        }
    }
    Ok(())
}

fn content_hash(
    min_poly: &[i64],
    invariants: Option<&Invariants>,
    overrides: &BTreeMap<u64, SplittingType>,
) -> String {
    let mut h = Sha256::new();
    h.update(format!("min_poly={min_poly:?};"));
    if let Some(inv) = invariants {
        h.update(format!(
            "r1={:?};r2={:?};h={:?};R={:?};w={:?};d_K={:?};",
            inv.r1,
            inv.r2,
            inv.h,
            inv.regulator.map(f64::to_bits),
            inv.w,
            inv.d_k
        ));
    }
    for (p, st) in overrides {
        h.update(format!("override {p}={st};"));
    }
    let digest = h.finalize();
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Shape of the factorization of the prime `p` in `field`.
pub fn split_prime(field: &FieldSpec, p: u64) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(st) = field.overrides.get(&p) {
        return Ok(st.clone());
    }
    match field.degree() {
        1 => SplittingType::from_pairs(&[(1, 1)]),
        2 => {
            let disc = field.quadratic_disc.expect("quadratic field has a discriminant");
            match kronecker_symbol(disc, p)? {
                1 => SplittingType::from_pairs(&[(1, 1), (1, 1)]),
                -1 => SplittingType::from_pairs(&[(1, 2)]),
                _ => SplittingType::from_pairs(&[(2, 1)]),
            }
        }
        _ => {
            let fp = Fp::new(p)?;
            let f = PolyFp::from_ints(&field.min_poly, p);
            if !fp.is_squarefree(&f) {
                return Err(Error::UnsupportedPrime { p });
            }
            let fac = factor_poly_mod_p(&field.min_poly, p)?;
            let shapes = fac
                .degrees()
                .into_iter()
                .map(|(deg, _)| PrimeShape { e: 1, f: deg as u32 })
                .collect();
            SplittingType::new(shapes)
        }
    }
}
