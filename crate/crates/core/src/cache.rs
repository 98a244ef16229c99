//! Splitting tables: the splitting type of every rational prime up to a
//! bound, computed once and optionally persisted on disk.
//!
//! On-disk format (plain text, one prime per line):
//!
//! ```text
//! nfsums-splitting v1
//! field <content hash>
//! bound <X>
//! 2 (2,1)
//! 3 (1,2)
//! 5 (1,1);(1,1)
//! 7 unsupported
//! ```
//!
//! Files are named `splitting-v1-<hash>-<bound>.txt` and written atomically
//! (temp file in the same directory, then rename).

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::field::{split_prime, FieldSpec, SplittingType};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "nfsums-splitting";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitEntry {
    Supported(SplittingType),
    /// `p` divides the polynomial discriminant and has no override.
    Unsupported,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingTable {
    field_hash: String,
    bound: u64,
    entries: Vec<(u64, SplitEntry)>,
}

impl SplittingTable {
    /// Splits every prime `p <= bound`. Unsupported primes are recorded, not
    /// fatal; they only error when looked up.
    pub fn build(field: &FieldSpec, bound: u64) -> Result<Self> {
        let primes = primes_up_to(bound);
        let entries = primes
            .par_iter()
            .map(|&p| match split_prime(field, p) {
                Ok(st) => Ok((p, SplitEntry::Supported(st))),
                Err(Error::UnsupportedPrime { .. }) => Ok((p, SplitEntry::Unsupported)),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SplittingTable {
            field_hash: field.content_hash().to_string(),
            bound,
            entries,
        })
    }

    /// Loads from `dir` when a matching file exists, otherwise builds and
    /// saves. Returns the table and whether it was a cache hit.
    pub fn load_or_build(field: &FieldSpec, bound: u64, dir: Option<&Path>) -> Result<(Self, bool)> {
        if let Some(dir) = dir {
            if let Some(t) = Self::load(dir, field.content_hash(), bound)? {
                return Ok((t, true));
            }
            let t = Self::build(field, bound)?;
            t.save(dir)?;
            return Ok((t, false));
        }
        Ok((Self::build(field, bound)?, false))
    }

    pub fn field_hash(&self) -> &str {
        &self.field_hash
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn entries(&self) -> &[(u64, SplitEntry)] {
        &self.entries
    }

    pub fn get(&self, p: u64) -> Result<SplittingType> {
        match self.entries.binary_search_by_key(&p, |(q, _)| *q) {
            Ok(i) => match &self.entries[i].1 {
                SplitEntry::Supported(st) => Ok(st.clone()),
                SplitEntry::Unsupported => Err(Error::UnsupportedPrime { p }),
            },
            Err(_) if p <= self.bound => Err(Error::NotPrime(p)),
            Err(_) => Err(Error::InvalidArgument(format!(
                "prime {p} beyond the table bound {}",
                self.bound
            ))),
        }
    }

    pub fn file_name(field_hash: &str, bound: u64) -> String {
        format!("splitting-v{FORMAT_VERSION}-{field_hash}-{bound}.txt")
    }

    pub fn write_to<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut out = BufWriter::new(out);
        writeln!(out, "{MAGIC} v{FORMAT_VERSION}")?;
        writeln!(out, "field {}", self.field_hash)?;
        writeln!(out, "bound {}", self.bound)?;
        for (p, e) in &self.entries {
            match e {
                SplitEntry::Unsupported => writeln!(out, "{p} unsupported")?,
                SplitEntry::Supported(st) => {
                    let parts: Vec<String> = st.factors().iter().map(|s| format!("({},{})", s.e, s.f)).collect();
                    writeln!(out, "{p} {}", parts.join(";"))?;
                }
            }
        }
        out.flush()
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let bad = |m: &str| Error::Cache(m.to_string());
        let mut lines = input.lines();
        let mut next = || -> Result<String> { lines.next().ok_or_else(|| bad("truncated file"))?.map_err(Error::from) };
        if next()? != format!("{MAGIC} v{FORMAT_VERSION}") {
            return Err(bad("unknown format version"));
        }
        let field_hash = next()?
            .strip_prefix("field ")
            .ok_or_else(|| bad("missing field line"))?
            .to_string();
        let bound: u64 = next()?
            .strip_prefix("bound ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("missing bound line"))?;
        let mut entries = Vec::new();
        while let Ok(line) = next() {
            let (p, rest) = line.split_once(' ').ok_or_else(|| bad("malformed entry"))?;
            let p: u64 = p.parse().map_err(|_| bad("malformed prime"))?;
            let entry = if rest == "unsupported" {
                SplitEntry::Unsupported
            } else {
                let mut pairs = Vec::new();
                for part in rest.split(';') {
                    let inner = part
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .ok_or_else(|| bad("malformed splitting type"))?;
                    let (e, f) = inner.split_once(',').ok_or_else(|| bad("malformed splitting type"))?;
                    let e = e.parse().map_err(|_| bad("malformed e"))?;
                    let f = f.parse().map_err(|_| bad("malformed f"))?;
                    pairs.push((e, f));
                }
                SplitEntry::Supported(SplittingType::from_pairs(&pairs).map_err(|e| Error::Cache(e.to_string()))?)
            };
            if entries.last().is_some_and(|(q, _)| *q >= p) {
                return Err(bad("entries out of order"));
            }
            entries.push((p, entry));
        }
        Ok(SplittingTable { field_hash, bound, entries })
    }

    pub fn save(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(Self::file_name(&self.field_hash, self.bound));
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        self.write_to(tmp.as_file_mut())?;
        tmp.persist(&path).map_err(|e| Error::Cache(e.to_string()))?;
        Ok(path)
    }

    /// `None` when no file for `(field_hash, bound)` exists. A file whose
    /// header does not match its name is an error.
    pub fn load(dir: &Path, field_hash: &str, bound: u64) -> Result<Option<Self>> {
        let path = dir.join(Self::file_name(field_hash, bound));
        let file = match fs::File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let t = Self::read_from(BufReader::new(file))?;
        if t.field_hash != field_hash || t.bound != bound {
            return Err(Error::Cache(format!("{} does not match its key", path.display())));
        }
        Ok(Some(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_field_spec;

    #[test]
    fn round_trip_and_lookup() {
        let k = parse_field_spec("min_poly = [-2, 0, 0, 1]").unwrap();
        let t = SplittingTable::build(&k, 200).unwrap();
        assert!(matches!(t.get(2), Err(Error::UnsupportedPrime { p: 2 })));
        assert!(matches!(t.get(3), Err(Error::UnsupportedPrime { p: 3 })));
        assert_eq!(t.get(5).unwrap(), split_prime(&k, 5).unwrap());
        assert!(matches!(t.get(9), Err(Error::NotPrime(9))));
        assert!(t.get(211).is_err());
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let back = SplittingTable::read_from(&buf[..]).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let k = parse_field_spec("min_poly = [1, 0, 1]").unwrap();
        let (cold, hit) = SplittingTable::load_or_build(&k, 1000, Some(dir.path())).unwrap();
        assert!(!hit);
        let (warm, hit) = SplittingTable::load_or_build(&k, 1000, Some(dir.path())).unwrap();
        assert!(hit);
        assert_eq!(cold, warm);
        assert!(SplittingTable::load(dir.path(), k.content_hash(), 999).unwrap().is_none());
    }

    #[test]
    fn rejects_garbage() {
        assert!(SplittingTable::read_from(&b"hello\n"[..]).is_err());
        assert!(SplittingTable::read_from(&b"nfsums-splitting v1\nfield x\nbound 5\n2 (1;1)\n"[..]).is_err());
        assert!(SplittingTable::read_from(&b"nfsums-splitting v1\nfield x\nbound 5\n3 (1,1)\n2 (1,1)\n"[..]).is_err());
    }
}
