//! Arithmetic of Dedekind zeta functions at desk scale: prime splitting,
//! ideal enumeration, Dirichlet coefficients of `zeta_K` and its relatives,
//! checkpointed partial sums, and a numerically realized truncated Perron
//! formula.
//!
//! Fields are described by a monic irreducible integer polynomial plus
//! optional invariants and splitting overrides; see [`field::parse_field_spec`].

pub mod arith;
pub mod cache;
pub mod dirichlet;
pub mod error;
pub mod field;
pub mod ideals;
pub mod irreducible;
pub mod perron;
pub mod poly_fp;
pub mod summation;
pub mod sums;

pub use cache::SplittingTable;
pub use dirichlet::{coefficients, CoeffTable, Coeffs, SeriesKind};
pub use error::{Error, Result};
pub use field::{parse_field_spec, split_prime, FieldSpec, Invariants, SplittingType};
pub use ideals::{enumerate_ideals, IdealFactored};
pub use perron::{perron_truncated, PerronConfig, PerronReport};
pub use sums::{partial_sums, FieldTables, PartialSumSeries, SumKind};
