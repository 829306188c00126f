//! Certified arithmetic for heights of radical algebraic numbers.
//!
//! The crate computes weighted Weil heights of radicals exactly, isolates
//! polynomial roots to certify Mahler measures, generates prime towers whose
//! level data satisfies explicit window constraints, and sandwiches
//! Northcott-style level bounds between certified intervals. Everything
//! user-visible is either an exact symbolic value or a dyadic interval that
//! provably contains the result.

pub mod error;
pub mod exactnum;
pub mod heights;
pub mod northcott;
pub mod oracle;
pub mod polyalg;
pub mod towers;

pub use error::{Error, Result};
pub use exactnum::{CertifiedReal, Dyadic, ExactLog, PrecisionLadder, Round};
pub use heights::{RadicalRational, WeightedHeightValue};
pub use northcott::NorthcottReport;
pub use oracle::{CrossCheckReport, RadicalExpr};
pub use polyalg::IntPolynomial;
pub use towers::{CaseTag, TowerSpec, WeightCase};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
