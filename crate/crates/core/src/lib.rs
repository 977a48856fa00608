//! Exact construction of the companion-type matrix with a prescribed
//! diagonal and a prescribed characteristic polynomial, over the rationals
//! or a prime field, together with independent verification oracles.
//!
//! ```
//! use pdiag_core::{construct_full, DiagonalInput, FieldSpec, MonicPoly};
//!
//! let q = FieldSpec::Rationals;
//! let f = MonicPoly::parse(q, "-1,0").unwrap(); // t^2 - 1
//! let c = construct_full(&f, &DiagonalInput::Head(vec![q.from_i64(2)])).unwrap();
//! assert_eq!(c.a.to_dense().to_string(), "[ 2 -3]\n[ 1 -2]");
//! assert!(c.checks.all_passed());
//! ```

pub mod construct;
pub mod error;
pub mod field;
pub mod matrix;
pub mod oracles;
pub mod poly;
pub mod symfunc;

pub use construct::{
    assemble, check_similarity, companion, construct_b, construct_full, construct_full_with,
    derive_last_diagonal, resolve_diagonal, similarity_t, validate_diagonal, verify_matrix, Checks,
    ConstructOptions, Construction, DiagonalInput, DiagonalSpec, SimilarityReport,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec, PrimeModulus};
pub use matrix::{DenseMatrix, StructuredMatrix};
pub use oracles::{
    charpoly_generic, charpoly_structured, check_minor_system, occurrence_pattern,
    principal_minor_sum, solve_b_backsub, uniqueness_exhaustive, MinorEquation,
    MinorSystemReport, OccurrencePattern, UniquenessReport,
};
pub use poly::MonicPoly;
pub use symfunc::{h_eval, HTable};
