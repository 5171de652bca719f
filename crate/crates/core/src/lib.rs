//! Exact symbolic computation for the Cuntz algebra as a module algebra over
//! `U_q(sl_n)` and a co-module algebra over the FRT quantum group.

pub mod braid;
pub mod check;
pub mod cuntz;
pub mod error;
pub mod fock;
pub mod json;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod qmatrix;
pub mod qscalar;
pub mod uq;

pub use braid::{BraidElement, EndoMatrix};
pub use check::{run_suite, CaseResult, CheckReport, Suite, SuiteParams};
pub use cuntz::{CuntzElement, Letter, Word};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use qmatrix::{CoactionElement, QMatElement, UMonomial};
pub use qscalar::{gauss_binomial, q_number, QScalar};
pub use uq::{LieData, UqGenerator, UqWord};
