//! Numerics for bilateral basic hypergeometric series, q-Pochhammer
//! products, Jacobi theta functions, gamma-side bilateral sums and
//! the integrals that connect them, plus a catalog of identities among
//! them that can be checked on sampled parameters.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod config;
pub mod error;
pub mod identities;
pub mod parallel;
pub mod qcore;
pub mod quadrature;
pub mod scalar;
pub mod series;
pub mod theta;

pub use config::EvalConfig;
pub use error::{Error, Result};
pub use qcore::SeriesEvaluation;
pub use scalar::{Cplx, Real};
