//! Apolarity calculus over exact rationals.
//!
//! Perp ideals, catalecticant kernels, graded ideal operations and Hilbert
//! functions, used to compute Waring and cactus ranks of monomials and binary
//! forms and to certify that both ranks add up over sums of forms in
//! disjoint sets of variables.

pub mod apolarity;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod rank;
pub mod verify;

pub use error::{Error, Result};
