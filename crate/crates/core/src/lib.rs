//! The normal–Cauchy (NC) family of fat-tailed distributions whose extreme
//! tails are eventually thin.
//!
//! A Cauchy or Student-t density multiplied by a Gaussian factor keeps the
//! fat shoulders of the heavy-tailed law while making every moment, and the
//! moment-generating function, finite. The crate provides densities,
//! distribution functions, quantiles, moments, samplers and
//! maximum-likelihood fitting for:
//!
//! * [`nc1`]: NC(1), interpolating between Cauchy (β = 0) and normal (β = 1);
//! * [`ncn`]: NC(n), the product of a normal and a t density with 2n − 1
//!   degrees of freedom;
//! * [`nt`]: the four-parameter N-t law with real tail exponent γ;
//! * [`variants`]: two-piece asymmetric, survival-tail and multivariate
//!   relatives.

pub mod data;
pub mod error;
pub mod dist;
pub mod fit;
mod linalg;
pub mod nc1;
pub mod ncn;
pub mod nt;
pub mod numerics;
pub mod random;
pub mod specfun;
pub mod student_t;
pub mod variants;
mod symmetric;

pub use error::{Error, Result};
pub use random::RandomSource;
