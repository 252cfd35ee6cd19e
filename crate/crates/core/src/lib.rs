//! Exact and high-precision machinery for accelerating hypergeometric
//! series with first-order telescoping certificates.

pub mod accel;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod exact;
pub mod hyper;
pub mod precision;

pub use error::{Error, Result};
