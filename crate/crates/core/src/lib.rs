#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod campaign;
pub mod engine;
pub mod error;
pub mod gcd;
pub mod primes;
pub mod quad;
pub mod resonator;
pub mod sum;
pub mod zeta;

pub use error::{Result, ZrError};
