//! Heavy-tailed linear processes, their functional limits, and cadlag path
//! diagnostics for the S and M1 topologies.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cadlag;
pub mod coeffs;
pub mod error;
pub mod exact;
pub mod harness;
pub mod innovations;
pub mod limits;
pub mod quad;
pub mod rng;

pub use error::{Error, Result};
