pub mod closed;
pub mod constants;
pub mod error;
pub mod fib;
pub mod harness;
pub mod exact;
pub mod logpoly;
pub mod quad;

pub use error::{Error, Result};
