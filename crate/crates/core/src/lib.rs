//! Exact elliptic genera of smooth complete toric varieties and divisor pairs.

pub mod error;
pub mod par;
pub mod series;
pub mod theta;
pub mod toric;
pub mod fans;
pub mod genus;
pub mod singular;
pub mod acceptance;

pub use error::{Error, ErrorClass, Result};
