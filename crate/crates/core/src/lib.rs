//! Spin phase-space distributions on the sphere.

pub mod angular;
pub mod distributions;
pub mod error;
pub mod fano;
pub mod io;
pub mod numeric;
pub mod quadrature;
pub mod tensor_ops;

pub use error::{Error, Result};
