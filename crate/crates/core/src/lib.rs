//! Log-determinants of the scalar GJMS operators `P_{2k}` on odd-dimensional
//! unit round spheres.
//!
//! The [`spectral`] module evaluates `log det P_{2k}(d)` by four independent
//! routes (a single integral, a sum over second-order factors, a Chebyshev
//! rearrangement and an integer product rule over lower dimensions) and holds
//! the closed-form Paneitz values for `d = 5, 7`. [`quadrature`] supplies the
//! semi-infinite integrator, [`chebyshev`] the exact coefficient tables, and
//! [`cli`] the scan, CSV and SVG plumbing behind the `sphere-logdet` binary.

pub mod chebyshev;
pub mod cli;
pub mod error;
pub mod hyperbolic;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
