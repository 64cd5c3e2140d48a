//! Shared numerical kernels.

mod diff;
mod grid;
mod hermite;
mod quadrature;

pub use diff::{central_diff, Derivative};
pub use grid::{Axis, ScalarGrid};
pub use hermite::{hermite, hermite_function, MAX_HERMITE_ORDER};
pub use quadrature::{integrate, integrate_complex, GaussLegendre, QuadratureSpec};
