//! Special functions and quadrature used by the classical and solver modules.

mod elliptic;
mod hermite;
mod quadrature;
pub(crate) mod tridiag;

pub use elliptic::{carlson_rf, elliptic_f, elliptic_k};
pub use hermite::{hermite_newton_step, hermite_nodes, MAX_HERMITE_NODES};
pub use quadrature::{integrate_inverse_sqrt, QuadratureKind, QuadratureRule};
