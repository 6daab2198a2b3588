//! Exact generation, verification and search of integer solutions of
//! `n(x⁴ + y⁴) = z⁴ + w⁴`.
//!
//! * [`exact_arith`]: big rationals, exact roots, the [`Quadruple`] record.
//! * [`elliptic`]: long-form Weierstrass curves and the group law.
//! * [`quartic_maps`]: quartic models `V² = q(U)` and their birational maps.
//! * [`families`]: closed-form families and the curve-to-solution pipelines.
//! * [`richmond`]: tangent-line descent from one known solution to the next.
//! * [`search`]: meet-in-the-middle search for the smallest solution per `n`.

pub mod elliptic;
pub mod error;
pub mod exact_arith;
pub mod families;
pub mod quartic_maps;
pub mod richmond;
pub mod search;

pub use elliptic::{EcPoint, WeierstrassCurve};
pub use error::{Error, Result};
pub use exact_arith::{Integer, Quadruple, Rational};
