//! Splitting methods for evaluating the resolvent of a sum of two maximal
//! monotone operators.
//!
//! Given A and B through their individual resolvents, the crate computes
//! J_{A+B}(z) = (I + A + B)^(-1)(z) without ever forming A + B. The route:
//! translate the problem to the zeros of a pair of strongly monotone
//! "strengthened" operators whose resolvents reduce to resolvents of A and
//! B ([`strengthening`]), then drive a Peaceman–Rachford-style recursion
//! with a decreasing step sequence whose iterates converge strongly to the
//! target, with a guaranteed O(1/k) error bound ([`solver`]).
//!
//! [`operators`] supplies ready-made monotone maps (linear maps, normal
//! cones of convex sets, subdifferentials of common proximable functions)
//! and [`applications`] packages the standard uses: proximity maps of sums,
//! strongly/weakly convex composite minimization, and best approximation
//! onto intersections.

pub mod applications;
mod error;
pub mod operator;
pub mod operators;
pub mod solver;
pub mod strengthening;
pub mod vector;

pub use error::Error;
pub use operator::{as_operator, MonotoneOperator, ProxFunction, Subdifferential};
pub use vector::{inner, norm, Vector};
