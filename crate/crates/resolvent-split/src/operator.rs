//! Interfaces for set-valued monotone maps and proximable functions.
//!
//! An operator is exposed through its resolvent J_{rA} = (I + rA)^(-1),
//! which for maximal monotone A is a single-valued, firmly nonexpansive map
//! defined on the whole space for every r > 0. A convex function is exposed
//! through its proximity map; [`Subdifferential`] bridges the two views,
//! since prox_{rf} is exactly the resolvent of r∂f.

use std::sync::Arc;

use crate::vector::Vector;

/// A maximal monotone operator, seen through its resolvents.
///
/// Implementations must be pure: calls may be issued concurrently from
/// multiple threads and must not observe each other.
pub trait MonotoneOperator: Send + Sync {
    /// Evaluates J_{rA}(x) = (I + rA)^(-1)(x). Callers guarantee r > 0.
    fn resolvent(&self, r: f64, x: &Vector) -> Vector;

    /// Short human-readable tag used in diagnostics.
    fn label(&self) -> &str {
        "operator"
    }
}

/// A proper convex lower-semicontinuous function, seen through its
/// proximity maps.
pub trait ProxFunction: Send + Sync {
    /// Evaluates prox_{tf}(x) = argmin_y f(y) + ‖y − x‖²/(2t). Callers
    /// guarantee t > 0.
    fn prox(&self, t: f64, x: &Vector) -> Vector;

    /// Function value at x, when available. `f64::INFINITY` encodes points
    /// outside the domain; `None` means the implementation cannot evaluate.
    fn value(&self, _x: &Vector) -> Option<f64> {
        None
    }

    fn label(&self) -> &str {
        "function"
    }
}

impl<T: MonotoneOperator + ?Sized> MonotoneOperator for &T {
    fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        (**self).resolvent(r, x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: MonotoneOperator + ?Sized> MonotoneOperator for Box<T> {
    fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        (**self).resolvent(r, x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: MonotoneOperator + ?Sized> MonotoneOperator for Arc<T> {
    fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        (**self).resolvent(r, x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: ProxFunction + ?Sized> ProxFunction for &T {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        (**self).prox(t, x)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        (**self).value(x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: ProxFunction + ?Sized> ProxFunction for Box<T> {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        (**self).prox(t, x)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        (**self).value(x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

impl<T: ProxFunction + ?Sized> ProxFunction for Arc<T> {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        (**self).prox(t, x)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        (**self).value(x)
    }

    fn label(&self) -> &str {
        (**self).label()
    }
}

/// The subdifferential ∂f of a convex function, as a monotone operator.
/// Its resolvent J_{r∂f} coincides with prox_{rf} for every r > 0.
pub struct Subdifferential<F> {
    f: F,
}

impl<F: ProxFunction> Subdifferential<F> {
    pub fn new(f: F) -> Self {
        Subdifferential { f }
    }

    pub fn function(&self) -> &F {
        &self.f
    }
}

impl<F: ProxFunction> MonotoneOperator for Subdifferential<F> {
    fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        self.f.prox(r, x)
    }

    fn label(&self) -> &str {
        self.f.label()
    }
}

/// Views a proximable function as the monotone operator ∂f.
pub fn as_operator<F: ProxFunction>(f: F) -> Subdifferential<F> {
    Subdifferential::new(f)
}
