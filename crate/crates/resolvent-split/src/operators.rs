//! A catalog of concrete monotone operators and proximable functions.
//!
//! Three families cover the problems this crate targets:
//!
//! * monotone linear maps x ↦ Mx, whose resolvents are dense linear solves;
//! * normal cones of closed convex sets, whose resolvents are metric
//!   projections (independent of the step size);
//! * subdifferentials of proximable convex functions, entered through the
//!   [`ProxFunction`] implementations at the bottom of this module.

use nalgebra::{DMatrix, DVector};

use crate::error::Error;
use crate::operator::{MonotoneOperator, ProxFunction};
use crate::vector::Vector;

/// Minimum admissible eigenvalue of M + Mᵀ when accepting a matrix as a
/// monotone map; absorbs roundoff in the eigenvalue computation itself.
const MONOTONICITY_SLACK: f64 = -1e-12;

/// Relative threshold under which a candidate basis vector counts as
/// linearly dependent on the ones already accepted.
const DEPENDENCE_TOL: f64 = 1e-12;

pub(crate) fn to_dvector(v: &Vector) -> DVector<f64> {
    DVector::from_column_slice(v.as_slice())
}

pub(crate) fn from_dvector(v: DVector<f64>) -> Vector {
    Vector::from_raw(v.data.into())
}

/// The operator x ↦ Mx for a square matrix M with M + Mᵀ ⪰ 0.
///
/// Monotonicity is exactly positive semidefiniteness of the symmetric part,
/// which is checked once at construction. Resolvents are evaluated by a
/// direct dense solve of (I + rM) w = x; that system is nonsingular for
/// every r > 0 because the field of values of rM lies in the closed right
/// half-plane.
#[derive(Clone, Debug)]
pub struct LinearMonotoneOperator {
    m: DMatrix<f64>,
}

impl LinearMonotoneOperator {
    pub fn new(m: DMatrix<f64>) -> Result<Self, Error> {
        if !m.is_square() {
            return Err(Error::InvalidParameter(format!(
                "matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        let sym = &m + m.transpose();
        let min_eigenvalue = sym
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eigenvalue < MONOTONICITY_SLACK {
            return Err(Error::NotMonotone { min_eigenvalue });
        }
        Ok(LinearMonotoneOperator { m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter(
                "row lengths must all equal the number of rows".into(),
            ));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        LinearMonotoneOperator::new(DMatrix::from_row_slice(n, n, &flat))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// Applies the map directly: x ↦ Mx.
    pub fn apply(&self, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.dim(), "operator expects dimension {}", self.dim());
        from_dvector(&self.m * to_dvector(x))
    }
}

impl MonotoneOperator for LinearMonotoneOperator {
    fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.dim(), "operator expects dimension {}", self.dim());
        let system = DMatrix::identity(self.dim(), self.dim()) + &self.m * r;
        let solution = system
            .lu()
            .solve(&to_dvector(x))
            .expect("I + rM is nonsingular for monotone M and r > 0");
        from_dvector(solution)
    }

    fn label(&self) -> &str {
        "linear"
    }
}

/// A closed convex subset of R^n with a closed-form metric projection.
#[derive(Clone, Debug)]
pub enum ConvexSet {
    /// { x : lower ≤ x ≤ upper } componentwise.
    Box { lower: Vector, upper: Vector },
    /// { x : ‖x − center‖ ≤ radius }.
    Ball { center: Vector, radius: f64 },
    /// { x : ⟨normal, x⟩ ≤ offset }.
    Halfspace { normal: Vector, offset: f64 },
    /// { x : ⟨normal, x⟩ = offset }.
    Hyperplane { normal: Vector, offset: f64 },
    /// offset + span(basis); the stored basis is orthonormal.
    AffineSubspace { offset: Vector, basis: Vec<Vector> },
    /// { point }.
    Singleton { point: Vector },
}

impl ConvexSet {
    pub fn box_set(lower: Vector, upper: Vector) -> Result<Self, Error> {
        Error::check_dims(lower.dim(), upper.dim())?;
        if lower.dim() == 0 {
            return Err(Error::InvalidParameter("box needs dimension >= 1".into()));
        }
        if lower
            .iter()
            .zip(upper.iter())
            .any(|(l, u)| l > u)
        {
            return Err(Error::InvalidParameter(
                "box bounds are inconsistent: lower > upper in some coordinate".into(),
            ));
        }
        Ok(ConvexSet::Box { lower, upper })
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self, Error> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be finite and positive, got {radius}"
            )));
        }
        Ok(ConvexSet::Ball { center, radius })
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self, Error> {
        Self::check_normal(&normal, offset)?;
        Ok(ConvexSet::Halfspace { normal, offset })
    }

    pub fn hyperplane(normal: Vector, offset: f64) -> Result<Self, Error> {
        Self::check_normal(&normal, offset)?;
        Ok(ConvexSet::Hyperplane { normal, offset })
    }

    /// offset + span(basis). The basis must be linearly independent; it is
    /// orthonormalized on construction.
    pub fn affine_subspace(offset: Vector, basis: Vec<Vector>) -> Result<Self, Error> {
        if basis.is_empty() {
            return Err(Error::InvalidParameter(
                "affine subspace needs at least one basis vector".into(),
            ));
        }
        for b in &basis {
            Error::check_dims(offset.dim(), b.dim())?;
        }
        let basis = orthonormalize(&basis)?;
        Ok(ConvexSet::AffineSubspace { offset, basis })
    }

    /// A linear subspace span(basis), i.e. an affine subspace through 0.
    pub fn subspace(basis: Vec<Vector>) -> Result<Self, Error> {
        let dim = basis.first().map(Vector::dim).unwrap_or(0);
        Self::affine_subspace(Vector::zeros(dim), basis)
    }

    pub fn singleton(point: Vector) -> Result<Self, Error> {
        Ok(ConvexSet::Singleton { point })
    }

    fn check_normal(normal: &Vector, offset: f64) -> Result<(), Error> {
        if !offset.is_finite() {
            return Err(Error::NonFiniteData);
        }
        if normal.norm() == 0.0 {
            return Err(Error::InvalidParameter(
                "normal vector must be nonzero".into(),
            ));
        }
        Ok(())
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Box { lower, .. } => lower.dim(),
            ConvexSet::Ball { center, .. } => center.dim(),
            ConvexSet::Halfspace { normal, .. } => normal.dim(),
            ConvexSet::Hyperplane { normal, .. } => normal.dim(),
            ConvexSet::AffineSubspace { offset, .. } => offset.dim(),
            ConvexSet::Singleton { point } => point.dim(),
        }
    }

    /// Metric projection: the unique nearest point of the set.
    pub fn project(&self, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.dim(), "set lives in dimension {}", self.dim());
        match self {
            ConvexSet::Box { lower, upper } => Vector::from_raw(
                x.iter()
                    .zip(lower.iter().zip(upper.iter()))
                    .map(|(xi, (l, u))| xi.clamp(*l, *u))
                    .collect(),
            ),
            ConvexSet::Ball { center, radius } => {
                let d = x - center;
                let n = d.norm();
                if n <= *radius {
                    x.clone()
                } else {
                    center + &(&d * (*radius / n))
                }
            }
            ConvexSet::Halfspace { normal, offset } => {
                let s = normal.inner(x).expect("dimensions checked above");
                if s <= *offset {
                    x.clone()
                } else {
                    x - &(normal * ((s - offset) / normal.norm_sq()))
                }
            }
            ConvexSet::Hyperplane { normal, offset } => {
                let s = normal.inner(x).expect("dimensions checked above");
                x - &(normal * ((s - offset) / normal.norm_sq()))
            }
            ConvexSet::AffineSubspace { offset, basis } => {
                let y = x - offset;
                let mut p = offset.clone();
                for q in basis {
                    let c = q.inner(&y).expect("dimensions checked above");
                    p = &p + &(q * c);
                }
                p
            }
            ConvexSet::Singleton { point } => point.clone(),
        }
    }

    /// Distance from x to the set.
    pub fn distance(&self, x: &Vector) -> f64 {
        x.dist(&self.project(x))
    }

    /// Membership up to tolerance: d(x, set) ≤ tol.
    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.distance(x) <= tol
    }
}

/// Modified Gram–Schmidt; rejects dependent input instead of dropping it.
fn orthonormalize(vectors: &[Vector]) -> Result<Vec<Vector>, Error> {
    let mut basis: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let original = v.norm();
        if original == 0.0 {
            return Err(Error::InvalidParameter(
                "basis vectors are linearly dependent (zero vector)".into(),
            ));
        }
        let mut w = v.clone();
        for q in &basis {
            let c = q.inner(&w).expect("dimensions checked by caller");
            w = &w - &(q * c);
        }
        let remaining = w.norm();
        if remaining <= DEPENDENCE_TOL * original {
            return Err(Error::InvalidParameter(
                "basis vectors are linearly dependent".into(),
            ));
        }
        basis.push(&w * (1.0 / remaining));
    }
    Ok(basis)
}

/// The normal cone operator N_C of a closed convex set. For every r > 0
/// its resolvent is the metric projection onto C.
pub struct NormalCone {
    set: ConvexSet,
}

impl NormalCone {
    pub fn new(set: ConvexSet) -> Self {
        NormalCone { set }
    }

    pub fn set(&self) -> &ConvexSet {
        &self.set
    }
}

impl MonotoneOperator for NormalCone {
    fn resolvent(&self, _r: f64, x: &Vector) -> Vector {
        self.set.project(x)
    }

    fn label(&self) -> &str {
        "normal cone"
    }
}

/// f ≡ 0; its prox is the identity.
pub struct ZeroFunction;

impl ProxFunction for ZeroFunction {
    fn prox(&self, _t: f64, x: &Vector) -> Vector {
        x.clone()
    }

    fn value(&self, _x: &Vector) -> Option<f64> {
        Some(0.0)
    }

    fn label(&self) -> &str {
        "zero"
    }
}

/// Componentwise soft threshold, the proximity map of t·‖·‖₁.
///
/// Errors when t ≤ 0 or not finite.
pub fn prox_l1(t: f64, x: &Vector) -> Result<Vector, Error> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "soft-threshold parameter must be finite and positive, got {t}"
        )));
    }
    Ok(soft_threshold(t, x))
}

fn soft_threshold(t: f64, x: &Vector) -> Vector {
    Vector::from_raw(
        x.iter()
            .map(|&xi| xi.signum() * (xi.abs() - t).max(0.0))
            .collect(),
    )
}

/// weight·‖x‖₁.
pub struct L1Norm {
    weight: f64,
}

impl L1Norm {
    pub fn new(weight: f64) -> Result<Self, Error> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "l1 weight must be finite and positive, got {weight}"
            )));
        }
        Ok(L1Norm { weight })
    }
}

impl ProxFunction for L1Norm {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        soft_threshold(t * self.weight, x)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        Some(self.weight * x.iter().map(|c| c.abs()).sum::<f64>())
    }

    fn label(&self) -> &str {
        "l1"
    }
}

/// (weight/2)·‖x − center‖²; center = 0 gives the plain squared norm.
pub struct QuadraticDistance {
    center: Vector,
    weight: f64,
}

impl QuadraticDistance {
    pub fn new(center: Vector, weight: f64) -> Result<Self, Error> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadratic weight must be finite and positive, got {weight}"
            )));
        }
        Ok(QuadraticDistance { center, weight })
    }

    pub fn squared_norm(dim: usize, weight: f64) -> Result<Self, Error> {
        QuadraticDistance::new(Vector::zeros(dim), weight)
    }
}

impl ProxFunction for QuadraticDistance {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.center.dim(), "function expects dimension {}", self.center.dim());
        let shrink = 1.0 / (1.0 + t * self.weight);
        &(x * shrink) + &(&self.center * (t * self.weight * shrink))
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        Some(0.5 * self.weight * x.dist(&self.center).powi(2))
    }

    fn label(&self) -> &str {
        "quadratic distance"
    }
}

/// ⟨slope, x⟩ + intercept.
pub struct LinearFunction {
    slope: Vector,
    intercept: f64,
}

impl LinearFunction {
    pub fn new(slope: Vector, intercept: f64) -> Result<Self, Error> {
        if !intercept.is_finite() {
            return Err(Error::NonFiniteData);
        }
        Ok(LinearFunction { slope, intercept })
    }
}

impl ProxFunction for LinearFunction {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        x - &(&self.slope * t)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        Some(self.slope.inner(x).expect("dimension checked by caller") + self.intercept)
    }

    fn label(&self) -> &str {
        "linear"
    }
}

/// The indicator of a convex set: 0 on the set, +∞ outside. Its prox is the
/// metric projection, so ∂(indicator) is the normal cone.
pub struct IndicatorFunction {
    set: ConvexSet,
    membership_tol: f64,
}

impl IndicatorFunction {
    pub fn new(set: ConvexSet) -> Self {
        IndicatorFunction {
            set,
            membership_tol: 1e-9,
        }
    }

    pub fn with_membership_tol(set: ConvexSet, membership_tol: f64) -> Self {
        IndicatorFunction {
            set,
            membership_tol,
        }
    }
}

impl ProxFunction for IndicatorFunction {
    fn prox(&self, _t: f64, x: &Vector) -> Vector {
        self.set.project(x)
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        Some(if self.set.contains(x, self.membership_tol) {
            0.0
        } else {
            f64::INFINITY
        })
    }

    fn label(&self) -> &str {
        "indicator"
    }
}

/// a·h + (b/2)·‖·‖² for a proximable core h, a > 0, b ≥ 0.
///
/// The prox reduces to one prox of h:
/// prox_{t(a·h + b/2‖·‖²)}(x) = prox_{(ta/(1+tb))·h}( x/(1+tb) ),
/// obtained by completing the square in the defining minimization.
pub struct ScaledPlusQuadratic<F> {
    core: F,
    linear_weight: f64,
    quadratic_weight: f64,
}

impl<F: ProxFunction> ScaledPlusQuadratic<F> {
    pub fn new(core: F, linear_weight: f64, quadratic_weight: f64) -> Result<Self, Error> {
        check_scaled_weights(linear_weight, quadratic_weight)?;
        Ok(ScaledPlusQuadratic {
            core,
            linear_weight,
            quadratic_weight,
        })
    }
}

impl<F: ProxFunction> ProxFunction for ScaledPlusQuadratic<F> {
    fn prox(&self, t: f64, x: &Vector) -> Vector {
        scaled_plus_quadratic_prox(
            &self.core,
            self.linear_weight,
            self.quadratic_weight,
            t,
            x,
        )
    }

    fn value(&self, x: &Vector) -> Option<f64> {
        self.core
            .value(x)
            .map(|v| self.linear_weight * v + 0.5 * self.quadratic_weight * x.norm_sq())
    }

    fn label(&self) -> &str {
        "scaled core plus quadratic"
    }
}

fn check_scaled_weights(a: f64, b: f64) -> Result<(), Error> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "core weight must be finite and positive, got {a}"
        )));
    }
    if !(b.is_finite() && b >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadratic weight must be finite and nonnegative, got {b}"
        )));
    }
    Ok(())
}

fn scaled_plus_quadratic_prox(
    h: &dyn ProxFunction,
    a: f64,
    b: f64,
    t: f64,
    x: &Vector,
) -> Vector {
    let denom = 1.0 + t * b;
    h.prox(t * a / denom, &(x * (1.0 / denom)))
}

/// prox of a·h + (b/2)·‖·‖² at x with parameter t, through one prox of h.
///
/// Errors when a ≤ 0, b < 0, or t ≤ 0.
pub fn prox_scaled_plus_quadratic(
    h: &dyn ProxFunction,
    a: f64,
    b: f64,
    t: f64,
    x: &Vector,
) -> Result<Vector, Error> {
    check_scaled_weights(a, b)?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "prox parameter must be finite and positive, got {t}"
        )));
    }
    Ok(scaled_plus_quadratic_prox(h, a, b, t, x))
}
