//! Packaged problem classes solved through the splitting recursion.
//!
//! Each entry point reduces its problem to "evaluate J_{A+B}(z) given the
//! resolvents of A and B" and delegates to [`solve`]:
//!
//! * [`prox_of_sum`]: proximity maps of sums f + g of proximable convex
//!   functions;
//! * [`strong_weak_minimize`]: global minimization of f̃ + g̃ where f̃ is
//!   strongly convex and g̃ weakly convex, entered through user-declared
//!   convex cores;
//! * [`best_approximation`]: projection onto an intersection C ∩ D of sets
//!   with individually easy projections.

use crate::error::Error;
use crate::operator::{as_operator, ProxFunction};
use crate::operators::{ConvexSet, NormalCone, ScaledPlusQuadratic};
use crate::solver::{solve, SolveConfig, SolveReport};
use crate::vector::Vector;

/// Evaluates prox_{f+g}(z) by splitting on ∂f and ∂g: only prox_f and
/// prox_g are ever called, never a prox of the sum.
///
/// If f + g admits no proximity point at z (possible for indicators with
/// disjoint domains), the run cannot converge; the report then shows the
/// budget stop, and a trajectory probe on the same data gives divergence
/// evidence.
pub fn prox_of_sum(
    f: &dyn ProxFunction,
    g: &dyn ProxFunction,
    z: &Vector,
    config: &SolveConfig,
) -> Result<SolveReport, Error> {
    let a = as_operator(f);
    let b = as_operator(g);
    solve(&a, &b, z, config)
}

/// minimize f̃ + g̃ where f̃ is γ-strongly convex and g̃ is ω-weakly convex
/// with 0 ≤ ω < γ, declared through convex cores:
///
///   f̃ = f_core + (γ/2)‖·‖²,    g̃ = g_core − (ω/2)‖·‖².
///
/// The cores are ordinary proximable convex functions supplied by the
/// caller; the surplus of strong over weak convexity is what makes the
/// objective globally minimizable.
pub struct StrongWeakProblem<'a> {
    f_core: &'a dyn ProxFunction,
    g_core: &'a dyn ProxFunction,
    gamma: f64,
    omega: f64,
    dim: usize,
}

impl<'a> StrongWeakProblem<'a> {
    pub fn new(
        f_core: &'a dyn ProxFunction,
        g_core: &'a dyn ProxFunction,
        gamma: f64,
        omega: f64,
        dim: usize,
    ) -> Result<Self, Error> {
        if !(gamma.is_finite() && omega.is_finite() && 0.0 <= omega && omega < gamma) {
            return Err(Error::InvalidParameter(format!(
                "convexity moduli must satisfy 0 <= omega < gamma, got gamma={gamma}, omega={omega}"
            )));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "problem dimension must be at least 1".into(),
            ));
        }
        Ok(StrongWeakProblem {
            f_core,
            g_core,
            gamma,
            omega,
            dim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Dividing the objective by γ − ω and splitting off ½‖·‖² turns the
    /// minimization into a proximity evaluation at the origin:
    ///
    ///   argmin f̃ + g̃ = prox_{f+g}(0),
    ///   f = f_core/(γ−ω),  g = g_core/(γ−ω),
    ///
    /// because f + g + ½‖·‖² = (f̃ + g̃)/(γ−ω) up to nothing at all: the
    /// quadratic terms cancel exactly.
    fn scaled_cores(
        &self,
    ) -> Result<
        (
            ScaledPlusQuadratic<&'a dyn ProxFunction>,
            ScaledPlusQuadratic<&'a dyn ProxFunction>,
        ),
        Error,
    > {
        let a = 1.0 / (self.gamma - self.omega);
        Ok((
            ScaledPlusQuadratic::new(self.f_core, a, 0.0)?,
            ScaledPlusQuadratic::new(self.g_core, a, 0.0)?,
        ))
    }

    /// f̃ + g̃ at x, when both cores provide values.
    pub fn objective(&self, x: &Vector) -> Option<f64> {
        let f = self.f_core.value(x)?;
        let g = self.g_core.value(x)?;
        Some(f + 0.5 * self.gamma * x.norm_sq() + g - 0.5 * self.omega * x.norm_sq())
    }
}

/// Globally minimizes the strongly/weakly convex sum described by `p`.
/// The report's solution is the unique minimizer.
pub fn strong_weak_minimize(
    p: &StrongWeakProblem<'_>,
    config: &SolveConfig,
) -> Result<SolveReport, Error> {
    let (f, g) = p.scaled_cores()?;
    prox_of_sum(&f, &g, &Vector::zeros(p.dim()), config)
}

/// Projection onto C ∩ D through the individual projectors of C and D.
pub struct BestApproxProblem {
    c: ConvexSet,
    d: ConvexSet,
    z: Vector,
}

impl BestApproxProblem {
    pub fn new(c: ConvexSet, d: ConvexSet, z: Vector) -> Result<Self, Error> {
        Error::check_dims(c.dim(), d.dim())?;
        Error::check_dims(c.dim(), z.dim())?;
        Ok(BestApproxProblem { c, d, z })
    }

    pub fn c(&self) -> &ConvexSet {
        &self.c
    }

    pub fn d(&self) -> &ConvexSet {
        &self.d
    }

    pub fn z(&self) -> &Vector {
        &self.z
    }
}

/// Computes P_{C∩D}(z) by splitting on the normal cones N_C and N_D; each
/// iteration projects once onto C and once onto D. When the intersection
/// is empty there is nothing to converge to: the run stops on budget and a
/// trajectory probe yields divergence evidence.
pub fn best_approximation(
    p: &BestApproxProblem,
    config: &SolveConfig,
) -> Result<SolveReport, Error> {
    let a = NormalCone::new(p.c.clone());
    let b = NormalCone::new(p.d.clone());
    solve(&a, &b, &p.z, config)
}
