//! The strengthening transform and the fixed-point map built from it.
//!
//! For a maximal monotone A, a parameter β ∈ (0,1) and an anchor z, the
//! strengthened operator is
//!
//!   A'(v) = 2(1−β)·A(v/β + z) + ((1−β)/β)·v,
//!
//! which is (1−β)/β-strongly monotone. Its point of interest: v solves
//! 0 ∈ (A' + B')(v) for the pair strengthened at the same (β, z) exactly
//! when (1/β)v + z = J_{A+B}(z). The resolvent of rA' collapses to a single
//! resolvent of the base operator,
//!
//!   J_{rA'}(x) = β · J_{sA}( x/(β + r(1−β)) + z ) − β·z,
//!   s = 2r(1−β)/(β + r(1−β)),
//!
//! so nothing beyond J_A is ever required. [`ComposedReflector`] chains the
//! two reflected resolvents into the map T whose fixed points encode the
//! solutions; iterating T ([`trajectory_probe`]) gives practical evidence
//! for whether J_{A+B}(z) exists at all: orbits of T stay bounded exactly
//! when it does.

use crate::error::Error;
use crate::operator::MonotoneOperator;
use crate::vector::Vector;

/// Number of iterations per probe window.
const PROBE_WINDOW: usize = 100;
/// Relative flatness of successive window maxima that counts as a plateau.
const PROBE_PLATEAU_REL: f64 = 1e-9;
/// Consecutive growing windows (with non-decaying increments) that count as
/// divergence evidence.
const PROBE_GROWTH_RUN: usize = 50;

/// A maximal monotone operator strengthened at (β, anchor).
#[derive(Clone)]
pub struct StrengthenedOperator<'a> {
    base: &'a dyn MonotoneOperator,
    beta: f64,
    anchor: Vector,
}

impl<'a> StrengthenedOperator<'a> {
    /// Requires β ∈ (0,1); the anchor must be finite.
    pub fn new(base: &'a dyn MonotoneOperator, beta: f64, anchor: Vector) -> Result<Self, Error> {
        check_beta(beta)?;
        if !anchor.is_finite() {
            return Err(Error::NonFiniteData);
        }
        Ok(StrengthenedOperator { base, beta, anchor })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn anchor(&self) -> &Vector {
        &self.anchor
    }

    pub fn base(&self) -> &dyn MonotoneOperator {
        self.base
    }

    /// The strong monotonicity modulus (1−β)/β.
    pub fn modulus(&self) -> f64 {
        (1.0 - self.beta) / self.beta
    }

    /// J_{rA'} via one resolvent of the base operator. r must be > 0.
    pub fn resolvent(&self, r: f64, x: &Vector) -> Vector {
        debug_assert!(r > 0.0, "resolvent parameter must be positive");
        let c = self.beta + r * (1.0 - self.beta);
        let s = 2.0 * r * (1.0 - self.beta) / c;
        let arg = &(x * (1.0 / c)) + &self.anchor;
        &(&self.base.resolvent(s, &arg) * self.beta) - &(&self.anchor * self.beta)
    }

    /// The reflected resolvent 2·J_{rA'} − I.
    pub fn reflected_resolvent(&self, r: f64, x: &Vector) -> Vector {
        &(&self.resolvent(r, x) * 2.0) - x
    }
}

fn check_beta(beta: f64) -> Result<(), Error> {
    if beta.is_finite() && 0.0 < beta && beta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "strengthening parameter must lie strictly between 0 and 1, got {beta}"
        )))
    }
}

/// T = (2J_{rB'} − I) ∘ (2J_{rA'} − I) for a pair strengthened at the same
/// (β, anchor). Fixed points of T exist exactly when J_{A+B}(anchor) does.
pub struct ComposedReflector<'a> {
    first: StrengthenedOperator<'a>,
    second: StrengthenedOperator<'a>,
    r: f64,
}

impl<'a> ComposedReflector<'a> {
    /// `first` is the operator whose reflector is applied first (the A
    /// side). Both halves must share β and anchor exactly.
    pub fn new(
        first: StrengthenedOperator<'a>,
        second: StrengthenedOperator<'a>,
        r: f64,
    ) -> Result<Self, Error> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "reflector step must be finite and positive, got {r}"
            )));
        }
        if first.beta != second.beta {
            return Err(Error::InvalidParameter(
                "both operators must be strengthened with the same parameter".into(),
            ));
        }
        Error::check_dims(first.anchor.dim(), second.anchor.dim())?;
        if first.anchor != second.anchor {
            return Err(Error::InvalidParameter(
                "both operators must be strengthened at the same anchor".into(),
            ));
        }
        Ok(ComposedReflector { first, second, r })
    }

    pub fn step(&self) -> f64 {
        self.r
    }

    pub fn beta(&self) -> f64 {
        self.first.beta
    }

    pub fn anchor(&self) -> &Vector {
        self.first.anchor()
    }

    /// One application of T.
    pub fn apply(&self, x: &Vector) -> Vector {
        self.second
            .reflected_resolvent(self.r, &self.first.reflected_resolvent(self.r, x))
    }
}

/// Outcome of iterating T from a starting point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// The norm trace flattened out: evidence that Fix(T) ≠ ∅, i.e. the
    /// resolvent of the sum exists at the anchor.
    Bounded,
    /// The norm trace blew past the cap or kept growing without decay:
    /// evidence that no solution exists.
    Diverging,
    /// Neither signal within the iteration budget.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    /// ‖x_k‖ for k = 0..=iterations.
    pub norm_trace: Vec<f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub max_iter: usize,
    /// Hard cap on the iterate norm; crossing it is immediate divergence
    /// evidence.
    pub blowup: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            max_iter: 100_000,
            blowup: 1e12,
        }
    }
}

/// Iterates x ← T(x) and classifies the orbit.
///
/// The verdict is heuristic evidence, not a decision procedure: feasibility
/// corresponds exactly to bounded orbits, but boundedness is observed
/// through finitely many iterations. Windows of 100 iterations are
/// summarized by their peak norm; a plateau of peaks reads as bounded,
/// while 50 consecutive growing windows whose increments do not decay (or
/// any norm past the blowup cap) read as diverging.
pub fn trajectory_probe(
    t: &ComposedReflector<'_>,
    x0: &Vector,
    options: &ProbeOptions,
) -> Result<ProbeReport, Error> {
    Error::check_dims(x0.dim(), t.anchor().dim())?;
    if options.max_iter == 0 {
        return Err(Error::InvalidParameter(
            "probe needs at least one iteration".into(),
        ));
    }
    if !(options.blowup.is_finite() && options.blowup > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "blowup threshold must be finite and positive, got {}",
            options.blowup
        )));
    }

    let mut x = x0.clone();
    let mut norm_trace = Vec::with_capacity(options.max_iter.min(1 << 20) + 1);
    norm_trace.push(x.norm());

    let mut verdict = ProbeVerdict::Inconclusive;
    if norm_trace[0] > options.blowup {
        verdict = ProbeVerdict::Diverging;
    }

    let mut window_peak = f64::NEG_INFINITY;
    let mut previous_peak: Option<f64> = None;
    // (length, first increment) of the current run of growing windows.
    let mut growth_run: Option<(usize, f64)> = None;

    if verdict == ProbeVerdict::Inconclusive {
        for k in 1..=options.max_iter {
            x = t.apply(&x);
            let n = x.norm();
            norm_trace.push(n);
            if !n.is_finite() || n > options.blowup {
                verdict = ProbeVerdict::Diverging;
                break;
            }
            window_peak = window_peak.max(n);
            if k % PROBE_WINDOW != 0 {
                continue;
            }
            if let Some(prev) = previous_peak {
                let delta = window_peak - prev;
                let scale = window_peak.abs().max(1.0);
                if delta.abs() <= PROBE_PLATEAU_REL * scale {
                    verdict = ProbeVerdict::Bounded;
                    break;
                }
                if delta > 0.0 {
                    growth_run = match growth_run {
                        // Increments that fall below half the run's first
                        // increment look like convergence from below, not
                        // steady escape; start over.
                        Some((len, first)) if delta >= 0.5 * first => Some((len + 1, first)),
                        _ => Some((1, delta)),
                    };
                    if growth_run.is_some_and(|(len, _)| len >= PROBE_GROWTH_RUN) {
                        verdict = ProbeVerdict::Diverging;
                        break;
                    }
                } else {
                    growth_run = None;
                }
            }
            previous_peak = Some(window_peak);
            window_peak = f64::NEG_INFINITY;
        }
    }

    let iterations = norm_trace.len() - 1;
    Ok(ProbeReport {
        verdict,
        norm_trace,
        iterations,
    })
}
