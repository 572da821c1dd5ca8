//! Executes a parsed problem description and collects per-iteration traces.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use resolvent_split::operators::{NormalCone, ScaledPlusQuadratic};
use resolvent_split::solver::{
    aamr_solve, dr_solve, dr_step, solve, BaselineConfig, LyapunovWitness, SolveConfig,
    SolveReport, StopReason, StrengthenedPair,
};
use resolvent_split::strengthening::{
    trajectory_probe, ComposedReflector, ProbeOptions, ProbeReport, ProbeVerdict,
};
use resolvent_split::{MonotoneOperator, Subdifferential, Vector};

use crate::csv::Record;
use crate::rate::{fit_rate, RateFit};
use crate::spec::{Method, ProblemKind, ProblemSpec};
use crate::BenchError;

/// The outcome of one run: the traces as CSV-ready records plus summary
/// fields. The error, monitor, and bound columns are populated when a
/// reference solution respectively a certificate could be attached.
#[derive(Clone, Debug)]
pub struct ExperimentResult {
    pub records: Vec<Record>,
    pub stop_reason: StopReason,
    pub solution: Vector,
    pub iterations: usize,
    pub final_residual: f64,
    pub final_error: Option<f64>,
    /// Log–log slope of the error column over the trailing window; present
    /// only when a reference solution was available.
    pub fitted_rate: Option<RateFit>,
    /// Existence evidence gathered when the run did not converge.
    pub probe_verdict: Option<ProbeVerdict>,
}

struct BuiltProblem {
    a: Box<dyn MonotoneOperator>,
    b: Box<dyn MonotoneOperator>,
    /// Matrix realizations when both sides are linear; enables the exact
    /// reference solution and the closed-form certificate.
    exact: Option<(Vector, DMatrix<f64>)>,
}

fn build_problem(spec: &ProblemSpec) -> Result<BuiltProblem, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    // Reserve one derived stream per role so adding draws to one side never
    // shifts another side's realization.
    let exact = spec.exact_linear_solution(&mut ChaCha8Rng::seed_from_u64(spec.seed));
    let (a, b): (Box<dyn MonotoneOperator>, Box<dyn MonotoneOperator>) = match &spec.kind {
        ProblemKind::ProxSum { f, g } => (
            Box::new(Subdifferential::new(f.build(spec.dim, &mut rng)?)),
            Box::new(Subdifferential::new(g.build(spec.dim, &mut rng)?)),
        ),
        ProblemKind::StrongWeak {
            f_core,
            g_core,
            gamma,
            omega,
        } => {
            // Dividing by gamma − omega and splitting off ½‖·‖² cancels the
            // quadratic terms exactly, leaving prox_{f+g}(0) on the scaled
            // cores.
            let scale = 1.0 / (gamma - omega);
            let f = ScaledPlusQuadratic::new(f_core.build(spec.dim, &mut rng)?, scale, 0.0)?;
            let g = ScaledPlusQuadratic::new(g_core.build(spec.dim, &mut rng)?, scale, 0.0)?;
            (
                Box::new(Subdifferential::new(f)),
                Box::new(Subdifferential::new(g)),
            )
        }
        ProblemKind::BestApprox { c, d } => (
            Box::new(NormalCone::new(c.build(spec.dim, &mut rng)?)),
            Box::new(NormalCone::new(d.build(spec.dim, &mut rng)?)),
        ),
        ProblemKind::LinearPair { a, b } | ProblemKind::Custom { a, b } => (
            a.build(spec.dim, &mut rng)?,
            b.build(spec.dim, &mut rng)?,
        ),
    };
    Ok(BuiltProblem { a, b, exact })
}

/// Iterates the half-averaged reflector composition from `start` until it
/// stalls; the stall point is a fixed point of the composed reflector, good
/// to roughly the stall tolerance.
fn locate_fixed_point(
    pair: &StrengthenedPair<'_>,
    r: f64,
    start: &Vector,
    budget: usize,
) -> Option<Vector> {
    let mut w = start.clone();
    for _ in 0..budget {
        let next = dr_step(pair, r, 1.0, &w).ok()?;
        let moved = next.dist(&w);
        w = next;
        if !w.is_finite() || w.norm() > 1e12 {
            return None;
        }
        if moved <= 1e-13 * w.norm().max(1.0) {
            return Some(w);
        }
    }
    None
}

/// Runs the problem with its configured method and assembles the result.
///
/// A reference solution comes from, in order: the config's
/// `known_solution`, the dense solve on `linear_pair`, or a numerically
/// located fixed point of the composed reflector. The strengthened method
/// additionally carries the decrease certificate derived from the same
/// source, which fills the monitor and bound columns.
pub fn run(spec: &ProblemSpec) -> Result<ExperimentResult, BenchError> {
    let built = build_problem(spec)?;
    let anchor = &spec.z;
    let beta = spec.beta;
    let r0 = spec.resolved_r0();

    let pair = StrengthenedPair::strengthen(&*built.a, &*built.b, beta, anchor)?;
    let witness = match &built.exact {
        Some((u_star, ma)) => {
            let ndv = nalgebra::DVector::from_column_slice(u_star.as_slice());
            let a_at = Vector::new((ma * ndv).iter().copied().collect())
                .map_err(BenchError::Solver)?;
            Some(LyapunovWitness::from_solution(u_star, &a_at, beta, anchor)?)
        }
        None => {
            let start = spec.z0.clone().unwrap_or_else(|| Vector::zeros(spec.dim));
            locate_fixed_point(&pair, r0, &start, 20_000)
                .map(|fp| LyapunovWitness::from_fixed_point(pair.a(), r0, &fp))
                .transpose()?
        }
    };
    let known_solution = spec
        .known_solution
        .clone()
        .or_else(|| built.exact.as_ref().map(|(u, _)| u.clone()))
        .or_else(|| witness.as_ref().map(|w| w.solution(beta, anchor)));

    log::info!(
        "running kind={} method={} dim={} (reference solution: {})",
        spec.kind.name(),
        spec.method.name(),
        spec.dim,
        if known_solution.is_some() { "yes" } else { "no" }
    );

    let report = match spec.method {
        Method::Strengthened => {
            let config = SolveConfig {
                beta,
                r0: spec.r0,
                z0: spec.z0.clone(),
                tol: spec.tol,
                max_iter: spec.max_iter,
                known_solution: known_solution.clone(),
                witness,
            };
            solve(&*built.a, &*built.b, anchor, &config)?
        }
        Method::DouglasRachford | Method::Aamr => {
            let config = BaselineConfig {
                beta,
                gamma: spec.baseline_gamma,
                lambda: spec.baseline_lambda,
                start: spec.z0.clone(),
                tol: spec.tol,
                max_iter: spec.max_iter,
                known_solution: known_solution.clone(),
            };
            if spec.method == Method::DouglasRachford {
                dr_solve(&*built.a, &*built.b, anchor, &config)?
            } else {
                aamr_solve(&*built.a, &*built.b, anchor, &config)?
            }
        }
    };

    let probe_verdict = if report.stop_reason == StopReason::MaxIterations {
        let x0 = spec.z0.clone().unwrap_or_else(|| Vector::zeros(spec.dim));
        let t = ComposedReflector::new(pair.a().clone(), pair.b().clone(), r0)?;
        let options = ProbeOptions {
            max_iter: spec.max_iter,
            ..ProbeOptions::default()
        };
        Some(trajectory_probe(&t, &x0, &options)?.verdict)
    } else {
        None
    };

    Ok(assemble(report, probe_verdict))
}

fn assemble(report: SolveReport, probe_verdict: Option<ProbeVerdict>) -> ExperimentResult {
    let n = report.iterations;
    let records: Vec<Record> = (0..=n)
        .map(|k| Record {
            k,
            r: report.r_trace[k],
            residual: report.residual_trace[k],
            error: report.error_trace.as_ref().map(|t| t[k]),
            lyapunov: report.lyapunov_trace.as_ref().map(|t| t[k]),
            bound: report.bound_trace.as_ref().map(|t| t[k]),
        })
        .collect();

    let fitted_rate = report.error_trace.as_ref().and_then(|errors| {
        let ks: Vec<usize> = (0..=n).collect();
        // Skip the transient: fit over the trailing 90% of the run.
        fit_rate(&ks, errors, (n / 10).max(1), n).ok()
    });

    ExperimentResult {
        stop_reason: report.stop_reason,
        solution: report.solution,
        iterations: n,
        final_residual: *report.residual_trace.last().expect("trace never empty"),
        final_error: report
            .error_trace
            .as_ref()
            .and_then(|t| t.last().copied()),
        fitted_rate,
        probe_verdict,
        records,
    }
}

/// Existence evidence for the configured problem: iterates the composed
/// reflector from z0 and classifies the norm trajectory. A bounded verdict
/// backs solvability; divergence indicates there is nothing to find (for
/// intersections: the sets may be disjoint).
pub fn probe(spec: &ProblemSpec) -> Result<ProbeReport, BenchError> {
    let built = build_problem(spec)?;
    let pair = StrengthenedPair::strengthen(&*built.a, &*built.b, spec.beta, &spec.z)?;
    let t = ComposedReflector::new(pair.a().clone(), pair.b().clone(), spec.resolved_r0())?;
    let x0 = spec.z0.clone().unwrap_or_else(|| Vector::zeros(spec.dim));
    let options = ProbeOptions {
        max_iter: spec.max_iter,
        ..ProbeOptions::default()
    };
    Ok(trajectory_probe(&t, &x0, &options)?)
}
