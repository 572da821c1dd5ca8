//! The decreasing-step splitting recursion and its fixed-step baselines.
//!
//! All three methods view the problem through the same pair of strengthened
//! operators (A', B') anchored at z ([`StrengthenedPair`]). The primary
//! recursion interleaves resolvents of A' and B' while the step r_k decays
//! along [`StepSchedule`]; its iterates x_k converge strongly to
//! v = β(J_{A+B}(z) − z), with the a-priori error bound
//!
//!   ‖x_k − v‖ ≤ r_k · √L_0,   L_k = ‖x_k − v‖²/r_k² + ‖y_k − v_A‖²,
//!
//! where L_k never increases along the run (a [`LyapunovWitness`] makes
//! that quantity observable). Since k·r_k tends to β/(1−β), the recovered
//! points [`recover`] approach the resolvent of the sum at rate O(1/k).
//!
//! [`dr_solve`] (Douglas–Rachford on the strengthened pair) and
//! [`aamr_solve`] (averaged alternating modified reflections, an equivalent
//! formulation with its native parameters) serve as fixed-step baselines
//! that target the same point.

use crate::error::Error;
use crate::operator::MonotoneOperator;
use crate::strengthening::StrengthenedOperator;
use crate::vector::Vector;

/// The decaying step sequence r_{k+1} = r_k / √(1 + 2·r_k·(1−β)/β).
///
/// Admissible starts are 0 < r_0 < 2(1−β)/β. Along the recurrence
/// 1/r_{k+1}² = 1/r_k² + (2(1−β)/β)/r_k, so r_k ~ (β/(1−β))/k and the
/// products k·r_k converge to β/(1−β).
#[derive(Clone, Copy, Debug)]
pub struct StepSchedule {
    beta: f64,
    r0: f64,
    r: f64,
    k: usize,
}

impl StepSchedule {
    /// The exclusive upper bound 2(1−β)/β for admissible r_0.
    pub fn r0_upper_bound(beta: f64) -> Result<f64, Error> {
        check_beta(beta)?;
        Ok(2.0 * (1.0 - beta) / beta)
    }

    pub fn new(beta: f64, r0: f64) -> Result<Self, Error> {
        let cap = Self::r0_upper_bound(beta)?;
        if !(r0.is_finite() && r0 > 0.0 && r0 < cap) {
            return Err(Error::InvalidParameter(format!(
                "initial step must lie in (0, {cap}), got {r0}"
            )));
        }
        Ok(StepSchedule {
            beta,
            r0,
            r: r0,
            k: 0,
        })
    }

    /// Starts at 99% of the admissible cap.
    pub fn with_default_r0(beta: f64) -> Result<Self, Error> {
        let cap = Self::r0_upper_bound(beta)?;
        StepSchedule::new(beta, 0.99 * cap)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// The current step r_k.
    pub fn current_r(&self) -> f64 {
        self.r
    }

    /// The current index k.
    pub fn index(&self) -> usize {
        self.k
    }

    /// The schedule advanced by one: r_{k+1} from r_k.
    pub fn next(&self) -> StepSchedule {
        let growth = 1.0 + 2.0 * self.r * (1.0 - self.beta) / self.beta;
        StepSchedule {
            beta: self.beta,
            r0: self.r0,
            r: self.r / growth.sqrt(),
            k: self.k + 1,
        }
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

/// A pair of operators strengthened at the same (β, anchor); the shared
/// data is validated once here so the stepping functions can rely on it.
pub struct StrengthenedPair<'a> {
    a: StrengthenedOperator<'a>,
    b: StrengthenedOperator<'a>,
}

impl<'a> StrengthenedPair<'a> {
    pub fn new(
        a: StrengthenedOperator<'a>,
        b: StrengthenedOperator<'a>,
    ) -> Result<Self, Error> {
        if a.beta() != b.beta() {
            return Err(Error::InvalidParameter(
                "both operators must be strengthened with the same parameter".into(),
            ));
        }
        Error::check_dims(a.anchor().dim(), b.anchor().dim())?;
        if a.anchor() != b.anchor() {
            return Err(Error::InvalidParameter(
                "both operators must be strengthened at the same anchor".into(),
            ));
        }
        Ok(StrengthenedPair { a, b })
    }

    /// Builds the pair from the base operators directly.
    pub fn strengthen(
        a: &'a dyn MonotoneOperator,
        b: &'a dyn MonotoneOperator,
        beta: f64,
        anchor: &Vector,
    ) -> Result<Self, Error> {
        let a = StrengthenedOperator::new(a, beta, anchor.clone())?;
        let b = StrengthenedOperator::new(b, beta, anchor.clone())?;
        StrengthenedPair::new(a, b)
    }

    pub fn a(&self) -> &StrengthenedOperator<'a> {
        &self.a
    }

    pub fn b(&self) -> &StrengthenedOperator<'a> {
        &self.b
    }

    pub fn beta(&self) -> f64 {
        self.a.beta()
    }

    pub fn anchor(&self) -> &Vector {
        self.a.anchor()
    }
}

/// Rolling state of the primary recursion.
///
/// After k completed steps it holds x_k, y_k and the trailing point z_k of
/// the recursion, together with the schedule positioned at r_k. The trailing
/// point satisfies z_k = J_{r_k B'}(x_k − r_k y_k) at every index including
/// k = 0; initialization fires the z-update once so that the decrease
/// certificate is valid from the very first step.
#[derive(Clone, Debug)]
pub struct SolverState {
    x: Vector,
    y: Vector,
    zv: Vector,
    schedule: StepSchedule,
}

impl SolverState {
    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn y(&self) -> &Vector {
        &self.y
    }

    /// The z_k of the recursion (not the anchor).
    pub fn zv(&self) -> &Vector {
        &self.zv
    }

    pub fn schedule(&self) -> &StepSchedule {
        &self.schedule
    }

    /// Completed steps.
    pub fn k(&self) -> usize {
        self.schedule.index()
    }

    /// The current step size r_k.
    pub fn r(&self) -> f64 {
        self.schedule.current_r()
    }
}

/// Prepares x_0 = J_{r_0 A'}(z_0), y_0 = (z_0 − x_0)/r_0, and the trailing
/// point z-update at index 0, J_{r_0 B'}(x_0 − r_0 y_0).
///
/// The seed z_0 enters only through x_0 and y_0. Running the B-side update
/// once here puts the state on the graph of B' immediately: (x_0 − r_0 y_0 −
/// z)/r_0 ∈ B'(z) holds for the stored z, which is exactly the premise the
/// per-step decrease of the monitored quantity needs. Starting from the raw
/// seed instead can make the monitor rise across the first step.
pub fn init_state(
    pair: &StrengthenedPair<'_>,
    schedule: StepSchedule,
    z0: &Vector,
) -> Result<SolverState, Error> {
    if schedule.beta() != pair.beta() {
        return Err(Error::InvalidParameter(
            "schedule and operators disagree on the strengthening parameter".into(),
        ));
    }
    if schedule.index() != 0 {
        return Err(Error::InvalidParameter(
            "initialization requires the schedule at its start".into(),
        ));
    }
    Error::check_dims(z0.dim(), pair.anchor().dim())?;
    if !z0.is_finite() {
        return Err(Error::NonFiniteData);
    }
    let r0 = schedule.current_r();
    let x = pair.a().resolvent(r0, z0);
    let y = &(z0 - &x) * (1.0 / r0);
    // x_0 − r_0 y_0 = 2 x_0 − z_0
    let zv = pair.b().resolvent(r0, &(&x - &(&y * r0)));
    Ok(SolverState { x, y, zv, schedule })
}

/// Advances the recursion by one step:
///
///   x_{k} = J_{r_{k−1} A'}(z_{k−1} + r_{k−1} y_{k−1})
///   y_{k} = (z_{k−1} + r_{k−1} y_{k−1} − x_{k}) / r_{k−1}
///   z_{k} = J_{r_{k} B'}(x_{k} − r_{k} y_{k})
///
/// with the schedule advancing between the y- and z-updates, so the B-side
/// resolvent already uses the shrunk step. Returns ‖x_k − x_{k−1}‖.
pub fn step(state: &mut SolverState, pair: &StrengthenedPair<'_>) -> Result<f64, Error> {
    if state.schedule.beta() != pair.beta() {
        return Err(Error::InvalidParameter(
            "state and operators disagree on the strengthening parameter".into(),
        ));
    }
    let r_prev = state.schedule.current_r();
    let t = &state.zv + &(&state.y * r_prev);
    let x_new = pair.a().resolvent(r_prev, &t);
    let y_new = &(&t - &x_new) * (1.0 / r_prev);
    state.schedule = state.schedule.next();
    let r_new = state.schedule.current_r();
    let z_new = pair.b().resolvent(r_new, &(&x_new - &(&y_new * r_new)));
    let residual = x_new.dist(&state.x);
    state.x = x_new;
    state.y = y_new;
    state.zv = z_new;
    Ok(residual)
}

/// Pulls an iterate back to the original geometry: u = x/β + anchor. Along
/// a run these points converge to J_{A+B}(anchor).
pub fn recover(state: &SolverState, anchor: &Vector) -> Vector {
    recover_point(&state.x, state.schedule.beta(), anchor)
}

/// recover() for a bare point.
pub fn recover_point(x: &Vector, beta: f64, anchor: &Vector) -> Vector {
    &(x * (1.0 / beta)) + anchor
}

/// A certified zero of A' + B': the point v together with a value
/// v_A ∈ A'(v) for which −v_A ∈ B'(v). Makes the decrease quantity L_k and
/// the a-priori bound computable for test problems with known answers.
#[derive(Clone, Debug)]
pub struct LyapunovWitness {
    v: Vector,
    v_a: Vector,
}

impl LyapunovWitness {
    /// From a known solution u* = J_{A+B}(anchor) and the value a* = A(u*)
    /// of a single-valued A side: then v = β(u* − anchor) and
    /// v_A = 2(1−β)a* + (1−β)(u* − anchor). The B-side requirement
    /// −v_A ∈ B'(v) holds automatically because anchor − u* − a* ∈ B(u*).
    pub fn from_solution(
        u_star: &Vector,
        a_at_solution: &Vector,
        beta: f64,
        anchor: &Vector,
    ) -> Result<Self, Error> {
        check_beta(beta)?;
        Error::check_dims(u_star.dim(), anchor.dim())?;
        Error::check_dims(a_at_solution.dim(), anchor.dim())?;
        let shift = u_star - anchor;
        let v = &shift * beta;
        let v_a = &(a_at_solution * (2.0 * (1.0 - beta))) + &(&shift * (1.0 - beta));
        if !(v.is_finite() && v_a.is_finite()) {
            return Err(Error::NonFiniteData);
        }
        Ok(LyapunovWitness { v, v_a })
    }

    /// From a fixed point u of the composed reflector at step r:
    /// v = J_{rA'}(u) and v_A = (u − v)/r. Useful when only the fixed
    /// point is available (e.g. located numerically); accuracy of the
    /// witness matches the accuracy of u.
    pub fn from_fixed_point(
        a: &StrengthenedOperator<'_>,
        r: f64,
        u: &Vector,
    ) -> Result<Self, Error> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "fixed-point step must be finite and positive, got {r}"
            )));
        }
        Error::check_dims(u.dim(), a.anchor().dim())?;
        let v = a.resolvent(r, u);
        let v_a = &(u - &v) * (1.0 / r);
        Ok(LyapunovWitness { v, v_a })
    }

    /// The certified zero of A' + B'.
    pub fn v(&self) -> &Vector {
        &self.v
    }

    /// The certificate value v_A ∈ A'(v) with −v_A ∈ B'(v).
    pub fn certificate(&self) -> &Vector {
        &self.v_a
    }

    /// The fixed point v + r·v_A of the composed reflector at step r. The
    /// same point is stationary for the fixed-step baselines run at that
    /// step.
    pub fn fixed_point(&self, r: f64) -> Vector {
        &self.v + &(&self.v_a * r)
    }

    /// The recovered solution (1/β)v + anchor = J_{A+B}(anchor).
    pub fn solution(&self, beta: f64, anchor: &Vector) -> Vector {
        recover_point(&self.v, beta, anchor)
    }
}

/// L_k = ‖x_k − v‖²/r_k² + ‖y_k − v_A‖², the nonincreasing quantity that
/// drives the a-priori bound.
pub fn lyapunov(state: &SolverState, witness: &LyapunovWitness) -> Result<f64, Error> {
    Error::check_dims(state.x.dim(), witness.v.dim())?;
    Error::check_dims(state.y.dim(), witness.v_a.dim())?;
    let r = state.schedule.current_r();
    let dx = state.x.dist(&witness.v);
    let dy = state.y.dist(&witness.v_a);
    Ok(dx * dx / (r * r) + dy * dy)
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The successive-iterate residual fell below the tolerance.
    Converged,
    /// The iteration budget ran out first.
    MaxIterations,
}

/// Everything a run records. All traces are indexed by k = 0..=iterations;
/// residual_trace[0] is +∞ (there is no previous iterate).
#[derive(Clone, Debug)]
pub struct SolveReport {
    /// The recovered approximation of J_{A+B}(anchor).
    pub solution: Vector,
    pub iterations: usize,
    pub stop_reason: StopReason,
    /// ‖x_k − x_{k−1}‖ per step.
    pub residual_trace: Vec<f64>,
    /// The step size used at each index.
    pub r_trace: Vec<f64>,
    /// ‖u_k − u*‖ when a reference solution was supplied.
    pub error_trace: Option<Vec<f64>>,
    /// L_k when a witness was supplied.
    pub lyapunov_trace: Option<Vec<f64>>,
    /// The a-priori bound b_k = r_k·√L_0 on ‖x_k − v‖, when a witness was
    /// supplied.
    pub bound_trace: Option<Vec<f64>>,
}

/// Knobs for [`solve`]. Defaults: β = 1/2, r_0 at 99% of its cap, z_0 = 0,
/// relative successive-iterate tolerance 1e-8, budget 100 000 steps.
#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub beta: f64,
    /// None → 0.99 · 2(1−β)/β.
    pub r0: Option<f64>,
    /// None → the origin.
    pub z0: Option<Vector>,
    pub tol: f64,
    pub max_iter: usize,
    /// Reference solution; enables the error trace. When absent but a
    /// witness is present, the witness's encoded solution is used instead.
    pub known_solution: Option<Vector>,
    /// Certified zero of A' + B'; enables the L_k and bound traces.
    pub witness: Option<LyapunovWitness>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            beta: 0.5,
            r0: None,
            z0: None,
            tol: 1e-8,
            max_iter: 100_000,
            known_solution: None,
            witness: None,
        }
    }
}

fn check_tol_budget(tol: f64, max_iter: usize) -> Result<(), Error> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be finite and positive, got {tol}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter(
            "iteration budget must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Runs the decreasing-step recursion until the whole state stalls,
/// max(‖x_k − x_{k−1}‖, ‖z_k − z_{k−1}‖, ‖y_k − y_{k−1}‖) ≤
/// tol·max(1, ‖x_k‖), or the budget runs out, and recovers the solution.
pub fn solve(
    a: &dyn MonotoneOperator,
    b: &dyn MonotoneOperator,
    anchor: &Vector,
    config: &SolveConfig,
) -> Result<SolveReport, Error> {
    check_tol_budget(config.tol, config.max_iter)?;
    if !anchor.is_finite() {
        return Err(Error::NonFiniteData);
    }
    let schedule = match config.r0 {
        Some(r0) => StepSchedule::new(config.beta, r0)?,
        None => StepSchedule::with_default_r0(config.beta)?,
    };
    let pair = StrengthenedPair::strengthen(a, b, config.beta, anchor)?;
    let z0 = match &config.z0 {
        Some(z0) => {
            Error::check_dims(z0.dim(), anchor.dim())?;
            z0.clone()
        }
        None => Vector::zeros(anchor.dim()),
    };
    if let Some(known) = &config.known_solution {
        Error::check_dims(known.dim(), anchor.dim())?;
    }
    if let Some(w) = &config.witness {
        Error::check_dims(w.v.dim(), anchor.dim())?;
    }

    let mut state = init_state(&pair, schedule, &z0)?;

    let mut residual_trace = Vec::with_capacity(config.max_iter + 1);
    let mut r_trace = Vec::with_capacity(config.max_iter + 1);
    residual_trace.push(f64::INFINITY);
    r_trace.push(state.r());

    // A witness pins the solution at v/β + anchor, so it can feed the error
    // trace when no reference point was given explicitly.
    let known_solution = config.known_solution.clone().or_else(|| {
        config
            .witness
            .as_ref()
            .map(|w| w.solution(config.beta, anchor))
    });
    let mut error_trace = known_solution.as_ref().map(|known| {
        let mut t = Vec::with_capacity(config.max_iter + 1);
        t.push(recover(&state, anchor).dist(known));
        t
    });
    let sqrt_l0 = match &config.witness {
        Some(w) => Some(lyapunov(&state, w)?.sqrt()),
        None => None,
    };
    let mut lyapunov_trace = match (&config.witness, sqrt_l0) {
        (Some(w), _) => {
            let mut t = Vec::with_capacity(config.max_iter + 1);
            t.push(lyapunov(&state, w)?);
            Some(t)
        }
        _ => None,
    };
    let mut bound_trace = sqrt_l0.map(|s| {
        let mut t = Vec::with_capacity(config.max_iter + 1);
        t.push(state.r() * s);
        t
    });

    let mut stop_reason = StopReason::MaxIterations;
    for k in 1..=config.max_iter {
        let z_prev = state.zv.clone();
        let y_prev = state.y.clone();
        let residual = step(&mut state, &pair)?;
        if !(state.x.is_finite() && state.y.is_finite() && state.zv.is_finite()) {
            return Err(Error::NonFiniteIterate {
                iteration: k,
                detail: "an iterate of the splitting recursion left the finite range".into(),
            });
        }
        residual_trace.push(residual);
        r_trace.push(state.r());
        if let (Some(t), Some(known)) = (error_trace.as_mut(), known_solution.as_ref()) {
            t.push(recover(&state, anchor).dist(known));
        }
        if let (Some(t), Some(w)) = (lyapunov_trace.as_mut(), config.witness.as_ref()) {
            t.push(lyapunov(&state, w)?);
        }
        if let (Some(t), Some(s)) = (bound_trace.as_mut(), sqrt_l0) {
            t.push(state.r() * s);
        }
        // Projection-like resolvents are piecewise constant, so x and even
        // the trailing point can repeat for a step while y is still in
        // motion (on inconsistent problems, forever); only a simultaneous
        // stall of the full state marks a solution.
        let stall = residual
            .max(state.zv.dist(&z_prev))
            .max(state.y.dist(&y_prev));
        if stall <= config.tol * state.x.norm().max(1.0) {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    Ok(SolveReport {
        solution: recover(&state, anchor),
        iterations: state.k(),
        stop_reason,
        residual_trace,
        r_trace,
        error_trace,
        lyapunov_trace,
        bound_trace,
    })
}

/// One Douglas–Rachford step on the strengthened pair at fixed step γ:
/// w ← w + λ·(J_{γB'}((2J_{γA'} − I)w) − J_{γA'}(w)).
pub fn dr_step(
    pair: &StrengthenedPair<'_>,
    gamma: f64,
    lambda: f64,
    w: &Vector,
) -> Result<Vector, Error> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step size must be finite and positive, got {gamma}"
        )));
    }
    if !(lambda.is_finite() && lambda > 0.0 && lambda <= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "relaxation must lie in (0, 2], got {lambda}"
        )));
    }
    Error::check_dims(w.dim(), pair.anchor().dim())?;
    let ja = pair.a().resolvent(gamma, w);
    let reflected = &(&ja * 2.0) - w;
    let jb = pair.b().resolvent(gamma, &reflected);
    Ok(w + &(&(&jb - &ja) * lambda))
}

/// One averaged alternating modified reflections step with its native
/// parameters (γ, λ): in strengthened-resolvent form, with r = γ/(2(1−β)),
/// v ← v + 2λ·(J_{rB'}((2J_{rA'} − I)v) − J_{rA'}(v)).
pub fn aamr_step(
    pair: &StrengthenedPair<'_>,
    gamma: f64,
    lambda: f64,
    v: &Vector,
) -> Result<Vector, Error> {
    let beta = pair.beta();
    let gamma_cap = 2.0 * (1.0 - beta);
    if !(gamma.is_finite() && gamma > 0.0 && gamma <= gamma_cap) {
        return Err(Error::InvalidParameter(format!(
            "step size must lie in (0, {gamma_cap}], got {gamma}"
        )));
    }
    if !(lambda.is_finite() && lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "averaging weight must lie in (0, 1], got {lambda}"
        )));
    }
    Error::check_dims(v.dim(), pair.anchor().dim())?;
    let r = gamma / (2.0 * (1.0 - beta));
    let ja = pair.a().resolvent(r, v);
    let reflected = &(&ja * 2.0) - v;
    let jb = pair.b().resolvent(r, &reflected);
    Ok(v + &(&(&jb - &ja) * (2.0 * lambda)))
}

/// Knobs for the fixed-step baselines. `gamma`/`lambda` default per method:
/// Douglas–Rachford uses γ = 1, λ = 1; the averaged-reflections method uses
/// γ = 2(1−β) (the value that targets the resolvent of the plain sum) and
/// λ = 1/2.
#[derive(Clone, Debug)]
pub struct BaselineConfig {
    pub beta: f64,
    pub gamma: Option<f64>,
    pub lambda: Option<f64>,
    /// Starting iterate; None → the origin.
    pub start: Option<Vector>,
    pub tol: f64,
    pub max_iter: usize,
    pub known_solution: Option<Vector>,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        BaselineConfig {
            beta: 0.5,
            gamma: None,
            lambda: None,
            start: None,
            tol: 1e-8,
            max_iter: 100_000,
            known_solution: None,
        }
    }
}

enum BaselineKind {
    DouglasRachford,
    AveragedReflections,
}

/// Douglas–Rachford on the strengthened pair; the shadow sequence
/// (1/β)J_{γA'}(w_k) + anchor approximates J_{A+B}(anchor).
pub fn dr_solve(
    a: &dyn MonotoneOperator,
    b: &dyn MonotoneOperator,
    anchor: &Vector,
    config: &BaselineConfig,
) -> Result<SolveReport, Error> {
    baseline_solve(a, b, anchor, config, BaselineKind::DouglasRachford)
}

/// Averaged alternating modified reflections with native parameters; at
/// the default γ = 2(1−β) its shadow sequence targets J_{A+B}(anchor).
pub fn aamr_solve(
    a: &dyn MonotoneOperator,
    b: &dyn MonotoneOperator,
    anchor: &Vector,
    config: &BaselineConfig,
) -> Result<SolveReport, Error> {
    baseline_solve(a, b, anchor, config, BaselineKind::AveragedReflections)
}

fn baseline_solve(
    a: &dyn MonotoneOperator,
    b: &dyn MonotoneOperator,
    anchor: &Vector,
    config: &BaselineConfig,
    kind: BaselineKind,
) -> Result<SolveReport, Error> {
    check_tol_budget(config.tol, config.max_iter)?;
    if !anchor.is_finite() {
        return Err(Error::NonFiniteData);
    }
    check_beta(config.beta)?;
    let pair = StrengthenedPair::strengthen(a, b, config.beta, anchor)?;
    let (gamma, lambda) = match kind {
        BaselineKind::DouglasRachford => {
            (config.gamma.unwrap_or(1.0), config.lambda.unwrap_or(1.0))
        }
        BaselineKind::AveragedReflections => (
            config.gamma.unwrap_or(2.0 * (1.0 - config.beta)),
            config.lambda.unwrap_or(0.5),
        ),
    };
    // The step at which the A-side resolvent is evaluated, which is also
    // the scale for the shadow recovery.
    let shadow_r = match kind {
        BaselineKind::DouglasRachford => gamma,
        BaselineKind::AveragedReflections => gamma / (2.0 * (1.0 - config.beta)),
    };
    let mut w = match &config.start {
        Some(start) => {
            Error::check_dims(start.dim(), anchor.dim())?;
            start.clone()
        }
        None => Vector::zeros(anchor.dim()),
    };
    if let Some(known) = &config.known_solution {
        Error::check_dims(known.dim(), anchor.dim())?;
    }

    let shadow = |w: &Vector| -> Vector {
        recover_point(&pair.a().resolvent(shadow_r, w), config.beta, anchor)
    };

    let mut u = shadow(&w);
    let mut residual_trace = Vec::with_capacity(config.max_iter + 1);
    let mut r_trace = Vec::with_capacity(config.max_iter + 1);
    residual_trace.push(f64::INFINITY);
    r_trace.push(shadow_r);
    let mut error_trace = config
        .known_solution
        .as_ref()
        .map(|known| vec![u.dist(known)]);

    let mut stop_reason = StopReason::MaxIterations;
    let mut iterations = 0;
    for k in 1..=config.max_iter {
        w = match kind {
            BaselineKind::DouglasRachford => dr_step(&pair, gamma, lambda, &w)?,
            BaselineKind::AveragedReflections => aamr_step(&pair, gamma, lambda, &w)?,
        };
        if !w.is_finite() {
            return Err(Error::NonFiniteIterate {
                iteration: k,
                detail: "a baseline iterate left the finite range".into(),
            });
        }
        let u_new = shadow(&w);
        let residual = u_new.dist(&u);
        u = u_new;
        iterations = k;
        residual_trace.push(residual);
        r_trace.push(shadow_r);
        if let (Some(t), Some(known)) = (error_trace.as_mut(), config.known_solution.as_ref()) {
            t.push(u.dist(known));
        }
        if residual <= config.tol * u.norm().max(1.0) {
            stop_reason = StopReason::Converged;
            break;
        }
    }

    Ok(SolveReport {
        solution: u,
        iterations,
        stop_reason,
        residual_trace,
        r_trace,
        error_trace,
        lyapunov_trace: None,
        bound_trace: None,
    })
}
