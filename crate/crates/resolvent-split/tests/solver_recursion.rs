//! Recursion-level oracles for the decreasing-step solver: a literal
//! re-transcription of the update lines on a polyhedral problem, the
//! per-iteration decrease certificate, the a-priori error bound, schedule
//! laws, and agreement with the fixed-step baselines.

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use resolvent_split::operators::{ConvexSet, LinearMonotoneOperator, NormalCone};
use resolvent_split::solver::{
    aamr_solve, dr_solve, init_state, lyapunov, solve, step, BaselineConfig, LyapunovWitness,
    SolveConfig, StepSchedule, StopReason, StrengthenedPair,
};
use resolvent_split::Vector;

fn v(coords: &[f64]) -> Vector {
    Vector::new(coords.to_vec()).unwrap()
}

fn random_vec(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Vector {
    Vector::new((0..dim).map(|_| rng.random_range(-scale..scale)).collect()).unwrap()
}

fn random_monotone_matrix(rng: &mut ChaCha8Rng, n: usize) -> LinearMonotoneOperator {
    let g: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += g[k][i] * g[k][j];
            }
            m[i][j] = s / n as f64;
        }
    }
    let s: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    for i in 0..n {
        for j in 0..n {
            m[i][j] += 0.5 * (s[i][j] - s[j][i]);
        }
    }
    LinearMonotoneOperator::from_rows(&m).unwrap()
}

/// Linear pair with its dense-solve witness: (I + M1 + M2) u = anchor.
fn witnessed_linear_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
    beta: f64,
) -> (
    LinearMonotoneOperator,
    LinearMonotoneOperator,
    Vector,
    Vector,
    LyapunovWitness,
) {
    let m1 = random_monotone_matrix(rng, n);
    let m2 = random_monotone_matrix(rng, n);
    let anchor = random_vec(rng, n, 2.0);
    let sys = DMatrix::identity(n, n) + m1.matrix() + m2.matrix();
    let u = sys
        .lu()
        .solve(&DVector::from_column_slice(anchor.as_slice()))
        .unwrap();
    let u_star = Vector::new(u.iter().copied().collect()).unwrap();
    let witness =
        LyapunovWitness::from_solution(&u_star, &m1.apply(&u_star), beta, &anchor).unwrap();
    (m1, m2, anchor, u_star, witness)
}

/// Literal re-transcription of the update lines for a two-projection
/// problem, realizing each strengthened resolvent as β·P((·)/c + z) − βz
/// with c = β + r(1−β). Kept deliberately naive and separate from the
/// library path so the two can cross-check each other.
struct LiteralRecursion {
    c_set: ConvexSet,
    d_set: ConvexSet,
    beta: f64,
    z: Vector,
    r: f64,
    x: Vector,
    y: Vector,
    zc: Vector,
}

impl LiteralRecursion {
    fn ja(&self, r: f64, input: &Vector) -> Vector {
        let c = self.beta + r * (1.0 - self.beta);
        let p = self.c_set.project(&(&(input * (1.0 / c)) + &self.z));
        &(&p * self.beta) - &(&self.z * self.beta)
    }

    fn jb(&self, r: f64, input: &Vector) -> Vector {
        let c = self.beta + r * (1.0 - self.beta);
        let p = self.d_set.project(&(&(input * (1.0 / c)) + &self.z));
        &(&p * self.beta) - &(&self.z * self.beta)
    }

    fn new(c_set: ConvexSet, d_set: ConvexSet, beta: f64, z: Vector, r0: f64, z0: &Vector) -> Self {
        let mut rec = LiteralRecursion {
            c_set,
            d_set,
            beta,
            z,
            r: r0,
            x: Vector::zeros(z0.dim()),
            y: Vector::zeros(z0.dim()),
            zc: Vector::zeros(z0.dim()),
        };
        rec.x = rec.ja(r0, z0);
        rec.y = &(z0 - &rec.x) * (1.0 / r0);
        rec.zc = rec.jb(r0, &(&rec.x - &(&rec.y * r0)));
        rec
    }

    fn step(&mut self) {
        let sigma = (1.0 - self.beta) / self.beta;
        let t = &self.zc + &(&self.y * self.r);
        let x = self.ja(self.r, &t);
        let y = &(&t - &x) * (1.0 / self.r);
        let r_next = self.r / (1.0 + 2.0 * self.r * sigma).sqrt();
        let zc = self.jb(r_next, &(&x - &(&y * r_next)));
        self.x = x;
        self.y = y;
        self.r = r_next;
        self.zc = zc;
    }
}

#[test]
fn step_sequence_matches_a_literal_transcription() {
    let beta = 0.5;
    let z = v(&[3.0, 2.0]);
    let z0 = v(&[-1.0, 0.5]);
    let r0 = 1.2;

    let c_set = ConvexSet::halfspace(v(&[1.0, 0.0]), 1.0).unwrap();
    let d_set = ConvexSet::halfspace(v(&[0.0, 1.0]), 1.0).unwrap();
    let mut oracle =
        LiteralRecursion::new(c_set.clone(), d_set.clone(), beta, z.clone(), r0, &z0);

    let a = NormalCone::new(c_set);
    let b = NormalCone::new(d_set);
    let pair = StrengthenedPair::strengthen(&a, &b, beta, &z).unwrap();
    let mut state = init_state(&pair, StepSchedule::new(beta, r0).unwrap(), &z0).unwrap();

    assert!(state.x().dist(&oracle.x) <= 1e-12);
    assert!(state.y().dist(&oracle.y) <= 1e-12);
    assert!(state.zv().dist(&oracle.zc) <= 1e-12);

    for k in 1..=200 {
        oracle.step();
        step(&mut state, &pair).unwrap();
        assert!(
            state.x().dist(&oracle.x) <= 1e-12
                && state.y().dist(&oracle.y) <= 1e-12
                && state.zv().dist(&oracle.zc) <= 1e-12
                && (state.r() - oracle.r).abs() <= 1e-12,
            "sequences diverged at step {k}"
        );
    }
}

#[test]
fn monitor_never_rises_on_witnessed_linear_pairs() {
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = 0.5;
        let (m1, m2, anchor, _u_star, witness) = witnessed_linear_pair(&mut rng, 8, beta);
        let config = SolveConfig {
            beta,
            tol: 1e-300,
            max_iter: 2_000,
            witness: Some(witness),
            ..SolveConfig::default()
        };
        let report = solve(&m1, &m2, &anchor, &config).unwrap();
        let l = report.lyapunov_trace.as_ref().unwrap();
        for k in 1..l.len() {
            assert!(
                l[k] <= l[k - 1] + 1e-9 * l[k - 1].max(1.0),
                "seed {seed}: monitor rose at k={k}: {} -> {}",
                l[k - 1],
                l[k]
            );
        }
    }
}

#[test]
fn iterates_respect_the_a_priori_bound() {
    // Drive the recursion by hand so the raw x_k is visible: the distance
    // to the witness point v must stay below r_k times the square root of
    // the initial monitor value.
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(100 + seed);
        let beta = 0.5;
        let (m1, m2, anchor, _u_star, witness) = witnessed_linear_pair(&mut rng, 8, beta);
        let pair = StrengthenedPair::strengthen(&m1, &m2, beta, &anchor).unwrap();
        let schedule = StepSchedule::with_default_r0(beta).unwrap();
        let mut state = init_state(&pair, schedule, &Vector::zeros(8)).unwrap();
        let sqrt_l0 = lyapunov(&state, &witness).unwrap().sqrt();
        for _ in 0..2_000 {
            step(&mut state, &pair).unwrap();
            let gap = state.x().dist(witness.v());
            assert!(
                gap <= state.r() * sqrt_l0 + 1e-12,
                "seed {seed}: ‖x − v‖ = {gap:e} exceeded bound {:e} at k={}",
                state.r() * sqrt_l0,
                state.k()
            );
        }
    }
}

#[test]
fn schedule_products_approach_their_limit() {
    for &beta in &[0.3, 0.5, 0.7] {
        let mut schedule = StepSchedule::with_default_r0(beta).unwrap();
        for _ in 0..100_000 {
            schedule = schedule.next();
        }
        let sigma = (1.0 - beta) / beta;
        let product = schedule.index() as f64 * schedule.current_r() * sigma;
        assert!(
            (product - 1.0).abs() <= 1e-2,
            "beta={beta}: k·r_k·σ = {product}"
        );
    }
}

#[test]
fn solver_matches_dense_solve_on_quadratic_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (m1, m2, anchor, u_star, _witness) = witnessed_linear_pair(&mut rng, 10, 0.5);
    let config = SolveConfig {
        tol: 1e-12,
        max_iter: 10_000,
        ..SolveConfig::default()
    };
    let report = solve(&m1, &m2, &anchor, &config).unwrap();
    assert!(
        report.solution.dist(&u_star) <= 1e-6,
        "solution off by {:e}",
        report.solution.dist(&u_star)
    );
}

#[test]
fn all_three_methods_recover_the_same_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (m1, m2, anchor, u_star, _witness) = witnessed_linear_pair(&mut rng, 6, 0.5);

    let strengthened = solve(
        &m1,
        &m2,
        &anchor,
        &SolveConfig {
            tol: 1e-10,
            max_iter: 50_000,
            ..SolveConfig::default()
        },
    )
    .unwrap();
    let dr = dr_solve(
        &m1,
        &m2,
        &anchor,
        &BaselineConfig {
            tol: 1e-10,
            ..BaselineConfig::default()
        },
    )
    .unwrap();
    let aamr = aamr_solve(
        &m1,
        &m2,
        &anchor,
        &BaselineConfig {
            tol: 1e-10,
            ..BaselineConfig::default()
        },
    )
    .unwrap();

    assert_eq!(dr.stop_reason, StopReason::Converged);
    assert_eq!(aamr.stop_reason, StopReason::Converged);
    for (name, report) in [
        ("strengthened", &strengthened),
        ("dr", &dr),
        ("aamr", &aamr),
    ] {
        assert!(
            report.solution.dist(&u_star) <= 1e-6,
            "{name} missed the dense solve by {:e}",
            report.solution.dist(&u_star)
        );
    }
    assert!(strengthened.solution.dist(&dr.solution) <= 1e-6);
    assert!(strengthened.solution.dist(&aamr.solution) <= 1e-6);
}

proptest! {
    #[test]
    fn schedule_recurrence_telescopes_in_inverse_squares(
        beta in 0.05f64..0.95,
        r0_frac in 0.05f64..0.95,
        steps in 1usize..200,
    ) {
        let cap = 2.0 * (1.0 - beta) / beta;
        let r0 = r0_frac * cap;
        let sigma = (1.0 - beta) / beta;
        let mut schedule = StepSchedule::new(beta, r0).unwrap();
        for _ in 0..steps {
            let r = schedule.current_r();
            schedule = schedule.next();
            let r_next = schedule.current_r();
            // 1/r_{k+1}² = 1/r_k² + 2σ/r_k, and the step always shrinks.
            let lhs = 1.0 / (r_next * r_next);
            let rhs = 1.0 / (r * r) + 2.0 * sigma / r;
            prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs());
            prop_assert!(r_next < r);
            prop_assert!(r_next > 0.0);
        }
        prop_assert_eq!(schedule.index(), steps);
    }
}
