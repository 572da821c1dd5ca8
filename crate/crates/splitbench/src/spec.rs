//! Problem descriptions read from plain-text config files.
//!
//! The format is line-oriented `key = value` with `[section]` headers, `#`
//! comments, and blank lines. Vectors are whitespace-separated numbers
//! (`z = 3.0 1.0`); matrices separate rows with `;`
//! (`matrix = 2 0; 0 1`). Example:
//!
//! ```text
//! kind = best_approx
//! z = 3.0 1.0
//! beta = 0.5
//! tol = 1e-10
//!
//! [set.C]
//! type = halfspace
//! normal = 1.0 0.0
//! offset = 1.0
//!
//! [set.D]
//! type = ball
//! center = 0.0 0.0
//! radius = 1.0
//! ```
//!
//! Top-level keys: `kind` (required), `z` (the anchor; required except for
//! `strong_weak`), `dim` (required when no vector fixes the dimension),
//! `beta`, `r0`, `z0`, `tol`, `max_iter`, `method`
//! (`strengthened | dr | aamr`), `seed`, `known_solution`, and for
//! `strong_weak` the moduli `gamma` and `omega`. A `[baseline]` section may
//! set `gamma`/`lambda` for the fixed-step methods.
//!
//! Problem kinds and the sections they read:
//!
//! * `prox_sum`: `[function.f]`, `[function.g]`; solves prox_{f+g}(z).
//! * `strong_weak`: `[function.f]`, `[function.g]` hold the convex cores;
//!   minimizes (core_f + (gamma/2)‖·‖²) + (core_g − (omega/2)‖·‖²).
//! * `best_approx`: `[set.C]`, `[set.D]`; projects z onto C ∩ D.
//! * `linear_pair`: `[operator.A]`, `[operator.B]`, matrix-valued; solves
//!   for J_{A+B}(z) with an exact reference solution derived by a dense
//!   linear solve.
//! * `custom`: `[operator.A]`, `[operator.B]` of any operator type.
//!
//! Set sections: `type = box | ball | halfspace | hyperplane | subspace |
//! affine | singleton | random_subspace` with keys `lower`/`upper`,
//! `center`/`radius`, `normal`/`offset`, `basis` (rows are basis vectors),
//! `point`, `subdim`. Function sections: `type = zero | l1 | quadratic |
//! linear | indicator` with keys `weight`, `center`, `slope`, `intercept`,
//! and for indicators a nested set description under `set = <type>`.
//! Operator sections: `type = matrix | random_monotone | zero |
//! normal_cone | subdifferential`; the latter two nest a set (`set = …`)
//! or function (`function = …`) description. Random pieces are drawn
//! reproducibly from the top-level `seed`.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::path::Path;

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use resolvent_split::operators::{
    ConvexSet, IndicatorFunction, L1Norm, LinearFunction, LinearMonotoneOperator, NormalCone,
    QuadraticDistance, ZeroFunction,
};
use resolvent_split::solver::StepSchedule;
use resolvent_split::{MonotoneOperator, ProxFunction, Subdifferential, Vector};

use crate::BenchError;

/// Which iteration drives a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// The decreasing-step strengthened splitting recursion.
    Strengthened,
    /// Douglas–Rachford at a fixed step.
    DouglasRachford,
    /// Averaged alternating modified reflections at a fixed step.
    Aamr,
}

impl Method {
    fn parse(field: &str, s: &str) -> Result<Self, BenchError> {
        match s {
            "strengthened" => Ok(Method::Strengthened),
            "dr" => Ok(Method::DouglasRachford),
            "aamr" => Ok(Method::Aamr),
            other => Err(BenchError::field(
                field,
                format!("unknown method '{other}' (expected strengthened | dr | aamr)"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Strengthened => "strengthened",
            Method::DouglasRachford => "dr",
            Method::Aamr => "aamr",
        }
    }
}

/// A set description as written in the config; built into a [`ConvexSet`]
/// when the run starts.
#[derive(Clone, Debug)]
pub enum SetSpec {
    Box { lower: Vector, upper: Vector },
    Ball { center: Vector, radius: f64 },
    Halfspace { normal: Vector, offset: f64 },
    Hyperplane { normal: Vector, offset: f64 },
    Subspace { basis: Vec<Vector> },
    Affine { point: Vector, basis: Vec<Vector> },
    Singleton { point: Vector },
    /// span of `subdim` random directions in the ambient space.
    RandomSubspace { subdim: usize },
}

impl SetSpec {
    fn dim(&self) -> Option<usize> {
        match self {
            SetSpec::Box { lower, .. } => Some(lower.dim()),
            SetSpec::Ball { center, .. } => Some(center.dim()),
            SetSpec::Halfspace { normal, .. } | SetSpec::Hyperplane { normal, .. } => {
                Some(normal.dim())
            }
            SetSpec::Subspace { basis } => basis.first().map(Vector::dim),
            SetSpec::Affine { point, .. } => Some(point.dim()),
            SetSpec::Singleton { point } => Some(point.dim()),
            SetSpec::RandomSubspace { .. } => None,
        }
    }

    pub(crate) fn build(&self, dim: usize, rng: &mut ChaCha8Rng) -> Result<ConvexSet, BenchError> {
        let set = match self {
            SetSpec::Box { lower, upper } => ConvexSet::box_set(lower.clone(), upper.clone())?,
            SetSpec::Ball { center, radius } => ConvexSet::ball(center.clone(), *radius)?,
            SetSpec::Halfspace { normal, offset } => {
                ConvexSet::halfspace(normal.clone(), *offset)?
            }
            SetSpec::Hyperplane { normal, offset } => {
                ConvexSet::hyperplane(normal.clone(), *offset)?
            }
            SetSpec::Subspace { basis } => ConvexSet::subspace(basis.clone())?,
            SetSpec::Affine { point, basis } => {
                ConvexSet::affine_subspace(point.clone(), basis.clone())?
            }
            SetSpec::Singleton { point } => ConvexSet::singleton(point.clone())?,
            SetSpec::RandomSubspace { subdim } => {
                let basis = (0..*subdim).map(|_| random_vector(rng, dim)).collect();
                ConvexSet::subspace(basis)?
            }
        };
        Ok(set)
    }
}

/// A proximable-function description; built when the run starts.
#[derive(Clone, Debug)]
pub enum FunctionSpec {
    Zero,
    L1 { weight: f64 },
    Quadratic { center: Vector, weight: f64 },
    Linear { slope: Vector, intercept: f64 },
    Indicator(SetSpec),
}

impl FunctionSpec {
    fn dim(&self) -> Option<usize> {
        match self {
            FunctionSpec::Zero | FunctionSpec::L1 { .. } => None,
            FunctionSpec::Quadratic { center, .. } => Some(center.dim()),
            FunctionSpec::Linear { slope, .. } => Some(slope.dim()),
            FunctionSpec::Indicator(set) => set.dim(),
        }
    }

    pub(crate) fn build(
        &self,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Box<dyn ProxFunction>, BenchError> {
        let f: Box<dyn ProxFunction> = match self {
            FunctionSpec::Zero => Box::new(ZeroFunction),
            FunctionSpec::L1 { weight } => Box::new(L1Norm::new(*weight)?),
            FunctionSpec::Quadratic { center, weight } => {
                Box::new(QuadraticDistance::new(center.clone(), *weight)?)
            }
            FunctionSpec::Linear { slope, intercept } => {
                Box::new(LinearFunction::new(slope.clone(), *intercept)?)
            }
            FunctionSpec::Indicator(set) => Box::new(IndicatorFunction::new(set.build(dim, rng)?)),
        };
        Ok(f)
    }
}

/// A monotone-operator description; built when the run starts.
#[derive(Clone, Debug)]
pub enum OperatorSpec {
    Matrix(DMatrix<f64>),
    /// A reproducibly drawn monotone matrix: Gram part plus a skew part,
    /// both scaled.
    RandomMonotone { scale: f64 },
    Zero,
    NormalCone(SetSpec),
    Subdifferential(FunctionSpec),
}

impl OperatorSpec {
    fn dim(&self) -> Option<usize> {
        match self {
            OperatorSpec::Matrix(m) => Some(m.nrows()),
            OperatorSpec::RandomMonotone { .. } | OperatorSpec::Zero => None,
            OperatorSpec::NormalCone(set) => set.dim(),
            OperatorSpec::Subdifferential(f) => f.dim(),
        }
    }

    fn is_linear(&self) -> bool {
        matches!(
            self,
            OperatorSpec::Matrix(_) | OperatorSpec::RandomMonotone { .. } | OperatorSpec::Zero
        )
    }

    /// The matrix realization, for the linear variants.
    pub(crate) fn materialize_matrix(
        &self,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Option<DMatrix<f64>> {
        match self {
            OperatorSpec::Matrix(m) => Some(m.clone()),
            OperatorSpec::RandomMonotone { scale } => {
                Some(random_monotone_matrix(rng, dim, *scale))
            }
            OperatorSpec::Zero => Some(DMatrix::zeros(dim, dim)),
            _ => None,
        }
    }

    pub(crate) fn build(
        &self,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<Box<dyn MonotoneOperator>, BenchError> {
        let op: Box<dyn MonotoneOperator> = match self {
            OperatorSpec::Matrix(m) => Box::new(LinearMonotoneOperator::new(m.clone())?),
            OperatorSpec::RandomMonotone { scale } => Box::new(LinearMonotoneOperator::new(
                random_monotone_matrix(rng, dim, *scale),
            )?),
            OperatorSpec::Zero => Box::new(Subdifferential::new(ZeroFunction)),
            OperatorSpec::NormalCone(set) => Box::new(NormalCone::new(set.build(dim, rng)?)),
            OperatorSpec::Subdifferential(f) => {
                Box::new(Subdifferential::new(f.build(dim, rng)?))
            }
        };
        Ok(op)
    }
}

/// What problem a config describes.
#[derive(Clone, Debug)]
pub enum ProblemKind {
    /// Evaluate prox_{f+g} at the anchor.
    ProxSum { f: FunctionSpec, g: FunctionSpec },
    /// Minimize (f_core + (gamma/2)‖·‖²) + (g_core − (omega/2)‖·‖²).
    StrongWeak {
        f_core: FunctionSpec,
        g_core: FunctionSpec,
        gamma: f64,
        omega: f64,
    },
    /// Project the anchor onto C ∩ D.
    BestApprox { c: SetSpec, d: SetSpec },
    /// J_{A+B}(anchor) for matrix-valued A, B; carries an exact reference.
    LinearPair { a: OperatorSpec, b: OperatorSpec },
    /// J_{A+B}(anchor) for arbitrary operator descriptions.
    Custom { a: OperatorSpec, b: OperatorSpec },
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::ProxSum { .. } => "prox_sum",
            ProblemKind::StrongWeak { .. } => "strong_weak",
            ProblemKind::BestApprox { .. } => "best_approx",
            ProblemKind::LinearPair { .. } => "linear_pair",
            ProblemKind::Custom { .. } => "custom",
        }
    }

    fn component_dims(&self) -> Vec<(String, usize)> {
        let mut dims = Vec::new();
        let mut push = |field: &str, d: Option<usize>| {
            if let Some(d) = d {
                dims.push((field.to_string(), d));
            }
        };
        match self {
            ProblemKind::ProxSum { f, g } => {
                push("function.f", f.dim());
                push("function.g", g.dim());
            }
            ProblemKind::StrongWeak { f_core, g_core, .. } => {
                push("function.f", f_core.dim());
                push("function.g", g_core.dim());
            }
            ProblemKind::BestApprox { c, d } => {
                push("set.C", c.dim());
                push("set.D", d.dim());
            }
            ProblemKind::LinearPair { a, b } | ProblemKind::Custom { a, b } => {
                push("operator.A", a.dim());
                push("operator.B", b.dim());
            }
        }
        dims
    }
}

/// A fully validated problem description: the parse result, and the input
/// to [`crate::runner::run`].
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Ambient dimension, inferred or given explicitly.
    pub dim: usize,
    /// The anchor point z; the origin for `strong_weak`.
    pub z: Vector,
    pub beta: f64,
    /// None → 99% of the step cap 2(1−β)/β.
    pub r0: Option<f64>,
    pub z0: Option<Vector>,
    pub tol: f64,
    pub max_iter: usize,
    pub method: Method,
    /// Fixed-step baseline parameters; None → per-method defaults.
    pub baseline_gamma: Option<f64>,
    pub baseline_lambda: Option<f64>,
    pub seed: u64,
    pub known_solution: Option<Vector>,
}

impl ProblemSpec {
    /// The starting step size after defaulting.
    pub fn resolved_r0(&self) -> f64 {
        self.r0
            .unwrap_or_else(|| 0.99 * 2.0 * (1.0 - self.beta) / self.beta)
    }

    /// Reference solution for `linear_pair`, by a dense solve of
    /// (I + M_A + M_B) u = z. None for other kinds.
    pub fn exact_linear_solution(&self, rng: &mut ChaCha8Rng) -> Option<(Vector, DMatrix<f64>)> {
        let ProblemKind::LinearPair { a, b } = &self.kind else {
            return None;
        };
        let ma = a.materialize_matrix(self.dim, rng)?;
        let mb = b.materialize_matrix(self.dim, rng)?;
        let system = DMatrix::identity(self.dim, self.dim) + &ma + &mb;
        let rhs = nalgebra::DVector::from_column_slice(self.z.as_slice());
        let u = system.lu().solve(&rhs)?;
        let u = Vector::new(u.iter().copied().collect()).ok()?;
        Some((u, ma))
    }
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<ProblemSpec, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_config_str(&text, &path.display().to_string())
}

/// Parses config text; `origin` labels the source in error messages.
pub fn parse_config_str(text: &str, origin: &str) -> Result<ProblemSpec, BenchError> {
    let raw = RawConfig::parse(text, origin)?;
    let spec = build_spec(&raw)?;
    raw.reject_unused()?;
    Ok(spec)
}

struct Entry {
    value: String,
    line: usize,
}

/// The raw key–value view of a config file. Keys are addressed as
/// (section, key); top-level keys use the empty section. Lookups mark keys
/// as used so leftovers can be reported as typos.
struct RawConfig {
    path: String,
    entries: HashMap<(String, String), Entry>,
    used: RefCell<HashSet<(String, String)>>,
}

fn field_name(section: &str, key: &str) -> String {
    if section.is_empty() {
        key.to_string()
    } else {
        format!("{section}.{key}")
    }
}

impl RawConfig {
    fn parse(text: &str, origin: &str) -> Result<Self, BenchError> {
        let err = |line: usize, msg: String| BenchError::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut entries = HashMap::new();
        let mut section = String::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            if let Some(inner) = content.strip_prefix('[') {
                let Some(name) = inner.strip_suffix(']') else {
                    return Err(err(line, "unterminated section header".into()));
                };
                let name = name.trim();
                if name.is_empty() {
                    return Err(err(line, "empty section name".into()));
                }
                section = name.to_string();
                continue;
            }
            let Some((k, v)) = content.split_once('=') else {
                return Err(err(
                    line,
                    format!("expected 'key = value' or a '[section]' header, got '{content}'"),
                ));
            };
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(err(line, "empty key before '='".into()));
            }
            let entry = Entry {
                value: v.trim().to_string(),
                line,
            };
            if let Some(previous) = entries.insert((section.clone(), key.clone()), entry) {
                return Err(err(
                    line,
                    format!(
                        "duplicate key '{}' (first set on line {})",
                        field_name(&section, &key),
                        previous.line
                    ),
                ));
            }
        }
        Ok(RawConfig {
            path: origin.to_string(),
            entries,
            used: RefCell::new(HashSet::new()),
        })
    }

    fn get(&self, section: &str, key: &str) -> Option<&str> {
        let id = (section.to_string(), key.to_string());
        let entry = self.entries.get(&id)?;
        self.used.borrow_mut().insert(id);
        Some(entry.value.as_str())
    }

    fn require(&self, section: &str, key: &str) -> Result<&str, BenchError> {
        self.get(section, key).ok_or_else(|| {
            BenchError::field(field_name(section, key), "missing required key")
        })
    }

    fn has_section(&self, section: &str) -> bool {
        self.entries.keys().any(|(s, _)| s == section)
    }

    fn f64_opt(&self, section: &str, key: &str) -> Result<Option<f64>, BenchError> {
        self.get(section, key)
            .map(|s| parse_f64(&field_name(section, key), s))
            .transpose()
    }

    fn f64_req(&self, section: &str, key: &str) -> Result<f64, BenchError> {
        parse_f64(&field_name(section, key), self.require(section, key)?)
    }

    fn usize_opt(&self, section: &str, key: &str) -> Result<Option<usize>, BenchError> {
        self.get(section, key)
            .map(|s| {
                s.parse::<usize>().map_err(|_| {
                    BenchError::field(
                        field_name(section, key),
                        format!("expected a nonnegative integer, got '{s}'"),
                    )
                })
            })
            .transpose()
    }

    fn vector_opt(&self, section: &str, key: &str) -> Result<Option<Vector>, BenchError> {
        self.get(section, key)
            .map(|s| parse_vector(&field_name(section, key), s))
            .transpose()
    }

    fn vector_req(&self, section: &str, key: &str) -> Result<Vector, BenchError> {
        parse_vector(&field_name(section, key), self.require(section, key)?)
    }

    /// Errors on any key that no lookup consumed, so misspelled keys fail
    /// loudly instead of silently falling back to defaults.
    fn reject_unused(&self) -> Result<(), BenchError> {
        let used = self.used.borrow();
        let mut leftovers: Vec<_> = self
            .entries
            .iter()
            .filter(|(id, _)| !used.contains(*id))
            .collect();
        leftovers.sort_by_key(|(_, e)| e.line);
        if let Some(((section, key), entry)) = leftovers.first() {
            return Err(BenchError::Parse {
                path: self.path.clone(),
                line: entry.line,
                msg: format!("unknown key '{}'", field_name(section, key)),
            });
        }
        Ok(())
    }
}

fn parse_f64(field: &str, s: &str) -> Result<f64, BenchError> {
    let v: f64 = s
        .parse()
        .map_err(|_| BenchError::field(field, format!("expected a number, got '{s}'")))?;
    if !v.is_finite() {
        return Err(BenchError::field(field, format!("must be finite, got '{s}'")));
    }
    Ok(v)
}

fn parse_vector(field: &str, s: &str) -> Result<Vector, BenchError> {
    let coords = s
        .split_whitespace()
        .map(|tok| parse_f64(field, tok))
        .collect::<Result<Vec<f64>, _>>()?;
    if coords.is_empty() {
        return Err(BenchError::field(field, "expected at least one number"));
    }
    Vector::new(coords).map_err(|e| BenchError::field(field, e.to_string()))
}

fn parse_matrix(field: &str, s: &str) -> Result<DMatrix<f64>, BenchError> {
    let rows: Vec<Vec<f64>> = s
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|tok| parse_f64(field, tok))
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    if ncols == 0 {
        return Err(BenchError::field(field, "expected at least one row of numbers"));
    }
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(BenchError::field(
            field,
            "rows must all have the same number of entries",
        ));
    }
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Ok(DMatrix::from_row_slice(rows.len(), ncols, &flat))
}

/// Reads a set description from `section`, with the set type under
/// `type_key` (a nested set inside a function/operator section uses `set`).
fn parse_set(raw: &RawConfig, section: &str, type_key: &str) -> Result<SetSpec, BenchError> {
    let ty = raw.require(section, type_key)?;
    let spec = match ty {
        "box" => SetSpec::Box {
            lower: raw.vector_req(section, "lower")?,
            upper: raw.vector_req(section, "upper")?,
        },
        "ball" => SetSpec::Ball {
            center: raw.vector_req(section, "center")?,
            radius: raw.f64_req(section, "radius")?,
        },
        "halfspace" => SetSpec::Halfspace {
            normal: raw.vector_req(section, "normal")?,
            offset: raw.f64_req(section, "offset")?,
        },
        "hyperplane" => SetSpec::Hyperplane {
            normal: raw.vector_req(section, "normal")?,
            offset: raw.f64_req(section, "offset")?,
        },
        "subspace" => SetSpec::Subspace {
            basis: parse_basis(raw, section)?,
        },
        "affine" => SetSpec::Affine {
            point: raw.vector_req(section, "point")?,
            basis: parse_basis(raw, section)?,
        },
        "singleton" => SetSpec::Singleton {
            point: raw.vector_req(section, "point")?,
        },
        "random_subspace" => {
            let subdim = raw
                .usize_opt(section, "subdim")?
                .ok_or_else(|| {
                    BenchError::field(field_name(section, "subdim"), "missing required key")
                })?;
            if subdim == 0 {
                return Err(BenchError::field(
                    field_name(section, "subdim"),
                    "must be at least 1",
                ));
            }
            SetSpec::RandomSubspace { subdim }
        }
        other => {
            return Err(BenchError::field(
                field_name(section, type_key),
                format!(
                    "unknown set type '{other}' (expected box | ball | halfspace | hyperplane \
                     | subspace | affine | singleton | random_subspace)"
                ),
            ))
        }
    };
    Ok(spec)
}

fn parse_basis(raw: &RawConfig, section: &str) -> Result<Vec<Vector>, BenchError> {
    let field = field_name(section, "basis");
    let m = parse_matrix(&field, raw.require(section, "basis")?)?;
    let basis = m
        .row_iter()
        .map(|row| Vector::new(row.iter().copied().collect()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| BenchError::field(&field, e.to_string()))?;
    Ok(basis)
}

fn parse_function(raw: &RawConfig, section: &str, type_key: &str) -> Result<FunctionSpec, BenchError> {
    let ty = raw.require(section, type_key)?;
    let spec = match ty {
        "zero" => FunctionSpec::Zero,
        "l1" => FunctionSpec::L1 {
            weight: raw.f64_opt(section, "weight")?.unwrap_or(1.0),
        },
        "quadratic" => FunctionSpec::Quadratic {
            center: raw.vector_req(section, "center")?,
            weight: raw.f64_opt(section, "weight")?.unwrap_or(1.0),
        },
        "linear" => FunctionSpec::Linear {
            slope: raw.vector_req(section, "slope")?,
            intercept: raw.f64_opt(section, "intercept")?.unwrap_or(0.0),
        },
        "indicator" => FunctionSpec::Indicator(parse_set(raw, section, "set")?),
        other => {
            return Err(BenchError::field(
                field_name(section, type_key),
                format!(
                    "unknown function type '{other}' (expected zero | l1 | quadratic | linear \
                     | indicator)"
                ),
            ))
        }
    };
    Ok(spec)
}

fn parse_operator(raw: &RawConfig, section: &str) -> Result<OperatorSpec, BenchError> {
    let ty = raw.require(section, "type")?;
    let spec = match ty {
        "matrix" => {
            let field = field_name(section, "matrix");
            let m = parse_matrix(&field, raw.require(section, "matrix")?)?;
            if !m.is_square() {
                return Err(BenchError::field(
                    &field,
                    format!("matrix must be square, got {}x{}", m.nrows(), m.ncols()),
                ));
            }
            OperatorSpec::Matrix(m)
        }
        "random_monotone" => {
            let scale = raw.f64_opt(section, "scale")?.unwrap_or(1.0);
            if scale <= 0.0 {
                return Err(BenchError::field(
                    field_name(section, "scale"),
                    format!("must be positive, got {scale}"),
                ));
            }
            OperatorSpec::RandomMonotone { scale }
        }
        "zero" => OperatorSpec::Zero,
        "normal_cone" => OperatorSpec::NormalCone(parse_set(raw, section, "set")?),
        "subdifferential" => {
            OperatorSpec::Subdifferential(parse_function(raw, section, "function")?)
        }
        other => {
            return Err(BenchError::field(
                field_name(section, "type"),
                format!(
                    "unknown operator type '{other}' (expected matrix | random_monotone | zero \
                     | normal_cone | subdifferential)"
                ),
            ))
        }
    };
    Ok(spec)
}

fn build_kind(raw: &RawConfig) -> Result<ProblemKind, BenchError> {
    let kind = raw.require("", "kind")?;
    match kind {
        "prox_sum" => Ok(ProblemKind::ProxSum {
            f: parse_function(raw, "function.f", "type")?,
            g: parse_function(raw, "function.g", "type")?,
        }),
        "strong_weak" => {
            let gamma = raw.f64_req("", "gamma")?;
            let omega = raw.f64_req("", "omega")?;
            if !(0.0 <= omega && omega < gamma) {
                return Err(BenchError::field(
                    "omega",
                    format!("must satisfy 0 <= omega < gamma, got omega={omega}, gamma={gamma}"),
                ));
            }
            Ok(ProblemKind::StrongWeak {
                f_core: parse_function(raw, "function.f", "type")?,
                g_core: parse_function(raw, "function.g", "type")?,
                gamma,
                omega,
            })
        }
        "best_approx" => Ok(ProblemKind::BestApprox {
            c: parse_set(raw, "set.C", "type")?,
            d: parse_set(raw, "set.D", "type")?,
        }),
        "linear_pair" => {
            let a = parse_operator(raw, "operator.A")?;
            let b = parse_operator(raw, "operator.B")?;
            for (field, op) in [("operator.A", &a), ("operator.B", &b)] {
                if !op.is_linear() {
                    return Err(BenchError::field(
                        format!("{field}.type"),
                        "linear_pair requires matrix-valued operators \
                         (matrix | random_monotone | zero); use kind = custom otherwise",
                    ));
                }
            }
            Ok(ProblemKind::LinearPair { a, b })
        }
        "custom" => Ok(ProblemKind::Custom {
            a: parse_operator(raw, "operator.A")?,
            b: parse_operator(raw, "operator.B")?,
        }),
        other => Err(BenchError::field(
            "kind",
            format!(
                "unknown problem kind '{other}' (expected prox_sum | strong_weak | best_approx \
                 | linear_pair | custom)"
            ),
        )),
    }
}

fn build_spec(raw: &RawConfig) -> Result<ProblemSpec, BenchError> {
    let kind = build_kind(raw)?;

    let beta = raw.f64_opt("", "beta")?.unwrap_or(0.5);
    if !(0.0 < beta && beta < 1.0) {
        return Err(BenchError::field(
            "beta",
            format!("must lie in the open interval (0, 1), got {beta}"),
        ));
    }
    let r0 = raw.f64_opt("", "r0")?;
    if let Some(r0) = r0 {
        let cap = StepSchedule::r0_upper_bound(beta)?;
        if !(r0 > 0.0 && r0 < cap) {
            return Err(BenchError::field(
                "r0",
                format!("must lie in (0, {cap}) (the step cap 2(1-beta)/beta at beta = {beta}), got {r0}"),
            ));
        }
    }
    let tol = raw.f64_opt("", "tol")?.unwrap_or(1e-8);
    if tol <= 0.0 {
        return Err(BenchError::field(
            "tol",
            format!("must be positive, got {tol}"),
        ));
    }
    let max_iter = raw.usize_opt("", "max_iter")?.unwrap_or(100_000);
    if max_iter == 0 {
        return Err(BenchError::field("max_iter", "must be at least 1"));
    }
    let method = match raw.get("", "method") {
        Some(s) => Method::parse("method", s)?,
        None => Method::Strengthened,
    };
    let seed = raw
        .get("", "seed")
        .map(|s| {
            s.parse::<u64>().map_err(|_| {
                BenchError::field("seed", format!("expected a nonnegative integer, got '{s}'"))
            })
        })
        .transpose()?
        .unwrap_or(0);

    let z = raw.vector_opt("", "z")?;
    let z0 = raw.vector_opt("", "z0")?;
    let known_solution = raw.vector_opt("", "known_solution")?;
    let explicit_dim = raw.usize_opt("", "dim")?;

    let baseline_gamma = raw.f64_opt("baseline", "gamma")?;
    let baseline_lambda = raw.f64_opt("baseline", "lambda")?;
    for (field, v) in [("baseline.gamma", baseline_gamma), ("baseline.lambda", baseline_lambda)] {
        if let Some(v) = v {
            if v <= 0.0 {
                return Err(BenchError::field(field, format!("must be positive, got {v}")));
            }
        }
    }
    if raw.has_section("baseline") && method == Method::Strengthened {
        log::warn!("[baseline] parameters are ignored by the strengthened method");
    }

    if matches!(kind, ProblemKind::StrongWeak { .. }) && z.is_some() {
        return Err(BenchError::field(
            "z",
            "strong_weak minimizes over the whole space and fixes the anchor at the origin; \
             remove z",
        ));
    }

    // Every dimension-bearing field must agree; whatever remains
    // unconstrained follows the inferred value.
    let mut dims: Vec<(String, usize)> = kind.component_dims();
    for (name, v) in [("z", &z), ("z0", &z0), ("known_solution", &known_solution)] {
        if let Some(v) = v {
            dims.push((name.to_string(), v.dim()));
        }
    }
    if let Some(d) = explicit_dim {
        if d == 0 {
            return Err(BenchError::field("dim", "must be at least 1"));
        }
        dims.push(("dim".to_string(), d));
    }
    let dim = match dims.first() {
        Some((_, d)) => *d,
        None => {
            return Err(BenchError::field(
                "dim",
                "the dimension cannot be inferred from any field; set dim explicitly",
            ))
        }
    };
    if let Some((field, other)) = dims.iter().find(|(_, d)| *d != dim) {
        return Err(BenchError::field(
            field,
            format!(
                "dimension mismatch: {} has dimension {}, but {} implies {}",
                field, other, dims[0].0, dim
            ),
        ));
    }

    let z = match (z, &kind) {
        (None, ProblemKind::StrongWeak { .. }) => Vector::zeros(dim),
        (Some(z), _) => z,
        (None, _) => return Err(BenchError::field("z", "missing required key")),
    };

    Ok(ProblemSpec {
        kind,
        dim,
        z,
        beta,
        r0,
        z0,
        tol,
        max_iter,
        method,
        baseline_gamma,
        baseline_lambda,
        seed,
        known_solution,
    })
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    Vector::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect())
        .expect("uniform draws are finite")
}

/// Gram part (PSD) plus skew part: monotone but generally nonsymmetric.
fn random_monotone_matrix(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let s = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let gram = (&g * g.transpose()) / dim as f64;
    let skew = (&s - s.transpose()) / 2.0;
    (gram + skew) * scale
}
