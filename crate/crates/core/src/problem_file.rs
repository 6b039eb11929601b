//! Problem definition files.
//!
//! ```text
//! [problem]
//! T = 0.01
//! n = 400
//! phi = curvature        # or: atan, with a = ...
//! f = exp(4*v) - e
//! bc = p1                # p1 | p1t | p2
//!
//! [hypotheses]
//! M1 = 0
//! M2 = 0.5
//! c_lower = -3           # expression in t
//! kappa = 0.9
//!
//! [solver]
//! tol = 1e-10
//! backend = both
//! ```
//!
//! `[hypotheses]` also accepts `c_bound`, `rho`, `x_radius`, `y_extent`,
//! `samples` and `seed`; `[solver]` accepts `max_iters`, `lambda_steps` and
//! `damping`.

use std::collections::HashSet;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::expr::{Expr, Var};
use crate::grid::Grid;
use crate::homeo::Homeomorphism;
use crate::hypotheses::{HypothesisInputs, LowerEnvelope, SamplingBox};
use crate::operators::{BoundaryCondition, ProblemSpec, RightHandSide};
use crate::solver::{Backend, SolveOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemFileError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing required key '{key}' in [{section}]")]
    Missing { section: &'static str, key: &'static str },
}

fn line_error(line: usize, message: impl Into<String>) -> ProblemFileError {
    ProblemFileError::Line { line, message: message.into() }
}

/// Contents of the `[hypotheses]` section.
#[derive(Debug, Clone, Default)]
pub struct HypothesisBlock {
    pub m1: Option<f64>,
    pub m2: Option<f64>,
    pub c_lower: Option<Expr>,
    pub c_bound: Option<f64>,
    pub kappa: Option<f64>,
    pub rho: Option<f64>,
    pub sampling: SamplingBox,
}

impl HypothesisBlock {
    pub fn inputs(&self) -> HypothesisInputs {
        HypothesisInputs {
            m1: self.m1,
            m2: self.m2,
            c_lower: self.c_lower.clone().map(|e| {
                if e.uses(Var::T) {
                    let e = Arc::new(e);
                    LowerEnvelope::Function(Arc::new(move |t| e.eval(t, 0.0, 0.0)))
                } else {
                    LowerEnvelope::Constant(e.eval(0.0, 0.0, 0.0))
                }
            }),
            c_bound: self.c_bound,
            sampling: self.sampling,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub spec: ProblemSpec,
    pub rhs: Expr,
    /// `None` when the file has no `[hypotheses]` section.
    pub hypotheses: Option<HypothesisBlock>,
    pub solver: SolveOptions,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Problem,
    Hypotheses,
    Solver,
}

impl Section {
    fn name(self) -> &'static str {
        match self {
            Section::Problem => "problem",
            Section::Hypotheses => "hypotheses",
            Section::Solver => "solver",
        }
    }
}

fn number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ProblemFileError> {
    value
        .parse()
        .map_err(|_| line_error(line, format!("'{key}' expects a number, got '{value}'")))
}

fn expression(line: usize, key: &str, value: &str) -> Result<Expr, ProblemFileError> {
    Expr::parse(value).map_err(|e| line_error(line, format!("in '{key}': {e}")))
}

#[derive(Default)]
struct ProblemKeys {
    horizon: Option<f64>,
    n: Option<usize>,
    phi: Option<(String, usize)>,
    a: Option<f64>,
    f: Option<Expr>,
    bc: Option<BoundaryCondition>,
}

impl ProblemFile {
    pub fn read(path: &Path) -> Result<Self, ProblemFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ProblemFileError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ProblemFileError> {
        let mut section: Option<Section> = None;
        let mut seen: HashSet<(&'static str, String)> = HashSet::new();
        let mut problem = ProblemKeys::default();
        let mut hypotheses: Option<HypothesisBlock> = None;
        let mut solver = SolveOptions::default();

        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                section = Some(match name.trim() {
                    "problem" => Section::Problem,
                    "hypotheses" => {
                        hypotheses.get_or_insert_with(HypothesisBlock::default);
                        Section::Hypotheses
                    }
                    "solver" => Section::Solver,
                    other => return Err(line_error(line, format!("unknown section [{other}]"))),
                });
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(line_error(line, "expected 'key = value'"));
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(sec) = section else {
                return Err(line_error(line, format!("'{key}' appears before any section")));
            };
            if !seen.insert((sec.name(), key.to_string())) {
                return Err(line_error(line, format!("duplicate key '{key}' in [{}]", sec.name())));
            }

            match sec {
                Section::Problem => match key {
                    "T" => problem.horizon = Some(number(line, key, value)?),
                    "n" => problem.n = Some(number(line, key, value)?),
                    "phi" => problem.phi = Some((value.to_string(), line)),
                    "a" => problem.a = Some(number(line, key, value)?),
                    "f" => problem.f = Some(expression(line, key, value)?),
                    "bc" => {
                        problem.bc = Some(BoundaryCondition::parse(value).ok_or_else(|| {
                            line_error(line, format!("bc must be p1, p1t or p2, got '{value}'"))
                        })?)
                    }
                    _ => return Err(line_error(line, format!("unknown key '{key}' in [problem]"))),
                },
                Section::Hypotheses => {
                    let h = hypotheses.get_or_insert_with(HypothesisBlock::default);
                    match key {
                        "M1" => h.m1 = Some(number(line, key, value)?),
                        "M2" => h.m2 = Some(number(line, key, value)?),
                        "c_lower" => {
                            let e = expression(line, key, value)?;
                            if e.uses(Var::U) || e.uses(Var::V) {
                                return Err(line_error(line, "c_lower may only depend on t"));
                            }
                            h.c_lower = Some(e);
                        }
                        "c_bound" => h.c_bound = Some(number(line, key, value)?),
                        "kappa" => h.kappa = Some(number(line, key, value)?),
                        "rho" => h.rho = Some(number(line, key, value)?),
                        "x_radius" => h.sampling.x_radius = number(line, key, value)?,
                        "y_extent" => h.sampling.y_extent = number(line, key, value)?,
                        "samples" => h.sampling.samples = number(line, key, value)?,
                        "seed" => h.sampling.seed = number(line, key, value)?,
                        _ => return Err(line_error(line, format!("unknown key '{key}' in [hypotheses]"))),
                    }
                }
                Section::Solver => match key {
                    "tol" => solver.tol = number(line, key, value)?,
                    "max_iters" => solver.max_iters = number(line, key, value)?,
                    "lambda_steps" => solver.lambda_steps = number(line, key, value)?,
                    "damping" => solver.damping = number(line, key, value)?,
                    "backend" => {
                        solver.backend = Backend::parse(value).ok_or_else(|| {
                            line_error(line, format!("backend must be fixed-point, shooting or both, got '{value}'"))
                        })?
                    }
                    _ => return Err(line_error(line, format!("unknown key '{key}' in [solver]"))),
                },
            }
        }

        let missing = |key| ProblemFileError::Missing { section: "problem", key };
        let horizon = problem.horizon.ok_or(missing("T"))?;
        let n = problem.n.ok_or(missing("n"))?;
        let (phi_name, phi_line) = problem.phi.ok_or(missing("phi"))?;
        let f = problem.f.ok_or(missing("f"))?;
        let bc = problem.bc.ok_or(missing("bc"))?;

        let grid = Grid::new(horizon, n).map_err(|e| line_error(0, e.to_string()))?;
        let phi = Homeomorphism::from_name(&phi_name, problem.a).map_err(|e| line_error(phi_line, e.to_string()))?;
        solver
            .validate()
            .map_err(|e| line_error(0, format!("[solver]: {e}")))?;
        if let Some(h) = &hypotheses {
            if h.sampling.samples < 2 || !(h.sampling.x_radius > 0.0) || !(h.sampling.y_extent > 0.0) {
                return Err(line_error(0, "[hypotheses]: sampling needs samples >= 2 and positive extents"));
            }
        }

        let shared = Arc::new(f.clone());
        let rhs = RightHandSide::new(f.to_string(), move |t, u, v| shared.eval(t, u, v));
        Ok(Self {
            spec: ProblemSpec::new(grid, phi, rhs, bc),
            rhs: f,
            hypotheses,
            solver,
        })
    }
}
