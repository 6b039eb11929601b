//! Solvers for the three boundary value problems.
//!
//! [`solve_fixed_point`] follows the homotopies built into the fixed-point
//! operators, [`solve_shooting`] is an independent RK4 shooting oracle, and
//! [`cross_validate`] runs both and compares.

mod fixed_point;
mod gmres;
mod shooting;

use std::fmt;

use crate::error::{BvpError, Result};
use crate::grid::{sup_distance, GridFunction};
use crate::operators::{boundary_defects, nemytskii, op_q, residual, BoundaryCondition, ProblemSpec, Residuals};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    FixedPoint,
    Shooting,
    Both,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::FixedPoint => "fixed-point",
            Backend::Shooting => "shooting",
            Backend::Both => "both",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fixed-point" => Some(Backend::FixedPoint),
            "shooting" => Some(Backend::Shooting),
            "both" => Some(Backend::Both),
            _ => None,
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Target for `‖u − M(1, u)‖₁`.
    pub tol: f64,
    /// Iteration budget per continuation step.
    pub max_iters: usize,
    pub lambda_steps: usize,
    /// Picard damping `α` in `u ← (1 − α)u + α M(λ, u)`.
    pub damping: f64,
    pub backend: Backend,
    /// Half-width of the seeding and shooting scans (`r` or `L` when known).
    pub search_radius: f64,
    /// Bound on `‖u‖₁` to report against, when hypotheses supply one.
    pub apriori_bound: Option<f64>,
    pub exec: Execution,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iters: 2000,
            lambda_steps: 10,
            damping: 0.5,
            backend: Backend::FixedPoint,
            search_radius: 2.0,
            apriori_bound: None,
            exec: Execution::default(),
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(BvpError::InvalidInput(format!("tol must be positive, got {}", self.tol)));
        }
        if self.lambda_steps == 0 || self.max_iters == 0 {
            return Err(BvpError::InvalidInput("lambda_steps and max_iters must be at least 1".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(BvpError::InvalidInput(format!("damping must lie in (0, 1], got {}", self.damping)));
        }
        if !(self.search_radius > 0.0 && self.search_radius.is_finite()) {
            return Err(BvpError::InvalidInput(format!(
                "search radius must be positive, got {}",
                self.search_radius
            )));
        }
        Ok(())
    }
}

/// One accepted continuation step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaStep {
    pub lambda: f64,
    pub iterations: usize,
    pub residual: f64,
    /// Whether the Newton fallback was needed.
    pub newton: bool,
}

/// Distance between the fixed-point and shooting solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agreement {
    pub values: f64,
    pub derivs: f64,
    /// Distance above `100·tol`: possibly distinct solutions.
    pub flagged: bool,
}

impl Agreement {
    pub fn distance(&self) -> f64 {
        self.values.max(self.derivs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: GridFunction,
    pub residuals: Residuals,
    /// Iterations at `λ = 1` (fixed point) or IVP integrations (shooting).
    pub iterations: usize,
    pub lambda_path: Vec<LambdaStep>,
    pub apriori_ok: Option<bool>,
    pub backend_agreement: Option<Agreement>,
    pub backend: Backend,
    /// Every seed solved the problem: `u = k(1 + t)`-type family.
    pub solution_family: bool,
}

fn apriori_check(spec: &ProblemSpec, opts: &SolveOptions, u: &GridFunction) -> Option<bool> {
    opts.apriori_bound.map(|bound| match spec.bc {
        BoundaryCondition::P2 => u.norm_c1() <= bound + 10.0 * opts.tol,
        _ => u.norm_c1() < bound,
    })
}

/// Residuals at `λ = 1`, or a NaN C¹ residual when `u` is outside the
/// operator's domain.
fn residuals_or_nan(spec: &ProblemSpec, u: &GridFunction) -> Residuals {
    residual(spec, 1.0, u).unwrap_or_else(|_| Residuals {
        c1_residual: f64::NAN,
        bc_residuals: boundary_defects(spec.bc, u),
        mean_residual: nemytskii(spec, u).map_or(f64::NAN, |n| op_q(&spec.grid, &n).abs()),
    })
}

/// λ-continuation with damped Picard iteration and a Newton-GMRES fallback.
pub fn solve_fixed_point(spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let run = fixed_point::continue_to_one(spec, opts)?;
    let residuals = residual(spec, 1.0, &run.solution)?;
    let iterations = run.path.last().map_or(0, |s| s.iterations);
    Ok(SolveReport {
        apriori_ok: apriori_check(spec, opts, &run.solution),
        solution: run.solution,
        residuals,
        iterations,
        lambda_path: run.path,
        backend_agreement: None,
        backend: Backend::FixedPoint,
        solution_family: run.family,
    })
}

/// RK4 shooting. Residuals are measured with the discrete operators, so
/// they include the difference between the two discretizations.
pub fn solve_shooting(spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let shot = shooting::shoot(spec, opts.search_radius, opts.exec)?;
    Ok(SolveReport {
        residuals: residuals_or_nan(spec, &shot.solution),
        apriori_ok: apriori_check(spec, opts, &shot.solution),
        solution: shot.solution,
        iterations: shot.integrations,
        lambda_path: Vec::new(),
        backend_agreement: None,
        backend: Backend::Shooting,
        solution_family: shot.family,
    })
}

/// Runs both backends and reports their distance. The returned solution is
/// the fixed-point one.
pub fn cross_validate(spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveReport> {
    let (fixed, shot) = par::join(opts.exec, || solve_fixed_point(spec, opts), || solve_shooting(spec, opts));
    let (mut report, shot) = (fixed?, shot?);
    let values = sup_distance(report.solution.values(), shot.solution.values());
    let derivs = sup_distance(report.solution.derivs(), shot.solution.derivs());
    report.backend_agreement = Some(Agreement {
        values,
        derivs,
        flagged: values.max(derivs) > 100.0 * opts.tol,
    });
    report.backend = Backend::Both;
    report.solution_family |= shot.solution_family;
    Ok(report)
}

/// Dispatches on `opts.backend`.
pub fn solve(spec: &ProblemSpec, opts: &SolveOptions) -> Result<SolveReport> {
    match opts.backend {
        Backend::FixedPoint => solve_fixed_point(spec, opts),
        Backend::Shooting => solve_shooting(spec, opts),
        Backend::Both => cross_validate(spec, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::homeo::Homeomorphism;
    use crate::operators::RightHandSide;
    use std::f64::consts::E;

    fn spec(t: f64, n: usize, rhs: RightHandSide, bc: BoundaryCondition) -> ProblemSpec {
        ProblemSpec::new(Grid::new(t, n).unwrap(), Homeomorphism::curvature(), rhs, bc)
    }

    fn example_38(bc: BoundaryCondition) -> ProblemSpec {
        spec(0.01, 400, RightHandSide::new("exp(4v)-e", |_, _, y| (4.0 * y).exp() - E), bc)
    }

    fn example_45(beta: f64, n: usize) -> ProblemSpec {
        spec(1.0, n, RightHandSide::new("beta cos u", move |_, x, _| beta * x.cos()), BoundaryCondition::P2)
    }

    #[test]
    fn zero_rhs_p2_takes_one_iteration() {
        let report = solve_fixed_point(&spec(1.0, 50, RightHandSide::zero(), BoundaryCondition::P2), &SolveOptions::default()).unwrap();
        assert_eq!(report.iterations, 1);
        assert_eq!(report.solution.norm_c1(), 0.0);
    }

    #[test]
    fn example_38_fixed_point() {
        let report = solve_fixed_point(&example_38(BoundaryCondition::P1), &SolveOptions { search_radius: 1.2, ..Default::default() }).unwrap();
        let s = example_38(BoundaryCondition::P1);
        for (i, v) in report.solution.values().iter().enumerate() {
            assert!((v - (1.0 + s.grid.node(i)) / 4.0).abs() < 1e-6);
        }
        assert!(report.residuals.c1_residual <= 1e-10);
    }

    #[test]
    fn example_38_p1_tilde() {
        // u = k(1 + t − T) with k = 1/4 solves the mirrored problem.
        let s = example_38(BoundaryCondition::P1Tilde);
        let report = cross_validate(&s, &SolveOptions::default()).unwrap();
        let u = &report.solution;
        assert!((u.values()[400] - 0.25).abs() < 1e-12);
        assert!(report.backend_agreement.unwrap().distance() < 1e-6);
    }

    #[test]
    fn example_45_backends_agree() {
        let s = example_45(0.4, 400);
        let report = cross_validate(&s, &SolveOptions { search_radius: 4.0 / 3.0, ..Default::default() }).unwrap();
        assert!(report.residuals.c1_residual < 1e-8);
        let agreement = report.backend_agreement.unwrap();
        assert!(agreement.distance() < 1e-6, "{agreement:?}");
        assert!(!agreement.flagged);
        assert!(sup_norm_derivs(&report.solution) <= 4.0 / 3.0 + 1e-9);
        let shot = solve_shooting(&s, &SolveOptions::default()).unwrap();
        assert!(shot.residuals.c1_residual < 1e-8, "{:?}", shot.residuals);
    }

    fn sup_norm_derivs(u: &GridFunction) -> f64 {
        u.derivs().iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    #[test]
    fn newton_fallback_on_nonlinear_p1() {
        // f = 2 atan(v − 0.2) + 0.3 sin u: strongly monotone in v.
        let s = spec(1.0, 200, RightHandSide::new("nl", |_, x, y| 2.0 * (y - 0.2).atan() + 0.3 * x.sin()), BoundaryCondition::P1);
        let report = solve_fixed_point(&s, &SolveOptions::default()).unwrap();
        assert!(report.residuals.c1_residual <= 1e-10);
        assert!(report.residuals.mean_residual <= 1e-9);
        assert!(report.residuals.max_bc() <= 1e-9);
        let shot = solve_shooting(&s, &SolveOptions::default()).unwrap();
        assert!(sup_distance(shot.solution.values(), report.solution.values()) < 1e-6);
    }

    #[test]
    fn family_is_flagged() {
        let s = spec(1.0, 50, RightHandSide::zero(), BoundaryCondition::P1);
        let report = cross_validate(&s, &SolveOptions::default()).unwrap();
        assert!(report.solution_family);
    }

    #[test]
    fn options_are_validated() {
        let s = example_45(0.4, 20);
        for bad in [
            SolveOptions { tol: 0.0, ..Default::default() },
            SolveOptions { lambda_steps: 0, ..Default::default() },
            SolveOptions { damping: 1.5, ..Default::default() },
        ] {
            assert!(matches!(solve(&s, &bad), Err(BvpError::InvalidInput(_))));
        }
    }

    #[test]
    fn backend_names_round_trip() {
        for b in [Backend::FixedPoint, Backend::Shooting, Backend::Both] {
            assert_eq!(Backend::parse(b.as_str()), Some(b));
        }
        assert_eq!(Backend::parse("newton"), None);
    }

    #[test]
    fn apriori_flag() {
        let s = example_45(0.4, 100);
        let opts = SolveOptions { apriori_bound: Some(4.0), ..Default::default() };
        assert_eq!(solve_fixed_point(&s, &opts).unwrap().apriori_ok, Some(true));
        let opts = SolveOptions { apriori_bound: Some(1e-3), ..Default::default() };
        assert_eq!(solve_fixed_point(&s, &opts).unwrap().apriori_ok, Some(false));
    }
}
