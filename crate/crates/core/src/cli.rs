//! Command implementations behind the `phibvp` binary. Each returns the
//! process exit code and writes to the given streams.
//!
//! | command  | 0            | 1                       | 2                 | 3                  | 4            |
//! |----------|--------------|-------------------------|-------------------|--------------------|--------------|
//! | `solve`  | converged    |                         | solver failure    | hypothesis failure | input error  |
//! | `check`  | all pass     | any fail / insufficient |                   |                    | input error  |
//! | `degree` | degree ≠ 0   | degree = 0              | zero on boundary  |                    | input error  |

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::degree::{degree_for_problem, DomainDelta};
use crate::error::BvpError;
use crate::grid::GridFunction;
use crate::hypotheses::{check_problem, HypothesisReport, Status};
use crate::operators::{BoundaryCondition, ProblemSpec};
use crate::par::Execution;
use crate::problem_file::ProblemFile;
use crate::solver::{solve, Backend, SolveReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// Boundary samples used by `degree` when `--samples` is absent.
pub const DEFAULT_DEGREE_SAMPLES: usize = 512;

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub file: PathBuf,
    pub out: Option<PathBuf>,
    pub backend: Option<Backend>,
    pub require_hypotheses: bool,
}

fn load(path: &Path, err: &mut dyn Write) -> Option<ProblemFile> {
    match ProblemFile::read(path) {
        Ok(f) => Some(f),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            None
        }
    }
}

fn bc_description(bc: BoundaryCondition) -> &'static str {
    match bc {
        BoundaryCondition::P1 => "u(0) = u'(0) = u'(T)",
        BoundaryCondition::P1Tilde => "u(T) = u'(0) = u'(T)",
        BoundaryCondition::P2 => "u(0) = u(T) = u'(T)",
    }
}

/// Writes `t,u,du,phi_du,f` with 17 significant digits.
pub fn write_csv(spec: &ProblemSpec, u: &GridFunction, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "t,u,du,phi_du,f")?;
    for (i, (x, y)) in u.values().iter().zip(u.derivs()).enumerate() {
        let t = spec.grid.node(i);
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            t,
            x,
            y,
            spec.phi.forward(*y),
            spec.rhs.eval(t, *x, *y)
        )?;
    }
    Ok(())
}

fn write_solution(args: &SolveArgs, spec: &ProblemSpec, report: &SolveReport, out: &mut dyn Write) -> std::io::Result<()> {
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_csv(spec, &report.solution, &mut file)?;
            file.flush()
        }
        None => write_csv(spec, &report.solution, out),
    }
}

fn hard_failure(report: &HypothesisReport) -> bool {
    report
        .verdicts
        .iter()
        .any(|v| matches!(v.status(), Status::Failed | Status::Insufficient))
}

pub fn run_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(file) = load(&args.file, err) else { return EXIT_INPUT };
    let spec = &file.spec;
    let mut opts = file.solver;
    if let Some(b) = args.backend {
        opts.backend = b;
    }

    let report = match &file.hypotheses {
        Some(h) => match check_problem(spec, &h.inputs()) {
            Ok(r) => Some(r),
            Err(e) => {
                let _ = writeln!(err, "hypotheses: {e}");
                if args.require_hypotheses {
                    return EXIT_HYPOTHESIS;
                }
                None
            }
        },
        None => None,
    };
    match &report {
        Some(r) => {
            for v in r.verdicts.iter().filter(|v| !v.passed()) {
                let _ = writeln!(err, "warning: {v}");
            }
            if args.require_hypotheses && hard_failure(r) {
                let _ = writeln!(err, "hypotheses not satisfied; refusing to solve");
                return EXIT_HYPOTHESIS;
            }
            if let Some(radius) = r.search_radius() {
                opts.search_radius = radius;
            }
            opts.apriori_bound = r.solution_bound();
        }
        None if args.require_hypotheses => {
            let _ = writeln!(err, "insufficient data: no usable [hypotheses] section");
            return EXIT_HYPOTHESIS;
        }
        None => {
            let _ = writeln!(err, "warning: hypotheses not checked");
        }
    }

    match solve(spec, &opts) {
        Ok(report) => {
            if let Err(e) = write_solution(args, spec, &report, out) {
                let _ = writeln!(err, "error: cannot write solution: {e}");
                return EXIT_INPUT;
            }
            let _ = writeln!(
                err,
                "status=ok residual={:e} iters={} backend={}",
                report.residuals.c1_residual, report.iterations, report.backend
            );
            if let Some(a) = report.backend_agreement {
                let _ = writeln!(
                    err,
                    "agreement values={:e} derivs={:e}{}",
                    a.values,
                    a.derivs,
                    if a.flagged { " (flagged: backends may have found different solutions)" } else { "" }
                );
            }
            if report.solution_family {
                let _ = writeln!(err, "note: every seed solves the problem; a one-parameter family of solutions");
            }
            if report.apriori_ok == Some(false) {
                let _ = writeln!(err, "warning: solution violates the a priori bound");
            }
            EXIT_OK
        }
        Err(e) => {
            let (residual, iters) = match &e {
                BvpError::NoConvergence { iterations, best_residual } => (*best_residual, *iterations),
                _ => (f64::NAN, 0),
            };
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(err, "status=fail residual={residual:e} iters={iters} backend={}", opts.backend);
            match e {
                BvpError::HypothesisFailed(_) => EXIT_HYPOTHESIS,
                _ => EXIT_SOLVER,
            }
        }
    }
}

pub fn run_check(path: &Path, seed: Option<u64>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(file) = load(path, err) else { return EXIT_INPUT };
    let spec = &file.spec;
    let _ = writeln!(out, "bc={} ({})", spec.bc, bc_description(spec.bc));
    let Some(block) = &file.hypotheses else {
        let _ = writeln!(out, "insufficient data: no [hypotheses] section");
        return EXIT_FAIL;
    };
    let mut inputs = block.inputs();
    if let Some(seed) = seed {
        inputs.sampling.seed = seed;
    }
    let report = match check_problem(spec, &inputs) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(out, "FAIL: {e}");
            return EXIT_FAIL;
        }
    };

    if let Some(b) = report.p1 {
        let _ = writeln!(out, "M1={} M2={}", b.m1, b.m2);
        let _ = writeln!(out, "L={:.10}", b.l);
        let _ = writeln!(out, "c_minus_l1={:.10}", b.c_minus_l1);
        match (b.r, b.rho_min) {
            (Some(r), Some(rho)) => {
                let _ = writeln!(out, "r={r:.10}");
                let _ = writeln!(out, "rho_min={rho:.10}");
            }
            _ => {
                let _ = writeln!(out, "r=undefined (L + 2|c-|_L1 >= a)");
            }
        }
        let _ = writeln!(out, "kappa_range=({:.10}, {})", b.kappa_range.0, b.kappa_range.1);
        if let (Some(rho), Some(kappa)) = (block.rho, block.kappa) {
            let _ = writeln!(
                out,
                "rho={rho} kappa={kappa}: {}",
                if b.admits(rho, kappa) { "admissible" } else { "outside the admissible range" }
            );
        } else if let Some(kappa) = block.kappa {
            let ok = kappa > b.kappa_range.0 && kappa < b.kappa_range.1;
            let _ = writeln!(out, "kappa={kappa}: {}", if ok { "admissible" } else { "outside the admissible range" });
        }
    }
    if let Some(b) = report.p2 {
        let _ = writeln!(out, "c_bound={} threshold a/(2T)={}", b.c_bound, b.threshold);
        match (b.l, b.solution_bound) {
            (Some(l), Some(s)) => {
                let _ = writeln!(out, "L={l:.10}");
                let _ = writeln!(out, "solution_bound={s:.10}");
            }
            _ => {
                let _ = writeln!(out, "L=undefined (2cT >= a)");
            }
        }
    }
    for v in &report.verdicts {
        let _ = writeln!(out, "{v}");
    }
    if report.all_passed() {
        let _ = writeln!(out, "result=pass");
        EXIT_OK
    } else {
        let _ = writeln!(out, "result=fail");
        EXIT_FAIL
    }
}

#[derive(Debug, Clone)]
pub struct DegreeArgs {
    pub file: PathBuf,
    pub rho: Option<f64>,
    pub kappa: Option<f64>,
    pub samples: Option<usize>,
}

pub fn run_degree(args: &DegreeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(file) = load(&args.file, err) else { return EXIT_INPUT };
    let spec = &file.spec;
    if spec.bc == BoundaryCondition::P2 {
        let _ = writeln!(err, "error: degree reduction applies to p1 and p1t only");
        return EXIT_INPUT;
    }
    let block = file.hypotheses.as_ref();
    let rho = args.rho.or(block.and_then(|h| h.rho));
    let kappa = args.kappa.or(block.and_then(|h| h.kappa));
    let (Some(rho), Some(kappa)) = (rho, kappa) else {
        let _ = writeln!(err, "error: degree needs --rho and --kappa (or rho, kappa in [hypotheses])");
        return EXIT_INPUT;
    };
    let delta = match DomainDelta::new(rho, kappa, spec.phi) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };

    if let Some(h) = block {
        if let Ok(report) = check_problem(spec, &h.inputs()) {
            if let Some(b) = report.p1 {
                if !b.admits(rho, kappa) {
                    let _ = writeln!(
                        err,
                        "warning: (rho={rho}, kappa={kappa}) is outside the certified range rho > {}, kappa in ({}, {})",
                        b.rho_min.map_or("undefined".to_string(), |r| r.to_string()),
                        b.kappa_range.0,
                        b.kappa_range.1
                    );
                }
            }
        }
    }

    let samples = args.samples.unwrap_or(DEFAULT_DEGREE_SAMPLES);
    match degree_for_problem(spec, &delta, samples, Execution::default()) {
        Ok(d) => {
            let _ = writeln!(
                out,
                "degree={} min_boundary_norm={:e} samples={}",
                d.degree, d.min_boundary_norm, d.samples_used
            );
            if d.degree != 0 {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e @ (BvpError::ZeroOnBoundary { .. } | BvpError::RefinementExhausted { .. } | BvpError::NonFiniteMap { .. })) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_SOLVER
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn solve_zero_rhs_p2_prints_zeros() {
        let f = temp_file("[problem]\nT=1\nn=4\nphi=curvature\nf=0\nbc=p2\n");
        let args = SolveArgs { file: f.path().into(), out: None, backend: None, require_hypotheses: false };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_solve(&args, &mut out, &mut err), EXIT_OK);
        let csv = String::from_utf8(out).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,u,du,phi_du,f"));
        assert_eq!(lines.clone().count(), 5);
        for line in lines {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(&cols[1..], &[0.0; 4]);
        }
        let err = String::from_utf8(err).unwrap();
        assert!(err.contains("status=ok residual=0e0 iters=1 backend=fixed-point"), "{err}");
    }

    #[test]
    fn missing_file_is_input_error() {
        let args = SolveArgs { file: "/nonexistent/problem.txt".into(), out: None, backend: None, require_hypotheses: false };
        assert_eq!(run_solve(&args, &mut Vec::new(), &mut Vec::new()), EXIT_INPUT);
        assert_eq!(run_check(Path::new("/nonexistent"), None, &mut Vec::new(), &mut Vec::new()), EXIT_INPUT);
    }

    #[test]
    fn check_without_hypotheses_is_insufficient() {
        let f = temp_file("[problem]\nT=1\nn=4\nphi=curvature\nf=0\nbc=p2\n");
        let mut out = Vec::new();
        assert_eq!(run_check(f.path(), None, &mut out, &mut Vec::new()), EXIT_FAIL);
        assert!(String::from_utf8(out).unwrap().contains("insufficient data"));
    }

    #[test]
    fn degree_rejects_p2_and_missing_parameters() {
        let f = temp_file("[problem]\nT=1\nn=4\nphi=curvature\nf=0\nbc=p2\n");
        let args = DegreeArgs { file: f.path().into(), rho: Some(1.0), kappa: Some(0.5), samples: None };
        assert_eq!(run_degree(&args, &mut Vec::new(), &mut Vec::new()), EXIT_INPUT);
        let g = temp_file("[problem]\nT=1\nn=4\nphi=curvature\nf=1\nbc=p1\n");
        let args = DegreeArgs { file: g.path().into(), rho: None, kappa: None, samples: None };
        assert_eq!(run_degree(&args, &mut Vec::new(), &mut Vec::new()), EXIT_INPUT);
    }
}
