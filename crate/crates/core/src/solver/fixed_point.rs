//! λ-continuation on the fixed-point operators.
//!
//! Each continuation step runs damped Picard iteration and falls back to
//! Jacobian-free Newton-GMRES when Picard stagnates, diverges or leaves the
//! operator's domain. A failed step is retried with half the λ increment.

use crate::error::{BvpError, Result};
use crate::grid::GridFunction;
use crate::operators::{fixed_point_map, nemytskii, op_q, BoundaryCondition, ProblemSpec};

use super::gmres::gmres;
use super::{LambdaStep, SolveOptions};

/// Samples in the λ = 0 seeding scan.
const SEED_SAMPLES: usize = 65;
/// Picard stagnation window.
const WINDOW: usize = 50;
/// Smallest λ increment, as a fraction of the nominal one.
const MIN_STEP_FRACTION: f64 = 1.0 / 1024.0;

pub(crate) struct Continuation {
    pub solution: GridFunction,
    pub path: Vec<LambdaStep>,
    pub family: bool,
}

/// Constant-derivative candidate `u' ≡ k` that carries the shared boundary
/// value `k` at `t = 0` (`P1`) or `t = T` (`P1Tilde`).
fn affine_seed(spec: &ProblemSpec, k: f64) -> Result<GridFunction> {
    let anchor = if spec.bc == BoundaryCondition::P1Tilde { spec.horizon() } else { 0.0 };
    GridFunction::from_fn(spec.grid, |t| k * (1.0 + t - anchor), |_| k)
}

fn seed_mean(spec: &ProblemSpec, k: f64) -> Option<f64> {
    let u = affine_seed(spec, k).ok()?;
    let n = nemytskii(spec, &u).ok()?;
    Some(op_q(&spec.grid, &n))
}

/// Solves `Q(N_f(k(1 + t))) = 0` for `k ∈ [−r, r]` by scan and bisection.
/// Returns the seed and whether every sample vanished (a solution family).
fn seed_p1(spec: &ProblemSpec, radius: f64) -> Result<(GridFunction, bool)> {
    let ks: Vec<f64> = (0..SEED_SAMPLES)
        .map(|i| -radius + 2.0 * radius * i as f64 / (SEED_SAMPLES - 1) as f64)
        .collect();
    let qs: Vec<Option<f64>> = ks.iter().map(|&k| seed_mean(spec, k)).collect();

    if qs.iter().all(|q| q.is_some_and(|q| q.abs() <= 1e-13)) {
        let k = ks.iter().copied().fold(f64::INFINITY, |b, k| if k.abs() < b.abs() { k } else { b });
        return Ok((affine_seed(spec, k)?, true));
    }

    let mut best: Option<(f64, f64, f64)> = None;
    for i in 0..SEED_SAMPLES - 1 {
        let (Some(qa), Some(qb)) = (qs[i], qs[i + 1]) else { continue };
        if qa == 0.0 {
            return Ok((affine_seed(spec, ks[i])?, false));
        }
        if qa.signum() != qb.signum() {
            let mid = 0.5 * (ks[i] + ks[i + 1]);
            if best.is_none_or(|(a, b, _)| mid.abs() < (0.5 * (a + b)).abs()) {
                best = Some((ks[i], ks[i + 1], qa));
            }
        }
    }
    let Some((mut lo, mut hi, q_lo)) = best else {
        return Err(BvpError::HypothesisFailed(format!(
            "Q(N_f(k(1+t))) has no sign change for k in [{}, {}]",
            -radius, radius
        )));
    };
    let sign_lo = q_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match seed_mean(spec, mid) {
            Some(q) if q == 0.0 => {
                lo = mid;
                hi = mid;
                break;
            }
            Some(q) if q.signum() == sign_lo => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    let k = match (seed_mean(spec, lo), seed_mean(spec, hi)) {
        (Some(a), Some(b)) if b.abs() < a.abs() => hi,
        _ => lo,
    };
    Ok((affine_seed(spec, k)?, false))
}

fn flatten(u: &GridFunction) -> Vec<f64> {
    u.values().iter().chain(u.derivs()).copied().collect()
}

fn unflatten(spec: &ProblemSpec, z: &[f64]) -> Result<GridFunction> {
    let m = spec.grid.len();
    GridFunction::new(spec.grid, z[..m].to_vec(), z[m..].to_vec())
}

/// `‖u − M(λ, u)‖₁` split by the flat layout.
fn c1_of_flat(len: usize, r: &[f64]) -> f64 {
    let sup = |s: &[f64]| s.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    sup(&r[..len]) + sup(&r[len..])
}

struct StepOutcome {
    solution: GridFunction,
    residual: f64,
    iterations: usize,
    newton: bool,
}

struct Stepper<'a> {
    spec: &'a ProblemSpec,
    opts: &'a SolveOptions,
}

impl Stepper<'_> {
    /// `z − M(λ, z)` on the flat layout.
    fn defect(&self, lambda: f64, z: &[f64]) -> Result<Vec<f64>> {
        let u = unflatten(self.spec, z)?;
        let m = fixed_point_map(self.spec, lambda, &u)?;
        Ok(z.iter().zip(flatten(&m)).map(|(a, b)| a - b).collect())
    }

    fn solve_at(&self, lambda: f64, start: GridFunction) -> Result<StepOutcome> {
        let tol = self.opts.tol;
        let budget = self.opts.max_iters;
        let mut iterations = 0;
        let mut alpha = self.opts.damping;
        let mut u = start;
        let mut best: Option<(GridFunction, f64)> = None;
        let mut history: Vec<f64> = Vec::new();

        while iterations < budget {
            let image = match fixed_point_map(self.spec, lambda, &u) {
                Ok(m) => m,
                Err(_) if alpha > self.opts.damping / 8.0 => {
                    // Left the domain: retry from the best iterate with less damping.
                    alpha *= 0.5;
                    match &best {
                        Some((b, _)) => u = b.clone(),
                        None => break,
                    }
                    history.clear();
                    continue;
                }
                Err(_) => break,
            };
            iterations += 1;
            let r = u.c1_distance(&image);
            if r <= tol {
                return Ok(StepOutcome { solution: u, residual: r, iterations, newton: false });
            }
            let best_r = best.as_ref().map_or(f64::INFINITY, |(_, b)| *b);
            if r < best_r {
                best = Some((u.clone(), r));
            } else if r > 10.0 * best_r {
                break;
            }
            history.push(r);
            if history.len() > WINDOW && r > 0.99 * history[history.len() - 1 - WINDOW] {
                break;
            }
            let values: Vec<f64> = u
                .values()
                .iter()
                .zip(image.values())
                .map(|(a, b)| (1.0 - alpha) * a + alpha * b)
                .collect();
            let derivs: Vec<f64> = u
                .derivs()
                .iter()
                .zip(image.derivs())
                .map(|(a, b)| (1.0 - alpha) * a + alpha * b)
                .collect();
            u = GridFunction::new(self.spec.grid, values, derivs)?;
        }

        let start = best.map(|(b, _)| b).unwrap_or(u);
        self.newton(lambda, start, iterations)
    }

    fn newton(&self, lambda: f64, start: GridFunction, mut iterations: usize) -> Result<StepOutcome> {
        let tol = self.opts.tol;
        let len = self.spec.grid.len();
        let mut z = flatten(&start);
        let mut f = self.defect(lambda, &z)?;
        let mut r = c1_of_flat(len, &f);
        let mut best = r;

        while iterations < self.opts.max_iters {
            iterations += 1;
            if r <= tol {
                return Ok(StepOutcome { solution: unflatten(self.spec, &z)?, residual: r, iterations, newton: true });
            }
            let z_norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
            let matvec = |d: &[f64]| -> Option<Vec<f64>> {
                let d_norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
                if d_norm == 0.0 {
                    return Some(vec![0.0; d.len()]);
                }
                let eps = f64::EPSILON.sqrt() * (1.0 + z_norm) / d_norm;
                for h in [eps, -eps] {
                    let trial: Vec<f64> = z.iter().zip(d).map(|(a, b)| a + h * b).collect();
                    if let Ok(ft) = self.defect(lambda, &trial) {
                        return Some(ft.iter().zip(&f).map(|(a, b)| (a - b) / h).collect());
                    }
                }
                None
            };
            let rhs: Vec<f64> = f.iter().map(|x| -x).collect();
            let Some(step) = gmres(matvec, &rhs, 60, 1e-8, 600) else { break };
            if !(step.relative_residual < 1.0) {
                break;
            }

            let mut t = 1.0;
            let mut accepted = false;
            for _ in 0..30 {
                let trial: Vec<f64> = z.iter().zip(&step.x).map(|(a, b)| a + t * b).collect();
                if let Ok(ft) = self.defect(lambda, &trial) {
                    let rt = c1_of_flat(len, &ft);
                    if rt < (1.0 - 1e-4 * t) * r {
                        z = trial;
                        f = ft;
                        r = rt;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            best = best.min(r);
            if !accepted {
                break;
            }
        }
        Err(BvpError::NoConvergence { iterations, best_residual: best })
    }
}

/// Walks λ from 0 to 1.
pub(crate) fn continue_to_one(spec: &ProblemSpec, opts: &SolveOptions) -> Result<Continuation> {
    let (seed, family) = match spec.bc {
        BoundaryCondition::P1 | BoundaryCondition::P1Tilde => seed_p1(spec, opts.search_radius)?,
        BoundaryCondition::P2 => (GridFunction::zero(spec.grid), false),
    };
    let stepper = Stepper { spec, opts };
    let mut path = Vec::new();
    let first = stepper.solve_at(0.0, seed)?;
    path.push(LambdaStep { lambda: 0.0, iterations: first.iterations, residual: first.residual, newton: first.newton });
    let mut u = first.solution;

    let nominal = 1.0 / opts.lambda_steps as f64;
    let mut step = nominal;
    let mut lambda = 0.0;
    while lambda < 1.0 {
        let mut next = lambda + step;
        if next > 1.0 - 1e-12 {
            next = 1.0;
        }
        match stepper.solve_at(next, u.clone()) {
            Ok(out) => {
                path.push(LambdaStep { lambda: next, iterations: out.iterations, residual: out.residual, newton: out.newton });
                u = out.solution;
                lambda = next;
                step = (2.0 * step).min(nominal);
            }
            Err(e) => {
                step *= 0.5;
                if step < nominal * MIN_STEP_FRACTION {
                    return Err(e);
                }
            }
        }
    }
    Ok(Continuation { solution: u, path, family })
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

    #[test]
    fn seed_for_example_38() {
        let s = spec(0.01, 50, RightHandSide::new("e", |_, _, y| (4.0 * y).exp() - E), BoundaryCondition::P1);
        let (u, family) = seed_p1(&s, 1.2).unwrap();
        assert!(!family);
        assert!((u.derivs()[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn seed_failures_and_families() {
        let s = spec(1.0, 20, RightHandSide::constant(1.0), BoundaryCondition::P1);
        assert!(matches!(seed_p1(&s, 1.0), Err(BvpError::HypothesisFailed(_))));
        let z = spec(1.0, 20, RightHandSide::zero(), BoundaryCondition::P1Tilde);
        let (u, family) = seed_p1(&z, 1.0).unwrap();
        assert!(family);
        assert_eq!(u.norm_c1(), 0.0);
    }

    #[test]
    fn p1_tilde_seed_is_anchored_at_t() {
        let s = spec(0.5, 10, RightHandSide::new("v - 0.3", |_, _, y| y - 0.3), BoundaryCondition::P1Tilde);
        let (u, _) = seed_p1(&s, 1.0).unwrap();
        assert!((u.values()[10] - 0.3).abs() < 1e-15);
        assert!((u.derivs()[0] - 0.3).abs() < 1e-15);
    }
}
