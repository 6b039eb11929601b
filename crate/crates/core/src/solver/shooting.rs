//! Shooting oracle: fixed-step RK4 on `u' = φ⁻¹(w)`, `w' = f(t, u, φ⁻¹(w))`
//! plus root finding on the boundary mismatch. Shares no code with the
//! fixed-point operators beyond `φ` and `f` themselves.

use crate::error::{BvpError, Result};
use crate::grid::GridFunction;
use crate::operators::{BoundaryCondition, ProblemSpec};
use crate::par::{self, Execution};

/// Number of seeds in the one-parameter sign-change scan.
const SCAN_SEEDS: usize = 64;
/// Resolution doublings tried when the first scan finds no sign change.
const SCAN_REFINEMENTS: u32 = 6;

/// A trajectory sampled at every grid node.
struct Trajectory {
    u: Vec<f64>,
    w: Vec<f64>,
}

fn rhs(spec: &ProblemSpec, t: f64, u: f64, w: f64) -> Result<(f64, f64)> {
    let v = spec
        .phi
        .inverse(w)
        .map_err(|_| BvpError::StepRejected { time: t })?;
    let dw = spec.rhs.eval(t, u, v);
    if !dw.is_finite() {
        return Err(BvpError::StepRejected { time: t });
    }
    Ok((v, dw))
}

/// Integrates from node 0 forwards, or from node `n` backwards.
fn integrate(spec: &ProblemSpec, backward: bool, u0: f64, w0: f64) -> Result<Trajectory> {
    let grid = &spec.grid;
    let n = grid.intervals();
    let mut u = vec![0.0; n + 1];
    let mut w = vec![0.0; n + 1];
    let (start, h) = if backward { (n, -grid.step()) } else { (0, grid.step()) };
    u[start] = u0;
    w[start] = w0;
    let (mut x, mut y) = (u0, w0);
    for k in 0..n {
        let i = if backward { n - k } else { k };
        let j = if backward { i - 1 } else { i + 1 };
        let t = grid.node(i);
        let (k1u, k1w) = rhs(spec, t, x, y)?;
        let (k2u, k2w) = rhs(spec, t + 0.5 * h, x + 0.5 * h * k1u, y + 0.5 * h * k1w)?;
        let (k3u, k3w) = rhs(spec, t + 0.5 * h, x + 0.5 * h * k2u, y + 0.5 * h * k2w)?;
        let (k4u, k4w) = rhs(spec, grid.node(j), x + h * k3u, y + h * k3w)?;
        x += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        y += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        if !(y.abs() < spec.phi.a()) || !x.is_finite() {
            return Err(BvpError::StepRejected { time: grid.node(j) });
        }
        u[j] = x;
        w[j] = y;
    }
    Ok(Trajectory { u, w })
}

fn to_grid_function(spec: &ProblemSpec, traj: Trajectory) -> Result<GridFunction> {
    let derivs = traj
        .w
        .iter()
        .map(|&w| spec.phi.inverse(w))
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(spec.grid, traj.u, derivs)
}

/// Result of a shooting solve.
#[derive(Debug, Clone)]
pub(crate) struct Shot {
    pub solution: GridFunction,
    /// IVP integrations performed.
    pub integrations: usize,
    /// Every scanned seed matched: a one-parameter family of solutions.
    pub family: bool,
}

/// One-parameter shot for `P1` (forward from 0) and `P1Tilde` (backward
/// from `T`): `k` is the shared boundary value; the mismatch is `w` at the
/// far end minus `φ(k)`.
fn mismatch_1d(spec: &ProblemSpec, k: f64) -> Result<(f64, Trajectory)> {
    let backward = spec.bc == BoundaryCondition::P1Tilde;
    let wk = spec.phi.forward(k);
    let traj = integrate(spec, backward, k, wk)?;
    let far = if backward { traj.w[0] } else { traj.w[traj.w.len() - 1] };
    Ok((far - wk, traj))
}

fn shoot_1d(spec: &ProblemSpec, radius: f64, exec: Execution) -> Result<Shot> {
    let span = radius + 1.0;
    let mut integrations = 0;
    let mut bracket = None;
    // Trajectories often survive only on a narrow band of k, so a scan
    // without a sign change is repeated at doubled resolution.
    for level in 0..=SCAN_REFINEMENTS {
        let count = (SCAN_SEEDS - 1) * (1 << level) + 1;
        let seeds: Vec<f64> = (0..count)
            .map(|i| -span + 2.0 * span * i as f64 / (count - 1) as f64)
            .collect();
        let scan: Vec<Option<f64>> = par::map_range(exec, count, |i| mismatch_1d(spec, seeds[i]).ok().map(|(m, _)| m));
        integrations += count;

        if level == 0 && scan.iter().all(|m| m.is_some_and(|m| m.abs() <= 1e-13)) {
            let (_, traj) = mismatch_1d(spec, 0.0)?;
            return Ok(Shot {
                solution: to_grid_function(spec, traj)?,
                integrations: integrations + 1,
                family: true,
            });
        }

        // Bracket closest to k = 0.
        for i in 0..count - 1 {
            let (Some(ma), Some(mb)) = (scan[i], scan[i + 1]) else { continue };
            if ma == 0.0 || mb == 0.0 || ma.signum() != mb.signum() {
                let mid = (0.5 * (seeds[i] + seeds[i + 1])).abs();
                if bracket.is_none_or(|(a, b, _, _): (f64, f64, f64, f64)| mid < (0.5 * (a + b)).abs()) {
                    bracket = Some((seeds[i], seeds[i + 1], ma, mb));
                }
            }
        }
        if bracket.is_some() || scan.iter().all(Option::is_some) {
            break;
        }
    }
    let Some((mut a, mut b, mut fa, mut fb)) = bracket else {
        return Err(BvpError::NoRoot(format!(
            "no sign change of the shooting mismatch over k in [{}, {}]",
            -span, span
        )));
    };

    // Illinois regula falsi.
    let mut root = if fa.abs() <= fb.abs() { a } else { b };
    let mut side = 0i8;
    for _ in 0..200 {
        if fa == 0.0 {
            root = a;
            break;
        }
        if fb == 0.0 {
            root = b;
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        if c == a || c == b {
            break;
        }
        let (fc, _) = mismatch_1d(spec, c)?;
        integrations += 1;
        root = c;
        if fc == 0.0 {
            break;
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= 4.0 * f64::EPSILON * (1.0 + a.abs()) {
            root = if fa.abs() <= fb.abs() { a } else { b };
            break;
        }
    }
    let (_, traj) = mismatch_1d(spec, root)?;
    Ok(Shot {
        solution: to_grid_function(spec, traj)?,
        integrations: integrations + 1,
        family: false,
    })
}

/// `(u(T) − p, u'(T) − p)` for the shot `u(0) = p`, `u'(0) = q`.
fn mismatch_2d(spec: &ProblemSpec, p: f64, q: f64) -> Result<([f64; 2], Trajectory)> {
    let traj = integrate(spec, false, p, spec.phi.forward(q))?;
    let last = traj.u.len() - 1;
    let du = spec.phi.inverse(traj.w[last])?;
    Ok(([traj.u[last] - p, du - p], traj))
}

fn norm2(r: [f64; 2]) -> f64 {
    r[0].hypot(r[1])
}

/// Damped Newton with a finite-difference Jacobian from one start.
fn newton_2d(spec: &ProblemSpec, start: (f64, f64)) -> (Option<(f64, f64)>, usize) {
    let (mut p, mut q) = start;
    let mut count = 0;
    let Ok((mut r, _)) = mismatch_2d(spec, p, q) else { return (None, 1) };
    count += 1;
    for _ in 0..100 {
        let size = norm2(r);
        if size <= 1e-14 {
            return (Some((p, q)), count);
        }
        let dp = 1e-7 * (1.0 + p.abs());
        let dq = 1e-7 * (1.0 + q.abs());
        let (Ok((rp, _)), Ok((rq, _))) = (mismatch_2d(spec, p + dp, q), mismatch_2d(spec, p, q + dq)) else {
            return (None, count + 2);
        };
        count += 2;
        let j = [
            [(rp[0] - r[0]) / dp, (rq[0] - r[0]) / dq],
            [(rp[1] - r[1]) / dp, (rq[1] - r[1]) / dq],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return (None, count);
        }
        let sp = -(j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let sq = -(-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            count += 1;
            if let Ok((trial, _)) = mismatch_2d(spec, p + t * sp, q + t * sq) {
                if norm2(trial) < size {
                    p += t * sp;
                    q += t * sq;
                    r = trial;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            // No further decrease: accept only if already at rounding level.
            return (if size <= 1e-11 { Some((p, q)) } else { None }, count);
        }
    }
    (if norm2(r) <= 1e-11 { Some((p, q)) } else { None }, count)
}

fn shoot_p2(spec: &ProblemSpec, radius: f64, exec: Execution) -> Result<Shot> {
    let span = radius + 1.0;
    let mut starts: Vec<(f64, f64)> = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            starts.push((span * (i as f64 - 1.0), span * (j as f64 - 1.0)));
        }
    }
    starts.sort_by(|a, b| (a.0.abs() + a.1.abs()).total_cmp(&(b.0.abs() + b.1.abs())));
    let runs = par::map_range(exec, starts.len(), |i| newton_2d(spec, starts[i]));
    let integrations: usize = runs.iter().map(|(_, c)| c).sum();
    let Some((p, q)) = runs.iter().find_map(|(root, _)| *root) else {
        return Err(BvpError::NoRoot(format!(
            "shooting multistart over [{}, {}]^2 found no root",
            -span, span
        )));
    };
    let (_, traj) = mismatch_2d(spec, p, q)?;
    Ok(Shot {
        solution: to_grid_function(spec, traj)?,
        integrations: integrations + 1,
        family: false,
    })
}

/// Shooting solve for `spec.bc`; `radius` bounds the scanned unknowns.
pub(crate) fn shoot(spec: &ProblemSpec, radius: f64, exec: Execution) -> Result<Shot> {
    match spec.bc {
        BoundaryCondition::P1 | BoundaryCondition::P1Tilde => shoot_1d(spec, radius, exec),
        BoundaryCondition::P2 => shoot_p2(spec, radius, exec),
    }
}
