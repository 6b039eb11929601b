//! Brouwer degree of planar maps as the winding number of the boundary image
//! about the origin.
//!
//! For the `P1` problem the degree of the infinite-dimensional fixed-point
//! problem reduces to that of
//!
//! ```text
//! G(x, y) = ( −(1/T) ∫₀ᵀ f(t, x + y t, y) dt,  y − x )
//! ```
//!
//! on `Δ = B_ρ(0) ∩ { |φ(x)| < κ }`, the intersection of a disc and a
//! vertical strip `|x| < φ⁻¹(κ)`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{BvpError, Result};
use crate::homeo::Homeomorphism;
use crate::operators::{BoundaryCondition, ProblemSpec};
use crate::par::{self, Execution};

type MapFn = dyn Fn(f64, f64) -> (f64, f64) + Send + Sync;

/// Below this modulus the map counts as vanishing on the boundary.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Maximum recursive bisections of one boundary segment.
pub const MAX_DEPTH: u32 = 20;

#[derive(Clone)]
pub struct PlanarMap {
    g: Arc<MapFn>,
}

impl PlanarMap {
    pub fn new(g: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static) -> Self {
        Self { g: Arc::new(g) }
    }

    /// `(x, y) ↦ A (x, y)ᵀ` with `A` given row-major.
    pub fn linear(a: [[f64; 2]; 2]) -> Self {
        Self::new(move |x, y| (a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y))
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        (self.g)(x, y)
    }
}

impl std::fmt::Debug for PlanarMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PlanarMap")
    }
}

/// The reduction map of the `P1` problem (and its mirror for `P1Tilde`).
///
/// For `P1` the affine candidates are `u = x + y t`; for `P1Tilde` they are
/// `u = x + y (t − T)` (so `x = u(T)`). The `t`-integral uses the grid's
/// Simpson/trapezoid rule.
pub fn build_g(spec: &ProblemSpec) -> PlanarMap {
    let grid = spec.grid;
    let rhs = spec.rhs.clone();
    let horizon = grid.horizon();
    let shift = match spec.bc {
        BoundaryCondition::P1Tilde => horizon,
        _ => 0.0,
    };
    let nodes: Vec<f64> = grid.nodes().collect();
    PlanarMap::new(move |x, y| {
        let samples: Vec<f64> = nodes
            .iter()
            .map(|&t| rhs.eval(t, x + y * (t - shift), y))
            .collect();
        (-grid.integrate(&samples) / horizon, y - x)
    })
}

/// `Δ = B_ρ(0) ∩ { (x, y) : |φ(x)| < κ }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainDelta {
    rho: f64,
    kappa: f64,
    phi: Homeomorphism,
}

impl DomainDelta {
    pub fn new(rho: f64, kappa: f64, phi: Homeomorphism) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(BvpError::EmptyDomain(format!("radius must be positive, got {rho}")));
        }
        if !(kappa > 0.0 && kappa < phi.a()) {
            return Err(BvpError::EmptyDomain(format!(
                "kappa must lie in (0, {}), got {kappa}",
                phi.a()
            )));
        }
        Ok(Self { rho, kappa, phi })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Half-width `φ⁻¹(κ)` of the strip.
    pub fn strip_half_width(&self) -> f64 {
        self.phi.inverse_unchecked(self.kappa)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x * x + y * y < self.rho * self.rho && self.phi.forward(x).abs() < self.kappa
    }
}

/// Counter-clockwise closed polyline along `∂Δ`; the last point repeats the
/// first exactly. Consecutive points are at most `perimeter/m` apart.
pub fn boundary_polygon(delta: &DomainDelta, m: usize) -> Result<Vec<(f64, f64)>> {
    if m < 64 {
        return Err(BvpError::InvalidInput(format!(
            "boundary needs at least 64 samples, got {m}"
        )));
    }
    let rho = delta.rho;
    let s = delta.strip_half_width();
    let mut pts = Vec::with_capacity(m + 8);

    if s >= rho {
        for k in 0..m {
            let theta = 2.0 * PI * k as f64 / m as f64;
            pts.push((rho * theta.cos(), rho * theta.sin()));
        }
    } else {
        // Stadium: right segment, top arc, left segment, bottom arc.
        let half = (rho * rho - s * s).sqrt();
        if !(half > 0.0) {
            return Err(BvpError::EmptyDomain("strip does not meet the disc".into()));
        }
        let theta0 = half.atan2(s);
        let arc = rho * (PI - 2.0 * theta0);
        let perimeter = 4.0 * half + 2.0 * arc;
        let spacing = perimeter / m as f64;
        let pieces = |len: f64| ((len / spacing).ceil() as usize).max(1);

        let seg = pieces(2.0 * half);
        for k in 0..seg {
            pts.push((s, -half + 2.0 * half * k as f64 / seg as f64));
        }
        let arc_pieces = pieces(arc);
        for k in 0..arc_pieces {
            let theta = theta0 + (PI - 2.0 * theta0) * k as f64 / arc_pieces as f64;
            pts.push((rho * theta.cos(), rho * theta.sin()));
        }
        for k in 0..seg {
            pts.push((-s, half - 2.0 * half * k as f64 / seg as f64));
        }
        for k in 0..arc_pieces {
            let theta = PI + theta0 + (PI - 2.0 * theta0) * k as f64 / arc_pieces as f64;
            pts.push((rho * theta.cos(), rho * theta.sin()));
        }
    }
    pts.push(pts[0]);
    Ok(pts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeResult {
    pub degree: i64,
    /// Smallest `|g|` over every point at which `g` was evaluated.
    pub min_boundary_norm: f64,
    /// Number of evaluations of `g`.
    pub samples_used: usize,
    /// Whether any segment had to be bisected.
    pub refined: bool,
}

#[derive(Debug, Clone, Copy)]
struct SegmentSum {
    angle: f64,
    min_norm: f64,
    samples: usize,
    refined: bool,
}

fn checked_eval(g: &PlanarMap, x: f64, y: f64) -> Result<(f64, f64)> {
    let (gx, gy) = g.eval(x, y);
    if !(gx.is_finite() && gy.is_finite()) {
        return Err(BvpError::NonFiniteMap { x, y });
    }
    let norm = gx.hypot(gy);
    if norm < ZERO_THRESHOLD {
        return Err(BvpError::ZeroOnBoundary { x, y, norm });
    }
    Ok((gx, gy))
}

/// Signed angle from `a` to `b`, in `(−π, π]`.
fn angle_between(a: (f64, f64), b: (f64, f64)) -> f64 {
    let cross = a.0 * b.1 - a.1 * b.0;
    let dot = a.0 * b.0 + a.1 * b.1;
    cross.atan2(dot)
}

fn accumulate_segment(
    g: &PlanarMap,
    p0: (f64, f64),
    g0: (f64, f64),
    p1: (f64, f64),
    g1: (f64, f64),
    depth: u32,
    acc: &mut SegmentSum,
) -> Result<()> {
    let dtheta = angle_between(g0, g1);
    if dtheta.abs() < PI / 2.0 {
        acc.angle += dtheta;
        return Ok(());
    }
    let mid = (0.5 * (p0.0 + p1.0), 0.5 * (p0.1 + p1.1));
    if depth >= MAX_DEPTH {
        return Err(BvpError::RefinementExhausted {
            depth,
            x: mid.0,
            y: mid.1,
        });
    }
    let gm = checked_eval(g, mid.0, mid.1)?;
    acc.samples += 1;
    acc.refined = true;
    acc.min_norm = acc.min_norm.min(gm.0.hypot(gm.1));
    accumulate_segment(g, p0, g0, mid, gm, depth + 1, acc)?;
    accumulate_segment(g, mid, gm, p1, g1, depth + 1, acc)
}

/// Winding number of `g` along the closed polyline `boundary`.
///
/// Each polyline segment contributes the signed angle swept by `g`; a
/// segment whose endpoint images differ by `π/2` or more is bisected
/// recursively. Segments are independent, so they are processed in parallel
/// and reduced in boundary order.
pub fn winding_degree(g: &PlanarMap, boundary: &[(f64, f64)], exec: Execution) -> Result<DegreeResult> {
    if boundary.len() < 4 || boundary.first() != boundary.last() {
        return Err(BvpError::InvalidInput(
            "boundary must be a closed polyline (first point repeated at the end)".into(),
        ));
    }
    let vertices = &boundary[..boundary.len() - 1];
    let images: Vec<Result<(f64, f64)>> =
        par::map_range(exec, vertices.len(), |i| checked_eval(g, vertices[i].0, vertices[i].1));
    let images: Vec<(f64, f64)> = images.into_iter().collect::<Result<_>>()?;

    let count = vertices.len();
    let segments: Vec<Result<SegmentSum>> = par::map_range(exec, count, |i| {
        let j = (i + 1) % count;
        let mut acc = SegmentSum {
            angle: 0.0,
            min_norm: images[i].0.hypot(images[i].1),
            samples: 0,
            refined: false,
        };
        accumulate_segment(g, vertices[i], images[i], vertices[j], images[j], 0, &mut acc)?;
        Ok(acc)
    });

    let mut total = 0.0;
    let mut min_norm = f64::INFINITY;
    let mut samples = count;
    let mut refined = false;
    for seg in segments {
        let seg = seg?;
        total += seg.angle;
        min_norm = min_norm.min(seg.min_norm);
        samples += seg.samples;
        refined |= seg.refined;
    }
    Ok(DegreeResult {
        degree: (total / (2.0 * PI)).round() as i64,
        min_boundary_norm: min_norm,
        samples_used: samples,
        refined,
    })
}

/// Degree of the reduction map of `spec` on `delta`, using `m` boundary
/// samples.
///
/// Only meaningful for `P1`/`P1Tilde`. Whether `delta` lies in the
/// range certified by the a priori bounds is checked separately (see
/// [`crate::hypotheses::P1Bounds::admits`]).
pub fn degree_for_problem(spec: &ProblemSpec, delta: &DomainDelta, m: usize, exec: Execution) -> Result<DegreeResult> {
    if spec.bc == BoundaryCondition::P2 {
        return Err(BvpError::InvalidInput(
            "degree reduction applies to p1 and p1t only".into(),
        ));
    }
    let g = build_g(spec);
    let boundary = boundary_polygon(delta, m)?;
    winding_degree(&g, &boundary, exec)
}
