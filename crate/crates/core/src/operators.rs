//! Problem definition and the integral operators whose fixed points are the
//! solutions of the three boundary value problems.
//!
//! Notation follows the usual φ-Laplacian literature:
//!
//! * `N_f(u)(t) = f(t, u(t), u'(t))`
//! * `H(v)(t) = ∫₀ᵗ v`, `K(v)(t) = −∫ₜᵀ v`, `Q(v) = (1/T)∫₀ᵀ v`
//! * `P(u) = u(0)`, `S(u) = u(T)`
//!
//! `H`, `K`, `Q` and `Q_φ` all share the grid's cumulative rule, so the
//! discrete identities `K = H − H(T)`, `H(v − Q v)(T) = 0` and
//! `H(φ⁻¹(h − Q_φ h))(T) = 0` hold to rounding. That is what makes a discrete
//! fixed point satisfy its boundary conditions exactly.

use std::fmt;
use std::sync::Arc;

use crate::error::{BvpError, Result};
use crate::grid::{min_max, sup_norm, Grid, GridFunction};
use crate::homeo::{Direction, Homeomorphism};

type RhsFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// Right-hand side `f(t, x, y)`; `x` stands for `u`, `y` for `u'`.
#[derive(Clone)]
pub struct RightHandSide {
    label: String,
    f: Arc<RhsFn>,
}

impl RightHandSide {
    pub fn new(label: impl Into<String>, f: impl Fn(f64, f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_, _, _| c)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, t: f64, x: f64, y: f64) -> f64 {
        (self.f)(t, x, y)
    }
}

impl fmt::Debug for RightHandSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("RightHandSide").field(&self.label).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryCondition {
    /// `u(0) = u'(0) = u'(T)`
    P1,
    /// `u(T) = u'(0) = u'(T)`
    P1Tilde,
    /// `u(0) = u(T) = u'(T)`
    P2,
}

impl BoundaryCondition {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryCondition::P1 => "p1",
            BoundaryCondition::P1Tilde => "p1t",
            BoundaryCondition::P2 => "p2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "p1" => Some(BoundaryCondition::P1),
            "p1t" => Some(BoundaryCondition::P1Tilde),
            "p2" => Some(BoundaryCondition::P2),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub grid: Grid,
    pub phi: Homeomorphism,
    pub rhs: RightHandSide,
    pub bc: BoundaryCondition,
}

impl ProblemSpec {
    pub fn new(grid: Grid, phi: Homeomorphism, rhs: RightHandSide, bc: BoundaryCondition) -> Self {
        Self { grid, phi, rhs, bc }
    }

    pub fn horizon(&self) -> f64 {
        self.grid.horizon()
    }

    /// `N_f` on an arbitrary pair of sample vectors.
    pub(crate) fn nemytskii_raw(&self, values: &[f64], derivs: &[f64]) -> Result<Vec<f64>> {
        values
            .iter()
            .zip(derivs)
            .enumerate()
            .map(|(i, (&x, &y))| {
                let t = self.grid.node(i);
                let v = self.rhs.eval(t, x, y);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(BvpError::NonFinite { node: i, t })
                }
            })
            .collect()
    }
}

/// `N_f(u)` at every node.
pub fn nemytskii(spec: &ProblemSpec, u: &GridFunction) -> Result<Vec<f64>> {
    spec.nemytskii_raw(u.values(), u.derivs())
}

/// `H(v)(t_i) = ∫₀^{t_i} v`.
pub fn op_h(grid: &Grid, v: &[f64]) -> Vec<f64> {
    grid.cumulative(v)
}

/// `K(v)(t_i) = −∫_{t_i}^T v`, computed as `H(v) − H(v)(T)` so `K(T) = 0`.
pub fn op_k(grid: &Grid, v: &[f64]) -> Vec<f64> {
    let h = grid.cumulative(v);
    let total = h[h.len() - 1];
    h.into_iter().map(|x| x - total).collect()
}

/// Mean value `(1/T)∫₀ᵀ v`.
pub fn op_q(grid: &Grid, v: &[f64]) -> f64 {
    grid.cumulative_total(v) / grid.horizon()
}

/// `u(0)`.
pub fn op_p(values: &[f64]) -> f64 {
    values[0]
}

/// `u(T)`.
pub fn op_s(values: &[f64]) -> f64 {
    values[values.len() - 1]
}

/// `Q_φ(h)`: the unique `q ∈ [min h, max h]` with `∫₀ᵀ φ⁻¹(h − q) = 0`.
///
/// Requires `‖h‖∞ < a/2`. The integral is strictly decreasing in `q`, so
/// bisection always converges; it runs until the bracket cannot shrink.
pub fn solve_q_phi(grid: &Grid, phi: &Homeomorphism, h: &[f64]) -> Result<f64> {
    let a = phi.a();
    let norm = sup_norm(h);
    if !(norm < a / 2.0) {
        return Err(BvpError::PreconditionViolated(format!(
            "Q_phi needs ||h||_inf < a/2 = {}, got {norm}",
            a / 2.0
        )));
    }
    let (lo, hi) = min_max(h);
    if lo == hi {
        return Ok(lo);
    }
    let mut shifted = vec![0.0; h.len()];
    let mut mean_inverse = |q: f64| {
        for (s, &x) in shifted.iter_mut().zip(h) {
            *s = phi.inverse_unchecked(x - q);
        }
        grid.cumulative_total(&shifted)
    };
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let value = mean_inverse(mid);
        if value > 0.0 {
            lo = mid;
        } else if value < 0.0 {
            hi = mid;
        } else {
            return Ok(mid);
        }
    }
    // Return whichever end of the final bracket has the smaller defect.
    if mean_inverse(lo).abs() <= mean_inverse(hi).abs() {
        Ok(lo)
    } else {
        Ok(hi)
    }
}

/// `λ·H(N − Q N) + φ(anchor)`, the argument of `φ⁻¹` in `M` and `M̃`.
fn continuation_argument(spec: &ProblemSpec, lambda: f64, n: &[f64], anchor: f64) -> (Vec<f64>, f64) {
    let grid = &spec.grid;
    let mean = op_q(grid, n);
    let centered: Vec<f64> = n.iter().map(|x| x - mean).collect();
    let phi_anchor = spec.phi.forward(anchor);
    let w = op_h(grid, &centered)
        .into_iter()
        .map(|x| lambda * x + phi_anchor)
        .collect();
    (w, mean)
}

/// `M(λ, u) = P(u) + Q(N_f u) + H(φ⁻¹[λ H(N_f u − Q N_f u) + φ(P u)])`,
/// the operator for `u(0) = u'(0) = u'(T)`. Its derivative is the `φ⁻¹[…]`
/// term itself.
pub fn op_m(spec: &ProblemSpec, lambda: f64, u: &GridFunction) -> Result<GridFunction> {
    let n = nemytskii(spec, u)?;
    let p = op_p(u.values());
    let (w, mean) = continuation_argument(spec, lambda, &n, p);
    let derivs = spec.phi.apply_to_function(Direction::Inverse, &w)?;
    let values = op_h(&spec.grid, &derivs)
        .into_iter()
        .map(|x| p + mean + x)
        .collect();
    GridFunction::new(spec.grid, values, derivs)
}

/// `M̃(λ, u) = S(u) + Q(N_f u) + K(φ⁻¹[λ H(N_f u − Q N_f u) + φ(S u)])`,
/// the operator for `u(T) = u'(0) = u'(T)`.
pub fn op_m_tilde(spec: &ProblemSpec, lambda: f64, u: &GridFunction) -> Result<GridFunction> {
    let n = nemytskii(spec, u)?;
    let s = op_s(u.values());
    let (w, mean) = continuation_argument(spec, lambda, &n, s);
    let derivs = spec.phi.apply_to_function(Direction::Inverse, &w)?;
    let values = op_k(&spec.grid, &derivs)
        .into_iter()
        .map(|x| s + mean + x)
        .collect();
    GridFunction::new(spec.grid, values, derivs)
}

/// `M(λ, u) = φ⁻¹(−Q_φ(g)) + H(φ⁻¹[g − Q_φ(g)])` with `g = λ K(N_f u)`,
/// the operator for `u(0) = u(T) = u'(T)`; `λ = 1` is `M₁`.
pub fn op_m1(spec: &ProblemSpec, lambda: f64, u: &GridFunction) -> Result<GridFunction> {
    let n = nemytskii(spec, u)?;
    let g: Vec<f64> = op_k(&spec.grid, &n).into_iter().map(|x| lambda * x).collect();
    let q = solve_q_phi(&spec.grid, &spec.phi, &g)?;
    let shifted: Vec<f64> = g.iter().map(|x| x - q).collect();
    let derivs = spec.phi.apply_to_function(Direction::Inverse, &shifted)?;
    let base = spec.phi.inverse(-q)?;
    let values = op_h(&spec.grid, &derivs)
        .into_iter()
        .map(|x| base + x)
        .collect();
    GridFunction::new(spec.grid, values, derivs)
}

/// The fixed-point operator matching `spec.bc`.
pub fn fixed_point_map(spec: &ProblemSpec, lambda: f64, u: &GridFunction) -> Result<GridFunction> {
    match spec.bc {
        BoundaryCondition::P1 => op_m(spec, lambda, u),
        BoundaryCondition::P1Tilde => op_m_tilde(spec, lambda, u),
        BoundaryCondition::P2 => op_m1(spec, lambda, u),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    /// `‖u − M(λ, u)‖₁`; NaN when `u` lies outside the operator's domain.
    pub c1_residual: f64,
    /// The three pairwise defects of the boundary condition.
    pub bc_residuals: [f64; 3],
    /// `|Q(N_f u)|`.
    pub mean_residual: f64,
}

impl Residuals {
    pub fn max_bc(&self) -> f64 {
        self.bc_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Pairwise defects of the three quantities tied together by `bc`.
pub fn boundary_defects(bc: BoundaryCondition, u: &GridFunction) -> [f64; 3] {
    let v = u.values();
    let d = u.derivs();
    let last = v.len() - 1;
    let (a, b, c) = match bc {
        BoundaryCondition::P1 => (v[0], d[0], d[last]),
        BoundaryCondition::P1Tilde => (v[last], d[0], d[last]),
        BoundaryCondition::P2 => (v[0], v[last], d[last]),
    };
    [(a - b).abs(), (b - c).abs(), (a - c).abs()]
}

pub fn residual(spec: &ProblemSpec, lambda: f64, u: &GridFunction) -> Result<Residuals> {
    let image = fixed_point_map(spec, lambda, u)?;
    let n = nemytskii(spec, u)?;
    Ok(Residuals {
        c1_residual: u.c1_distance(&image),
        bc_residuals: boundary_defects(spec.bc, u),
        mean_residual: op_q(&spec.grid, &n).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::E;

    fn grid(t: f64, n: usize) -> Grid {
        Grid::new(t, n).unwrap()
    }

    fn example_38(t: f64, n: usize, bc: BoundaryCondition) -> ProblemSpec {
        ProblemSpec::new(
            grid(t, n),
            Homeomorphism::curvature(),
            RightHandSide::new("exp(4v)-e", |_, _, y| (4.0 * y).exp() - E),
            bc,
        )
    }

    fn cosine(beta: f64, bc: BoundaryCondition) -> ProblemSpec {
        ProblemSpec::new(
            grid(1.0, 200),
            Homeomorphism::curvature(),
            RightHandSide::new("beta cos u", move |_, x, _| beta * x.cos()),
            bc,
        )
    }

    #[test]
    fn nemytskii_examples() {
        let g = grid(1.0, 10);
        let u = GridFunction::from_fn(g, |t| t * t, |t| 2.0 * t).unwrap();
        let z = ProblemSpec::new(g, Homeomorphism::curvature(), RightHandSide::zero(), BoundaryCondition::P1);
        assert!(nemytskii(&z, &u).unwrap().iter().all(|&x| x == 0.0));

        let spec = example_38(1.0, 10, BoundaryCondition::P1);
        let u = GridFunction::from_fn(g, |t| t / 4.0, |_| 0.25).unwrap();
        assert!(nemytskii(&spec, &u).unwrap().iter().all(|&x| x == 0.0));

        let spec = cosine(0.4, BoundaryCondition::P2);
        let u = GridFunction::zero(spec.grid);
        assert!(nemytskii(&spec, &u).unwrap().iter().all(|&x| x == 0.4));
    }

    #[test]
    fn nemytskii_reports_non_finite() {
        let g = grid(1.0, 4);
        let spec = ProblemSpec::new(
            g,
            Homeomorphism::curvature(),
            RightHandSide::new("1/u", |_, x, _| 1.0 / x),
            BoundaryCondition::P1,
        );
        let u = GridFunction::from_fn(g, |t| t - 0.5, |_| 1.0).unwrap();
        assert_eq!(
            nemytskii(&spec, &u).unwrap_err(),
            BvpError::NonFinite { node: 2, t: 0.5 }
        );
    }

    #[test]
    fn linear_operator_examples() {
        let g = grid(2.0, 10);
        let ones = g.sample(|_| 1.0);
        let h = op_h(&g, &ones);
        let k = op_k(&g, &ones);
        for (i, t) in g.nodes().enumerate() {
            assert!((h[i] - t).abs() < 1e-14);
            assert!((k[i] - (t - 2.0)).abs() < 1e-14);
        }
        assert!((op_q(&g, &ones) - 1.0).abs() < 1e-15);

        let g = grid(1.0, 10);
        let v = g.sample(|t| t);
        assert!((op_h(&g, &v)[10] - 0.5).abs() < 1e-15);
        assert!((op_k(&g, &v)[0] + 0.5).abs() < 1e-15);
        assert!((op_q(&g, &v) - 0.5).abs() < 1e-15);
        assert_eq!(op_p(&v), 0.0);
        assert_eq!(op_s(&v), 1.0);
    }

    #[test]
    fn k_is_h_shifted() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = grid(1.7, 37);
        for _ in 0..50 {
            let v: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let h = op_h(&g, &v);
            let k = op_k(&g, &v);
            for i in 0..g.len() {
                assert!((k[i] - (h[i] - h[g.intervals()])).abs() <= 1e-14);
            }
            assert_eq!(k[g.intervals()], 0.0);
        }
    }

    #[test]
    fn q_phi_constant_and_zero() {
        let g = grid(1.0, 50);
        let phi = Homeomorphism::curvature();
        assert_eq!(solve_q_phi(&g, &phi, &[0.3; 51]).unwrap(), 0.3);
        assert_eq!(solve_q_phi(&g, &phi, &[0.0; 51]).unwrap(), 0.0);
    }

    #[test]
    fn q_phi_linear_profile_is_symmetric() {
        // φ⁻¹ is odd and 0.4·t is symmetric about its midpoint, so the exact
        // (and the symmetric discrete) answer is 0.2; the antiderivative
        // −√(1 − y²) confirms it: √(1 − q²) = √(1 − (0.4 − q)²) ⇒ q = 0.2.
        let g = grid(1.0, 200);
        let h = g.sample(|t| 0.4 * t);
        let q = solve_q_phi(&g, &Homeomorphism::curvature(), &h).unwrap();
        assert!((q - 0.2).abs() < 1e-14, "q = {q}");
    }

    #[test]
    fn q_phi_matches_fine_grid_oracle() {
        // Independent oracle: plain Simpson on a 20000-interval grid and
        // bisection to machine precision.
        fn oracle(h: impl Fn(f64) -> f64, phi: Homeomorphism, t: f64) -> f64 {
            let fine = Grid::new(t, 20_000).unwrap();
            let hs = fine.sample(&h);
            let integral = |q: f64| {
                let v: Vec<f64> = hs.iter().map(|x| phi.inverse_unchecked(x - q)).collect();
                fine.integrate(&v)
            };
            let (mut lo, mut hi) = min_max(&hs);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if integral(mid) > 0.0 {
                    lo = mid
                } else {
                    hi = mid
                }
            }
            0.5 * (lo + hi)
        }
        let profile = |t: f64| 0.4 * t * t - 0.08 * (5.0 * t).sin();
        let phi = Homeomorphism::curvature();
        let expected = oracle(profile, phi, 1.0);
        let g = grid(1.0, 200);
        let q = solve_q_phi(&g, &phi, &g.sample(profile)).unwrap();
        assert!((q - expected).abs() < 1e-9, "q = {q}, oracle = {expected}");
        // Pinned regression value (oracle above, rounded).
        assert!((q - 0.123_623_417_13).abs() < 1e-10, "q = {q}");
    }

    #[test]
    fn q_phi_rejects_large_h() {
        let g = grid(1.0, 10);
        let h = g.sample(|t| t * 0.6);
        assert!(matches!(
            solve_q_phi(&g, &Homeomorphism::curvature(), &h),
            Err(BvpError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn op_m_lambda_zero_with_zero_rhs() {
        let g = grid(1.0, 20);
        let spec = ProblemSpec::new(g, Homeomorphism::curvature(), RightHandSide::zero(), BoundaryCondition::P1);
        let k = 0.7;
        let u = GridFunction::from_fn(g, |t| k + (3.0 * t).sin(), |t| 3.0 * (3.0 * t).cos()).unwrap();
        let v = op_m(&spec, 0.0, &u).unwrap();
        for (i, t) in g.nodes().enumerate() {
            assert!((v.values()[i] - k * (1.0 + t)).abs() < 1e-14);
            assert!((v.derivs()[i] - k).abs() < 1e-14);
        }
    }

    #[test]
    fn example_38_fixed_point() {
        for &t in &[0.01, 1.0] {
            let spec = example_38(t, 100, BoundaryCondition::P1);
            let u = GridFunction::from_fn(spec.grid, |s| (1.0 + s) / 4.0, |_| 0.25).unwrap();
            let v = op_m(&spec, 1.0, &u).unwrap();
            assert!(u.c1_distance(&v) < 1e-12);
            let r = residual(&spec, 1.0, &u).unwrap();
            assert!(r.c1_residual < 1e-12 && r.max_bc() < 1e-12 && r.mean_residual < 1e-12);
            // Purity: bit-identical on repeat.
            assert_eq!(v, op_m(&spec, 1.0, &u).unwrap());
        }
    }

    #[test]
    fn op_m_tilde_examples() {
        let g = grid(2.0, 40);
        let zero = ProblemSpec::new(g, Homeomorphism::curvature(), RightHandSide::zero(), BoundaryCondition::P1Tilde);
        let k = -0.4;
        let u = GridFunction::from_fn(g, |t| t * t - 4.0 + k, |t| 2.0 * t).unwrap();
        let v = op_m_tilde(&zero, 0.3, &u).unwrap();
        for (i, t) in g.nodes().enumerate() {
            assert!((v.values()[i] - k * (1.0 + t - 2.0)).abs() < 1e-14);
        }
        let fam = GridFunction::from_fn(g, |t| k * (1.0 + t - 2.0), |_| k).unwrap();
        assert!(fam.c1_distance(&op_m_tilde(&zero, 1.0, &fam).unwrap()) < 1e-14);

        let spec = example_38(0.5, 50, BoundaryCondition::P1Tilde);
        let u = GridFunction::from_fn(spec.grid, |t| 0.25 * (1.0 + t - 0.5), |_| 0.25).unwrap();
        let r = residual(&spec, 1.0, &u).unwrap();
        assert!(r.c1_residual < 1e-12 && r.max_bc() < 1e-12, "{r:?}");
    }

    #[test]
    fn op_m_outside_omega() {
        let spec = example_38(1.0, 20, BoundaryCondition::P1);
        let u = GridFunction::from_fn(spec.grid, |t| 0.5 + t, |_| 1.0).unwrap();
        // N = e⁴ − e is constant so H(N − QN) = 0 and w = φ(0.5) is fine;
        // a steep u' drives w out of (−1, 1).
        assert!(op_m(&spec, 1.0, &u).is_ok());
        let u = GridFunction::from_fn(spec.grid, |t| 0.5 + t * t, |t| 2.0 * t).unwrap();
        assert!(matches!(
            op_m(&spec, 1.0, &u),
            Err(BvpError::RangeViolation { .. })
        ));
    }

    #[test]
    fn op_m_boundary_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let spec = cosine(0.3, BoundaryCondition::P1);
        for _ in 0..20 {
            let (a, b, lambda) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.0..1.0));
            let u = GridFunction::from_fn(spec.grid, |t| a + b * t * t, |t| 2.0 * b * t).unwrap();
            let v = op_m(&spec, lambda, &u).unwrap();
            let n = nemytskii(&spec, &u).unwrap();
            assert!((v.values()[0] - (a + op_q(&spec.grid, &n))).abs() < 1e-14);
            assert!((v.derivs()[0] - a).abs() < 1e-14);
        }
    }

    #[test]
    fn op_m1_examples_and_identities() {
        let spec = cosine(0.4, BoundaryCondition::P2);
        let u = GridFunction::from_fn(spec.grid, |t| (2.0 * t).sin(), |t| 2.0 * (2.0 * t).cos()).unwrap();
        let zero = op_m1(&spec, 0.0, &u).unwrap();
        assert!(zero.norm_c1() == 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (a, b, lambda) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.0..1.0));
            let u = GridFunction::from_fn(spec.grid, |t| a * t + b, |_| a).unwrap();
            let v = op_m1(&spec, lambda, &u).unwrap();
            let last = spec.grid.intervals();
            assert_eq!(v.values()[0], v.derivs()[last]);
            assert!((v.values()[last] - v.values()[0]).abs() < 1e-10);
        }
    }

    #[test]
    fn op_m1_constant_rhs_closed_form() {
        // f ≡ c₀ ⇒ g(t) = −c₀(T − t), linear, so Q_φ(g) = −c₀T/2 by symmetry.
        let c0 = 0.3;
        let g = grid(1.0, 100);
        let spec = ProblemSpec::new(g, Homeomorphism::curvature(), RightHandSide::constant(c0), BoundaryCondition::P2);
        let v = op_m1(&spec, 1.0, &GridFunction::zero(g)).unwrap();
        let q = -c0 / 2.0;
        let phi = Homeomorphism::curvature();
        assert!((v.values()[0] - phi.inverse(-q).unwrap()).abs() < 1e-14);
        for (i, t) in g.nodes().enumerate() {
            let expected = phi.inverse(-c0 * (1.0 - t) - q).unwrap();
            assert!((v.derivs()[i] - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn residual_examples() {
        let spec = cosine(0.7, BoundaryCondition::P1);
        let r = residual(&spec, 1.0, &GridFunction::zero(spec.grid)).unwrap();
        assert!((r.mean_residual - 0.7).abs() < 1e-14);

        let g = grid(1.0, 10);
        let spec = ProblemSpec::new(g, Homeomorphism::curvature(), RightHandSide::zero(), BoundaryCondition::P2);
        let r = residual(&spec, 1.0, &GridFunction::zero(g)).unwrap();
        assert_eq!(r, Residuals { c1_residual: 0.0, bc_residuals: [0.0; 3], mean_residual: 0.0 });
    }
}
