//! A priori bounds and hypothesis checks for the existence results.
//!
//! Conditions that quantify over all of `[0, T] × ℝ²` cannot be decided by a
//! program. They are checked on a user-declared sampling box and reported as
//! [`Status::SampledOnly`]; only plain arithmetic on user-supplied constants
//! is ever [`Status::Certified`].
//!
//! * `P1`/`P1Tilde`: a sign condition at thresholds `M1 < M2` (checked in
//!   the pointwise form: `f` has one strict sign for `y ≥ M2` and the opposite
//!   one for `y ≤ M1`), a lower envelope `f ≥ c(t)`, and
//!   `L + 2‖c⁻‖_{L¹} < a` with `L = max(|φ(M1)|, |φ(M2)|)`. Then every
//!   solution satisfies `‖u‖₁ < r(2 + T)` where
//!   `r = max |φ⁻¹(±(L + 2‖c⁻‖_{L¹}))|`.
//! * `P2`: `|f| ≤ c < a/(2T)`, giving `‖u'‖∞ ≤ L = max |φ⁻¹(±2cT)|` and
//!   `‖u‖₁ ≤ L(2 + T)`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{BvpError, Result};
use crate::grid::negative_part;
use crate::homeo::Homeomorphism;
use crate::operators::{BoundaryCondition, ProblemSpec};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Exact arithmetic on supplied constants.
    Certified,
    /// Held at every sample; not a proof.
    SampledOnly,
    Failed,
    /// Not enough input to decide.
    Insufficient,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Certified => "pass (certified)",
            Status::SampledOnly => "pass (sampled-only)",
            Status::Failed => "FAIL",
            Status::Insufficient => "insufficient data",
        }
    }
}

/// Outcome of one condition. Constructed only through [`Verdict::arithmetic`],
/// [`Verdict::sampled`] and [`Verdict::insufficient`], so a sampled check can
/// never be reported as certified.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    name: String,
    status: Status,
    samples: usize,
    detail: String,
}

impl Verdict {
    pub fn arithmetic(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if holds { Status::Certified } else { Status::Failed },
            samples: 0,
            detail: detail.into(),
        }
    }

    pub fn sampled(name: impl Into<String>, holds: bool, samples: usize, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if holds { Status::SampledOnly } else { Status::Failed },
            samples,
            detail: detail.into(),
        }
    }

    pub fn insufficient(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Insufficient,
            samples: 0,
            detail: detail.into(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Certified | Status::SampledOnly)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.status.label())?;
        if self.samples > 0 {
            write!(f, " [{} samples]", self.samples)?;
        }
        if !self.detail.is_empty() {
            write!(f, " -- {}", self.detail)?;
        }
        Ok(())
    }
}

/// Box over which universal conditions are sampled: `t ∈ [0, T]`,
/// `x ∈ [−x_radius, x_radius]`, and a `y` window of width `y_extent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingBox {
    pub x_radius: f64,
    pub y_extent: f64,
    pub samples: usize,
    pub seed: u64,
    pub exec: Execution,
}

impl Default for SamplingBox {
    fn default() -> Self {
        Self {
            x_radius: 10.0,
            y_extent: 10.0,
            samples: 100_000,
            seed: 0,
            exec: Execution::default(),
        }
    }
}

/// Randomly shifted Halton points in `[0, 1)³`.
struct Halton3 {
    shift: [f64; 3],
}

impl Halton3 {
    fn new(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self {
            shift: [rng.gen(), rng.gen(), rng.gen()],
        }
    }

    fn radical_inverse(mut i: u64, base: u64) -> f64 {
        let inv = 1.0 / base as f64;
        let mut f = inv;
        let mut r = 0.0;
        while i > 0 {
            r += f * (i % base) as f64;
            i /= base;
            f *= inv;
        }
        r
    }

    fn point(&self, i: usize) -> [f64; 3] {
        let i = i as u64 + 1;
        let mut p = [
            Self::radical_inverse(i, 2),
            Self::radical_inverse(i, 3),
            Self::radical_inverse(i, 5),
        ];
        for (x, s) in p.iter_mut().zip(self.shift) {
            *x = (*x + s).fract();
        }
        p
    }
}

/// Maps unit-cube sample `i` into `[0, T] × [−X, X] × [y_lo, y_hi]` and
/// evaluates `f` there. The first samples are pinned to the corners of the
/// `y` window so a threshold itself is always tested.
fn sample_rhs(spec: &ProblemSpec, sampling: &SamplingBox, y_lo: f64, y_hi: f64, salt: u64) -> Vec<((f64, f64, f64), f64)> {
    let halton = Halton3::new(sampling.seed ^ salt);
    let horizon = spec.horizon();
    let x_radius = sampling.x_radius;
    par::map_range(sampling.exec, sampling.samples, |i| {
        let [a, b, c] = halton.point(i);
        let t = a * horizon;
        let x = (2.0 * b - 1.0) * x_radius;
        let y = match i {
            0 => y_lo,
            1 => y_hi,
            _ => y_lo + c * (y_hi - y_lo),
        };
        ((t, x, y), spec.rhs.eval(t, x, y))
    })
}

/// Pointwise sign condition at thresholds `m1 < m2`.
pub fn check_sign_condition(spec: &ProblemSpec, m1: f64, m2: f64, sampling: &SamplingBox) -> Result<Verdict> {
    if !(m1 < m2) {
        return Err(BvpError::InvalidThresholds { m1, m2 });
    }
    let name = format!("sign condition (M1={m1}, M2={m2})");
    let upper = sample_rhs(spec, sampling, m2, m2 + sampling.y_extent, 0x5151);
    let lower = sample_rhs(spec, sampling, m1 - sampling.y_extent, m1, 0xA3A3);
    let total = upper.len() + lower.len();

    let orientation = upper.first().map(|(_, v)| v.signum()).unwrap_or(0.0);
    if !(orientation == 1.0 || orientation == -1.0) {
        return Ok(Verdict::sampled(name, false, total, "f vanishes at y = M2"));
    }
    let bad = |(p, v): &((f64, f64, f64), f64), want: f64| -> Option<String> {
        if v.is_finite() && v.signum() == want && *v != 0.0 {
            None
        } else {
            Some(format!("counterexample f({}, {}, {}) = {}", p.0, p.1, p.2, v))
        }
    };
    if let Some(msg) = upper.iter().find_map(|s| bad(s, orientation)) {
        return Ok(Verdict::sampled(name, false, total, msg));
    }
    if let Some(msg) = lower.iter().find_map(|s| bad(s, -orientation)) {
        return Ok(Verdict::sampled(name, false, total, msg));
    }
    let detail = if orientation > 0.0 {
        "f > 0 for y >= M2, f < 0 for y <= M1"
    } else {
        "f < 0 for y >= M2, f > 0 for y <= M1"
    };
    Ok(Verdict::sampled(name, true, total, detail))
}

/// Lower envelope `c(t)` with `f(t, x, y) ≥ c(t)`.
#[derive(Clone)]
pub enum LowerEnvelope {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl LowerEnvelope {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            LowerEnvelope::Constant(c) => *c,
            LowerEnvelope::Function(f) => f(t),
        }
    }
}

impl fmt::Debug for LowerEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerEnvelope::Constant(c) => write!(f, "Constant({c})"),
            LowerEnvelope::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Constants of the `P1`/`P1Tilde` a priori estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P1Bounds {
    pub m1: f64,
    pub m2: f64,
    /// `max(|φ(M1)|, |φ(M2)|)`.
    pub l: f64,
    /// `‖c⁻‖_{L¹}`.
    pub c_minus_l1: f64,
    /// `max |φ⁻¹(±(L + 2‖c⁻‖))|`; `None` when `L + 2‖c⁻‖ ≥ a`.
    pub r: Option<f64>,
    /// `r(2 + T)`: admissible radii satisfy `ρ > rho_min`.
    pub rho_min: Option<f64>,
    /// Open interval of admissible `κ`: `(L + 2‖c⁻‖, a)`.
    pub kappa_range: (f64, f64),
}

impl P1Bounds {
    /// Whether `(ρ, κ)` lies in the range where the degree reduction holds.
    pub fn admits(&self, rho: f64, kappa: f64) -> bool {
        self.rho_min.is_some_and(|m| rho > m) && kappa > self.kappa_range.0 && kappa < self.kappa_range.1
    }
}

/// Constants of the `P2` estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P2Bounds {
    /// Bound `c` on `|f|`: user-asserted or the sampled maximum.
    pub c_bound: f64,
    /// `a/(2T)`.
    pub threshold: f64,
    /// `max |φ⁻¹(±2cT)|`; `None` when `2cT ≥ a`.
    pub l: Option<f64>,
    /// `L(2 + T)`.
    pub solution_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub bc: BoundaryCondition,
    pub a: f64,
    pub horizon: f64,
    pub verdicts: Vec<Verdict>,
    pub p1: Option<P1Bounds>,
    pub p2: Option<P2Bounds>,
}

impl HypothesisReport {
    pub fn all_passed(&self) -> bool {
        !self.verdicts.is_empty() && self.verdicts.iter().all(Verdict::passed)
    }

    pub fn sample_counts(&self) -> Vec<usize> {
        self.verdicts.iter().map(Verdict::samples).collect()
    }

    /// Radius for the solvers' search brackets: `r` for `P1`/`P1Tilde`,
    /// `L` for `P2`.
    pub fn search_radius(&self) -> Option<f64> {
        match self.bc {
            BoundaryCondition::P2 => self.p2.and_then(|b| b.l),
            _ => self.p1.and_then(|b| b.r),
        }
    }

    /// Bound on `‖u‖₁` for any solution.
    pub fn solution_bound(&self) -> Option<f64> {
        match self.bc {
            BoundaryCondition::P2 => self.p2.and_then(|b| b.solution_bound),
            _ => self.p1.and_then(|b| b.rho_min),
        }
    }
}

/// `max |φ⁻¹(±level)|`, defined for `level < a`.
fn symmetric_inverse(phi: &Homeomorphism, level: f64) -> Option<f64> {
    match (phi.inverse(level), phi.inverse(-level)) {
        (Ok(p), Ok(m)) => Some(p.abs().max(m.abs())),
        _ => None,
    }
}

/// Computes `L`, `‖c⁻‖`, `r`, `ρ_min`, the `κ` range, and checks the
/// envelope (sampled) and `L + 2‖c⁻‖ < a` (arithmetic).
pub fn compute_bounds_p1(
    spec: &ProblemSpec,
    m1: f64,
    m2: f64,
    c_lower: &LowerEnvelope,
    sampling: &SamplingBox,
) -> Result<HypothesisReport> {
    if !(m1 < m2) {
        return Err(BvpError::InvalidThresholds { m1, m2 });
    }
    let phi = spec.phi;
    let a = phi.a();
    let horizon = spec.horizon();
    let l = phi.forward(m2).abs().max(phi.forward(m1).abs());
    let c_samples = spec.grid.sample(|t| c_lower.eval(t));
    let c_minus_l1 = spec.grid.integrate(&negative_part(&c_samples));
    let level = l + 2.0 * c_minus_l1;
    let r = symmetric_inverse(&phi, level);

    let mut verdicts = Vec::new();

    let span = sampling.y_extent + m1.abs().max(m2.abs());
    let samples = sample_rhs(spec, sampling, -span, span, 0xC0C0);
    let violation = samples.iter().find(|((t, _, _), v)| !(v.is_finite() && *v >= c_lower.eval(*t)));
    verdicts.push(Verdict::sampled(
        "lower envelope f >= c(t)",
        violation.is_none(),
        samples.len(),
        match violation {
            None => String::new(),
            Some(((t, x, y), v)) => format!("counterexample f({t}, {x}, {y}) = {v} < c(t) = {}", c_lower.eval(*t)),
        },
    ));
    verdicts.push(Verdict::arithmetic(
        "L + 2|c-|_L1 < a",
        level < a,
        format!("{level} < {a}"),
    ));

    Ok(HypothesisReport {
        bc: spec.bc,
        a,
        horizon,
        verdicts,
        p1: Some(P1Bounds {
            m1,
            m2,
            l,
            c_minus_l1,
            r,
            rho_min: r.map(|r| r * (2.0 + horizon)),
            kappa_range: (level, a),
        }),
        p2: None,
    })
}

/// Checks `|f| ≤ c < a/(2T)`.
///
/// With an asserted `c_bound` the inequality is certified arithmetic and the
/// assertion itself is sampled; without one the sampled maximum of `|f|` is
/// used and the verdict is sampled-only.
pub fn check_bound_p2(spec: &ProblemSpec, c_bound: Option<f64>, sampling: &SamplingBox) -> HypothesisReport {
    let phi = spec.phi;
    let a = phi.a();
    let horizon = spec.horizon();
    let threshold = a / (2.0 * horizon);
    let half = sampling.y_extent;
    let samples = sample_rhs(spec, sampling, -half, half, 0xB2B2);
    let empirical = samples
        .iter()
        .map(|(_, v)| if v.is_finite() { v.abs() } else { f64::INFINITY })
        .fold(0.0, f64::max);

    let mut verdicts = Vec::new();
    let c = match c_bound {
        Some(c) => {
            verdicts.push(Verdict::sampled(
                format!("|f| <= c = {c}"),
                empirical <= c,
                samples.len(),
                format!("sampled max |f| = {empirical}"),
            ));
            verdicts.push(Verdict::arithmetic(
                "c < a/(2T)",
                c < threshold,
                format!("bound {c} < {threshold}"),
            ));
            c
        }
        None => {
            verdicts.push(Verdict::sampled(
                "max|f| < a/(2T)",
                empirical < threshold,
                samples.len(),
                format!("bound {empirical} < {threshold}"),
            ));
            empirical
        }
    };
    let l = symmetric_inverse(&phi, 2.0 * c * horizon);
    HypothesisReport {
        bc: spec.bc,
        a,
        horizon,
        verdicts,
        p1: None,
        p2: Some(P2Bounds {
            c_bound: c,
            threshold,
            l,
            solution_bound: l.map(|l| l * (2.0 + horizon)),
        }),
    }
}

/// Inputs for [`check_problem`].
#[derive(Debug, Clone, Default)]
pub struct HypothesisInputs {
    pub m1: Option<f64>,
    pub m2: Option<f64>,
    pub c_lower: Option<LowerEnvelope>,
    pub c_bound: Option<f64>,
    pub sampling: SamplingBox,
}

/// Runs every check that applies to `spec.bc`.
pub fn check_problem(spec: &ProblemSpec, inputs: &HypothesisInputs) -> Result<HypothesisReport> {
    match spec.bc {
        BoundaryCondition::P2 => Ok(check_bound_p2(spec, inputs.c_bound, &inputs.sampling)),
        BoundaryCondition::P1 | BoundaryCondition::P1Tilde => {
            let (Some(m1), Some(m2), Some(c_lower)) = (inputs.m1, inputs.m2, inputs.c_lower.as_ref()) else {
                return Ok(HypothesisReport {
                    bc: spec.bc,
                    a: spec.phi.a(),
                    horizon: spec.horizon(),
                    verdicts: vec![Verdict::insufficient(
                        "a priori bounds",
                        "M1, M2 and c_lower are required",
                    )],
                    p1: None,
                    p2: None,
                });
            };
            let sign = check_sign_condition(spec, m1, m2, &inputs.sampling)?;
            let mut report = compute_bounds_p1(spec, m1, m2, c_lower, &inputs.sampling)?;
            report.verdicts.insert(0, sign);
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::operators::RightHandSide;
    use std::f64::consts::E;

    fn small() -> SamplingBox {
        SamplingBox {
            samples: 5_000,
            ..SamplingBox::default()
        }
    }

    fn spec(t: f64, rhs: RightHandSide, bc: BoundaryCondition) -> ProblemSpec {
        ProblemSpec::new(Grid::new(t, 100).unwrap(), Homeomorphism::curvature(), rhs, bc)
    }

    fn example_38() -> ProblemSpec {
        spec(0.01, RightHandSide::new("exp(4v)-e", |_, _, y| (4.0 * y).exp() - E), BoundaryCondition::P1)
    }

    #[test]
    fn halton_points_in_unit_cube() {
        let h = Halton3::new(1);
        for i in 0..1000 {
            assert!(h.point(i).iter().all(|x| (0.0..1.0).contains(x)));
        }
        assert_eq!(Halton3::radical_inverse(1, 2), 0.5);
        assert_eq!(Halton3::radical_inverse(3, 2), 0.75);
    }

    #[test]
    fn sign_condition_examples() {
        let v = check_sign_condition(&example_38(), 0.0, 0.5, &small()).unwrap();
        assert_eq!(v.status(), Status::SampledOnly, "{v}");
        assert_eq!(v.samples(), 10_000);

        let zero = spec(1.0, RightHandSide::zero(), BoundaryCondition::P1);
        assert_eq!(check_sign_condition(&zero, 0.0, 0.5, &small()).unwrap().status(), Status::Failed);

        let lin = spec(1.0, RightHandSide::new("v", |_, _, y| y), BoundaryCondition::P1);
        assert!(check_sign_condition(&lin, -1.0, 1.0, &small()).unwrap().passed());
        // Reversed orientation also qualifies.
        let rev = spec(1.0, RightHandSide::new("-v", |_, _, y| -y), BoundaryCondition::P1);
        assert!(check_sign_condition(&rev, -1.0, 1.0, &small()).unwrap().passed());
        // Thresholds straddling the sign change do not.
        assert!(!check_sign_condition(&lin, -1.0, -0.5, &small()).unwrap().passed());

        assert_eq!(
            check_sign_condition(&lin, 1.0, 1.0, &small()).unwrap_err(),
            BvpError::InvalidThresholds { m1: 1.0, m2: 1.0 }
        );
    }

    #[test]
    fn counterexample_is_reported() {
        let bumpy = spec(1.0, RightHandSide::new("v + 3 sin u", |_, x, y| y + 3.0 * x.sin()), BoundaryCondition::P1);
        let v = check_sign_condition(&bumpy, -1.0, 1.0, &small()).unwrap();
        assert_eq!(v.status(), Status::Failed);
        assert!(v.detail().contains("counterexample"));
    }

    #[test]
    fn bounds_for_example_38() {
        let s = example_38();
        let report = compute_bounds_p1(&s, 0.0, 0.5, &LowerEnvelope::Constant(-3.0), &small()).unwrap();
        let b = report.p1.unwrap();
        assert!((b.l - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        assert!((b.c_minus_l1 - 0.03).abs() < 1e-14);
        let level = 1.0 / 5f64.sqrt() + 0.06;
        let r = level / (1.0 - level * level).sqrt();
        assert!((b.r.unwrap() - r).abs() < 1e-12);
        assert!((b.rho_min.unwrap() - r * 2.01).abs() < 1e-12);
        assert!((b.kappa_range.0 - level).abs() < 1e-12);
        assert!(b.kappa_range.0 < 0.9 && 0.9 < b.kappa_range.1);
        assert!(report.all_passed(), "{:?}", report.verdicts);
        // φ(r) recovers the level exactly (positive branch dominates).
        assert!((s.phi.forward(b.r.unwrap()) - level).abs() <= 1e-12);
        assert!(b.admits(1.19, 0.9));
        assert!(!b.admits(1.0, 0.9));
        assert!(!b.admits(1.19, 0.4));
    }

    #[test]
    fn bounds_with_zero_envelope_and_failures() {
        let lin = spec(1.0, RightHandSide::new("v", |_, _, y| y.clamp(-1.0, 1.0)), BoundaryCondition::P1);
        let report = compute_bounds_p1(&lin, -0.5, 0.5, &LowerEnvelope::Constant(0.0), &small()).unwrap();
        let b = report.p1.unwrap();
        assert_eq!(b.c_minus_l1, 0.0);
        assert_eq!(b.kappa_range.0, b.l);
        // The envelope c ≡ 0 is wrong for f = clamp(v): the sampled check catches it.
        assert_eq!(report.verdicts[0].status(), Status::Failed);

        // L + 2|c-| ≥ a.
        let report = compute_bounds_p1(&lin, -0.5, 0.5, &LowerEnvelope::Constant(-1.0), &small()).unwrap();
        assert_eq!(report.verdicts[1].status(), Status::Failed);
        assert!(report.p1.unwrap().r.is_none());
    }

    #[test]
    fn l_is_monotone_in_thresholds() {
        for phi in [Homeomorphism::curvature(), Homeomorphism::scaled_atan(2.0).unwrap()] {
            let mut last = 0.0;
            for k in 1..50 {
                let m = k as f64 * 0.2;
                let s = ProblemSpec::new(Grid::new(0.1, 10).unwrap(), phi, RightHandSide::new("v", |_, _, y| y), BoundaryCondition::P1);
                let b = compute_bounds_p1(&s, -m, 0.5 * m, &LowerEnvelope::Constant(0.0), &SamplingBox { samples: 10, ..small() })
                    .unwrap()
                    .p1
                    .unwrap();
                assert!(b.l >= last);
                last = b.l;
            }
        }
    }

    #[test]
    fn p2_bound_examples() {
        let ok = spec(1.0, RightHandSide::new("0.4 cos u", |_, x, _| 0.4 * x.cos()), BoundaryCondition::P2);
        let report = check_bound_p2(&ok, Some(0.4), &small());
        assert!(report.all_passed());
        assert_eq!(report.verdicts[1].status(), Status::Certified);
        assert_eq!(report.verdicts[1].detail(), "bound 0.4 < 0.5");
        let b = report.p2.unwrap();
        assert!((b.l.unwrap() - 4.0 / 3.0).abs() < 1e-12);
        assert!((b.solution_bound.unwrap() - 4.0).abs() < 1e-12);

        let sampled = check_bound_p2(&ok, None, &small());
        assert_eq!(sampled.verdicts[0].status(), Status::SampledOnly);
        assert!(sampled.p2.unwrap().c_bound <= 0.4);

        let bad = spec(1.0, RightHandSide::new("0.6 cos u", |_, x, _| 0.6 * x.cos()), BoundaryCondition::P2);
        assert!(!check_bound_p2(&bad, Some(0.6), &small()).all_passed());
        // An asserted bound that the samples contradict.
        assert_eq!(check_bound_p2(&bad, Some(0.4), &small()).verdicts[0].status(), Status::Failed);
    }

    #[test]
    fn p2_verdict_is_the_inequality() {
        let s = spec(2.0, RightHandSide::zero(), BoundaryCondition::P2);
        for &c in &[0.0, 0.1, 0.2499999, 0.25, 0.3] {
            let r = check_bound_p2(&s, Some(c), &SamplingBox { samples: 10, ..small() });
            assert_eq!(r.verdicts[1].passed(), c < 0.25);
        }
    }

    #[test]
    fn sampling_is_reproducible_and_mode_independent() {
        let s = example_38();
        let seq = SamplingBox { exec: Execution::Sequential, ..small() };
        let par = SamplingBox { exec: Execution::Parallel, ..small() };
        assert_eq!(
            check_sign_condition(&s, 0.0, 0.5, &seq).unwrap(),
            check_sign_condition(&s, 0.0, 0.5, &par).unwrap()
        );
    }

    #[test]
    fn missing_inputs_are_insufficient() {
        let report = check_problem(&example_38(), &HypothesisInputs::default()).unwrap();
        assert!(!report.all_passed());
        assert_eq!(report.verdicts[0].status(), Status::Insufficient);
    }
}
