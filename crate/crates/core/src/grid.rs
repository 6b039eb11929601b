//! Uniform grids on `[0, T]` and sampled C¹ functions.
//!
//! Two quadratures live here. [`Grid::integrate`] is the plain definite
//! integral (composite Simpson for even `n`, trapezoid otherwise). The
//! cumulative rule [`Grid::cumulative`] integrates interval by interval with
//! cubic (four-point) interpolation, so `∫₀^{t_i}` is available at every node
//! with fourth-order accuracy and the running sums are exactly additive.

use crate::error::{BvpError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    horizon: f64,
    intervals: usize,
}

impl Grid {
    pub fn new(horizon: f64, intervals: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(BvpError::InvalidInput(format!(
                "horizon T must be positive and finite, got {horizon}"
            )));
        }
        if intervals < 2 {
            return Err(BvpError::InvalidInput(format!(
                "grid needs at least 2 intervals, got {intervals}"
            )));
        }
        Ok(Self { horizon, intervals })
    }

    /// `T`.
    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// `n`, the number of intervals.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Number of nodes, `n + 1`.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.intervals as f64
    }

    /// `t_i = (i/n)·T`; the last node is exactly `T`.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 / self.intervals as f64) * self.horizon
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }

    /// Samples `u` at every node.
    pub fn sample(&self, u: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes().map(u).collect()
    }

    /// Definite integral over `[0, T]` of node samples: composite Simpson
    /// when `n` is even, composite trapezoid otherwise.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let n = self.intervals;
        let h = self.step();
        if n % 2 == 0 {
            let mut odd = 0.0;
            let mut even = 0.0;
            for (i, v) in values.iter().enumerate().take(n).skip(1) {
                if i % 2 == 1 {
                    odd += v;
                } else {
                    even += v;
                }
            }
            h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[n])
        } else {
            let inner: f64 = values[1..n].iter().sum();
            h * (0.5 * (values[0] + values[n]) + inner)
        }
    }

    /// Integral of the sampled function over `[t_i, t_{i+1}]`.
    ///
    /// Interior intervals use the centred cubic through `i−1..=i+2`; the two
    /// end intervals use the one-sided cubic through the first (last) four
    /// nodes. With `n = 2` the quadratic through all three nodes is used.
    fn interval(&self, values: &[f64], i: usize) -> f64 {
        let n = self.intervals;
        let h = self.step();
        if n == 2 {
            return if i == 0 {
                h / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2])
            } else {
                h / 12.0 * (-values[0] + 8.0 * values[1] + 5.0 * values[2])
            };
        }
        let v = values;
        if i == 0 {
            h / 24.0 * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3])
        } else if i == n - 1 {
            h / 24.0 * (v[n - 3] - 5.0 * v[n - 2] + 19.0 * v[n - 1] + 9.0 * v[n])
        } else {
            h / 24.0 * (-v[i - 1] + 13.0 * v[i] + 13.0 * v[i + 1] - v[i + 2])
        }
    }

    /// Running integral `∫₀^{t_i}` at every node; entry 0 is exactly zero.
    pub fn cumulative(&self, values: &[f64]) -> Vec<f64> {
        debug_assert_eq!(values.len(), self.len());
        let mut out = Vec::with_capacity(self.len());
        let mut acc = 0.0;
        out.push(acc);
        for i in 0..self.intervals {
            acc += self.interval(values, i);
            out.push(acc);
        }
        out
    }

    /// Last entry of [`Grid::cumulative`], bit-for-bit.
    pub fn cumulative_total(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.len());
        let mut acc = 0.0;
        for i in 0..self.intervals {
            acc += self.interval(values, i);
        }
        acc
    }
}

/// A C¹ function on a [`Grid`], stored as value and derivative samples.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<f64>, derivs: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() || derivs.len() != grid.len() {
            return Err(BvpError::InvalidInput(format!(
                "expected {} samples, got {} values and {} derivatives",
                grid.len(),
                values.len(),
                derivs.len()
            )));
        }
        if let Some(i) = values
            .iter()
            .chain(derivs.iter())
            .position(|v| !v.is_finite())
        {
            return Err(BvpError::InvalidInput(format!(
                "non-finite sample at position {i}"
            )));
        }
        Ok(Self {
            grid,
            values,
            derivs,
        })
    }

    pub fn from_fn(grid: Grid, u: impl Fn(f64) -> f64, du: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.sample(u), grid.sample(du))
    }

    pub fn zero(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            derivs: vec![0.0; grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivs(&self) -> &[f64] {
        &self.derivs
    }

    pub fn into_parts(self) -> (Grid, Vec<f64>, Vec<f64>) {
        (self.grid, self.values, self.derivs)
    }

    pub fn norm_sup(&self) -> f64 {
        sup_norm(&self.values)
    }

    /// `‖u‖₁ = ‖u‖∞ + ‖u'‖∞`.
    pub fn norm_c1(&self) -> f64 {
        sup_norm(&self.values) + sup_norm(&self.derivs)
    }

    pub fn norm_l1(&self) -> f64 {
        let abs: Vec<f64> = self.values.iter().map(|v| v.abs()).collect();
        self.grid.integrate(&abs)
    }

    /// `(u_m, u_M)` over the nodes.
    pub fn min_max(&self) -> (f64, f64) {
        min_max(&self.values)
    }

    /// `(u⁺, u⁻)` of the values.
    pub fn pos_neg_parts(&self) -> (Vec<f64>, Vec<f64>) {
        (positive_part(&self.values), negative_part(&self.values))
    }

    /// `‖u − v‖₁` on a shared grid.
    pub fn c1_distance(&self, other: &GridFunction) -> f64 {
        sup_distance(&self.values, &other.values) + sup_distance(&self.derivs, &other.derivs)
    }
}

pub fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// `u⁺ = max(u, 0)`, pointwise.
pub fn positive_part(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| if x > 0.0 { x } else { 0.0 }).collect()
}

/// `u⁻ = max(−u, 0)`, pointwise.
pub fn negative_part(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| if x < 0.0 { -x } else { 0.0 }).collect()
}
