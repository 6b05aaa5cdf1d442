//! Step-function representation of cadlag paths on `[0, 1]`.

mod analysis;
mod csv;

pub use analysis::{
    compactness_report, count_oscillations, count_upcrossings, h_dist, lemma_a1_gap,
    lemma_a2_bound, oscillation, CompactnessReport, LemmaA2Record,
};
pub use csv::{parse_csv, to_csv};

use std::ops::Range;

use crate::error::{domain, Error, Result};

/// Right-continuous step function: `values[k]` holds on
/// `[breakpoints[k], breakpoints[k+1])` and the last value holds through 1.
#[derive(Debug, Clone, PartialEq)]
pub struct StepPath {
    times: Vec<f64>,
    values: Vec<f64>,
}

impl StepPath {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.is_empty() || times.len() != values.len() {
            return domain(format!(
                "need matching non-empty breakpoints and values, got {} and {}",
                times.len(),
                values.len()
            ));
        }
        if times[0] != 0.0 {
            return domain(format!("first breakpoint must be 0, got {}", times[0]));
        }
        if let Some(w) = times.windows(2).find(|w| !(w[0] < w[1])) {
            return domain(format!(
                "breakpoints must strictly increase ({} then {})",
                w[0], w[1]
            ));
        }
        if *times.last().unwrap() > 1.0 {
            return domain("breakpoints must lie in [0, 1]");
        }
        if values.iter().any(|v| !v.is_finite()) {
            return domain("path values must be finite");
        }
        Ok(Self { times, values })
    }

    /// Values at `k / n` for `k = 0..=n` where `n = values.len() - 1`.
    pub fn on_uniform_grid(values: Vec<f64>) -> Result<Self> {
        let n = values.len().saturating_sub(1).max(1) as f64;
        let times = (0..values.len()).map(|k| k as f64 / n).collect();
        Self::new(times, values)
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![0.0], vec![c])
    }

    pub fn zero() -> Self {
        Self {
            times: vec![0.0],
            values: vec![0.0],
        }
    }

    /// The pulse `1` on `[1/2 - 1/n, 1/2 + 1/n)`, `0` elsewhere (`n >= 3`).
    pub fn pulse(n: u32) -> Result<Self> {
        if n < 3 {
            return domain("pulse width needs n >= 3");
        }
        let w = 1.0 / f64::from(n);
        Self::new(vec![0.0, 0.5 - w, 0.5 + w], vec![0.0, 1.0, 0.0])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn piece_at(&self, t: f64) -> usize {
        self.times.partition_point(|&b| b <= t) - 1
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return domain(format!("evaluation time {t} outside [0, 1]"));
        }
        Ok(self.values[self.piece_at(t)])
    }

    /// Indices of pieces that intersect `[s, t]`, in time order.
    pub(crate) fn pieces_in(&self, s: f64, t: f64) -> Range<usize> {
        self.piece_at(s)..self.piece_at(t) + 1
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.times.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }
}

/// Pointwise sum on the merged breakpoint grid.
pub fn sum_paths(x: &StepPath, y: &StepPath) -> StepPath {
    let mut times: Vec<f64> = x.times.iter().chain(y.times.iter()).copied().collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let values = times
        .iter()
        .map(|&t| x.values[x.piece_at(t)] + y.values[y.piece_at(t)])
        .collect();
    StepPath { times, values }
}

/// `(x - a) / (b - a)` with breakpoints unchanged.
pub fn plot_affine(x: &StepPath, a: f64, b: f64) -> Result<StepPath> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::DegenerateRange { lo: a, hi: b });
    }
    x.map_values(|v| (v - a) / (b - a))
}

/// Shift-and-scale onto `[0, 1]` by the path's own extremes.
pub fn plot_auto(x: &StepPath) -> Result<StepPath> {
    let lo = x.values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = x.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(lo < hi) {
        return Err(Error::DegenerateRange { lo, hi });
    }
    x.map_values(|v| (v - lo) / (hi - lo))
}
