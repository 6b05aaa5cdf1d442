//! Symmetric Pareto innovations and the normalizing constants tied to them.
//!
//! `|xi|` is Pareto with index `alpha` on `[1, inf)` and the sign is a fair
//! coin, so `P(|xi| > x) = x^-alpha` for `x >= 1` and the tails are balanced
//! (skewness zero). Sampling is inverse-transform from counter-addressed
//! uniforms, see [`crate::rng`].

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{domain, Result};
use crate::rng::StreamKey;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnovationModel {
    alpha: f64,
}

impl InnovationModel {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return domain(format!("stability index must lie in (0, 2], got {alpha}"));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Generalized inverse of the c.d.f. The closed branch `u <= 1/2` maps to
    /// the negative half, so `u = 0.5` gives `-1`.
    pub fn inv_cdf(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return domain(format!("inv_cdf argument must lie in (0, 1), got {u}"));
        }
        Ok(self.inv_cdf_unchecked(u))
    }

    #[inline]
    pub(crate) fn inv_cdf_unchecked(&self, u: f64) -> f64 {
        let e = -1.0 / self.alpha;
        if u <= 0.5 {
            -(2.0 * u).powf(e)
        } else {
            (2.0 * (1.0 - u)).powf(e)
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -1.0 {
            0.5 * (-x).powf(-self.alpha)
        } else if x < 1.0 {
            0.5
        } else {
            1.0 - 0.5 * x.powf(-self.alpha)
        }
    }

    /// Innovations `xi_first, ..., xi_{first+count-1}` of one stream.
    pub fn sample_range(&self, key: StreamKey, first: i64, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count);
        key.for_each_uniform(first, count, |u| out.push(self.inv_cdf_unchecked(u)));
        out
    }

    /// Normalizing sequence `a_n`: `n^{1/alpha}` below 2, and at `alpha = 2`
    /// the larger root of `x^2 = 2 n ln x` (which exists only for `n >= 3`).
    pub fn norm_constant_a(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return domain("n must be at least 1");
        }
        if self.alpha < 2.0 {
            let x = (n as f64).powf(1.0 / self.alpha);
            // powf can miss exact roots by an ulp, e.g. 1000^(2/3)
            let r = x.round();
            return Ok(if r.powf(self.alpha) == n as f64 { r } else { x });
        }
        if n < 3 {
            return domain(format!(
                "x^2 = 2n ln x has no root for n = {n}; need n >= 3"
            ));
        }
        Ok(larger_log_root(n as f64))
    }

    /// Parameters of `Z(1)` when `alpha < 2`, with tail constant `C = 1`.
    pub fn stable_params(&self) -> Result<StableParams> {
        Ok(StableParams {
            alpha: self.alpha,
            sigma: stable_sigma(self.alpha, 1.0)?,
            beta: 0.0,
            mu: 0.0,
        })
    }
}

/// Newton on `f(x) = x^2 - 2 n ln x`, started right of the larger root.
/// `f` is convex there, so the iterates decrease monotonically onto it.
fn larger_log_root(n: f64) -> f64 {
    let mut x = (2.0 * n * (2.0 * n).ln()).sqrt();
    for _ in 0..100 {
        let f = x * x - 2.0 * n * x.ln();
        if f.abs() <= 1e-12 * x * x {
            break;
        }
        let df = 2.0 * x - 2.0 * n / x;
        x -= f / df;
    }
    x
}

/// `sample_innovations` in stream order starting at index 0.
pub fn sample_innovations(
    model: &InnovationModel,
    count: usize,
    seed: u64,
    stream: u64,
) -> Vec<f64> {
    model.sample_range(StreamKey::new(seed, stream), 0, count)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    pub alpha: f64,
    pub sigma: f64,
    pub beta: f64,
    pub mu: f64,
}

/// Scale of the stable limit given the tail constant `C` of
/// `n P(|xi| > a_n) -> C`.
pub fn stable_sigma(alpha: f64, c: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return domain(format!("stable scale needs alpha in (0, 2), got {alpha}"));
    }
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("tail constant must be positive, got {c}"));
    }
    let sigma_pow = if alpha == 1.0 {
        c * PI / 2.0
    } else {
        c * gamma(2.0 - alpha) / (1.0 - alpha) * (PI * alpha / 2.0).cos()
    };
    Ok(sigma_pow.powf(1.0 / alpha))
}
