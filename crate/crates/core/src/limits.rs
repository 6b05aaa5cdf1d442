//! Discretized limit processes: stable Levy motion as normalized partial
//! sums of fresh innovations, and linear fractional stable motion (FBM when
//! `alpha = 2`) as a Riemann sum of its moving-average kernel against the
//! same innovations.

use crate::cadlag::StepPath;
use crate::coeffs::partial_sum_path;
use crate::error::{domain, Result};
use crate::innovations::{stable_sigma, InnovationModel};
use crate::quad::{integrate, integrate_to_infinity};
use crate::rng::StreamKey;

/// Default lower cut of the kernel support, in units of the time horizon.
pub const DEFAULT_T_CUT: f64 = 50.0;

/// Hurst exponents this close to `1/alpha` are snapped onto it.
const DEGENERATE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSpec {
    pub alpha: f64,
    pub hurst: f64,
    pub a: f64,
    pub b: f64,
    /// Scale of the driving stable motion; 1 for the Gaussian case.
    pub sigma: f64,
}

impl LimitSpec {
    /// Accepts `H = 1/alpha` (the kernel degenerates to an indicator) or
    /// `1/alpha < H < 1`.
    pub fn new(alpha: f64, hurst: f64, a: f64, b: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return domain(format!("stability index must lie in (0, 2], got {alpha}"));
        }
        if !(a.is_finite() && b.is_finite()) || a.abs() + b.abs() == 0.0 {
            return domain("kernel weights need |a| + |b| > 0");
        }
        let inv = 1.0 / alpha;
        let hurst = if (hurst - inv).abs() <= DEGENERATE_EPS {
            inv
        } else {
            hurst
        };
        if hurst != inv && !(hurst > inv && hurst < 1.0) {
            return domain(format!(
                "need H = 1/alpha or 1/alpha < H < 1, got H = {hurst}, alpha = {alpha}"
            ));
        }
        let sigma = if alpha < 2.0 {
            stable_sigma(alpha, 1.0)?
        } else {
            1.0
        };
        Ok(Self {
            alpha,
            hurst,
            a,
            b,
            sigma,
        })
    }

    pub fn levy(alpha: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(alpha, 1.0 / alpha, a, b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.hurst == 1.0 / self.alpha
    }

    fn exponent(&self) -> f64 {
        self.hurst - 1.0 / self.alpha
    }
}

#[inline]
fn pos_pow(x: f64, e: f64) -> f64 {
    if x > 0.0 {
        x.powf(e)
    } else {
        0.0
    }
}

/// `f(t, u) = a{(t-u)_+^e - (-u)_+^e} + b{(u-t)_+^e - u_+^e}` with
/// `e = H - 1/alpha`, or `(a - b) 1_(0,t](u)` when `e = 0`.
pub fn lfsm_kernel(spec: &LimitSpec, t: f64, u: f64) -> f64 {
    if spec.is_degenerate() {
        return if u > 0.0 && u <= t {
            spec.a - spec.b
        } else {
            0.0
        };
    }
    let e = spec.exponent();
    spec.a * (pos_pow(t - u, e) - pos_pow(-u, e)) + spec.b * (pos_pow(u - t, e) - pos_pow(u, e))
}

/// Normalizing constant of the moving-average representation of FBM.
pub fn c_h(hurst: f64) -> Result<f64> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return domain(format!("Hurst index must lie in (0, 1), got {hurst}"));
    }
    let e = hurst - 0.5;
    if e == 0.0 {
        return Ok(1.0);
    }
    let g = |u: f64| {
        let d = (1.0 + u).powf(e) - u.powf(e);
        d * d
    };
    let head = integrate(g, 0.0, 1.0, 1e-14, 1e-10, 4000)?;
    let tail = integrate_to_infinity(g, 1.0, 1e-14, 1e-10, 4000)?;
    Ok((head.value + tail.value + 0.5 / hurst).sqrt())
}

/// `Z_n(t) = a_n^-1 sum_{i <= floor(n t)} xi_i` on the grid `k/n`, from
/// innovations `xi_1..xi_n` of the stream.
pub fn levy_path(model: &InnovationModel, n: usize, seed: u64, stream: u64) -> Result<StepPath> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let a_n = model.norm_constant_a(n as u64)?;
    let xi = model.sample_range(StreamKey::new(seed, stream), 1, n);
    partial_sum_path(&xi, a_n)
}

fn cut_index(n: usize, t_cut: f64) -> Result<usize> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    if !(t_cut > 0.0 && t_cut.is_finite()) {
        return domain(format!("kernel cut must be positive, got {t_cut}"));
    }
    Ok((t_cut * n as f64).floor() as usize)
}

/// `a_n^-1 sum_{j=-floor(T n)}^{n} f(k/n, j/n) xi_j` at `k = 0..=n`.
///
/// The `a` and `b` halves are accumulated separately and combined last, so
/// the result is linear in `(a, b)` up to one rounding per grid point.
pub fn lfsm_path(
    spec: &LimitSpec,
    model: &InnovationModel,
    n: usize,
    t_cut: f64,
    seed: u64,
    stream: u64,
) -> Result<StepPath> {
    let cut = cut_index(n, t_cut)?;
    let a_n = model.norm_constant_a(n as u64)?;
    if spec.is_degenerate() {
        let xi = model.sample_range(StreamKey::new(seed, stream), 1, n);
        let s = partial_sum_path(&xi, 1.0)?;
        return s.map_values(|v| (spec.a - spec.b) * v / a_n);
    }
    let first = -(cut as i64);
    let xi = model.sample_range(StreamKey::new(seed, stream), first, cut + n + 1);
    let e = spec.exponent();
    let nf = n as f64;
    // g[m] = (m/n)^e for m = 0..=cut+n, with g[0] = 0
    let g: Vec<f64> = (0..=cut + n).map(|m| pos_pow(m as f64 / nf, e)).collect();
    let at = |j: i64| xi[(j - first) as usize];

    // sum_{j<0} g(-j) xi_j and sum_{j>0} g(j) xi_j
    let left0: f64 = (first..0).map(|j| g[(-j) as usize] * at(j)).sum();
    let right0: f64 = (1..=n as i64).map(|j| g[j as usize] * at(j)).sum();

    let mut values = Vec::with_capacity(n + 1);
    for k in 0..=n as i64 {
        let mut pa = 0.0;
        if spec.a != 0.0 {
            for j in first..k {
                pa = g[(k - j) as usize].mul_add(at(j), pa);
            }
            pa -= left0;
        }
        let mut pb = 0.0;
        if spec.b != 0.0 {
            for j in k + 1..=n as i64 {
                pb = g[(j - k) as usize].mul_add(at(j), pb);
            }
            pb -= right0;
        }
        values.push(if k == 0 {
            0.0
        } else {
            (spec.a * pa + spec.b * pb) / a_n
        });
    }
    StepPath::on_uniform_grid(values)
}

/// Kernel weights `f(t, j/n)` for `j = -floor(T n)..=n`, reused across
/// replicates when only a few times are needed.
#[derive(Debug, Clone)]
pub struct LfsmProbe {
    n: usize,
    cut: usize,
    a_n: f64,
    times: Vec<f64>,
    weights: Vec<Vec<f64>>,
}

impl LfsmProbe {
    pub fn new(
        spec: &LimitSpec,
        model: &InnovationModel,
        n: usize,
        t_cut: f64,
        times: &[f64],
    ) -> Result<Self> {
        let cut = cut_index(n, t_cut)?;
        if let Some(t) = times.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return domain(format!("probe time {t} outside [0, 1]"));
        }
        let a_n = model.norm_constant_a(n as u64)?;
        let nf = n as f64;
        let weights = times
            .iter()
            .map(|&t| {
                // snap to the grid so the probe agrees with lfsm_path at k/n
                let t = (t * nf).floor() / nf;
                (-(cut as i64)..=n as i64)
                    .map(|j| lfsm_kernel(spec, t, j as f64 / nf))
                    .collect()
            })
            .collect();
        Ok(Self {
            n,
            cut,
            a_n,
            times: times.to_vec(),
            weights,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `sum_j f(t, j/n)^2 / a_n^2` per probe time.
    pub fn squared_weight_sums(&self) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| w.iter().map(|x| x * x).sum::<f64>() / (self.a_n * self.a_n))
            .collect()
    }

    pub fn sample(&self, model: &InnovationModel, seed: u64, stream: u64) -> Vec<f64> {
        let xi = model.sample_range(
            StreamKey::new(seed, stream),
            -(self.cut as i64),
            self.cut + self.n + 1,
        );
        self.weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&xi)
                    .fold(0.0, |acc, (f, x)| f.mul_add(*x, acc))
                    / self.a_n
            })
            .collect()
    }
}

/// `int |f(t, u)|^alpha du` over the whole line and over the part cut off
/// below `-T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMass {
    pub total: f64,
    pub discarded: f64,
}

impl KernelMass {
    pub fn discarded_fraction(&self) -> f64 {
        if self.total > 0.0 {
            self.discarded / self.total
        } else {
            0.0
        }
    }
}

pub fn kernel_mass(spec: &LimitSpec, t: f64, t_cut: f64) -> Result<KernelMass> {
    if !(t > 0.0 && t <= 1.0) {
        return domain(format!("kernel mass needs t in (0, 1], got {t}"));
    }
    if !(t_cut > 0.0) {
        return domain(format!("kernel cut must be positive, got {t_cut}"));
    }
    if spec.is_degenerate() {
        return Ok(KernelMass {
            total: (spec.a - spec.b).abs().powf(spec.alpha) * t,
            discarded: 0.0,
        });
    }
    let p = |u: f64| lfsm_kernel(spec, t, u).abs().powf(spec.alpha);
    let (atol, rtol, cap) = (1e-13, 1e-9, 4000);
    let below_cut = integrate_to_infinity(|v| p(-v), t_cut, atol, rtol, cap)?.value;
    let kept = integrate(p, -t_cut, 0.0, atol, rtol, cap)?.value
        + integrate(p, 0.0, t, atol, rtol, cap)?.value;
    let above = integrate_to_infinity(p, t, atol, rtol, cap)?.value;
    Ok(KernelMass {
        total: below_cut + kept + above,
        discarded: below_cut,
    })
}
