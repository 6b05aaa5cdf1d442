//! Coefficient families of the moving-average filter, their positive and
//! negative parts, the truncated linear process and its partial sums, and
//! the theoretical limits of normalized coefficient sums.

use crate::cadlag::StepPath;
use crate::error::{domain, Result};
use crate::exact::ExactSum;
use crate::innovations::InnovationModel;
use crate::rng::StreamKey;

#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientScheme {
    /// `c_j = j^-gamma` for `j >= 1`.
    OneSidedPower { gamma: f64 },
    /// `c_j = k1 j^-gamma` for even `j >= 1`, `-k2 j^-gamma` for odd `j >= 1`.
    AlternatingPower { k1: f64, k2: f64, gamma: f64 },
    /// `c_j = even j^-gamma` or `odd j^-gamma` by parity of `j >= 1`, signs
    /// included in the scales. Produced by decomposing `AlternatingPower`.
    ParityPower { even: f64, odd: f64, gamma: f64 },
    /// Explicit `(j, c_j)` pairs, zero elsewhere. Indices are unique and sorted.
    FiniteList(Vec<(i64, f64)>),
    /// `c_0 = 1`, `c_1 = -1`: the telescoping filter `X_i = xi_i - xi_{i-1}`.
    DifferencePair,
}

impl CoefficientScheme {
    pub fn one_sided(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(Self::OneSidedPower { gamma })
    }

    pub fn alternating(k1: f64, k2: f64, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !(k1 > 0.0 && k2 > 0.0 && k1.is_finite() && k2.is_finite()) {
            return domain(format!(
                "alternating scales must be positive, got k1={k1}, k2={k2}"
            ));
        }
        Ok(Self::AlternatingPower { k1, k2, gamma })
    }

    pub fn finite(mut entries: Vec<(i64, f64)>) -> Result<Self> {
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return domain("duplicate coefficient index");
        }
        if entries.iter().any(|e| !e.1.is_finite()) {
            return domain("coefficients must be finite");
        }
        Ok(Self::FiniteList(entries))
    }

    pub fn zero() -> Self {
        Self::FiniteList(Vec::new())
    }

    pub fn gamma(&self) -> Option<f64> {
        match *self {
            Self::OneSidedPower { gamma }
            | Self::AlternatingPower { gamma, .. }
            | Self::ParityPower { gamma, .. } => Some(gamma),
            Self::FiniteList(_) | Self::DifferencePair => None,
        }
    }

    pub fn coefficient(&self, j: i64) -> f64 {
        match self {
            Self::OneSidedPower { gamma } => {
                if j >= 1 {
                    (j as f64).powf(-gamma)
                } else {
                    0.0
                }
            }
            Self::AlternatingPower { k1, k2, gamma } => parity_value(j, *k1, -*k2, *gamma),
            Self::ParityPower { even, odd, gamma } => parity_value(j, *even, *odd, *gamma),
            Self::FiniteList(entries) => match entries.binary_search_by_key(&j, |e| e.0) {
                Ok(i) => entries[i].1,
                Err(_) => 0.0,
            },
            Self::DifferencePair => match j {
                0 => 1.0,
                1 => -1.0,
                _ => 0.0,
            },
        }
    }

    /// Canonical split `c = pos - neg` with `pos, neg >= 0` and disjoint support.
    pub fn decompose(&self) -> (Self, Self) {
        match self {
            Self::OneSidedPower { .. } => (self.clone(), Self::zero()),
            Self::AlternatingPower { k1, k2, gamma } => (
                Self::ParityPower {
                    even: *k1,
                    odd: 0.0,
                    gamma: *gamma,
                },
                Self::ParityPower {
                    even: 0.0,
                    odd: *k2,
                    gamma: *gamma,
                },
            ),
            Self::ParityPower { even, odd, gamma } => (
                Self::ParityPower {
                    even: even.max(0.0),
                    odd: odd.max(0.0),
                    gamma: *gamma,
                },
                Self::ParityPower {
                    even: (-even).max(0.0),
                    odd: (-odd).max(0.0),
                    gamma: *gamma,
                },
            ),
            Self::FiniteList(entries) => {
                let pos = entries.iter().filter(|e| e.1 > 0.0).copied().collect();
                let neg = entries
                    .iter()
                    .filter(|e| e.1 < 0.0)
                    .map(|&(j, c)| (j, -c))
                    .collect();
                (Self::FiniteList(pos), Self::FiniteList(neg))
            }
            Self::DifferencePair => (
                Self::FiniteList(vec![(0, 1.0)]),
                Self::FiniteList(vec![(1, 1.0)]),
            ),
        }
    }
}

fn parity_value(j: i64, even: f64, odd: f64, gamma: f64) -> f64 {
    if j < 1 {
        return 0.0;
    }
    let k = if j % 2 == 0 { even } else { odd };
    if k == 0.0 {
        0.0
    } else {
        k * (j as f64).powf(-gamma)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return domain(format!("decay exponent must be positive, got {gamma}"));
    }
    if gamma == 1.0 {
        return domain("gamma = 1 needs a logarithmic normalization and is not supported");
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMode {
    /// `H > 1/alpha`: fractional limit, `d_n = n^{H - 1/alpha}`.
    Lfsm,
    /// `H = 1/alpha`: Levy-motion limit, `d_n = 1`.
    Levy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingSpec {
    pub alpha: f64,
    pub gamma: Option<f64>,
    pub hurst: f64,
    pub mode: ScalingMode,
}

impl ScalingSpec {
    /// Power-law decay `j^-gamma`; requires `gamma > 1/alpha`.
    pub fn for_power(alpha: f64, gamma: f64) -> Result<Self> {
        InnovationModel::new(alpha)?;
        check_gamma(gamma)?;
        if gamma <= 1.0 / alpha {
            return domain(format!(
                "gamma = {gamma} must exceed 1/alpha = {} for the coefficients to be summable",
                1.0 / alpha
            ));
        }
        if gamma < 1.0 {
            Ok(Self {
                alpha,
                gamma: Some(gamma),
                hurst: 1.0 / alpha + 1.0 - gamma,
                mode: ScalingMode::Lfsm,
            })
        } else {
            Ok(Self {
                alpha,
                gamma: Some(gamma),
                hurst: 1.0 / alpha,
                mode: ScalingMode::Levy,
            })
        }
    }

    pub fn levy(alpha: f64) -> Result<Self> {
        InnovationModel::new(alpha)?;
        Ok(Self {
            alpha,
            gamma: None,
            hurst: 1.0 / alpha,
            mode: ScalingMode::Levy,
        })
    }

    pub fn for_scheme(alpha: f64, scheme: &CoefficientScheme) -> Result<Self> {
        match scheme.gamma() {
            Some(g) => Self::for_power(alpha, g),
            None => Self::levy(alpha),
        }
    }

    /// Secondary normalization `d_n = n^{H - 1/alpha}`.
    pub fn d_n(&self, n: u64) -> f64 {
        match self.mode {
            ScalingMode::Levy => 1.0,
            ScalingMode::Lfsm => (n as f64).powf(self.hurst - 1.0 / self.alpha),
        }
    }
}

/// Limits of `(1/d_n) sum_{j=0}^n c_j` (= a) and `(1/d_n) sum_{j=-n}^0 c_j` (= -b),
/// for the scheme and for its positive and negative parts.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientLimits {
    pub a: f64,
    pub b: f64,
    pub a_pos: f64,
    pub a_neg: f64,
    pub b_pos: f64,
    pub b_neg: f64,
    /// `A = sum_j c_j`, absent when the series diverges.
    pub total: Option<f64>,
    pub probe: Option<LimitProbe>,
}

/// Finite-`n` ratios for watching convergence to [`CoefficientLimits`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitProbe {
    pub n: u64,
    pub a_ratio: f64,
    pub a_pos_ratio: f64,
    pub a_neg_ratio: f64,
    pub b_ratio: f64,
    /// `sup_{1 <= j <= n} |c_j| j / d_j`; bounded iff `c_j = O(d_j / j)` holds empirically.
    pub decay_ratio: f64,
}

pub fn coefficient_limits(
    scheme: &CoefficientScheme,
    spec: &ScalingSpec,
    n_probe: u64,
) -> Result<CoefficientLimits> {
    if let Some(g) = scheme.gamma() {
        if g <= 1.0 / spec.alpha {
            return domain(format!(
                "gamma = {g} must exceed 1/alpha = {}",
                1.0 / spec.alpha
            ));
        }
        if spec.gamma.is_some_and(|sg| sg != g) {
            return domain("scaling spec was built for a different gamma");
        }
    }
    let mut lim = match (scheme, spec.mode) {
        (CoefficientScheme::OneSidedPower { gamma }, ScalingMode::Lfsm) => {
            let a = 1.0 / (1.0 - gamma);
            one_sided_limits(a, 0.0, None)
        }
        (CoefficientScheme::OneSidedPower { gamma }, ScalingMode::Levy) => {
            let z = zeta_series(*gamma, false)?;
            one_sided_limits(z, 0.0, Some(z))
        }
        (CoefficientScheme::AlternatingPower { k1, k2, gamma }, mode) => {
            parity_limits(*k1, -*k2, *gamma, mode)?
        }
        (CoefficientScheme::ParityPower { even, odd, gamma }, mode) => {
            parity_limits(*even, *odd, *gamma, mode)?
        }
        (
            CoefficientScheme::FiniteList(_) | CoefficientScheme::DifferencePair,
            ScalingMode::Levy,
        ) => finite_limits(scheme),
        (
            CoefficientScheme::FiniteList(_) | CoefficientScheme::DifferencePair,
            ScalingMode::Lfsm,
        ) => {
            return domain("finitely many coefficients always scale with H = 1/alpha");
        }
    };
    if n_probe > 0 {
        lim.probe = Some(probe(scheme, spec, n_probe));
    }
    Ok(lim)
}

fn one_sided_limits(a: f64, b: f64, total: Option<f64>) -> CoefficientLimits {
    CoefficientLimits {
        a,
        b,
        a_pos: a,
        a_neg: 0.0,
        b_pos: b,
        b_neg: 0.0,
        total,
        probe: None,
    }
}

fn parity_limits(even: f64, odd: f64, gamma: f64, mode: ScalingMode) -> Result<CoefficientLimits> {
    // sums over even and odd j of j^-gamma, per unit scale
    let (even_sum, odd_sum, total) = match mode {
        ScalingMode::Lfsm => {
            let half = 1.0 / (2.0 * (1.0 - gamma));
            (half, half, false)
        }
        ScalingMode::Levy => {
            let z = zeta_series(gamma, false)?;
            let e = 2f64.powf(-gamma) * z;
            (e, z - e, true)
        }
    };
    let part = |s: f64| s.max(0.0);
    let a_pos = part(even) * even_sum + part(odd) * odd_sum;
    let a_neg = part(-even) * even_sum + part(-odd) * odd_sum;
    let a = a_pos - a_neg;
    Ok(CoefficientLimits {
        a,
        b: 0.0,
        a_pos,
        a_neg,
        b_pos: 0.0,
        b_neg: 0.0,
        total: total.then_some(a),
        probe: None,
    })
}

fn finite_limits(scheme: &CoefficientScheme) -> CoefficientLimits {
    let entries: Vec<(i64, f64)> = match scheme {
        CoefficientScheme::FiniteList(e) => e.clone(),
        _ => vec![(0, 1.0), (1, -1.0)],
    };
    let sum = |pred: &dyn Fn(i64) -> bool, f: &dyn Fn(f64) -> f64| {
        let mut acc = ExactSum::new();
        for &(j, c) in &entries {
            if pred(j) {
                acc.add(f(c));
            }
        }
        acc.value()
    };
    let right = |j: i64| j >= 0;
    let left = |j: i64| j <= 0;
    let pos = |c: f64| c.max(0.0);
    let neg = |c: f64| (-c).max(0.0);
    let ident = |c: f64| c;
    let a_pos = sum(&right, &pos);
    let a_neg = sum(&right, &neg);
    let b_pos = -sum(&left, &pos);
    let b_neg = -sum(&left, &neg);
    CoefficientLimits {
        a: sum(&right, &ident),
        b: -sum(&left, &ident),
        a_pos,
        a_neg,
        b_pos,
        b_neg,
        total: Some(sum(&|_| true, &ident)),
        probe: None,
    }
}

fn probe(scheme: &CoefficientScheme, spec: &ScalingSpec, n: u64) -> LimitProbe {
    let (pos, neg) = scheme.decompose();
    let dn = spec.d_n(n);
    let ratio = |s: &CoefficientScheme, range: std::ops::RangeInclusive<i64>| {
        let mut acc = ExactSum::new();
        // small terms first
        for j in range.rev() {
            acc.add(s.coefficient(j));
        }
        acc.value() / dn
    };
    let n = n as i64;
    let mut decay: f64 = 0.0;
    for j in 1..=n {
        let c = scheme.coefficient(j).abs();
        if c > 0.0 {
            decay = decay.max(c * j as f64 / spec.d_n(j as u64));
        }
    }
    LimitProbe {
        n: n as u64,
        a_ratio: ratio(scheme, 0..=n),
        a_pos_ratio: ratio(&pos, 0..=n),
        a_neg_ratio: ratio(&neg, 0..=n),
        b_ratio: -ratio(scheme, -n..=0),
        decay_ratio: decay,
    }
}

/// `sum_{j>=1} j^-gamma`, or `sum_{j>=1} (-1)^j j^-gamma` when `signed`.
///
/// Direct summation of the first terms plus an Euler-Maclaurin tail; the
/// truncation error is below 1e-15 relative for every `gamma > 1`.
pub fn zeta_series(gamma: f64, signed: bool) -> Result<f64> {
    if !(gamma > 1.0) || !gamma.is_finite() {
        return domain(format!("series needs gamma > 1, got {gamma}"));
    }
    const J: u32 = 64;
    let mut acc = ExactSum::new();
    for j in (1..J).rev() {
        acc.add(f64::from(j).powf(-gamma));
    }
    let jf = f64::from(J);
    let g = gamma;
    let tail = jf.powf(1.0 - g) / (g - 1.0) + 0.5 * jf.powf(-g) + g * jf.powf(-g - 1.0) / 12.0
        - g * (g + 1.0) * (g + 2.0) * jf.powf(-g - 3.0) / 720.0
        + g * (g + 1.0) * (g + 2.0) * (g + 3.0) * (g + 4.0) * jf.powf(-g - 5.0) / 30240.0;
    acc.add(tail);
    let zeta = acc.value();
    if signed {
        // even terms minus odd terms = (2^{1-gamma} - 1) zeta
        Ok((2f64.powf(1.0 - gamma) - 1.0) * zeta)
    } else {
        Ok(zeta)
    }
}

/// Numerical check of `sum_j |c_j|^delta < inf` at the midpoint `delta` of
/// `(1/gamma, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SummabilityReport {
    pub delta: f64,
    pub partial_sum: f64,
    /// Integral bound on the remainder beyond the last summed index.
    pub tail_bound: f64,
}

pub fn summability(
    scheme: &CoefficientScheme,
    alpha: f64,
    terms: u64,
) -> Result<SummabilityReport> {
    let Some(gamma) = scheme.gamma() else {
        let delta = alpha / 2.0;
        let mut acc = ExactSum::new();
        if let CoefficientScheme::FiniteList(e) = scheme {
            for &(_, c) in e {
                acc.add(c.abs().powf(delta));
            }
        } else {
            acc.add(2.0);
        }
        return Ok(SummabilityReport {
            delta,
            partial_sum: acc.value(),
            tail_bound: 0.0,
        });
    };
    if gamma * alpha <= 1.0 {
        return domain(format!(
            "no delta in (1/gamma, alpha) for gamma = {gamma}, alpha = {alpha}"
        ));
    }
    let delta = 0.5 * (1.0 / gamma + alpha);
    let mut acc = ExactSum::new();
    let mut scale: f64 = 0.0;
    for j in (1..=terms as i64).rev() {
        let c = scheme.coefficient(j).abs();
        acc.add(c.powf(delta));
        scale = scale.max(c * (j as f64).powf(gamma));
    }
    let p = gamma * delta;
    let tail_bound = scale.powf(delta) * (terms as f64).powf(1.0 - p) / (p - 1.0);
    Ok(SummabilityReport {
        delta,
        partial_sum: acc.value(),
        tail_bound,
    })
}

/// The truncated process `X_i^N = sum_{|j| <= N} c_j xi_{i-j}` for
/// `i = 1..=n`, built from innovations `xi_k`, `k in [1-N, n+N]`, of one stream.
#[derive(Debug, Clone)]
pub struct TruncatedProcess {
    n: usize,
    trunc: usize,
    innovations: Vec<f64>,
    values: Vec<f64>,
    partial_sums: Vec<f64>,
}

impl TruncatedProcess {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `S_k = sum_{i<=k} X_i` for `k = 0..=n`, each the exact sum of the
    /// underlying `c_j xi_{i-j}` products rounded once.
    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    /// `xi_k` for `k in [1-N, n+N]`.
    pub fn innovation(&self, k: i64) -> Option<f64> {
        let idx = k + self.trunc as i64 - 1;
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.innovations.get(i).copied())
    }

    pub fn partial_sum_path(&self, normalizer: f64) -> Result<StepPath> {
        check_normalizer(normalizer)?;
        StepPath::on_uniform_grid(self.partial_sums.iter().map(|s| s / normalizer).collect())
    }
}

pub fn build_truncated_process(
    scheme: &CoefficientScheme,
    model: &InnovationModel,
    n: usize,
    trunc: usize,
    seed: u64,
    stream: u64,
) -> Result<TruncatedProcess> {
    if n == 0 {
        return domain("n must be at least 1");
    }
    let first = 1 - trunc as i64;
    let innovations = model.sample_range(StreamKey::new(seed, stream), first, n + 2 * trunc);
    let taps: Vec<(i64, f64)> = (-(trunc as i64)..=trunc as i64)
        .map(|j| (j, scheme.coefficient(j)))
        .filter(|&(_, c)| c != 0.0)
        .collect();
    let xi = |k: i64| innovations[(k - first) as usize];

    let mut values = Vec::with_capacity(n);
    let mut partial_sums = Vec::with_capacity(n + 1);
    partial_sums.push(0.0);
    let mut running = ExactSum::new();
    for i in 1..=n as i64 {
        let mut x = 0.0;
        for &(j, c) in &taps {
            let v = xi(i - j);
            x = c.mul_add(v, x);
            running.add_product(c, v);
        }
        values.push(x);
        partial_sums.push(running.value());
    }
    Ok(TruncatedProcess {
        n,
        trunc,
        innovations,
        values,
        partial_sums,
    })
}

/// Step path of `t -> sum_{i <= floor(n t)} X_i / normalizer` on the grid `k/n`.
pub fn partial_sum_path(x: &[f64], normalizer: f64) -> Result<StepPath> {
    check_normalizer(normalizer)?;
    if x.is_empty() {
        return domain("partial sums need at least one term");
    }
    let mut acc = ExactSum::new();
    let mut vals = Vec::with_capacity(x.len() + 1);
    vals.push(0.0);
    for &v in x {
        acc.add(v);
        vals.push(acc.value() / normalizer);
    }
    StepPath::on_uniform_grid(vals)
}

fn check_normalizer(normalizer: f64) -> Result<()> {
    if normalizer > 0.0 && normalizer.is_finite() {
        Ok(())
    } else {
        domain(format!("normalizer must be positive, got {normalizer}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn coefficient_examples() {
        let s = CoefficientScheme::one_sided(0.75).unwrap();
        assert_eq!(s.coefficient(16), 0.125);
        assert_eq!(s.coefficient(0), 0.0);
        assert_eq!(s.coefficient(-3), 0.0);
        let s = CoefficientScheme::alternating(3.0, 1.0, 1.5).unwrap();
        let s1 = CoefficientScheme::AlternatingPower {
            k1: 3.0,
            k2: 1.0,
            gamma: 1.0,
        };
        assert_eq!(s1.coefficient(2), 1.5);
        assert_eq!(s1.coefficient(3), -1.0 / 3.0);
        assert!(s.coefficient(1) < 0.0);
        let d = CoefficientScheme::DifferencePair;
        assert_eq!(
            (d.coefficient(0), d.coefficient(1), d.coefficient(5)),
            (1.0, -1.0, 0.0)
        );
        assert!(CoefficientScheme::one_sided(1.0).is_err());
        assert!(CoefficientScheme::alternating(0.0, 1.0, 0.8).is_err());
    }

    #[test]
    fn decompose_examples() {
        let s = CoefficientScheme::alternating(3.0, 1.0, 0.75).unwrap();
        let (p, q) = s.decompose();
        assert_eq!(p.coefficient(4), 3.0 * 4f64.powf(-0.75));
        assert_eq!(p.coefficient(3), 0.0);
        assert_eq!(q.coefficient(3), 3f64.powf(-0.75));
        assert_eq!(q.coefficient(4), 0.0);

        let s = CoefficientScheme::one_sided(2.0).unwrap();
        assert_eq!(s.decompose(), (s.clone(), CoefficientScheme::zero()));

        let (p, q) = CoefficientScheme::DifferencePair.decompose();
        assert_eq!(p, CoefficientScheme::FiniteList(vec![(0, 1.0)]));
        assert_eq!(q, CoefficientScheme::FiniteList(vec![(1, 1.0)]));
    }

    #[test]
    fn scaling_spec_modes() {
        let s = ScalingSpec::for_power(1.5, 0.75).unwrap();
        assert_eq!(s.mode, ScalingMode::Lfsm);
        assert!((s.hurst - 11.0 / 12.0).abs() < 1e-15);
        assert!((s.d_n(10_000) - 10.0).abs() < 1e-12);
        let s = ScalingSpec::for_power(1.5, 4.0).unwrap();
        assert_eq!(s.mode, ScalingMode::Levy);
        assert_eq!(s.d_n(12345), 1.0);
        assert!(ScalingSpec::for_power(1.5, 0.6).is_err());
        assert!(ScalingSpec::for_power(1.5, 2.0 / 3.0).is_err());
    }

    #[test]
    fn limits_one_sided_lfsm() {
        let s = CoefficientScheme::one_sided(0.75).unwrap();
        let spec = ScalingSpec::for_power(1.5, 0.75).unwrap();
        let l = coefficient_limits(&s, &spec, 0).unwrap();
        assert_eq!(l.a, 4.0);
        assert_eq!(l.b, 0.0);
        assert!(l.total.is_none());
        assert!(l.probe.is_none());
    }

    #[test]
    fn limits_alternating_lfsm() {
        let s = CoefficientScheme::alternating(3.0, 1.0, 0.75).unwrap();
        let spec = ScalingSpec::for_power(1.5, 0.75).unwrap();
        let l = coefficient_limits(&s, &spec, 0).unwrap();
        assert_eq!((l.a_pos, l.a_neg, l.a), (6.0, 2.0, 4.0));
    }

    #[test]
    fn limits_alternating_levy() {
        let s = CoefficientScheme::alternating(1.0, 1.0, 4.0).unwrap();
        let spec = ScalingSpec::for_power(1.5, 4.0).unwrap();
        let l = coefficient_limits(&s, &spec, 0).unwrap();
        let expect = -7.0 * PI.powi(4) / 720.0;
        assert!((l.a - expect).abs() < 1e-12);
        assert!((l.total.unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn limits_reject_slow_decay() {
        let s = CoefficientScheme::OneSidedPower { gamma: 0.6 };
        let spec = ScalingSpec::levy(1.5).unwrap();
        assert!(coefficient_limits(&s, &spec, 0).is_err());
    }

    #[test]
    fn limits_difference_pair() {
        let spec = ScalingSpec::levy(1.5).unwrap();
        let l = coefficient_limits(&CoefficientScheme::DifferencePair, &spec, 10).unwrap();
        assert_eq!(l.total, Some(0.0));
        assert_eq!(l.a, 0.0);
        assert_eq!(l.b, -1.0);
        let p = l.probe.unwrap();
        assert_eq!(p.a_ratio, 0.0);
        assert_eq!(p.b_ratio, -1.0);
    }

    #[test]
    fn probe_moves_toward_limit() {
        let s = CoefficientScheme::one_sided(0.75).unwrap();
        let spec = ScalingSpec::for_power(1.5, 0.75).unwrap();
        let l = coefficient_limits(&s, &spec, 10_000).unwrap();
        let p = l.probe.unwrap();
        assert!((p.a_ratio - 4.0).abs() / 4.0 < 0.1, "{}", p.a_ratio);
        assert_eq!(p.a_neg_ratio, 0.0);
        // c_j j / d_j = j^{-0.75} j / j^{0.25} = 1
        assert!((p.decay_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta_series(4.0, false).unwrap() - PI.powi(4) / 90.0).abs() < 1e-13);
        assert!((zeta_series(4.0, true).unwrap() + 7.0 * PI.powi(4) / 720.0).abs() < 1e-13);
        assert!((zeta_series(2.0, false).unwrap() - PI * PI / 6.0).abs() < 1e-13);
        assert!(zeta_series(1.0, false).is_err());
        assert!(zeta_series(0.5, true).is_err());
    }

    #[test]
    fn summability_gate() {
        let s = CoefficientScheme::one_sided(0.75).unwrap();
        let r1 = summability(&s, 1.5, 1_000).unwrap();
        let r2 = summability(&s, 1.5, 100_000).unwrap();
        assert!(r1.delta > 1.0 / 0.75 && r1.delta < 1.5);
        // partial sums increase but stay under the bracketed limit
        assert!(r2.partial_sum > r1.partial_sum);
        assert!(r2.partial_sum <= r1.partial_sum + r1.tail_bound + 1e-9);
        assert!(r2.tail_bound < r1.tail_bound);
        assert!(summability(&CoefficientScheme::OneSidedPower { gamma: 0.6 }, 1.5, 10).is_err());
    }

    #[test]
    fn identity_filter() {
        let m = InnovationModel::new(1.5).unwrap();
        let s = CoefficientScheme::finite(vec![(0, 1.0)]).unwrap();
        let p = build_truncated_process(&s, &m, 50, 0, 3, 1).unwrap();
        let xi = m.sample_range(StreamKey::new(3, 1), 1, 50);
        assert_eq!(p.values(), &xi[..]);
    }

    #[test]
    fn telescoping_is_exact() {
        let m = InnovationModel::new(1.2).unwrap();
        let p =
            build_truncated_process(&CoefficientScheme::DifferencePair, &m, 300, 5, 77, 2).unwrap();
        let xi0 = p.innovation(0).unwrap();
        for k in 1..=300 {
            assert_eq!(p.partial_sums()[k], p.innovation(k as i64).unwrap() - xi0);
        }
    }

    #[test]
    fn partial_sum_path_examples() {
        let p = partial_sum_path(&[1.0; 4], 1.0).unwrap();
        assert_eq!(p.breakpoints(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(p.values(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
        let z = partial_sum_path(&[0.0; 7], 2.0).unwrap();
        assert_eq!(z.sup_norm(), 0.0);
        assert!(partial_sum_path(&[1.0], 0.0).is_err());
        assert!(partial_sum_path(&[1.0], -1.0).is_err());
    }
}
