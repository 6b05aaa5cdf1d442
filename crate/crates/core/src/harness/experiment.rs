//! End-to-end example runs: simulate the display path, calibrate a plotting
//! range from independent replicates, and attach the theoretical constants.

use super::config::{ExperimentConfig, Normalization};
use super::stats::lower_quantile;
use crate::cadlag::{plot_affine, StepPath};
use crate::coeffs::{build_truncated_process, coefficient_limits, ScalingMode, ScalingSpec};
use crate::error::{Error, Result};
use crate::innovations::{stable_sigma, InnovationModel};
use crate::limits::c_h;

/// Stream of the plotted realization; calibration uses streams `1..=M`.
pub const DISPLAY_STREAM: u64 = 0;

#[derive(Debug, Clone, PartialEq)]
pub struct Constants {
    pub alpha: f64,
    pub gamma: Option<f64>,
    pub hurst: f64,
    pub mode: ScalingMode,
    pub a_n: f64,
    pub d_n: f64,
    /// Stable scale of `Z(1)`; absent in the Gaussian case.
    pub sigma: Option<f64>,
    pub a: f64,
    /// Limits for the positive and negative parts of the coefficients.
    pub a_pos: f64,
    pub a_neg: f64,
    pub b: f64,
    /// `A = sum_j c_j` when the series converges.
    pub total: Option<f64>,
    /// FBM constant and the resulting scale `a / C_H`, Gaussian fractional case only.
    pub c_h: Option<f64>,
    pub fbm_scale: Option<f64>,
}

pub fn example_constants(config: &ExperimentConfig) -> Result<Constants> {
    config.validate()?;
    let model = InnovationModel::new(config.alpha)?;
    let spec = ScalingSpec::for_scheme(config.alpha, &config.scheme)?;
    let lim = coefficient_limits(&config.scheme, &spec, 0)?;
    let (c_h, fbm_scale) = if config.alpha == 2.0 && spec.mode == ScalingMode::Lfsm {
        let c = c_h(spec.hurst)?;
        (Some(c), Some(lim.a / c))
    } else {
        (None, None)
    };
    Ok(Constants {
        alpha: config.alpha,
        gamma: spec.gamma,
        hurst: spec.hurst,
        mode: spec.mode,
        a_n: model.norm_constant_a(config.n as u64)?,
        d_n: spec.d_n(config.n as u64),
        sigma: if config.alpha < 2.0 {
            Some(stable_sigma(config.alpha, 1.0)?)
        } else {
            None
        },
        a: lim.a,
        a_pos: lim.a_pos,
        a_neg: lim.a_neg,
        b: lim.b,
        total: lim.total,
        c_h,
        fbm_scale,
    })
}

/// `a_n` or `d_n a_n` per the configured normalization.
pub fn normalizer(config: &ExperimentConfig) -> Result<f64> {
    let a_n = InnovationModel::new(config.alpha)?.norm_constant_a(config.n as u64)?;
    Ok(match config.normalization {
        Normalization::AnOnly => a_n,
        Normalization::DnAn => {
            a_n * ScalingSpec::for_scheme(config.alpha, &config.scheme)?.d_n(config.n as u64)
        }
    })
}

/// Normalized partial-sum path `k/n -> S_k^N / normalizer` of one stream.
pub fn simulate_path(config: &ExperimentConfig, stream: u64) -> Result<StepPath> {
    let model = InnovationModel::new(config.alpha)?;
    let p = build_truncated_process(
        &config.scheme,
        &model,
        config.n,
        config.trunc,
        config.seed,
        stream,
    )?;
    p.partial_sum_path(normalizer(config)?)
}

/// `(min_k, max_k)` of the normalized partial sums over `k = 1..=n`.
fn extremes(path: &StepPath) -> (f64, f64) {
    path.values()[1..]
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Plotting range from `M` replicates: the `q_lo` quantile of the
/// per-replicate minima and the `q_hi` quantile of the maxima.
pub fn calibrate_range(config: &ExperimentConfig) -> Result<(f64, f64)> {
    config.validate()?;
    let stats = (1..=config.replicates as u64)
        .map(|s| simulate_path(config, s).map(|p| extremes(&p)))
        .collect::<Result<Vec<_>>>()?;
    let mins: Vec<f64> = stats.iter().map(|s| s.0).collect();
    let maxs: Vec<f64> = stats.iter().map(|s| s.1).collect();
    let lo = lower_quantile(&mins, config.q_lo);
    let hi = lower_quantile(&maxs, config.q_hi);
    if !(lo < hi) {
        return Err(Error::DegenerateRange { lo, hi });
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone)]
pub struct ExampleRun {
    pub config: ExperimentConfig,
    pub path: StepPath,
    pub range: (f64, f64),
    pub scaled: StepPath,
    pub constants: Constants,
}

pub fn run_example(config: &ExperimentConfig) -> Result<ExampleRun> {
    let constants = example_constants(config)?;
    let path = simulate_path(config, DISPLAY_STREAM)?;
    let range = calibrate_range(config)?;
    let scaled = plot_affine(&path, range.0, range.1)?;
    Ok(ExampleRun {
        config: config.clone(),
        path,
        range,
        scaled,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::super::config::Preset;
    use super::*;
    use crate::coeffs::CoefficientScheme;

    #[test]
    fn preset_constants() {
        let c = example_constants(&Preset::OneSidedLfsm.config(None, 1).unwrap()).unwrap();
        assert!((c.hurst - 11.0 / 12.0).abs() < 1e-15);
        assert!((c.a - 4.0).abs() < 1e-12);
        assert_eq!(c.a_n, 100.0);

        let c = example_constants(&Preset::OneSidedLevy.config(None, 1).unwrap()).unwrap();
        assert!((c.a - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-12);

        let c = example_constants(&Preset::AlternatingSum.config(None, 1).unwrap()).unwrap();
        assert!((c.total.unwrap() + 7.0 * std::f64::consts::PI.powi(4) / 720.0).abs() < 1e-12);

        let c = example_constants(&Preset::Alternating.config(Some(2.0), 1).unwrap()).unwrap();
        assert!((c.a - 4.0).abs() < 1e-12);
        assert!((c.fbm_scale.unwrap() - 4.28).abs() < 0.02);
        assert!(c.sigma.is_none());
    }

    #[test]
    fn single_replicate_range_is_its_extremes() {
        let mut cfg = Preset::Alternating.config(None, 3).unwrap();
        cfg.replicates = 1;
        cfg.n = 200;
        let (lo, hi) = calibrate_range(&cfg).unwrap();
        let p = simulate_path(&cfg, 1).unwrap();
        assert_eq!((lo, hi), extremes(&p));
    }

    #[test]
    fn zero_scheme_range_is_degenerate() {
        let cfg = ExperimentConfig {
            scheme: CoefficientScheme::zero(),
            n: 50,
            replicates: 5,
            ..Default::default()
        };
        assert!(matches!(
            calibrate_range(&cfg),
            Err(Error::DegenerateRange { .. })
        ));
    }

    #[test]
    fn run_is_deterministic() {
        let mut cfg = Preset::Alternating.config(None, 42).unwrap();
        cfg.n = 300;
        cfg.replicates = 10;
        let a = run_example(&cfg).unwrap();
        let b = run_example(&cfg).unwrap();
        assert_eq!(a.path, b.path);
        assert_eq!(a.range, b.range);
        assert_eq!(a.scaled, b.scaled);
    }
}
