//! Self-checks runnable from the command line.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::Preset;
use super::experiment::example_constants;
use super::stats::{ks_statistic, standard_normal_cdf};
use crate::cadlag::{lemma_a1_gap, lemma_a2_bound, StepPath};
use crate::coeffs::{build_truncated_process, zeta_series, CoefficientScheme, ScalingSpec};
use crate::error::{Error, Result};
use crate::innovations::{stable_sigma, InnovationModel};
use crate::limits::{c_h, levy_path, lfsm_path, LimitSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Constants,
    Distributions,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Self::Lemmas),
            "constants" => Ok(Self::Constants),
            "distributions" => Ok(Self::Distributions),
            "all" => Ok(Self::All),
            _ => Err(Error::Domain(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: String,
    pub expected: String,
    pub tolerance: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: observed {}, expected {}, tolerance {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            self.expected,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    fn close(&mut self, name: &str, observed: f64, expected: f64, tol: f64) {
        self.checks.push(Check {
            name: name.into(),
            observed: format!("{observed:.12}"),
            expected: format!("{expected:.12}"),
            tolerance: format!("{tol:e}"),
            passed: (observed - expected).abs() <= tol,
        });
    }

    fn at_most(&mut self, name: &str, observed: f64, bound: f64) {
        self.checks.push(Check {
            name: name.into(),
            observed: format!("{observed}"),
            expected: if bound != 0.0 && bound.abs() < 1e-3 {
                format!("<= {bound:e}")
            } else {
                format!("<= {bound}")
            },
            tolerance: "0".into(),
            passed: observed <= bound,
        });
    }

    fn error(&mut self, name: &str, err: Error) {
        self.checks.push(Check {
            name: name.into(),
            observed: format!("error: {err}"),
            expected: "a value".into(),
            tolerance: "-".into(),
            passed: false,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} checks, {} failed",
            self.checks.len(),
            self.failures()
        )
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let mut r = Report::default();
    if matches!(suite, Suite::Constants | Suite::All) {
        if let Err(e) = constants(&mut r) {
            r.error("constants", e);
        }
    }
    if matches!(suite, Suite::Lemmas | Suite::All) {
        if let Err(e) = lemmas(&mut r, seed, 100_000) {
            r.error("lemmas", e);
        }
    }
    if matches!(suite, Suite::Distributions | Suite::All) {
        if let Err(e) = distributions(&mut r, seed) {
            r.error("distributions", e);
        }
    }
    r
}

fn constants(r: &mut Report) -> Result<()> {
    let m2 = InnovationModel::new(2.0)?;
    r.close(
        "a_1000 at alpha=2",
        m2.norm_constant_a(1000)?,
        95.4883,
        5e-5,
    );
    r.close(
        "a_1000 at alpha=1.5",
        InnovationModel::new(1.5)?.norm_constant_a(1000)?,
        100.0,
        0.0,
    );
    r.close(
        "zeta(4)",
        zeta_series(4.0, false)?,
        PI.powi(4) / 90.0,
        1e-10,
    );
    r.close(
        "alternating series at 4",
        zeta_series(4.0, true)?,
        -7.0 * PI.powi(4) / 720.0,
        1e-10,
    );
    r.close(
        "H at alpha=1.5, gamma=0.75",
        ScalingSpec::for_power(1.5, 0.75)?.hurst,
        11.0 / 12.0,
        1e-15,
    );
    for p in [Preset::OneSidedLfsm, Preset::Alternating] {
        let c = example_constants(&p.config(None, 0)?)?;
        r.close(&format!("a for example {}", p.name()), c.a, 4.0, 1e-12);
    }
    let c = example_constants(&Preset::AlternatingSum.config(None, 0)?)?;
    r.close(
        "A for the parity-power preset",
        c.total.unwrap_or(f64::NAN),
        -7.0 * PI.powi(4) / 720.0,
        1e-10,
    );
    r.close("C_H at H=0.5", c_h(0.5)?, 1.0, 0.0);
    r.close("4 / C_H at H=0.75", 4.0 / c_h(0.75)?, 4.28, 0.02);
    r.close(
        "stable scale at alpha=1.5",
        stable_sigma(1.5, 1.0)?,
        (2.0 * PI).cbrt(),
        1e-12,
    );
    Ok(())
}

/// Random step function with up to `max_pieces` pieces and values in `[-5, 5]`.
pub fn random_step_path(rng: &mut impl Rng, max_pieces: usize) -> StepPath {
    let m = rng.random_range(1..=max_pieces);
    let mut times: Vec<f64> = (1..m)
        .map(|_| rng.random::<f64>())
        .filter(|&t| t > 0.0)
        .collect();
    times.push(0.0);
    times.sort_by(f64::total_cmp);
    times.dedup();
    let values = times.iter().map(|_| rng.random_range(-5.0..=5.0)).collect();
    StepPath::new(times, values).expect("valid by construction")
}

/// A time in `[0, 1]`: half the time exactly on a breakpoint.
fn random_time(rng: &mut impl Rng, x: &StepPath) -> f64 {
    if rng.random_bool(0.5) {
        x.breakpoints()[rng.random_range(0..x.len())]
    } else {
        rng.random::<f64>()
    }
}

pub fn lemmas(r: &mut Report, seed: u64, instances: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut a1_bad, mut a1_checked, mut a1_min) = (0usize, 0usize, f64::INFINITY);
    let (mut a2_bad, mut a2_checked) = (0usize, 0usize);
    for _ in 0..instances {
        let x = random_step_path(&mut rng, 40);
        let mut ts: Vec<f64> = (0..4).map(|_| random_time(&mut rng, &x)).collect();
        ts.sort_by(f64::total_cmp);
        if ts[1] < ts[2] {
            let gap = lemma_a1_gap(&x, ts[0], ts[1], ts[2], ts[3])?;
            a1_checked += 1;
            a1_min = a1_min.min(gap);
            a1_bad += usize::from(gap < 0.0);
        }
        let (s, t) = (ts[0], ts[3]);
        if s < t {
            // probe at an eta just above 2 beta and at a random larger one
            let beta = match lemma_a2_bound(&x, 1e300, s, t) {
                Ok(rec) => rec.beta_local,
                Err(Error::PreconditionNotMet(_)) => continue,
                Err(e) => return Err(e),
            };
            let eta = 2.0 * beta * (1.0 + rng.random::<f64>()) + 3.0 * rng.random::<f64>() + 1e-9;
            match lemma_a2_bound(&x, eta, s, t) {
                Ok(rec) => {
                    a2_checked += 1;
                    a2_bad += usize::from(rec.count as f64 > rec.bound * (1.0 + 1e-12));
                }
                Err(Error::PreconditionNotMet(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    r.at_most(
        &format!("step-sum gap violations over {a1_checked} instances (min gap {a1_min:.3e})"),
        a1_bad as f64,
        0.0,
    );
    r.at_most(
        &format!("oscillation bound violations over {a2_checked} instances"),
        a2_bad as f64,
        0.0,
    );
    Ok(())
}

fn distributions(r: &mut Report, seed: u64) -> Result<()> {
    let m15 = InnovationModel::new(1.5)?;
    let mut mismatches = 0usize;
    for stream in 0..5 {
        let p = build_truncated_process(
            &CoefficientScheme::DifferencePair,
            &m15,
            1000,
            50,
            seed,
            stream,
        )?;
        let xi0 = p.innovation(0).unwrap_or(f64::NAN);
        for (k, s) in p.partial_sums().iter().enumerate().skip(1) {
            let xik = p.innovation(k as i64).unwrap_or(f64::NAN);
            mismatches += usize::from(*s != xik - xi0);
        }
    }
    r.at_most(
        "telescoping mismatches S_k vs xi_k - xi_0",
        mismatches as f64,
        0.0,
    );

    let mut worst: f64 = 0.0;
    for alpha in [1.5, 2.0] {
        let model = InnovationModel::new(alpha)?;
        let levy = levy_path(&model, 500, seed, 1)?;
        for (a, b) in [(1.0, 0.0), (2.0, 1.0), (0.0, 1.0)] {
            let l = lfsm_path(&LimitSpec::levy(alpha, a, b)?, &model, 500, 2.0, seed, 1)?;
            for (x, y) in l.values().iter().zip(levy.values()) {
                let want = (a - b) * y;
                if want != 0.0 {
                    worst = worst.max((x - want).abs() / want.abs());
                } else {
                    worst = worst.max(x.abs());
                }
            }
        }
    }
    r.at_most("kernel degeneration max relative error", worst, 1e-12);

    let m2 = InnovationModel::new(2.0)?;
    let a_n = m2.norm_constant_a(1000)?;
    let ends: Vec<f64> = (1..=2000u64)
        .map(|s| {
            let xi = m2.sample_range(crate::rng::StreamKey::new(seed, s), 1, 1000);
            crate::exact::exact_sum(xi) / a_n
        })
        .collect();
    r.at_most(
        "KS of S_1000(1)/a_n vs N(0,1), 2000 replicates",
        ks_statistic(&ends, standard_normal_cdf),
        0.07,
    );
    Ok(())
}
