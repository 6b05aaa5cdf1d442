//! Small sample statistics for the verification suites.

use statrs::distribution::{ContinuousCDF, Normal};

pub fn standard_normal_cdf(x: f64) -> f64 {
    // unit normal always constructs
    Normal::new(0.0, 1.0).map(|d| d.cdf(x)).unwrap_or(f64::NAN)
}

/// One-sample Kolmogorov-Smirnov distance `sup |F_M - F|`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = cdf(x);
        d.max((i + 1) as f64 / m - f).max(f - i as f64 / m)
    })
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub sd: f64,
    pub stderr: f64,
}

pub fn summarize(xs: &[f64]) -> Summary {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let sd = var.sqrt();
    Summary {
        mean,
        sd,
        stderr: sd / m.sqrt(),
    }
}

/// Ratio of means `sum y / sum z` with its delta-method standard error.
pub fn ratio_of_means(y: &[f64], z: &[f64]) -> (f64, f64) {
    let m = y.len() as f64;
    let r = y.iter().sum::<f64>() / z.iter().sum::<f64>();
    let zbar = z.iter().sum::<f64>() / m;
    let resid: Vec<f64> = y.iter().zip(z).map(|(a, b)| a - r * b).collect();
    let s = summarize(&resid);
    (r, s.sd / (m.sqrt() * zbar))
}

/// `ceil(q M)`-th order statistic (1-based), clamped to the sample.
pub fn lower_quantile(values: &[f64], q: f64) -> f64 {
    let mut xs = values.to_vec();
    xs.sort_by(f64::total_cmp);
    let k = ((q * xs.len() as f64).ceil() as usize).clamp(1, xs.len());
    xs[k - 1]
}
