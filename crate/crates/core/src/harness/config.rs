//! Experiment configuration: defaults, named presets, and a flat
//! `key = value` file format.

use std::fmt;
use std::str::FromStr;

use crate::coeffs::CoefficientScheme;
use crate::error::{domain, Error, Result};
use crate::innovations::InnovationModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `S_k / a_n`
    AnOnly,
    /// `S_k / (d_n a_n)`
    DnAn,
}

impl Normalization {
    /// Quantile levels used for range calibration under this normalization.
    pub fn default_quantiles(self) -> (f64, f64) {
        match self {
            Self::DnAn => (0.10, 0.90),
            Self::AnOnly => (0.15, 0.85),
        }
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "an_only" => Ok(Self::AnOnly),
            "dn_an" => Ok(Self::DnAn),
            _ => domain(format!(
                "unknown normalization `{s}` (expected an_only or dn_an)"
            )),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AnOnly => "an_only",
            Self::DnAn => "dn_an",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub scheme: CoefficientScheme,
    /// Path resolution.
    pub n: usize,
    /// Truncation radius of the moving average.
    pub trunc: usize,
    /// Range-calibration replicates.
    pub replicates: usize,
    pub q_lo: f64,
    pub q_hi: f64,
    pub seed: u64,
    pub normalization: Normalization,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            scheme: CoefficientScheme::OneSidedPower { gamma: 0.75 },
            n: 1000,
            trunc: 50,
            replicates: 75,
            q_lo: 0.10,
            q_hi: 0.90,
            seed: 0,
            normalization: Normalization::DnAn,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        InnovationModel::new(self.alpha)?;
        if self.n == 0 {
            return domain("n must be at least 1");
        }
        if self.replicates == 0 {
            return domain("M must be at least 1");
        }
        if !(0.0 <= self.q_lo && self.q_lo < self.q_hi && self.q_hi <= 1.0) {
            return domain(format!(
                "need 0 <= q_lo < q_hi <= 1, got {} and {}",
                self.q_lo, self.q_hi
            ));
        }
        if let Some(g) = self.scheme.gamma() {
            if g <= 1.0 / self.alpha {
                return domain(format!(
                    "gamma = {g} must exceed 1/alpha = {}",
                    1.0 / self.alpha
                ));
            }
        }
        Ok(())
    }
}

/// The six figure setups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    OneSidedLfsm,
    OneSidedLevy,
    Alternating,
    AlternatingZero,
    AlternatingLevy,
    AlternatingSum,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Self::OneSidedLfsm,
        Self::OneSidedLevy,
        Self::Alternating,
        Self::AlternatingZero,
        Self::AlternatingLevy,
        Self::AlternatingSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::OneSidedLfsm => "4.3i",
            Self::OneSidedLevy => "4.3ii",
            Self::Alternating => "4.4",
            Self::AlternatingZero => "4.4zero",
            Self::AlternatingLevy => "4.5",
            Self::AlternatingSum => "4.6",
        }
    }

    pub fn default_alpha(self) -> f64 {
        match self {
            Self::AlternatingSum => 0.8,
            _ => 1.5,
        }
    }

    pub fn config(self, alpha: Option<f64>, seed: u64) -> Result<ExperimentConfig> {
        let alpha = alpha.unwrap_or(self.default_alpha());
        let (scheme, normalization) = match self {
            Self::OneSidedLfsm => (CoefficientScheme::one_sided(0.75)?, Normalization::DnAn),
            Self::OneSidedLevy => (CoefficientScheme::one_sided(4.0)?, Normalization::DnAn),
            Self::Alternating => (
                CoefficientScheme::alternating(3.0, 1.0, 0.75)?,
                Normalization::DnAn,
            ),
            Self::AlternatingZero => (
                CoefficientScheme::alternating(1.0, 1.0, 0.75)?,
                Normalization::DnAn,
            ),
            Self::AlternatingLevy => (
                CoefficientScheme::alternating(1.0, 1.0, 4.0)?,
                Normalization::DnAn,
            ),
            Self::AlternatingSum => (
                CoefficientScheme::alternating(1.0, 1.0, 4.0)?,
                Normalization::AnOnly,
            ),
        };
        let (q_lo, q_hi) = normalization.default_quantiles();
        let config = ExperimentConfig {
            alpha,
            scheme,
            q_lo,
            q_hi,
            seed,
            normalization,
            ..Default::default()
        };
        config.validate()?;
        Ok(config)
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown example `{s}`")))
    }
}

const KEYS: [&str; 13] = [
    "alpha",
    "scheme",
    "gamma",
    "k1",
    "k2",
    "coefficients",
    "n",
    "N_trunc",
    "M",
    "q_lo",
    "q_hi",
    "seed",
    "normalization",
];

/// Accumulates `key = value` assignments; later assignments win, so CLI
/// overrides can be applied on top of a file.
#[derive(Debug, Clone, Default)]
pub struct ConfigBuilder {
    entries: Vec<(String, String, usize)>,
}

impl ConfigBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse_text(mut self, text: &str) -> Result<Self> {
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected `key = value`, found `{line}`"),
                });
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("unknown key `{k}`"),
                });
            }
            if seen.contains(&k) {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("duplicate key `{k}`"),
                });
            }
            seen.push(k);
            self.entries.push((k.to_string(), v.to_string(), i + 1));
        }
        Ok(self)
    }

    /// A single `key=value` override; reported as line 0 on error.
    pub fn set(mut self, assignment: &str) -> Result<Self> {
        let Some((k, v)) = assignment.split_once('=') else {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected `key=value`, found `{assignment}`"),
            });
        };
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("unknown key `{k}`"),
            });
        }
        self.entries.push((k.to_string(), v.trim().to_string(), 0));
        Ok(self)
    }

    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.entries
            .iter()
            .rev()
            .find(|e| e.0 == key)
            .map(|e| (e.1.as_str(), e.2))
    }

    fn value<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some((v, line)) => v.parse().map(Some).map_err(|e| Error::Parse {
                line,
                msg: format!("bad value `{v}` for `{key}`: {e}"),
            }),
        }
    }

    pub fn build(&self) -> Result<ExperimentConfig> {
        let mut c = ExperimentConfig::default();
        if let Some(a) = self.value("alpha")? {
            c.alpha = a;
        }
        if let Some(n) = self.value("n")? {
            c.n = n;
        }
        if let Some(t) = self.value("N_trunc")? {
            c.trunc = t;
        }
        if let Some(m) = self.value("M")? {
            c.replicates = m;
        }
        if let Some(s) = self.value("seed")? {
            c.seed = s;
        }
        if let Some((v, line)) = self.get("normalization") {
            c.normalization = v.parse().map_err(|e: Error| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        let (q_lo, q_hi) = c.normalization.default_quantiles();
        c.q_lo = self.value("q_lo")?.unwrap_or(q_lo);
        c.q_hi = self.value("q_hi")?.unwrap_or(q_hi);
        c.scheme = self.scheme()?;
        c.validate()?;
        Ok(c)
    }

    fn scheme(&self) -> Result<CoefficientScheme> {
        let gamma: Option<f64> = self.value("gamma")?;
        let need_gamma = |line| {
            gamma.ok_or_else(|| Error::Parse {
                line,
                msg: "scheme needs `gamma`".into(),
            })
        };
        let at = |line: usize| {
            move |e: Error| Error::Parse {
                line,
                msg: e.to_string(),
            }
        };
        let Some((kind, line)) = self.get("scheme") else {
            return match gamma {
                Some(g) => CoefficientScheme::one_sided(g),
                None => Ok(ExperimentConfig::default().scheme),
            };
        };
        match kind {
            "one_sided" => CoefficientScheme::one_sided(need_gamma(line)?).map_err(at(line)),
            "alternating" => {
                let k1 = self.value("k1")?.unwrap_or(1.0);
                let k2 = self.value("k2")?.unwrap_or(1.0);
                CoefficientScheme::alternating(k1, k2, need_gamma(line)?).map_err(at(line))
            }
            "finite" => {
                let (list, cl) = self.get("coefficients").ok_or_else(|| Error::Parse {
                    line,
                    msg: "scheme needs `coefficients`".into(),
                })?;
                let entries = parse_coefficient_list(list).map_err(|e| Error::Parse {
                    line: cl,
                    msg: e.to_string(),
                })?;
                CoefficientScheme::finite(entries).map_err(at(cl))
            }
            "difference" => Ok(CoefficientScheme::DifferencePair),
            "iid" => CoefficientScheme::finite(vec![(0, 1.0)]),
            "zero" => Ok(CoefficientScheme::zero()),
            other => Err(Error::Parse {
                line,
                msg: format!("unknown scheme `{other}`"),
            }),
        }
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    ConfigBuilder::new().parse_text(text)?.build()
}

fn list_items(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn number(s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Parse {
            line: 1,
            msg: format!("bad number `{s}`"),
        }),
    }
}

/// `j:c` pairs separated by commas.
pub fn parse_coefficient_list(s: &str) -> Result<Vec<(i64, f64)>> {
    list_items(s)
        .map(|item| {
            let (j, c) = item.split_once(':').ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected `j:c`, found `{item}`"),
            })?;
            let j = j.trim().parse::<i64>().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad index `{j}`"),
            })?;
            Ok((j, number(c.trim())?))
        })
        .collect()
}

/// Comma-separated positive thresholds, e.g. `0.5,1,2`.
pub fn parse_eta_list(s: &str) -> Result<Vec<f64>> {
    let etas = list_items(s).map(number).collect::<Result<Vec<_>>>()?;
    if etas.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty threshold list".into(),
        });
    }
    if let Some(e) = etas.iter().find(|e| **e <= 0.0) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("threshold must be positive, got {e}"),
        });
    }
    Ok(etas)
}

/// Comma-separated `a:b` bands with `a < b`, e.g. `-0.5:0.5,0.5:1.5`.
pub fn parse_band_list(s: &str) -> Result<Vec<(f64, f64)>> {
    list_items(s)
        .map(|item| {
            let (a, b) = item.rsplit_once(':').ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected `a:b`, found `{item}`"),
            })?;
            let (a, b) = (number(a.trim())?, number(b.trim())?);
            if !(a < b) {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("band needs a < b, got {a}:{b}"),
                });
            }
            Ok((a, b))
        })
        .collect()
}
