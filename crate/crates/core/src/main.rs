use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use linproc::cadlag::{
    compactness_report, count_oscillations, lemma_a2_bound, oscillation, parse_csv,
};
use linproc::coeffs::CoefficientScheme;
use linproc::harness::verify::{run_suite, Suite};
use linproc::harness::{
    emit_csv, emit_svg, example_constants, parse_band_list, parse_eta_list, run_example,
    ConfigBuilder, Constants, ExampleRun, ExperimentConfig, Preset,
};
use linproc::Error;

#[derive(Parser)]
#[command(
    name = "linproc",
    version,
    about = "Heavy-tailed linear processes and their functional limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print normalizing and limit constants.
    Constants {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, requires = "gamma")]
        k1: Option<f64>,
        #[arg(long, requires = "gamma")]
        k2: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Run an experiment described by a key=value config file.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Override a config key, e.g. `--set seed=7`. Repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Oscillation and crossing diagnostics of a path stored as CSV.
    Analyze {
        #[arg(long)]
        in_csv: PathBuf,
        /// Comma-separated thresholds.
        #[arg(long)]
        eta: String,
        /// Comma-separated `a:b` bands.
        #[arg(long, allow_hyphen_values = true)]
        bands: Option<String>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Reproduce one of the six figure setups.
    Figure {
        #[arg(long)]
        example: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Defaults to `figure-<example>.csv` in the working directory.
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_svg: Option<PathBuf>,
    },
    /// Run verification suites; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Constants {
            alpha,
            gamma,
            k1,
            k2,
            n,
        } => {
            let scheme = match (gamma, k1, k2) {
                (Some(g), None, None) => CoefficientScheme::one_sided(g)?,
                (Some(g), k1, k2) => {
                    CoefficientScheme::alternating(k1.unwrap_or(1.0), k2.unwrap_or(1.0), g)?
                }
                (None, _, _) => CoefficientScheme::finite(vec![(0, 1.0)])?,
            };
            let config = ExperimentConfig {
                alpha,
                scheme,
                n,
                ..Default::default()
            };
            print_constants(&example_constants(&config)?);
        }
        Command::Simulate {
            config,
            overrides,
            out_csv,
            out_svg,
        } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut builder = ConfigBuilder::new()
                .parse_text(&text)
                .with_context(|| format!("in {}", config.display()))?;
            for o in &overrides {
                builder = builder.set(o)?;
            }
            let run = run_example(&builder.build()?)?;
            report_run(&run, out_csv, out_svg)?;
        }
        Command::Analyze {
            in_csv,
            eta,
            bands,
            delta,
        } => {
            let text = fs::read_to_string(&in_csv)
                .with_context(|| format!("reading {}", in_csv.display()))?;
            let x = parse_csv(&text).with_context(|| format!("in {}", in_csv.display()))?;
            let etas = parse_eta_list(&eta).context("--eta")?;
            let bands = match bands {
                Some(b) => parse_band_list(&b).context("--bands")?,
                None => Vec::new(),
            };
            let rep = compactness_report(std::slice::from_ref(&x), &etas, &bands)?;
            println!("pieces: {}", x.len());
            println!("sup_norm: {}", rep.sup_norm_max);
            if let Some(d) = delta {
                println!("w(delta={d}): {}", oscillation(&x, d)?);
            }
            for &e in &etas {
                println!("N_eta(eta={e}): {}", count_oscillations(&x, e, 0.0, 1.0)?);
                match lemma_a2_bound(&x, e, 0.0, 1.0) {
                    Ok(r) => println!(
                        "  oscillation bound: count {} <= bound {} (beta {})",
                        r.count, r.bound, r.beta_local
                    ),
                    Err(Error::PreconditionNotMet(m)) => {
                        println!("  oscillation bound: not applicable ({m})")
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            for ((a, b), c) in rep.upcross_counts {
                println!("N^(a={a},b={b}): {c}");
            }
        }
        Command::Figure {
            example,
            alpha,
            seed,
            out_csv,
            out_svg,
        } => {
            let preset: Preset = example.parse()?;
            let config = preset.config(alpha, seed)?;
            let run = run_example(&config)?;
            let csv =
                out_csv.unwrap_or_else(|| PathBuf::from(format!("figure-{}.csv", preset.name())));
            let svg =
                out_svg.unwrap_or_else(|| PathBuf::from(format!("figure-{}.svg", preset.name())));
            report_run(&run, Some(csv), Some(svg))?;
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, seed);
            println!("{report}");
            if report.failures() > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn report_run(run: &ExampleRun, out_csv: Option<PathBuf>, out_svg: Option<PathBuf>) -> Result<()> {
    let c = &run.config;
    println!("alpha: {}", c.alpha);
    println!("scheme: {:?}", c.scheme);
    println!(
        "n: {}  N: {}  M: {}  seed: {}",
        c.n, c.trunc, c.replicates, c.seed
    );
    println!(
        "normalization: {}  quantiles: {} / {}",
        c.normalization, c.q_lo, c.q_hi
    );
    print_constants(&run.constants);
    println!("range: [{}, {}]", run.range.0, run.range.1);
    if let Some(f) = out_csv {
        emit_csv(&run.path, &f)?;
        println!("wrote {}", f.display());
    }
    if let Some(f) = out_svg {
        emit_svg(std::slice::from_ref(&run.path), run.range, &f)?;
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn print_constants(c: &Constants) {
    println!("a_n: {}", c.a_n);
    println!("d_n: {}", c.d_n);
    println!("H: {}  ({:?})", c.hurst, c.mode);
    if let Some(g) = c.gamma {
        println!("gamma: {g}");
    }
    if let Some(s) = c.sigma {
        println!("sigma: {s}");
    }
    println!("a: {}  a': {}  a'': {}  b: {}", c.a, c.a_pos, c.a_neg, c.b);
    if let Some(t) = c.total {
        println!("A: {t}");
    }
    if let (Some(ch), Some(s)) = (c.c_h, c.fbm_scale) {
        println!("C_H: {ch}  a/C_H: {s}");
    }
}
