//! Experiment orchestration: configuration, example runs, artifacts and
//! verification suites.

mod config;
mod experiment;
mod output;
pub mod stats;
pub mod verify;

pub use config::{
    parse_band_list, parse_coefficient_list, parse_config, parse_eta_list, ConfigBuilder,
    ExperimentConfig, Normalization, Preset,
};
pub use experiment::{
    calibrate_range, example_constants, normalizer, run_example, simulate_path, Constants,
    ExampleRun, DISPLAY_STREAM,
};
pub use output::{emit_csv, emit_svg, render_svg};
