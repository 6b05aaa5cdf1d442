#![no_main]

use libfuzzer_sys::fuzz_target;
use linproc::harness::{parse_band_list, parse_coefficient_list, parse_eta_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(etas) = parse_eta_list(text) {
        assert!(etas.iter().all(|e| *e > 0.0 && e.is_finite()));
    }
    if let Ok(bands) = parse_band_list(text) {
        assert!(bands.iter().all(|(a, b)| a < b));
    }
    let _ = parse_coefficient_list(text);
});
