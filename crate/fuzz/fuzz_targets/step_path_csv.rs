#![no_main]

use libfuzzer_sys::fuzz_target;
use linproc::cadlag::{count_oscillations, oscillation, parse_csv, to_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(path) = parse_csv(text) else { return };
    // anything that parses must survive a round trip unchanged
    assert_eq!(parse_csv(&to_csv(&path)).unwrap(), path);
    if path.len() <= 256 {
        let _ = oscillation(&path, 0.1);
        let _ = count_oscillations(&path, 0.5, 0.0, 1.0);
    }
});
