//! `t,value` CSV, one row per breakpoint. Floats use the shortest decimal
//! that round-trips, so parsing the output reproduces the path bit for bit.

use std::fmt::Write;

use super::StepPath;
use crate::error::{Error, Result};

const HEADER: &str = "t,value";

pub fn to_csv(x: &StepPath) -> String {
    let mut out = String::with_capacity(16 * x.len() + 8);
    out.push_str(HEADER);
    out.push('\n');
    for (t, v) in x.times.iter().zip(&x.values) {
        // writing to a String cannot fail
        let _ = writeln!(out, "{t},{v}");
    }
    out
}

pub fn parse_csv(text: &str) -> Result<StepPath> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, h)) if h.replace(' ', "") == HEADER => {}
        Some((n, h)) => return Err(err(n, format!("expected header `{HEADER}`, found `{h}`"))),
        None => return Err(err(1, "empty input".into())),
    }
    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut last_line = 1;
    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        last_line = n;
        let mut fields = line.split(',');
        let (Some(t), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(n, format!("expected two fields, found `{line}`")));
        };
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| err(n, format!("bad number `{}`: {e}", s.trim())))
        };
        times.push(parse(t)?);
        values.push(parse(v)?);
    }
    StepPath::new(times, values).map_err(|e| match e {
        Error::Domain(msg) => err(last_line, msg),
        other => other,
    })
}
