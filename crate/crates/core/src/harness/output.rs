//! CSV and SVG artifacts. Both are pure functions of their inputs, so
//! repeated runs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::cadlag::{to_csv, StepPath};
use crate::error::{Error, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn write_file(file: &Path, contents: &str) -> Result<()> {
    fs::write(file, contents).map_err(|source| Error::Io {
        path: file.to_path_buf(),
        source,
    })
}

pub fn emit_csv(path: &StepPath, file: &Path) -> Result<()> {
    write_file(file, &to_csv(path))
}

/// Step plot of `paths` with the y axis spanning `range`, x over `[0, 1]`.
pub fn render_svg(paths: &[StepPath], range: (f64, f64)) -> Result<String> {
    let (lo, hi) = range;
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::DegenerateRange { lo, hi });
    }
    let pw = WIDTH - 2.0 * MARGIN;
    let ph = HEIGHT - 2.0 * MARGIN;
    let sx = |t: f64| MARGIN + t * pw;
    let sy = |v: f64| MARGIN + (hi - v) / (hi - lo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}"/></clipPath></defs>"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    if lo < 0.0 && hi > 0.0 {
        let y0 = sy(0.0);
        let _ = writeln!(
            s,
            r##"<line x1="{MARGIN}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="#999" stroke-dasharray="4 3"/>"##,
            MARGIN + pw
        );
    }
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            s,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{text}</text>"#
        );
    };
    label(
        &mut s,
        MARGIN - 6.0,
        MARGIN + 4.0,
        "end",
        &format!("{hi:.2}"),
    );
    label(
        &mut s,
        MARGIN - 6.0,
        MARGIN + ph + 4.0,
        "end",
        &format!("{lo:.2}"),
    );
    label(&mut s, MARGIN, MARGIN + ph + 18.0, "middle", "0");
    label(&mut s, MARGIN + pw, MARGIN + ph + 18.0, "middle", "1");
    label(
        &mut s,
        WIDTH / 2.0,
        MARGIN - 14.0,
        "middle",
        &format!("range [{lo:.2}, {hi:.2}]"),
    );

    for (i, p) in paths.iter().enumerate() {
        let t = p.breakpoints();
        let v = p.values();
        let mut pts = String::new();
        for k in 0..v.len() {
            let end = t.get(k + 1).copied().unwrap_or(1.0);
            let _ = write!(
                pts,
                "{:.3},{:.3} {:.3},{:.3} ",
                sx(t[k]),
                sy(v[k]),
                sx(end),
                sy(v[k])
            );
        }
        let _ = writeln!(
            s,
            r#"<polyline clip-path="url(#plot)" fill="none" stroke="{}" stroke-width="1" points="{}"/>"#,
            COLORS[i % COLORS.len()],
            pts.trim_end()
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(paths: &[StepPath], range: (f64, f64), file: &Path) -> Result<()> {
    write_file(file, &render_svg(paths, range)?)
}
