//! Output emission: RFC 4180 pole tables, SVG scatter plots, text tables.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::Deserialize;
use winterres_core::GpiClass;

use crate::error::CliError;

pub const CSV_HEADER: [&str; 12] = [
    "n",
    "re_k",
    "im_k",
    "residual",
    "re_pred",
    "im_pred",
    "abs_err",
    "scaled_err",
    "energy_width",
    "embedded",
    "series",
    "class",
];

/// One line of the pole table. Prediction columns are NaN where no
/// asymptotic formula applies.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct PoleRow {
    pub n: i64,
    pub re_k: f64,
    pub im_k: f64,
    pub residual: f64,
    pub re_pred: f64,
    pub im_pred: f64,
    pub abs_err: f64,
    pub scaled_err: f64,
    pub energy_width: f64,
    /// Real momentum of an embedded eigenvalue rather than a resonance.
    pub embedded: bool,
    /// Position of the interaction in the run's interaction list.
    pub series: usize,
    pub class: String,
}

impl PoleRow {
    /// Bitwise comparison that treats equal NaN payloads as equal.
    pub fn same_bits(&self, other: &PoleRow) -> bool {
        let f = |r: &PoleRow| {
            [
                r.re_k,
                r.im_k,
                r.residual,
                r.re_pred,
                r.im_pred,
                r.abs_err,
                r.scaled_err,
                r.energy_width,
            ]
            .map(f64::to_bits)
        };
        self.n == other.n
            && f(self) == f(other)
            && self.embedded == other.embedded
            && self.series == other.series
            && self.class == other.class
    }
}

/// 17 significant digits: enough to reproduce every `f64` exactly.
fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn write_csv<W: Write>(rows: &[PoleRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt17(r.re_k),
            fmt17(r.im_k),
            fmt17(r.residual),
            fmt17(r.re_pred),
            fmt17(r.im_pred),
            fmt17(r.abs_err),
            fmt17(r.scaled_err),
            fmt17(r.energy_width),
            r.embedded.to_string(),
            r.series.to_string(),
            r.class.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(rows: &[PoleRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<PoleRow>, csv::Error> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().collect()
}

pub fn write_file(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Points of one interaction in a scatter plot.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub class: GpiClass,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 60.0;
const MARKER: f64 = 5.0;

fn class_color(class: GpiClass) -> &'static str {
    match class {
        GpiClass::Delta => "#1f4e9c",
        GpiClass::Intermediate => "#b0301c",
        GpiClass::DeltaPrime => "#207a3c",
    }
}

/// Marker path centred at `(x, y)`: `+` for δ, `×` for intermediate and a
/// six-armed `∗` for δ′.
fn marker_path(class: GpiClass, x: f64, y: f64) -> String {
    let m = MARKER;
    match class {
        GpiClass::Delta => format!(
            "M{:.2} {y:.2}H{:.2}M{x:.2} {:.2}V{:.2}",
            x - m,
            x + m,
            y - m,
            y + m
        ),
        GpiClass::Intermediate => {
            let d = m * std::f64::consts::FRAC_1_SQRT_2;
            format!(
                "M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}",
                x - d,
                y - d,
                x + d,
                y + d,
                x - d,
                y + d,
                x + d,
                y - d
            )
        }
        GpiClass::DeltaPrime => {
            let (s, c) = (m * 0.866_025_403_784_438_6, m * 0.5);
            format!(
                "M{x:.2} {:.2}V{:.2}M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}",
                y - m,
                y + m,
                x - s,
                y - c,
                x + s,
                y + c,
                x - s,
                y + c,
                x + s,
                y - c
            )
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Round tick spacing giving about `target` intervals over `span`.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0".to_string()
    } else {
        s
    }
}

/// Self-contained SVG 1.1 scatter plot of the momentum plane.
pub fn render_svg(series: &[Series], title: &str) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x_max, mut y_min) = (0.0f64, 0.0f64);
    for &(x, y) in all {
        x_max = x_max.max(x);
        y_min = y_min.min(y);
    }
    let x_max = if x_max > 0.0 { x_max * 1.05 } else { 1.0 };
    let y_min = if y_min < 0.0 { y_min * 1.1 } else { -1.0 };
    let y_max = -0.05 * y_min;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + x / x_max * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="28" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // Axes frame and ticks.
    let (x0, x1, y0, y1) = (sx(0.0), sx(x_max), sy(y_min), sy(y_max));
    let _ = writeln!(svg, r#"<g id="axes" stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(svg, r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/>"#, x1 - x0, y0 - y1);
    let _ = writeln!(
        svg,
        r##"<line x1="{x0:.2}" y1="{:.2}" x2="{x1:.2}" y2="{:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
        sy(0.0),
        sy(0.0)
    );
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<g id="ticks" font-family="sans-serif" font-size="11" fill="black">"#);
    let xs = tick_step(x_max, 8.0);
    let mut t = 0.0;
    while t <= x_max + 1e-9 * xs {
        let x = sx(t);
        let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y0 + 18.0,
            fmt_tick(t, xs)
        );
        t += xs;
    }
    let ys = tick_step(y_max - y_min, 6.0);
    let mut t = 0.0;
    while t >= y_min - 1e-9 * ys {
        let y = sy(t);
        let _ = writeln!(svg, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="black"/>"#, x0 - 5.0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            y + 4.0,
            fmt_tick(t, ys)
        );
        t -= ys;
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<text id="x-label" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">Re k</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text id="y-label" x="20" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.2})">Im k</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = class_color(s.class);
        let _ = writeln!(
            svg,
            r#"<g class="series" id="series-{i}" data-class="{}" data-label="{}" stroke="{color}" stroke-width="1.5" fill="none">"#,
            s.class.label(),
            escape(&s.label)
        );
        for &(x, y) in &s.points {
            let _ = writeln!(
                svg,
                r#"<path d="{}" data-re="{x:e}" data-im="{y:e}"/>"#,
                marker_path(s.class, sx(x), sy(y))
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    // Legend.
    let _ = writeln!(svg, r#"<g id="legend" font-family="sans-serif" font-size="12">"#);
    for (i, s) in series.iter().enumerate() {
        let y = y0 - 15.0 - 18.0 * (series.len() - 1 - i) as f64;
        let x = x1 - 230.0;
        let _ = writeln!(
            svg,
            r#"<path d="{}" stroke="{}" stroke-width="1.5" fill="none"/>"#,
            marker_path(s.class, x, y),
            class_color(s.class)
        );
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 12.0, y + 4.0, escape(&s.label));
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, "</svg>");
    svg
}

/// Fixed-width text rendering of pole rows.
pub fn text_table(rows: &[PoleRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>6} {:>22} {:>22} {:>10} {:>22} {:>22} {:>10} {:>10}",
        "n", "Re k", "Im k", "residual", "Re k_pred", "Im k_pred", "abs_err", "scaled_err"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6} {:>22.15} {:>22.15e} {:>10.2e} {:>22.15} {:>22.15e} {:>10.3e} {:>10.3e}",
            r.n, r.re_k, r.im_k, r.residual, r.re_pred, r.im_pred, r.abs_err, r.scaled_err
        );
    }
    out
}
