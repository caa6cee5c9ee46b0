use std::fmt::Write as _;

use winterres_core::{
    det_lambda, find_poles_in, is_separated, predict, real_axis_roots, to_transfer, to_unitary,
    Channel, Complex64, GpiParams, PoleSearch, Resonance, SearchRegion,
};

use crate::complex::format_complex;
use crate::config::{InteractionConfig, RunConfig};
use crate::error::CliError;
use crate::report::{csv_string, render_svg, text_table, write_file, PoleRow, Series};

/// Human-readable classification of one interaction.
pub fn cmd_classify(p: &GpiParams) -> String {
    let mut out = String::new();
    let separation = if is_separated(p) {
        "separated: embedded eigenvalues"
    } else {
        "not separated"
    };
    let _ = writeln!(out, "{}-type; {separation}", p.class().label());
    let _ = writeln!(
        out,
        "alpha = {}, beta = {}, gamma = {}",
        p.alpha,
        p.beta,
        format_complex(p.gamma)
    );
    let u = to_unitary(p);
    let _ = writeln!(
        out,
        "unitary: xi = {:.12}, u1 = {}, u2 = {}",
        u.xi,
        fmt_c(u.u1),
        fmt_c(u.u2)
    );
    match to_transfer(p) {
        Ok(t) => {
            let _ = writeln!(
                out,
                "transfer: chi = {:.12}, a = {:.12}, b = {:.12}, c = {:.12}, d = {:.12}",
                t.chi, t.a, t.b, t.c, t.d
            );
        }
        Err(_) => {
            let _ = writeln!(out, "transfer: none (separated interaction)");
        }
    }
    out
}

fn fmt_c(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.12}{sign}{:.12}i", z.re, z.im.abs())
}

/// Pole table and plot for every interaction of a run.
#[derive(Debug, Clone)]
pub struct PolesReport {
    pub rows: Vec<PoleRow>,
    pub series: Vec<Series>,
    pub csv: String,
    pub svg: String,
}

fn nan_row(series: usize, p: &GpiParams) -> PoleRow {
    PoleRow {
        n: 0,
        re_k: f64::NAN,
        im_k: f64::NAN,
        residual: f64::NAN,
        re_pred: f64::NAN,
        im_pred: f64::NAN,
        abs_err: f64::NAN,
        scaled_err: f64::NAN,
        energy_width: f64::NAN,
        embedded: false,
        series,
        class: p.class().label().to_string(),
    }
}

fn resonance_row(series: usize, p: &GpiParams, ch: &Channel, r: &Resonance) -> PoleRow {
    let mut row = PoleRow {
        n: r.index,
        re_k: r.k.re,
        im_k: r.k.im,
        residual: r.residual,
        energy_width: r.energy_width(),
        ..nan_row(series, p)
    };
    if r.index >= 1 {
        if let Some(pred) = predict(p, ch, r.index).ok().and_then(|x| x.pole().copied()) {
            let err = (r.k - pred.k_pred).norm();
            row.re_pred = pred.k_pred.re;
            row.im_pred = pred.k_pred.im;
            row.abs_err = err;
            row.scaled_err = err / pred.error_scale;
        }
    }
    row
}

fn interaction_rows(
    series: usize,
    i: &InteractionConfig,
    ch: &Channel,
    region: &SearchRegion,
    search: &PoleSearch,
) -> Result<Vec<PoleRow>, CliError> {
    let p = i.params();
    if is_separated(&p) {
        let roots = real_axis_roots(&p, ch, region.re_max)?;
        return roots
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                Ok(PoleRow {
                    n: j as i64 + 1,
                    re_k: k,
                    im_k: 0.0,
                    residual: det_lambda(&p, ch, Complex64::new(k, 0.0))?.norm(),
                    energy_width: 0.0,
                    embedded: true,
                    ..nan_row(series, &p)
                })
            })
            .collect();
    }
    let poles = find_poles_in(&p, ch, region, search)?;
    Ok(poles.iter().map(|r| resonance_row(series, &p, ch, r)).collect())
}

/// Computes the pole table without touching the file system.
pub fn compute_poles(cfg: &RunConfig) -> Result<PolesReport, CliError> {
    cfg.validate()?;
    let ch = cfg.channel()?;
    let region = cfg.region()?;
    let search = cfg.pole_search();
    let mut rows = Vec::new();
    let mut series = Vec::new();
    for (idx, i) in cfg.interactions().iter().enumerate() {
        let these = interaction_rows(idx, i, &ch, &region, &search)?;
        series.push(Series {
            label: i.to_string(),
            class: i.params().class(),
            points: these.iter().map(|r| (r.re_k, r.im_k)).collect(),
        });
        rows.extend(these);
    }
    let title = format!(
        "Resonances in the momentum plane (l = {}, R = {})",
        ch.l, ch.radius
    );
    let svg = render_svg(&series, &title);
    let csv = csv_string(&rows);
    Ok(PolesReport {
        rows,
        series,
        csv,
        svg,
    })
}

/// Computes the pole table and writes the configured CSV and SVG files.
pub fn cmd_poles(cfg: &RunConfig) -> Result<PolesReport, CliError> {
    let report = compute_poles(cfg)?;
    if let Some(path) = &cfg.outputs.csv_path {
        write_file(path, &report.csv)?;
    }
    if let Some(path) = &cfg.outputs.svg_path {
        write_file(path, &report.svg)?;
    }
    Ok(report)
}

/// Comparison of found poles against the asymptotic formulas, as text.
pub fn cmd_compare(cfg: &RunConfig) -> Result<String, CliError> {
    cfg.validate()?;
    let ch = cfg.channel()?;
    let region = cfg.region()?;
    let search = cfg.pole_search();
    let mut out = String::new();
    for (idx, i) in cfg.interactions().iter().enumerate() {
        let p = i.params();
        let _ = writeln!(out, "# {} ({}-type)", i, p.class().label());
        if is_separated(&p) {
            let roots = real_axis_roots(&p, &ch, region.re_max)?;
            let _ = writeln!(
                out,
                "separated interaction: no resonances; {} embedded eigenvalues with k <= {}",
                roots.len(),
                region.re_max
            );
            continue;
        }
        let rows: Vec<PoleRow> = interaction_rows(idx, i, &ch, &region, &search)?
            .into_iter()
            .filter(|r| r.re_pred.is_finite())
            .collect();
        if rows.is_empty() {
            let _ = writeln!(out, "no resonances");
            continue;
        }
        out.push_str(&text_table(&rows));
        let _ = writeln!(out, "{}", summary_line(&rows));
    }
    Ok(out)
}

/// Largest scaled error over the upper half of the index range.
pub fn top_half_max_scaled_err(rows: &[PoleRow]) -> Option<(i64, f64)> {
    let n_min = rows.iter().map(|r| r.n).min()?;
    let n_max = rows.iter().map(|r| r.n).max()?;
    let cut = n_min + (n_max - n_min + 1) / 2;
    let worst = rows
        .iter()
        .filter(|r| r.n >= cut)
        .map(|r| r.scaled_err)
        .fold(f64::NEG_INFINITY, f64::max);
    Some((cut, worst))
}

fn summary_line(rows: &[PoleRow]) -> String {
    match top_half_max_scaled_err(rows) {
        Some((cut, worst)) => format!(
            "summary: {} poles, max scaled_err for n >= {cut}: {worst:.6e}",
            rows.len()
        ),
        None => "summary: no poles".to_string(),
    }
}
