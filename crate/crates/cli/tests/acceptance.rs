//! Acceptance suite: one PASS/FAIL line per criterion, then a non-zero exit
//! status if any criterion failed.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use winterres_cli::config::Interactions;
use winterres_cli::{compute_poles, InteractionConfig, RunConfig};
use winterres_core::{
    boundary_basis, boundary_residual, classify, classify_unitary, det_lambda, find_poles_in,
    real_axis_roots, to_transfer, to_unitary, wronskian, Channel, GpiParams, PoleSearch,
    Resonance, SearchRegion,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Poles of one of the reference couplings with `R = 1`, `l = 0`, indexed `n_min..=n_max`.
fn indexed_poles(p: &GpiParams, n_min: i64, n_max: i64, im_min: f64) -> Vec<Resonance> {
    let ch = Channel::default();
    let region = SearchRegion::new(1e-3, (n_max as f64 + 1.5) * PI, im_min, 0.0).unwrap();
    let poles = find_poles_in(p, &ch, &region, &PoleSearch::default()).unwrap();
    poles
        .into_iter()
        .filter(|r| (n_min..=n_max).contains(&r.index))
        .collect()
}

fn has_all_indices(poles: &[Resonance], n_min: i64, n_max: i64) -> bool {
    (n_min..=n_max).all(|n| poles.iter().filter(|r| r.index == n).count() == 1)
}

/// Least-squares slope of `y` against its position.
fn trend_slope(y: &[f64]) -> f64 {
    let n = y.len() as f64;
    let xm = (n - 1.0) / 2.0;
    let ym = y.iter().sum::<f64>() / n;
    let (mut num, mut den) = (0.0, 0.0);
    for (i, v) in y.iter().enumerate() {
        let dx = i as f64 - xm;
        num += dx * (v - ym);
        den += dx * dx;
    }
    num / den
}

fn criterion_1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let free = GpiParams::free();
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let l = rng.gen_range(0..=10);
        let k = Complex64::from_polar(rng.gen_range(0.1..=100.0), rng.gen_range(-PI..PI));
        let d = det_lambda(&free, &Channel::new(l, 1.0).unwrap(), k).unwrap();
        worst = worst.max((d + 1.0).norm());
    }
    outcome(worst < 1e-12, format!("max |det λ + 1| = {worst:.2e} (tol 1e-12, 10^4 samples)"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for l in 0..=20 {
        for im in 0..=50 {
            let modulus = 10f64.powf(-2.0 + 5.0 * im as f64 / 50.0);
            for ia in 0..64 {
                let arg = -PI + 2.0 * PI * (ia as f64 + 1.0) / 64.0;
                let w = wronskian(l, Complex64::from_polar(modulus, arg)).unwrap();
                worst = worst.max((w - I).norm());
            }
        }
    }
    outcome(
        worst < 1e-10,
        format!("max |W − i| = {worst:.2e} (tol 1e-10, l ≤ 20, |z| ∈ [1e-2, 1e3], 64 args)"),
    )
}

fn criterion_3(store: &mut Vec<(GpiParams, Complex64)>) -> Outcome {
    let p = GpiParams::delta(50.0);
    let poles = indexed_poles(&p, 10, 40, -3.0);
    store.extend(poles.iter().map(|r| (p, r.k)));
    if !has_all_indices(&poles, 10, 40) {
        return outcome(false, format!("found {} of the 31 poles n = 10..40", poles.len()));
    }
    let mut worst_re = 0.0f64;
    let mut worst_n = 0;
    let mut im_dev = Vec::new();
    for r in &poles {
        let n = r.index as f64;
        let re_err = (r.k.re - (2.0 * n * PI + 1.5 * PI) / 2.0).abs();
        if re_err * n > worst_re {
            worst_re = re_err * n;
            worst_n = r.index;
        }
        im_dev.push((r.k.im + 0.5 * (2.0 * r.k.re / 50.0).ln()).abs());
    }
    let slope = trend_slope(&im_dev);
    let last = *im_dev.last().unwrap();
    let re_ok = worst_re <= 0.5;
    let im_ok = slope < 0.0 && last < 0.05;
    outcome(
        re_ok && im_ok,
        format!(
            "Re: max n·|Re k_n − (2nπ+3π/2)/2| = {worst_re:.3} at n={worst_n} (tol 0.5) [{}]; \
             Im: trend slope {slope:.2e} (< 0), final {last:.4} (tol 0.05) [{}]",
            if re_ok { "ok" } else { "FAIL" },
            if im_ok { "ok" } else { "FAIL" }
        ),
    )
}

fn criterion_4(store: &mut Vec<(GpiParams, Complex64)>) -> Outcome {
    let p = GpiParams::intermediate(c(1.0, 1.0));
    let poles = indexed_poles(&p, 20, 40, -1.0);
    store.extend(poles.iter().map(|r| (p, r.k)));
    if !has_all_indices(&poles, 20, 40) {
        return outcome(false, format!("found {} of the 21 poles n = 20..40", poles.len()));
    }
    let target = -0.5 * 1.5f64.ln();
    let worst = poles
        .iter()
        .map(|r| (r.k.im - target).abs())
        .fold(0.0, f64::max);
    outcome(
        worst < 0.01,
        format!("max |Im k_n + ½ln1.5| = {worst:.2e} over n = 20..40 (tol 0.01)"),
    )
}

fn criterion_5(store: &mut Vec<(GpiParams, Complex64)>) -> Outcome {
    let beta = 0.1;
    let p = GpiParams::delta_prime(beta);
    let poles = indexed_poles(&p, 40, 80, -0.5);
    store.extend(poles.iter().map(|r| (p, r.k)));
    if !has_all_indices(&poles, 40, 80) {
        return outcome(false, format!("found {} of the 41 poles n = 40..80", poles.len()));
    }
    let worst = poles
        .iter()
        .map(|r| {
            let k0 = PI * r.index as f64 + PI / 2.0;
            (r.k.im * (beta * k0).powi(2) + 1.0).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        worst < 0.1,
        format!("max |Im k_n·(βRk⁰_n)² + 1| = {worst:.3e} over n = 40..80 (tol 0.1)"),
    )
}

fn pole_100(p: &GpiParams) -> Option<Complex64> {
    let region = SearchRegion::new(100.0 * PI - 0.5, 101.0 * PI + 0.5, -6.0, 0.0).unwrap();
    find_poles_in(p, &Channel::default(), &region, &PoleSearch::default())
        .ok()?
        .into_iter()
        .find(|r| r.index == 100)
        .map(|r| r.k)
}

fn criterion_6() -> Outcome {
    let found = [
        pole_100(&GpiParams::delta(50.0)),
        pole_100(&GpiParams::intermediate(c(1.0, 1.0))),
        pole_100(&GpiParams::delta_prime(0.1)),
    ];
    let [Some(d), Some(i), Some(dp)] = found else {
        return outcome(false, "a pole with n = 100 was not found for every class");
    };
    let (d, i, dp) = (d.im.abs(), i.im.abs(), dp.im.abs());
    let bound = 100f64.ln() / 4.0;
    outcome(
        dp < i && i < d && d > bound,
        format!("|Im k| at n=100: δ′ {dp:.3e} < int {i:.4} < δ {d:.4}; δ > ln(100)/4 = {bound:.4}"),
    )
}

fn criterion_7(store: &[(GpiParams, Complex64)]) -> Outcome {
    let ch = Channel::default();
    let worst = store
        .iter()
        .map(|(p, k)| det_lambda(p, &ch, -k.conj()).map_or(f64::INFINITY, |d| d.norm()))
        .fold(0.0, f64::max);
    outcome(
        !store.is_empty() && worst < 1e-8,
        format!("max |det λ(−k̄)| = {worst:.2e} over {} poles (tol 1e-8)", store.len()),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut worst_res, mut worst_det, mut class_mismatch) = (0.0f64, 0.0f64, 0);
    for _ in 0..1000 {
        let beta = if rng.gen_bool(1.0 / 3.0) { 0.0 } else { rng.gen_range(-5.0..5.0) };
        let re = if rng.gen_bool(1.0 / 3.0) { 0.0 } else { rng.gen_range(-4.0..4.0) };
        let p = GpiParams::new(rng.gen_range(-50.0..50.0), beta, c(re, rng.gen_range(-4.0..4.0)));
        let u = to_unitary(&p);
        for data in boundary_basis(&p) {
            worst_res = worst_res.max(boundary_residual(&u, &data));
        }
        if classify(&p) != classify_unitary(&u) {
            class_mismatch += 1;
        }
        if let Ok(t) = to_transfer(&p) {
            worst_det = worst_det.max((t.determinant() - 1.0).abs());
        }
    }
    outcome(
        worst_res < 1e-10 && worst_det < 1e-12 && class_mismatch == 0,
        format!(
            "max residual {worst_res:.2e} (tol 1e-10), max |ad − bc − 1| {worst_det:.2e} (tol 1e-12), \
             {class_mismatch} class mismatches, 1000 draws"
        ),
    )
}

fn criterion_9() -> Outcome {
    let p = GpiParams::intermediate(c(2.0, 0.0));
    let ch = Channel::default();
    let region = SearchRegion::new(0.1, 40.0, -2.0, -1e-4).unwrap();
    let off_axis = match find_poles_in(&p, &ch, &region, &PoleSearch::default()) {
        Ok(v) => v.len(),
        Err(e) => return outcome(false, format!("pole search failed: {e}")),
    };
    let roots = real_axis_roots(&p, &ch, 40.0).unwrap();
    let worst = roots
        .iter()
        .map(|&k| det_lambda(&p, &ch, c(k, 0.0)).unwrap().norm())
        .fold(0.0, f64::max);
    outcome(
        off_axis == 0 && roots.len() >= 10 && worst < 1e-10,
        format!(
            "{off_axis} off-axis poles (want 0); {} real roots below 40 (want ≥ 10), max |det λ| {worst:.2e} (tol 1e-10)",
            roots.len()
        ),
    )
}

fn strictly_monotone(y: &[f64], decreasing: bool) -> bool {
    y.windows(2)
        .all(|w| if decreasing { w[1] < w[0] } else { w[1] > w[0] })
}

/// `(Re k, Im k)` of every marker in each series group of the SVG.
fn svg_series(svg: &str) -> Vec<Vec<(f64, f64)>> {
    let attr = |s: &str, key: &str| -> f64 {
        let start = s.find(key).unwrap() + key.len();
        let end = start + s[start..].find('"').unwrap();
        s[start..end].parse().unwrap()
    };
    svg.split(r#"<g class="series""#)
        .skip(1)
        .map(|group| {
            let group = &group[..group.find("</g>").unwrap()];
            group
                .split("<path ")
                .skip(1)
                .map(|p| (attr(p, "data-re=\""), attr(p, "data-im=\"")))
                .collect()
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let mut cfg = RunConfig::default();
    cfg.interaction = Interactions::Many(
        ["alpha=50", "gamma=1+1i", "beta=0.1"]
            .iter()
            .map(|s| s.parse::<InteractionConfig>().unwrap())
            .collect(),
    );
    let report = match compute_poles(&cfg) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("cmd_poles failed: {e}")),
    };
    let series = svg_series(&report.svg);
    if series.len() != 3 || series.iter().any(|s| s.len() < 8) {
        return outcome(false, format!("expected 3 populated series, got {:?}", series.iter().map(Vec::len).collect::<Vec<_>>()));
    }
    let im = |s: &[(f64, f64)]| -> Vec<f64> {
        let mut pts = s.to_vec();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.iter().map(|p| p.1).collect()
    };
    let (d, int, dp) = (im(&series[0]), im(&series[1]), im(&series[2]));
    let log_descending = strictly_monotone(&d, true) && d.iter().all(|&v| v < 0.0);
    let spread = int.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - int.iter().cloned().fold(f64::INFINITY, f64::min);
    let flat = spread < 0.01 && int.iter().all(|&v| (v + 0.5 * 1.5f64.ln()).abs() < 0.01);
    let dp_abs: Vec<f64> = dp.iter().map(|v| v.abs()).collect();
    let hugging = strictly_monotone(&dp_abs, true) && *dp_abs.last().unwrap() < 0.1;
    let labelled = report.svg.contains(">Re k</text>") && report.svg.contains(">Im k</text>");
    outcome(
        log_descending && flat && hugging && labelled,
        format!(
            "δ Im strictly descending: {log_descending}; intermediate Im spread {spread:.1e} (flat: {flat}); \
             δ′ |Im| descending to {:.3e} (hugging: {hugging}); axes labelled: {labelled}",
            dp_abs.last().unwrap()
        ),
    )
}

fn main() {
    let mut store = Vec::new();
    let runs: Vec<(u32, &str, Duration, Box<dyn FnOnce(&mut Vec<(GpiParams, Complex64)>) -> Outcome>)> = vec![
        (1, "free-case oracle", Duration::from_secs(1), Box::new(|_| criterion_1())),
        (2, "Wronskian suite", Duration::from_secs(1), Box::new(|_| criterion_2())),
        (3, "δ-type asymptotics", Duration::from_secs(30), Box::new(criterion_3)),
        (4, "intermediate asymptotics", Duration::from_secs(30), Box::new(criterion_4)),
        (5, "δ′ asymptotics", Duration::from_secs(60), Box::new(criterion_5)),
        (6, "class ordering at n = 100", Duration::from_secs(60), Box::new(|_| criterion_6())),
        (7, "pole-pair symmetry", Duration::MAX, Box::new(|s| criterion_7(s))),
        (8, "conversion oracle", Duration::MAX, Box::new(|_| criterion_8())),
        (9, "separated case", Duration::MAX, Box::new(|_| criterion_9())),
        (10, "Fig. 1 reproduction", Duration::MAX, Box::new(|_| criterion_10())),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in runs {
        let start = Instant::now();
        let out = run(&mut store);
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = out.pass && in_time;
        if !pass {
            failures += 1;
        }
        let budget_text = if budget == Duration::MAX {
            String::new()
        } else {
            format!(" / {}s", budget.as_secs())
        };
        println!(
            "criterion {id:>2} {}: {name}: {} [{:.3}s{budget_text}]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
