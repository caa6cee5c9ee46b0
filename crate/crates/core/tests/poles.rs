use std::f64::consts::PI;

use num_complex::Complex64;
use winterres_core::polefinder::default_im_min;
use winterres_core::{
    count_zeros, det_lambda, find_poles, find_poles_in, real_axis_roots, refine, Channel,
    GpiParams, PoleSearch, SearchRegion,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn intermediate_poles_have_constant_width() {
    let p = GpiParams::intermediate(c(1.0, 1.0));
    let ch = Channel::default();
    let poles = find_poles(&p, &ch, 40.0, -1.0).unwrap();
    let target = -0.5 * 1.5f64.ln();
    assert!(poles.iter().filter(|r| r.k.re > 25.0).count() >= 4);
    for r in poles.iter().filter(|r| r.k.re > 25.0) {
        assert!((r.k.im - target).abs() < 0.1 * target.abs(), "{:?}", r.k);
    }
}

#[test]
fn delta_prime_pole_near_n50() {
    let p = GpiParams::delta_prime(0.1);
    let ch = Channel::default();
    let region = SearchRegion::new(155.0, 162.0, -1.0, 0.0).unwrap();
    let poles = find_poles_in(&p, &ch, &region, &PoleSearch::default()).unwrap();
    let k0 = 50.0 * PI + PI / 2.0;
    let nearest = poles
        .iter()
        .min_by(|a, b| (a.k.re - k0).abs().total_cmp(&(b.k.re - k0).abs()))
        .unwrap();
    assert_eq!(nearest.index, 50);
    assert!((nearest.k.im + 3.97e-3).abs() < 0.1 * 3.97e-3, "{}", nearest.k);

    let seeded = refine(&p, &ch, nearest.k + c(0.07, 0.07)).unwrap();
    assert!((seeded.k - nearest.k).norm() < 1e-9);
    assert!(seeded.steps <= 20);
}

#[test]
fn delta_first_pole_is_a_zero_of_det_lambda() {
    let p = GpiParams::delta(50.0);
    let ch = Channel::default();
    let poles = find_poles(&p, &ch, 10.0, default_im_min(&ch, 10.0)).unwrap();
    let k1 = poles.first().unwrap().k;
    assert!(det_lambda(&p, &ch, k1).unwrap().norm() < 1e-9);
}

#[test]
fn poles_pair_with_mirror_images_and_are_reproducible() {
    let ch = Channel::new(2, 1.3).unwrap();
    let p = GpiParams::new(7.0, 0.05, c(0.6, 0.0));
    let first = find_poles(&p, &ch, 30.0, -4.0).unwrap();
    let second = find_poles(&p, &ch, 30.0, -4.0).unwrap();
    assert_eq!(first, second);
    assert!(!first.is_empty());
    let region = SearchRegion::new(1e-3 / 1.3, 30.0, -4.0, 0.0).unwrap();
    assert_eq!(first.len() as i64, count_zeros(&p, &ch, &region).unwrap());
    for r in &first {
        assert!(r.residual < 1e-9);
        assert!(region.contains(r.k));
        assert!(det_lambda(&p, &ch, -r.k.conj()).unwrap().norm() < 1e-8);
    }
}

#[test]
fn complex_gamma_poles_found() {
    let ch = Channel::new(1, 1.0).unwrap();
    let p = GpiParams::new(3.0, 0.2, c(0.4, 0.3));
    let poles = find_poles(&p, &ch, 25.0, -5.0).unwrap();
    assert!(!poles.is_empty());
    for r in &poles {
        assert!(r.residual < 1e-9);
    }
}

#[test]
fn separated_case_has_only_embedded_eigenvalues() {
    let p = GpiParams::intermediate(c(2.0, 0.0));
    let ch = Channel::default();
    let region = SearchRegion::new(0.1, 40.0, -2.0, -1e-4).unwrap();
    assert!(find_poles_in(&p, &ch, &region, &PoleSearch::default()).unwrap().is_empty());
    let roots = real_axis_roots(&p, &ch, 40.0).unwrap();
    assert!(roots.len() >= 10);
    for k in roots {
        assert!(det_lambda(&p, &ch, c(k, 0.0)).unwrap().norm() < 1e-10);
    }
}

#[test]
fn region_must_avoid_origin_disc() {
    let region = SearchRegion::new(1e-5, 10.0, -1.0, 0.0).unwrap();
    assert!(find_poles_in(&GpiParams::delta(5.0), &Channel::default(), &region, &PoleSearch::default()).is_err());
}
