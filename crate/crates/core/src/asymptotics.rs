//! High-energy pole formulas for the three interaction classes and the
//! comparison of computed poles against them.
//!
//! * δ-type: `Re k_n = (2nπ + lπ + 3π/2)/(2R)` (`π/2` for `α < 0`) and
//!   `Im k_n = −ln(2|Re k_n|/|α|)/(2R)`; the poles sink logarithmically.
//! * intermediate: `k_n = (πn + πl/2 + π/2)/R − (i/2R) ln((1 + |γ|²/4)/|Re γ|)`
//!   (`3π/2` for `Re γ < 0`); the imaginary part tends to a constant.
//! * δ′-type: `k_n = k⁰_n − c/k⁰_n − i b/(βRk⁰_n)²` with
//!   `k⁰_n = (πn + π(l + 1)/2)/R`; the poles approach the real axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gpi::{canonical_real_gamma, is_separated, GpiClass, GpiParams};
use crate::polefinder::Resonance;
use crate::riccati::Channel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionOrder {
    Leading,
    NextOrder,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrediction {
    pub index: i64,
    pub k_pred: Complex64,
    pub order: PredictionOrder,
    /// Size of the neglected remainder at this `n`, up to a constant.
    pub error_scale: f64,
}

/// Outcome of [`predict`]: couplings equivalent to the free particle have no
/// resonances at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prediction {
    Pole(AsymptoticPrediction),
    NoResonances,
}

impl Prediction {
    pub fn pole(&self) -> Option<&AsymptoticPrediction> {
        match self {
            Prediction::Pole(a) => Some(a),
            Prediction::NoResonances => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub index: i64,
    pub k_found: Complex64,
    pub k_pred: Complex64,
    pub abs_err: f64,
    pub scaled_err: f64,
}

fn check_index(n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("resonance index must be >= 1, got {n}")));
    }
    Ok(())
}

pub fn predict_delta(n: i64, ch: &Channel, alpha: f64) -> Result<AsymptoticPrediction> {
    check_index(n)?;
    if alpha == 0.0 {
        return Err(Error::ZeroCoupling);
    }
    let r = ch.radius;
    let phase = if alpha > 0.0 { 1.5 * PI } else { 0.5 * PI };
    let re = (2.0 * n as f64 * PI + ch.l as f64 * PI + phase) / (2.0 * r);
    let im = -(2.0 * re.abs() / alpha.abs()).ln() / (2.0 * r);
    let nf = n as f64;
    Ok(AsymptoticPrediction {
        index: n,
        k_pred: Complex64::new(re, im),
        order: PredictionOrder::Leading,
        error_scale: nf.ln().max(1.0) / nf,
    })
}

pub fn predict_intermediate(n: i64, ch: &Channel, gamma: Complex64) -> Result<AsymptoticPrediction> {
    check_index(n)?;
    let g = gamma.re;
    if g == 0.0 {
        return Err(Error::NotIntermediate);
    }
    let r = ch.radius;
    let phase = if g > 0.0 { 0.5 * PI } else { 1.5 * PI };
    let re = (PI * n as f64 + PI * ch.l as f64 / 2.0 + phase) / r;
    let im = -((1.0 + gamma.norm_sqr() / 4.0) / g.abs()).ln() / (2.0 * r);
    Ok(AsymptoticPrediction {
        index: n,
        k_pred: Complex64::new(re, im),
        order: PredictionOrder::Leading,
        error_scale: 1.0 / n as f64,
    })
}

pub fn predict_delta_prime(n: i64, ch: &Channel, p: &GpiParams) -> Result<AsymptoticPrediction> {
    check_index(n)?;
    if p.beta == 0.0 {
        return Err(Error::NotDeltaPrime);
    }
    let r = ch.radius;
    let l = ch.l as f64;
    let x = p.coupling_product();
    let g = p.gamma.re;
    let k0 = PI * n as f64 / r + PI * (l + 1.0) / (2.0 * r);
    let shift = (l * l + l) / (2.0 * r * r) + (g - 1.0 - x / 4.0) / (p.beta * r);
    let bracket = 1.0 + p.gamma.norm_sqr() / 2.0 - g * g - p.alpha * p.beta / 2.0 + x * x / 16.0;
    let br = p.beta * r * k0;
    Ok(AsymptoticPrediction {
        index: n,
        k_pred: Complex64::new(k0 - shift / k0, -bracket / (br * br)),
        order: PredictionOrder::NextOrder,
        error_scale: (n as f64).powi(-3),
    })
}

/// Class-appropriate prediction for the `n`-th pole.
///
/// δ-type couplings with `Im γ ≠ 0` are first replaced by their real-γ
/// equivalent, which is again δ-type with `α′ = 4α/((Im γ)² + 4)`.
pub fn predict(p: &GpiParams, ch: &Channel, n: i64) -> Result<Prediction> {
    check_index(n)?;
    if is_separated(p) {
        return Err(Error::Separated);
    }
    let pred = match p.class() {
        GpiClass::DeltaPrime => predict_delta_prime(n, ch, p)?,
        GpiClass::Intermediate => predict_intermediate(n, ch, p.gamma)?,
        GpiClass::Delta => {
            let alpha = canonical_real_gamma(p).alpha;
            if alpha.abs() <= 1e-12 * (1.0 + p.alpha.abs() + p.gamma.norm()) {
                return Ok(Prediction::NoResonances);
            }
            predict_delta(n, ch, alpha)?
        }
    };
    Ok(Prediction::Pole(pred))
}

/// One row per pole that has a prediction; poles with index below 1 and
/// couplings without a lattice are skipped.
pub fn compare(poles: &[Resonance], p: &GpiParams, ch: &Channel) -> Vec<ComparisonRow> {
    poles
        .iter()
        .filter_map(|pole| {
            let pred = *predict(p, ch, pole.index).ok()?.pole()?;
            let abs_err = (pole.k - pred.k_pred).norm();
            Some(ComparisonRow {
                index: pole.index,
                k_found: pole.k,
                k_pred: pred.k_pred,
                abs_err,
                scaled_err: abs_err / pred.error_scale,
            })
        })
        .collect()
}
