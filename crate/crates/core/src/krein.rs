//! Deficiency solutions at the sphere, Krein coefficients and the pole
//! determinant.
//!
//! With `z = kR` the deficiency solutions reduce to products of Riccati
//! functions:
//!
//! ```text
//! Φ⁽¹⁾(R)   = (i/k) S_l(z) ξ_l(z)
//! Φ⁽²⁾(R−)  = i S_l(z) ξ′_l(z),   Φ⁽²⁾(R+) = i S′_l(z) ξ_l(z)
//! Φ′⁽²⁾(R)  = i k S′_l(z) ξ′_l(z)   (the same from both sides)
//! ```
//!
//! `Φ⁽²⁾` jumps by exactly 1 across the sphere and its derivative is
//! continuous, so the averaged value `Φ⁽²⁾(R̄)` and the derivative are
//! unambiguous. The expressions are evaluated on the whole punctured plane;
//! resonances live in `Im k < 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gpi::{is_separated, GpiParams};
use crate::riccati::{riccati_s, riccati_s_scaled, riccati_xi_scaled, Channel};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Tolerance below which `det λ` is treated as vanishing in
/// [`krein_coefficients`].
pub const POLE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiBoundaryValues {
    /// `Φ⁽¹⁾_k(R)`, continuous at the sphere.
    pub phi1_at_r: Complex64,
    /// `Φ⁽²⁾_k(R̄)`, the mean of the one-sided values.
    pub phi2_avg: Complex64,
    /// `Φ′⁽²⁾_k(R)`.
    pub phi2_prime: Complex64,
    pub k: Complex64,
}

pub fn phi_boundary(ch: &Channel, k: Complex64) -> Result<PhiBoundaryValues> {
    if k == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginSingularity);
    }
    let z = k * ch.radius;
    let s = riccati_s_scaled(ch.l, z);
    let x = riccati_xi_scaled(ch.l, z)?;
    let scale = (s.log_scale + x.log_scale).exp();
    let (s, x) = (s.mantissa, x.mantissa);
    let inner = I * s.value * x.derivative * scale;
    let outer = I * s.derivative * x.value * scale;
    Ok(PhiBoundaryValues {
        phi1_at_r: I / k * s.value * x.value * scale,
        phi2_avg: (inner + outer) / 2.0,
        phi2_prime: I * k * s.derivative * x.derivative * scale,
        k,
    })
}

fn det_from_phi(p: &GpiParams, phi: &PhiBoundaryValues) -> Complex64 {
    -1.0 - p.alpha * phi.phi1_at_r + p.beta * phi.phi2_prime
        - 2.0 * p.gamma.re * phi.phi2_avg
        - p.coupling_product() / 4.0
}

/// Pole determinant
/// `det λ = −1 − αΦ⁽¹⁾(R) + βΦ′⁽²⁾(R) − (γ + γ̄)Φ⁽²⁾(R̄) − (αβ + |γ|²)/4`.
pub fn det_lambda(p: &GpiParams, ch: &Channel, k: Complex64) -> Result<Complex64> {
    Ok(det_from_phi(p, &phi_boundary(ch, k)?))
}

/// `e^{−ikR} det λ(k)`: the same zeros, with the growth of the outgoing
/// exponential split evenly between the two competing terms.
pub fn det_lambda_balanced(p: &GpiParams, ch: &Channel, k: Complex64) -> Result<Complex64> {
    let d = det_lambda(p, ch, k)?;
    Ok((-I * k * ch.radius).exp() * d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KreinCoefficients {
    /// `λ_mn`, row `m`, column `n` (zero-based).
    pub lambda: [[Complex64; 2]; 2],
    pub det_lambda: Complex64,
}

/// Numerators of the Krein coefficients, `λ_mn · det λ`.
pub fn krein_numerators(p: &GpiParams, phi: &PhiBoundaryValues) -> [[Complex64; 2]; 2] {
    let x = p.coupling_product();
    [
        [p.alpha - phi.phi2_prime * x, p.gamma + phi.phi2_avg * x],
        [p.gamma.conj() + phi.phi2_avg * x, -p.beta - phi.phi1_at_r * x],
    ]
}

pub fn krein_coefficients(p: &GpiParams, ch: &Channel, k: Complex64) -> Result<KreinCoefficients> {
    let phi = phi_boundary(ch, k)?;
    let det = det_from_phi(p, &phi);
    if det.norm() <= POLE_TOL {
        return Err(Error::PoleAtK(k));
    }
    let num = krein_numerators(p, &phi);
    Ok(KreinCoefficients {
        lambda: [
            [num[0][0] / det, num[0][1] / det],
            [num[1][0] / det, num[1][1] / det],
        ],
        det_lambda: det,
    })
}

/// Interior factor of `det λ` for a separated interaction.
///
/// On the separation locus `det λ = −(i/k)(pS + qkS′)(rξ + skξ′)` with
/// `(p, q) ∝ (α, 2 + γ) ∝ (2 − γ, β)`. The interior factor is real on the real
/// axis and carries every real zero; the exterior factor has none.
fn interior_factor(p: &GpiParams) -> (f64, f64) {
    let g = p.gamma.re;
    let first = (p.alpha, 2.0 + g);
    let second = (2.0 - g, p.beta);
    if first.0.hypot(first.1) >= second.0.hypot(second.1) {
        first
    } else {
        second
    }
}

/// Momenta `k ∈ (10⁻³/R, k_max]` of the embedded eigenvalues of a separated
/// interaction, by sign-change bisection on the real interior factor.
pub fn real_axis_roots(p: &GpiParams, ch: &Channel, k_max: f64) -> Result<Vec<f64>> {
    if !is_separated(p) {
        return Err(Error::NotSeparated);
    }
    let (pc, qc) = interior_factor(p);
    let r = ch.radius;
    let g = |k: f64| {
        let s = riccati_s(ch.l, Complex64::new(k * r, 0.0));
        pc * s.value.re + qc * k * s.derivative.re
    };
    let k_min = 1e-3 / r;
    if !(k_max > k_min) {
        return Ok(Vec::new());
    }
    let step = 0.02 / r;
    let n = ((k_max - k_min) / step).ceil() as usize;
    let mut roots = Vec::new();
    let mut a = k_min;
    let mut ga = g(a);
    for i in 1..=n {
        let b = (k_min + i as f64 * step).min(k_max);
        let gb = g(b);
        if gb == 0.0 {
            roots.push(b);
        } else if ga != 0.0 && ga.signum() != gb.signum() {
            roots.push(bisect(&g, a, b, ga));
        }
        a = b;
        ga = gb;
    }
    Ok(roots)
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
