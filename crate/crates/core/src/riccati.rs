//! Riccati–Bessel `S_l(z) = z j_l(z)` and Riccati–Hankel `ξ_l(z) = z h⁽¹⁾_l(z)`
//! of complex argument.
//!
//! Both are elementary: `ξ_l(z) = e^{iz} P_l(1/z)` with a polynomial `P_l` of
//! degree `l`, and `S_l = (ξ_l + ξ⁽²⁾_l)/2` with `ξ⁽²⁾_l(z) = e^{−iz} Q_l(1/z)`.
//! The polynomial parts obey the same three-term recurrence as the functions
//! themselves and are generated upward. Where `S_l` is the minimal solution
//! (`|z| ≲ l`) it is summed from its ascending series instead.
//!
//! For large `|Im z|` the exponentials overflow long before the functions lose
//! accuracy, so every function is also available in [`Scaled`] form.

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Partial-wave channel: angular momentum `l` (order `ν = l + 1/2`) on a sphere
/// of radius `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    pub l: u32,
    pub radius: f64,
}

impl Channel {
    pub fn new(l: u32, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sphere radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { l, radius })
    }

    /// Cylinder-function order `ν = l + 1/2`.
    pub fn nu(&self) -> f64 {
        self.l as f64 + 0.5
    }
}

impl Default for Channel {
    fn default() -> Self {
        Self { l: 0, radius: 1.0 }
    }
}

/// A function value and its derivative with respect to the complex argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueAndDerivative {
    pub value: Complex64,
    pub derivative: Complex64,
}

impl ValueAndDerivative {
    fn new(value: Complex64, derivative: Complex64) -> Self {
        Self { value, derivative }
    }

    fn scale(self, factor: Complex64) -> Self {
        Self::new(self.value * factor, self.derivative * factor)
    }
}

/// `true value = mantissa · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: ValueAndDerivative,
    pub log_scale: f64,
}

impl Scaled {
    pub fn unscaled(&self) -> ValueAndDerivative {
        let f = self.log_scale.exp();
        ValueAndDerivative::new(self.mantissa.value * f, self.mantissa.derivative * f)
    }
}

/// Polynomial parts of the two Riccati–Hankel functions and their derivatives:
/// `ξ⁽¹⁾ = e^{iz} p`, `ξ⁽¹⁾′ = e^{iz} pd`, `ξ⁽²⁾ = e^{−iz} q`, `ξ⁽²⁾′ = e^{−iz} qd`.
#[derive(Debug, Clone, Copy)]
struct HankelParts {
    p: Complex64,
    pd: Complex64,
    q: Complex64,
    qd: Complex64,
}

fn hankel_parts(l: u32, z: Complex64) -> HankelParts {
    let h = hankel_parts_upward(l, z);
    if z.im == 0.0 {
        return h;
    }
    let Some(s) = accurate_series(l, z) else {
        return h;
    };
    // Off the real axis and for l ≳ |z| the polynomial belonging to the
    // exponentially growing Hankel function is a minimal solution of the
    // recurrence and loses digits. It is rebuilt from the series for S_l and
    // the other, dominant polynomial via 2S = e^{iz}P + e^{−iz}Q.
    if z.im < 0.0 {
        let e = (-I * z).exp();
        let e2 = e * e;
        HankelParts {
            p: 2.0 * e * s.value - e2 * h.q,
            pd: 2.0 * e * s.derivative - e2 * h.qd,
            ..h
        }
    } else {
        let e = (I * z).exp();
        let e2 = e * e;
        HankelParts {
            q: 2.0 * e * s.value - e2 * h.p,
            qd: 2.0 * e * s.derivative - e2 * h.pd,
            ..h
        }
    }
}

fn hankel_parts_upward(l: u32, z: Complex64) -> HankelParts {
    let one = Complex64::new(1.0, 0.0);
    let inv_z = z.inv();
    let (p0, q0) = (-I, I);
    if l == 0 {
        return HankelParts {
            p: p0,
            pd: one,
            q: q0,
            qd: one,
        };
    }
    let (mut p_prev, mut p) = (p0, -(one + I * inv_z));
    let (mut q_prev, mut q) = (q0, -(one - I * inv_z));
    for m in 1..l {
        let c = (2 * m + 1) as f64 * inv_z;
        let p_next = c * p - p_prev;
        let q_next = c * q - q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    // f′_l = f_{l−1} − (l/z) f_l
    let lz = l as f64 * inv_z;
    HankelParts {
        p,
        pd: p_prev - lz * p,
        q,
        qd: q_prev - lz * q,
    }
}

/// Largest `|z|` for which the ascending series is attempted; beyond it the
/// individual terms overflow.
const SERIES_MAX_ABS: f64 = 600.0;

/// Accepted ratio `Σ|term| / |sum|` of the ascending series outside
/// `|z| < l + 1`.
const SERIES_MAX_LOSS: f64 = 1e3;

/// The ascending series for `S_l`, if it is free of serious cancellation.
///
/// It is always used for `|z| < l + 1`, where `S_l` is the minimal solution of
/// the recurrence. Further out its cancellation grows like `e^{|z| − |Im z|}`,
/// so it is tried only close to the imaginary axis and kept only if the
/// measured loss is small.
fn accurate_series(l: u32, z: Complex64) -> Option<ValueAndDerivative> {
    if l == 0 {
        return None;
    }
    let r = z.norm();
    if r < l as f64 + 1.0 {
        return Some(s_series(l, z).0);
    }
    if r >= SERIES_MAX_ABS || r - z.im.abs() > 8.0 {
        return None;
    }
    let (s, loss) = s_series(l, z);
    (loss < SERIES_MAX_LOSS).then_some(s)
}

/// `S_l(z) = z^{l+1}/(2l+1)!! · Σ_k (−z²/2)^k / (k! (2l+3)(2l+5)…(2l+2k+1))`,
/// returned with the cancellation ratio `Σ|term| / |Σ term|`.
fn s_series(l: u32, z: Complex64) -> (ValueAndDerivative, f64) {
    let mut lead = Complex64::new(1.0, 0.0);
    for j in 0..=l {
        lead *= z / (2 * j + 1) as f64;
    }
    let w = -z * z / 2.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut dsum = term * (l + 1) as f64;
    let mut abs_sum = 1.0;
    for k in 1..2000u32 {
        term *= w / (k as f64 * (2 * l + 2 * k + 1) as f64);
        sum += term;
        abs_sum += term.norm();
        dsum += term * (l + 1 + 2 * k) as f64;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    (ValueAndDerivative::new(lead * sum, lead / z * dsum), abs_sum / sum.norm())
}

/// `S_l(z)` and `S′_l(z)` in scaled form.
pub fn riccati_s_scaled(l: u32, z: Complex64) -> Scaled {
    if let Some(s) = accurate_series(l, z) {
        return Scaled {
            mantissa: s,
            log_scale: 0.0,
        };
    }
    if l == 0 && z.im.abs() < 20.0 {
        return Scaled {
            mantissa: ValueAndDerivative::new(z.sin(), z.cos()),
            log_scale: 0.0,
        };
    }
    let h = hankel_parts(l, z);
    let s = z.im.abs();
    let e1 = Complex64::from_polar((-z.im - s).exp(), z.re);
    let e2 = Complex64::from_polar((z.im - s).exp(), -z.re);
    Scaled {
        mantissa: ValueAndDerivative::new((e1 * h.p + e2 * h.q) / 2.0, (e1 * h.pd + e2 * h.qd) / 2.0),
        log_scale: s,
    }
}

/// Riccati–Bessel function `S_l(z) = z j_l(z)` and its derivative.
///
/// Entire in `z`. Overflows to infinity once `|Im z|` exceeds about 709; use
/// [`riccati_s_scaled`] there.
pub fn riccati_s(l: u32, z: Complex64) -> ValueAndDerivative {
    riccati_s_scaled(l, z).unscaled()
}

/// `ξ_l(z)` and `ξ′_l(z)` in scaled form, `log_scale = −Im z`.
pub fn riccati_xi_scaled(l: u32, z: Complex64) -> Result<Scaled> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginSingularity);
    }
    let h = hankel_parts(l, z);
    let phase = Complex64::from_polar(1.0, z.re);
    Ok(Scaled {
        mantissa: ValueAndDerivative::new(h.p, h.pd).scale(phase),
        log_scale: -z.im,
    })
}

/// Riccati–Hankel function `ξ_l(z) = z h⁽¹⁾_l(z)` and its derivative.
pub fn riccati_xi(l: u32, z: Complex64) -> Result<ValueAndDerivative> {
    riccati_xi_scaled(l, z).map(|s| s.unscaled())
}

/// `W(z) = S_l ξ′_l − S′_l ξ_l`, identically `i`.
///
/// Evaluated along whichever of two algebraically equal routes cancels less:
/// directly from `S_l` and `ξ_l`, or as `½ W(ξ⁽²⁾_l, ξ_l)` after splitting
/// `S_l = (ξ_l + ξ⁽²⁾_l)/2`. In the lower half-plane `S_l` and `ξ_l` both grow
/// like `e^{|Im z|}` and the direct products cancel catastrophically, while the
/// split route multiplies a decaying by a growing factor.
pub fn wronskian(l: u32, z: Complex64) -> Result<Complex64> {
    let x = riccati_xi_scaled(l, z)?;
    let s = riccati_s_scaled(l, z);
    let (sm, xm) = (s.mantissa, x.mantissa);
    let direct_log = s.log_scale
        + x.log_scale
        + (sm.value.norm() * xm.derivative.norm() + sm.derivative.norm() * xm.value.norm()).ln();

    let h = hankel_parts(l, z);
    let split_log = ((h.q.norm() * h.pd.norm() + h.qd.norm() * h.p.norm()) / 2.0).ln();

    if direct_log <= split_log {
        let w = sm.value * xm.derivative - sm.derivative * xm.value;
        Ok(w * (s.log_scale + x.log_scale).exp())
    } else {
        Ok((h.q * h.pd - h.qd * h.p) / 2.0)
    }
}
