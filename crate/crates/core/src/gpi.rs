//! Generalized point interactions on the sphere `r = R`.
//!
//! Three equivalent encodings of the same four-parameter family of matching
//! conditions are provided:
//!
//! * [`GpiParams`]: `(α, β, γ)` with
//!   `f′(R+) − f′(R−) = α/2 (f(R+) + f(R−)) + γ/2 (f′(R+) + f′(R−))` and
//!   `f(R+) − f(R−) = −γ̄/2 (f(R+) + f(R−)) + β/2 (f′(R+) + f′(R−))`;
//! * [`UnitaryForm`]: `(U − I)F + i(U + I)F′ = 0` with
//!   `F = (f(R+), f(R−))` and `F′ = (f′(R+), −f′(R−))`, the boundary
//!   derivatives taken along the outward normal of each side;
//! * [`TransferForm`]: `(f(R+), f′(R+)) = Λ (f(R−), f′(R−))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Tolerance of the separation test `αβ + |γ|² = 4, Im γ = 0`.
pub const SEPARATION_TOL: f64 = 1e-12;

/// Tolerance of the zero tests on `det(U + I)` and `σ₁Uᵀσ₁ − U`.
pub const UNITARY_CLASS_TOL: f64 = 1e-10;

/// Interaction strengths: `alpha` has dimension 1/length, `beta` length,
/// `gamma` is dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GpiParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: Complex64,
}

impl GpiParams {
    pub fn new(alpha: f64, beta: f64, gamma: Complex64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn free() -> Self {
        Self::new(0.0, 0.0, Complex64::new(0.0, 0.0))
    }

    pub fn delta(alpha: f64) -> Self {
        Self::new(alpha, 0.0, Complex64::new(0.0, 0.0))
    }

    pub fn delta_prime(beta: f64) -> Self {
        Self::new(0.0, beta, Complex64::new(0.0, 0.0))
    }

    pub fn intermediate(gamma: Complex64) -> Self {
        Self::new(0.0, 0.0, gamma)
    }

    /// `αβ + |γ|²`, the combination that recurs in every formula.
    pub fn coupling_product(&self) -> f64 {
        self.alpha * self.beta + self.gamma.norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.beta.is_finite() && self.gamma.is_finite()
    }

    pub fn class(&self) -> GpiClass {
        classify(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GpiClass {
    Delta,
    Intermediate,
    DeltaPrime,
}

impl GpiClass {
    pub fn label(&self) -> &'static str {
        match self {
            GpiClass::Delta => "delta",
            GpiClass::Intermediate => "intermediate",
            GpiClass::DeltaPrime => "delta-prime",
        }
    }
}

impl std::fmt::Display for GpiClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// `U = e^{iξ} [[u₁, u₂], [−ū₂, ū₁]]`, `ξ ∈ [0, π)`, `|u₁|² + |u₂|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryForm {
    pub xi: f64,
    pub u1: Complex64,
    pub u2: Complex64,
}

impl UnitaryForm {
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let phase = Complex64::from_polar(1.0, self.xi);
        [
            [phase * self.u1, phase * self.u2],
            [-phase * self.u2.conj(), phase * self.u1.conj()],
        ]
    }

    pub fn norm_defect(&self) -> f64 {
        (self.u1.norm_sqr() + self.u2.norm_sqr() - 1.0).abs()
    }
}

/// `Λ = e^{iχ} [[a, b], [c, d]]`, `χ ∈ [0, π)`, `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferForm {
    pub chi: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl TransferForm {
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let phase = Complex64::from_polar(1.0, self.chi);
        [
            [phase * self.a, phase * self.b],
            [phase * self.c, phase * self.d],
        ]
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// Function values and one-sided radial derivatives at `r = R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub f_plus: Complex64,
    pub f_minus: Complex64,
    pub fp_plus: Complex64,
    pub fp_minus: Complex64,
}

impl BoundaryData {
    pub fn new(f_plus: Complex64, f_minus: Complex64, fp_plus: Complex64, fp_minus: Complex64) -> Self {
        Self {
            f_plus,
            f_minus,
            fp_plus,
            fp_minus,
        }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.f_plus, self.f_minus, self.fp_plus, self.fp_minus]
    }

    fn from_array(v: [Complex64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

/// Class from the stored values; the zero tests are exact.
pub fn classify(p: &GpiParams) -> GpiClass {
    if p.beta != 0.0 {
        GpiClass::DeltaPrime
    } else if p.gamma.re != 0.0 {
        GpiClass::Intermediate
    } else {
        GpiClass::Delta
    }
}

/// `αβ + |γ|² = 4` and `Im γ = 0`, each within [`SEPARATION_TOL`].
pub fn is_separated(p: &GpiParams) -> bool {
    (p.coupling_product() - 4.0).abs() <= SEPARATION_TOL && p.gamma.im.abs() <= SEPARATION_TOL
}

fn unitary_denominator(p: &GpiParams) -> f64 {
    let x = p.coupling_product();
    (x * x + 4.0 * p.alpha * p.alpha + 4.0 * p.beta * p.beta + 8.0 * p.gamma.norm_sqr() + 16.0).sqrt()
}

pub fn to_unitary(p: &GpiParams) -> UnitaryForm {
    let x = p.coupling_product();
    let den = unitary_denominator(p);
    // e^{iξ} = (2(α − β) + i(αβ + |γ|² + 4)) / den on the full circle; the
    // fold into [0, π) flips the sign of u₁ and u₂.
    let raw_xi = (x + 4.0).atan2(2.0 * (p.alpha - p.beta));
    let u1 = Complex64::new(-2.0 * (p.alpha + p.beta), 4.0 * p.gamma.re) / den;
    let u2 = I * Complex64::new(x - 4.0, -4.0 * p.gamma.im) / den;
    let (xi, sign) = fold_phase(raw_xi);
    UnitaryForm {
        xi,
        u1: u1 * sign,
        u2: u2 * sign,
    }
}

/// Reduces an angle to `[0, π)`; the second component is the sign `±1`
/// with `e^{iθ} = sign · e^{iχ}`.
fn fold_phase(theta: f64) -> (f64, f64) {
    let mut chi = theta.rem_euclid(PI) + 0.0;
    if chi >= PI {
        chi = 0.0;
    }
    let turns = ((theta - chi) / PI).round() as i64;
    let sign = if turns.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    (chi, sign)
}

/// Transfer matrix `Λ = M / (4 − αβ − |γ|² − 4i Im γ)` with the real matrix
/// `M = [[αβ+|γ|²+4−4Re γ, 4β], [4α, αβ+|γ|²+4+4Re γ]]`.
pub fn to_transfer(p: &GpiParams) -> Result<TransferForm> {
    let x = p.coupling_product();
    let den = Complex64::new(4.0 - x, -4.0 * p.gamma.im);
    if den.norm() <= SEPARATION_TOL {
        return Err(Error::SeparatedInteraction);
    }
    let (chi, sign) = fold_phase(-den.arg());
    let scale = sign / den.norm();
    // αβ + |γ|² + 4 ∓ 4Re γ written as a sum of squares, free of cancellation
    // near the separation locus.
    let ab = p.alpha * p.beta;
    let im2 = p.gamma.im * p.gamma.im;
    let g = p.gamma.re;
    Ok(TransferForm {
        chi,
        a: scale * (ab + (g - 2.0) * (g - 2.0) + im2),
        b: scale * 4.0 * p.beta,
        c: scale * 4.0 * p.alpha,
        d: scale * (ab + (g + 2.0) * (g + 2.0) + im2),
    })
}

pub fn classify_unitary(u: &UnitaryForm) -> GpiClass {
    let m = u.matrix();
    let det_u_plus_i = (m[0][0] + ONE) * (m[1][1] + ONE) - m[0][1] * m[1][0];
    if det_u_plus_i.norm() > UNITARY_CLASS_TOL {
        return GpiClass::DeltaPrime;
    }
    // σ₁Uᵀσ₁ swaps the diagonal and keeps the off-diagonal entries.
    if (m[0][0] - m[1][1]).norm() <= UNITARY_CLASS_TOL {
        GpiClass::Delta
    } else {
        GpiClass::Intermediate
    }
}

/// A unitarily equivalent interaction with `Im γ = 0`.
///
/// The gauge `f → e^{iφ} f` inside the sphere multiplies `Λ` by `e^{−iφ}`;
/// choosing `φ = χ` leaves the real matrix `±(a, b, c, d)`, which is then
/// mapped back to `(α, β, γ)`.
pub fn canonical_real_gamma(p: &GpiParams) -> GpiParams {
    if p.gamma.im == 0.0 {
        return *p;
    }
    let t = match to_transfer(p) {
        Ok(t) => t,
        // Im γ ≠ 0 keeps the transfer denominator away from zero.
        Err(_) => return *p,
    };
    let (mut a, mut b, mut c, mut d) = (t.a, t.b, t.c, t.d);
    // Real Λ = −M/N with N = αβ + γ² − 4, so a + d = −2 − 16/N; the gauge by
    // π picks the sign for which N is finite.
    if (a + d + 2.0).abs() <= 1e-9 * (1.0 + a.abs() + d.abs()) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
    }
    let n = -16.0 / (a + d + 2.0);
    GpiParams {
        alpha: -n * c / 4.0,
        beta: -n * b / 4.0,
        gamma: Complex64::new(-n * (d - a) / 8.0, 0.0),
    }
}

/// Hejčík–Cheon scale-invariant coupling
/// `γ = (h − 1/h + 2i sin φ) / (h + 1/h + 2cos φ)`, `α = β = 0`.
pub fn from_scale_invariant(h: f64, phi: f64) -> Result<GpiParams> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("h must be positive, got {h}")));
    }
    let den = h + h.recip() + 2.0 * phi.cos();
    if den.abs() <= 1e-14 {
        return Err(Error::DegenerateDenominator);
    }
    let gamma = Complex64::new(h - h.recip(), 2.0 * phi.sin()) / den;
    Ok(GpiParams::intermediate(gamma))
}

/// Defect of a matching condition evaluated on boundary data.
pub trait BoundaryCondition {
    /// Euclidean norm of the defect vector; zero iff `data` satisfies the
    /// condition.
    fn residual(&self, data: &BoundaryData) -> f64;
}

impl BoundaryCondition for GpiParams {
    fn residual(&self, data: &BoundaryData) -> f64 {
        let rows = gpi_rows(self);
        let v = data.as_array();
        rows.iter()
            .map(|row| row.iter().zip(v.iter()).map(|(c, x)| c * x).sum::<Complex64>().norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl BoundaryCondition for UnitaryForm {
    fn residual(&self, data: &BoundaryData) -> f64 {
        let u = self.matrix();
        let f = [data.f_plus, data.f_minus];
        let fp = [data.fp_plus, -data.fp_minus];
        (0..2)
            .map(|i| {
                let mut acc = -f[i] + I * fp[i];
                for j in 0..2 {
                    acc += u[i][j] * (f[j] + I * fp[j]);
                }
                acc.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl BoundaryCondition for TransferForm {
    fn residual(&self, data: &BoundaryData) -> f64 {
        let l = self.matrix();
        let lhs = [data.f_plus, data.fp_plus];
        let rhs = [data.f_minus, data.fp_minus];
        (0..2)
            .map(|i| (lhs[i] - l[i][0] * rhs[0] - l[i][1] * rhs[1]).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

pub fn boundary_residual<B: BoundaryCondition + ?Sized>(form: &B, data: &BoundaryData) -> f64 {
    form.residual(data)
}

/// Coefficient rows of the `(α, β, γ)` matching conditions acting on
/// `(f(R+), f(R−), f′(R+), f′(R−))`.
fn gpi_rows(p: &GpiParams) -> [[Complex64; 4]; 2] {
    let half_alpha = Complex64::new(p.alpha / 2.0, 0.0);
    let half_beta = Complex64::new(p.beta / 2.0, 0.0);
    let half_gamma = p.gamma / 2.0;
    let half_gamma_bar = p.gamma.conj() / 2.0;
    [
        [-half_alpha, -half_alpha, ONE - half_gamma, -ONE - half_gamma],
        [ONE + half_gamma_bar, -ONE + half_gamma_bar, -half_beta, -half_beta],
    ]
}

/// Two linearly independent boundary-data vectors satisfying the `(α, β, γ)`
/// conditions.
///
/// The two pivot unknowns are chosen from the best-conditioned 2×2 minor of
/// the condition matrix; the remaining two are set to unit vectors.
pub fn boundary_basis(p: &GpiParams) -> [BoundaryData; 2] {
    let rows = gpi_rows(p);
    let mut best = (0usize, 1usize, 0.0f64);
    for i in 0..4 {
        for j in (i + 1)..4 {
            let det = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i];
            if det.norm() > best.2 {
                best = (i, j, det.norm());
            }
        }
    }
    let (pi, pj, _) = best;
    let free: Vec<usize> = (0..4).filter(|&c| c != pi && c != pj).collect();
    let det = rows[0][pi] * rows[1][pj] - rows[0][pj] * rows[1][pi];
    let solve = |free_col: usize| {
        // rows · x = 0 with x[free_col] = 1: pivot block · (x_pi, x_pj) = −column.
        let r0 = -rows[0][free_col];
        let r1 = -rows[1][free_col];
        let xi = (r0 * rows[1][pj] - rows[0][pj] * r1) / det;
        let xj = (rows[0][pi] * r1 - r0 * rows[1][pi]) / det;
        let mut v = [Complex64::new(0.0, 0.0); 4];
        v[free_col] = ONE;
        v[pi] = xi;
        v[pj] = xj;
        BoundaryData::from_array(v)
    };
    [solve(free[0]), solve(free[1])]
}
