//! Zeros of `det λ` in the fourth quadrant of the momentum plane.
//!
//! Zeros are counted with the argument principle over rectangles, isolated by
//! recursive bisection until every cell holds at most one, and polished by
//! damped Newton iteration started from the cell centroid. All evaluations go
//! through [`det_lambda_balanced`], whose phase varies at a bounded rate along
//! horizontal edges deep in the lower half-plane.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gpi::{canonical_real_gamma, GpiClass, GpiParams};
use crate::krein::{det_lambda, det_lambda_balanced};
use crate::riccati::Channel;

/// Split positions tried, in order, when a bisection line passes too close
/// to a zero.
const SPLIT_FRACTIONS: [f64; 7] = [0.5, 0.45, 0.55, 0.4, 0.6, 0.35, 0.65];

/// Count-one cells are refined once their longer side is below this many
/// multiples of `1/R`.
const SEED_CELL_SIZE: f64 = 0.5;

/// Boundary sampling step in units of `1/R`.
const BASE_STEP: f64 = 0.25;

/// Closed rectangle `[re_min, re_max] × [im_min, im_max]` in the fourth
/// quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl SearchRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidRegion("bounds must be finite".into()));
        }
        if !(re_min > 0.0 && re_min < re_max) {
            return Err(Error::InvalidRegion(format!(
                "need 0 < re_min < re_max, got [{re_min}, {re_max}]"
            )));
        }
        if !(im_min < im_max && im_max <= 0.0) {
            return Err(Error::InvalidRegion(format!(
                "need im_min < im_max <= 0, got [{im_min}, {im_max}]"
            )));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn centroid(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    pub fn contains(&self, k: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&k.re) && (self.im_min..=self.im_max).contains(&k.im)
    }

    /// Grows every side outward by `frac` of the corresponding extent.
    pub fn dilated(&self, frac: f64) -> Self {
        let dw = frac * self.width();
        let dh = frac * self.height();
        Self {
            re_min: self.re_min - dw,
            re_max: self.re_max + dw,
            im_min: self.im_min - dh,
            im_max: self.im_max + dh,
        }
    }

    /// Cuts across the longer side at fraction `t` of its length.
    pub fn split(&self, t: f64) -> (Self, Self) {
        if self.width() >= self.height() {
            let x = self.re_min + t * self.width();
            (Self { re_max: x, ..*self }, Self { re_min: x, ..*self })
        } else {
            let y = self.im_min + t * self.height();
            (Self { im_max: y, ..*self }, Self { im_min: y, ..*self })
        }
    }

    fn max_side(&self) -> f64 {
        self.width().max(self.height())
    }

    /// Counter-clockwise corners starting at the lower left.
    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }
}

/// Tunables of the pole search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSearch {
    /// Largest accepted `|det λ|` at a returned pole.
    pub residual_tol: f64,
    /// Poles closer than `dedupe_tol · |k|` are merged.
    pub dedupe_tol: f64,
    pub max_depth: usize,
    pub max_newton_steps: usize,
    /// Number of 1% dilations tried when the contour passes through a zero.
    pub max_dilations: usize,
}

impl Default for PoleSearch {
    fn default() -> Self {
        Self {
            residual_tol: 1e-9,
            dedupe_tol: 1e-8,
            max_depth: 40,
            max_newton_steps: 100,
            max_dilations: 5,
        }
    }
}

/// An unindexed zero produced by [`refine`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleCandidate {
    pub k: Complex64,
    /// `|det λ(k)|`.
    pub residual: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    /// Position on the class lattice; may be negative for low-lying poles of
    /// strongly shifted lattices.
    pub index: i64,
    pub k: Complex64,
    pub residual: f64,
    pub channel: Channel,
    pub gpi_class: GpiClass,
}

impl Resonance {
    /// Resonance energy `E = k²` in units where `ħ²/2m = 1`.
    pub fn energy(&self) -> Complex64 {
        self.k * self.k
    }

    /// Energy-plane width `2|Re k · Im k|`.
    pub fn energy_width(&self) -> f64 {
        2.0 * (self.k.re * self.k.im).abs()
    }
}

/// Search floor `−(ln(re_max·R) + 5)/R`, deep enough for the logarithmic
/// descent of δ-type poles.
pub fn default_im_min(ch: &Channel, re_max: f64) -> f64 {
    -((re_max * ch.radius).max(1.0).ln() + 5.0) / ch.radius
}

struct Evaluator<'a> {
    p: &'a GpiParams,
    ch: &'a Channel,
}

impl Evaluator<'_> {
    fn eval(&self, k: Complex64) -> Result<Complex64> {
        let v = det_lambda_balanced(self.p, self.ch, k)?;
        if v == Complex64::new(0.0, 0.0) || !v.is_finite() {
            return Err(Error::BoundaryZero);
        }
        Ok(v)
    }

    /// Total phase change of `f` along the segment `a → b`.
    fn edge_phase(&self, a: Complex64, b: Complex64) -> Result<f64> {
        let len = (b - a).norm();
        let steps = ((len * self.ch.radius / BASE_STEP).ceil() as usize).max(2);
        let min_len = 1e-9 * (1.0 + a.norm());
        let mut total = 0.0;
        let mut za = a;
        let mut fa = self.eval(a)?;
        for i in 1..=steps {
            let zb = if i == steps {
                b
            } else {
                a + (b - a) * (i as f64 / steps as f64)
            };
            let fb = self.eval(zb)?;
            total += self.segment_phase(za, zb, fa, fb, min_len)?;
            za = zb;
            fa = fb;
        }
        Ok(total)
    }

    fn segment_phase(
        &self,
        a: Complex64,
        b: Complex64,
        fa: Complex64,
        fb: Complex64,
        min_len: f64,
    ) -> Result<f64> {
        let whole = (fb * fa.conj()).arg();
        let m = 0.5 * (a + b);
        let fm = self.eval(m)?;
        let d1 = (fm * fa.conj()).arg();
        let d2 = (fb * fm.conj()).arg();
        if d1.abs() < FRAC_PI_4 && d2.abs() < FRAC_PI_4 && (d1 + d2 - whole).abs() < 1e-6 {
            return Ok(d1 + d2);
        }
        if (b - a).norm() < min_len {
            return Err(Error::BoundaryZero);
        }
        Ok(self.segment_phase(a, m, fa, fm, min_len)? + self.segment_phase(m, b, fm, fb, min_len)?)
    }

    fn winding(&self, region: &SearchRegion) -> Result<i64> {
        let c = region.corners();
        let mut total = 0.0;
        for i in 0..4 {
            total += self.edge_phase(c[i], c[(i + 1) % 4])?;
        }
        let turns = total / (2.0 * PI);
        let n = turns.round();
        if (turns - n).abs() > 0.05 {
            return Err(Error::BoundaryZero);
        }
        Ok(n as i64)
    }

    fn count_with_dilation(&self, region: &SearchRegion, retries: usize) -> Result<(i64, SearchRegion)> {
        let mut r = *region;
        for attempt in 0..=retries {
            match self.winding(&r) {
                Ok(n) => return Ok((n, r)),
                Err(Error::BoundaryZero) if attempt < retries => r = r.dilated(0.01),
                Err(e) => return Err(e),
            }
        }
        Err(Error::BoundaryZero)
    }
}

/// Number of zeros of `det λ` inside `region`, counted with multiplicity.
///
/// When a zero sits on the contour the region is dilated by 1% and the count
/// retried, at most five times.
pub fn count_zeros(p: &GpiParams, ch: &Channel, region: &SearchRegion) -> Result<i64> {
    let ev = Evaluator { p, ch };
    Ok(ev.count_with_dilation(region, PoleSearch::default().max_dilations)?.0)
}

/// Damped Newton iteration on the balanced determinant with a central
/// difference derivative.
pub fn refine(p: &GpiParams, ch: &Channel, k0: Complex64) -> Result<PoleCandidate> {
    let s = PoleSearch::default();
    refine_with(p, ch, k0, s.max_newton_steps, s.residual_tol)
}

fn refine_with(
    p: &GpiParams,
    ch: &Channel,
    k0: Complex64,
    max_steps: usize,
    residual_tol: f64,
) -> Result<PoleCandidate> {
    if k0 == Complex64::new(0.0, 0.0) {
        return Err(Error::OriginSingularity);
    }
    let f = |k: Complex64| det_lambda_balanced(p, ch, k);
    let fail = |steps| Error::NonConvergence { seed: k0, steps };
    // The balanced determinant can be small merely because e^{−ikR} is; a
    // stopping point counts as a zero only if det λ itself is small there.
    let finish = |k: Complex64, steps| -> Result<PoleCandidate> {
        let residual = det_lambda(p, ch, k)?.norm();
        if !(residual < residual_tol) {
            return Err(fail(steps));
        }
        Ok(PoleCandidate { k, residual, steps })
    };

    let mut k = k0;
    let mut fk = f(k)?;
    for step in 0..max_steps {
        if fk.norm() < 1e-12 {
            return finish(k, step);
        }
        let scale = k.norm().max(1.0);
        let h = 1e-6 * scale;
        let df = (f(k + h)? - f(k - h)?) / (2.0 * h);
        let delta = fk / df;
        if !delta.is_finite() {
            return Err(fail(step));
        }
        let mut t = 1.0;
        let (mut k_new, mut f_new) = (k - delta, f(k - delta)?);
        while !(f_new.norm() < fk.norm()) && t > 1.0 / 1024.0 {
            t *= 0.5;
            k_new = k - delta * t;
            f_new = f(k_new)?;
        }
        if !(f_new.norm() < fk.norm()) {
            // No descent along the Newton direction: either the residual is at
            // the rounding floor of a genuine zero or the iteration is stuck.
            if delta.norm() < 1e-8 * scale {
                return finish(k, step + 1);
            }
            return Err(fail(step + 1));
        }
        let moved = (k_new - k).norm();
        k = k_new;
        fk = f_new;
        if moved < 1e-12 * scale {
            return finish(k, step + 1);
        }
    }
    if fk.norm() < 1e-12 {
        return finish(k, max_steps);
    }
    Err(fail(max_steps))
}

/// Resonances in `[10⁻³/R, re_max] × [im_min, 0]` with default tolerances.
pub fn find_poles(p: &GpiParams, ch: &Channel, re_max: f64, im_min: f64) -> Result<Vec<Resonance>> {
    let region = SearchRegion::new(1e-3 / ch.radius, re_max, im_min, 0.0)?;
    find_poles_in(p, ch, &region, &PoleSearch::default())
}

/// Resonances inside `region`, sorted by `Re k` and indexed on the lattice of
/// the interaction's class.
pub fn find_poles_in(
    p: &GpiParams,
    ch: &Channel,
    region: &SearchRegion,
    search: &PoleSearch,
) -> Result<Vec<Resonance>> {
    if region.re_min < 1e-3 / ch.radius * (1.0 - 1e-12) {
        return Err(Error::InvalidRegion(format!(
            "re_min must be at least 1e-3/R = {}",
            1e-3 / ch.radius
        )));
    }
    let ev = Evaluator { p, ch };
    let (count, working) = ev.count_with_dilation(region, search.max_dilations)?;
    let mut found = Vec::new();
    let finder = Finder { ev: &ev, search };
    finder.isolate(&working, count, 0, false, &mut found)?;

    found.sort_by(|a, b| a.k.re.total_cmp(&b.k.re).then(a.k.im.total_cmp(&b.k.im)));
    let mut merged: Vec<PoleCandidate> = Vec::with_capacity(found.len());
    for c in found {
        match merged.last_mut() {
            Some(last) if (last.k - c.k).norm() < search.dedupe_tol * last.k.norm() => {
                if c.residual < last.residual {
                    *last = c;
                }
            }
            _ => merged.push(c),
        }
    }
    merged.retain(|c| region.contains(c.k));
    index_poles(&merged, ch, p.class(), p)
}

struct Finder<'a, 'b> {
    ev: &'a Evaluator<'b>,
    search: &'a PoleSearch,
}

impl Finder<'_, '_> {
    fn isolate(
        &self,
        cell: &SearchRegion,
        count: i64,
        depth: usize,
        resplit: bool,
        out: &mut Vec<PoleCandidate>,
    ) -> Result<()> {
        if count <= 0 {
            return Ok(());
        }
        let r = self.ev.ch.radius;
        if count == 1 && (cell.max_side() * r <= SEED_CELL_SIZE || resplit) {
            match self.polish(cell) {
                Some(c) => {
                    out.push(c);
                    return Ok(());
                }
                None if resplit => {
                    return Err(Error::NonConvergence {
                        seed: cell.centroid(),
                        steps: self.search.max_newton_steps,
                    })
                }
                None => {
                    let (a, b, ca, cb) = self.split(cell, count)?;
                    self.isolate(&a, ca, depth + 1, true, out)?;
                    return self.isolate(&b, cb, depth + 1, true, out);
                }
            }
        }
        if depth >= self.search.max_depth || (count >= 2 && cell.max_side() * r < 1e-6) {
            return Err(Error::ClusteredZeros {
                center: cell.centroid(),
                size: cell.max_side(),
                count,
            });
        }
        let (a, b, ca, cb) = self.split(cell, count)?;
        self.isolate(&a, ca, depth + 1, false, out)?;
        self.isolate(&b, cb, depth + 1, false, out)
    }

    /// Splits `cell` so that the cut avoids zeros and the counts add up.
    fn split(&self, cell: &SearchRegion, count: i64) -> Result<(SearchRegion, SearchRegion, i64, i64)> {
        for t in SPLIT_FRACTIONS {
            let (a, b) = cell.split(t);
            let counts = self.ev.winding(&a).and_then(|ca| Ok((ca, self.ev.winding(&b)?)));
            match counts {
                Ok((ca, cb)) if ca + cb == count && ca >= 0 && cb >= 0 => return Ok((a, b, ca, cb)),
                Ok(_) | Err(Error::BoundaryZero) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::BoundaryZero)
    }

    fn polish(&self, cell: &SearchRegion) -> Option<PoleCandidate> {
        let s = self.search;
        let c = refine_with(self.ev.p, self.ev.ch, cell.centroid(), s.max_newton_steps, s.residual_tol).ok()?;
        cell.dilated(1e-6).contains(c.k).then_some(c)
    }
}

/// Lattice offset `θ` with `Re k_n = (nπ + θ)/R` for the class of `p`.
fn lattice_offset(ch: &Channel, cls: GpiClass, p: &GpiParams) -> f64 {
    let l = ch.l as f64;
    match cls {
        GpiClass::Delta => {
            let alpha = canonical_real_gamma(p).alpha;
            if alpha < 0.0 {
                l * PI / 2.0 + PI / 4.0
            } else {
                l * PI / 2.0 + 3.0 * PI / 4.0
            }
        }
        GpiClass::Intermediate => {
            if p.gamma.re > 0.0 {
                l * PI / 2.0 + PI / 2.0
            } else {
                l * PI / 2.0 + 3.0 * PI / 2.0
            }
        }
        GpiClass::DeltaPrime => PI * (l + 1.0) / 2.0,
    }
}

/// Assigns lattice indices to poles sorted by `Re k`.
///
/// Each pole takes the nearest lattice index; collisions are resolved by
/// order so that indices increase strictly with `Re k`. A pole pushed more
/// than one and a half lattice spacings from its nearest site means two
/// poles compete for one site, reported as [`Error::AmbiguousIndex`].
pub fn index_poles(
    poles: &[PoleCandidate],
    ch: &Channel,
    cls: GpiClass,
    p: &GpiParams,
) -> Result<Vec<Resonance>> {
    let offset = lattice_offset(ch, cls, p);
    let mut out: Vec<Resonance> = Vec::with_capacity(poles.len());
    for c in poles {
        let exact = (c.k.re * ch.radius - offset) / PI;
        let mut n = exact.round() as i64;
        if let Some(prev) = out.last() {
            if n <= prev.index {
                n = prev.index + 1;
            }
        }
        if (n as f64 - exact).abs() > 1.5 {
            return Err(Error::AmbiguousIndex(c.k.re));
        }
        out.push(Resonance {
            index: n,
            k: c.k,
            residual: c.residual,
            channel: *ch,
            gpi_class: cls,
        });
    }
    Ok(out)
}
