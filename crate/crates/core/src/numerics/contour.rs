//! Contours, argument-principle winding numbers, and zero/pole counting.
//!
//! Winding numbers are computed by phase unwinding: the contour is subdivided
//! until the argument change per segment is below pi/2, and the wrapped
//! increments are summed. Handles evaluate through their mantissa only (see
//! `funcmodel`): an attached exponential factor exp(G) with G analytic on the
//! domain contributes exactly zero winding around a closed contour, so it is
//! peeled off rather than tracked.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcmodel::{FunctionHandle, Value};
use crate::logcomplex::wrap_angle;

use super::QuadratureSpec;

/// Zeros/poles closer than this to a contour violate the winding
/// preconditions; sweep drivers perturb the radius until clear.
pub const PERTURB_CLEARANCE: f64 = 1e-8;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One parametrized curve piece, t in [0, 1].
#[derive(Clone, Debug)]
pub enum ContourPiece {
    /// Circular arc around `center` from angle `th0` to `th1` (counter-
    /// clockwise when th1 > th0).
    Arc {
        center: Complex64,
        radius: f64,
        th0: f64,
        th1: f64,
    },
    Segment {
        from: Complex64,
        to: Complex64,
    },
}

impl ContourPiece {
    pub fn point(&self, t: f64) -> Complex64 {
        match self {
            ContourPiece::Arc {
                center,
                radius,
                th0,
                th1,
            } => {
                let a = th0 + t * (th1 - th0);
                center + radius * c(a.cos(), a.sin())
            }
            ContourPiece::Segment { from, to } => from + t * (to - from),
        }
    }

    fn distance_to(&self, p: Complex64) -> f64 {
        match self {
            ContourPiece::Arc {
                center,
                radius,
                th0,
                th1,
            } => {
                let y = p - center;
                let (lo, hi) = if th0 <= th1 { (*th0, *th1) } else { (*th1, *th0) };
                let span = hi - lo;
                let mut phi = (y.arg() - lo) % TWO_PI;
                if phi < 0.0 {
                    phi += TWO_PI;
                }
                if phi <= span {
                    (y.norm() - radius).abs()
                } else {
                    let e0 = center + radius * c(lo.cos(), lo.sin());
                    let e1 = center + radius * c(hi.cos(), hi.sin());
                    (p - e0).norm().min((p - e1).norm())
                }
            }
            ContourPiece::Segment { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                if len2 == 0.0 {
                    return (p - from).norm();
                }
                let t = ((p - from).re * d.re + (p - from).im * d.im) / len2;
                let t = t.clamp(0.0, 1.0);
                (p - (from + t * d)).norm()
            }
        }
    }
}

/// A closed, counter-clockwise contour made of parametrized pieces.
#[derive(Clone, Debug)]
pub struct Contour {
    pieces: Vec<ContourPiece>,
}

impl Contour {
    pub fn from_pieces(pieces: Vec<ContourPiece>) -> Self {
        Contour { pieces }
    }

    pub fn pieces(&self) -> &[ContourPiece] {
        &self.pieces
    }

    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour {
            pieces: vec![ContourPiece::Arc {
                center,
                radius,
                th0: 0.0,
                th1: TWO_PI,
            }],
        }
    }

    /// The arc J(r) of the circle |z - ir/2| = r/2 from e^{i asin(1/r)}
    /// counter-clockwise via ir to e^{i(pi - asin(1/r))}. Requires r >= 1.
    pub fn arc_j(r: f64) -> Result<ContourPiece> {
        if !(r >= 1.0) {
            return Err(Error::Precondition(format!("J(r) needs r >= 1, got {r}")));
        }
        let theta0 = (1.0 / r).asin();
        let start = c(theta0.cos(), theta0.sin());
        let center = c(0.0, r / 2.0);
        let a0 = (start - center).arg();
        Ok(ContourPiece::Arc {
            center,
            radius: r / 2.0,
            th0: a0,
            th1: std::f64::consts::PI - a0,
        })
    }

    /// Boundary of the lune {|z| >= 1, |z - ir/2| <= r/2}, counter-clockwise:
    /// J(r) followed by the unit-circle arc traversed back from
    /// pi - asin(1/r) down to asin(1/r).
    pub fn lune_boundary(r: f64) -> Result<Self> {
        let j = Self::arc_j(r)?;
        let theta0 = (1.0 / r).asin();
        let back = ContourPiece::Arc {
            center: c(0.0, 0.0),
            radius: 1.0,
            th0: std::f64::consts::PI - theta0,
            th1: theta0,
        };
        Ok(Contour {
            pieces: vec![j, back],
        })
    }

    /// Closed polyline through the given vertices.
    pub fn polyline(points: &[Complex64]) -> Self {
        let mut pieces = Vec::with_capacity(points.len());
        for i in 0..points.len() {
            let from = points[i];
            let to = points[(i + 1) % points.len()];
            if from != to {
                pieces.push(ContourPiece::Segment { from, to });
            }
        }
        Contour { pieces }
    }

    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self::polyline(&[c(x0, y0), c(x1, y0), c(x1, y1), c(x0, y1)])
    }

    /// Minimum distance from `p` to the contour.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|piece| piece.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum distance from any registered zero/pole of the handle to the
    /// contour (infinity without a registry).
    pub fn registry_clearance(&self, h: &FunctionHandle) -> f64 {
        match h.registry() {
            None => f64::INFINITY,
            Some(reg) => reg
                .zeros()
                .iter()
                .chain(reg.poles().iter())
                .map(|(p, _)| self.distance_to(*p))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Maximum log-magnitude variation allowed across an accepted segment. A
/// phase turn hidden between two samples always rides on a close zero/pole
/// encounter, which dents log|f|; bounding the dent forces refinement there.
const MAG_STEP: f64 = 0.7;
const MIN_DEPTH: u32 = 3;

#[derive(Clone, Copy)]
struct PhaseSample {
    arg: f64,
    log_abs: f64,
}

/// Total argument change over one piece between parameters t0 and t1, with
/// the phase samples at the ends already known.
///
/// A segment is accepted when its wrapped change is below pi/2, its magnitude
/// variation is mild, and a midpoint probe confirms the two halves tell the
/// same story; this guards against the sampled phase aliasing past a turn.
fn arg_change(
    h: &FunctionHandle,
    piece: &ContourPiece,
    t0: f64,
    t1: f64,
    v0: PhaseSample,
    v1: PhaseSample,
    depth: u32,
    evals: &mut usize,
) -> Result<f64> {
    if depth >= 52 {
        return Err(Error::ContourTooClose(PERTURB_CLEARANCE));
    }
    let tm = 0.5 * (t0 + t1);
    let vm = sample_phase(h, piece.point(tm), evals)?;
    if depth >= MIN_DEPTH {
        let d = wrap_angle(v1.arg - v0.arg);
        let d1 = wrap_angle(vm.arg - v0.arg);
        let d2 = wrap_angle(v1.arg - vm.arg);
        let phases_small = d.abs() <= std::f64::consts::FRAC_PI_2
            && d1.abs() <= std::f64::consts::FRAC_PI_2
            && d2.abs() <= std::f64::consts::FRAC_PI_2;
        let mags_mild = (vm.log_abs - v0.log_abs).abs() <= MAG_STEP
            && (v1.log_abs - vm.log_abs).abs() <= MAG_STEP;
        if phases_small && mags_mild && (d1 + d2 - d).abs() < 1e-9 {
            return Ok(d);
        }
    }
    Ok(arg_change(h, piece, t0, tm, v0, vm, depth + 1, evals)?
        + arg_change(h, piece, tm, t1, vm, v1, depth + 1, evals)?)
}

fn sample_phase(h: &FunctionHandle, z: Complex64, evals: &mut usize) -> Result<PhaseSample> {
    *evals += 1;
    match h.winding_value(z)? {
        Value::Pole => Err(Error::ContourTooClose(PERTURB_CLEARANCE)),
        Value::Finite(v) => {
            if v.is_zero() || !v.is_valid() {
                Err(Error::ContourTooClose(PERTURB_CLEARANCE))
            } else {
                Ok(PhaseSample {
                    arg: v.arg,
                    log_abs: v.log_abs,
                })
            }
        }
    }
}

/// Argument-principle winding number of the handle over a closed contour:
/// the number of zeros minus poles inside. The piecewise argument change is
/// resolved adaptively to below pi/2 per segment.
pub fn winding_number(h: &FunctionHandle, contour: &Contour, _spec: &QuadratureSpec) -> Result<i64> {
    const INITIAL: usize = 96;
    let mut evals = 0usize;
    let mut total = 0.0;
    for piece in &contour.pieces {
        let mut samples = Vec::with_capacity(INITIAL + 1);
        for k in 0..=INITIAL {
            let t = k as f64 / INITIAL as f64;
            samples.push((t, sample_phase(h, piece.point(t), &mut evals)?));
        }
        for w in samples.windows(2) {
            let (t0, v0) = w[0];
            let (t1, v1) = w[1];
            total += arg_change(h, piece, t0, t1, v0, v1, 0, &mut evals)?;
        }
    }
    let turns = total / TWO_PI;
    let nearest = turns.round();
    if (turns - nearest).abs() > 0.25 {
        return Err(Error::RoundingAmbiguity(turns));
    }
    Ok(nearest as i64)
}

/// A contour-bounded region in which zeros and poles are counted.
#[derive(Clone, Debug)]
pub enum Region {
    Disc { center: Complex64, radius: f64 },
    /// {|z| >= 1, |z - ir/2| <= r/2}
    Lune { r: f64 },
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Region::Disc { center, radius } => (z - center).norm() <= *radius,
            Region::Lune { r } => z.norm() >= 1.0 && (z - c(0.0, r / 2.0)).norm() <= r / 2.0,
            Region::Rectangle { x0, x1, y0, y1 } => {
                z.re >= *x0 && z.re <= *x1 && z.im >= *y0 && z.im <= *y1
            }
        }
    }

    pub fn boundary(&self) -> Result<Contour> {
        match self {
            Region::Disc { center, radius } => Ok(Contour::circle(*center, *radius)),
            Region::Lune { r } => Contour::lune_boundary(*r),
            Region::Rectangle { x0, x1, y0, y1 } => Ok(Contour::rectangle(*x0, *x1, *y0, *y1)),
        }
    }

    /// Largest |z| over the region (used for registry coverage checks).
    pub fn bounding_radius(&self) -> f64 {
        match self {
            Region::Disc { center, radius } => center.norm() + radius,
            Region::Lune { r } => *r,
            Region::Rectangle { x0, x1, y0, y1 } => {
                let xs = x0.abs().max(x1.abs());
                let ys = y0.abs().max(y1.abs());
                xs.hypot(ys)
            }
        }
    }

    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match self {
            Region::Disc { center, radius } => (
                center.re - radius,
                center.re + radius,
                center.im - radius,
                center.im + radius,
            ),
            Region::Lune { r } => (-r / 2.0, r / 2.0, 0.0, *r),
            Region::Rectangle { x0, x1, y0, y1 } => (*x0, *x1, *y0, *y1),
        }
    }
}

/// Count zeros and poles of the handle in the region (with multiplicity).
///
/// Registry knowledge short-circuits the count where it covers the region;
/// a one-sided registry (e.g. pole list exhaustive but zeros unknown) is
/// combined with one boundary winding number; with no registry knowledge a
/// quad-tree localization over the bounding box is used and the located
/// points filtered by membership.
pub fn count_in_region(
    h: &FunctionHandle,
    region: &Region,
    spec: &QuadratureSpec,
) -> Result<(u64, u64)> {
    let bound = region.bounding_radius();
    let (zeros_known, poles_known) = match h.registry() {
        Some(reg) => (
            reg.zeros_complete().covers_radius(bound),
            reg.poles_complete().covers_radius(bound),
        ),
        None => (false, false),
    };
    let count_list = |list: &[(Complex64, u32)]| -> u64 {
        list.iter()
            .filter(|(p, _)| region.contains(*p))
            .map(|(_, m)| *m as u64)
            .sum()
    };
    match (zeros_known, poles_known) {
        (true, true) => {
            let reg = h.registry().unwrap();
            Ok((count_list(reg.zeros()), count_list(reg.poles())))
        }
        (false, true) => {
            let p = count_list(h.registry().unwrap().poles());
            let w = winding_number(h, &region.boundary()?, spec)?;
            let z = w + p as i64;
            if z < 0 {
                return Err(Error::Inconsistent(format!(
                    "winding {w} with {p} registered poles implies negative zero count"
                )));
            }
            Ok((z as u64, p))
        }
        (true, false) => {
            let z = count_list(h.registry().unwrap().zeros());
            let w = winding_number(h, &region.boundary()?, spec)?;
            let p = z as i64 - w;
            if p < 0 {
                return Err(Error::Inconsistent(format!(
                    "winding {w} with {z} registered zeros implies negative pole count"
                )));
            }
            Ok((z, p as u64))
        }
        (false, false) => {
            let (x0, x1, y0, y1) = region.bounding_box();
            // pad the top box so its boundary clears points sitting exactly on
            // the region rim; anything caught in the pad ring is filtered out
            // by the membership test below
            let pad = 3.7e-7 * ((x1 - x0).max(y1 - y0)).max(1.0);
            let located = localize(h, x0 - pad, x1 + pad, y0 - pad, y1 + pad, spec, 0, 4)?;
            let mut zeros = 0u64;
            let mut poles = 0u64;
            for (p, w) in located {
                if region.contains(p) {
                    if w > 0 {
                        zeros += w as u64;
                    } else {
                        poles += (-w) as u64;
                    }
                }
            }
            Ok((zeros, poles))
        }
    }
}

/// Split fractions tried when a subdivision line lands on a zero/pole; each
/// produces an exact partition of the parent box (no overlap, no gap).
const SPLIT_FRACTIONS: [(f64, f64); 4] = [
    (0.5, 0.5),
    (0.5231, 0.4787),
    (0.4613, 0.5389),
    (0.5497, 0.5121),
];

/// Quad-tree localization of zeros/poles inside a box; each returned entry is
/// (location, winding of a cell of diameter <= 1e-6 around it).
///
/// Cells with net winding 0 are still subdivided `zero_budget` more times
/// before being dropped, so a zero-pole pair is separated as long as the pair
/// distance exceeds roughly diam/2^budget; a closer pair cancels silently.
/// Callers relying on exhaustive separation supply registries instead.
fn localize(
    h: &FunctionHandle,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    spec: &QuadratureSpec,
    depth: u32,
    zero_budget: u32,
) -> Result<Vec<(Complex64, i64)>> {
    let w = winding_number(h, &Contour::rectangle(x0, x1, y0, y1), spec)?;
    let diam = (x1 - x0).hypot(y1 - y0);
    if w == 0 && (zero_budget == 0 || diam < 1e-6) {
        return Ok(vec![]);
    }
    if w != 0 && (diam < 1e-6 || depth > 60) {
        return Ok(vec![(c(0.5 * (x0 + x1), 0.5 * (y0 + y1)), w)]);
    }
    let next_budget = if w == 0 { zero_budget - 1 } else { zero_budget.max(2) };
    'fractions: for (fx, fy) in SPLIT_FRACTIONS {
        let xm = x0 + fx * (x1 - x0);
        let ym = y0 + fy * (y1 - y0);
        let mut out = Vec::new();
        for (a, b, d, e) in [
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        ] {
            match localize(h, a, b, d, e, spec, depth + 1, next_budget) {
                Ok(part) => out.extend(part),
                // a zero/pole sits on this split line; move the line
                Err(Error::ContourTooClose(_)) => continue 'fractions,
                Err(other) => return Err(other),
            }
        }
        return Ok(out);
    }
    Err(Error::ContourTooClose(PERTURB_CLEARANCE))
}

/// Inflate `r` in growing machine-epsilon-scaled steps until the contour
/// produced by `make` clears every registered zero/pole by
/// [`PERTURB_CLEARANCE`]. Returns the (possibly unchanged) radius.
pub fn perturb_radius(h: &FunctionHandle, make: impl Fn(f64) -> Result<Contour>, r: f64) -> Result<f64> {
    let mut r = r;
    let mut step = 10.0 * f64::EPSILON * r.max(1.0);
    for _ in 0..64 {
        let contour = make(r)?;
        if contour.registry_clearance(h) > PERTURB_CLEARANCE {
            return Ok(r);
        }
        r += step;
        step *= 2.0;
    }
    Err(Error::ContourTooClose(PERTURB_CLEARANCE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcmodel::catalog::catalog_get;
    use crate::funcmodel::{DomainDescriptor, HandleBuilder};
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn winding_of_square() {
        let h = catalog_get("zsq").unwrap();
        let w = winding_number(&h, &Contour::circle(c(0.0, 0.0), 1.0), &spec()).unwrap();
        assert_eq!(w, 2);
    }

    #[test]
    fn winding_of_reciprocal() {
        let h = catalog_get("reciprocal").unwrap();
        let w = winding_number(&h, &Contour::circle(c(0.0, 0.0), 1.0), &spec()).unwrap();
        assert_eq!(w, -1);
    }

    #[test]
    fn winding_detects_offset_zero() {
        let h = HandleBuilder::from_plain("shift", DomainDescriptor::plane(), |z| {
            z - c(0.4, 0.1)
        })
        .build();
        assert_eq!(
            winding_number(&h, &Contour::circle(c(0.0, 0.0), 1.0), &spec()).unwrap(),
            1
        );
        assert_eq!(
            winding_number(&h, &Contour::circle(c(0.0, 0.0), 0.2), &spec()).unwrap(),
            0
        );
    }

    #[test]
    fn zero_on_contour_rejected() {
        let h = catalog_get("identity").unwrap();
        let bad = winding_number(&h, &Contour::circle(c(0.1, 0.0), 0.1), &spec());
        assert!(matches!(bad, Err(Error::ContourTooClose(_))));
    }

    #[test]
    fn lune_geometry() {
        let r = 4.0;
        let lune = Region::Lune { r };
        assert!(!lune.contains(c(0.0, 0.5)));
        assert!(lune.contains(c(0.0, 2.0)));
        assert!(lune.contains(c(0.0, 1.0)));
        let b = Contour::lune_boundary(r).unwrap();
        // endpoints of J(r) lie on the unit circle
        let p0 = b.pieces()[0].point(0.0);
        assert_relative_eq!(p0.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn count_via_registry_filter() {
        let h = catalog_get("reciprocal").unwrap();
        let (z, p) = count_in_region(&h, &Region::Lune { r: 4.0 }, &spec()).unwrap();
        assert_eq!((z, p), (0, 0));
        let (z, p) = count_in_region(
            &h,
            &Region::Disc {
                center: c(0.0, 0.0),
                radius: 0.5,
            },
            &spec(),
        )
        .unwrap();
        assert_eq!((z, p), (0, 1));
    }

    #[test]
    fn count_pole_in_lune_membership() {
        let h = HandleBuilder::from_plain("z-2i", DomainDescriptor::plane(), |z| z - c(0.0, 2.0))
            .registry(
                crate::funcmodel::ZeroPoleRegistry::new(
                    vec![(c(0.0, 2.0), 1)],
                    vec![],
                    crate::funcmodel::Completeness::Full,
                    crate::funcmodel::Completeness::Full,
                )
                .unwrap(),
            )
            .build();
        let (z, p) = count_in_region(&h, &Region::Lune { r: 8.0 }, &spec()).unwrap();
        assert_eq!((z, p), (1, 0));
    }

    #[test]
    fn count_by_localization() {
        // no registry: (z - 0.3)(z + 0.2i) / (z - 0.1 - 0.1i)
        let h = HandleBuilder::from_plain("mix", DomainDescriptor::plane(), |z| {
            (z - c(0.3, 0.0)) * (z + c(0.0, 0.2)) / (z - c(0.1, 0.1))
        })
        .build();
        let (z, p) = count_in_region(
            &h,
            &Region::Disc {
                center: c(0.0, 0.0),
                radius: 0.8,
            },
            &spec(),
        )
        .unwrap();
        assert_eq!((z, p), (2, 1));
    }

    #[test]
    fn perturb_moves_off_registered_zero() {
        let h = catalog_get("identity").unwrap();
        let r = perturb_radius(&h, |r| Ok(Contour::circle(c(0.1, 0.0), r)), 0.1).unwrap();
        assert!(r > 0.1);
        assert!(
            Contour::circle(c(0.1, 0.0), r).registry_clearance(&h) > PERTURB_CLEARANCE
        );
    }

    #[test]
    fn winding_additive_over_split_disc() {
        // circle = upper half boundary + lower half boundary through Im = 0.05
        let split = 0.05f64;
        let radius = 0.77f64;
        let dx = (radius * radius - split * split).sqrt();
        let a0 = (split / radius).asin();
        for name in ["zsq", "identity", "notLP", "h-exp", "sin-levy"] {
            let h = catalog_get(name).unwrap();
            let full = winding_number(&h, &Contour::circle(c(0.0, 0.0), radius), &spec()).unwrap();
            let upper = Contour::from_pieces(vec![
                ContourPiece::Arc {
                    center: c(0.0, 0.0),
                    radius,
                    th0: a0,
                    th1: std::f64::consts::PI - a0,
                },
                ContourPiece::Segment {
                    from: c(-dx, split),
                    to: c(dx, split),
                },
            ]);
            let lower = Contour::from_pieces(vec![
                ContourPiece::Arc {
                    center: c(0.0, 0.0),
                    radius,
                    th0: std::f64::consts::PI - a0,
                    th1: TWO_PI + a0,
                },
                ContourPiece::Segment {
                    from: c(dx, split),
                    to: c(-dx, split),
                },
            ]);
            let wu = winding_number(&h, &upper, &spec()).unwrap();
            let wl = winding_number(&h, &lower, &spec()).unwrap();
            assert_eq!(full, wu + wl, "additivity failed for {name}");
        }
    }
}
