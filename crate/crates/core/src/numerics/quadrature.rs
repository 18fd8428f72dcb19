//! Adaptive Gauss-Kronrod quadrature.

/// Tolerances and budget for adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    /// Pre-split intervals at sign changes of log|f| when the integrand is a
    /// log+ style quantity (callers supply the split points).
    pub kink_split: bool,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_depth: 40,
            kink_split: true,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(crate::Error::Config("quadrature tolerances must be positive".into()));
        }
        if self.max_depth < 4 {
            return Err(crate::Error::Config("max_depth must be >= 4".into()));
        }
        Ok(())
    }
}

/// Outcome of an adaptive integration. `converged == false` means the depth
/// budget ran out somewhere; `value` is still the best estimate.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub converged: bool,
    pub evals: usize,
}

impl QuadResult {
    fn zero() -> Self {
        QuadResult {
            value: 0.0,
            abs_err: 0.0,
            converged: true,
            evals: 0,
        }
    }

    /// Promote a non-converged result to an error carrying the best estimate.
    pub fn into_result(self) -> crate::Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(crate::Error::NoConvergence {
                best: self.value,
                err: self.abs_err,
            })
        }
    }
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod 15 panel: returns (kronrod value, error estimate).
fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * 1.0f64.min((200.0 * err / res_asc).powf(1.5));
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err, res_abs)
}

#[derive(PartialEq)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
    depth: u32,
}

impl Eq for Panel {}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap by error, ties broken by position for determinism
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(self.a.partial_cmp(&other.a).unwrap_or(std::cmp::Ordering::Equal))
    }
}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Adaptive integral of `f` over `[a, b]`. Integrable endpoint/log
/// singularities are handled by subdivision; non-finite samples are treated
/// as 0 (they sit on measure-zero sets for the integrands used here).
pub fn integrate_1d(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> QuadResult {
    integrate_with_splits(f, a, b, &[], spec)
}

/// Same, with interior pre-split points (kinks of the integrand).
pub fn integrate_with_splits(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    splits: &[f64],
    spec: &QuadratureSpec,
) -> QuadResult {
    if a == b {
        return QuadResult::zero();
    }
    let mut guarded = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    let mut pts: Vec<f64> = Vec::with_capacity(splits.len() + 2);
    pts.push(a);
    if spec.kink_split {
        for &s in splits {
            if s > a && s < b {
                pts.push(s);
            }
        }
    }
    pts.push(b);
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());

    // initial panels; the |f|-integral estimate sets the relative scale
    let mut heap = std::collections::BinaryHeap::new();
    let mut scale = 0.0;
    let mut evals = 0usize;
    for w in pts.windows(2) {
        let (v, e, vabs) = gk15(&mut guarded, w[0], w[1]);
        evals += 15;
        scale += vabs;
        heap.push(Panel {
            err: e,
            a: w[0],
            b: w[1],
            value: v,
            depth: 0,
        });
    }
    let tol_total = spec.abs_tol.max(spec.rel_tol * scale);

    // refine the worst panel until the global error meets the tolerance;
    // panels at max_depth (or below resolvable width) are frozen as-is
    const PANEL_BUDGET: usize = 200_000;
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();
    let mut frozen_value = 0.0;
    let mut frozen_err = 0.0;
    let mut panels = heap.len();
    while total_err > tol_total {
        let Some(worst) = heap.pop() else { break };
        let unrefinable = worst.depth >= spec.max_depth
            || (worst.b - worst.a).abs() < 1e-15 * (worst.a.abs() + worst.b.abs() + 1.0)
            || panels >= PANEL_BUDGET;
        if unrefinable {
            frozen_value += worst.value;
            frozen_err += worst.err;
            continue;
        }
        total_err -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e, _) = gk15(&mut guarded, lo, hi);
            evals += 15;
            total_err += e;
            heap.push(Panel {
                err: e,
                a: lo,
                b: hi,
                value: v,
                depth: worst.depth + 1,
            });
        }
        panels += 1;
    }
    let mut out = QuadResult::zero();
    out.value = frozen_value;
    out.abs_err = frozen_err;
    for p in heap.iter() {
        out.value += p.value;
        out.abs_err += p.err;
    }
    out.evals = evals;
    out.converged = out.abs_err <= tol_total.max(1e-300);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sin_integral() {
        let r = integrate_1d(|x| x.sin(), 0.0, std::f64::consts::PI, &QuadratureSpec::default());
        assert!(r.converged);
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn mu_of_two_is_sqrt3() {
        // integral of 1/(2 sin^2 t) over [asin(1/2), pi - asin(1/2)]
        let t0 = 0.5f64.asin();
        let r = integrate_1d(
            |t| 1.0 / (2.0 * t.sin() * t.sin()),
            t0,
            std::f64::consts::PI - t0,
            &QuadratureSpec::default(),
        );
        assert!(r.converged);
        assert_relative_eq!(r.value, 3.0f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn mu_closed_form_grid() {
        for &r in &[1.1f64, 2.0, 5.0, 10.0, 100.0] {
            let t0 = (1.0 / r).asin();
            let q = integrate_1d(
                |t| 1.0 / (r * t.sin() * t.sin()),
                t0,
                std::f64::consts::PI - t0,
                &QuadratureSpec::default(),
            );
            assert!(q.converged);
            assert_relative_eq!(q.value, 2.0 * (1.0 - 1.0 / (r * r)).sqrt(), epsilon = 1e-8);
        }
    }

    #[test]
    fn log_singularity() {
        // integral of -ln x over (0, 1] = 1
        let r = integrate_1d(|x| -(x.ln()), 0.0, 1.0, &QuadratureSpec::default());
        assert!(r.converged);
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn kink_handled_by_split() {
        let f = |x: f64| (x - 0.3).abs();
        let with = integrate_with_splits(f, 0.0, 1.0, &[0.3], &QuadratureSpec::default());
        assert!(with.converged);
        let exact = 0.3f64.powi(2) / 2.0 + 0.7f64.powi(2) / 2.0;
        assert_relative_eq!(with.value, exact, epsilon = 1e-12);
    }

    #[test]
    fn depth_exhaustion_flags() {
        let spec = QuadratureSpec {
            max_depth: 4,
            rel_tol: 1e-14,
            abs_tol: 1e-15,
            ..Default::default()
        };
        let r = integrate_1d(|x: f64| (1.0 / (x + 1e-6)).sqrt(), 0.0, 1.0, &spec);
        assert!(!r.converged);
        assert!(r.value.is_finite());
        assert!(r.into_result().is_err());
    }
}
