//! Real root bracketing on an interval.

/// Locations where `f` changes sign on `[a, b]`, scanned over `grid_n`
/// subintervals and bisected to ~1e-13. Non-finite samples are skipped.
pub fn find_sign_changes(f: &impl Fn(f64) -> f64, a: f64, b: f64, grid_n: usize) -> Vec<f64> {
    let n = grid_n.max(2);
    let mut roots = Vec::new();
    let mut prev_x = a;
    let mut prev_y = f(a);
    for k in 1..=n {
        let x = a + (b - a) * k as f64 / n as f64;
        let y = f(x);
        if !y.is_finite() {
            prev_x = x;
            prev_y = y;
            continue;
        }
        if prev_y.is_finite() {
            if y == 0.0 {
                roots.push(x);
            } else if prev_y == 0.0 {
                if k == 1 {
                    roots.push(prev_x);
                }
            } else if prev_y.signum() != y.signum() {
                roots.push(bisect(f, prev_x, x));
            }
        }
        prev_x = x;
        prev_y = y;
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-13 * (1.0 + mid.abs()) {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if flo.signum() == fm.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `f` on `[a, b]`, sorted ascending.
///
/// Sign changes are bisected; even-order (tangential) roots are additionally
/// picked up as interior local minima of |f| that refine below 1e-10. Roots
/// the scan grid steps over entirely are missed; that is the documented
/// contract, callers choose `grid_n` to the oscillation scale.
pub fn find_real_roots(f: impl Fn(f64) -> f64, a: f64, b: f64, grid_n: usize) -> Vec<f64> {
    let mut roots = find_sign_changes(&f, a, b, grid_n);
    // even-order roots: local minima of |f| below threshold
    let n = grid_n.max(8);
    let h = (b - a) / n as f64;
    let samples: Vec<(f64, f64)> = (0..=n)
        .map(|k| {
            let x = a + h * k as f64;
            (x, f(x).abs())
        })
        .collect();
    for w in samples.windows(3) {
        let [(x0, y0), (_, y1), (x2, y2)] = [w[0], w[1], w[2]];
        if y1.is_finite() && y1 <= y0 && y1 <= y2 && y0.is_finite() && y2.is_finite() {
            let (xm, ym) = golden_min(|x| f(x).abs(), x0, x2);
            if ym < 1e-10 && roots.iter().all(|r| (r - xm).abs() > 1e-9) {
                roots.push(xm);
            }
        }
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    roots
}

/// Golden-section minimisation on [a, b].
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if (b - a).abs() < 1e-13 * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_roots() {
        let roots = find_real_roots(|x| x * x - 0.25, -1.0, 1.0, 64);
        assert_eq!(roots.len(), 2);
        assert_relative_eq!(roots[0], -0.5, epsilon = 1e-12);
        assert_relative_eq!(roots[1], 0.5, epsilon = 1e-12);
    }

    #[test]
    fn parabola_vertex_as_derivative_root() {
        // derivative of (x + 0.3)(x - 0.1) is 2x + 0.2
        let roots = find_real_roots(|x| 2.0 * x + 0.2, -0.3, 0.1, 32);
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0], -0.1, epsilon = 1e-12);
    }

    #[test]
    fn even_order_root_found() {
        let roots = find_real_roots(|x| (x - 0.2) * (x - 0.2), 0.0, 1.0, 128);
        assert_eq!(roots.len(), 1);
        assert_relative_eq!(roots[0], 0.2, epsilon = 1e-6);
    }

    #[test]
    fn empty_when_no_roots() {
        assert!(find_real_roots(|x| x * x + 1.0, -1.0, 1.0, 64).is_empty());
    }

    #[test]
    fn cayley_grid_roots() {
        // zeros of sin(pi (1+x)/(1-x)) are (n-1)/(n+1); up to 0.895 that is
        // n = 1..18 (the n = 19 zero sits at exactly 0.9)
        let f = |x: f64| (std::f64::consts::PI * (1.0 + x) / (1.0 - x)).sin();
        let roots = find_real_roots(f, 0.0, 0.895, 4000);
        let expected: Vec<f64> = (1..=18)
            .map(|n| (n as f64 - 1.0) / (n as f64 + 1.0))
            .collect();
        assert_eq!(roots.len(), expected.len());
        for (got, want) in roots.iter().zip(expected.iter()) {
            assert_relative_eq!(got, want, epsilon = 1e-10);
        }
    }
}
