//! Complex values in log-magnitude form.
//!
//! Catalog functions like exp(3 exp((1+z)/(1-z))) overflow f64 long before the
//! quantities built from them (log+ |f| integrals, characteristics) do, so every
//! evaluation in this crate is carried as a pair (log|value|, arg value).

use num_complex::Complex64;

/// A complex number stored as `exp(log_abs) * exp(i * arg)`.
///
/// `log_abs = -inf` encodes an exact zero. `arg` is not reduced mod 2*pi;
/// callers that need a principal argument use [`LogComplex::arg_principal`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    pub log_abs: f64,
    pub arg: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_abs: f64::NEG_INFINITY,
        arg: 0.0,
    };
    pub const ONE: LogComplex = LogComplex {
        log_abs: 0.0,
        arg: 0.0,
    };

    pub fn new(log_abs: f64, arg: f64) -> Self {
        LogComplex { log_abs, arg }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z.re == 0.0 && z.im == 0.0 {
            return LogComplex::ZERO;
        }
        LogComplex {
            log_abs: z.norm().ln(),
            arg: z.arg(),
        }
    }

    pub fn from_real(x: f64) -> Self {
        if x == 0.0 {
            LogComplex::ZERO
        } else {
            LogComplex {
                log_abs: x.abs().ln(),
                arg: if x < 0.0 { std::f64::consts::PI } else { 0.0 },
            }
        }
    }

    /// exp(g) for a complex exponent g.
    pub fn exp_of(g: Complex64) -> Self {
        LogComplex {
            log_abs: g.re,
            arg: g.im,
        }
    }

    /// Converts back to a plain complex number; overflows to infinity when
    /// `log_abs > ~709`.
    pub fn to_complex(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let m = self.log_abs.exp();
        Complex64::new(m * self.arg.cos(), m * self.arg.sin())
    }

    pub fn is_zero(self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// True when the magnitude is representable (neither +inf nor NaN).
    pub fn is_valid(self) -> bool {
        !self.log_abs.is_nan() && self.log_abs != f64::INFINITY && !self.arg.is_nan()
    }

    /// log+ |value| = max(log|value|, 0).
    pub fn log_plus(self) -> f64 {
        self.log_abs.max(0.0)
    }

    /// Argument reduced to (-pi, pi].
    pub fn arg_principal(self) -> f64 {
        wrap_angle(self.arg)
    }

    /// Complex logarithm as a plain complex number (log_abs + i arg).
    pub fn ln(self) -> Complex64 {
        Complex64::new(self.log_abs, self.arg)
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex {
            log_abs: self.log_abs + other.log_abs,
            arg: self.arg + other.arg,
        }
    }

    pub fn div(self, other: Self) -> Self {
        if self.is_zero() {
            return LogComplex::ZERO;
        }
        LogComplex {
            log_abs: self.log_abs - other.log_abs,
            arg: self.arg - other.arg,
        }
    }

    pub fn recip(self) -> Self {
        LogComplex {
            log_abs: -self.log_abs,
            arg: -self.arg,
        }
    }

    pub fn neg(self) -> Self {
        LogComplex {
            log_abs: self.log_abs,
            arg: self.arg + std::f64::consts::PI,
        }
    }

    pub fn conj(self) -> Self {
        LogComplex {
            log_abs: self.log_abs,
            arg: -self.arg,
        }
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k > 0 { LogComplex::ZERO } else { LogComplex::new(f64::INFINITY, 0.0) };
        }
        LogComplex {
            log_abs: self.log_abs * k as f64,
            arg: self.arg * k as f64,
        }
    }

    /// Scale by a real factor.
    pub fn scale(self, c: f64) -> Self {
        self.mul(LogComplex::from_real(c))
    }

    /// Sum computed by factoring out the dominant magnitude, so it stays
    /// finite even when both terms are far outside f64 range.
    pub fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.log_abs >= other.log_abs {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.log_abs - big.log_abs;
        if d < -745.0 {
            return big;
        }
        let rel_arg = small.arg - big.arg;
        let q = d.exp() * Complex64::new(rel_arg.cos(), rel_arg.sin());
        let s = Complex64::new(1.0, 0.0) + q;
        if s.re == 0.0 && s.im == 0.0 {
            return LogComplex::ZERO;
        }
        LogComplex {
            log_abs: big.log_abs + s.norm().ln(),
            arg: big.arg + s.arg(),
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    /// log sqrt(1 + |value|^2), the spherical-metric logarithm, computed
    /// without forming |value|^2.
    pub fn log_sqrt_one_plus_sq(self) -> f64 {
        let l = self.log_abs;
        if l == f64::NEG_INFINITY {
            return 0.0;
        }
        if l > 20.0 {
            // log sqrt(1+e^{2l}) = l + 0.5*log(1+e^{-2l})
            l + 0.5 * (-2.0 * l).exp().ln_1p()
        } else {
            0.5 * (2.0 * l).exp().ln_1p()
        }
    }
}

/// Reduce an angle to (-pi, pi].
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a % two_pi;
    if r <= -std::f64::consts::PI {
        r += two_pi;
    } else if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Sum a slice of log-form terms (dominant-magnitude factoring).
pub fn log_sum(terms: &[LogComplex]) -> LogComplex {
    let max = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.log_abs)
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms {
        if t.is_zero() {
            continue;
        }
        let d = t.log_abs - max;
        if d < -745.0 {
            continue;
        }
        acc += d.exp() * Complex64::new(t.arg.cos(), t.arg.sin());
    }
    if acc.re == 0.0 && acc.im == 0.0 {
        return LogComplex::ZERO;
    }
    LogComplex {
        log_abs: max + acc.norm().ln(),
        arg: acc.arg(),
    }
}

/// sin(w) in log form via (e^{iw} - e^{-iw}) / 2i; stable for large |Im w|.
pub fn log_sin(w: Complex64) -> LogComplex {
    let up = LogComplex::exp_of(Complex64::new(-w.im, w.re)); // e^{iw}
    let dn = LogComplex::exp_of(Complex64::new(w.im, -w.re)); // e^{-iw}
    up.sub(dn)
        .mul(LogComplex::new(-(2.0f64.ln()), -std::f64::consts::FRAC_PI_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roundtrip_and_arithmetic() {
        let a = LogComplex::from_complex(c(1.5, -0.7));
        let b = LogComplex::from_complex(c(-0.2, 2.1));
        let sum = a.add(b).to_complex();
        let expect = c(1.3, 1.4);
        assert_relative_eq!(sum.re, expect.re, max_relative = 1e-14);
        assert_relative_eq!(sum.im, expect.im, max_relative = 1e-14);
        let prod = a.mul(b).to_complex();
        let pe = c(1.5, -0.7) * c(-0.2, 2.1);
        assert_relative_eq!(prod.re, pe.re, max_relative = 1e-14);
        assert_relative_eq!(prod.im, pe.im, max_relative = 1e-14);
    }

    #[test]
    fn huge_sum_stays_finite() {
        // e^1000 + e^999 = e^1000 (1 + e^-1)
        let a = LogComplex::new(1000.0, 0.0);
        let b = LogComplex::new(999.0, 0.0);
        let s = a.add(b);
        assert_relative_eq!(s.log_abs, 1000.0 + (1.0 + (-1.0f64).exp()).ln(), epsilon = 1e-12);
    }

    #[test]
    fn cancellation() {
        // residual of x - x is at the relative rounding floor of the
        // representation (sin(pi) != 0 exactly)
        let a = LogComplex::new(50.0, 0.0);
        let s = a.sub(a);
        assert!(s.is_zero() || s.log_abs < 50.0 - 30.0, "log_abs = {}", s.log_abs);
        let b = LogComplex::new(50.0, 1.25);
        let s2 = b.sub(b);
        assert!(s2.is_zero() || s2.log_abs < 50.0 - 30.0);
    }

    #[test]
    fn log_sin_matches_plain_sin() {
        for &(re, im) in &[(0.3, 0.2), (-1.0, 0.0), (2.0, -0.8), (0.0, 3.0)] {
            let w = c(re, im);
            let got = log_sin(w).to_complex();
            let want = w.sin();
            assert_relative_eq!(got.re, want.re, epsilon = 1e-12, max_relative = 1e-12);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn log_sin_huge_imaginary() {
        // |sin(x + iy)| ~ e^{|y|}/2 for large |y|
        let w = c(0.4, 5000.0);
        let s = log_sin(w);
        assert_relative_eq!(s.log_abs, 5000.0 - (2.0f64).ln(), epsilon = 1e-9);
    }

    #[test]
    fn spherical_log() {
        let v = LogComplex::from_real(3.0);
        assert_relative_eq!(v.log_sqrt_one_plus_sq(), (10.0f64).sqrt().ln(), epsilon = 1e-12);
        let huge = LogComplex::new(800.0, 1.0);
        assert_relative_eq!(huge.log_sqrt_one_plus_sq(), 800.0, epsilon = 1e-12);
        assert_eq!(LogComplex::ZERO.log_sqrt_one_plus_sq(), 0.0);
    }

    #[test]
    fn wrap() {
        assert_relative_eq!(wrap_angle(3.0 * std::f64::consts::PI), std::f64::consts::PI);
        assert_relative_eq!(wrap_angle(-7.0), -7.0 + 2.0 * std::f64::consts::PI);
    }
}
