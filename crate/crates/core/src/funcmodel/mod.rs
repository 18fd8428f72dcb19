//! Uniform representation of meromorphic functions.
//!
//! A [`FunctionHandle`] evaluates to a [`Value`] in log-magnitude form and is
//! internally split as `value = exp(exponent(z)) * mantissa(z)`, where the
//! optional `exponent` is analytic on the whole domain. The split matters for
//! argument tracking: around any closed contour the exponential factor
//! contributes exactly zero winding (it is zero- and pole-free and its
//! exponent is single-valued), so contour routines track only the mantissa,
//! whose phase stays numerically meaningful even when |f| is astronomically
//! large.

pub mod catalog;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logcomplex::{log_sum, LogComplex};

/// Evaluation within this distance of a registered pole returns [`Value::Pole`],
/// keeping quadrature integrands total.
pub const POLE_FUSION_RADIUS: f64 = 1e-12;

/// Result of evaluating a handle at a point inside its domain.
#[derive(Clone, Copy, Debug)]
pub enum Value {
    Finite(LogComplex),
    Pole,
}

impl Value {
    pub fn finite(self) -> Option<LogComplex> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Pole => None,
        }
    }

    pub fn is_pole(self) -> bool {
        matches!(self, Value::Pole)
    }

    /// log+ |f|; a pole contributes +inf magnitude, but log+ of the
    /// reciprocal-style integrands callers build is handled explicitly there.
    pub fn log_plus(self) -> f64 {
        match self {
            Value::Finite(v) => v.log_plus(),
            Value::Pole => f64::INFINITY,
        }
    }
}

fn sanitize(v: LogComplex) -> Value {
    if v.is_valid() {
        Value::Finite(v)
    } else {
        Value::Pole
    }
}

pub type MantissaFn = Arc<dyn Fn(Complex64) -> Result<Value> + Send + Sync>;
pub type ExponentFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Where a point may live.
#[derive(Clone)]
pub enum DomainDescriptor {
    UnitDisc,
    UpperHalfPlane,
    /// C minus the two real rays {X real : |X| >= 2}.
    CutPlane,
    Annulus {
        inner: f64,
        outer: f64,
    },
    Custom {
        label: String,
        member: Arc<dyn Fn(Complex64) -> bool + Send + Sync>,
    },
}

impl std::fmt::Debug for DomainDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainDescriptor::UnitDisc => write!(f, "UnitDisc"),
            DomainDescriptor::UpperHalfPlane => write!(f, "UpperHalfPlane"),
            DomainDescriptor::CutPlane => write!(f, "CutPlane"),
            DomainDescriptor::Annulus { inner, outer } => {
                write!(f, "Annulus({inner}, {outer})")
            }
            DomainDescriptor::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

impl DomainDescriptor {
    /// The whole plane, as a custom predicate.
    pub fn plane() -> Self {
        DomainDescriptor::Custom {
            label: "plane".into(),
            member: Arc::new(|_| true),
        }
    }

    /// Plane minus one point (used for functions like 1/z).
    pub fn punctured_plane(p: Complex64) -> Self {
        DomainDescriptor::Custom {
            label: format!("plane minus {p}"),
            member: Arc::new(move |z| z != p),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            DomainDescriptor::UnitDisc => z.norm_sqr() < 1.0,
            DomainDescriptor::UpperHalfPlane => z.im > 0.0,
            DomainDescriptor::CutPlane => !(z.im == 0.0 && z.re.abs() >= 2.0),
            DomainDescriptor::Annulus { inner, outer } => {
                let n = z.norm();
                *inner < n && n < *outer
            }
            DomainDescriptor::Custom { member, .. } => member(z),
        }
    }

    /// Distance from an interior point to the domain boundary. Custom domains
    /// report infinity; the Cauchy differentiation radius is capped separately.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        match self {
            DomainDescriptor::UnitDisc => 1.0 - z.norm(),
            DomainDescriptor::UpperHalfPlane => z.im,
            DomainDescriptor::CutPlane => {
                if z.re.abs() >= 2.0 {
                    z.im.abs()
                } else {
                    let d1 = (z - Complex64::new(2.0, 0.0)).norm();
                    let d2 = (z + Complex64::new(2.0, 0.0)).norm();
                    d1.min(d2)
                }
            }
            DomainDescriptor::Annulus { inner, outer } => {
                let n = z.norm();
                (n - inner).min(outer - n)
            }
            DomainDescriptor::Custom { .. } => f64::INFINITY,
        }
    }
}

/// How exhaustive one side of a [`ZeroPoleRegistry`] is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Completeness {
    /// The list is exhaustive on the whole domain.
    Full,
    /// Exhaustive within |z| <= radius (for zero sequences accumulating at the
    /// boundary).
    WithinRadius(f64),
    /// Possibly missing entries anywhere.
    Partial,
}

impl Completeness {
    pub fn radius(self) -> Option<f64> {
        match self {
            Completeness::Full => Some(f64::INFINITY),
            Completeness::WithinRadius(r) => Some(r),
            Completeness::Partial => None,
        }
    }

    /// True when the list is exhaustive for every point with |z| <= bound.
    pub fn covers_radius(self, bound: f64) -> bool {
        self.radius().is_some_and(|r| r >= bound)
    }
}

/// Declared zeros and poles with multiplicities.
#[derive(Clone, Debug)]
pub struct ZeroPoleRegistry {
    zeros: Vec<(Complex64, u32)>,
    poles: Vec<(Complex64, u32)>,
    zeros_complete: Completeness,
    poles_complete: Completeness,
    /// The zero list continues indefinitely beyond its coverage radius
    /// (zeros accumulate at the domain boundary).
    zero_tail_infinite: bool,
}

impl ZeroPoleRegistry {
    pub fn new(
        zeros: Vec<(Complex64, u32)>,
        poles: Vec<(Complex64, u32)>,
        zeros_complete: Completeness,
        poles_complete: Completeness,
    ) -> Result<Self> {
        for (loc, m) in zeros.iter().chain(poles.iter()) {
            if *m < 1 {
                return Err(Error::Config(format!("multiplicity 0 at {loc}")));
            }
        }
        for (z, _) in &zeros {
            if poles.iter().any(|(p, _)| p == z) {
                return Err(Error::Config(format!("{z} registered as both zero and pole")));
            }
        }
        Ok(ZeroPoleRegistry {
            zeros,
            poles,
            zeros_complete,
            poles_complete,
            zero_tail_infinite: false,
        })
    }

    /// Registry that certifies "no zeros, no poles anywhere on the domain".
    pub fn empty_complete() -> Self {
        ZeroPoleRegistry {
            zeros: vec![],
            poles: vec![],
            zeros_complete: Completeness::Full,
            poles_complete: Completeness::Full,
            zero_tail_infinite: false,
        }
    }

    pub fn with_infinite_zero_tail(mut self) -> Self {
        self.zero_tail_infinite = true;
        self
    }

    pub fn zeros(&self) -> &[(Complex64, u32)] {
        &self.zeros
    }

    pub fn poles(&self) -> &[(Complex64, u32)] {
        &self.poles
    }

    pub fn zeros_complete(&self) -> Completeness {
        self.zeros_complete
    }

    pub fn poles_complete(&self) -> Completeness {
        self.poles_complete
    }

    pub fn zero_tail_infinite(&self) -> bool {
        self.zero_tail_infinite
    }

    /// Exhaustive on both sides over the whole domain.
    pub fn is_complete(&self) -> bool {
        self.zeros_complete == Completeness::Full && self.poles_complete == Completeness::Full
    }

    /// Swap the roles of zeros and poles (registry of 1/f).
    pub fn reciprocal(&self) -> Self {
        ZeroPoleRegistry {
            zeros: self.poles.clone(),
            poles: self.zeros.clone(),
            zeros_complete: self.poles_complete,
            poles_complete: self.zeros_complete,
            zero_tail_infinite: false,
        }
    }

    /// Map every location through a univalent map (multiplicities preserved).
    /// Radius-limited completeness degrades to Partial since the image of a
    /// disc is not a disc.
    pub fn mapped(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let degrade = |c: Completeness| match c {
            Completeness::Full => Completeness::Full,
            _ => Completeness::Partial,
        };
        ZeroPoleRegistry {
            zeros: self.zeros.iter().map(|&(z, m)| (f(z), m)).collect(),
            poles: self.poles.iter().map(|&(z, m)| (f(z), m)).collect(),
            zeros_complete: degrade(self.zeros_complete),
            poles_complete: degrade(self.poles_complete),
            zero_tail_infinite: self.zero_tail_infinite,
        }
    }

    fn nearest_pole_distance(&self, z: Complex64) -> f64 {
        self.poles
            .iter()
            .map(|(p, _)| (z - p).norm())
            .fold(f64::INFINITY, f64::min)
    }

    fn nearest_any_distance(&self, z: Complex64) -> f64 {
        self.zeros
            .iter()
            .chain(self.poles.iter())
            .map(|(p, _)| (z - p).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

struct HandleInner {
    label: String,
    domain: DomainDescriptor,
    exponent: Option<ExponentFn>,
    mantissa: MantissaFn,
    closed_derivative: Option<FunctionHandle>,
    registry: Option<ZeroPoleRegistry>,
}

/// Evaluation oracle for a meromorphic function on a declared domain.
///
/// Handles are immutable after construction and cheap to clone (shared
/// internals), so they can be used freely from parallel workers.
#[derive(Clone)]
pub struct FunctionHandle {
    inner: Arc<HandleInner>,
}

impl std::fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FunctionHandle({})", self.inner.label)
    }
}

pub struct HandleBuilder {
    label: String,
    domain: DomainDescriptor,
    exponent: Option<ExponentFn>,
    mantissa: MantissaFn,
    closed_derivative: Option<FunctionHandle>,
    registry: Option<ZeroPoleRegistry>,
}

impl HandleBuilder {
    pub fn new(
        label: impl Into<String>,
        domain: DomainDescriptor,
        mantissa: impl Fn(Complex64) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        HandleBuilder {
            label: label.into(),
            domain,
            exponent: None,
            mantissa: Arc::new(mantissa),
            closed_derivative: None,
            registry: None,
        }
    }

    /// Build from an already-shared mantissa closure.
    pub fn from_parts(label: impl Into<String>, domain: DomainDescriptor, mantissa: MantissaFn) -> Self {
        HandleBuilder {
            label: label.into(),
            domain,
            exponent: None,
            mantissa,
            closed_derivative: None,
            registry: None,
        }
    }

    /// Attach an already-shared exponent closure.
    pub fn exponent_arc(mut self, g: ExponentFn) -> Self {
        self.exponent = Some(g);
        self
    }

    /// Evaluate a plain complex closure (converted to log form).
    pub fn from_plain(
        label: impl Into<String>,
        domain: DomainDescriptor,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        HandleBuilder::new(label, domain, move |z| {
            Ok(sanitize(LogComplex::from_complex(f(z))))
        })
    }

    /// Attach an analytic exponent factor: value = exp(g(z)) * mantissa(z).
    /// `g` must be analytic (pole-free) on the whole domain.
    pub fn exponent(mut self, g: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.exponent = Some(Arc::new(g));
        self
    }

    pub fn registry(mut self, r: ZeroPoleRegistry) -> Self {
        self.registry = Some(r);
        self
    }

    pub fn closed_derivative(mut self, d: FunctionHandle) -> Self {
        self.closed_derivative = Some(d);
        self
    }

    pub fn build(self) -> FunctionHandle {
        FunctionHandle {
            inner: Arc::new(HandleInner {
                label: self.label,
                domain: self.domain,
                exponent: self.exponent,
                mantissa: self.mantissa,
                closed_derivative: self.closed_derivative,
                registry: self.registry,
            }),
        }
    }
}

impl FunctionHandle {
    pub fn label(&self) -> &str {
        &self.inner.label
    }

    pub fn domain(&self) -> &DomainDescriptor {
        &self.inner.domain
    }

    pub fn registry(&self) -> Option<&ZeroPoleRegistry> {
        self.inner.registry.as_ref()
    }

    pub fn has_closed_derivative(&self) -> bool {
        self.inner.closed_derivative.is_some()
    }

    /// The closed-form derivative handle, when the catalog supplied one.
    pub fn closed_derivative_handle(&self) -> Option<FunctionHandle> {
        self.inner.closed_derivative.clone()
    }

    /// The analytic exponent factor, when one was attached.
    pub fn exponent_fn(&self) -> Option<ExponentFn> {
        self.inner.exponent.clone()
    }

    /// Evaluate at `z`. Returns `Pole` within [`POLE_FUSION_RADIUS`] of a
    /// registered pole or where the value is not representable.
    pub fn eval(&self, z: Complex64) -> Result<Value> {
        if !self.inner.domain.contains(z) {
            return Err(Error::Domain(z));
        }
        if let Some(reg) = &self.inner.registry {
            if reg.nearest_pole_distance(z) <= POLE_FUSION_RADIUS {
                return Ok(Value::Pole);
            }
        }
        let m = (self.inner.mantissa)(z)?;
        Ok(self.combine(z, m))
    }

    fn combine(&self, z: Complex64, m: Value) -> Value {
        match (m, &self.inner.exponent) {
            (Value::Pole, _) => Value::Pole,
            (Value::Finite(v), None) => sanitize(v),
            (Value::Finite(v), Some(g)) => {
                let e = g(z);
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Value::Pole;
                }
                sanitize(v.mul(LogComplex::exp_of(e)))
            }
        }
    }

    /// Finite value or an error naming the pole.
    pub fn eval_finite(&self, z: Complex64) -> Result<LogComplex> {
        match self.eval(z)? {
            Value::Finite(v) => Ok(v),
            Value::Pole => Err(Error::Precondition(format!("pole at {z}"))),
        }
    }

    /// Plain complex view (may overflow to infinity for huge magnitudes).
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_finite(z)?.to_complex())
    }

    /// Mantissa value only (the exponential factor stripped); this is what
    /// argument-tracking contour integration follows.
    pub fn winding_value(&self, z: Complex64) -> Result<Value> {
        if !self.inner.domain.contains(z) {
            return Err(Error::Domain(z));
        }
        (self.inner.mantissa)(z)
    }

    /// The j-th derivative as a new handle. Closed forms are chained as far
    /// as the catalog provides them; remaining orders use Cauchy-integral
    /// differentiation on a circle of radius min(0.1, half the distance to
    /// the domain boundary) with 64 trapezoid nodes.
    pub fn derivative(&self, order: u32) -> Result<FunctionHandle> {
        if order == 0 {
            return Ok(self.clone());
        }
        if order > 8 {
            return Err(Error::DerivativeOrder(order));
        }
        let mut base = self.clone();
        let mut remaining = order;
        while remaining > 0 {
            let next = base.inner.closed_derivative.clone();
            match next {
                Some(d) => {
                    base = d;
                    remaining -= 1;
                }
                None => break,
            }
        }
        if remaining == 0 {
            return Ok(base);
        }
        Ok(cauchy_derivative_handle(base, remaining))
    }
}

/// Cauchy-integral differentiation: f^{(j)}(z0) = j!/(N rho^j) * sum_k
/// f(z0 + rho e^{i theta_k}) e^{-i j theta_k}, evaluated in log form.
fn cauchy_derivative_value(base: &FunctionHandle, j: u32, z0: Complex64) -> Result<Value> {
    const NODES: usize = 64;
    let mut rho = 0.1f64.min(base.inner.domain.boundary_distance(z0) / 2.0);
    if let Some(reg) = base.registry() {
        let d = reg.nearest_pole_distance(z0);
        if d.is_finite() {
            rho = rho.min(d / 2.0);
        }
    }
    if !(rho > 1e-12) {
        return Err(Error::NoDifferentiationCircle(z0));
    }
    'retry: for _ in 0..4 {
        let mut terms = Vec::with_capacity(NODES);
        for k in 0..NODES {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / NODES as f64;
            let z = z0 + rho * Complex64::new(theta.cos(), theta.sin());
            match base.eval(z) {
                Ok(Value::Finite(v)) => {
                    terms.push(v.mul(LogComplex::new(0.0, -(j as f64) * theta)));
                }
                _ => {
                    rho /= 2.0;
                    if rho <= 1e-12 {
                        return Err(Error::NoDifferentiationCircle(z0));
                    }
                    continue 'retry;
                }
            }
        }
        let factorial: f64 = (1..=j).map(|k| k as f64).product();
        let scale = LogComplex::new(factorial.ln() - (j as f64) * rho.ln() - (NODES as f64).ln(), 0.0);
        return Ok(sanitize(log_sum(&terms).mul(scale)));
    }
    Err(Error::NoDifferentiationCircle(z0))
}

fn cauchy_derivative_handle(base: FunctionHandle, j: u32) -> FunctionHandle {
    let label = format!("{}^({}~cauchy)", base.label(), j);
    let domain = base.domain().clone();
    let b = base.clone();
    HandleBuilder::new(label, domain, move |z| cauchy_derivative_value(&b, j, z)).build()
}

// --- combinators ---------------------------------------------------------

impl FunctionHandle {
    /// f - a, sharing f's exponent factor: exp(G)(m - a exp(-G)).
    pub fn sub_const(&self, a: Complex64) -> FunctionHandle {
        if a.re == 0.0 && a.im == 0.0 {
            return self.clone();
        }
        let inner = self.inner.clone();
        let label = format!("{} - {}", self.label(), a);
        let a_log = LogComplex::from_complex(a);
        let mantissa: MantissaFn = match inner.exponent.clone() {
            None => {
                let src = inner.mantissa.clone();
                Arc::new(move |z| match src(z)? {
                    Value::Pole => Ok(Value::Pole),
                    Value::Finite(v) => Ok(sanitize(v.sub(a_log))),
                })
            }
            Some(g) => {
                let src = inner.mantissa.clone();
                Arc::new(move |z| match src(z)? {
                    Value::Pole => Ok(Value::Pole),
                    Value::Finite(v) => {
                        let e = g(z);
                        if !e.re.is_finite() || !e.im.is_finite() {
                            return Ok(Value::Pole);
                        }
                        Ok(sanitize(v.sub(a_log.mul(LogComplex::exp_of(-e)))))
                    }
                })
            }
        };
        // zeros of f - a are unknown; poles are f's.
        let registry = self.registry().map(|r| ZeroPoleRegistry {
            zeros: vec![],
            poles: r.poles.clone(),
            zeros_complete: Completeness::Partial,
            poles_complete: r.poles_complete,
            zero_tail_infinite: false,
        });
        // (f - a)' = f', so the closed chain carries over unchanged.
        HandleBuilder {
            label,
            domain: inner.domain.clone(),
            exponent: inner.exponent.clone(),
            mantissa,
            closed_derivative: inner.closed_derivative.clone(),
            registry,
        }
        .build()
    }

    /// 1/(f - a). Zeros of the result are f's poles; its poles (the a-points
    /// of f) are generally unknown unless a = 0 and f's zeros are registered.
    pub fn shifted_reciprocal(&self, a: Complex64) -> FunctionHandle {
        let shifted = self.sub_const(a);
        let label = format!("1/({})", shifted.label());
        let inner = shifted.inner.clone();
        let mantissa: MantissaFn = {
            let src = inner.mantissa.clone();
            Arc::new(move |z| match src(z)? {
                Value::Pole => Ok(Value::Finite(LogComplex::ZERO)),
                Value::Finite(v) if v.is_zero() => Ok(Value::Pole),
                Value::Finite(v) => Ok(Value::Finite(v.recip())),
            })
        };
        let exponent: Option<ExponentFn> = inner.exponent.clone().map(|g| {
            let neg: ExponentFn = Arc::new(move |z| -g(z));
            neg
        });
        let registry = if a.re == 0.0 && a.im == 0.0 {
            self.registry().map(|r| r.reciprocal())
        } else {
            self.registry().map(|r| ZeroPoleRegistry {
                zeros: r.poles.clone(),
                poles: vec![],
                zeros_complete: r.poles_complete,
                poles_complete: Completeness::Partial,
                zero_tail_infinite: false,
            })
        };
        HandleBuilder {
            label,
            domain: inner.domain.clone(),
            exponent,
            mantissa,
            closed_derivative: None,
            registry,
        }
        .build()
    }

    /// 1/f.
    pub fn reciprocal(&self) -> FunctionHandle {
        self.shifted_reciprocal(Complex64::new(0.0, 0.0))
    }

    /// Pointwise quotient of two handles on the same domain (no registry).
    pub fn quotient(label: impl Into<String>, num: &FunctionHandle, den: &FunctionHandle) -> FunctionHandle {
        let n = num.clone();
        let d = den.clone();
        HandleBuilder::new(label, num.domain().clone(), move |z| {
            let nv = n.eval(z)?;
            let dv = d.eval(z)?;
            match (nv, dv) {
                (Value::Finite(a), Value::Finite(b)) if !b.is_zero() => Ok(sanitize(a.div(b))),
                _ => Ok(Value::Pole),
            }
        })
        .build()
    }

    /// Distance from z to the nearest registered zero or pole (infinity when
    /// no registry).
    pub fn nearest_registered(&self, z: Complex64) -> f64 {
        self.registry()
            .map(|r| r.nearest_any_distance(z))
            .unwrap_or(f64::INFINITY)
    }

    /// Same handle with a replaced registry.
    pub fn with_registry(&self, registry: ZeroPoleRegistry) -> FunctionHandle {
        FunctionHandle {
            inner: Arc::new(HandleInner {
                label: self.inner.label.clone(),
                domain: self.inner.domain.clone(),
                exponent: self.inner.exponent.clone(),
                mantissa: self.inner.mantissa.clone(),
                closed_derivative: self.inner.closed_derivative.clone(),
                registry: Some(registry),
            }),
        }
    }

    /// Same handle under a new label.
    pub fn relabel(&self, label: impl Into<String>) -> FunctionHandle {
        FunctionHandle {
            inner: Arc::new(HandleInner {
                label: label.into(),
                domain: self.inner.domain.clone(),
                exponent: self.inner.exponent.clone(),
                mantissa: self.inner.mantissa.clone(),
                closed_derivative: self.inner.closed_derivative.clone(),
                registry: self.inner.registry.clone(),
            }),
        }
    }
}

/// The Cayley-type transform (1+z)/(1-z): maps the unit disc onto Re w > 0
/// and the real interval (-1, 1) increasingly onto (0, +inf).
pub fn cayley(z: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) + z) / (Complex64::new(1.0, 0.0) - z)
}

/// d/dz of the Cayley transform: 2/(1-z)^2.
pub fn cayley_prime(z: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) - z;
    2.0 / (d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn domain_membership_exact() {
        assert!(DomainDescriptor::UnitDisc.contains(c(0.999, 0.0)));
        assert!(!DomainDescriptor::UnitDisc.contains(c(1.0, 0.0)));
        assert!(DomainDescriptor::UpperHalfPlane.contains(c(100.0, 1e-300)));
        assert!(!DomainDescriptor::UpperHalfPlane.contains(c(0.0, 0.0)));
        assert!(DomainDescriptor::CutPlane.contains(c(1.999, 0.0)));
        assert!(!DomainDescriptor::CutPlane.contains(c(2.0, 0.0)));
        assert!(!DomainDescriptor::CutPlane.contains(c(-5.0, 0.0)));
        assert!(DomainDescriptor::CutPlane.contains(c(-5.0, 1e-280)));
        let ann = DomainDescriptor::Annulus { inner: 0.5, outer: 2.0 };
        assert!(ann.contains(c(1.0, 0.0)));
        assert!(!ann.contains(c(0.5, 0.0)));
    }

    #[test]
    fn registry_rejects_bad_entries() {
        assert!(ZeroPoleRegistry::new(
            vec![(c(0.0, 0.0), 0)],
            vec![],
            Completeness::Full,
            Completeness::Full
        )
        .is_err());
        assert!(ZeroPoleRegistry::new(
            vec![(c(0.3, 0.0), 1)],
            vec![(c(0.3, 0.0), 1)],
            Completeness::Full,
            Completeness::Full
        )
        .is_err());
    }

    #[test]
    fn pole_fusion() {
        let reg = ZeroPoleRegistry::new(
            vec![],
            vec![(c(0.0, 0.0), 1)],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap();
        let h = HandleBuilder::from_plain("recip", DomainDescriptor::plane(), |z| 1.0 / z)
            .registry(reg)
            .build();
        assert!(h.eval(c(0.0, 0.0)).unwrap().is_pole());
        assert!(h.eval(c(5e-13, 0.0)).unwrap().is_pole());
        let v = h.eval(c(0.5, 0.0)).unwrap().finite().unwrap();
        assert_relative_eq!(v.to_complex().re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn domain_error_outside() {
        let h = HandleBuilder::from_plain("id", DomainDescriptor::UnitDisc, |z| z).build();
        assert!(matches!(h.eval(c(1.5, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn cauchy_derivative_of_exp() {
        let h = HandleBuilder::from_plain("exp", DomainDescriptor::plane(), |z| z.exp()).build();
        let d3 = h.derivative(3).unwrap();
        let v = d3.eval_complex(c(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 1.0, epsilon = 1e-8);
        assert_relative_eq!(v.im, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn derivative_order_cap() {
        let h = HandleBuilder::from_plain("id", DomainDescriptor::plane(), |z| z).build();
        assert!(matches!(h.derivative(9), Err(Error::DerivativeOrder(9))));
    }

    #[test]
    fn sub_const_and_reciprocal_registry() {
        let reg = ZeroPoleRegistry::new(
            vec![(c(0.0, 0.0), 1)],
            vec![],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap();
        let id = HandleBuilder::from_plain("id", DomainDescriptor::plane(), |z| z)
            .registry(reg)
            .build();
        let r = id.reciprocal();
        let rr = r.registry().unwrap();
        assert_eq!(rr.poles().len(), 1);
        assert!(rr.is_complete());
        let v = r.eval_complex(c(0.25, 0.0)).unwrap();
        assert_relative_eq!(v.re, 4.0, epsilon = 1e-13);

        let s = id.shifted_reciprocal(c(1.0, 0.0));
        let sv = s.eval_complex(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(sv.re, -2.0, epsilon = 1e-13);
        assert_eq!(s.registry().unwrap().poles_complete(), Completeness::Partial);
    }

    #[test]
    fn exponent_factor_huge_values() {
        // f = exp(1000 z): at z = 1 the value has log_abs 1000.
        let h = HandleBuilder::new("bigexp", DomainDescriptor::plane(), |_| {
            Ok(Value::Finite(LogComplex::ONE))
        })
        .exponent(|z| 1000.0 * z)
        .build();
        let v = h.eval_finite(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.log_abs, 1000.0);
    }
}
