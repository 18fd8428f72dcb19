//! Built-in function catalog plus the JSON schema for user-supplied entries.
//!
//! Naming conventions for the two half-plane maps used by the catalog:
//! [`cayley`] is W1(z) = (1+z)/(1-z) (disc onto the right half-plane), while
//! the disc-to-cut-plane map w(z) = 4z/(z^2+1) lives in [`crate::conformal`].
//! They are deliberately kept as two distinct named functions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::{
    cayley, cayley_prime, Completeness, DomainDescriptor, FunctionHandle, HandleBuilder, Value,
    ZeroPoleRegistry,
};
use crate::error::{Error, Result};
use crate::logcomplex::{log_sum, LogComplex};

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn finite(v: LogComplex) -> Result<Value> {
    Ok(Value::Finite(v))
}

/// Names of every built-in entry, in a stable order.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "identity",
        "zeta",
        "zsq",
        "reciprocal",
        "const-e",
        "exp",
        "h-exp",
        "g4ew",
        "notLP",
        "notLP-L",
        "notLP-broken",
        "sin-levy",
        "poly-two-real",
        "rat1",
        "rat2",
        "rat3",
        "xfer-rat1",
        "xfer-rat2",
        "xfer-rat3",
        "transferred-rational",
        "xfer-notLP",
        "xfer-h-exp",
    ]
}

/// Fetch a built-in catalog entry by name.
pub fn catalog_get(name: &str) -> Result<FunctionHandle> {
    match name {
        "identity" => Ok(identity(DomainDescriptor::UnitDisc)),
        "zeta" => Ok(identity(DomainDescriptor::plane())),
        "zsq" => Ok(zsq()),
        "reciprocal" => Ok(reciprocal()),
        "const-e" => Ok(constant("const-e", c(std::f64::consts::E, 0.0))),
        "exp" => Ok(exp_plain()),
        "h-exp" => Ok(h_exp()),
        "g4ew" => Ok(g4ew()),
        "notLP" => Ok(not_lp()),
        "notLP-L" => Ok(not_lp_logderiv()),
        "notLP-broken" => Ok(not_lp_broken()),
        "sin-levy" => Ok(sin_levy()),
        "poly-two-real" => Ok(poly_unregistered(
            "poly-two-real",
            DomainDescriptor::plane(),
            &[c(-0.03, 0.0), c(0.2, 0.0), c(1.0, 0.0)],
        )
        .with_registry(
            ZeroPoleRegistry::new(
                vec![(c(-0.3, 0.0), 1), (c(0.1, 0.0), 1)],
                vec![],
                Completeness::Full,
                Completeness::Full,
            )
            .unwrap(),
        )),
        "rat1" => Ok(rat1()),
        "rat2" => Ok(rat2()),
        "rat3" => Ok(rat3()),
        "xfer-rat1" => Ok(crate::conformal::transfer(&rat1())),
        "xfer-rat2" | "transferred-rational" => Ok(crate::conformal::transfer(&rat2())),
        "xfer-rat3" => Ok(crate::conformal::transfer(&rat3())),
        "xfer-notLP" => Ok(crate::conformal::transfer(&not_lp())),
        "xfer-h-exp" => Ok(crate::conformal::transfer(&h_exp())),
        other => Err(Error::UnknownCatalogEntry(other.to_string())),
    }
}

fn identity(domain: DomainDescriptor) -> FunctionHandle {
    let one = constant("1", c(1.0, 0.0));
    let label = match domain {
        DomainDescriptor::UnitDisc => "identity",
        _ => "zeta",
    };
    HandleBuilder::new(label, domain, |z| finite(LogComplex::from_complex(z)))
        .registry(
            ZeroPoleRegistry::new(
                vec![(c(0.0, 0.0), 1)],
                vec![],
                Completeness::Full,
                Completeness::Full,
            )
            .unwrap(),
        )
        .closed_derivative(one)
        .build()
}

fn constant(label: &str, value: Complex64) -> FunctionHandle {
    let v = LogComplex::from_complex(value);
    let reg = if value.norm_sqr() == 0.0 {
        // the zero constant vanishes everywhere; leave the registry off
        None
    } else {
        Some(ZeroPoleRegistry::empty_complete())
    };
    let mut b = HandleBuilder::new(label, DomainDescriptor::plane(), move |_| finite(v));
    if let Some(r) = reg {
        b = b.registry(r);
    }
    b.build()
}

fn zsq() -> FunctionHandle {
    let d2 = constant("2", c(2.0, 0.0));
    let d1 = HandleBuilder::new("2z", DomainDescriptor::plane(), |z| {
        finite(LogComplex::from_complex(2.0 * z))
    })
    .closed_derivative(d2)
    .build();
    HandleBuilder::new("zsq", DomainDescriptor::plane(), |z| {
        finite(LogComplex::from_complex(z).powi(2))
    })
    .registry(
        ZeroPoleRegistry::new(
            vec![(c(0.0, 0.0), 2)],
            vec![],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

fn reciprocal() -> FunctionHandle {
    let d1 = HandleBuilder::new("-1/z^2", DomainDescriptor::plane(), |z| {
        finite(LogComplex::from_complex(z).powi(-2).neg())
    })
    .build();
    HandleBuilder::new("reciprocal", DomainDescriptor::plane(), |z| {
        finite(LogComplex::from_complex(z).recip())
    })
    .registry(
        ZeroPoleRegistry::new(
            vec![],
            vec![(c(0.0, 0.0), 1)],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

/// e^z with no closed derivative chain, so derivative() exercises the
/// Cauchy-integral route.
fn exp_plain() -> FunctionHandle {
    HandleBuilder::new("exp", DomainDescriptor::plane(), |_| {
        finite(LogComplex::ONE)
    })
    .exponent(|z| z)
    .registry(ZeroPoleRegistry::empty_complete())
    .build()
}

/// h(z) = exp((1+z)/(1-z)), zero- and pole-free on the disc, with
/// log M(r, h) = (1+r)/(1-r).
fn h_exp() -> FunctionHandle {
    // h'' = (W1'^2 + W1'') h = W1'^2 (2 - z) h
    let d2 = HandleBuilder::new("h-exp''", DomainDescriptor::UnitDisc, |z| {
        let wp = cayley_prime(z);
        finite(LogComplex::from_complex(wp * wp * (c(2.0, 0.0) - z)))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .build();
    let d1 = HandleBuilder::new("h-exp'", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(cayley_prime(z)))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d2)
    .build();
    HandleBuilder::new("h-exp", DomainDescriptor::UnitDisc, |_| {
        finite(LogComplex::ONE)
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d1)
    .build()
}

/// g(z) = 4 exp((1+z)/(1-z)); |g| > 4 on the disc and log M(r, g) grows like
/// (1-r)^{-1}.
fn g4ew() -> FunctionHandle {
    let d1 = HandleBuilder::new("g4ew'", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(4.0 * cayley_prime(z)))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .build();
    HandleBuilder::new("g4ew", DomainDescriptor::UnitDisc, |_| {
        finite(LogComplex::from_real(4.0))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d1)
    .build()
}

/// 3 e^{W1(z)} in log form.
fn three_exp_w1(z: Complex64) -> LogComplex {
    LogComplex::exp_of(cayley(z)).scale(3.0)
}

/// f = exp(3 e^{W1}), W1 = (1+z)/(1-z): f, f' and f'' are all zero-free on
/// the disc and log M(r, f) = 3 exp((1+r)/(1-r)).
fn not_lp() -> FunctionHandle {
    // f'' = e^G * 3 e^{W1} W1'^2 (3 e^{W1} + 2 - z), G = 3 e^{W1}
    let d2 = HandleBuilder::new("notLP''", DomainDescriptor::UnitDisc, |z| {
        let wp = LogComplex::from_complex(cayley_prime(z));
        let head = three_exp_w1(z).mul(wp.powi(2));
        let tail = three_exp_w1(z).add(LogComplex::from_complex(c(2.0, 0.0) - z));
        finite(head.mul(tail))
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .registry(ZeroPoleRegistry::empty_complete())
    .build();
    // f' = e^G * 3 e^{W1} W1'
    let d1 = HandleBuilder::new("notLP'", DomainDescriptor::UnitDisc, |z| {
        finite(three_exp_w1(z).mul(LogComplex::from_complex(cayley_prime(z))))
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d2)
    .build();
    HandleBuilder::new("notLP", DomainDescriptor::UnitDisc, |_| {
        finite(LogComplex::ONE)
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d1)
    .build()
}

/// L = f'/f for the entry above: L = 3 e^{W1} W1', with closed derivative
/// L' = 3 e^{W1} W1'^2 (2 - z), positive on the real interval.
fn not_lp_logderiv() -> FunctionHandle {
    let d1 = HandleBuilder::new("notLP-L'", DomainDescriptor::UnitDisc, |z| {
        let wp = cayley_prime(z);
        finite(LogComplex::from_complex(3.0 * wp * wp * (c(2.0, 0.0) - z)))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .build();
    HandleBuilder::new("notLP-L", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(3.0 * cayley_prime(z)))
    })
    .exponent(cayley)
    .registry(ZeroPoleRegistry::empty_complete())
    .closed_derivative(d1)
    .build()
}

/// notLP multiplied by (z - 0.3): a seeded failure case whose zero-freeness
/// checks must fail with count 1.
fn not_lp_broken() -> FunctionHandle {
    let g_prime = |z: Complex64| three_exp_w1(z).mul(LogComplex::from_complex(cayley_prime(z)));
    // f'' = e^G (G'' m + G'^2 m + 2 G'), m = z - 0.3
    let d2 = HandleBuilder::new("notLP-broken''", DomainDescriptor::UnitDisc, move |z| {
        let m = LogComplex::from_complex(z - c(0.3, 0.0));
        let gp = g_prime(z);
        let wp = LogComplex::from_complex(cayley_prime(z));
        let gpp = three_exp_w1(z)
            .mul(wp.powi(2))
            .mul(LogComplex::from_complex(c(2.0, 0.0) - z));
        let t = log_sum(&[gpp.mul(m), gp.powi(2).mul(m), gp.scale(2.0)]);
        finite(t)
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .build();
    // f' = e^G (1 + G' m)
    let d1 = HandleBuilder::new("notLP-broken'", DomainDescriptor::UnitDisc, move |z| {
        let m = LogComplex::from_complex(z - c(0.3, 0.0));
        finite(LogComplex::ONE.add(g_prime(z).mul(m)))
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .closed_derivative(d2)
    .build();
    HandleBuilder::new("notLP-broken", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(z - c(0.3, 0.0)))
    })
    .exponent(|z| 3.0 * cayley(z).exp())
    .registry(
        ZeroPoleRegistry::new(
            vec![(c(0.3, 0.0), 1)],
            vec![],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

/// Real zeros (n-1)/(n+1), n >= 1, of sin(pi W1), accumulating at 1.
pub fn sin_levy_zero(n: u32) -> f64 {
    (n as f64 - 1.0) / (n as f64 + 1.0)
}

const SIN_LEVY_COVERAGE: f64 = 0.9995;

/// sin(pi (1+z)/(1-z)): infinitely many real zeros accumulating at 1.
///
/// Written as e^{-i pi W1} (e^{2 pi i W1} - 1)/(2i) so the exponential factor
/// can be peeled for argument tracking.
fn sin_levy() -> FunctionHandle {
    // derivative: pi W1' cos(pi W1) = e^{-i pi W1} * pi W1' (e^{2 pi i W1} + 1)/2
    let d1 = HandleBuilder::new("sin-levy'", DomainDescriptor::UnitDisc, |z| {
        let u = Complex64::new(0.0, 2.0 * PI) * cayley(z);
        let half = LogComplex::exp_of(u)
            .add(LogComplex::ONE)
            .scale(0.5)
            .mul(LogComplex::from_complex(PI * cayley_prime(z)));
        finite(half)
    })
    .exponent(|z| Complex64::new(0.0, -PI) * cayley(z))
    .build();

    let mut zeros = Vec::new();
    let mut n = 1u32;
    loop {
        let a = sin_levy_zero(n);
        if a > SIN_LEVY_COVERAGE {
            break;
        }
        zeros.push((c(a, 0.0), 1));
        n += 1;
    }
    let registry = ZeroPoleRegistry::new(
        zeros,
        vec![],
        Completeness::WithinRadius(SIN_LEVY_COVERAGE),
        Completeness::Full,
    )
    .unwrap()
    .with_infinite_zero_tail();

    HandleBuilder::new("sin-levy", DomainDescriptor::UnitDisc, |z| {
        let u = Complex64::new(0.0, 2.0 * PI) * cayley(z);
        let m = LogComplex::exp_of(u)
            .sub(LogComplex::ONE)
            .mul(LogComplex::new(-(2.0f64.ln()), -PI / 2.0));
        finite(m)
    })
    .exponent(|z| Complex64::new(0.0, -PI) * cayley(z))
    .registry(registry)
    .closed_derivative(d1)
    .build()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &ck in coeffs.iter().rev() {
        acc = acc * z + ck;
    }
    acc
}

/// R2(z) = 4z/(z^2+1) on the disc (the transfer of this one is the identity
/// in w).
fn rat1() -> FunctionHandle {
    let d1 = HandleBuilder::new("rat1'", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(crate::conformal::dw_dz(z)))
    })
    .build();
    HandleBuilder::new("rat1", DomainDescriptor::UnitDisc, |z| {
        finite(LogComplex::from_complex(crate::conformal::w_of_z(z)))
    })
    .registry(
        ZeroPoleRegistry::new(
            vec![(c(0.0, 0.0), 1)],
            vec![],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

/// R2(z) = 1/(z - i/2): one pole inside the upper half-disc, so its transfer
/// exercises the pole-counting path.
fn rat2() -> FunctionHandle {
    let p = c(0.0, 0.5);
    let d1 = HandleBuilder::new("rat2'", DomainDescriptor::UnitDisc, move |z| {
        finite(LogComplex::from_complex(z - p).powi(-2).neg())
    })
    .build();
    HandleBuilder::new("rat2", DomainDescriptor::UnitDisc, move |z| {
        finite(LogComplex::from_complex(z - p).recip())
    })
    .registry(
        ZeroPoleRegistry::new(vec![], vec![(p, 1)], Completeness::Full, Completeness::Full)
            .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

/// R2(z) = (z^2 - 1/4)/(z^2 + 1/4): zeros at +-1/2, poles at +-i/2.
fn rat3() -> FunctionHandle {
    let d1 = HandleBuilder::new("rat3'", DomainDescriptor::UnitDisc, |z| {
        let den = z * z + c(0.25, 0.0);
        finite(LogComplex::from_complex(z / (den * den)))
    })
    .build();
    HandleBuilder::new("rat3", DomainDescriptor::UnitDisc, |z| {
        let num = z * z - c(0.25, 0.0);
        let den = z * z + c(0.25, 0.0);
        finite(LogComplex::from_complex(num).div(LogComplex::from_complex(den)))
    })
    .registry(
        ZeroPoleRegistry::new(
            vec![(c(0.5, 0.0), 1), (c(-0.5, 0.0), 1)],
            vec![(c(0.0, 0.5), 1), (c(0.0, -0.5), 1)],
            Completeness::Full,
            Completeness::Full,
        )
        .unwrap(),
    )
    .closed_derivative(d1)
    .build()
}

// --- JSON catalog schema --------------------------------------------------

/// One user-supplied catalog entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntrySpec {
    pub name: String,
    #[serde(flatten)]
    pub expression: ExpressionSpec,
    pub domain: DomainSpec,
    #[serde(default)]
    pub registry: Option<RegistrySpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "expression-tag", content = "params", rename_all = "kebab-case")]
pub enum ExpressionSpec {
    Identity,
    Constant { re: f64, im: f64 },
    /// Ascending coefficients [[re, im], ...].
    Poly { coeffs: Vec<[f64; 2]> },
    Rational { num: Vec<[f64; 2]>, den: Vec<[f64; 2]> },
    Exp,
    /// coeff * exp(scale * (1+z)/(1-z))
    ExpCayley { scale: f64, coeff: f64 },
    /// exp(coeff * exp((1+z)/(1-z)))
    ExpExpCayley { coeff: f64 },
    SinCayley,
    /// Compose a disc entry with the inverse disc-to-cut-plane map.
    Transfer { of: Box<ExpressionSpec> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainSpec {
    UnitDisc,
    UpperHalfPlane,
    CutPlane,
    Annulus { inner: f64, outer: f64 },
    Plane,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegistrySpec {
    #[serde(default)]
    pub zeros: Vec<[f64; 3]>,
    #[serde(default)]
    pub poles: Vec<[f64; 3]>,
    pub complete: bool,
}

impl DomainSpec {
    fn to_descriptor(&self) -> DomainDescriptor {
        match self {
            DomainSpec::UnitDisc => DomainDescriptor::UnitDisc,
            DomainSpec::UpperHalfPlane => DomainDescriptor::UpperHalfPlane,
            DomainSpec::CutPlane => DomainDescriptor::CutPlane,
            DomainSpec::Annulus { inner, outer } => DomainDescriptor::Annulus {
                inner: *inner,
                outer: *outer,
            },
            DomainSpec::Plane => DomainDescriptor::plane(),
        }
    }
}

fn build_expression(
    name: &str,
    expr: &ExpressionSpec,
    domain: DomainDescriptor,
) -> Result<FunctionHandle> {
    match expr {
        ExpressionSpec::Identity => Ok(HandleBuilder::new(name, domain, |z| {
            finite(LogComplex::from_complex(z))
        })
        .closed_derivative(constant("1", c(1.0, 0.0)))
        .build()),
        ExpressionSpec::Constant { re, im } => {
            let v = LogComplex::from_complex(c(*re, *im));
            Ok(HandleBuilder::new(name, domain, move |_| finite(v)).build())
        }
        ExpressionSpec::Poly { coeffs } => {
            let cs: Vec<Complex64> = coeffs.iter().map(|&[re, im]| c(re, im)).collect();
            Ok(poly_unregistered(name, domain, &cs))
        }
        ExpressionSpec::Rational { num, den } => {
            let n: Arc<[Complex64]> = num.iter().map(|&[re, im]| c(re, im)).collect();
            let d: Arc<[Complex64]> = den.iter().map(|&[re, im]| c(re, im)).collect();
            Ok(HandleBuilder::new(name, domain, move |z| {
                let dv = horner(&d, z);
                if dv.norm_sqr() == 0.0 {
                    return Ok(Value::Pole);
                }
                finite(LogComplex::from_complex(horner(&n, z)).div(LogComplex::from_complex(dv)))
            })
            .build())
        }
        ExpressionSpec::Exp => Ok(HandleBuilder::new(name, domain, |_| finite(LogComplex::ONE))
            .exponent(|z| z)
            .build()),
        ExpressionSpec::ExpCayley { scale, coeff } => {
            let (s, cf) = (*scale, *coeff);
            Ok(HandleBuilder::new(name, domain, move |_| {
                finite(LogComplex::from_real(cf))
            })
            .exponent(move |z| s * cayley(z))
            .build())
        }
        ExpressionSpec::ExpExpCayley { coeff } => {
            let cf = *coeff;
            Ok(
                HandleBuilder::new(name, domain, |_| finite(LogComplex::ONE))
                    .exponent(move |z| cf * cayley(z).exp())
                    .build(),
            )
        }
        ExpressionSpec::SinCayley => Ok(HandleBuilder::new(name, domain, |z| {
            let u = Complex64::new(0.0, 2.0 * PI) * cayley(z);
            finite(
                LogComplex::exp_of(u)
                    .sub(LogComplex::ONE)
                    .mul(LogComplex::new(-(2.0f64.ln()), -PI / 2.0)),
            )
        })
        .exponent(|z| Complex64::new(0.0, -PI) * cayley(z))
        .build()),
        ExpressionSpec::Transfer { of } => {
            let base = build_expression(name, of, DomainDescriptor::UnitDisc)?;
            Ok(crate::conformal::transfer(&base))
        }
    }
}

fn poly_unregistered(label: &str, domain: DomainDescriptor, coeffs: &[Complex64]) -> FunctionHandle {
    let coeffs: Arc<[Complex64]> = coeffs.into();
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &ck)| ck * k as f64)
        .collect();
    let dc: Arc<[Complex64]> = deriv.into();
    let d1 = HandleBuilder::new(format!("{label}'"), domain.clone(), move |z| {
        finite(LogComplex::from_complex(horner(&dc, z)))
    })
    .build();
    let cc = coeffs.clone();
    HandleBuilder::new(label, domain, move |z| {
        finite(LogComplex::from_complex(horner(&cc, z)))
    })
    .closed_derivative(d1)
    .build()
}

impl CatalogEntrySpec {
    /// Build the handle this JSON entry describes.
    pub fn build(&self) -> Result<FunctionHandle> {
        let domain = self.domain.to_descriptor();
        let base = build_expression(&self.name, &self.expression, domain)?;
        match &self.registry {
            None => Ok(base),
            Some(spec) => {
                let completeness = if spec.complete {
                    Completeness::Full
                } else {
                    Completeness::Partial
                };
                let reg = ZeroPoleRegistry::new(
                    spec.zeros
                        .iter()
                        .map(|&[re, im, m]| (c(re, im), m as u32))
                        .collect(),
                    spec.poles
                        .iter()
                        .map(|&[re, im, m]| (c(re, im), m as u32))
                        .collect(),
                    completeness,
                    completeness,
                )?;
                Ok(base.with_registry(reg))
            }
        }
    }
}

/// Parse a JSON array of catalog entries.
pub fn load_catalog(json: &str) -> Result<Vec<(String, FunctionHandle)>> {
    let specs: Vec<CatalogEntrySpec> =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("catalog JSON: {e}")))?;
    specs
        .iter()
        .map(|s| Ok((s.name.clone(), s.build()?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_eval() {
        let h = catalog_get("identity").unwrap();
        let v = h.eval_complex(c(0.3, 0.1)).unwrap();
        assert_relative_eq!(v.re, 0.3, epsilon = 1e-15);
        assert_relative_eq!(v.im, 0.1, epsilon = 1e-15);
    }

    #[test]
    fn not_lp_at_origin() {
        // w(0) = 1, f(0) = e^{3e}
        let h = catalog_get("notLP").unwrap();
        let v = h.eval_finite(c(0.0, 0.0)).unwrap();
        assert_relative_eq!(v.log_abs, 3.0 * std::f64::consts::E, epsilon = 1e-12);
        assert_relative_eq!(v.arg_principal(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn not_lp_first_derivative_at_origin() {
        // f'(0) = L(0) f(0) with L(0) = 3 e * 2 = 6e
        let h = catalog_get("notLP").unwrap();
        let d = h.derivative(1).unwrap();
        let v = d.eval_finite(c(0.0, 0.0)).unwrap();
        let expect = (6.0 * std::f64::consts::E).ln() + 3.0 * std::f64::consts::E;
        assert_relative_eq!(v.log_abs, expect, epsilon = 1e-12);
        assert_relative_eq!(v.arg_principal(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn reciprocal_pole_marker() {
        let h = catalog_get("reciprocal").unwrap();
        assert!(h.eval(c(0.0, 0.0)).unwrap().is_pole());
    }

    #[test]
    fn g4ew_exceeds_four() {
        let h = catalog_get("g4ew").unwrap();
        for &z in &[c(0.0, 0.0), c(0.5, 0.3), c(-0.7, 0.2), c(0.0, -0.9)] {
            let v = h.eval_finite(z).unwrap();
            assert!(v.log_abs > 4.0f64.ln(), "|g({z})| <= 4");
        }
    }

    #[test]
    fn sin_levy_zeros_match_formula() {
        let h = catalog_get("sin-levy").unwrap();
        for n in 1..40 {
            let a = sin_levy_zero(n);
            let v = h.eval_finite(c(a, 0.0)).unwrap();
            assert!(
                v.is_zero() || v.log_abs < -28.0,
                "sin-levy({a}) not ~ 0: log|f| = {}",
                v.log_abs
            );
        }
        // midpoints are far from zero
        let v = h.eval_finite(c(0.2, 0.0)).unwrap();
        assert!(v.log_abs > -2.0);
    }

    #[test]
    fn sin_levy_matches_plain_sin_inside() {
        let h = catalog_get("sin-levy").unwrap();
        for &z in &[c(0.2, 0.1), c(-0.4, -0.3), c(0.0, 0.5)] {
            let got = h.eval_complex(z).unwrap();
            let want = (PI * cayley(z)).sin();
            assert_relative_eq!(got.re, want.re, epsilon = 1e-12, max_relative = 1e-12);
            assert_relative_eq!(got.im, want.im, epsilon = 1e-12, max_relative = 1e-12);
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            catalog_get("nope"),
            Err(Error::UnknownCatalogEntry(_))
        ));
    }

    #[test]
    fn json_catalog_roundtrip() {
        let json = r#"[
          {
            "name": "my-poly",
            "expression-tag": "poly",
            "params": { "coeffs": [[-0.25, 0.0], [0.0, 0.0], [1.0, 0.0]] },
            "domain": "unit-disc",
            "registry": { "zeros": [[0.5, 0.0, 1], [-0.5, 0.0, 1]], "poles": [], "complete": true }
          }
        ]"#;
        let entries = load_catalog(json).unwrap();
        assert_eq!(entries.len(), 1);
        let (name, h) = &entries[0];
        assert_eq!(name, "my-poly");
        let v = h.eval_complex(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.norm(), 0.0, epsilon = 1e-15);
        assert!(h.registry().unwrap().is_complete());
    }

    #[test]
    fn real_symmetry_of_real_entries() {
        for name in ["identity", "notLP", "h-exp", "g4ew", "sin-levy", "poly-two-real"] {
            let h = catalog_get(name).unwrap();
            for &z in &[c(0.3, 0.2), c(-0.5, 0.4), c(0.1, -0.6)] {
                let a = h.eval_complex(z).unwrap();
                let b = h.eval_complex(z.conj()).unwrap().conj();
                assert_relative_eq!(a.re, b.re, epsilon = 1e-12, max_relative = 1e-12);
                assert_relative_eq!(a.im, b.im, epsilon = 1e-12, max_relative = 1e-12);
            }
        }
    }
}
