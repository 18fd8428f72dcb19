//! The disc-to-cut-plane map w = 4z/(z^2+1), its inverse branch, and the
//! transfer of function handles between the two domains.
//!
//! The map sends the unit disc univalently onto C minus the real rays
//! {X : |X| >= 2}, the upper half-disc onto the upper half-plane, (-1, 1)
//! increasingly onto (-2, 2), and [sqrt(3)-2, 2-sqrt(3)] onto [-1, 1].

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcmodel::{DomainDescriptor, FunctionHandle, HandleBuilder, MantissaFn, Value};
use crate::logcomplex::LogComplex;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// w(z) = 4z/(z^2 + 1).
pub fn w_of_z(z: Complex64) -> Complex64 {
    4.0 * z / (z * z + 1.0)
}

/// dw/dz = 4(1 - z^2)/(1 + z^2)^2.
pub fn dw_dz(z: Complex64) -> Complex64 {
    let den = z * z + 1.0;
    4.0 * (1.0 - z * z) / (den * den)
}

/// Inverse branch into the unit disc: the root of z^2 - (4/w)z + 1 = 0 with
/// |z| < 1.
///
/// The two roots multiply to 1, so the small root is computed as the
/// reciprocal of the large one; the naive quadratic formula cancels as w -> 0.
pub fn z_of_w(w: Complex64) -> Result<Complex64> {
    if w.im.abs() < 1e-14 && w.re.abs() >= 2.0 {
        return Err(Error::BranchCut(w));
    }
    if w.re == 0.0 && w.im == 0.0 {
        return Ok(c(0.0, 0.0));
    }
    // roots of z^2 - 2bz + 1 with b = 2/w
    let b = 2.0 / w;
    let s = (b * b - 1.0).sqrt();
    // pick the sign that maximises |b +- s|
    let q = if (b.re * s.re + b.im * s.im) >= 0.0 { b + s } else { b - s };
    Ok(1.0 / q)
}

/// The forward/inverse/jacobian triple for the disc-to-cut-plane map.
#[derive(Clone)]
pub struct MapPair {
    pub forward: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub inverse: Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>,
    pub jacobian: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

impl MapPair {
    pub fn disc_to_cut_plane() -> Self {
        MapPair {
            forward: Arc::new(w_of_z),
            inverse: Arc::new(z_of_w),
            jacobian: Arc::new(dw_dz),
        }
    }
}

impl Default for MapPair {
    fn default() -> Self {
        MapPair::disc_to_cut_plane()
    }
}

/// G* with G*(w) = G(z): transplant a disc handle to the cut plane.
///
/// The registry is carried through the map; a closed first derivative is
/// wired via (G*)'(w) = G'(z) / w'(z).
pub fn transfer(h: &FunctionHandle) -> FunctionHandle {
    let label = format!("xfer({})", h.label());
    let registry = h.registry().map(|r| r.mapped(w_of_z));
    let src = h.clone();
    let mantissa: MantissaFn = Arc::new(move |w| {
        let z = z_of_w(w)?;
        src.winding_value(z)
    });
    let exponent = transfer_exponent(h);
    let closed = h.closed_derivative_handle().map(|d| {
        let dsrc = d.clone();
        let dlabel = format!("xfer({})'", h.label());
        let dmantissa: MantissaFn = Arc::new(move |w| {
            let z = z_of_w(w)?;
            match dsrc.winding_value(z)? {
                Value::Pole => Ok(Value::Pole),
                Value::Finite(v) => {
                    let jac = dw_dz(z);
                    if jac.norm_sqr() == 0.0 {
                        return Ok(Value::Pole);
                    }
                    Ok(Value::Finite(v.div(LogComplex::from_complex(jac))))
                }
            }
        });
        let mut b = HandleBuilder::from_parts(dlabel, DomainDescriptor::CutPlane, dmantissa);
        if let Some(e) = transfer_exponent(&d) {
            b = b.exponent_arc(e);
        }
        b.build()
    });
    let mut b = HandleBuilder::from_parts(label, DomainDescriptor::CutPlane, mantissa);
    if let Some(e) = exponent {
        b = b.exponent_arc(e);
    }
    if let Some(r) = registry {
        b = b.registry(r);
    }
    if let Some(d) = closed {
        b = b.closed_derivative(d);
    }
    b.build()
}

fn transfer_exponent(
    h: &FunctionHandle,
) -> Option<Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>> {
    h.exponent_fn().map(|g| {
        let composed: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> = Arc::new(move |w| {
            match z_of_w(w) {
                Ok(z) => g(z),
                Err(_) => c(f64::NAN, f64::NAN),
            }
        });
        composed
    })
}

/// F with F(z) = H(w(z)): pull a cut-plane handle back to the disc.
pub fn pullback(h: &FunctionHandle) -> FunctionHandle {
    let label = format!("pullback({})", h.label());
    let registry = h.registry().map(|r| {
        r.mapped(|w| z_of_w(w).unwrap_or(c(f64::NAN, f64::NAN)))
    });
    let src = h.clone();
    let mantissa: MantissaFn = Arc::new(move |z| src.winding_value(w_of_z(z)));
    let exponent = h.exponent_fn().map(|g| {
        let composed: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync> =
            Arc::new(move |z| g(w_of_z(z)));
        composed
    });
    let mut b = HandleBuilder::from_parts(label, DomainDescriptor::UnitDisc, mantissa);
    if let Some(e) = exponent {
        b = b.exponent_arc(e);
    }
    if let Some(r) = registry {
        b = b.registry(r);
    }
    b.build()
}

/// Diagnostics for the half-plane geometry of the map at one point.
#[derive(Clone, Copy, Debug)]
pub struct HalfplaneWitness {
    pub im_w: f64,
    pub abs_w: f64,
    /// |Im w / |w|^2 - (1-|z|^2) Im z / (4|z|^2)|
    pub identity_residual: f64,
    /// Whether |w| >= 1 is required at this z (i.e. 2 - sqrt(3) <= |z| < 1).
    pub abs_w_lower_bound_applies: bool,
}

/// Check Im(w)/|w|^2 = (1-|z|^2) Im z / (4 |z|^2) and the |w| >= 1 bound on
/// the outer annulus.
pub fn halfplane_witness(z: Complex64) -> Result<HalfplaneWitness> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(z));
    }
    let w = w_of_z(z);
    let r2 = z.norm_sqr();
    let lhs = if r2 == 0.0 { 0.0 } else { w.im / w.norm_sqr() };
    let rhs = if r2 == 0.0 {
        0.0
    } else {
        (1.0 - r2) * z.im / (4.0 * r2)
    };
    Ok(HalfplaneWitness {
        im_w: w.im,
        abs_w: w.norm(),
        identity_residual: (lhs - rhs).abs(),
        abs_w_lower_bound_applies: z.norm() >= 2.0 - 3.0f64.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn named_map_values() {
        let s5 = 5.0f64.sqrt();
        let s3 = 3.0f64.sqrt();
        assert_relative_eq!(w_of_z(c(0.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        let wi = w_of_z(c(0.0, s5 - 2.0));
        assert_relative_eq!(wi.re, 0.0, epsilon = 1e-12);
        assert_relative_eq!(wi.im, 1.0, epsilon = 1e-12);
        assert_relative_eq!(w_of_z(c(2.0 - s3, 0.0)).re, 1.0, epsilon = 1e-12);
        assert_relative_eq!(w_of_z(c(s3 - 2.0, 0.0)).re, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn inverse_branch() {
        let s5 = 5.0f64.sqrt();
        let z = z_of_w(c(0.0, 1.0)).unwrap();
        assert_relative_eq!(z.re, 0.0, epsilon = 1e-13);
        assert_relative_eq!(z.im, s5 - 2.0, epsilon = 1e-13);
        assert_relative_eq!(z_of_w(c(0.0, 0.0)).unwrap().norm(), 0.0);
        // near the origin the cancellation-safe form stays accurate
        let w = c(1e-9, 3e-10);
        let zz = z_of_w(w).unwrap();
        assert_relative_eq!((w_of_z(zz) - w).norm(), 0.0, epsilon = 1e-22);
    }

    #[test]
    fn cut_detection() {
        assert!(matches!(z_of_w(c(2.0, 0.0)), Err(Error::BranchCut(_))));
        assert!(matches!(z_of_w(c(-3.5, 0.0)), Err(Error::BranchCut(_))));
        assert!(z_of_w(c(1.999, 0.0)).is_ok());
        assert!(z_of_w(c(3.5, 1e-10)).is_ok());
    }

    #[test]
    fn transfer_of_identity() {
        let id = crate::funcmodel::catalog::catalog_get("identity").unwrap();
        let t = transfer(&id);
        let v = t.eval_complex(c(0.0, 1.0)).unwrap();
        assert_relative_eq!(v.im, 5.0f64.sqrt() - 2.0, epsilon = 1e-12);
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn derivative_transfer_identity() {
        // for G(z) = z^2: (G*)'(w) * 4(1-z^2)/(1+z^2)^2 = 2z
        let g = crate::funcmodel::catalog::catalog_get("zsq").unwrap();
        // restrict to the disc so the transfer applies
        let t = transfer(&g);
        let td = t.derivative(1).unwrap();
        for k in 0..20 {
            let z = 0.67 * c((0.37 * k as f64).cos(), (0.59 * k as f64).sin() * 0.9);
            let w = w_of_z(z);
            let lhs = td.eval_complex(w).unwrap() * dw_dz(z);
            let rhs = 2.0 * z;
            assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-8, max_relative = 1e-8);
            assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-8, max_relative = 1e-8);
        }
    }

    #[test]
    fn witness_identity() {
        let w = halfplane_witness(c(0.0, 0.5)).unwrap();
        assert!(w.identity_residual < 1e-12);
        let on_axis = halfplane_witness(c(0.3, 0.0)).unwrap();
        assert_relative_eq!(on_axis.im_w, 0.0, epsilon = 1e-15);
    }
}
