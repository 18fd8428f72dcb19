//! Quadrature, contour integration, argument-principle counting, and real
//! root bracketing.

mod contour;
mod quadrature;
mod roots;

pub use contour::{
    count_in_region, winding_number, Contour, ContourPiece, Region, PERTURB_CLEARANCE,
};
pub use quadrature::{integrate_1d, integrate_with_splits, QuadResult, QuadratureSpec};
pub use roots::{find_real_roots, find_sign_changes};
