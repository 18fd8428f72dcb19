//! Numerical value-distribution toolkit for meromorphic functions.
//!
//! The crate computes disc (Nevanlinna) and half-plane (Tsuji) characteristics,
//! the rectangle characteristics that compare with them, the conformal transfer
//! between the unit disc and the cut plane C minus {X real : |X| >= 2},
//! interlacing-product (Levin-Ostrovskii style) factorisations of logarithmic
//! derivatives, and Wiman-Valiron growth profiles, all in log-magnitude
//! arithmetic so catalog functions with doubly exponential growth stay
//! representable.

pub mod conformal;
pub mod error;
pub mod funcmodel;
pub mod levost;
pub mod logcomplex;
pub mod nevanlinna;
pub mod numerics;
pub mod report;
pub mod tsuji;
pub mod wimanvaliron;

pub use error::{Error, Result};
pub use funcmodel::catalog::{catalog_get, catalog_names, load_catalog};
pub use funcmodel::{DomainDescriptor, FunctionHandle, Value, ZeroPoleRegistry};
pub use logcomplex::LogComplex;
pub use numerics::QuadratureSpec;
