//! Cone model of moduli space and length-spectra metric estimators.
//!
//! The crate is organised bottom-up:
//!
//! * [`curvesys`]: surface types, slopes on the once-punctured torus, the
//!   `SL(2, Z)` action and Farey enumeration.
//! * [`conemodel`]: finite cone complexes whose maximal orthants carry the
//!   half sup metric, the induced path metric and quotient distances.
//! * [`hypgeom`]: hyperbolic structures on the once-punctured torus in trace
//!   coordinates, length functions, the length-spectra and Thurston
//!   asymmetric metrics, and the thin-part product-region estimator of the
//!   Teichmüller distance.
//! * [`modelmap`]: the map from the cone ray into moduli space, the short
//!   pants projection and orbit-minimised moduli distances.
//! * [`lab`]: sweeps, comparisons, divergence sequences and CSV reports.

// `!(x > 0.0)` style checks deliberately reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conemodel;
pub mod curvesys;
mod error;
pub mod hypgeom;
pub mod lab;
pub mod modelmap;

pub use error::{Error, Result};
