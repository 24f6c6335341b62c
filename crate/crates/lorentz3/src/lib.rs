//! Numerical verification kernels for Lorentz 3-manifold geometry.
//!
//! The crate evaluates explicit Lorentz metrics on coordinate charts of R^3
//! through truncated Taylor-jet arithmetic, computes curvature and its
//! covariant derivatives, classifies points by the rank of the frame-read
//! curvature jet, audits left-invariant metrics on 3-dimensional Lie groups
//! by the algebraic Koszul formula, realizes the conformal compactification
//! Ein_3 as the projectivized null quadric of R^{2,3}, and integrates
//! geodesic and normal flows.
//!
//! All numeric kernels are generic over the scalar type via [`scalar::Real`]
//! (f32 or f64); the aliases at the crate root fix f64, which every shipped
//! tolerance is calibrated for.

// tensor index arithmetic reads better with explicit loops and sums
#![allow(clippy::needless_range_loop, clippy::assign_op_pattern)]

pub mod curvjet;
pub mod difftensor;
pub mod einstein;
pub mod expr;
pub mod flows;
pub mod jet;
pub mod liealg;
pub mod linalg;
pub mod models;
pub mod scalar;

pub use scalar::Real;

/// f64 instantiations of the core types.
pub type Jet4 = jet::Jet4<f64>;
pub type Expr64 = expr::Expr<f64>;
pub type VectorField = expr::VectorFieldExpr<f64>;
pub type ChartMetric = difftensor::ChartMetric<f64>;
pub type LieAlgebra3 = liealg::LieAlgebra3<f64>;
pub type ScalarProduct3 = liealg::ScalarProduct3<f64>;
pub type O12Element = liealg::O12Element<f64>;
pub type CurvModElement = liealg::CurvModElement<f64>;
pub type TrigPoly = models::TrigPoly<f64>;
pub type AffineMap3 = models::AffineMap3<f64>;
pub type OrthoFrame = curvjet::OrthoFrame<f64>;
pub type CurvatureJet = curvjet::CurvatureJet<f64>;
pub type ProjPoint5 = einstein::ProjPoint5<f64>;
pub type PhotonPlane = einstein::PhotonPlane<f64>;
pub type O23Element = einstein::O23Element<f64>;
pub type GeodesicState = flows::GeodesicState<f64>;
