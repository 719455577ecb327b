//! Numerical tools for the decay of passive scalars advected by shear flows.
//!
//! The crate is organised around a single model problem: the drift–diffusion
//! equation `∂_t f + u(y) ∂_x f = (ν/2) ∂²_y f` on the two-dimensional torus,
//! with `u` a trigonometric shear profile and `f` mean-free in `x`. Two
//! complementary engines evaluate how fast solutions decay:
//!
//! * [`spectral`] — per-mode Fourier collocation, dense matrix exponentials
//!   and semigroup operator norms, from which decay times are extracted;
//! * [`stochastic`] + [`malliavin`] — Monte Carlo over the stochastic
//!   characteristics `(x + ∫ u(y + √ν B_s) ds, y + √ν B_t)`, together with
//!   the per-path variational weights whose inverse moments control the
//!   decay rate.
//!
//! [`profiles`] defines the shear profiles and their critical-point data,
//! and [`analysis`] fits the measured decay scalings against the predicted
//! exponents.

pub mod analysis;
pub mod error;
pub mod malliavin;
pub mod numerics;
pub mod profiles;
pub mod spectral;
pub mod stochastic;

pub use error::CoreError;
