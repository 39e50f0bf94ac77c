//! Maslov dequantization and the numerical side of tropicalization: amoeba
//! sampling for curves, Puiseux valuations, Kapranov's theorem and the phase
//! lift.

pub mod amoeba;
pub mod kapranov;
pub mod maslov;
pub mod phase;
pub mod puiseux;
pub mod roots;

pub use amoeba::{directed_hausdorff, sample_amoeba_curve, AmoebaPoint, AmoebaSample, GridSpec};
pub use kapranov::{breakpoints, kapranov_tropicalize, PuiseuxPolynomial};
pub use maslov::{in_tube, t_plus, t_sum, Provenance, TropicalizedPoly};
pub use phase::{phase_limit_experiment, PhaseRow};
pub use puiseux::PuiseuxSeries;
pub use roots::{polynomial_roots, relative_residual};
