//! Discrete resonance sums, moment identities and the reduction to gcd-sums.

mod discrete;
mod mean_square;
mod moments;
mod poisson;
mod reduction;
mod sigma1;
mod weight;

pub use discrete::{d1_discrete, d2_discrete, d2_signed, window_radius, D1Result, D2Result, WINDOW_CAP};
pub use mean_square::{discrete_mean_square, gallagher_check, GallagherCheck, MeanSquare};
pub use moments::{check_moments, moment_integrals, moment_quadrature, MomentCheck, MomentIntegrals};
pub use poisson::{poisson_check, GaussianFamily, PoissonCheck};
pub use reduction::{verify_reduction, ReductionReport, DIRECT_WORK_CAP};
pub use sigma1::{sigma1_closed_form, sigma1_ratio, Sigma1Ratio, PRUNE_MASS};
pub use weight::{weight_and_transform, WeightFunction, WeightValues, TRUNCATION};
