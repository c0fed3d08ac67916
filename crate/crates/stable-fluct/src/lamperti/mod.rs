//! Levy processes and Markov additive processes underlying the stable
//! process through the Lamperti and Lamperti-Kiu transforms: characteristic
//! exponents with their Wiener-Hopf factors, 2x2 matrix exponents with
//! Perron-Frobenius data and Esscher changes of measure, the jump kernel of
//! the d-dimensional MAP, time changes and Doob h-transform weights.

mod exponent;
mod map;
mod time_change;

pub use exponent::{
    analyticity_strip, lamperti_stable_jump_density, levy_exponent, levy_exponent_factors,
    ExponentKind,
};
pub use map::{
    esscher, h_transform_weight, leading_eig, map_exponent, map_jump_kernel, stationary_law,
    EigenData, MapKind, MatrixExponent,
};
pub use time_change::{lamperti_time_change, PathSample, TimeDirection};
