//! The stable process itself: parameterisation, characteristic exponent,
//! densities, transience/point-hitting classification and ladder-height
//! quantities.

mod density;
mod ladder;
mod params;

pub use density::{free_potential_density, levy_density, levy_density_vec, transition_density};
pub use ladder::{ladder_quantities, overshoot_cdf, overshoot_density, Ladder, Side};
pub use params::{classify, validate_params, Classification, StableParams};

use num_complex::Complex64;

/// Characteristic exponent of the stable process, so that
/// E[exp(i z X_t)] = exp(-t Psi(z)).
///
/// In one dimension
/// `Psi(z) = |z|^alpha (exp(i pi alpha (1/2 - rho)) 1{z>0} + c.c. 1{z<0})`;
/// in dimension d >= 2 the process is isotropic and `Psi(z) = |z|^alpha`.
pub fn char_exponent(p: &StableParams, theta: f64) -> Complex64 {
    if p.dim > 1 {
        return Complex64::new(theta.abs().powf(p.alpha), 0.0);
    }
    if theta == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let phase = std::f64::consts::PI * p.alpha * (0.5 - p.rho) * theta.signum();
    Complex64::from_polar(theta.abs().powf(p.alpha), phase)
}

/// Characteristic exponent for a d-dimensional frequency vector.
pub fn char_exponent_vec(p: &StableParams, theta: &[f64]) -> Complex64 {
    if p.dim == 1 {
        return char_exponent(p, theta[0]);
    }
    let norm = theta.iter().map(|t| t * t).sum::<f64>().sqrt();
    Complex64::new(norm.powf(p.alpha), 0.0)
}
