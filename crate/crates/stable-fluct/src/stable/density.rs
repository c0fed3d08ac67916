use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;
use crate::stable::{char_exponent, StableParams};

/// Density of the Levy measure at x (one dimension).
///
/// `Gamma(alpha+1)/pi * sin(pi alpha rho) x^(-alpha-1)` on x > 0, with
/// rho_hat in place of rho on x < 0.
pub fn levy_density(p: &StableParams, x: f64) -> Result<f64> {
    if p.dim != 1 {
        return Err(Error::Dimension("levy_density takes a d-vector in dimension >= 2".into()));
    }
    if x == 0.0 {
        return Err(Error::Singularity("Levy density blows up at the origin".into()));
    }
    let c = specfun::gamma(p.alpha + 1.0)? / PI;
    let s = if x > 0.0 { (PI * p.alpha_rho()).sin() } else { (PI * p.alpha_rho_hat()).sin() };
    Ok(c * s * x.abs().powf(-p.alpha - 1.0))
}

/// Density of the isotropic Levy measure at a point y in dimension d >= 2:
/// `2^alpha Gamma((d+alpha)/2) / (pi^(d/2) |Gamma(-alpha/2)|) |y|^(-alpha-d)`.
pub fn levy_density_vec(p: &StableParams, y: &[f64]) -> Result<f64> {
    if p.dim == 1 {
        return levy_density(p, y[0]);
    }
    if y.len() != p.dim {
        return Err(Error::ShapeMismatch(format!("expected {}-vector, got {}", p.dim, y.len())));
    }
    let r2: f64 = y.iter().map(|v| v * v).sum();
    if r2 == 0.0 {
        return Err(Error::Singularity("Levy density blows up at the origin".into()));
    }
    let d = p.dim as f64;
    let c = 2.0f64.powf(p.alpha) * specfun::gamma((d + p.alpha) / 2.0)?
        / (PI.powf(d / 2.0) * specfun::gamma(-p.alpha / 2.0)?.abs());
    Ok(c * r2.powf(-(p.alpha + d) / 2.0))
}

/// Transition density p_t(x) of the one-dimensional process, by Fourier
/// inversion of exp(-Psi(z) t).
///
/// The integrand decays like exp(-t cos(pi alpha (1/2 - rho)) z^alpha); the
/// contour is split at 1/|x| and truncated where the damping factor falls
/// below 1e-18, with panels short enough to resolve the oscillation.
pub fn transition_density(p: &StableParams, t: f64, x: f64) -> Result<f64> {
    if p.dim != 1 {
        return Err(Error::Dimension("transition densities are provided in dimension 1 only".into()));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    let damp = (PI * p.alpha * (0.5 - p.rho)).cos();
    // Truncation point: t damp z^alpha = 42.
    let z_max = (42.0 / (t * damp)).powf(1.0 / p.alpha);
    let f = |z: f64| {
        let psi = char_exponent(p, z);
        ((-psi.re) * t).exp() * (z * x + psi.im * t).cos()
    };
    let split = if x.abs() > 1e-12 { (1.0 / x.abs()).min(z_max) } else { z_max };
    // Panel length bounded by half an oscillation period of cos(z x).
    let mut total = quad::integrate(&f, 0.0, split, 1e-11)?;
    if split < z_max {
        let period = if x.abs() > 1e-12 { PI / x.abs() } else { z_max };
        let mut lo = split;
        while lo < z_max {
            let hi = (lo + period).min(z_max);
            total += quad::integrate(&f, lo, hi, 1e-12)?;
            lo = hi;
        }
    }
    Ok(total / PI)
}

/// Density of the potential measure of the free process,
/// `u(y - x)` with the convention of a transient process.
///
/// In one dimension this requires alpha < 1 and equals
/// `Gamma(1-alpha)/pi (sin(pi alpha rho) 1{y>x} + sin(pi alpha rho_hat) 1{y<x}) |y-x|^(alpha-1)`;
/// in dimension d >= 2 it is the Riesz kernel
/// `2^-alpha pi^(-d/2) Gamma((d-alpha)/2)/Gamma(alpha/2) |y-x|^(alpha-d)`.
pub fn free_potential_density(p: &StableParams, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != p.dim || y.len() != p.dim {
        return Err(Error::ShapeMismatch(format!(
            "expected {}-vectors, got {} and {}",
            p.dim,
            x.len(),
            y.len()
        )));
    }
    let r2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    if r2 == 0.0 {
        return Err(Error::Singularity("free potential density diverges on the diagonal".into()));
    }
    if p.dim == 1 {
        if p.alpha >= 1.0 {
            return Err(Error::Recurrent(format!(
                "one-dimensional process with alpha = {} is recurrent",
                p.alpha
            )));
        }
        let z = y[0] - x[0];
        let s = if z > 0.0 { (PI * p.alpha_rho()).sin() } else { (PI * p.alpha_rho_hat()).sin() };
        return Ok(specfun::gamma(1.0 - p.alpha)? * s / PI * z.abs().powf(p.alpha - 1.0));
    }
    let d = p.dim as f64;
    let c = 2.0f64.powf(-p.alpha) * PI.powf(-d / 2.0) * specfun::gamma((d - p.alpha) / 2.0)?
        / specfun::gamma(p.alpha / 2.0)?;
    Ok(c * r2.powf((p.alpha - d) / 2.0))
}
