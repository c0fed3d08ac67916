use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun;
use crate::stable::StableParams;

/// Which ladder-height process: ascending (running maximum) or descending
/// (running minimum).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Up,
    Down,
}

/// Ladder-height quantities of the one-dimensional process.
///
/// The ascending ladder height is a stable subordinator with Laplace
/// exponent `kappa(s) = s^(alpha rho)`; its potential measure has density
/// `x^(alpha rho - 1) / Gamma(alpha rho)` and its Levy measure has density
/// `alpha rho / Gamma(1 - alpha rho) x^(-1 - alpha rho)`. The descending
/// side is the same with rho_hat in place of rho.
#[derive(Debug, Clone, Copy)]
pub struct Ladder {
    /// alpha * rho for the ascending side, alpha * rho_hat for the descending.
    pub index: f64,
}

impl Ladder {
    /// Laplace exponent kappa(s) = s^index, extended to complex s via the
    /// principal branch.
    pub fn exponent(&self, s: Complex64) -> Complex64 {
        if s.norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        s.powf(self.index)
    }

    /// Density of the ladder-height potential measure at x > 0.
    pub fn potential_density(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("potential density needs x > 0, got {x}")));
        }
        Ok(x.powf(self.index - 1.0) / specfun::gamma(self.index)?)
    }

    /// Density of the ladder-height Levy measure at x > 0.
    pub fn jump_density(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("jump density needs x > 0, got {x}")));
        }
        Ok(self.index / specfun::gamma(1.0 - self.index)? * x.powf(-1.0 - self.index))
    }
}

/// Ladder quantities for the requested side.
pub fn ladder_quantities(p: &StableParams, side: Side) -> Result<Ladder> {
    if p.dim != 1 {
        return Err(Error::Dimension("ladder heights are a one-dimensional notion here".into()));
    }
    let index = match side {
        Side::Up => p.alpha_rho(),
        Side::Down => p.alpha_rho_hat(),
    };
    Ok(Ladder { index })
}

/// Density at u of the overshoot `X_{tau_a^+} - a` over the level a > 0:
/// `sin(pi alpha rho)/pi (u/a)^(-alpha rho) / (a + u)`.
///
/// This is the convolution of the ladder potential with the ladder jump
/// measure; its total mass is one, i.e. the process never creeps upwards.
pub fn overshoot_density(p: &StableParams, a: f64, u: f64) -> Result<f64> {
    if p.dim != 1 {
        return Err(Error::Dimension("overshoot law stated for dimension 1".into()));
    }
    if !(a > 0.0) || !(u > 0.0) {
        return Err(Error::Domain(format!("overshoot density needs a, u > 0, got a={a}, u={u}")));
    }
    let ar = p.alpha_rho();
    Ok((PI * ar).sin() / PI * (u / a).powf(-ar) / (a + u))
}

/// Distribution function of the overshoot over level a.
pub fn overshoot_cdf(p: &StableParams, a: f64, u: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("overshoot cdf needs a > 0, got {a}")));
    }
    if u <= 0.0 {
        return Ok(0.0);
    }
    // int_0^u (sin(pi ar)/pi) (v/a)^(-ar) dv/(a+v) = I_{u/(a+u)}(1-ar, ar)
    // (regularized incomplete beta) after v = a t/(1-t).
    let ar = p.alpha_rho();
    specfun::beta_inc_reg(u / (a + u), 1.0 - ar, ar)
}
