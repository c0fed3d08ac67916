//! Closed-form first-passage laws of the one-dimensional process on and
//! around the interval (-1, 1): two-sided exit, the triple law at first
//! passage, resolvents with killing on exit / entry / point hitting, the
//! interval entrance law and the two-point hitting problem.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;
use crate::stable::StableParams;

const EDGE_TOL: f64 = 1e-12;
const QUAD_TOL: f64 = 1e-12;

/// Joint coordinates around the event of two-sided exit above:
/// start `x` in (-1,1), overshoot `u = X(tau) - 1 > 0`, undershoot from the
/// boundary `v = 1 - X(tau-) in [y, 2]` and distance of the running maximum
/// from the boundary `y = 1 - sup X in [0, 1-x]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleLawPoint {
    pub x: f64,
    pub u: f64,
    pub v: f64,
    pub y: f64,
}

impl TripleLawPoint {
    pub fn validate(&self) -> Result<()> {
        if !(self.x > -1.0 && self.x < 1.0) {
            return Err(Error::Domain(format!("start {} outside (-1,1)", self.x)));
        }
        if !(self.u > 0.0) {
            return Err(Error::Domain(format!("overshoot {} must be positive", self.u)));
        }
        if !(0.0 <= self.y && self.y <= 1.0 - self.x) {
            return Err(Error::Domain(format!("max distance {} outside [0, 1-x]", self.y)));
        }
        if !(self.y <= self.v && self.v <= 2.0) {
            return Err(Error::Domain(format!("undershoot {} outside [y, 2]", self.v)));
        }
        Ok(())
    }
}

fn check_inside(x: f64, what: &str) -> Result<()> {
    if x.abs() >= 1.0 - EDGE_TOL {
        return Err(Error::Domain(format!("{what} = {x} must lie strictly inside (-1, 1)")));
    }
    Ok(())
}

fn check_outside(x: f64, what: &str) -> Result<()> {
    if x.abs() <= 1.0 + EDGE_TOL {
        return Err(Error::Domain(format!("{what} = {x} must lie strictly outside [-1, 1]")));
    }
    Ok(())
}

fn require_one_dim(p: &StableParams) -> Result<()> {
    if p.dim != 1 {
        return Err(Error::Dimension("interval identities are one-dimensional".into()));
    }
    Ok(())
}

/// Probability of exiting (-1, 1) upwards from x:
/// `I_{(1+x)/2}(alpha rho_hat, alpha rho)` (a regularised incomplete beta).
pub fn exit_up_prob(p: &StableParams, x: f64) -> Result<f64> {
    require_one_dim(p)?;
    check_inside(x, "start")?;
    specfun::beta_inc_reg((1.0 + x) / 2.0, p.alpha_rho_hat(), p.alpha_rho())
}

/// Density of the triple law at first passage above 1 before passage below
/// -1, at the point `pt`.
pub fn triple_law_density(p: &StableParams, pt: &TripleLawPoint) -> Result<f64> {
    require_one_dim(p)?;
    pt.validate()?;
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let c = (PI * ar).sin() / PI * specfun::gamma(p.alpha + 1.0)?
        / (specfun::gamma(ar)? * specfun::gamma(arh)?);
    let (x, u, v, y) = (pt.x, pt.u, pt.v, pt.y);
    Ok(c * (1.0 + x).powf(arh)
        * (1.0 - x - y).powf(ar - 1.0)
        * (v - y).powf(arh - 1.0)
        * (2.0 - v).powf(ar)
        / ((2.0 - y).powf(p.alpha) * (u + v).powf(p.alpha + 1.0)))
}

/// Density at y of the resolvent of the process killed on leaving (-1, 1):
/// `2^(1-alpha) |y-x|^(alpha-1) / (Gamma(ar) Gamma(arh)) * J(|1-xy|/|y-x|)`
/// where J carries exponents (ar, arh) when x <= y and (arh, ar) otherwise.
/// The diagonal returns the analytic limit, which is finite only when
/// alpha > 1.
pub fn resolvent_interval(p: &StableParams, x: f64, y: f64) -> Result<f64> {
    require_one_dim(p)?;
    check_inside(x, "x")?;
    check_inside(y, "y")?;
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let c = 2.0f64.powf(1.0 - p.alpha) / (specfun::gamma(ar)? * specfun::gamma(arh)?);
    if (x - y).abs() < EDGE_TOL {
        if p.alpha <= 1.0 {
            return Err(Error::Singularity(format!(
                "interval resolvent diverges on the diagonal for alpha = {} <= 1",
                p.alpha
            )));
        }
        return Ok(c * (1.0 - y * y).powf(p.alpha - 1.0) / (p.alpha - 1.0));
    }
    let m = ((1.0 - x * y) / (y - x)).abs();
    let j = if x <= y {
        quad::branch_integral(m, ar, arh, QUAD_TOL)?
    } else {
        quad::branch_integral(m, arh, ar, QUAD_TOL)?
    };
    Ok(c * (y - x).abs().powf(p.alpha - 1.0) * j)
}

/// Probability of hitting the point y before leaving (-1, 1), started from
/// x. Defined for alpha in (1, 2); points are polar otherwise.
pub fn hit_point_before_exit(p: &StableParams, x: f64, y: f64) -> Result<f64> {
    require_one_dim(p)?;
    if p.alpha <= 1.0 {
        return Err(Error::Domain(format!(
            "points are polar for alpha = {} <= 1",
            p.alpha
        )));
    }
    check_inside(x, "x")?;
    check_inside(y, "y")?;
    if (x - y).abs() < EDGE_TOL {
        return Ok(1.0);
    }
    Ok(resolvent_interval(p, x, y)? / resolvent_interval(p, y, y)?)
}

/// Density at y in (-1, 1) of the position of first entry into the interval
/// from x with |x| > 1. For alpha <= 1 the law is defective (the process may
/// never enter); for alpha in (1, 2) it is proper.
pub fn entrance_density(p: &StableParams, x: f64, y: f64) -> Result<f64> {
    require_one_dim(p)?;
    check_outside(x, "start")?;
    check_inside(y, "entry point")?;
    if x < -1.0 {
        // Reflection: entering from the left is entering from the right for
        // the negated process, which swaps rho and rho_hat.
        return entrance_density(&p.reflected(), -x, -y);
    }
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let base = (PI * arh).sin() / PI * (1.0 + y).powf(-ar) * (1.0 - y).powf(-arh);
    let direct = (x - 1.0).powf(arh) * (1.0 + x).powf(ar) / (x - y);
    if p.alpha <= 1.0 {
        return Ok(base * direct);
    }
    let correction = (p.alpha - 1.0) * quad::branch_integral(x, ar, arh, QUAD_TOL)?;
    Ok(base * (direct - correction))
}

/// Probability that the process started at x with |x| > 1 never enters
/// (-1, 1). Requires alpha in (0, 1); the recurrent cases enter surely.
pub fn avoid_interval_prob(p: &StableParams, x: f64) -> Result<f64> {
    require_one_dim(p)?;
    if p.alpha >= 1.0 {
        return Err(Error::Domain(format!(
            "recurrent case alpha = {} >= 1 enters every interval",
            p.alpha
        )));
    }
    check_outside(x, "start")?;
    if x < -1.0 {
        return avoid_interval_prob(&p.reflected(), -x);
    }
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let c = 2.0f64.powf(1.0 - p.alpha) * specfun::gamma(1.0 - ar)?
        / (specfun::gamma(arh)? * specfun::gamma(1.0 - p.alpha)?);
    Ok(c * quad::branch_integral(x, ar, arh, QUAD_TOL)?)
}

/// Density at y of the resolvent of the process killed on first entry to
/// (-1, 1), for |x| > 1, |y| > 1, x != y.
pub fn resolvent_exterior(p: &StableParams, x: f64, y: f64) -> Result<f64> {
    require_one_dim(p)?;
    check_outside(x, "x")?;
    check_outside(y, "y")?;
    if (x - y).abs() < EDGE_TOL {
        return Err(Error::Singularity("exterior resolvent diverges on the diagonal".into()));
    }
    if x < -1.0 {
        return resolvent_exterior(&p.reflected(), -x, -y);
    }
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let c = 2.0f64.powf(1.0 - p.alpha) / (specfun::gamma(ar)? * specfun::gamma(arh)?);
    let excess = (p.alpha - 1.0).max(0.0);
    let m = ((1.0 - x * y) / (y - x)).abs();
    if y > 1.0 {
        if y > x {
            // y > x > 1.
            let main = (y - x).abs().powf(p.alpha - 1.0)
                * quad::branch_integral(m, ar, arh, QUAD_TOL)?;
            let corr = if excess > 0.0 {
                excess
                    * quad::branch_integral(x, ar, arh, QUAD_TOL)?
                    * quad::branch_integral(y, arh, ar, QUAD_TOL)?
            } else {
                0.0
            };
            Ok(c * (main - corr))
        } else {
            // x > y > 1: swap roles of rho and rho_hat.
            let main = (y - x).abs().powf(p.alpha - 1.0)
                * quad::branch_integral(m, arh, ar, QUAD_TOL)?;
            let corr = if excess > 0.0 {
                excess
                    * quad::branch_integral(y, ar, arh, QUAD_TOL)?
                    * quad::branch_integral(x, arh, ar, QUAD_TOL)?
            } else {
                0.0
            };
            Ok(c * (main - corr))
        }
    } else {
        // x > 1 > -1 > y: sine-ratio prefactor, both branch integrals with
        // the (ar, arh) exponents, the second at |y|.
        let pref = (PI * arh).sin() / (PI * ar).sin();
        let main =
            (y - x).abs().powf(p.alpha - 1.0) * quad::branch_integral(m, ar, arh, QUAD_TOL)?;
        let corr = if excess > 0.0 {
            excess
                * quad::branch_integral(x, ar, arh, QUAD_TOL)?
                * quad::branch_integral(-y, ar, arh, QUAD_TOL)?
        } else {
            0.0
        };
        Ok(c * pref * (main - corr))
    }
}

/// Potential density of the Levy process underlying the censored process
/// through the Lamperti transform, for alpha in (1, 2).
///
/// This is the Bromwich/residue inversion of `1 / Psi-censored(-i z)`:
/// for x > 0
///   `-Gamma(1-alpha)/pi [ sin(pi ar) (1 - (1-e^-x)^(alpha-1))
///                         + sin(pi arh) e^-(alpha-1)x ]`
/// and the mirrored expression for x < 0.
pub fn censored_potential_density(p: &StableParams, x: f64) -> Result<f64> {
    require_one_dim(p)?;
    if !(p.alpha > 1.0) {
        return Err(Error::Domain(format!(
            "censored potential density needs alpha in (1, 2), got {}",
            p.alpha
        )));
    }
    let g = specfun::gamma(1.0 - p.alpha)?; // negative on (1, 2)
    let sr = (PI * p.alpha_rho()).sin();
    let srh = (PI * p.alpha_rho_hat()).sin();
    let am1 = p.alpha - 1.0;
    let v = if x >= 0.0 {
        -g / PI * (sr * (1.0 - (1.0 - (-x).exp()).powf(am1)) + srh * (-am1 * x).exp())
    } else {
        -g / PI * (sr + srh * (1.0 - (1.0 - x.exp()).powf(am1)) * (-am1 * x).exp())
    };
    Ok(v)
}

/// The value at the origin: `-Gamma(1-alpha) (sin(pi ar) + sin(pi arh)) / pi`.
pub fn censored_potential_at_zero(p: &StableParams) -> Result<f64> {
    require_one_dim(p)?;
    if !(p.alpha > 1.0) {
        return Err(Error::Domain(format!(
            "censored potential density needs alpha in (1, 2), got {}",
            p.alpha
        )));
    }
    let g = specfun::gamma(1.0 - p.alpha)?;
    Ok(-g / PI * ((PI * p.alpha_rho()).sin() + (PI * p.alpha_rho_hat()).sin()))
}

/// Probability of hitting 1 before -1 from x > -1, for alpha in (1, 2).
/// Callers with x < -1 should use the reflection
/// `P_x(hit 1 first) = 1 - P-reflected_{-x}(hit 1 first)`.
pub fn two_point_hit_prob(p: &StableParams, x: f64) -> Result<f64> {
    require_one_dim(p)?;
    if !(p.alpha > 1.0) {
        return Err(Error::Domain(format!(
            "two-point hitting needs alpha in (1, 2), got {}",
            p.alpha
        )));
    }
    if x <= -1.0 + EDGE_TOL {
        return Err(Error::Domain(format!(
            "two_point_hit_prob is stated for x > -1 (got {x}); use the reflection identity"
        )));
    }
    if (x - 1.0).abs() < EDGE_TOL {
        return Ok(1.0);
    }
    let am1 = p.alpha - 1.0;
    let sr = (PI * p.alpha_rho()).sin();
    let srh = (PI * p.alpha_rho_hat()).sin();
    let two = 2.0f64.powf(am1);
    let num = if x > 1.0 {
        two * sr - (x - 1.0).powf(am1) * srh + (x + 1.0).powf(am1) * srh
    } else {
        two * sr - (1.0 - x).powf(am1) * sr + (x + 1.0).powf(am1) * srh
    };
    Ok(num / (two * (sr + srh)))
}

/// Sign-dependent sine weight `s(x) = sin(pi ar) 1{x>=0} + sin(pi arh) 1{x<0}`.
fn sine_weight(p: &StableParams, x: f64) -> f64 {
    if x >= 0.0 {
        (PI * p.alpha_rho()).sin()
    } else {
        (PI * p.alpha_rho_hat()).sin()
    }
}

/// Density at y of the resolvent of the process killed on hitting the
/// origin, for alpha in (1, 2):
/// `-Gamma(1-alpha)/pi (|y|^(a-1) s(y) - |y-x|^(a-1) s(y-x) + |x|^(a-1) s(-x))`.
pub fn resolvent_origin_killed(p: &StableParams, x: f64, y: f64) -> Result<f64> {
    require_one_dim(p)?;
    if !(p.alpha > 1.0) {
        return Err(Error::Domain(format!(
            "origin-killed resolvent needs alpha in (1, 2), got {}",
            p.alpha
        )));
    }
    if x == 0.0 || y == 0.0 {
        return Err(Error::Singularity("resolvent killed at the origin needs x, y != 0".into()));
    }
    let g = specfun::gamma(1.0 - p.alpha)?;
    let am1 = p.alpha - 1.0;
    let middle = if (y - x).abs() < EDGE_TOL {
        0.0
    } else {
        (y - x).abs().powf(am1) * sine_weight(p, y - x)
    };
    Ok(-g / PI * (y.abs().powf(am1) * sine_weight(p, y) - middle
        + x.abs().powf(am1) * sine_weight(p, -x)))
}
