use std::f64::consts::PI;

use crate::ball::{dist, dot, norm};
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;
use crate::stable::{free_potential_density, StableParams};

const EDGE_TOL: f64 = 1e-12;

fn require_ball_dim(p: &StableParams) -> Result<()> {
    if p.dim < 2 {
        return Err(Error::Dimension("sphere and ball identities require d >= 2".into()));
    }
    Ok(())
}

fn check_dim(p: &StableParams, x: &[f64]) -> Result<()> {
    if x.len() != p.dim {
        return Err(Error::ShapeMismatch(format!(
            "expected a {}-vector, got length {}",
            p.dim,
            x.len()
        )));
    }
    Ok(())
}

/// Probability of ever hitting the unit sphere from radius r != 1. Zero for
/// alpha <= 1; for alpha in (1, 2) a two-branch Gauss hypergeometric
/// expression.
pub fn sphere_hit_prob_radius(p: &StableParams, r: f64) -> Result<f64> {
    require_ball_dim(p)?;
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be nonnegative, got {r}")));
    }
    if (r - 1.0).abs() < EDGE_TOL {
        return Err(Error::Domain("radius 1 is on the sphere (trivially hit)".into()));
    }
    if p.alpha <= 1.0 {
        return Ok(0.0);
    }
    let a = p.alpha;
    let d = p.dim as f64;
    let pref = specfun::gamma((a + d) / 2.0 - 1.0)? * specfun::gamma(a / 2.0)?
        / (specfun::gamma(d / 2.0)? * specfun::gamma(a - 1.0)?);
    let f = |z: f64| specfun::hyp2f1((d - a) / 2.0, 1.0 - a / 2.0, d / 2.0, z);
    if r < 1.0 {
        Ok(pref * f(r * r)?)
    } else {
        Ok(pref * r.powf(a - d) * f(1.0 / (r * r))?)
    }
}

/// Probability of ever hitting the unit sphere from the point x.
pub fn sphere_hit_prob(p: &StableParams, x: &[f64]) -> Result<f64> {
    check_dim(p, x)?;
    sphere_hit_prob_radius(p, norm(x))
}

/// Density (with respect to the normalised surface measure) of the position
/// of first hitting of the unit sphere:
/// `h(x, y) = C ||x|^2 - 1|^(alpha-1) / |x - y|^(alpha+d-2)` with
/// `C = Gamma((alpha+d)/2 - 1) Gamma(alpha/2) / (Gamma(d/2) Gamma(alpha-1))`.
pub fn sphere_hit_density(p: &StableParams, x: &[f64], y: &[f64]) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    check_dim(p, y)?;
    if p.alpha <= 1.0 {
        return Err(Error::Domain(format!(
            "the sphere is polar for alpha = {} <= 1",
            p.alpha
        )));
    }
    let r = norm(x);
    if (r - 1.0).abs() < EDGE_TOL {
        return Err(Error::Domain("hitting density not defined for a start on the sphere".into()));
    }
    if (norm(y) - 1.0).abs() > 1e-10 {
        return Err(Error::Domain("target point must lie on the unit sphere".into()));
    }
    let a = p.alpha;
    let d = p.dim as f64;
    let c = specfun::gamma((a + d) / 2.0 - 1.0)? * specfun::gamma(a / 2.0)?
        / (specfun::gamma(d / 2.0)? * specfun::gamma(a - 1.0)?);
    Ok(c * (r * r - 1.0).abs().powf(a - 1.0) / dist(x, y).powf(a + d - 2.0))
}

/// The Riesz surface potential constant: for any y on the unit sphere,
/// `int |z - y|^(alpha - d) sigma_1(dz) = Gamma(d/2) Gamma(alpha-1) /
/// (Gamma((alpha+d)/2 - 1) Gamma(alpha/2))`.
pub fn riesz_sphere_constant(p: &StableParams) -> Result<f64> {
    require_ball_dim(p)?;
    if p.alpha <= 1.0 {
        return Err(Error::Domain(format!(
            "Riesz surface constant stated for alpha in (1, 2), got {}",
            p.alpha
        )));
    }
    let a = p.alpha;
    let d = p.dim as f64;
    Ok(specfun::gamma(d / 2.0)? * specfun::gamma(a - 1.0)?
        / (specfun::gamma((a + d) / 2.0 - 1.0)? * specfun::gamma(a / 2.0)?))
}

/// Quadrature of `int |z - pole|^(alpha-d) f(z) sigma_1(dz)` over the unit
/// sphere with `pole` on the sphere, the algebraic singularity at the pole
/// removed by substitution. Supports d = 2 and d = 3.
pub fn riesz_surface_integral<F: Fn(&[f64]) -> f64>(
    p: &StableParams,
    pole: &[f64],
    f: F,
) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, pole)?;
    if (norm(pole) - 1.0).abs() > 1e-10 {
        return Err(Error::Domain("pole must lie on the unit sphere".into()));
    }
    let a = p.alpha;
    match p.dim {
        2 => {
            let phi0 = pole[1].atan2(pole[0]);
            // (1/2pi) int_-pi^pi (2 sin|psi|/2)^(a-2) F(phi0+psi) dpsi with
            // psi = w^(1/(a-1)).
            let g = |w: f64| {
                let psi = w.powf(1.0 / (a - 1.0));
                let sinc = if psi < 1e-8 { 1.0 } else { 2.0 * (psi / 2.0).sin() / psi };
                let z1 = [(phi0 + psi).cos(), (phi0 + psi).sin()];
                let z2 = [(phi0 - psi).cos(), (phi0 - psi).sin()];
                sinc.powf(a - 2.0) * (f(&z1) + f(&z2)) / (2.0 * PI * (a - 1.0))
            };
            quad::integrate(g, 0.0, PI.powf(a - 1.0), 1e-10)
        }
        3 => {
            // Orthonormal basis perpendicular to the pole.
            let e1 = {
                let trial = if pole[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
                let proj = dot(&trial, pole);
                let v: Vec<f64> = (0..3).map(|i| trial[i] - proj * pole[i]).collect();
                let n = norm(&v);
                [v[0] / n, v[1] / n, v[2] / n]
            };
            let e2 = [
                pole[1] * e1[2] - pole[2] * e1[1],
                pole[2] * e1[0] - pole[0] * e1[2],
                pole[0] * e1[1] - pole[1] * e1[0],
            ];
            let n_az = 96;
            let g = |w: f64| {
                let theta = w.powf(1.0 / (a - 1.0));
                let (st, ct) = (theta.sin(), theta.cos());
                let sinc_t = if theta < 1e-8 { 1.0 } else { st / theta };
                let sinc_h = if theta < 1e-8 { 1.0 } else { 2.0 * (theta / 2.0).sin() / theta };
                // Average of f over the azimuth circle at polar angle theta.
                let mut acc = 0.0;
                for k in 0..n_az {
                    let phi = 2.0 * PI * k as f64 / n_az as f64;
                    let (cp, sp) = (phi.cos(), phi.sin());
                    let z: Vec<f64> = (0..3)
                        .map(|i| ct * pole[i] + st * (cp * e1[i] + sp * e2[i]))
                        .collect();
                    acc += f(&z);
                }
                acc /= n_az as f64;
                // sin(theta) (2 sin theta/2)^(a-3) dtheta = sinc_t sinc_h^(a-3)
                // theta^(a-2) dtheta, and theta^(a-2) dtheta = dw / (a-1).
                0.5 * sinc_t * sinc_h.powf(a - 3.0) * acc / (a - 1.0)
            };
            quad::integrate(g, 0.0, PI.powf(a - 1.0), 1e-9)
        }
        _ => Err(Error::Dimension("singular surface quadrature provided for d = 2, 3".into())),
    }
}

/// Density of the resolvent of the process killed on hitting the unit
/// sphere: `kappa |x-y|^(alpha-d) (1 - Q(|y| |x - y/|y|^2| / |y - x|))`
/// where kappa is the free-potential constant and Q the radial sphere-hit
/// probability. For alpha <= 1 the sphere is polar and the free potential is
/// returned.
pub fn sphere_resolvent_density(p: &StableParams, x: &[f64], y: &[f64]) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    check_dim(p, y)?;
    let (rx, ry) = (norm(x), norm(y));
    if (rx - 1.0).abs() < EDGE_TOL || (ry - 1.0).abs() < EDGE_TOL {
        return Err(Error::Domain("resolvent arguments must avoid the unit sphere".into()));
    }
    let free = free_potential_density(p, x, y)?;
    if p.alpha <= 1.0 {
        return Ok(free);
    }
    let ky: Vec<f64> = y.iter().map(|v| v / (ry * ry)).collect();
    let arg = ry * dist(x, &ky) / dist(x, y);
    Ok(free * (1.0 - sphere_hit_prob_radius(p, arg)?))
}

/// Poisson kernel of the unit ball, in both directions:
/// `g(x, y) = pi^-(d/2+1) Gamma(d/2) sin(pi alpha/2)
///            (|1-|x|^2| / |1-|y|^2|)^(alpha/2) |x-y|^-d`,
/// the density of the position of first exit from the ball (|x| < 1 < |y|)
/// or of first entry into it (|x| > 1 > |y|).
pub fn ball_passage_density(p: &StableParams, x: &[f64], y: &[f64]) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    check_dim(p, y)?;
    let (rx, ry) = (norm(x), norm(y));
    let inside_out = rx < 1.0 - EDGE_TOL && ry > 1.0 + EDGE_TOL;
    let outside_in = rx > 1.0 + EDGE_TOL && ry < 1.0 - EDGE_TOL;
    if !(inside_out || outside_in) {
        return Err(Error::Domain(format!(
            "passage density needs |x| < 1 < |y| or |x| > 1 > |y|, got |x|={rx}, |y|={ry}"
        )));
    }
    let d = p.dim as f64;
    let c = PI.powf(-(d / 2.0 + 1.0)) * specfun::gamma(d / 2.0)? * (PI * p.alpha / 2.0).sin();
    Ok(c * ((1.0 - rx * rx).abs() / (1.0 - ry * ry).abs()).powf(p.alpha / 2.0)
        / dist(x, y).powf(d))
}

/// Probability that the unit ball is never entered from |x| > 1:
/// the regularised incomplete beta `I_{1 - 1/|x|^2}(alpha/2, (d-alpha)/2)`.
pub fn never_enter_ball_prob(p: &StableParams, x: &[f64]) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    never_enter_ball_prob_radius(p, norm(x))
}

/// Radial version of `never_enter_ball_prob`.
pub fn never_enter_ball_prob_radius(p: &StableParams, r: f64) -> Result<f64> {
    require_ball_dim(p)?;
    if !(r > 1.0 + EDGE_TOL) {
        return Err(Error::Domain(format!("start must lie outside the closed ball, got |x| = {r}")));
    }
    let d = p.dim as f64;
    // Gamma(d/2)/(Gamma((d-a)/2) Gamma(a/2)) int_0^(r^2-1) (u+1)^(-d/2)
    // u^(a/2-1) du, which is a regularised incomplete beta after
    // t = u/(1+u).
    specfun::beta_inc_reg(1.0 - 1.0 / (r * r), p.alpha / 2.0, (d - p.alpha) / 2.0)
}

/// Interior or exterior of the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallRegion {
    Interior,
    Exterior,
}

impl BallRegion {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "interior" => Ok(Self::Interior),
            "exterior" => Ok(Self::Exterior),
            other => Err(Error::Domain(format!("unknown ball region '{other}'"))),
        }
    }
}

/// Density of the resolvent of the process killed on leaving the unit ball
/// (`Interior`) or killed on entering it (`Exterior`):
/// `2^-alpha pi^(-d/2) Gamma(d/2)/Gamma(alpha/2)^2 |x-y|^(alpha-d)
///  int_0^zeta (u+1)^(-d/2) u^(alpha/2-1) du`
/// with `zeta = (1-|x|^2)(1-|y|^2)/|x-y|^2` resp. `(|x|^2-1)(|y|^2-1)/|x-y|^2`.
pub fn ball_resolvent_density(
    p: &StableParams,
    x: &[f64],
    y: &[f64],
    region: BallRegion,
) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    check_dim(p, y)?;
    let (rx, ry) = (norm(x), norm(y));
    let r = dist(x, y);
    if r < EDGE_TOL {
        return Err(Error::Singularity("ball resolvent diverges on the diagonal".into()));
    }
    let zeta = match region {
        BallRegion::Interior => {
            if !(rx < 1.0 - EDGE_TOL && ry < 1.0 - EDGE_TOL) {
                return Err(Error::Domain(format!(
                    "interior resolvent needs |x|, |y| < 1, got {rx}, {ry}"
                )));
            }
            (1.0 - rx * rx) * (1.0 - ry * ry) / (r * r)
        }
        BallRegion::Exterior => {
            if !(rx > 1.0 + EDGE_TOL && ry > 1.0 + EDGE_TOL) {
                return Err(Error::Domain(format!(
                    "exterior resolvent needs |x|, |y| > 1, got {rx}, {ry}"
                )));
            }
            (rx * rx - 1.0) * (ry * ry - 1.0) / (r * r)
        }
    };
    let a = p.alpha;
    let d = p.dim as f64;
    let c = 2.0f64.powf(-a) * PI.powf(-d / 2.0) * specfun::gamma(d / 2.0)?
        / specfun::gamma(a / 2.0)?.powi(2);
    let incomplete = specfun::beta_inc(zeta / (1.0 + zeta), a / 2.0, (d - a) / 2.0)?;
    Ok(c * r.powf(a - d) * incomplete)
}

/// Total mass of the ball passage kernel over its target region, by
/// quadrature: exit mass over |y| > 1 for |x| < 1 (`Interior`), entrance
/// mass over |y| < 1 for |x| > 1 (`Exterior` start). The angular integral of
/// |x - y|^-d reduces to the classical Poisson-kernel form; the radial
/// integral is done numerically with the edge singularity substituted away.
pub fn ball_passage_mass(p: &StableParams, x: &[f64], region: BallRegion) -> Result<f64> {
    require_ball_dim(p)?;
    check_dim(p, x)?;
    if p.dim > 3 {
        return Err(Error::Dimension("passage-mass quadrature provided for d = 2, 3".into()));
    }
    let xi = norm(x);
    let a = p.alpha;
    let d = p.dim as f64;
    let c = PI.powf(-(d / 2.0 + 1.0)) * specfun::gamma(d / 2.0)? * (PI * a / 2.0).sin();
    let s_d = 2.0 * PI.powf(d / 2.0) / specfun::gamma(d / 2.0)?;
    // Angular mean of |x - r theta|^-d over the unit sphere, in closed
    // Poisson-kernel form.
    let ang = |r: f64| -> f64 {
        let denom = (r * r - xi * xi).abs();
        if p.dim == 2 {
            1.0 / denom
        } else {
            1.0 / (r.max(xi) * denom)
        }
    };
    match region {
        BallRegion::Interior => {
            if !(xi < 1.0 - EDGE_TOL) {
                return Err(Error::Domain(format!("exit mass needs |x| < 1, got {xi}")));
            }
            // M = S_d c (1-xi^2)^(a/2) int_1^inf r^(d-1) (r^2-1)^(-a/2) ang(r) dr,
            // mapped to w = 1/r in (0, 1):
            // integrand w^(a-d-1) (1-w^2)^(-a/2) ang(1/w) w^(d-1) ... combined
            // below; split at w = 1/2 for the two endpoint substitutions.
            let f = |w: f64| -> f64 {
                let r = 1.0 / w;
                r.powf(d - 1.0) * (r * r - 1.0).powf(-a / 2.0) * ang(r) / (w * w)
            };
            // Near w = 0 the integrand behaves like w^(a-1): w = s^(1/a).
            let i1 = quad::integrate(
                |s: f64| {
                    let w = s.powf(1.0 / a);
                    if w < 1e-300 {
                        return 0.0;
                    }
                    f(w) * w.powf(1.0 - a) / a
                },
                0.0,
                0.5f64.powf(a),
                1e-10,
            )?;
            // Near w = 1 the singular factor is (1-w)^(-a/2): v = (1-w)^(1-a/2).
            let e = 1.0 - a / 2.0;
            let i2 = quad::integrate(
                |v: f64| {
                    let omw = v.powf(1.0 / e);
                    let w = 1.0 - omw;
                    if omw < 1e-300 || w <= 0.0 {
                        return 0.0;
                    }
                    f(w) * omw.powf(a / 2.0) / e
                },
                0.0,
                0.5f64.powf(e),
                1e-10,
            )?;
            Ok(s_d * c * (1.0 - xi * xi).powf(a / 2.0) * (i1 + i2))
        }
        BallRegion::Exterior => {
            if !(xi > 1.0 + EDGE_TOL) {
                return Err(Error::Domain(format!("entrance mass needs |x| > 1, got {xi}")));
            }
            // M = S_d c (xi^2-1)^(a/2) int_0^1 r^(d-1) (1-r^2)^(-a/2) ang(r) dr.
            let f = |r: f64| r.powf(d - 1.0) * (1.0 - r * r).powf(-a / 2.0) * ang(r);
            let i1 = quad::integrate(&f, 0.0, 0.5, 1e-10)?;
            let e = 1.0 - a / 2.0;
            let i2 = quad::integrate(
                |v: f64| {
                    let omr = v.powf(1.0 / e);
                    let r = 1.0 - omr;
                    if omr < 1e-300 || r <= 0.0 {
                        return 0.0;
                    }
                    // (1-r^2)^(-a/2) = (1-r)^(-a/2) (1+r)^(-a/2); the first
                    // factor combines with dv.
                    r.powf(d - 1.0) * (1.0 + r).powf(-a / 2.0) * ang(r) * omr.powf(a / 2.0)
                        / (omr * e)
                        * omr
                },
                0.0,
                0.5f64.powf(e),
                1e-10,
            )?;
            Ok(s_d * c * (xi * xi - 1.0).powf(a / 2.0) * (i1 + i2))
        }
    }
}
