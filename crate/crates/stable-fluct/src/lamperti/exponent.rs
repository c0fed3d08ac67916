use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun;
use crate::stable::StableParams;

/// Which positive self-similar Markov process the Levy exponent belongs to.
///
/// * `KilledHalfLine` — the stable process killed on first entry to the
///   negative half-line (a killed Levy process).
/// * `Censored` — the stable process with its negative excursions censored
///   away and the origin absorbing.
/// * `Radial` — the radial part of an isotropic process.
/// * `RadialConditioned` — the radial part under the h-transform by the
///   Riesz weight (the process conditioned to approach the origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentKind {
    KilledHalfLine,
    Censored,
    Radial,
    RadialConditioned,
}

impl ExponentKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "killed_half_line" => Ok(Self::KilledHalfLine),
            "censored" => Ok(Self::Censored),
            "radial" => Ok(Self::Radial),
            "radial_conditioned" => Ok(Self::RadialConditioned),
            other => Err(Error::Domain(format!("unknown exponent kind '{other}'"))),
        }
    }
}

/// 1/Gamma(z), entire in z. Computed through the reflection formula on the
/// left half-plane, where Gamma itself has poles.
pub(crate) fn recip_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi.
        (PI * z).sin() * specfun::gamma_c(Complex64::new(1.0, 0.0) - z).unwrap_or_else(|_| {
            // 1 - z can only hit a pole if z is a positive integer, which is
            // excluded by z.re < 0.5.
            unreachable!()
        }) / PI
    } else {
        match specfun::gamma_c(z) {
            Ok(g) => 1.0 / g,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }
}

fn gamma_ratio(num: Complex64, den: Complex64) -> Result<Complex64> {
    Ok(specfun::gamma_c(num)? * recip_gamma(den))
}

const STRIP_MARGIN: f64 = 1e-9;

/// Open strip of Re(i z) on which `levy_exponent(kind, ...)` is analytic.
pub fn analyticity_strip(kind: ExponentKind, p: &StableParams) -> (f64, f64) {
    let a = p.alpha;
    let d = p.dim as f64;
    match kind {
        ExponentKind::KilledHalfLine => (-1.0, a),
        ExponentKind::Censored => (p.alpha_rho() - 1.0, p.alpha_rho()),
        ExponentKind::Radial => (-d, a),
        ExponentKind::RadialConditioned => (-a, d),
    }
}

fn check_kind(kind: ExponentKind, p: &StableParams) -> Result<()> {
    match kind {
        ExponentKind::KilledHalfLine | ExponentKind::Censored => {
            if p.dim != 1 {
                return Err(Error::Dimension(format!("{kind:?} requires dimension 1")));
            }
        }
        ExponentKind::Radial | ExponentKind::RadialConditioned => {
            if p.dim == 1 && !p.is_symmetric() {
                return Err(Error::InvalidParams(
                    "radial exponents in dimension 1 require the symmetric case rho = 1/2".into(),
                ));
            }
        }
    }
    Ok(())
}

fn check_strip(kind: ExponentKind, p: &StableParams, z: Complex64) -> Result<()> {
    let (lo, hi) = analyticity_strip(kind, p);
    // Re(iz) = -Im(z).
    let s = -z.im;
    if s <= lo + STRIP_MARGIN || s >= hi - STRIP_MARGIN {
        return Err(Error::StripViolation(format!(
            "Re(iz) = {s} outside ({lo}, {hi}) for {kind:?}"
        )));
    }
    Ok(())
}

/// Characteristic exponent of the Levy process associated with the given
/// path transformation, evaluated at complex z with Re(iz) inside the
/// analyticity strip.
pub fn levy_exponent(kind: ExponentKind, p: &StableParams, z: Complex64) -> Result<Complex64> {
    let (up, down) = levy_exponent_factors(kind, p, z)?;
    Ok(up * down)
}

/// The two Wiener-Hopf factors of `levy_exponent`, ascending first. Their
/// product reconstitutes the exponent identically; the ascending factor is
/// (the analytic continuation of) kappa(-i z) and the descending one
/// kappa_hat(i z).
pub fn levy_exponent_factors(
    kind: ExponentKind,
    p: &StableParams,
    z: Complex64,
) -> Result<(Complex64, Complex64)> {
    check_kind(kind, p)?;
    check_strip(kind, p, z)?;
    let a = p.alpha;
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let d = p.dim as f64;
    let iz = Complex64::new(0.0, 1.0) * z;
    let one = Complex64::new(1.0, 0.0);
    match kind {
        ExponentKind::KilledHalfLine => {
            let up = gamma_ratio(a - iz, arh - iz)?;
            let down = gamma_ratio(one + iz, 1.0 - arh + iz)?;
            Ok((up, down))
        }
        ExponentKind::Censored => {
            if a <= 1.0 {
                let up = gamma_ratio(ar - iz, -iz)?;
                let down = gamma_ratio(1.0 - ar + iz, 1.0 - a + iz)?;
                Ok((up, down))
            } else {
                // For alpha > 1 the factors pick up the root at iz = alpha-1
                // (killed ascending ladder) and at iz = 0 (unkilled
                // descending ladder):
                //   kappa(s)     = (alpha - 1 + s) Gamma(alpha rho + s) / Gamma(1 + s)
                //   kappa_hat(s) = s Gamma(1 - alpha rho + s) / Gamma(2 - alpha + s).
                let up = (a - 1.0 - iz) * gamma_ratio(ar - iz, one - iz)?;
                let down = iz * gamma_ratio(1.0 - ar + iz, 2.0 - a + iz)?;
                Ok((up, down))
            }
        }
        ExponentKind::Radial => {
            let up = gamma_ratio((a - iz) / 2.0, -iz / 2.0)?;
            let down = 2.0f64.powf(a) * gamma_ratio((iz + d) / 2.0, (iz + d - a) / 2.0)?;
            Ok((up, down))
        }
        ExponentKind::RadialConditioned => {
            let up = 2.0f64.powf(a) * gamma_ratio((d - iz) / 2.0, (d - a - iz) / 2.0)?;
            let down = gamma_ratio((a + iz) / 2.0, iz / 2.0)?;
            Ok((up, down))
        }
    }
}

/// Levy density of the Lamperti-stable process underlying the stable process
/// killed on entering the negative half-line:
/// `Gamma(1+alpha)/(Gamma(alpha rho) Gamma(1-alpha rho)) e^x (e^x - 1)^(-1-alpha)`
/// for x > 0.
pub fn lamperti_stable_jump_density(p: &StableParams, x: f64) -> Result<f64> {
    if p.dim != 1 {
        return Err(Error::Dimension("Lamperti-stable density stated for dimension 1".into()));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("jump density needs x > 0, got {x}")));
    }
    let ar = p.alpha_rho();
    let c = specfun::gamma(1.0 + p.alpha)? * (PI * ar).sin() / PI;
    let ex = x.exp();
    Ok(c * ex * (ex - 1.0).powf(-1.0 - p.alpha))
}
