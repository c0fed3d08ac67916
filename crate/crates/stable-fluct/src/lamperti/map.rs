use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lamperti::exponent::recip_gamma;
use crate::specfun;
use crate::stable::StableParams;

/// Which two-state MAP: the one underlying the stable process killed at the
/// origin, or its Doob h-transform (the process conditioned relative to the
/// origin), which is also the Riesz-Bogdan-Zak image of the former.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Stable,
    Conditioned,
}

impl MapKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "stable" => Ok(Self::Stable),
            "conditioned" => Ok(Self::Conditioned),
            other => Err(Error::Domain(format!("unknown MAP kind '{other}'"))),
        }
    }
}

/// A 2x2 complex matrix exponent, rows and columns ordered (+1, -1).
///
/// At z = 0 the matrix reduces to the modulating-chain generator Q:
/// non-negative off-diagonal rates with zero row sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixExponent {
    pub entries: [[Complex64; 2]; 2],
    /// Open interval of Re(iz) on which the evaluation is valid.
    pub domain_strip: (f64, f64),
}

impl MatrixExponent {
    pub fn row_sums(&self) -> [Complex64; 2] {
        [
            self.entries[0][0] + self.entries[0][1],
            self.entries[1][0] + self.entries[1][1],
        ]
    }

    pub fn det(&self) -> Complex64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    /// The matrix as real numbers, failing if any entry has a noticeable
    /// imaginary part.
    pub fn as_real(&self) -> Result<[[f64; 2]; 2]> {
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let e = self.entries[i][j];
                if e.im.abs() > 1e-10 * e.norm().max(1.0) {
                    return Err(Error::Domain(format!(
                        "matrix entry ({i},{j}) = {e} is not real"
                    )));
                }
                out[i][j] = e.re;
            }
        }
        Ok(out)
    }
}

/// Perron-Frobenius data of F(gamma) = Psi(-i gamma): the leading real
/// eigenvalue and its positive right eigenvector, normalised against the
/// stationary law of the modulating chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub chi: f64,
    pub v: [f64; 2],
}

const STRIP_MARGIN: f64 = 1e-9;

fn check_strip(strip: (f64, f64), z: Complex64, what: &str) -> Result<()> {
    let s = -z.im;
    if s <= strip.0 + STRIP_MARGIN || s >= strip.1 - STRIP_MARGIN {
        return Err(Error::StripViolation(format!(
            "Re(iz) = {s} outside ({}, {}) for {what}",
            strip.0, strip.1
        )));
    }
    Ok(())
}

/// Characteristic matrix exponent of the Lamperti-stable MAP (kind
/// `Stable`, valid for Re(iz) in (-1, alpha)) or of its h-transform (kind
/// `Conditioned`, valid for Re(iz) in (-alpha, 1)).
pub fn map_exponent(kind: MapKind, p: &StableParams, z: Complex64) -> Result<MatrixExponent> {
    if p.dim != 1 {
        return Err(Error::Dimension("two-state MAP exponents are one-dimensional".into()));
    }
    let a = p.alpha;
    let ar = p.alpha_rho();
    let arh = p.alpha_rho_hat();
    let iz = Complex64::new(0.0, 1.0) * z;
    let one = Complex64::new(1.0, 0.0);
    match kind {
        MapKind::Stable => {
            let strip = (-1.0, a);
            check_strip(strip, z, "stable MAP exponent")?;
            let num = specfun::gamma_c(a - iz)? * specfun::gamma_c(one + iz)?;
            let e11 = -num * recip_gamma(arh - iz) * recip_gamma(1.0 - arh + iz);
            let e12 = num * recip_gamma(Complex64::new(arh, 0.0))
                * recip_gamma(Complex64::new(1.0 - arh, 0.0));
            let e21 = num * recip_gamma(Complex64::new(ar, 0.0))
                * recip_gamma(Complex64::new(1.0 - ar, 0.0));
            let e22 = -num * recip_gamma(ar - iz) * recip_gamma(1.0 - ar + iz);
            Ok(MatrixExponent { entries: [[e11, e12], [e21, e22]], domain_strip: strip })
        }
        MapKind::Conditioned => {
            let strip = (-a, 1.0);
            check_strip(strip, z, "conditioned MAP exponent")?;
            let num = specfun::gamma_c(one - iz)? * specfun::gamma_c(a + iz)?;
            let e11 = -num * recip_gamma(1.0 - ar - iz) * recip_gamma(ar + iz);
            let e12 = num * recip_gamma(Complex64::new(ar, 0.0))
                * recip_gamma(Complex64::new(1.0 - ar, 0.0));
            let e21 = num * recip_gamma(Complex64::new(arh, 0.0))
                * recip_gamma(Complex64::new(1.0 - arh, 0.0));
            let e22 = -num * recip_gamma(1.0 - arh - iz) * recip_gamma(arh + iz);
            Ok(MatrixExponent { entries: [[e11, e12], [e21, e22]], domain_strip: strip })
        }
    }
}

/// Stationary law of the modulating chain with generator Q, proportional to
/// (q_{-1,1}, q_{1,-1}). Chains with a vanishing switch rate are rejected.
pub fn stationary_law(q: &MatrixExponent) -> Result<[f64; 2]> {
    let qr = q.as_real()?;
    let (up, down) = (qr[1][0], qr[0][1]);
    if !(up > 0.0 && down > 0.0) {
        return Err(Error::InvalidParams(
            "degenerate modulating chain: off-diagonal rates must be positive".into(),
        ));
    }
    let s = up + down;
    Ok([up / s, down / s])
}

/// Leading (Perron-Frobenius) eigenvalue and right eigenvector of the real
/// matrix F(gamma) = Psi(-i gamma), normalised so that pi . v = 1 with pi
/// the stationary law of Q.
pub fn leading_eig(f_at_gamma: &MatrixExponent, q: &MatrixExponent) -> Result<EigenData> {
    let m = f_at_gamma.as_real()?;
    let pi = stationary_law(q)?;
    let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
    let disc = 0.25 * (a - d) * (a - d) + b * c;
    if disc < 0.0 {
        return Err(Error::Domain(format!("complex eigenvalues: discriminant {disc}")));
    }
    let chi = 0.5 * (a + d) + disc.sqrt();
    // Right eigenvector for chi; b > 0 in all cases handled here.
    let raw = [b, chi - a];
    let (v0, v1) = if raw[1].abs() < 1e-300 && b.abs() < 1e-300 {
        (1.0, 1.0)
    } else {
        (raw[0], raw[1])
    };
    if v0 <= 0.0 || v1 <= 0.0 {
        return Err(Error::Domain(format!("eigenvector not positive: ({v0}, {v1})")));
    }
    let norm = pi[0] * v0 + pi[1] * v1;
    Ok(EigenData { chi, v: [v0 / norm, v1 / norm] })
}

/// Esscher (exponential tilting) transform of a matrix exponent:
/// `Delta_v(gamma)^{-1} Psi(z - i gamma) Delta_v(gamma) - chi(gamma) I`.
///
/// `m_fn` evaluates the source exponent; it is called at z - i gamma, at
/// -i gamma (for the Perron-Frobenius data) and at 0 (for the stationary
/// normalisation).
pub fn esscher<F>(m_fn: F, gamma: f64, z: Complex64) -> Result<MatrixExponent>
where
    F: Fn(Complex64) -> Result<MatrixExponent>,
{
    let q = m_fn(Complex64::new(0.0, 0.0))?;
    let f_gamma = m_fn(Complex64::new(0.0, -gamma))?;
    let eig = leading_eig(&f_gamma, &q)?;
    let shifted = m_fn(z - Complex64::new(0.0, gamma))?;
    let mut entries = shifted.entries;
    // Conjugation by diag(v): entry (i,j) scales by v_j / v_i.
    entries[0][1] *= eig.v[1] / eig.v[0];
    entries[1][0] *= eig.v[0] / eig.v[1];
    entries[0][0] -= eig.chi;
    entries[1][1] -= eig.chi;
    Ok(MatrixExponent {
        entries,
        domain_strip: (shifted.domain_strip.0 + gamma, shifted.domain_strip.1 + gamma),
    })
}

/// Jump intensity kernel of the MAP (xi, Theta) underlying the isotropic
/// stable process in dimension d >= 2, with respect to sigma_1(d phi) dy:
/// `c(alpha) e^(y d) / |e^y phi - theta|^(alpha + d)`.
pub fn map_jump_kernel(
    p: &StableParams,
    theta_from: &[f64],
    y: f64,
    phi_to: &[f64],
) -> Result<f64> {
    if p.dim < 2 {
        return Err(Error::Dimension("the sphere-modulated MAP kernel requires d >= 2".into()));
    }
    if theta_from.len() != p.dim || phi_to.len() != p.dim {
        return Err(Error::ShapeMismatch(format!(
            "expected unit {}-vectors, got lengths {} and {}",
            p.dim,
            theta_from.len(),
            phi_to.len()
        )));
    }
    let norm = |v: &[f64]| v.iter().map(|t| t * t).sum::<f64>().sqrt();
    if (norm(theta_from) - 1.0).abs() > 1e-10 || (norm(phi_to) - 1.0).abs() > 1e-10 {
        return Err(Error::Domain("modulator arguments must be unit vectors".into()));
    }
    let d = p.dim as f64;
    let ey = y.exp();
    let dist2: f64 = theta_from
        .iter()
        .zip(phi_to)
        .map(|(t, f)| (ey * f - t) * (ey * f - t))
        .sum();
    if dist2 < 1e-28 {
        return Err(Error::Singularity("kernel blows up at (y, phi) = (0, theta)".into()));
    }
    let c = 2.0f64.powf(p.alpha - 1.0) * PI.powf(-d)
        * specfun::gamma((d + p.alpha) / 2.0)?
        * specfun::gamma(d / 2.0)?
        / specfun::gamma(-p.alpha / 2.0)?.abs();
    Ok(c * (y * d).exp() / dist2.powf((p.alpha + d) / 2.0))
}

/// Doob h-transform weight for conditioning relative to the origin:
/// the sine-weighted `|x|^(alpha-1)` in one dimension and the Riesz weight
/// `|x|^(alpha-d)` in dimension d >= 2.
pub fn h_transform_weight(p: &StableParams, x: &[f64]) -> Result<f64> {
    if x.len() != p.dim {
        return Err(Error::ShapeMismatch(format!(
            "expected a {}-vector, got length {}",
            p.dim,
            x.len()
        )));
    }
    let r2: f64 = x.iter().map(|t| t * t).sum();
    if r2 == 0.0 {
        return Err(Error::Singularity("h-transform weight vanishes/blows up at the origin".into()));
    }
    if p.dim == 1 {
        let s = if x[0] >= 0.0 { (PI * p.alpha_rho_hat()).sin() } else { (PI * p.alpha_rho()).sin() };
        return Ok(s * x[0].abs().powf(p.alpha - 1.0));
    }
    let d = p.dim as f64;
    Ok(r2.powf((p.alpha - d) / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::validate_params;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generator_rows_sum_to_zero() {
        let p = validate_params(1.5, 0.4, 1).unwrap();
        let q = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, 0.0)).unwrap();
        for s in q.row_sums() {
            assert!(s.norm() < 1e-12, "row sum {s}");
        }
        let qr = q.as_real().unwrap();
        assert!(qr[0][1] > 0.0 && qr[1][0] > 0.0);
        // Rates are Gamma(alpha) sin(pi alpha rho_hat or rho) / pi.
        let g = specfun::gamma(p.alpha).unwrap();
        assert_relative_eq!(qr[0][1], g * (PI * p.alpha_rho_hat()).sin() / PI, max_relative = 1e-12);
        assert_relative_eq!(qr[1][0], g * (PI * p.alpha_rho()).sin() / PI, max_relative = 1e-12);
    }

    #[test]
    fn determinant_root_at_alpha_minus_one() {
        for &(a, r) in &[(1.5, 0.5), (1.3, 0.6), (1.7, 0.45)] {
            let p = validate_params(a, r, 1).unwrap();
            let z = Complex64::new(0.0, -(a - 1.0)); // iz = alpha - 1
            let m = map_exponent(MapKind::Stable, &p, z).unwrap();
            assert!(m.det().norm() < 1e-10, "det = {}", m.det());
        }
    }

    #[test]
    fn eigen_data_at_zero_and_critical_gamma() {
        let p = validate_params(1.4, 0.6, 1).unwrap();
        let q = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, 0.0)).unwrap();
        let eig0 = leading_eig(&q, &q).unwrap();
        assert!(eig0.chi.abs() < 1e-12);
        assert_relative_eq!(eig0.v[0], 1.0, max_relative = 1e-10);
        assert_relative_eq!(eig0.v[1], 1.0, max_relative = 1e-10);

        let gamma = p.alpha - 1.0;
        let f = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, -gamma)).unwrap();
        let eig = leading_eig(&f, &q).unwrap();
        assert!(eig.chi.abs() < 1e-10, "chi({gamma}) = {}", eig.chi);
        // v proportional to (sin(pi alpha rho_hat), sin(pi alpha rho)).
        let ratio = eig.v[0] / eig.v[1];
        let target = (PI * p.alpha_rho_hat()).sin() / (PI * p.alpha_rho()).sin();
        assert_relative_eq!(ratio, target, max_relative = 1e-10);
    }

    #[test]
    fn chi_is_convex_on_a_grid() {
        for &(a, r) in &[(1.5, 0.5), (1.3, 0.6), (0.7, 0.5)] {
            let p = validate_params(a, r, 1).unwrap();
            let q = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, 0.0)).unwrap();
            let lo = -0.85;
            let hi = (a - 1.0) - 1e-3;
            let (lo, hi) = if hi <= lo { (-0.9, a - 1.0 - 1e-3) } else { (lo, hi) };
            let n = 21;
            let mut chis = Vec::with_capacity(n);
            for i in 0..n {
                let g = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                let f = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, -g)).unwrap();
                chis.push(leading_eig(&f, &q).unwrap().chi);
            }
            for w in chis.windows(3) {
                let second_diff = w[2] - 2.0 * w[1] + w[0];
                assert!(second_diff >= -1e-9, "convexity violated: {second_diff}");
            }
        }
    }

    #[test]
    fn leading_eig_dominates_other_root() {
        let p = validate_params(1.5, 0.55, 1).unwrap();
        let q = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, 0.0)).unwrap();
        let f = map_exponent(MapKind::Stable, &p, Complex64::new(0.0, -0.3)).unwrap();
        let eig = leading_eig(&f, &q).unwrap();
        let m = f.as_real().unwrap();
        let tr = m[0][0] + m[1][1];
        let other = tr - eig.chi;
        assert!(eig.chi >= other);
    }

    #[test]
    fn esscher_identity_at_zero() {
        let p = validate_params(1.5, 0.45, 1).unwrap();
        let z = Complex64::new(0.6, 0.1);
        let direct = map_exponent(MapKind::Stable, &p, z).unwrap();
        let tilted = esscher(|w| map_exponent(MapKind::Stable, &p, w), 0.0, z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((tilted.entries[i][j] - direct.entries[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn esscher_at_critical_gamma_reproduces_conditioned_exponent() {
        for &(a, r) in &[(1.5, 0.5), (1.3, 0.6), (0.7, 0.5)] {
            let p = validate_params(a, r, 1).unwrap();
            let gamma = a - 1.0;
            let mut rng = ChaCha8Rng::seed_from_u64(43);
            for _ in 0..20 {
                // z - i gamma must stay in the stable strip (-1, alpha);
                // Re(iz) in (-alpha, 1) maps to Re(i(z - i gamma)) = Re(iz) + gamma.
                let s: f64 = rng.gen_range((-a + 0.05)..(1.0 - 0.05));
                let z = Complex64::new(rng.gen_range(-2.0..2.0), -s);
                let tilted = esscher(|w| map_exponent(MapKind::Stable, &p, w), gamma, z).unwrap();
                let target = map_exponent(MapKind::Conditioned, &p, z).unwrap();
                for i in 0..2 {
                    for j in 0..2 {
                        let (t, g) = (tilted.entries[i][j], target.entries[i][j]);
                        assert!(
                            (t - g).norm() <= 1e-10 * g.norm().max(1e-8),
                            "(alpha={a}, rho={r}) entry ({i},{j}): {t} vs {g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn esscher_row_sums_vanish_at_zero_when_chi_zero() {
        let p = validate_params(1.6, 0.5, 1).unwrap();
        let gamma = p.alpha - 1.0; // chi(gamma) = 0
        let tilted =
            esscher(|w| map_exponent(MapKind::Stable, &p, w), gamma, Complex64::new(0.0, 0.0))
                .unwrap();
        for s in tilted.row_sums() {
            assert!(s.norm() < 1e-11, "row sum {s}");
        }
    }

    #[test]
    fn esscher_round_trip() {
        let p = validate_params(1.5, 0.6, 1).unwrap();
        let gamma = 0.3;
        let z = Complex64::new(0.8, -0.05);
        let once = move |w: Complex64| esscher(|u| map_exponent(MapKind::Stable, &p, u), gamma, w);
        let back = esscher(once, -gamma, z).unwrap();
        let direct = map_exponent(MapKind::Stable, &p, z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (b, d) = (back.entries[i][j], direct.entries[i][j]);
                assert!((b - d).norm() <= 1e-10 * d.norm().max(1e-8), "({i},{j}): {b} vs {d}");
            }
        }
    }

    #[test]
    fn conditioned_equals_reflected_stable_at_minus_z() {
        // Riesz-Bogdan-Zak duality at the level of matrix exponents: the
        // conditioned MAP is the negated stable MAP of the reflected process,
        // entrywise, and in particular det Psi-cond(z) = det Psi(-z).
        let p = validate_params(1.3, 0.62, 1).unwrap();
        let ph = p.reflected();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..50 {
            let s: f64 = rng.gen_range((-p.alpha + 0.05)..0.95);
            let z = Complex64::new(rng.gen_range(-2.5..2.5), -s);
            let cond = map_exponent(MapKind::Conditioned, &p, z).unwrap();
            let refl = map_exponent(MapKind::Stable, &ph, -z).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let (c, r) = (cond.entries[i][j], refl.entries[i][j]);
                    assert!((c - r).norm() <= 1e-10 * r.norm().max(1e-8));
                }
            }
            let (dc, ds) = (cond.det(), map_exponent(MapKind::Stable, &p, -z).unwrap().det());
            assert!((dc - ds).norm() <= 1e-9 * ds.norm().max(1e-8));
        }
    }

    #[test]
    fn jump_kernel_swap_symmetry() {
        // |e^w phi - theta|^2 = 1 - 2 e^w phi.theta + e^2w is symmetric under
        // swapping phi and theta, hence kernel(theta,y,phi) e^(-yd) is too.
        let p = validate_params(1.3, 0.5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let rand_unit = |rng: &mut ChaCha8Rng| {
                let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let n = v.iter().map(|t| t * t).sum::<f64>().sqrt();
                v.iter().map(|t| t / n).collect::<Vec<f64>>()
            };
            let th = rand_unit(&mut rng);
            let ph = rand_unit(&mut rng);
            let y: f64 = rng.gen_range(-1.5..1.5);
            if y.abs() < 1e-3 {
                continue;
            }
            let d = p.dim as f64;
            let k1 = map_jump_kernel(&p, &th, y, &ph).unwrap() * (-y * d).exp();
            let k2 = map_jump_kernel(&p, &ph, y, &th).unwrap() * (-y * d).exp();
            assert_relative_eq!(k1, k2, max_relative = 1e-11);
        }
    }

    #[test]
    fn jump_kernel_same_direction_value() {
        let p = validate_params(1.3, 0.5, 2).unwrap();
        let th = [1.0, 0.0];
        let y = 0.7;
        let d = 2.0;
        let v = map_jump_kernel(&p, &th, y, &th).unwrap();
        let c = 2.0f64.powf(p.alpha - 1.0) * PI.powf(-d)
            * specfun::gamma((d + p.alpha) / 2.0).unwrap()
            * specfun::gamma(d / 2.0).unwrap()
            / specfun::gamma(-p.alpha / 2.0).unwrap().abs();
        assert_relative_eq!(
            v,
            c * (y * d).exp() * (y.exp() - 1.0).powf(-p.alpha - d),
            max_relative = 1e-12
        );
    }

    #[test]
    fn jump_kernel_reference_value() {
        // d=2, alpha=1, y=0.5, phi perpendicular to theta.
        let p = validate_params(1.0, 0.5, 2).unwrap();
        let v = map_jump_kernel(&p, &[1.0, 0.0], 0.5, &[0.0, 1.0]).unwrap();
        assert_relative_eq!(v, 0.009603317530655924942, max_relative = 1e-13);
    }

    #[test]
    fn jump_kernel_singularity_rejected() {
        let p = validate_params(1.3, 0.5, 2).unwrap();
        assert!(matches!(
            map_jump_kernel(&p, &[1.0, 0.0], 0.0, &[1.0, 0.0]),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn h_weight_values() {
        // Symmetric case is even.
        let p = validate_params(1.5, 0.5, 1).unwrap();
        assert_relative_eq!(
            h_transform_weight(&p, &[0.7]).unwrap(),
            h_transform_weight(&p, &[-0.7]).unwrap()
        );
        // Positive side carries sin(pi alpha rho_hat).
        let p = validate_params(1.4, 0.6, 1).unwrap();
        let v = h_transform_weight(&p, &[2.0]).unwrap();
        assert_relative_eq!(v, (PI * 0.56).sin() * 2.0f64.powf(0.4), max_relative = 1e-13);
        assert_relative_eq!(v, 1.2961357979878622, max_relative = 1e-13);
        // Riesz weight in d >= 2.
        let p = validate_params(1.5, 0.5, 3).unwrap();
        let v = h_transform_weight(&p, &[1.0, 2.0, 2.0]).unwrap();
        assert_relative_eq!(v, 3.0f64.powf(-1.5), max_relative = 1e-13);
        assert!(h_transform_weight(&p, &[0.0, 0.0, 0.0]).is_err());
    }
}
