//! Special-function kernel: complex log-gamma, incomplete beta and the Gauss
//! hypergeometric function. These are the numerical substrate for every
//! closed-form identity in the crate.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Working accuracy for iterative evaluations.
#[derive(Debug, Clone, Copy)]
pub struct Accuracy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Accuracy {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !(abs_tol > 0.0) {
            return Err(Error::InvalidParams("tolerances must be positive".into()));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParams("max_terms must be at least 1".into()));
        }
        Ok(Self { rel_tol, abs_tol, max_terms })
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Self { rel_tol: 1e-14, abs_tol: 1e-300, max_terms: 10_000 }
    }
}

// Lanczos coefficients (g = 7, n = 9), the same set used by the GNU
// Scientific Library and Numerical Recipes.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const POLE_TOL: f64 = 1e-14;

fn near_nonpositive_integer(z: Complex64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let n = z.re.round();
    n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < POLE_TOL
}

/// Principal branch of log Gamma for complex argument.
///
/// Lanczos approximation on Re(z) >= 0.5. For Re(z) < 0.5 the reflection
/// formula is applied with `ln sin(pi z)` written as
/// `-i pi z + ln(1 - exp(2 pi i z)) + i pi/2 - ln 2`, which is single-valued
/// and analytic on the open upper half-plane; the lower half-plane follows
/// by conjugate symmetry. This keeps the result on the branch that is
/// continuous off the negative real axis rather than merely a branch of
/// log(Gamma).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.im < 0.0 {
        return Ok(ln_gamma(z.conj())?.conj());
    }
    if z.re < 0.5 {
        let lg = ln_gamma(Complex64::new(1.0, 0.0) - z)?;
        let ln_sin = Complex64::new(0.0, -PI) * z
            + (Complex64::new(1.0, 0.0) - (Complex64::new(0.0, 2.0 * PI) * z).exp()).ln()
            + Complex64::new(-(2.0f64.ln()), PI / 2.0);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin - lg);
    }
    let zm1 = z - Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt().ln() + (zm1 + 0.5) * t.ln() - t + acc.ln())
}

/// Gamma(z) for complex argument.
pub fn gamma_c(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        return Ok(PI / (s * gamma_c(Complex64::new(1.0, 0.0) - z)?));
    }
    Ok(ln_gamma(z)?.exp())
}

/// Gamma(x) for real argument (poles rejected as for the complex version).
pub fn gamma(x: f64) -> Result<f64> {
    if x < 0.5 {
        if near_nonpositive_integer(Complex64::new(x, 0.0)) {
            return Err(Error::GammaPole(format!("{x}")));
        }
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let xm1 = x - 1.0;
    let mut acc = LANCZOS_P[0];
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (xm1 + i as f64);
    }
    let t = xm1 + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(xm1 + 0.5) * (-t).exp() * acc)
}

/// ln Gamma(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma_real requires x > 0, got {x}")));
    }
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

/// Complete beta function B(a, b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok((ln_gamma_real(a)? + ln_gamma_real(b)? - ln_gamma_real(a + b)?).exp())
}

const MACHEP: f64 = 1.1e-16;
const BIG: f64 = 4.503599627370496e15;
const BIGINV: f64 = 2.220446049250313e-16;

// Continued fraction expansion #1 for the regularized incomplete beta.
fn incbcf(a: f64, b: f64, x: f64) -> f64 {
    let (mut k1, mut k2, mut k3, mut k4) = (a, a + b, a, a + 1.0);
    let (mut k5, mut k6, mut k7, mut k8) = (1.0, b - 1.0, a + 1.0, a + 2.0);

    let (mut pkm2, mut qkm2, mut pkm1, mut qkm1) = (0.0, 1.0, 1.0, 1.0);
    let mut ans = 1.0;
    let mut r = 1.0;
    let thresh = 3.0 * MACHEP;

    for _ in 0..300 {
        let xk = -(x * k1 * k2) / (k3 * k4);
        let pk = pkm1 + pkm2 * xk;
        let qk = qkm1 + qkm2 * xk;
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;

        let xk = (x * k5 * k6) / (k7 * k8);
        let pk = pkm1 + pkm2 * xk;
        let qk = qkm1 + qkm2 * xk;
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;

        if qk != 0.0 {
            r = pk / qk;
        }
        let t = if r != 0.0 {
            let t = ((ans - r) / r).abs();
            ans = r;
            t
        } else {
            1.0
        };
        if t < thresh {
            break;
        }

        k1 += 1.0;
        k2 += 1.0;
        k3 += 2.0;
        k4 += 2.0;
        k5 += 1.0;
        k6 -= 1.0;
        k7 += 2.0;
        k8 += 2.0;

        if qk.abs() + pk.abs() > BIG {
            pkm2 *= BIGINV;
            pkm1 *= BIGINV;
            qkm2 *= BIGINV;
            qkm1 *= BIGINV;
        }
        if qk.abs() < BIGINV || pk.abs() < BIGINV {
            pkm2 *= BIG;
            pkm1 *= BIG;
            qkm2 *= BIG;
            qkm1 *= BIG;
        }
    }
    ans
}

// Continued fraction expansion #2, better conditioned when x is large.
fn incbd(a: f64, b: f64, x: f64) -> f64 {
    let (mut k1, mut k2, mut k3, mut k4) = (a, b - 1.0, a, a + 1.0);
    let (mut k5, mut k6, mut k7, mut k8) = (1.0, a + b, a + 1.0, a + 2.0);

    let (mut pkm2, mut qkm2, mut pkm1, mut qkm1) = (0.0, 1.0, 1.0, 1.0);
    let z = x / (1.0 - x);
    let mut ans = 1.0;
    let mut r = 1.0;
    let thresh = 3.0 * MACHEP;

    for _ in 0..300 {
        let xk = -(z * k1 * k2) / (k3 * k4);
        let pk = pkm1 + pkm2 * xk;
        let qk = qkm1 + qkm2 * xk;
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;

        let xk = (z * k5 * k6) / (k7 * k8);
        let pk = pkm1 + pkm2 * xk;
        let qk = qkm1 + qkm2 * xk;
        pkm2 = pkm1;
        pkm1 = pk;
        qkm2 = qkm1;
        qkm1 = qk;

        if qk != 0.0 {
            r = pk / qk;
        }
        let t = if r != 0.0 {
            let t = ((ans - r) / r).abs();
            ans = r;
            t
        } else {
            1.0
        };
        if t < thresh {
            break;
        }

        k1 += 1.0;
        k2 -= 1.0;
        k3 += 2.0;
        k4 += 2.0;
        k5 += 1.0;
        k6 += 1.0;
        k7 += 2.0;
        k8 += 2.0;

        if qk.abs() + pk.abs() > BIG {
            pkm2 *= BIGINV;
            pkm1 *= BIGINV;
            qkm2 *= BIGINV;
            qkm1 *= BIGINV;
        }
        if qk.abs() < BIGINV || pk.abs() < BIGINV {
            pkm2 *= BIG;
            pkm1 *= BIG;
            qkm2 *= BIG;
            qkm1 *= BIG;
        }
    }
    ans
}

// Power series for the regularized incomplete beta, for b*x small.
fn incb_pseries(a: f64, b: f64, x: f64) -> Result<f64> {
    let ai = 1.0 / a;
    let mut u = (1.0 - b) * x;
    let mut v = u / (a + 1.0);
    let t1 = v;
    let mut t = u;
    let mut n = 2.0;
    let mut s = 0.0;
    let z = MACHEP * ai;
    while v.abs() > z {
        u = (n - b) * x / n;
        t *= u;
        v = t / (a + n);
        s += v;
        n += 1.0;
        if n > 1e6 {
            return Err(Error::Convergence("incomplete beta power series".into()));
        }
    }
    s += t1;
    s += ai;
    let u = a * x.ln();
    let t = -(ln_gamma_real(a)? + ln_gamma_real(b)? - ln_gamma_real(a + b)?) + u + s.ln();
    Ok(if t < -745.0 { 0.0 } else { t.exp() })
}

/// Regularized incomplete beta I_x(a, b).
pub fn beta_inc_reg(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!("beta_inc requires a, b > 0, got a={a}, b={b}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("beta_inc requires x in [0,1], got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }

    let mut a_ = a;
    let mut b_ = b;
    let mut x_ = x;
    let mut xc = 1.0 - x;
    let mut flag = false;

    if b * x <= 1.0 && x <= 0.95 {
        return incb_pseries(a, b, x);
    }
    if x > a / (a + b) {
        flag = true;
        a_ = b;
        b_ = a;
        x_ = xc;
        xc = x;
    }
    let t = if flag && b_ * x_ <= 1.0 && x_ <= 0.95 {
        incb_pseries(a_, b_, x_)?
    } else {
        let y = x_ * (a_ + b_ - 2.0) - (a_ - 1.0);
        let w = if y < 0.0 { incbcf(a_, b_, x_) } else { incbd(a_, b_, x_) / xc };
        let lnb = ln_gamma_real(a_)? + ln_gamma_real(b_)? - ln_gamma_real(a_ + b_)?;
        let t = a_ * x_.ln() + b_ * xc.ln() - lnb + (w / a_).ln();
        if t < -745.0 {
            0.0
        } else {
            t.exp()
        }
    };
    Ok(if flag {
        if t <= MACHEP {
            1.0 - MACHEP
        } else {
            1.0 - t
        }
    } else {
        t
    })
}

/// Unnormalised lower incomplete beta: the integral of t^(a-1) (1-t)^(b-1)
/// over (0, x).
pub fn beta_inc(x: f64, a: f64, b: f64) -> Result<f64> {
    Ok(beta_inc_reg(x, a, b)? * beta(a, b)?)
}

/// Gauss hypergeometric 2F1(a, b; c; z) for real arguments and z in (-1, 1].
///
/// Direct series on [0, 1/2), a Pfaff transformation for negative z and the
/// 1-z linear transformation on [1/2, 1). At z = 1 the Gauss summation
/// applies when c - a - b > 0 and the series diverges otherwise.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    hyp2f1_acc(a, b, c, z, &Accuracy::default())
}

pub fn hyp2f1_acc(a: f64, b: f64, c: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    if near_nonpositive_integer(Complex64::new(c, 0.0)) {
        return Err(Error::GammaPole(format!("c = {c}")));
    }
    if !(-1.0 < z && z <= 1.0) {
        return Err(Error::Domain(format!("hyp2f1 requires z in (-1, 1], got {z}")));
    }
    // Polynomial cases terminate regardless of z.
    let poly_n = |t: f64| -> Option<usize> {
        let n = -t;
        if n >= 0.0 && (n - n.round()).abs() < POLE_TOL {
            Some(n.round() as usize)
        } else {
            None
        }
    };
    if let Some(n) = poly_n(a).into_iter().chain(poly_n(b)).min() {
        return hyp2f1_series_n(a, b, c, z, n + 1, acc);
    }

    if z == 1.0 {
        let s = c - a - b;
        if s <= 0.0 {
            return Err(Error::Divergence(format!("2F1 at z=1 needs c-a-b>0, got {s}")));
        }
        return gauss_value(a, b, c);
    }
    if z < 0.0 {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp2f1_series(a, c - b, c, w, acc)?);
    }
    if z < 0.5 {
        return hyp2f1_series(a, b, c, z, acc);
    }
    // Linear 1-z transformation. Needs c-a-b away from an integer; all uses
    // in this crate have fractional c-a-b.
    let s = c - a - b;
    if (s - s.round()).abs() < 1e-7 {
        return Err(Error::Convergence(format!(
            "2F1 connection formula ill-conditioned: c-a-b = {s} near an integer"
        )));
    }
    let w = 1.0 - z;
    let g = |t: f64| ln_gamma_real_signed(t);
    let (l1, s1) = {
        let (lc, sc) = g(c)?;
        let (ls, ss) = g(s)?;
        let (lca, sca) = g(c - a)?;
        let (lcb, scb) = g(c - b)?;
        (lc + ls - lca - lcb, sc * ss * sca * scb)
    };
    let (l2, s2) = {
        let (lc, sc) = g(c)?;
        let (ls, ss) = g(-s)?;
        let (la, sa) = g(a)?;
        let (lb, sb) = g(b)?;
        (lc + ls - la - lb, sc * ss * sa * sb)
    };
    let term1 = s1 * l1.exp() * hyp2f1_series(a, b, a + b - c + 1.0, w, acc)?;
    let term2 = s2 * (l2 + s * w.ln()).exp() * hyp2f1_series(c - a, c - b, c - a - b + 1.0, w, acc)?;
    Ok(term1 + term2)
}

// ln |Gamma(x)| together with the sign of Gamma(x), for any non-pole real x.
fn ln_gamma_real_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((ln_gamma_real(x)?, 1.0));
    }
    if near_nonpositive_integer(Complex64::new(x, 0.0)) {
        return Err(Error::GammaPole(format!("{x}")));
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    let s = (PI * x).sin();
    let l = PI.ln() - s.abs().ln() - ln_gamma_real(1.0 - x)?;
    Ok((l, s.signum()))
}

/// Gauss summation: 2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)).
pub fn gauss_value(a: f64, b: f64, c: f64) -> Result<f64> {
    let (l1, s1) = ln_gamma_real_signed(c)?;
    let (l2, s2) = ln_gamma_real_signed(c - a - b)?;
    let (l3, s3) = ln_gamma_real_signed(c - a)?;
    let (l4, s4) = ln_gamma_real_signed(c - b)?;
    Ok(s1 * s2 * s3 * s4 * (l1 + l2 - l3 - l4).exp())
}

fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, acc: &Accuracy) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..acc.max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (1.0 + nf)) * z;
        sum += term;
        if term.abs() < acc.rel_tol * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("2F1 series at z={z}")))
}

fn hyp2f1_series_n(a: f64, b: f64, c: f64, z: f64, nterms: usize, _acc: &Accuracy) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..nterms.saturating_sub(1) {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (1.0 + nf)) * z;
        sum += term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Stirling series with upward recursion, an evaluation path independent
    // of the Lanczos fit above. Good to ~1e-13 for the shifts used here.
    fn ln_gamma_stirling(z: Complex64) -> Complex64 {
        if z.re < 0.5 {
            let lg = ln_gamma_stirling(Complex64::new(1.0, 0.0) - z);
            let s = (PI * z).sin();
            return Complex64::new(PI.ln(), 0.0) - s.ln() - lg;
        }
        let mut shift = Complex64::new(0.0, 0.0);
        let mut w = z;
        while w.norm() < 20.0 {
            shift += w.ln();
            w += 1.0;
        }
        // Bernoulli numbers B_2..B_16 over 2k(2k-1).
        let coef = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
            -3617.0 / 122400.0,
        ];
        let mut series = Complex64::new(0.0, 0.0);
        let winv2 = 1.0 / (w * w);
        let mut p = 1.0 / w;
        for c in coef {
            series += c * p;
            p *= winv2;
        }
        (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - shift
    }

    #[test]
    fn ln_gamma_known_values() {
        // Gamma(1/2) = sqrt(pi), Gamma(5) = 24.
        let v = ln_gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(v.re, 0.5723649429247001, max_relative = 1e-14);
        assert!(v.im.abs() < 1e-14);
        let v = ln_gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, 3.1780538303479456, max_relative = 1e-14);
    }

    #[test]
    fn ln_gamma_complex_reference() {
        // 50-digit reference for log Gamma(1.5 + 2i).
        let v = ln_gamma(Complex64::new(1.5, 2.0)).unwrap();
        assert_relative_eq!(v.re, -1.4991963725850954883637, max_relative = 1e-13);
        assert_relative_eq!(v.im, 0.7332806816909978761252, max_relative = 1e-13);
        // Cross-check exp(ln_gamma) against the independent Stirling route.
        let s = ln_gamma_stirling(Complex64::new(1.5, 2.0));
        assert!((v.exp() - s.exp()).norm() / s.exp().norm() < 1e-13);
    }

    #[test]
    fn ln_gamma_matches_stirling_on_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let z = Complex64::new(rng.gen_range(-4.0..6.0), rng.gen_range(-8.0..8.0));
            if near_nonpositive_integer(z) || (z.re <= 0.0 && z.im.abs() < 1e-3) {
                continue;
            }
            let a = gamma_c(z).unwrap();
            let b = ln_gamma_stirling(z).exp();
            assert!(
                (a - b).norm() <= 1e-12 * b.norm(),
                "gamma mismatch at {z}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn gamma_pole_rejected() {
        assert!(matches!(gamma(-3.0), Err(Error::GammaPole(_))));
        assert!(matches!(ln_gamma(Complex64::new(0.0, 0.0)), Err(Error::GammaPole(_))));
        assert!(matches!(ln_gamma(Complex64::new(-2.0 + 5e-15, 0.0)), Err(Error::GammaPole(_))));
        // Just outside the pole window evaluates.
        assert!(gamma(-2.0 + 1e-10).is_ok());
    }

    #[test]
    fn gamma_reflection_property() {
        // |Gamma(z) Gamma(1-z) - pi/sin(pi z)| relative error below 1e-11.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 1000 {
            let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if near_nonpositive_integer(z) || near_nonpositive_integer(Complex64::new(1.0, 0.0) - z)
            {
                continue;
            }
            let target = PI / (PI * z).sin();
            if !target.is_finite() || target.norm() < 1e-12 {
                continue;
            }
            let got = gamma_c(z).unwrap() * gamma_c(Complex64::new(1.0, 0.0) - z).unwrap();
            assert!(
                (got - target).norm() / target.norm() < 1e-11,
                "reflection failed at {z}: {got} vs {target}"
            );
            checked += 1;
        }
    }

    #[test]
    fn gamma_recursion_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 1000 {
            let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            if near_nonpositive_integer(z) || near_nonpositive_integer(z + 1.0) || z.norm() < 1e-3 {
                continue;
            }
            let g = gamma_c(z).unwrap();
            let g1 = gamma_c(z + 1.0).unwrap();
            assert!(
                (g1 - z * g).norm() / g1.norm() < 1e-12,
                "recursion failed at {z}"
            );
            checked += 1;
        }
    }

    #[test]
    fn beta_inc_complete_and_empty() {
        // x = 1 gives the complete beta; x = 0 gives zero.
        for &(a, b) in &[(0.75, 0.25), (1.5, 2.5), (0.3, 0.9)] {
            let full = beta_inc(1.0, a, b).unwrap();
            assert_relative_eq!(full, beta(a, b).unwrap(), max_relative = 1e-13);
            assert_eq!(beta_inc(0.0, a, b).unwrap(), 0.0);
        }
    }

    #[test]
    fn beta_inc_reference_value() {
        // Adaptive-quadrature reference for x=0.3, a=0.75, b=0.25.
        let v = beta_inc(0.3, 0.75, 0.25).unwrap();
        assert_relative_eq!(v, 0.6035712652366432176282, max_relative = 1e-12);
    }

    #[test]
    fn beta_inc_quadrature_oracle() {
        // Independent check: integrate t^(a-1)(1-t)^(b-1) with the endpoint
        // substitution t = x u^(1/a) that removes the singularity at 0.
        let (a, b, x) = (0.6, 1.7, 0.45);
        let f = |u: f64| -> f64 {
            let t = x * u.powf(1.0 / a);
            x.powf(a) / a * (1.0 - t).powf(b - 1.0)
        };
        let n = 20_000;
        let mut s = 0.0;
        for i in 0..n {
            let u0 = i as f64 / n as f64;
            let u1 = (i + 1) as f64 / n as f64;
            let m = 0.5 * (u0 + u1);
            s += (f(u0) + 4.0 * f(m) + f(u1)) / 6.0 * (u1 - u0);
        }
        assert_relative_eq!(beta_inc(x, a, b).unwrap(), s, max_relative = 1e-10);
    }

    #[test]
    fn beta_inc_symmetry_identity() {
        // Lower + reflected-upper = complete beta.
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let a = rng.gen_range(0.1..3.0);
            let b = rng.gen_range(0.1..3.0);
            let x = rng.gen_range(0.0..1.0);
            let lower = beta_inc(x, a, b).unwrap();
            let upper = beta_inc(1.0 - x, b, a).unwrap();
            assert_relative_eq!(lower + upper, beta(a, b).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn beta_inc_domain_errors() {
        assert!(beta_inc(-0.1, 1.0, 1.0).is_err());
        assert!(beta_inc(1.1, 1.0, 1.0).is_err());
        assert!(beta_inc(0.5, -1.0, 1.0).is_err());
        assert!(beta_inc(0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn hyp2f1_empty_sum_and_gauss() {
        assert_eq!(hyp2f1(0.3, 0.8, 1.1, 0.0).unwrap(), 1.0);
        // Gauss value used for the sphere-hitting constant: d=3, alpha=1.5.
        let (d, alpha) = (3.0, 1.5);
        let v = hyp2f1((d - alpha) / 2.0, 1.0 - alpha / 2.0, d / 2.0, 1.0).unwrap();
        assert_relative_eq!(v, 1.4142135623730950488, max_relative = 1e-12);
    }

    #[test]
    fn hyp2f1_series_reference() {
        // 200-term series reference at z=0.7 (evaluated via a high-precision
        // run of the defining series).
        let v = hyp2f1(0.25, 0.5, 1.5, 0.7).unwrap();
        assert_relative_eq!(v, 1.0846245938204516389, max_relative = 1e-12);
    }

    #[test]
    fn hyp2f1_divergence_at_one() {
        assert!(matches!(hyp2f1(1.0, 1.0, 1.5, 1.0), Err(Error::Divergence(_))));
    }

    #[test]
    fn hyp2f1_contiguity_property() {
        // Gauss contiguous relation in a:
        // (c-a) F(a-1) + (2a - c + (b-a) z) F(a) + a (z-1) F(a+1) = 0.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 100 {
            let a: f64 = rng.gen_range(0.2..2.0);
            let b = rng.gen_range(0.2..2.0);
            let c = rng.gen_range(2.2..4.0);
            let z = rng.gen_range(-0.9..0.9);
            let cab = c - a - b;
            if (cab - cab.round()).abs() < 0.05 || ((cab - 1.0) - (cab - 1.0).round()).abs() < 0.05
            {
                continue;
            }
            let fm = hyp2f1(a - 1.0, b, c, z).unwrap();
            let f0 = hyp2f1(a, b, c, z).unwrap();
            let fp = hyp2f1(a + 1.0, b, c, z).unwrap();
            let lhs = (c - a) * fm + (2.0 * a - c + (b - a) * z) * f0 + a * (z - 1.0) * fp;
            let scale = fm.abs().max(f0.abs()).max(fp.abs()).max(1.0);
            assert!(lhs.abs() / scale < 1e-10, "contiguity failed: {lhs} at ({a},{b},{c},{z})");
            checked += 1;
        }
    }
}
