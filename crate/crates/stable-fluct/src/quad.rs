//! One-dimensional quadrature: Gauss-Legendre product rules and an adaptive
//! Gauss-Kronrod integrator. Endpoint singularities are expected to be
//! removed by substitution before these routines are called; helpers for the
//! recurring algebraic-singularity integrals live at the bottom.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with the
// embedded 7-point Gauss weights. Values as tabulated in QUADPACK's qk15.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = WGK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for j in 0..7 {
        let x = h * XGK[j];
        let fs = f(c - x) + f(c + x);
        kronrod += WGK[j] * fs;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fs;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h.abs())
}

/// Adaptive Gauss-Kronrod integration of `f` over [a, b] to absolute
/// tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integrate requires finite endpoints".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut stack = vec![(a, b, abs_tol, 0u32)];
    while let Some((lo, hi, tol, depth)) = stack.pop() {
        let (val, err) = gk15(&f, lo, hi);
        if err <= tol.max(1e-300) || depth >= 60 {
            if depth >= 60 && err > tol.max(1e-12) * 1e3 {
                return Err(Error::Convergence(format!(
                    "adaptive quadrature stalled on [{lo}, {hi}], err {err}"
                )));
            }
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * tol, depth + 1));
            stack.push((mid, hi, 0.5 * tol, depth + 1));
        }
    }
    Ok(total)
}

/// Integral of `f` over [a, infinity) via the rational substitution
/// x = a + t/(1-t).
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, abs_tol: f64) -> Result<f64> {
    integrate(
        |t| {
            let om = 1.0 - t;
            let x = a + t / om;
            f(x) / (om * om)
        },
        0.0,
        1.0 - 1e-12,
        abs_tol,
    )
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), derivative from the standard relation.
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Fixed-order Gauss-Legendre estimate of the integral of `f` over [a, b].
pub fn gl_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        s += w * f(c + h * x);
    }
    s * h
}

/// The branch integral that recurs in the interval identities:
/// the integral of (s+1)^(p-1) (s-1)^(q-1) over s in (1, m), for p, q in
/// (0, 1) and m > 1. The endpoint singularity at s = 1 is removed by the
/// substitution u = (s-1)^q.
pub fn branch_integral(m: f64, p: f64, q: f64, abs_tol: f64) -> Result<f64> {
    if m < 1.0 {
        return Err(Error::Domain(format!("branch integral needs m >= 1, got {m}")));
    }
    if !(0.0 < p && p < 1.0 && 0.0 < q && q < 1.0) {
        return Err(Error::Domain(format!("branch integral exponents out of range: p={p}, q={q}")));
    }
    if m == 1.0 {
        return Ok(0.0);
    }
    // After u = (s-1)^q: integral of (2 + u^(1/q))^(p-1) du / q over (0, (m-1)^q).
    let upper = (m - 1.0).powf(q);
    if upper.is_finite() && upper < 1e280 {
        integrate(|u| (2.0 + u.powf(1.0 / q)).powf(p - 1.0) / q, 0.0, upper, abs_tol)
    } else {
        Err(Error::Domain(format!("branch integral upper limit overflow at m={m}")))
    }
}
