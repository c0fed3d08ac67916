use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::stable::StableParams;

/// Exact unit-time stable increment sampler in the `(alpha, rho)`
/// normalisation `E[exp(i theta X_1)] = exp(-Psi(theta))` with
/// `Psi(theta) = |theta|^alpha exp(i pi alpha (1/2 - rho) sgn theta)`.
///
/// The angle construction: with V uniform on (-pi/2, pi/2), W unit
/// exponential and `b = pi (rho - 1/2)`,
/// `X = sin(alpha (V + b)) / cos(V)^(1/alpha)
///      * (cos(V - alpha (V + b)) / W)^((1-alpha)/alpha)`.
/// In this normalisation the usual scale factor collapses to one, and
/// `P(X >= 0) = rho` exactly. For alpha = 1 the strictly stable law is a
/// drifted Cauchy: `X = cos(pi(1/2 - rho)) tan(V) + sin(pi(rho - 1/2))`.
#[derive(Debug, Clone, Copy)]
pub struct UnitStableSampler {
    alpha: f64,
    b: f64,
    inv_alpha: f64,
    tail_exp: f64,
    is_cauchy: bool,
    cauchy_scale: f64,
    cauchy_drift: f64,
}

impl UnitStableSampler {
    pub fn new(alpha: f64, rho: f64) -> Self {
        let b = PI * (rho - 0.5);
        Self {
            alpha,
            b,
            inv_alpha: 1.0 / alpha,
            tail_exp: (1.0 - alpha) / alpha,
            is_cauchy: (alpha - 1.0).abs() < 1e-12,
            cauchy_scale: (PI * (0.5 - rho)).cos(),
            cauchy_drift: (PI * (rho - 0.5)).sin(),
        }
    }

    /// One-sided sampler with Laplace transform `E[e^(-λ S)] = e^(-λ^beta)`,
    /// beta in (0, 1). This is the boundary case rho = 1 of the angle
    /// construction.
    pub fn one_sided(beta: f64) -> Self {
        Self {
            alpha: beta,
            b: FRAC_PI_2,
            inv_alpha: 1.0 / beta,
            tail_exp: (1.0 - beta) / beta,
            is_cauchy: false,
            cauchy_scale: 0.0,
            cauchy_drift: 0.0,
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let v: f64 = rng.gen_range(-FRAC_PI_2 + 1e-12..FRAC_PI_2 - 1e-12);
        if self.is_cauchy {
            return self.cauchy_scale * v.tan() + self.cauchy_drift;
        }
        let w: f64 = {
            let u: f64 = rng.gen_range(1e-300..1.0);
            -u.ln()
        };
        let phi = self.alpha * (v + self.b);
        let num = phi.sin();
        let den = v.cos().powf(self.inv_alpha);
        let tail = (((v - phi).cos()) / w).max(1e-300).powf(self.tail_exp);
        num / den * tail
    }
}

/// Increment sampler for one skeleton step of size dt.
///
/// In one dimension a single exact stable draw scaled by dt^(1/alpha). In
/// dimension d >= 2 the isotropic increment is realised by subordination:
/// `X = sqrt(2 S) Z` with Z standard d-dimensional Gaussian and S an
/// (alpha/2)-subordinator increment over dt.
#[derive(Debug, Clone, Copy)]
pub struct IncrementSampler {
    dim: usize,
    unit: UnitStableSampler,
    dt_scale: f64,
    subordinator_scale: f64,
}

impl IncrementSampler {
    pub fn new(p: &StableParams, dt: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("step size must be positive, got {dt}")));
        }
        if p.dim == 1 {
            Ok(Self {
                dim: 1,
                unit: UnitStableSampler::new(p.alpha, p.rho),
                dt_scale: dt.powf(1.0 / p.alpha),
                subordinator_scale: 0.0,
            })
        } else {
            Ok(Self {
                dim: p.dim,
                unit: UnitStableSampler::one_sided(p.alpha / 2.0),
                dt_scale: 0.0,
                subordinator_scale: dt.powf(2.0 / p.alpha),
            })
        }
    }

    #[inline]
    pub fn sample_1d<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        debug_assert_eq!(self.dim, 1);
        self.dt_scale * self.unit.sample(rng)
    }

    /// Fill `out` with one d-dimensional increment.
    #[inline]
    pub fn sample_vec<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim);
        let s = self.subordinator_scale * self.unit.sample(rng);
        let sigma = (2.0 * s).sqrt();
        for o in out.iter_mut() {
            let z: f64 = rng.sample(StandardNormal);
            *o = sigma * z;
        }
    }
}

/// One increment of the process over dt (dimension 1).
pub fn sample_increment<R: Rng + ?Sized>(p: &StableParams, dt: f64, rng: &mut R) -> Result<f64> {
    if p.dim != 1 {
        return Err(Error::Dimension("use sample_increment_vec in dimension >= 2".into()));
    }
    Ok(IncrementSampler::new(p, dt)?.sample_1d(rng))
}

/// One increment of the process over dt (dimension >= 2).
pub fn sample_increment_vec<R: Rng + ?Sized>(
    p: &StableParams,
    dt: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if p.dim < 2 {
        return Err(Error::Dimension("use sample_increment in dimension 1".into()));
    }
    let s = IncrementSampler::new(p, dt)?;
    let mut out = vec![0.0; p.dim];
    s.sample_vec(rng, &mut out);
    Ok(out)
}
