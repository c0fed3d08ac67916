use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Validated parameter bundle for one stable process.
///
/// `alpha` is the stability index, `rho = P(X_1 >= 0)` the positivity
/// parameter and `rho_hat = 1 - rho`. In one dimension both `alpha * rho`
/// and `alpha * rho_hat` must lie in (0, 1), which rules out subordinators,
/// their negatives and the spectrally one-sided cases. In dimension d >= 2
/// only the isotropic case `rho = 1/2` is admitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub rho: f64,
    pub rho_hat: f64,
    pub dim: usize,
}

impl StableParams {
    pub fn alpha_rho(&self) -> f64 {
        self.alpha * self.rho
    }

    pub fn alpha_rho_hat(&self) -> f64 {
        self.alpha * self.rho_hat
    }

    /// The same process with the roles of rho and rho_hat exchanged,
    /// i.e. the parameters of -X.
    pub fn reflected(&self) -> StableParams {
        StableParams { alpha: self.alpha, rho: self.rho_hat, rho_hat: self.rho, dim: self.dim }
    }

    pub fn is_symmetric(&self) -> bool {
        (self.rho - 0.5).abs() < 1e-15
    }
}

/// Long-run behaviour of the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub transient: bool,
    pub hits_points: bool,
    pub point_recurrent: bool,
}

/// Validate `(alpha, rho, dim)` and build a parameter bundle.
pub fn validate_params(alpha: f64, rho: f64, dim: usize) -> Result<StableParams> {
    if dim == 0 {
        return Err(Error::InvalidParams("dimension must be at least 1".into()));
    }
    if !alpha.is_finite() || !(0.0 < alpha && alpha < 2.0) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (0, 2), got {alpha} (alpha = 2 is the Brownian case, excluded)"
        )));
    }
    if !rho.is_finite() || !(0.0 < rho && rho < 1.0) {
        return Err(Error::InvalidParams(format!(
            "rho must lie in (0, 1): rho in {{0, 1}} is a (negative of a) stable subordinator, got {rho}"
        )));
    }
    let rho_hat = 1.0 - rho;
    if dim == 1 {
        if alpha * rho >= 1.0 || alpha * rho_hat >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "both alpha*rho and alpha*rho_hat must lie in (0, 1) \
                 (two-sided jumps), got {} and {}",
                alpha * rho,
                alpha * rho_hat
            )));
        }
    } else if (rho - 0.5).abs() > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "dimension {dim} >= 2 requires the isotropic case rho = 1/2, got rho = {rho}"
        )));
    }
    Ok(StableParams { alpha, rho, rho_hat, dim })
}

/// Transience and point-hitting classification.
///
/// In one dimension the process is transient iff alpha < 1 and hits points
/// iff alpha > 1 (then, being also recurrent, it is point-recurrent). In
/// dimension d >= 2 it is transient and cannot hit points.
pub fn classify(p: &StableParams) -> Classification {
    if p.dim >= 2 {
        return Classification { transient: true, hits_points: false, point_recurrent: false };
    }
    let transient = p.alpha < 1.0;
    let hits_points = p.alpha > 1.0;
    Classification { transient, hits_points, point_recurrent: hits_points && !transient }
}
