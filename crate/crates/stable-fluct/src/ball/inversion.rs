use crate::ball::{dist, norm};
use crate::error::{Error, Result};

/// A sphere `{x : |x - center| = radius}` used as the mirror of an
/// inversion.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl SphereSpec {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn unit(dim: usize) -> Self {
        Self { center: vec![0.0; dim], radius: 1.0 }
    }
}

/// Plain inversion or inversion with pointwise reflection about the centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionVariant {
    Star,
    Diamond,
}

/// Inversion of x through the sphere: `x* = b + r^2 (x-b)/|x-b|^2`, or the
/// reflected variant `x# = b - r^2 (x-b)/|x-b|^2`. Both are involutions that
/// swap the interior and exterior of the mirror sphere and satisfy
/// `|x' - b| |x - b| = r^2`.
pub fn invert_sphere(x: &[f64], s: &SphereSpec, variant: InversionVariant) -> Result<Vec<f64>> {
    if x.len() != s.center.len() {
        return Err(Error::ShapeMismatch(format!(
            "point has dimension {}, sphere {}",
            x.len(),
            s.center.len()
        )));
    }
    let d2: f64 = x.iter().zip(&s.center).map(|(a, b)| (a - b) * (a - b)).sum();
    if d2 == 0.0 {
        return Err(Error::Singularity("cannot invert the centre of the sphere".into()));
    }
    let scale = s.radius * s.radius / d2;
    let sign = match variant {
        InversionVariant::Star => 1.0,
        InversionVariant::Diamond => -1.0,
    };
    Ok(x.iter().zip(&s.center).map(|(a, b)| b + sign * scale * (a - b)).collect())
}

/// The inversion through the unit sphere centred at the origin,
/// `Kx = x / |x|^2`.
pub fn k_transform(x: &[f64]) -> Result<Vec<f64>> {
    invert_sphere(x, &SphereSpec::unit(x.len()), InversionVariant::Star)
}

#[allow(dead_code)]
pub(crate) fn unit_vector(x: &[f64]) -> Vec<f64> {
    let n = norm(x);
    x.iter().map(|v| v / n).collect()
}

#[allow(dead_code)]
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    dist(a, b)
}
