use crate::error::{Error, Result};
use crate::quad::gauss_legendre;

/// Quadrature grid on the unit sphere: unit-vector nodes with positive
/// weights summing to one, matching the normalised surface measure.
#[derive(Debug, Clone)]
pub struct SurfaceGrid {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SurfaceGrid {
    pub fn validate(&self) -> Result<()> {
        for n in &self.nodes {
            if n.len() != self.dim {
                return Err(Error::ShapeMismatch("node dimension mismatch".into()));
            }
            let r: f64 = n.iter().map(|v| v * v).sum::<f64>().sqrt();
            if (r - 1.0).abs() > 1e-10 {
                return Err(Error::Domain(format!("node radius {r} != 1")));
            }
        }
        let s: f64 = self.weights.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("weights sum to {s}, expected 1")));
        }
        Ok(())
    }
}

/// Uniform (trapezoid) grid on the unit circle; spectrally accurate for
/// smooth periodic integrands. Default resolution 2048.
pub fn circle_grid(n: usize) -> SurfaceGrid {
    let mut nodes = Vec::with_capacity(n);
    let w = 1.0 / n as f64;
    for k in 0..n {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        nodes.push(vec![phi.cos(), phi.sin()]);
    }
    SurfaceGrid { dim: 2, nodes, weights: vec![w; n] }
}

/// Product grid on the 2-sphere: Gauss-Legendre in the polar cosine times a
/// uniform azimuth. Default resolution 64 x 128.
pub fn sphere_product_grid(n_polar: usize, n_azimuth: usize) -> SurfaceGrid {
    let (gl_nodes, gl_weights) = gauss_legendre(n_polar);
    let mut nodes = Vec::with_capacity(n_polar * n_azimuth);
    let mut weights = Vec::with_capacity(n_polar * n_azimuth);
    for (u, wu) in gl_nodes.iter().zip(&gl_weights) {
        let sin_theta = (1.0 - u * u).sqrt();
        for k in 0..n_azimuth {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / n_azimuth as f64;
            nodes.push(vec![sin_theta * phi.cos(), sin_theta * phi.sin(), *u]);
            // sigma_1 = du dphi / (4 pi), normalised: wu/2 * 1/n_azimuth.
            weights.push(wu / 2.0 / n_azimuth as f64);
        }
    }
    SurfaceGrid { dim: 3, nodes, weights }
}

/// Default grid for the given dimension (2 or 3).
pub fn default_grid(dim: usize) -> Result<SurfaceGrid> {
    match dim {
        2 => Ok(circle_grid(2048)),
        3 => Ok(sphere_product_grid(64, 128)),
        _ => Err(Error::Dimension(format!(
            "surface quadrature grids provided for d = 2, 3 only (got {dim})"
        ))),
    }
}

/// Weighted sum approximating the integral of `f` against the normalised
/// surface measure.
pub fn surface_quadrature<F: Fn(&[f64]) -> f64>(
    dim: usize,
    f: F,
    grid: &SurfaceGrid,
) -> Result<f64> {
    if grid.dim != dim {
        return Err(Error::Dimension(format!(
            "grid dimension {} does not match requested {dim}",
            grid.dim
        )));
    }
    Ok(grid.nodes.iter().zip(&grid.weights).map(|(n, w)| w * f(n)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{dist, norm};
    use approx::assert_relative_eq;

    #[test]
    fn grids_are_normalised() {
        let g = circle_grid(512);
        g.validate().unwrap();
        let one = surface_quadrature(2, |_| 1.0, &g).unwrap();
        assert_relative_eq!(one, 1.0, max_relative = 1e-14);

        let g = sphere_product_grid(32, 64);
        g.validate().unwrap();
        let one = surface_quadrature(3, |_| 1.0, &g).unwrap();
        assert_relative_eq!(one, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn newtonian_poisson_kernel_mass_inside() {
        // int (1 - |x|^2) / |z - x|^d sigma_1(dz) = 1 for |x| < 1.
        for (d, g) in [(2usize, circle_grid(2048)), (3usize, sphere_product_grid(64, 128))] {
            let mut x = vec![0.0; d];
            x[0] = 0.3;
            x[d - 1] = 0.4;
            let r2: f64 = 0.25;
            let v = surface_quadrature(
                d,
                |z| (1.0 - r2) / dist(z, &x).powi(d as i32),
                &g,
            )
            .unwrap();
            assert_relative_eq!(v, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn brownian_exterior_identity() {
        // int (|x|^2 - 1) / |z - x|^d sigma_1(dz) = |x|^(2-d) for |x| > 1.
        for (d, g) in [(2usize, circle_grid(2048)), (3usize, sphere_product_grid(64, 128))] {
            let mut x = vec![0.0; d];
            x[0] = 2.0;
            let v = surface_quadrature(
                d,
                |z| (4.0 - 1.0) / dist(z, &x).powi(d as i32),
                &g,
            )
            .unwrap();
            assert_relative_eq!(v, 2.0f64.powi(2 - d as i32), epsilon = 1e-8);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let g = circle_grid(16);
        assert!(surface_quadrature(3, |_| 1.0, &g).is_err());
        assert!(norm(&g.nodes[3]) - 1.0 < 1e-12);
    }
}
