//! Geometry and closed-form laws around the unit sphere and unit ball in
//! dimension d >= 2: sphere inversions, surface quadrature grids, the
//! sphere-hitting kernel, Riesz surface potentials, ball entrance/exit
//! Poisson kernels and the killed resolvents.

mod grid;
mod inversion;
mod kernels;

pub use grid::{circle_grid, sphere_product_grid, surface_quadrature, SurfaceGrid};
pub use inversion::{invert_sphere, InversionVariant, SphereSpec};
pub use kernels::{
    ball_passage_density, ball_passage_mass, ball_resolvent_density, never_enter_ball_prob,
    riesz_sphere_constant, riesz_surface_integral, sphere_hit_density, sphere_hit_prob,
    sphere_resolvent_density, BallRegion,
};

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
