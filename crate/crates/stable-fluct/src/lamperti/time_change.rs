use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A discretised trajectory: a strictly increasing time grid with the path
/// positions sampled on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
}

impl PathSample {
    pub fn new(times: Vec<f64>, positions: Vec<f64>) -> Result<Self> {
        if times.len() != positions.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} times vs {} positions",
                times.len(),
                positions.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NonMonotoneGrid);
        }
        Ok(Self { times, positions })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeDirection {
    Forward,
    Inverse,
}

/// Lamperti time change of a log-scale path.
///
/// `Forward` reparameterises the additive clock t by the self-similar clock
/// `I(t) = int_0^t exp(alpha xi_s) ds`, accumulated by the trapezoid rule on
/// the given grid (the clock is treated as piecewise linear between grid
/// points). `Inverse` applies the piecewise-linear inverse clock, so that
/// inverse(forward(path)) returns the original grid exactly up to floating
/// point.
pub fn lamperti_time_change(
    path: &PathSample,
    alpha: f64,
    direction: TimeDirection,
) -> Result<PathSample> {
    if path.times.len() != path.positions.len() {
        return Err(Error::ShapeMismatch("times and positions lengths differ".into()));
    }
    if path.times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotoneGrid);
    }
    if path.times.is_empty() {
        return Ok(path.clone());
    }
    let n = path.times.len();
    let mut out = Vec::with_capacity(n);
    out.push(path.times[0]);
    match direction {
        TimeDirection::Forward => {
            for k in 1..n {
                let dt = path.times[k] - path.times[k - 1];
                let slope = 0.5
                    * ((alpha * path.positions[k]).exp() + (alpha * path.positions[k - 1]).exp());
                out.push(out[k - 1] + dt * slope);
            }
        }
        TimeDirection::Inverse => {
            for k in 1..n {
                let dt = path.times[k] - path.times[k - 1];
                let slope = 0.5
                    * ((alpha * path.positions[k]).exp() + (alpha * path.positions[k - 1]).exp());
                out.push(out[k - 1] + dt / slope);
            }
        }
    }
    Ok(PathSample { times: out, positions: path.positions.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_zero_path_is_identity() {
        let times: Vec<f64> = (0..50).map(|k| 0.1 * k as f64).collect();
        let path = PathSample::new(times.clone(), vec![0.0; 50]).unwrap();
        let out = lamperti_time_change(&path, 1.5, TimeDirection::Forward).unwrap();
        for (a, b) in out.times.iter().zip(&times) {
            assert_relative_eq!(a, b, max_relative = 1e-15);
        }
    }

    #[test]
    fn constant_path_scales_clock() {
        // Constant xi = c: the inverse clock maps t to t exp(-alpha c).
        let c = 0.6;
        let alpha = 1.2;
        let times: Vec<f64> = (0..40).map(|k| 0.05 * k as f64).collect();
        let path = PathSample::new(times.clone(), vec![c; 40]).unwrap();
        let inv = lamperti_time_change(&path, alpha, TimeDirection::Inverse).unwrap();
        for (a, t) in inv.times.iter().zip(&times) {
            assert_relative_eq!(*a, t * (-alpha * c).exp(), max_relative = 1e-13);
        }
        let fwd = lamperti_time_change(&path, alpha, TimeDirection::Forward).unwrap();
        for (a, t) in fwd.times.iter().zip(&times) {
            assert_relative_eq!(*a, t * (alpha * c).exp(), max_relative = 1e-13);
        }
    }

    #[test]
    fn round_trip_on_rough_path() {
        // 10^4-step path with heavy-tailed increments; the round trip must
        // return the original grid to 1e-9.
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let n = 10_000;
        let mut times = Vec::with_capacity(n);
        let mut pos = Vec::with_capacity(n);
        let mut x = 0.0;
        for k in 0..n {
            times.push(k as f64 * 1e-3);
            // Cauchy-like heavy increments, clipped to keep exp() sane.
            let u: f64 = rng.gen_range(-1.4..1.4);
            x += 0.02 * u.tan().clamp(-40.0, 40.0);
            pos.push(x);
        }
        let path = PathSample::new(times.clone(), pos).unwrap();
        let fwd = lamperti_time_change(&path, 1.5, TimeDirection::Forward).unwrap();
        let back = lamperti_time_change(&fwd, 1.5, TimeDirection::Inverse).unwrap();
        let mut max_dev = 0.0f64;
        for (a, b) in back.times.iter().zip(&times) {
            max_dev = max_dev.max((a - b).abs());
        }
        assert!(max_dev < 1e-9, "round-trip deviation {max_dev}");
    }

    #[test]
    fn non_monotone_grid_rejected() {
        let path = PathSample { times: vec![0.0, 0.2, 0.1], positions: vec![0.0; 3] };
        assert!(matches!(
            lamperti_time_change(&path, 1.0, TimeDirection::Forward),
            Err(Error::NonMonotoneGrid)
        ));
        assert!(PathSample::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }
}
