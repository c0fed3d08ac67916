use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::montecarlo::sampler::IncrementSampler;
use crate::stable::StableParams;

/// First-passage scenario simulated on the random-walk skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    /// params `[x0, lower, upper]`: first exit of (lower, upper) from x0.
    /// `lower = -inf` selects the half-line first-passage problem, where
    /// censored chunks restart from a self-similarly rescaled level so the
    /// overshoot law is sampled without horizon bias.
    IntervalExit,
    /// params `[x0]`: first entry into (-1, 1) from |x0| > 1.
    IntervalEntrance,
    /// params `[r0]`: first exit from the unit ball, started at radius
    /// r0 < 1 (dimension >= 2).
    BallExit,
    /// params `[r0]`: first entry into the unit ball from radius r0 > 1
    /// (dimension >= 2).
    BallEntrance,
    /// d = 1, params `[x0, win_lo, win_hi, lo, hi]`: Lebesgue time spent in
    /// (win_lo, win_hi) before exiting (lo, hi).
    /// d >= 2, params `[r0, c1, win_radius, stop]`: time spent in the ball
    /// of radius win_radius centred at (c1, 0, ...) before the stop event
    /// (stop = 1: exit unit ball; stop = 2: entry into unit ball).
    Occupation,
    /// d = 1 only. params `[x0, a, b, eps]`: 1 if the eps-neighbourhood of a
    /// is hit before the one of b; params `[x0, y, eps, lo, hi]`: 1 if the
    /// eps-neighbourhood of y is hit before exiting (lo, hi).
    PointHitProxy,
}

impl Scenario {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "interval_exit" => Ok(Self::IntervalExit),
            "interval_entrance" => Ok(Self::IntervalEntrance),
            "ball_exit" => Ok(Self::BallExit),
            "ball_entrance" => Ok(Self::BallEntrance),
            "occupation" => Ok(Self::Occupation),
            "point_hit_proxy" => Ok(Self::PointHitProxy),
            other => Err(Error::Domain(format!("unknown scenario '{other}'"))),
        }
    }
}

/// Simulation configuration: skeleton step, horizon, path count, RNG seed
/// and the scenario with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub scenario: Scenario,
    pub scenario_params: Vec<f64>,
}

impl SimConfig {
    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::InvalidParams(format!("dt must be positive, got {}", self.dt)));
        }
        if self.n_paths == 0 {
            return Err(Error::InvalidParams("n_paths must be at least 1".into()));
        }
        if !(self.horizon > 0.0) {
            return Err(Error::InvalidParams(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        Ok(())
    }
}

/// One per-path event record. `value` is the scenario payload (overshoot,
/// entry position, indicator, occupation time); `position`/`prev_position`
/// are the skeleton states at/before detection (radii in dimension >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventRecord {
    pub path: u64,
    pub time: f64,
    pub value: f64,
    pub position: f64,
    pub prev_position: f64,
    pub censored: bool,
}

fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path + 1);
    rng
}

/// Run the configured scenario over all paths. Each path draws from its own
/// RNG stream; the output is ordered by path index, so results are
/// independent of the rayon worker count.
pub fn simulate_event(p: &StableParams, cfg: &SimConfig) -> Result<Vec<EventRecord>> {
    cfg.validate()?;
    match cfg.scenario {
        Scenario::IntervalExit => interval_exit(p, cfg),
        Scenario::IntervalEntrance => interval_entrance(p, cfg),
        Scenario::BallExit => ball_passage(p, cfg, true),
        Scenario::BallEntrance => ball_passage(p, cfg, false),
        Scenario::Occupation => occupation(p, cfg),
        Scenario::PointHitProxy => point_hit_proxy(p, cfg),
    }
}

fn one_dim_params(p: &StableParams, cfg: &SimConfig, n: usize) -> Result<()> {
    if p.dim != 1 {
        return Err(Error::Dimension("scenario requires dimension 1".into()));
    }
    if cfg.scenario_params.len() < n {
        return Err(Error::ShapeMismatch(format!(
            "scenario needs {n} parameters, got {}",
            cfg.scenario_params.len()
        )));
    }
    Ok(())
}

fn interval_exit(p: &StableParams, cfg: &SimConfig) -> Result<Vec<EventRecord>> {
    one_dim_params(p, cfg, 3)?;
    let (x0, lower, upper) =
        (cfg.scenario_params[0], cfg.scenario_params[1], cfg.scenario_params[2]);
    if !(x0 > lower && x0 < upper) {
        return Err(Error::Domain(format!("start {x0} outside ({lower}, {upper})")));
    }
    if lower == f64::NEG_INFINITY {
        return half_line_overshoot(p, cfg, x0, upper);
    }
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            let mut x = x0;
            for k in 1..=max_steps {
                let prev = x;
                x += sampler.sample_1d(&mut rng);
                if x >= upper || x <= lower {
                    return EventRecord {
                        path,
                        time: k as f64 * cfg.dt,
                        value: if x >= upper { 1.0 } else { 0.0 },
                        position: x,
                        prev_position: prev,
                        censored: false,
                    };
                }
            }
            EventRecord {
                path,
                time: cfg.horizon,
                value: 0.0,
                position: x,
                prev_position: x,
                censored: true,
            }
        })
        .collect();
    Ok(records)
}

/// Half-line first passage with self-similar chunk restarts: whenever a
/// horizon chunk elapses without crossing, the remaining problem "cross
/// level L from distance D below" is rescaled to unit distance (exact in
/// law by the Markov property and self-similarity), keeping the relative
/// skeleton resolution, and the clock is accumulated in original units.
/// `value` is the overshoot in original units.
fn half_line_overshoot(
    p: &StableParams,
    cfg: &SimConfig,
    x0: f64,
    level: f64,
) -> Result<Vec<EventRecord>> {
    let alpha = p.alpha;
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let chunk_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let d0 = level - x0;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            // Normalised problem: cross level 1 from 0 with step dt.
            let mut scale = d0;
            let mut elapsed = 0.0f64;
            loop {
                let mut y = 0.0f64;
                for k in 1..=chunk_steps {
                    let prev = y;
                    y += sampler.sample_1d(&mut rng);
                    if y > 1.0 {
                        let overshoot = (y - 1.0) * scale;
                        return EventRecord {
                            path,
                            time: elapsed + k as f64 * cfg.dt * scale.powf(alpha),
                            value: overshoot,
                            position: level + overshoot,
                            prev_position: level - (1.0 - prev) * scale,
                            censored: false,
                        };
                    }
                }
                elapsed += cfg.horizon * scale.powf(alpha);
                // Restart: the distance to the level in original units grows
                // by the factor (1 - y) > 1 when the walk has drifted down.
                scale *= 1.0 - y;
            }
        })
        .collect();
    Ok(records)
}

fn interval_entrance(p: &StableParams, cfg: &SimConfig) -> Result<Vec<EventRecord>> {
    one_dim_params(p, cfg, 1)?;
    let x0 = cfg.scenario_params[0];
    if x0.abs() <= 1.0 {
        return Err(Error::Domain(format!("start {x0} must lie outside [-1, 1]")));
    }
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            let mut x = x0;
            for k in 1..=max_steps {
                let prev = x;
                x += sampler.sample_1d(&mut rng);
                if x.abs() < 1.0 {
                    return EventRecord {
                        path,
                        time: k as f64 * cfg.dt,
                        value: x,
                        position: x,
                        prev_position: prev,
                        censored: false,
                    };
                }
            }
            EventRecord {
                path,
                time: cfg.horizon,
                value: x,
                position: x,
                prev_position: x,
                censored: true,
            }
        })
        .collect();
    Ok(records)
}

fn ball_passage(p: &StableParams, cfg: &SimConfig, exit: bool) -> Result<Vec<EventRecord>> {
    if p.dim < 2 {
        return Err(Error::Dimension("ball scenarios require dimension >= 2".into()));
    }
    if cfg.scenario_params.is_empty() {
        return Err(Error::ShapeMismatch("ball scenarios need [r0]".into()));
    }
    let r0 = cfg.scenario_params[0];
    if exit && !(0.0..1.0).contains(&r0) {
        return Err(Error::Domain(format!("ball exit needs r0 in [0, 1), got {r0}")));
    }
    if !exit && r0 <= 1.0 {
        return Err(Error::Domain(format!("ball entrance needs r0 > 1, got {r0}")));
    }
    let d = p.dim;
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            let mut x = vec![0.0; d];
            x[0] = r0;
            let mut inc = vec![0.0; d];
            let mut prev_r = r0;
            for k in 1..=max_steps {
                sampler.sample_vec(&mut rng, &mut inc);
                for (xi, di) in x.iter_mut().zip(&inc) {
                    *xi += di;
                }
                let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
                let crossed = if exit { r > 1.0 } else { r < 1.0 };
                if crossed {
                    return EventRecord {
                        path,
                        time: k as f64 * cfg.dt,
                        value: if exit { r } else { 1.0 },
                        position: r,
                        prev_position: prev_r,
                        censored: false,
                    };
                }
                prev_r = r;
            }
            EventRecord {
                path,
                time: cfg.horizon,
                value: if exit { prev_r } else { 0.0 },
                position: prev_r,
                prev_position: prev_r,
                censored: true,
            }
        })
        .collect();
    Ok(records)
}

fn occupation(p: &StableParams, cfg: &SimConfig) -> Result<Vec<EventRecord>> {
    if p.dim == 1 {
        one_dim_params(p, cfg, 5)?;
        let prm = &cfg.scenario_params;
        let (x0, win_lo, win_hi, lo, hi) = (prm[0], prm[1], prm[2], prm[3], prm[4]);
        let sampler = IncrementSampler::new(p, cfg.dt)?;
        let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
        let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
            .into_par_iter()
            .map(|path| {
                let mut rng = path_rng(cfg.seed, path);
                let mut x = x0;
                let mut occ = 0.0;
                for k in 1..=max_steps {
                    let prev = x;
                    x += sampler.sample_1d(&mut rng);
                    if x <= lo || x >= hi {
                        return EventRecord {
                            path,
                            time: k as f64 * cfg.dt,
                            value: occ,
                            position: x,
                            prev_position: prev,
                            censored: false,
                        };
                    }
                    if x > win_lo && x < win_hi {
                        occ += cfg.dt;
                    }
                }
                EventRecord {
                    path,
                    time: cfg.horizon,
                    value: occ,
                    position: x,
                    prev_position: x,
                    censored: true,
                }
            })
            .collect();
        return Ok(records);
    }
    // d >= 2: occupation of a ball window before a ball passage event.
    if cfg.scenario_params.len() < 4 {
        return Err(Error::ShapeMismatch(
            "occupation (d >= 2) needs [r0, window_c1, window_radius, stop]".into(),
        ));
    }
    let prm = &cfg.scenario_params;
    let (r0, c1, win_r, stop) = (prm[0], prm[1], prm[2], prm[3] as i32);
    let d = p.dim;
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            let mut x = vec![0.0; d];
            x[0] = r0;
            let mut inc = vec![0.0; d];
            let mut occ = 0.0;
            for k in 1..=max_steps {
                sampler.sample_vec(&mut rng, &mut inc);
                for (xi, di) in x.iter_mut().zip(&inc) {
                    *xi += di;
                }
                let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
                let stopped = match stop {
                    1 => r > 1.0,
                    2 => r < 1.0,
                    _ => false,
                };
                if stopped {
                    return EventRecord {
                        path,
                        time: k as f64 * cfg.dt,
                        value: occ,
                        position: r,
                        prev_position: r,
                        censored: false,
                    };
                }
                let mut dw = (x[0] - c1) * (x[0] - c1);
                for t in x.iter().skip(1) {
                    dw += t * t;
                }
                if dw.sqrt() < win_r {
                    occ += cfg.dt;
                }
            }
            EventRecord {
                path,
                time: cfg.horizon,
                value: occ,
                position: 0.0,
                prev_position: 0.0,
                censored: true,
            }
        })
        .collect();
    Ok(records)
}

fn point_hit_proxy(p: &StableParams, cfg: &SimConfig) -> Result<Vec<EventRecord>> {
    one_dim_params(p, cfg, 4)?;
    let prm = &cfg.scenario_params;
    let two_target = prm.len() == 4;
    let sampler = IncrementSampler::new(p, cfg.dt)?;
    let max_steps = (cfg.horizon / cfg.dt).ceil() as u64;
    let records: Vec<EventRecord> = (0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|path| {
            let mut rng = path_rng(cfg.seed, path);
            let mut x = prm[0];
            for k in 1..=max_steps {
                let prev = x;
                x += sampler.sample_1d(&mut rng);
                if two_target {
                    let (a, b, eps) = (prm[1], prm[2], prm[3]);
                    if (x - a).abs() < eps {
                        return EventRecord {
                            path,
                            time: k as f64 * cfg.dt,
                            value: 1.0,
                            position: x,
                            prev_position: prev,
                            censored: false,
                        };
                    }
                    if (x - b).abs() < eps {
                        return EventRecord {
                            path,
                            time: k as f64 * cfg.dt,
                            value: 0.0,
                            position: x,
                            prev_position: prev,
                            censored: false,
                        };
                    }
                } else {
                    let (y, eps, lo, hi) = (prm[1], prm[2], prm[3], prm[4]);
                    if (x - y).abs() < eps {
                        return EventRecord {
                            path,
                            time: k as f64 * cfg.dt,
                            value: 1.0,
                            position: x,
                            prev_position: prev,
                            censored: false,
                        };
                    }
                    if x <= lo || x >= hi {
                        return EventRecord {
                            path,
                            time: k as f64 * cfg.dt,
                            value: 0.0,
                            position: x,
                            prev_position: prev,
                            censored: false,
                        };
                    }
                }
            }
            EventRecord {
                path,
                time: cfg.horizon,
                value: 0.0,
                position: x,
                prev_position: x,
                censored: true,
            }
        })
        .collect();
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::estimate;
    use crate::stable::validate_params;

    fn base_cfg(scenario: Scenario, params: Vec<f64>) -> SimConfig {
        SimConfig {
            dt: 1e-3,
            horizon: 20.0,
            n_paths: 20_000,
            seed: 42,
            scenario,
            scenario_params: params,
        }
    }

    #[test]
    fn symmetric_interval_exit_is_even() {
        let p = validate_params(1.5, 0.5, 1).unwrap();
        let cfg = base_cfg(Scenario::IntervalExit, vec![0.0, -1.0, 1.0]);
        let records = simulate_event(&p, &cfg).unwrap();
        let (_, stats) = estimate(&records).unwrap();
        assert!((stats.mean - 0.5).abs() < 3.0 * stats.std_err + 1e-3, "up rate {}", stats.mean);
        assert!(records.iter().filter(|r| r.censored).count() < 5);
    }

    #[test]
    fn ball_exit_always_happens() {
        let p = validate_params(1.5, 0.5, 2).unwrap();
        let cfg = SimConfig {
            dt: 5e-3,
            horizon: 50.0,
            n_paths: 5_000,
            seed: 1,
            scenario: Scenario::BallExit,
            scenario_params: vec![0.4],
        };
        let records = simulate_event(&p, &cfg).unwrap();
        let censored = records.iter().filter(|r| r.censored).count();
        assert!(
            (censored as f64) < 1e-3 * records.len() as f64,
            "censored fraction too large: {censored}"
        );
        // Exits land outside the closed ball.
        assert!(records.iter().filter(|r| !r.censored).all(|r| r.position > 1.0));
    }

    #[test]
    fn determinism_across_worker_counts() {
        let p = validate_params(1.4, 0.55, 1).unwrap();
        let cfg = SimConfig {
            dt: 1e-3,
            horizon: 5.0,
            n_paths: 500,
            seed: 7,
            scenario: Scenario::IntervalExit,
            scenario_params: vec![0.2, -1.0, 1.0],
        };
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| simulate_event(&p, &cfg).unwrap());
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| simulate_event(&p, &cfg).unwrap());
        assert_eq!(single, quad);
    }

    #[test]
    fn no_creeping_diagnostic() {
        // The fraction of exits landing within 1e-6 of the boundary is
        // negligible and shrinks with dt.
        let p = validate_params(1.5, 0.5, 1).unwrap();
        let frac = |dt: f64| {
            let cfg = SimConfig {
                dt,
                horizon: 20.0,
                n_paths: 20_000,
                seed: 3,
                scenario: Scenario::IntervalExit,
                scenario_params: vec![0.0, -1.0, 1.0],
            };
            let records = simulate_event(&p, &cfg).unwrap();
            let close = records
                .iter()
                .filter(|r| !r.censored)
                .filter(|r| (r.position - 1.0).abs() < 1e-6 || (r.position + 1.0).abs() < 1e-6)
                .count();
            close as f64 / records.len() as f64
        };
        assert!(frac(2e-3) < 1e-3);
        assert!(frac(1e-3) < 1e-3);
    }

    #[test]
    fn config_validation() {
        let p = validate_params(1.5, 0.5, 1).unwrap();
        let mut cfg = base_cfg(Scenario::IntervalExit, vec![0.0, -1.0, 1.0]);
        cfg.dt = 0.0;
        assert!(simulate_event(&p, &cfg).is_err());
        let mut cfg = base_cfg(Scenario::IntervalExit, vec![2.0, -1.0, 1.0]);
        cfg.dt = 1e-3;
        assert!(simulate_event(&p, &cfg).is_err());
        let cfg = base_cfg(Scenario::BallExit, vec![0.4]);
        assert!(simulate_event(&p, &cfg).is_err());
    }
}
