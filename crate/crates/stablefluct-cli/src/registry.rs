//! Identity registry: every public closed-form operation of the interval,
//! ball and Lamperti modules, callable by name with named scalar/vector
//! inputs.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::json;
use stable_fluct::ball::{
    ball_passage_density, ball_resolvent_density, circle_grid, invert_sphere,
    never_enter_ball_prob, riesz_sphere_constant, sphere_hit_density, sphere_hit_prob,
    sphere_product_grid, sphere_resolvent_density, surface_quadrature, BallRegion,
    InversionVariant, SphereSpec,
};
use stable_fluct::error::{Error, Result};
use stable_fluct::interval::{
    avoid_interval_prob, censored_potential_density, entrance_density, exit_up_prob,
    hit_point_before_exit, resolvent_exterior, resolvent_interval, resolvent_origin_killed,
    triple_law_density, two_point_hit_prob, TripleLawPoint,
};
use stable_fluct::lamperti::{
    esscher, h_transform_weight, lamperti_stable_jump_density, lamperti_time_change, leading_eig,
    levy_exponent, levy_exponent_factors, map_exponent, map_jump_kernel, ExponentKind, MapKind,
    MatrixExponent, PathSample, TimeDirection,
};
use stable_fluct::stable::StableParams;

/// Evaluation context: validated process parameters plus named inputs.
#[derive(Debug, Clone)]
pub struct EvalCtx {
    pub params: StableParams,
    pub inputs: BTreeMap<String, String>,
}

impl EvalCtx {
    pub fn scalar(&self, key: &str) -> Result<f64> {
        let raw = self
            .inputs
            .get(key)
            .ok_or_else(|| Error::InvalidParams(format!("missing input --{key}")))?;
        raw.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidParams(format!("input --{key} is not a number: '{raw}'")))
    }

    pub fn scalar_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.inputs.get(key) {
            None => Ok(default),
            Some(_) => self.scalar(key),
        }
    }

    pub fn vector(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self
            .inputs
            .get(key)
            .ok_or_else(|| Error::InvalidParams(format!("missing input --{key}")))?;
        raw.split(',')
            .map(|t| {
                t.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidParams(format!("input --{key} has a bad component: '{t}'"))
                })
            })
            .collect()
    }

    /// Vector input, broadcast to the process dimension if a single scalar
    /// was supplied.
    pub fn point(&self, key: &str) -> Result<Vec<f64>> {
        let v = self.vector(key)?;
        if v.len() == self.params.dim {
            return Ok(v);
        }
        if v.len() == 1 && self.params.dim == 1 {
            return Ok(v);
        }
        Err(Error::ShapeMismatch(format!(
            "--{key} must have {} components, got {}",
            self.params.dim,
            v.len()
        )))
    }

    pub fn text(&self, key: &str) -> Result<&str> {
        self.inputs
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::InvalidParams(format!("missing input --{key}")))
    }

    pub fn text_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.inputs.get(key).map(|s| s.as_str()).unwrap_or(default)
    }

    pub fn complex(&self, key: &str) -> Result<Complex64> {
        let v = self.vector(key)?;
        match v.len() {
            1 => Ok(Complex64::new(v[0], 0.0)),
            2 => Ok(Complex64::new(v[0], v[1])),
            n => Err(Error::ShapeMismatch(format!("--{key} must be 're' or 're,im', got {n} parts"))),
        }
    }
}

/// Result of one identity evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    One(f64),
    Many(Vec<f64>),
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::One(v) => json!(v),
            Value::Many(vs) => json!({ "values": vs }),
        }
    }

    pub fn flat(&self) -> Vec<f64> {
        match self {
            Value::One(v) => vec![*v],
            Value::Many(vs) => vs.clone(),
        }
    }
}

fn matrix_values(m: &MatrixExponent) -> Vec<f64> {
    let mut out = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            out.push(m.entries[i][j].re);
            out.push(m.entries[i][j].im);
        }
    }
    out
}

pub struct IdentityDef {
    pub name: &'static str,
    /// Named inputs the identity consumes (documentation for --help and the
    /// registry listing).
    pub inputs: &'static [&'static str],
    pub eval: fn(&EvalCtx) -> Result<Value>,
}

/// The full identity registry.
pub fn registry() -> Vec<IdentityDef> {
    vec![
        // Interval identities.
        IdentityDef {
            name: "exit_up_prob",
            inputs: &["x"],
            eval: |c| Ok(Value::One(exit_up_prob(&c.params, c.scalar("x")?)?)),
        },
        IdentityDef {
            name: "triple_law_density",
            inputs: &["x", "u", "v", "w"],
            eval: |c| {
                let pt = TripleLawPoint {
                    x: c.scalar("x")?,
                    u: c.scalar("u")?,
                    v: c.scalar("v")?,
                    y: c.scalar("w")?,
                };
                Ok(Value::One(triple_law_density(&c.params, &pt)?))
            },
        },
        IdentityDef {
            name: "resolvent_interval",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(resolvent_interval(&c.params, c.scalar("x")?, c.scalar("y")?)?))
            },
        },
        IdentityDef {
            name: "hit_point_before_exit",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(hit_point_before_exit(&c.params, c.scalar("x")?, c.scalar("y")?)?))
            },
        },
        IdentityDef {
            name: "entrance_density",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(entrance_density(&c.params, c.scalar("x")?, c.scalar("y")?)?))
            },
        },
        IdentityDef {
            name: "avoid_interval_prob",
            inputs: &["x"],
            eval: |c| Ok(Value::One(avoid_interval_prob(&c.params, c.scalar("x")?)?)),
        },
        IdentityDef {
            name: "resolvent_exterior",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(resolvent_exterior(&c.params, c.scalar("x")?, c.scalar("y")?)?))
            },
        },
        IdentityDef {
            name: "censored_potential_density",
            inputs: &["x"],
            eval: |c| Ok(Value::One(censored_potential_density(&c.params, c.scalar("x")?)?)),
        },
        IdentityDef {
            name: "two_point_hit_prob",
            inputs: &["x"],
            eval: |c| Ok(Value::One(two_point_hit_prob(&c.params, c.scalar("x")?)?)),
        },
        IdentityDef {
            name: "resolvent_origin_killed",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(resolvent_origin_killed(&c.params, c.scalar("x")?, c.scalar("y")?)?))
            },
        },
        // Ball and sphere identities.
        IdentityDef {
            name: "invert_sphere",
            inputs: &["x", "center", "radius", "variant"],
            eval: |c| {
                let x = c.vector("x")?;
                let center = match c.inputs.get("center") {
                    Some(_) => c.vector("center")?,
                    None => vec![0.0; x.len()],
                };
                let spec = SphereSpec::new(center, c.scalar_or("radius", 1.0)?)?;
                let variant = match c.text_or("variant", "star") {
                    "star" => InversionVariant::Star,
                    "diamond" => InversionVariant::Diamond,
                    other => {
                        return Err(Error::InvalidParams(format!(
                            "unknown inversion variant '{other}'"
                        )))
                    }
                };
                Ok(Value::Many(invert_sphere(&x, &spec, variant)?))
            },
        },
        IdentityDef {
            name: "sphere_hit_prob",
            inputs: &["x"],
            eval: |c| Ok(Value::One(sphere_hit_prob(&c.params, &c.point("x")?)?)),
        },
        IdentityDef {
            name: "sphere_hit_density",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(sphere_hit_density(&c.params, &c.point("x")?, &c.point("y")?)?))
            },
        },
        IdentityDef {
            name: "riesz_sphere_constant",
            inputs: &[],
            eval: |c| Ok(Value::One(riesz_sphere_constant(&c.params)?)),
        },
        IdentityDef {
            name: "sphere_resolvent_density",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(sphere_resolvent_density(&c.params, &c.point("x")?, &c.point("y")?)?))
            },
        },
        IdentityDef {
            name: "ball_passage_density",
            inputs: &["x", "y"],
            eval: |c| {
                Ok(Value::One(ball_passage_density(&c.params, &c.point("x")?, &c.point("y")?)?))
            },
        },
        IdentityDef {
            name: "never_enter_ball_prob",
            inputs: &["x"],
            eval: |c| Ok(Value::One(never_enter_ball_prob(&c.params, &c.point("x")?)?)),
        },
        IdentityDef {
            name: "ball_resolvent_density",
            inputs: &["x", "y", "region"],
            eval: |c| {
                let region = BallRegion::parse(c.text("region")?)?;
                Ok(Value::One(ball_resolvent_density(
                    &c.params,
                    &c.point("x")?,
                    &c.point("y")?,
                    region,
                )?))
            },
        },
        IdentityDef {
            name: "surface_quadrature",
            inputs: &["integrand", "x"],
            eval: |c| {
                let d = c.params.dim;
                let grid = match d {
                    2 => circle_grid(2048),
                    3 => sphere_product_grid(64, 128),
                    _ => {
                        return Err(Error::Dimension(
                            "surface quadrature grids provided for d = 2, 3".into(),
                        ))
                    }
                };
                let value = match c.text_or("integrand", "one") {
                    "one" => surface_quadrature(d, |_| 1.0, &grid)?,
                    "poisson" => {
                        let x = c.point("x")?;
                        let r2: f64 = x.iter().map(|t| t * t).sum();
                        surface_quadrature(
                            d,
                            |z| {
                                let dist2: f64 =
                                    z.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
                                (r2 - 1.0).abs() / dist2.powf(d as f64 / 2.0)
                            },
                            &grid,
                        )?
                    }
                    other => {
                        return Err(Error::InvalidParams(format!(
                            "unknown integrand '{other}' (use 'one' or 'poisson')"
                        )))
                    }
                };
                Ok(Value::One(value))
            },
        },
        // Lamperti / MAP identities.
        IdentityDef {
            name: "levy_exponent",
            inputs: &["kind", "z"],
            eval: |c| {
                let kind = ExponentKind::parse(c.text("kind")?)?;
                let v = levy_exponent(kind, &c.params, c.complex("z")?)?;
                Ok(Value::Many(vec![v.re, v.im]))
            },
        },
        IdentityDef {
            name: "levy_exponent_factors",
            inputs: &["kind", "z"],
            eval: |c| {
                let kind = ExponentKind::parse(c.text("kind")?)?;
                let (up, down) = levy_exponent_factors(kind, &c.params, c.complex("z")?)?;
                Ok(Value::Many(vec![up.re, up.im, down.re, down.im]))
            },
        },
        IdentityDef {
            name: "lamperti_stable_jump_density",
            inputs: &["x"],
            eval: |c| Ok(Value::One(lamperti_stable_jump_density(&c.params, c.scalar("x")?)?)),
        },
        IdentityDef {
            name: "map_exponent",
            inputs: &["kind", "z"],
            eval: |c| {
                let kind = MapKind::parse(c.text_or("kind", "stable"))?;
                let m = map_exponent(kind, &c.params, c.complex("z")?)?;
                Ok(Value::Many(matrix_values(&m)))
            },
        },
        IdentityDef {
            name: "leading_eig",
            inputs: &["kind", "gamma"],
            eval: |c| {
                let kind = MapKind::parse(c.text_or("kind", "stable"))?;
                let gamma = c.scalar("gamma")?;
                let q = map_exponent(kind, &c.params, Complex64::new(0.0, 0.0))?;
                let f = map_exponent(kind, &c.params, Complex64::new(0.0, -gamma))?;
                let eig = leading_eig(&f, &q)?;
                Ok(Value::Many(vec![eig.chi, eig.v[0], eig.v[1]]))
            },
        },
        IdentityDef {
            name: "esscher",
            inputs: &["kind", "gamma", "z"],
            eval: |c| {
                let kind = MapKind::parse(c.text_or("kind", "stable"))?;
                let p = c.params;
                let m = esscher(
                    move |w| map_exponent(kind, &p, w),
                    c.scalar("gamma")?,
                    c.complex("z")?,
                )?;
                Ok(Value::Many(matrix_values(&m)))
            },
        },
        IdentityDef {
            name: "map_jump_kernel",
            inputs: &["x", "y", "w"],
            eval: |c| {
                Ok(Value::One(map_jump_kernel(
                    &c.params,
                    &c.point("x")?,
                    c.scalar("w")?,
                    &c.point("y")?,
                )?))
            },
        },
        IdentityDef {
            name: "lamperti_time_change",
            inputs: &["nsteps", "seed"],
            eval: |c| {
                // Round-trip diagnostic on a synthetic rough path: forward
                // then inverse must return the grid; the value reported is
                // the maximum grid deviation.
                use rand::{Rng, SeedableRng};
                let n = c.scalar_or("nsteps", 10_000.0)? as usize;
                let seed = c.scalar_or("seed", 1.0)? as u64;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let mut pos = Vec::with_capacity(n);
                let mut times = Vec::with_capacity(n);
                let mut x = 0.0f64;
                for k in 0..n {
                    times.push(k as f64 * 1e-3);
                    let u: f64 = rng.gen_range(-1.4..1.4);
                    x += 0.02 * u.tan().clamp(-40.0, 40.0);
                    pos.push(x);
                }
                let path = PathSample::new(times.clone(), pos)?;
                let fwd = lamperti_time_change(&path, c.params.alpha, TimeDirection::Forward)?;
                let back = lamperti_time_change(&fwd, c.params.alpha, TimeDirection::Inverse)?;
                let dev = back
                    .times
                    .iter()
                    .zip(&times)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                Ok(Value::One(dev))
            },
        },
        IdentityDef {
            name: "h_transform_weight",
            inputs: &["x"],
            eval: |c| Ok(Value::One(h_transform_weight(&c.params, &c.point("x")?)?)),
        },
    ]
}

/// Look up an identity by name.
pub fn find(name: &str) -> Result<IdentityDef> {
    registry()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::InvalidParams(format!("unknown identity '{name}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use stable_fluct::validate_params;

    fn ctx(alpha: f64, rho: f64, dim: usize, kv: &[(&str, &str)]) -> EvalCtx {
        EvalCtx {
            params: validate_params(alpha, rho, dim).unwrap(),
            inputs: kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    #[test]
    fn registry_covers_all_public_operations() {
        let expected = [
            "exit_up_prob",
            "triple_law_density",
            "resolvent_interval",
            "hit_point_before_exit",
            "entrance_density",
            "avoid_interval_prob",
            "resolvent_exterior",
            "censored_potential_density",
            "two_point_hit_prob",
            "resolvent_origin_killed",
            "invert_sphere",
            "sphere_hit_prob",
            "sphere_hit_density",
            "riesz_sphere_constant",
            "sphere_resolvent_density",
            "ball_passage_density",
            "never_enter_ball_prob",
            "ball_resolvent_density",
            "surface_quadrature",
            "levy_exponent",
            "levy_exponent_factors",
            "lamperti_stable_jump_density",
            "map_exponent",
            "leading_eig",
            "esscher",
            "map_jump_kernel",
            "lamperti_time_change",
            "h_transform_weight",
        ];
        let names: Vec<&str> = registry().iter().map(|d| d.name).collect();
        for e in expected {
            assert!(names.contains(&e), "registry is missing '{e}'");
        }
        assert_eq!(names.len(), expected.len());
    }

    #[test]
    fn every_identity_evaluates_on_a_canonical_input() {
        let canonical: Vec<(&str, EvalCtx)> = vec![
            ("exit_up_prob", ctx(1.5, 0.5, 1, &[("x", "0.0")])),
            (
                "triple_law_density",
                ctx(1.5, 0.5, 1, &[("x", "0.0"), ("u", "0.5"), ("v", "0.7"), ("w", "0.3")]),
            ),
            ("resolvent_interval", ctx(1.5, 0.5, 1, &[("x", "0.1"), ("y", "0.4")])),
            ("hit_point_before_exit", ctx(1.5, 0.5, 1, &[("x", "0.0"), ("y", "0.4")])),
            ("entrance_density", ctx(1.3, 0.55, 1, &[("x", "2.0"), ("y", "0.3")])),
            ("avoid_interval_prob", ctx(0.7, 0.5, 1, &[("x", "3.0")])),
            ("resolvent_exterior", ctx(1.5, 0.5, 1, &[("x", "2.0"), ("y", "3.0")])),
            ("censored_potential_density", ctx(1.5, 0.6, 1, &[("x", "0.5")])),
            ("two_point_hit_prob", ctx(1.5, 0.5, 1, &[("x", "0.0")])),
            ("resolvent_origin_killed", ctx(1.5, 0.5, 1, &[("x", "0.4"), ("y", "0.9")])),
            ("invert_sphere", ctx(1.5, 0.5, 2, &[("x", "2.0,0.0")])),
            ("sphere_hit_prob", ctx(1.5, 0.5, 2, &[("x", "0.5,0.0")])),
            ("sphere_hit_density", ctx(1.5, 0.5, 2, &[("x", "0.5,0.0"), ("y", "0.0,1.0")])),
            ("riesz_sphere_constant", ctx(1.5, 0.5, 2, &[])),
            ("sphere_resolvent_density", ctx(1.5, 0.5, 2, &[("x", "0.5,0.0"), ("y", "2.0,0.0")])),
            ("ball_passage_density", ctx(1.5, 0.5, 2, &[("x", "0.5,0.0"), ("y", "2.0,0.0")])),
            ("never_enter_ball_prob", ctx(1.0, 0.5, 2, &[("x", "2.0,0.0")])),
            (
                "ball_resolvent_density",
                ctx(1.5, 0.5, 2, &[("x", "0.2,0.0"), ("y", "0.5,0.0"), ("region", "interior")]),
            ),
            ("surface_quadrature", ctx(1.5, 0.5, 2, &[("integrand", "one")])),
            ("levy_exponent", ctx(1.5, 0.4, 1, &[("kind", "killed_half_line"), ("z", "0.5")])),
            (
                "levy_exponent_factors",
                ctx(1.5, 0.4, 1, &[("kind", "censored"), ("z", "0.5")]),
            ),
            ("lamperti_stable_jump_density", ctx(1.5, 0.5, 1, &[("x", "1.0")])),
            ("map_exponent", ctx(1.5, 0.5, 1, &[("kind", "stable"), ("z", "0.5")])),
            ("leading_eig", ctx(1.5, 0.5, 1, &[("kind", "stable"), ("gamma", "0.3")])),
            (
                "esscher",
                ctx(1.5, 0.5, 1, &[("kind", "stable"), ("gamma", "0.5"), ("z", "0.3")]),
            ),
            (
                "map_jump_kernel",
                ctx(1.5, 0.5, 2, &[("x", "1.0,0.0"), ("y", "0.0,1.0"), ("w", "0.5")]),
            ),
            ("lamperti_time_change", ctx(1.5, 0.5, 1, &[("nsteps", "500"), ("seed", "3")])),
            ("h_transform_weight", ctx(1.5, 0.5, 1, &[("x", "2.0")])),
        ];
        assert_eq!(canonical.len(), registry().len());
        for (name, c) in canonical {
            let def = find(name).unwrap();
            let v = (def.eval)(&c).unwrap_or_else(|e| panic!("{name} failed: {e}"));
            for t in v.flat() {
                assert!(t.is_finite(), "{name} produced a non-finite value");
            }
        }
    }

    #[test]
    fn unknown_identity_is_rejected() {
        assert!(find("no_such_identity").is_err());
    }

    #[test]
    fn canonical_values() {
        let def = find("exit_up_prob").unwrap();
        let v = (def.eval)(&ctx(1.5, 0.5, 1, &[("x", "0.0")])).unwrap();
        assert_eq!(v, Value::One(0.5));
        let def = find("riesz_sphere_constant").unwrap();
        let v = (def.eval)(&ctx(1.5, 0.5, 2, &[])).unwrap();
        match v {
            Value::One(x) => assert!((x - 1.1803405990160962).abs() < 1e-12),
            _ => panic!("scalar expected"),
        }
    }
}
