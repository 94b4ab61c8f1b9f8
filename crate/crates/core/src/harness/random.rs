use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointCloud};

/// Random point models. Both are uniform with respect to volume.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    /// Uniform in [0, side)^d.
    UniformCube { side: f64 },
    /// Uniform in the shell r_in ≤ |x| ≤ r_out around the origin.
    Annulus { r_in: f64, r_out: f64 },
}

pub fn generate_random(model: Model, n: usize, d: usize, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = PointCloud::empty(d)?;
    match model {
        Model::UniformCube { side } => {
            if !side.is_finite() || side <= 0.0 {
                return Err(Error::InvalidParameter(format!("side must be positive, got {side}")));
            }
            for _ in 0..n {
                let coords = (0..d).map(|_| rng.random::<f64>() * side).collect();
                cloud.push(Point::new(coords)?)?;
            }
        }
        Model::Annulus { r_in, r_out } => {
            if r_in.is_nan() || r_in < 0.0 || !r_out.is_finite() || r_out < r_in || r_out == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "annulus needs 0 <= r_in <= r_out, r_out > 0; got ({r_in}, {r_out})"
                )));
            }
            let (lo, hi) = (r_in.powi(d as i32), r_out.powi(d as i32));
            for _ in 0..n {
                let dir = loop {
                    let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        break v.into_iter().map(|x| x / norm).collect::<Vec<_>>();
                    }
                };
                let u: f64 = rng.random();
                let radius = (lo + u * (hi - lo)).powf(1.0 / d as f64).clamp(r_in, r_out);
                cloud.push(Point::new(dir.into_iter().map(|x| x * radius).collect())?)?;
            }
        }
    }
    Ok(cloud)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_is_reproducible() {
        let m = Model::UniformCube { side: 4.0 };
        let a = generate_random(m, 20, 2, 7).unwrap();
        let b = generate_random(m, 20, 2, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_random(m, 20, 2, 8).unwrap());
        assert!(a.points().iter().flat_map(|p| p.coords()).all(|&x| (0.0..4.0).contains(&x)));
    }

    #[test]
    fn annulus_respects_radii() {
        let c = generate_random(Model::Annulus { r_in: 1.5, r_out: 2.5 }, 30, 2, 1).unwrap();
        assert_eq!(c.len(), 30);
        for p in c.points() {
            let norm = p.coords().iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((1.5 - 1e-12..=2.5 + 1e-12).contains(&norm), "{norm}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let m = Model::UniformCube { side: 1.0 };
        assert!(generate_random(m, 0, 2, 0).is_err());
        assert!(generate_random(m, 3, 0, 0).is_err());
        assert!(generate_random(Model::UniformCube { side: -1.0 }, 3, 2, 0).is_err());
        assert!(generate_random(Model::Annulus { r_in: 2.0, r_out: 1.0 }, 3, 2, 0).is_err());
    }
}
