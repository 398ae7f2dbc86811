//! Point configurations in the projective plane and plane-curve sections.
//!
//! A class `m_0 l_0 - sum m_i l_i` is realised by the plane curves of degree
//! `m_0` having multiplicity at least `m_i` at `p_i`.

mod config;
mod interpolation;

pub use interpolation::{h0_dim, interpolate, interpolation_dimension, section_of, Section};

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{determinant, rat, QMatrix, Rat};
use crate::lattice::check_r;

pub const DEFAULT_SAMPLING_ATTEMPTS: usize = 1000;

pub type PlanePoint = [Rat; 3];

/// Scales a nonzero point so that its first nonzero coordinate is 1.
pub fn normalize_point(p: &PlanePoint) -> Result<PlanePoint> {
    let lead = p
        .iter()
        .find(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))?
        .recip();
    Ok([&p[0] * &lead, &p[1] * &lead, &p[2] * &lead])
}

pub fn point_from_i64(p: [i64; 3]) -> PlanePoint {
    [rat(p[0]), rat(p[1]), rat(p[2])]
}

/// `r` points of the projective plane, normalized and pairwise distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct PointConfig {
    r: usize,
    points: Vec<PlanePoint>,
    /// Seed the configuration was sampled with, if any.
    pub seed: Option<u64>,
}

impl PointConfig {
    /// Normalizes the points and checks count and distinctness; general
    /// position is not checked (see [`PointConfig::validated`]).
    pub fn new(r: usize, points: Vec<PlanePoint>) -> Result<Self> {
        check_r(r)?;
        if points.len() != r {
            return Err(Error::InvalidInput(format!(
                "expected {r} points, got {}",
                points.len()
            )));
        }
        let points: Vec<PlanePoint> = points.iter().map(normalize_point).collect::<Result<_>>()?;
        for (i, j) in (0..r).tuple_combinations() {
            if points[i] == points[j] {
                return Err(Error::InvalidInput(format!(
                    "points p{} and p{} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(PointConfig { r, points, seed: None })
    }

    pub fn from_i64(r: usize, points: &[[i64; 3]]) -> Result<Self> {
        Self::new(r, points.iter().map(|&p| point_from_i64(p)).collect())
    }

    /// Like [`PointConfig::new`], additionally rejecting configurations that
    /// are not in general position.
    pub fn validated(r: usize, points: Vec<PlanePoint>) -> Result<Self> {
        let cfg = Self::new(r, points)?;
        let violations = validate_general_position(&cfg);
        if let Some(v) = violations.first() {
            return Err(Error::Degeneracy(v.to_string()));
        }
        Ok(cfg)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    /// Point `p_i`, 1-based.
    pub fn point(&self, i: usize) -> &PlanePoint {
        &self.points[i - 1]
    }

    /// The first `r - 1` points, i.e. the configuration of the blowdown.
    pub fn drop_last(&self) -> Result<Self> {
        let mut cfg = Self::new(self.r - 1, self.points[..self.r - 1].to_vec())?;
        cfg.seed = self.seed;
        Ok(cfg)
    }
}

impl fmt::Debug for PointConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointConfig(r={}", self.r)?;
        for p in &self.points {
            write!(f, ", ({}:{}:{})", p[0], p[1], p[2])?;
        }
        write!(f, ")")
    }
}

/// A failure of general position; point indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    Collinear { points: [usize; 3] },
    CoConic { points: [usize; 6] },
    /// The cubic through seven points, singular at `double`, passes through
    /// the remaining point `extra` (or is not unique).
    NodalCubic { double: usize, extra: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Collinear { points } => write!(f, "points {points:?} are collinear"),
            Violation::CoConic { points } => write!(f, "points {points:?} lie on a conic"),
            Violation::NodalCubic { double, extra } => write!(
                f,
                "the cubic through the other points with a double point at p{double} contains p{extra}"
            ),
        }
    }
}

fn veronese_row(p: &PlanePoint) -> Vec<Rat> {
    let [x, y, z] = p;
    vec![x * x, x * y, x * z, y * y, y * z, z * z]
}

/// Checks the classical general-position conditions: no three points on a
/// line, no six on a conic (`r >= 6`) and, for `r = 8`, no cubic through
/// seven of the points with a double point at one of them passes through the
/// eighth. Returns every violation found.
pub fn validate_general_position(cfg: &PointConfig) -> Vec<Violation> {
    let r = cfg.r();
    let mut out = Vec::new();
    for c in (1..=r).combinations(3) {
        let m = QMatrix::from_rows(3, c.iter().map(|&i| cfg.point(i).to_vec()).collect());
        if determinant(&m).is_zero() {
            out.push(Violation::Collinear {
                points: [c[0], c[1], c[2]],
            });
        }
    }
    if r >= 6 {
        for c in (1..=r).combinations(6) {
            let m = QMatrix::from_rows(6, c.iter().map(|&i| veronese_row(cfg.point(i))).collect());
            if determinant(&m).is_zero() {
                out.push(Violation::CoConic {
                    points: [c[0], c[1], c[2], c[3], c[4], c[5]],
                });
            }
        }
    }
    if r == 8 {
        for extra in 1..=r {
            for double in (1..=r).filter(|&d| d != extra) {
                let mut mults = vec![1i64; r];
                mults[extra - 1] = 0;
                mults[double - 1] = 2;
                let basis = interpolate(3, &mults, cfg);
                let through = basis.len() != 1 || basis[0].evaluate(cfg.point(extra)).is_zero();
                if through {
                    out.push(Violation::NodalCubic { double, extra });
                }
            }
        }
    }
    out
}

/// Samples integer points with coordinates in `[-bound, bound]` from a
/// seeded ChaCha stream until the configuration is in general position.
pub fn random_config(r: usize, seed: u64, coord_bound: i64) -> Result<PointConfig> {
    random_config_with_attempts(r, seed, coord_bound, DEFAULT_SAMPLING_ATTEMPTS)
}

pub fn random_config_with_attempts(
    r: usize,
    seed: u64,
    coord_bound: i64,
    attempts: usize,
) -> Result<PointConfig> {
    check_r(r)?;
    if coord_bound < 3 {
        return Err(Error::InvalidInput(format!("coordinate bound {coord_bound} < 3")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let points: Vec<PlanePoint> = (0..r)
            .map(|_| loop {
                let p: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-coord_bound..=coord_bound));
                if p != [0, 0, 0] {
                    break point_from_i64(p);
                }
            })
            .collect();
        let Ok(mut cfg) = PointConfig::new(r, points) else {
            continue;
        };
        if validate_general_position(&cfg).is_empty() {
            cfg.seed = Some(seed);
            return Ok(cfg);
        }
    }
    Err(Error::Sampling(attempts))
}

/// Samples a point with integer coordinates in `[-bound, bound]`, last
/// coordinate forced to 1 so it is never the zero vector.
pub(crate) fn random_affine_point(rng: &mut impl Rng, bound: i64) -> PlanePoint {
    [
        rat(rng.gen_range(-bound..=bound)),
        rat(rng.gen_range(-bound..=bound)),
        Rat::one(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard4() -> PointConfig {
        PointConfig::from_i64(4, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap()
    }

    #[test]
    fn standard_frame_is_general() {
        assert!(validate_general_position(&standard4()).is_empty());
    }

    #[test]
    fn collinear_detected() {
        let cfg = PointConfig::from_i64(4, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(
            validate_general_position(&cfg),
            vec![Violation::Collinear { points: [1, 2, 3] }]
        );
    }

    #[test]
    fn conic_detected() {
        let pts = [[1, 0, 0], [1, 1, 1], [1, 2, 4], [1, 3, 9], [1, -1, 1], [0, 0, 1]];
        let cfg = PointConfig::from_i64(6, &pts).unwrap();
        let v = validate_general_position(&cfg);
        assert!(v.contains(&Violation::CoConic {
            points: [1, 2, 3, 4, 5, 6]
        }));
        assert!(v.iter().all(|x| matches!(x, Violation::CoConic { .. })));
    }

    #[test]
    fn duplicates_rejected() {
        let err = PointConfig::from_i64(3, &[[1, 0, 0], [2, 0, 0], [0, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        assert!(PointConfig::from_i64(3, &[[0, 0, 0], [1, 0, 0], [0, 1, 0]]).is_err());
    }

    #[test]
    fn normalization() {
        let cfg = PointConfig::from_i64(3, &[[0, 2, 4], [3, 1, 0], [0, 0, -5]]).unwrap();
        assert_eq!(cfg.point(1), &point_from_i64([0, 1, 2]));
        assert_eq!(cfg.point(3), &point_from_i64([0, 0, 1]));
        assert_eq!(cfg.point(2)[1], crate::exactalg::rat::ratio(1, 3));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = random_config(6, 42, 10).unwrap();
        let b = random_config(6, 42, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(42));
        assert!(validate_general_position(&a).is_empty());
        assert!(random_config(6, 42, 2).is_err());
    }

    #[test]
    fn sampling_cap() {
        // With coordinates in [-3, 3] eight points in general position are
        // rare; one attempt is not enough for this seed.
        let res = random_config_with_attempts(8, 0, 3, 1);
        assert!(matches!(res, Err(Error::Sampling(1))));
    }
}
