//! Points of the affine cone `Spec Cox(X_r)` and the Jacobian rank test.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generators::GeneratorSet;
use super::relations::{all_ruling_relations, QuadraticRelation};
use crate::error::{Error, Result};
use crate::exactalg::{rank, rat, QMatrix, Rat};
use crate::plane_geometry::{normalize_point, random_affine_point, PlanePoint};

/// Coordinates `x_g = g(q) * prod t_i^{c_i}` where `c` is the class of `g`
/// in the basis `l_0, ..., l_r`; the torus factor is a character of `Pic`.
pub fn sample_torsor_point(genset: &GeneratorSet, q: &PlanePoint, t: &[Rat]) -> Result<Vec<Rat>> {
    let r = genset.r();
    if t.len() != r + 1 {
        return Err(Error::DimensionMismatch {
            left: t.len(),
            right: r + 1,
        });
    }
    if t.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("torus scaling must be nonzero".into()));
    }
    let qn = normalize_point(q)?;
    if let Some(i) = genset.config().points().iter().position(|p| *p == qn) {
        return Err(Error::EvaluationDegeneracy(format!("q is the blown-up point p{}", i + 1)));
    }
    genset
        .generators()
        .iter()
        .map(|g| {
            let v = g.poly.evaluate(q);
            if v.is_zero() {
                return Err(Error::EvaluationDegeneracy(format!("q lies on the curve of {}", g.label)));
            }
            let character: Rat = g
                .class
                .coeffs()
                .iter()
                .zip(t)
                .map(|(&c, ti)| num_traits::pow::Pow::pow(ti, c as i32))
                .product();
            Ok(v * character)
        })
        .collect()
}

/// Jacobian of the relations at `point`; one row per relation.
pub fn jacobian(relations: &[QuadraticRelation], point: &[Rat]) -> QMatrix {
    let rows: Vec<Vec<Rat>> = relations.iter().map(|rel| rel.gradient(point)).collect();
    QMatrix::from_rows(point.len(), rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianSample {
    pub q: [String; 3],
    pub t: Vec<String>,
    pub relations_vanish: bool,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub r: usize,
    pub generators: usize,
    pub relations: usize,
    /// `N_r - (r + 3)`, the codimension of the cone.
    pub expected_rank: usize,
    pub samples: Vec<JacobianSample>,
}

impl JacobianReport {
    pub fn all_pass(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.relations_vanish && s.rank == self.expected_rank)
    }
}

const MAX_DRAWS: usize = 1000;

/// Samples `samples` torsor points from `seed`, checks every ruling relation
/// vanishes there and records the Jacobian rank.
pub fn jacobian_codim_check(genset: &GeneratorSet, seed: u64, samples: usize) -> Result<JacobianReport> {
    let r = genset.r();
    if !(4..=6).contains(&r) {
        return Err(Error::RangeError(r, "Jacobian check supports r in 4..=6"));
    }
    let relations: Vec<QuadraticRelation> = all_ruling_relations(genset)?
        .into_iter()
        .flat_map(|(_, rels)| rels)
        .collect();
    let expected_rank = genset.len() - (r + 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut draws = 0;
    while out.len() < samples {
        draws += 1;
        if draws > MAX_DRAWS {
            return Err(Error::Sampling(MAX_DRAWS));
        }
        let q = random_affine_point(&mut rng, 50);
        let t: Vec<Rat> = (0..=r)
            .map(|_| {
                let v: i64 = rng.gen_range(1..=5);
                if rng.gen_bool(0.5) { rat(-v) } else { rat(v) }
            })
            .collect();
        let point = match sample_torsor_point(genset, &q, &t) {
            Ok(p) => p,
            Err(Error::EvaluationDegeneracy(_)) => continue,
            Err(e) => return Err(e),
        };
        let relations_vanish = relations.iter().all(|rel| rel.evaluate(&point).is_zero());
        let rank = rank(&jacobian(&relations, &point));
        out.push(JacobianSample {
            q: q.clone().map(|c| c.to_string()),
            t: t.iter().map(ToString::to_string).collect(),
            relations_vanish,
            rank,
        });
    }
    let report = JacobianReport {
        r,
        generators: genset.len(),
        relations: relations.len(),
        expected_rank,
        samples: out,
    };
    if report.samples.iter().all(|s| s.rank != expected_rank) {
        return Err(Error::CheckFailure(format!(
            "Jacobian rank differs from {expected_rank} at every sample"
        )));
    }
    Ok(report)
}

/// The all-ones torus scaling.
pub fn unit_scaling(r: usize) -> Vec<Rat> {
    vec![Rat::one(); r + 1]
}
