//! Quadratic relations coming from rulings.
//!
//! The `r - 1` fibres `E + E'` of a ruling `D` give `r - 1` products
//! `x_E x_E'` inside the two-dimensional space of sections of `D`; their
//! linear dependencies are the ruling relations.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::generators::GeneratorSet;
use crate::enumeration::{rulings, Ruling};
use crate::error::{Error, Result};
use crate::exactalg::matrix::proportional;
use crate::exactalg::rat::denominator_lcm;
use crate::exactalg::{grid_len, nullspace, rank, PlanePoly, QMatrix, Rat};
use crate::lattice::{embed_blowdown, PicClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: Rat,
    /// Generator indices of the two factors.
    pub pair: (usize, usize),
}

/// `sum coeff * x_a * x_b = 0`, homogeneous of class `ruling`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRelation {
    pub ruling: PicClass,
    pub terms: Vec<RelationTerm>,
}

impl QuadraticRelation {
    /// The relation evaluated at a point of the ambient affine space.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        self.terms
            .iter()
            .map(|t| &t.coeff * &point[t.pair.0] * &point[t.pair.1])
            .sum()
    }

    /// Gradient at `point`, indexed by generator.
    pub fn gradient(&self, point: &[Rat]) -> Vec<Rat> {
        let mut g = vec![Rat::zero(); point.len()];
        for t in &self.terms {
            let (a, b) = t.pair;
            g[a] += &t.coeff * &point[b];
            g[b] += &t.coeff * &point[a];
        }
        g
    }

    /// The relation with each `x_E` replaced by its section polynomial.
    pub fn as_polynomial(&self, genset: &GeneratorSet) -> PlanePoly {
        let deg = self.ruling.coeff(0) as u32;
        self.terms.iter().fold(PlanePoly::zero(deg), |acc, t| {
            let p = genset.get(t.pair.0).poly.multiply(&genset.get(t.pair.1).poly);
            acc.add(&p.scale(&t.coeff))
        })
    }

    /// Exact check that the relation holds as a polynomial identity, by
    /// evaluation on a unisolvent grid in integer arithmetic.
    pub fn holds_identically(&self, genset: &GeneratorSet) -> bool {
        let degree = self.ruling.coeff(0) as u32;
        let table = genset.grid_table(degree);
        // coeff * x_a * x_b = coeff / (s_a s_b) * (s_a x_a) * (s_b x_b)
        let adjusted: Vec<Rat> = self
            .terms
            .iter()
            .map(|t| &t.coeff / Rat::from_integer(&table.scales[t.pair.0] * &table.scales[t.pair.1]))
            .collect();
        let l = denominator_lcm(&adjusted);
        let weights: Vec<BigInt> = adjusted.iter().map(|c| (c * &l).to_integer()).collect();
        (0..grid_len(degree)).all(|k| {
            self.terms
                .iter()
                .zip(&weights)
                .map(|(t, w)| w * &table.values[t.pair.0][k] * &table.values[t.pair.1][k])
                .sum::<BigInt>()
                .is_zero()
        })
    }

    /// The same check through symbolic polynomial arithmetic.
    pub fn holds_symbolically(&self, genset: &GeneratorSet) -> bool {
        self.as_polynomial(genset).is_zero()
    }

    /// `{"ruling": [...], "terms": [{"c": "a/b", "pair": [[...], [...]]}]}`.
    pub fn to_json(&self, genset: &GeneratorSet) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                json!({
                    "c": t.coeff.to_string(),
                    "pair": [genset.get(t.pair.0).class, genset.get(t.pair.1).class],
                })
            })
            .collect();
        json!({ "ruling": self.ruling, "terms": terms })
    }

    /// Coefficients over the fibres of `ruling`, in fibre order.
    pub fn fiber_vector(&self, ruling: &Ruling, genset: &GeneratorSet) -> Result<Vec<Rat>> {
        let mut v = vec![Rat::zero(); ruling.fibers.len()];
        for t in &self.terms {
            let pair = (genset.get(t.pair.0).class, genset.get(t.pair.1).class);
            let k = ruling
                .fibers
                .iter()
                .position(|f| *f == pair || *f == (pair.1, pair.0))
                .ok_or_else(|| Error::Inconsistency(format!("term {pair:?} is not a fibre of {}", ruling.class)))?;
            v[k] += &t.coeff;
        }
        Ok(v)
    }
}

/// Products of the fibre sections of a ruling, one per fibre.
pub fn fiber_products(ruling: &Ruling, genset: &GeneratorSet) -> Result<Vec<((usize, usize), PlanePoly)>> {
    ruling
        .fibers
        .iter()
        .map(|(a, b)| {
            let ia = genset.index_of_exceptional(a)?;
            let ib = genset.index_of_exceptional(b)?;
            Ok(((ia, ib), genset.get(ia).poly.multiply(&genset.get(ib).poly)))
        })
        .collect()
}

/// Generator index pairs of the fibres of a ruling.
fn fiber_pairs(ruling: &Ruling, genset: &GeneratorSet) -> Result<Vec<(usize, usize)>> {
    ruling
        .fibers
        .iter()
        .map(|(a, b)| Ok((genset.index_of_exceptional(a)?, genset.index_of_exceptional(b)?)))
        .collect()
}

/// The `r - 3` independent relations among the fibre products of a ruling,
/// as the reduced echelon basis of their dependency space.
///
/// The products are compared through their values on a unisolvent grid,
/// which represent them faithfully. Two of them are shown independent by a
/// nonzero 2x2 minor; every other one is checked to lie exactly in their
/// span. That proves the products span a plane, and the relations are the
/// kernel of the values at the two points of the minor.
pub fn ruling_relations(ruling: &Ruling, genset: &GeneratorSet) -> Result<Vec<QuadraticRelation>> {
    let r = genset.r();
    if ruling.r() != r {
        return Err(Error::DimensionMismatch {
            left: ruling.r(),
            right: r,
        });
    }
    let pairs = fiber_pairs(ruling, genset)?;
    let degree = ruling.class.coeff(0) as u32;
    let table = genset.grid_table(degree);
    let n = grid_len(degree);
    let u: Vec<Vec<BigInt>> = pairs
        .iter()
        .map(|&(a, b)| (0..n).map(|k| &table.values[a][k] * &table.values[b][k]).collect())
        .collect();
    let degenerate = |what: &str| Error::Degeneracy(format!("fibre products of ruling {}: {what}", ruling.class));

    let i = (0..n).find(|&k| !u[0][k].is_zero()).ok_or_else(|| degenerate("zero product"))?;
    let minor = |j: usize| &u[0][i] * &u[1][j] - &u[0][j] * &u[1][i];
    let j = (0..n)
        .find(|&j| !minor(j).is_zero())
        .ok_or_else(|| degenerate("two fibre products are proportional"))?;
    let det = minor(j);
    for uk in &u[2..] {
        let alpha = &uk[i] * &u[1][j] - &uk[j] * &u[1][i];
        let beta = &u[0][i] * &uk[j] - &u[0][j] * &uk[i];
        if (0..n).any(|k| &det * &uk[k] != &alpha * &u[0][k] + &beta * &u[1][k]) {
            return Err(degenerate("span has dimension above 2"));
        }
    }

    // Values at the two points in the original normalization.
    let rows: Vec<Vec<Rat>> = [i, j]
        .iter()
        .map(|&k| {
            pairs
                .iter()
                .zip(&u)
                .map(|(&(a, b), uk)| {
                    Rat::new(uk[k].clone(), &table.scales[a] * &table.scales[b])
                })
                .collect()
        })
        .collect();
    let kernel = nullspace(&QMatrix::from_rows(pairs.len(), rows));
    let expected = r.saturating_sub(3);
    if kernel.len() != expected {
        return Err(Error::Degeneracy(format!(
            "ruling {} has {} relations, expected {expected}",
            ruling.class,
            kernel.len()
        )));
    }
    kernel
        .into_iter()
        .map(|v| {
            let terms: Vec<RelationTerm> = v
                .into_iter()
                .zip(&pairs)
                .filter(|(c, _)| !c.is_zero())
                .map(|(coeff, pair)| RelationTerm { coeff, pair: *pair })
                .collect();
            let rel = QuadraticRelation {
                ruling: ruling.class,
                terms,
            };
            if rel.terms.len() < 3 {
                return Err(Error::Inconsistency(format!(
                    "relation of ruling {} has only {} terms",
                    ruling.class,
                    rel.terms.len()
                )));
            }
            if !rel.holds_identically(genset) {
                return Err(Error::Inconsistency(format!(
                    "relation of ruling {} is not a polynomial identity",
                    ruling.class
                )));
            }
            Ok(rel)
        })
        .collect()
}

/// Relations for every ruling, in ruling order.
pub fn all_ruling_relations(genset: &GeneratorSet) -> Result<Vec<(Ruling, Vec<QuadraticRelation>)>> {
    rulings(genset.r())?
        .into_par_iter()
        .map(|ru| {
            let rels = ruling_relations(&ru, genset)?;
            Ok((ru, rels))
        })
        .collect()
}

/// Outcome of pulling the relations of `X_{r-1}` back to `X_r`.
#[derive(Clone, Debug, Serialize)]
pub struct BlowdownRelationReport {
    pub r: usize,
    pub rulings_checked: usize,
    pub relations_pulled_back: usize,
    pub generators_pulled_back: usize,
}

/// Compares generators and ruling relations of `X_{r-1}` (first `r - 1`
/// points of the configuration) with those of `X_r`: pulled-back generators
/// must coincide with the generators of their image classes, and each
/// pulled-back relation must lie in the relation space of the image ruling
/// once `x_{l_r} = 1`.
pub fn blowdown_relation_check(upper: &GeneratorSet, lower: &GeneratorSet) -> Result<BlowdownRelationReport> {
    let r = upper.r();
    if lower.r() + 1 != r || upper.config().drop_last()? != *lower.config() {
        return Err(Error::InvalidInput(
            "lower configuration must be the first r-1 points of the upper one".into(),
        ));
    }
    let mut generators = 0;
    for g in lower.generators().iter().filter(|g| g.family.is_some()) {
        let up = embed_blowdown(&g.class)?;
        let i = upper.index_of_exceptional(&up)?;
        if up.coeff(r) != 0 || upper.get(i).poly != g.poly {
            return Err(Error::CheckFailure(format!(
                "generator of {} does not pull back to the generator of {up}",
                g.class
            )));
        }
        generators += 1;
    }

    let mut rulings_checked = 0;
    let mut pulled = 0;
    for ru in rulings(r - 1)? {
        let up_class = embed_blowdown(&ru.class)?;
        let up_ruling = rulings(r)?
            .into_iter()
            .find(|x| x.class == up_class)
            .ok_or_else(|| Error::Inconsistency(format!("{up_class} is not a ruling")))?;
        let upper_rels = ruling_relations(&up_ruling, upper)?;
        let mut rows: Vec<Vec<Rat>> = upper_rels
            .iter()
            .map(|rel| rel.fiber_vector(&up_ruling, upper))
            .collect::<Result<_>>()?;
        let base_rank = rows.len();
        for rel in ruling_relations(&ru, lower)? {
            let mapped = QuadraticRelation {
                ruling: up_class,
                terms: rel
                    .terms
                    .iter()
                    .map(|t| {
                        let a = upper.index_of_exceptional(&embed_blowdown(&lower.get(t.pair.0).class)?)?;
                        let b = upper.index_of_exceptional(&embed_blowdown(&lower.get(t.pair.1).class)?)?;
                        Ok(RelationTerm {
                            coeff: t.coeff.clone(),
                            pair: (a, b),
                        })
                    })
                    .collect::<Result<_>>()?,
            };
            if !mapped.holds_identically(upper) {
                return Err(Error::CheckFailure(format!(
                    "pulled-back relation of {} fails on X_{r}",
                    ru.class
                )));
            }
            rows.push(mapped.fiber_vector(&up_ruling, upper)?);
            pulled += 1;
        }
        let ncols = up_ruling.fibers.len();
        if rank(&QMatrix::from_rows(ncols, rows)) != base_rank {
            return Err(Error::CheckFailure(format!(
                "pulled-back relations of {} leave the relation space of {up_class}",
                ru.class
            )));
        }
        rulings_checked += 1;
    }
    Ok(BlowdownRelationReport {
        r,
        rulings_checked,
        relations_pulled_back: pulled,
        generators_pulled_back: generators,
    })
}

/// Whether two relation lists span the same space of fibre vectors.
pub fn same_relation_space(
    ruling: &Ruling,
    a: (&[QuadraticRelation], &GeneratorSet),
    b: (&[QuadraticRelation], &GeneratorSet),
) -> Result<bool> {
    let va: Vec<Vec<Rat>> = a.0.iter().map(|x| x.fiber_vector(ruling, a.1)).collect::<Result<_>>()?;
    let vb: Vec<Vec<Rat>> = b.0.iter().map(|x| x.fiber_vector(ruling, b.1)).collect::<Result<_>>()?;
    if va.len() != vb.len() {
        return Ok(false);
    }
    if va.len() == 1 {
        return Ok(proportional(&va[0], &vb[0]));
    }
    let n = ruling.fibers.len();
    let ra = rank(&QMatrix::from_rows(n, va.clone()));
    let both = rank(&QMatrix::from_rows(n, va.into_iter().chain(vb).collect()));
    Ok(ra == both)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::build_generators;
    use crate::exactalg::rat;
    use crate::plane_geometry::random_config;

    #[test]
    fn r4_one_three_term_relation() {
        let g = build_generators(&random_config(4, 9, 10).unwrap()).unwrap();
        for ru in rulings(4).unwrap() {
            let rels = ruling_relations(&ru, &g).unwrap();
            assert_eq!(rels.len(), 1);
            assert_eq!(rels[0].terms.len(), 3);
        }
    }

    #[test]
    fn grid_check_agrees_with_symbolic_identity() {
        let g = build_generators(&random_config(6, 12, 10).unwrap()).unwrap();
        for (ru, rels) in all_ruling_relations(&g).unwrap() {
            // The symbolic products span a plane too.
            let products: Vec<Vec<Rat>> = fiber_products(&ru, &g)
                .unwrap()
                .into_iter()
                .map(|(_, p)| p.coefficients())
                .collect();
            let n = products[0].len();
            assert_eq!(rank(&QMatrix::from_rows(n, products)), 2);
            for rel in rels {
                assert!(rel.holds_symbolically(&g));
                assert!(rel.holds_identically(&g));
                let mut broken = rel.clone();
                broken.terms[0].coeff += rat(1);
                assert!(!broken.holds_symbolically(&g));
                assert!(!broken.holds_identically(&g));
            }
        }
    }

    #[test]
    fn r3_has_no_relations() {
        let g = build_generators(&random_config(3, 9, 10).unwrap()).unwrap();
        for ru in rulings(3).unwrap() {
            assert!(ruling_relations(&ru, &g).unwrap().is_empty());
        }
    }

    #[test]
    fn r6_relation_count() {
        let g = build_generators(&random_config(6, 9, 10).unwrap()).unwrap();
        let all = all_ruling_relations(&g).unwrap();
        assert_eq!(all.len(), 27);
        assert_eq!(all.iter().map(|(_, v)| v.len()).sum::<usize>(), 81);
    }

    #[test]
    fn rescaling_a_generator_rescales_its_terms() {
        let g = build_generators(&random_config(5, 4, 10).unwrap()).unwrap();
        let ru = &rulings(5).unwrap()[3];
        let target = g.index_of_exceptional(&ru.fibers[0].0).unwrap();
        let lambda = rat(7) / rat(3);
        let h = g.rescaled(target, &lambda);
        let before = ruling_relations(ru, &g).unwrap();
        let after = ruling_relations(ru, &h).unwrap();
        // Undo the scaling on the new coefficients: term c' x'_E x_F with
        // x'_E = lambda x_E reads (c' lambda) x_E x_F.
        let undone: Vec<QuadraticRelation> = after
            .iter()
            .map(|rel| QuadraticRelation {
                ruling: rel.ruling,
                terms: rel
                    .terms
                    .iter()
                    .map(|t| RelationTerm {
                        coeff: if t.pair.0 == target || t.pair.1 == target {
                            &t.coeff * &lambda
                        } else {
                            t.coeff.clone()
                        },
                        pair: t.pair,
                    })
                    .collect(),
            })
            .collect();
        assert!(same_relation_space(ru, (&before, &g), (&undone, &g)).unwrap());
    }

    #[test]
    fn relation_json_shape() {
        let g = build_generators(&random_config(4, 9, 10).unwrap()).unwrap();
        let ru = &rulings(4).unwrap()[0];
        let rel = &ruling_relations(ru, &g).unwrap()[0];
        let v = rel.to_json(&g);
        assert_eq!(v["ruling"], serde_json::to_value(ru.class).unwrap());
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
        assert!(v["terms"][0]["c"].is_string());
        assert_eq!(v["terms"][0]["pair"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn blowdown_pullback_r5() {
        let upper = build_generators(&random_config(5, 21, 10).unwrap()).unwrap();
        let lower = build_generators(&upper.config().drop_last().unwrap()).unwrap();
        let rep = blowdown_relation_check(&upper, &lower).unwrap();
        assert_eq!(rep.rulings_checked, 5);
        assert_eq!(rep.relations_pulled_back, 5);
        assert_eq!(rep.generators_pulled_back, 10);
    }
}
