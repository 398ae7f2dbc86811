//! Rank checks for generation in degree one.

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::decompose::decompose_effective;
use super::generators::GeneratorSet;
use crate::enumeration::{exceptional_slice, is_exceptional, lattice_solutions};
use crate::error::{Error, Result};
use crate::exactalg::{grid_len, rank_int, PlanePoly};
use crate::lattice::{is_nef, PicClass};
use crate::plane_geometry::h0_dim;

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub class: PicClass,
    /// Exceptional components subtracted before the rank count.
    pub peeled: Vec<PicClass>,
    pub residual: PicClass,
    pub h0: i64,
    pub decompositions: usize,
    pub products: usize,
    pub rank: usize,
    /// Rank of the products using only exceptional generators.
    pub exceptional_rank: usize,
}

impl GenerationReport {
    pub fn pass(&self) -> bool {
        self.rank as i64 == self.h0
    }
}

/// Subtracts exceptional classes `E` with `(D, E) < 0` until `D` is nef.
/// Such `E` are fixed components of every section of `D`.
pub fn peel_fixed_components(d: &PicClass) -> Result<(Vec<PicClass>, PicClass)> {
    let mut rest = *d;
    let mut peeled = Vec::new();
    while let Some(e) = exceptional_slice(d.r()).iter().find(|e| rest.dot(e) < 0) {
        if rest.degree() <= 0 {
            return Err(Error::InvalidInput(format!("{d} is not effective")));
        }
        rest = rest - *e;
        peeled.push(*e);
    }
    Ok((peeled, rest))
}

/// Generator index choices for one multiset of classes; several when it
/// contains `-K` on `X_8`, which has two generators.
fn index_choices(multiset: &[PicClass], genset: &GeneratorSet) -> Vec<Vec<usize>> {
    // Generators of a repeated class commute, so choose index multisets.
    let per_group: Vec<Vec<Vec<usize>>> = multiset
        .iter()
        .dedup_with_count()
        .map(|(n, c)| {
            genset
                .indices_of(c)
                .iter()
                .copied()
                .combinations_with_replacement(n)
                .collect()
        })
        .collect();
    if per_group.is_empty() {
        return vec![Vec::new()];
    }
    per_group
        .iter()
        .multi_cartesian_product()
        .map(|pick| pick.into_iter().flatten().copied().collect())
        .collect()
}

/// Product of the chosen generators as a polynomial.
pub fn product_polynomial(indices: &[usize], genset: &GeneratorSet) -> PlanePoly {
    indices
        .iter()
        .fold(PlanePoly::one(), |acc, &i| acc.multiply(&genset.get(i).poly))
}

/// Checks that products of degree-one generators span the sections of `d`.
pub fn verify_degree_one_generation(d: &PicClass, genset: &GeneratorSet) -> Result<GenerationReport> {
    if d.r() != genset.r() {
        return Err(Error::DimensionMismatch {
            left: d.r(),
            right: genset.r(),
        });
    }
    let (peeled, residual) = peel_fixed_components(d)?;
    let h0 = h0_dim(&residual)?;
    let multisets = decompose_effective(&residual);
    let choices: Vec<(bool, Vec<usize>)> = multisets
        .iter()
        .flat_map(|m| {
            let exceptional_only = m.iter().all(is_exceptional);
            index_choices(m, genset).into_iter().map(move |c| (exceptional_only, c))
        })
        .collect();
    // Integer-scaled products on a unisolvent grid have the same rank as
    // the products themselves.
    let degree = residual.coeff(0).max(0) as u32;
    let table = genset.grid_table(degree);
    let n = grid_len(degree);
    let rows: Vec<(bool, Vec<BigInt>)> = choices
        .par_iter()
        .map(|(e, idx)| {
            let v = (0..n)
                .map(|k| idx.iter().map(|&g| &table.values[g][k]).product())
                .collect();
            (*e, v)
        })
        .collect();
    let exc: Vec<Vec<BigInt>> = rows.iter().filter(|(e, _)| *e).map(|(_, v)| v.clone()).collect();
    let all_exceptional = exc.len() == rows.len();
    let products = rows.len();
    let rk = rank_int(rows.into_iter().map(|(_, v)| v).collect(), n);
    let exceptional_rank = if all_exceptional { rk } else { rank_int(exc, n) };
    let report = GenerationReport {
        class: *d,
        peeled,
        residual,
        h0,
        decompositions: multisets.len(),
        products,
        rank: rk,
        exceptional_rank,
    };
    if (rk as i64) < h0 {
        return Err(Error::GenerationFailure {
            class: d.to_string(),
            rank: rk,
            expected: h0,
        });
    }
    Ok(report)
}

/// Nef classes of degree at most `max_degree`.
///
/// A nef class has `D^2 >= 0`, and the Hodge index theorem gives
/// `D^2 (9 - r) <= degree(D)^2`, so finitely many self-intersections occur.
pub fn nef_classes(r: usize, max_degree: i64) -> Result<Vec<PicClass>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        for s in 0..=d * d / (9 - r as i64) {
            out.extend(lattice_solutions(r, s, d)?.into_iter().filter(is_nef));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::build_generators;
    use crate::plane_geometry::random_config;

    #[test]
    fn minus_k_r4() {
        let g = build_generators(&random_config(4, 3, 10).unwrap()).unwrap();
        let rep = verify_degree_one_generation(&PicClass::anticanonical(4), &g).unwrap();
        assert_eq!(rep.h0, 6);
        assert_eq!(rep.rank, 6);
        assert!(rep.peeled.is_empty());
    }

    #[test]
    fn peeling() {
        // l0 + l1 meets l1 negatively: peel l1 and be left with l0.
        let d = PicClass::l(5, 0) + PicClass::l(5, 1);
        let (peeled, rest) = peel_fixed_components(&d).unwrap();
        assert_eq!(peeled, vec![PicClass::l(5, 1)]);
        assert_eq!(rest, PicClass::l(5, 0));
        let g = build_generators(&random_config(5, 3, 10).unwrap()).unwrap();
        let rep = verify_degree_one_generation(&d, &g).unwrap();
        assert_eq!(rep.h0, 3);
        assert!(rep.pass());
    }

    #[test]
    fn r8_classes() {
        let g = build_generators(&random_config(8, 1, 20).unwrap()).unwrap();
        let two_k = PicClass::anticanonical(8) * 2;
        let rep = verify_degree_one_generation(&two_k, &g).unwrap();
        assert_eq!(rep.h0, 4);
        assert_eq!(rep.rank, 4);
        assert_eq!(rep.exceptional_rank, 4);
        // 120 curve pairs plus k1^2, k1 k2, k2^2.
        assert_eq!(rep.products, 123);

        let e = PicClass::l(8, 8);
        let rep = verify_degree_one_generation(&(PicClass::anticanonical(8) + e), &g).unwrap();
        assert_eq!(rep.h0, 3);
        assert_eq!(rep.rank, 3);
    }

    #[test]
    fn nef_classes_small() {
        let v = nef_classes(4, 2).unwrap();
        // 0, l0 - l_i (4), 2l0 - l1 - l2 - l3 - l4.
        assert_eq!(v.len(), 6);
        assert!(v.contains(&PicClass::zero(4)));
        assert!(nef_classes(8, 1).unwrap().contains(&PicClass::anticanonical(8)));
    }
}
