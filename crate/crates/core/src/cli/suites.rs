//! The verification suites behind `verify`.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::report::Check;
use crate::cox::pluecker::{pluecker_model_with, pluecker_quadrics};
use crate::cox::torsor::unit_scaling;
use crate::cox::{
    all_ruling_relations, blowdown_relation_check, build_generators, jacobian_codim_check, nef_classes,
    sample_torsor_point, verify_degree_one_generation, GeneratorSet,
};
use crate::enumeration::{exceptional_slice, roots, rulings, verify_anticanonical_decompositions};
use crate::error::{Error, Result};
use crate::lattice::{fundamental_weight_dimension, simple_roots, PicClass};
use crate::plane_geometry::{point_from_i64, random_config, PointConfig};
use crate::weyl::{apply_word, blowdown_correspondence, orbit, weight_summary, OrbitResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Counts,
    Weyl,
    Relations,
    Generation,
    Jacobian,
    All,
}

/// Known counts for `r = 3..=8`: exceptional curves, roots, rulings.
pub const CURVE_COUNTS: [usize; 6] = [6, 10, 16, 27, 56, 240];
pub const ROOT_COUNTS: [usize; 6] = [8, 20, 40, 72, 126, 240];
pub const RULING_COUNTS: [usize; 6] = [3, 5, 10, 27, 126, 2160];

pub fn expected_curves(r: usize) -> usize {
    CURVE_COUNTS[r - 3]
}

/// Coordinate bound used for seeded configurations.
pub fn default_bound(r: usize) -> i64 {
    if r == 8 {
        20
    } else {
        10
    }
}

pub fn seeded_config(r: usize, seed: u64) -> Result<PointConfig> {
    random_config(r, seed, default_bound(r))
}

pub fn counts(r: usize) -> Result<Vec<Check>> {
    let i = r - 3;
    let mut out = vec![
        Check::new(format!("exceptional curves N_{r}"), CURVE_COUNTS[i], exceptional_slice(r).len()),
        Check::new(format!("roots of R_{r}"), ROOT_COUNTS[i], roots(r)?.len()),
    ];
    let rl = rulings(r)?;
    out.push(Check::new(format!("rulings of X_{r}"), RULING_COUNTS[i], rl.len()));
    out.push(Check::holds(
        format!("every ruling has {} fibres", r - 1),
        rl.iter().all(|x| x.fibers.len() == r - 1),
    ));
    if (4..=7).contains(&r) {
        out.push(Check::holds(
            "anticanonical decompositions",
            verify_anticanonical_decompositions(r),
        ));
    }
    Ok(out)
}

fn orbit_matches(orb: &OrbitResult, set: &BTreeSet<PicClass>) -> bool {
    orb.len() == set.len() && set.iter().all(|x| orb.contains(x))
}

fn words_reproduce(orb: &OrbitResult) -> Result<bool> {
    for x in &orb.elements {
        let w = orb.word(x).expect("every element has a word");
        if apply_word(&orb.seed, w)? != *x {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn weyl(r: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let curves: BTreeSet<PicClass> = exceptional_slice(r).iter().copied().collect();
    let o = orbit(&PicClass::l(r, r))?;
    out.push(Check::holds(format!("orbit(l{r}) = exceptional curves"), orbit_matches(&o, &curves)));
    out.push(Check::holds(format!("words reproduce orbit(l{r})"), words_reproduce(&o)?));

    let root_set: BTreeSet<PicClass> = roots(r)?.into_iter().collect();
    let alpha = simple_roots(r)?;
    if r >= 4 {
        let o = orbit(&alpha[0])?;
        out.push(Check::holds("orbit(alpha_1) = roots", orbit_matches(&o, &root_set)));
        out.push(Check::holds("words reproduce orbit(alpha_1)", words_reproduce(&o)?));
    } else {
        // R_3 = A_2 x A_1 is reducible: alpha_3 lies in its own orbit.
        let mut union = BTreeSet::new();
        for a in &alpha {
            union.extend(orbit(a)?.elements);
        }
        out.push(Check::holds("union of simple-root orbits = roots", union == root_set));
    }

    let ruling_set: BTreeSet<PicClass> = rulings(r)?.into_iter().map(|x| x.class).collect();
    let o = orbit(&(PicClass::l(r, 0) - PicClass::l(r, 1)))?;
    out.push(Check::holds("orbit(l0 - l1) = rulings", orbit_matches(&o, &ruling_set)));
    out.push(Check::holds("words reproduce orbit(l0 - l1)", words_reproduce(&o)?));

    if r >= 4 {
        let lower: Vec<PicClass> = {
            let mut v = exceptional_slice(r - 1).to_vec();
            v.sort();
            v
        };
        let mut all_match = true;
        for e in exceptional_slice(r) {
            all_match &= blowdown_correspondence(e)? == lower;
        }
        out.push(Check::new(
            format!("curves disjoint from a fixed E = N_{}", r - 1),
            lower.len(),
            exceptional_slice(r).iter().filter(|f| f.dot(&PicClass::l(r, r)) == 0).count(),
        ));
        out.push(Check::holds("blowdown correspondence for every E", all_match));
        let ws = weight_summary(r)?;
        out.push(Check::new(
            "weights of exceptional curves",
            fundamental_weight_dimension(r),
            Some(ws.dimension()),
        ));
    }
    Ok(out)
}

pub fn relations(genset: &GeneratorSet) -> Result<Vec<Check>> {
    let r = genset.r();
    let mut out = Vec::new();
    let all = all_ruling_relations(genset)?;
    out.push(Check::new(
        format!("rulings with {} relations", r - 3),
        all.len(),
        all.iter().filter(|(_, v)| v.len() == r - 3).count(),
    ));
    out.push(Check::holds(
        "relations are polynomial identities",
        all.iter().flat_map(|(_, v)| v).all(|rel| rel.holds_identically(genset)),
    ));
    out.push(Check::holds(
        "relations have at least three terms",
        all.iter().flat_map(|(_, v)| v).all(|rel| rel.terms.len() >= 3),
    ));
    if r >= 4 {
        let lower = build_generators(&genset.config().drop_last()?)?;
        let ok = blowdown_relation_check(genset, &lower).is_ok();
        out.push(Check::holds("X_{r-1} relations pull back", ok));
    }
    if r == 4 {
        let ok = pluecker_model_with(genset).is_ok();
        out.push(Check::holds("Grassmannian model G(3,5)", ok));
    }
    Ok(out)
}

pub fn generation(genset: &GeneratorSet) -> Result<Vec<Check>> {
    let r = genset.r();
    let mut out = Vec::new();
    let max_degree = if r == 8 { 2 } else { 3 };
    let classes = nef_classes(r, max_degree)?;
    let mut failures = Vec::new();
    for d in &classes {
        match verify_degree_one_generation(d, genset) {
            Ok(rep) if rep.pass() => {}
            Ok(_) | Err(Error::GenerationFailure { .. }) => failures.push(d.to_string()),
            Err(e) => return Err(e),
        }
    }
    out.push(Check::new(
        format!("nef classes of degree <= {max_degree} with rank = h0"),
        Vec::<String>::new(),
        failures,
    ));
    if r == 8 {
        let rep = verify_degree_one_generation(&(PicClass::anticanonical(8) * 2), genset)?;
        out.push(Check::new("rank of -2K products", 4, rep.rank));
        out.push(Check::new("rank of the 120 curve-pair products", 4, rep.exceptional_rank));
        let rep = verify_degree_one_generation(&(PicClass::anticanonical(8) + PicClass::l(8, 8)), genset)?;
        out.push(Check::new("rank of -K + l8 products", 3, rep.rank));
    }
    Ok(out)
}

pub fn jacobian(genset: &GeneratorSet, seed: u64) -> Result<Vec<Check>> {
    let r = genset.r();
    let rep = jacobian_codim_check(genset, seed, 5)?;
    let mut out = vec![
        Check::holds("relations vanish at torsor points", rep.samples.iter().all(|s| s.relations_vanish)),
        Check::new(
            "Jacobian ranks",
            vec![rep.expected_rank; rep.samples.len()],
            rep.samples.iter().map(|s| s.rank).collect::<Vec<_>>(),
        ),
    ];
    if r == 4 {
        // With t = 1 the coordinates are minors of [p_1 .. p_4 | q] up to the
        // fixed scalars of the model.
        // First candidate off every section's zero locus.
        let t = unit_scaling(4);
        let x = [[29, -13, 7], [-17, 31, 11], [41, 23, -19], [5, -37, 13]]
            .into_iter()
            .map(|c| sample_torsor_point(genset, &point_from_i64(c), &t))
            .find_map(|x| x.ok())
            .ok_or_else(|| Error::EvaluationDegeneracy("no candidate point avoids the sections".into()))?;
        let model = pluecker_model_with(genset)?;
        let mut v = Vec::new();
        for m in &model.minors {
            let i = genset.index_of_exceptional(&m.class)?;
            v.push(&x[i] * &m.scalar);
        }
        out.push(Check::holds(
            "unit torsor point satisfies Plücker quadrics",
            pluecker_quadrics(&v).iter().all(Zero::is_zero),
        ));
    }
    Ok(out)
}

pub fn suites_for(suite: Suite, r: usize) -> Vec<Suite> {
    let all = [Suite::Counts, Suite::Weyl, Suite::Relations, Suite::Generation, Suite::Jacobian];
    match suite {
        Suite::All => all
            .into_iter()
            .filter(|s| *s != Suite::Jacobian || (4..=6).contains(&r))
            .collect(),
        s => vec![s],
    }
}
