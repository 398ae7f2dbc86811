//! The Grassmannian model of `Cox(X_4)`.
//!
//! Put the four points and the moving point `q = (x : y : z)` as columns of a
//! 3x5 matrix `M`. The minors through column 5 are linear forms in `q` and
//! realise the sections of the lines `l_0 - l_i - l_j`; the minors on three of
//! the four fixed columns are nonzero constants standing for `x_{l_i}`.

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::generators::{build_generators, GeneratorSet};
use super::relations::{ruling_relations, QuadraticRelation, RelationTerm};
use crate::cli::report::serialize_display;
use crate::enumeration::{rulings, Ruling};
use crate::error::{Error, Result};
use crate::exactalg::matrix::proportional;
use crate::exactalg::{determinant, PlanePoly, QMatrix, Rat};
use crate::lattice::PicClass;
use crate::plane_geometry::{PlanePoint, PointConfig};

/// Column 5 of `M` is the moving point.
const MOVING: usize = 5;

pub const ASSIGNMENT_NOTE: &str = "x[l_i] is the minor on the three columns {1,2,3,4} minus {i}";

/// A 3x3 minor of `M` on columns `a < b < c` (1-based).
pub fn minor(cfg: &PointConfig, cols: [usize; 3]) -> PlanePoly {
    let [a, b, c] = cols;
    assert!(a < b && b < c && c <= MOVING, "minor columns must increase");
    if c == MOVING {
        // det[p_a, p_b, q] = q . (p_a x p_b)
        let (u, v) = (cfg.point(a), cfg.point(b));
        let cross = [
            &u[1] * &v[2] - &u[2] * &v[1],
            &u[2] * &v[0] - &u[0] * &v[2],
            &u[0] * &v[1] - &u[1] * &v[0],
        ];
        let mut p = PlanePoly::zero(1);
        for (i, c) in cross.into_iter().enumerate() {
            p = p.add(&PlanePoly::var(i).scale(&c));
        }
        p
    } else {
        let rows: Vec<Vec<Rat>> = cols
            .iter()
            .map(|&i| cfg.point(i).to_vec())
            .collect();
        // Rows are the points; the determinant of the transpose is the same.
        PlanePoly::constant(determinant(&QMatrix::from_rows(3, rows)))
    }
}

/// `D(a, b, c)` for distinct columns in any order.
fn signed_minor(cfg: &PointConfig, cols: [usize; 3]) -> PlanePoly {
    let mut sorted = cols;
    sorted.sort_unstable();
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| cols[i] > cols[j])
        .count();
    let m = minor(cfg, sorted);
    if inversions % 2 == 1 {
        m.scale(&-Rat::from_integer(1.into()))
    } else {
        m
    }
}

/// The generator class represented by the minor on `cols`.
pub fn minor_class(cols: [usize; 3]) -> PicClass {
    if cols.contains(&MOVING) {
        let pts: Vec<i64> = cols.iter().filter(|&&c| c != MOVING).map(|&c| c as i64).collect();
        let mut mults = [0i64; 4];
        for p in pts {
            mults[p as usize - 1] = 1;
        }
        PicClass::from_multiplicities(4, 1, &mults).expect("r = 4")
    } else {
        let missing = (1..=4).find(|i| !cols.contains(i)).expect("three of four columns");
        PicClass::l(4, missing)
    }
}

/// A Plücker identity with fixed column `fixed`:
/// `D(m,i,j) D(m,k,l) - D(m,i,k) D(m,j,l) + D(m,i,l) D(m,j,k) = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct PlueckerIdentity {
    pub fixed: usize,
    pub ruling: PicClass,
    /// `(sign, columns of first minor, columns of second minor)`.
    pub terms: Vec<(i64, [usize; 3], [usize; 3])>,
    pub vanishes: bool,
}

fn identity_terms(fixed: usize) -> Vec<(i64, [usize; 3], [usize; 3])> {
    let o: Vec<usize> = (1..=MOVING).filter(|&c| c != fixed).collect();
    let (i, j, k, l) = (o[0], o[1], o[2], o[3]);
    let m = fixed;
    vec![
        (1, [m, i, j], [m, k, l]),
        (-1, [m, i, k], [m, j, l]),
        (1, [m, i, l], [m, j, k]),
    ]
}

fn ruling_of_fixed(fixed: usize) -> PicClass {
    if fixed == MOVING {
        PicClass::anticanonical(4) - PicClass::l(4, 0)
    } else {
        PicClass::l(4, 0) - PicClass::l(4, fixed)
    }
}

fn sorted3(mut c: [usize; 3]) -> [usize; 3] {
    c.sort_unstable();
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorMatch {
    pub columns: [usize; 3],
    pub class: PicClass,
    /// `minor = scalar * x[class]`.
    #[serde(serialize_with = "serialize_display")]
    pub scalar: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlueckerReport {
    pub minors: Vec<MinorMatch>,
    pub identities: Vec<PlueckerIdentity>,
    /// Per ruling: whether its relation is proportional to the quadric.
    pub relation_matches: Vec<(PicClass, bool)>,
    pub note: &'static str,
}

impl PlueckerReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.vanishes) && self.relation_matches.iter().all(|m| m.1)
    }
}

/// Scalar `s` with `p = s * q`, if any.
fn scalar_multiple(p: &PlanePoly, q: &PlanePoly) -> Option<Rat> {
    if p.degree() != q.degree() || q.is_zero() {
        return None;
    }
    let (m, c) = q.terms().next()?;
    let s = p.coefficient(m) / c;
    (q.scale(&s) == *p).then_some(s)
}

/// Builds `M`, checks the minors against the interpolated sections, the
/// five Plücker identities, and the agreement of each ruling relation with
/// its quadric.
pub fn pluecker_model_r4(cfg: &PointConfig) -> Result<PlueckerReport> {
    if cfg.r() != 4 {
        return Err(Error::InvalidInput(format!(
            "the Grassmannian model needs r = 4, got {}",
            cfg.r()
        )));
    }
    let genset = build_generators(cfg)?;
    pluecker_model_with(&genset)
}

pub fn pluecker_model_with(genset: &GeneratorSet) -> Result<PlueckerReport> {
    let cfg = genset.config();
    let mut minors = Vec::new();
    for cols in (1..=MOVING).combinations(3) {
        let cols = [cols[0], cols[1], cols[2]];
        let class = minor_class(cols);
        let m = minor(cfg, cols);
        let section = &genset.get(genset.index_of_exceptional(&class)?).poly;
        let scalar = scalar_multiple(&m, section)
            .filter(|s| !s.is_zero())
            .ok_or_else(|| Error::ModelMismatch(format!("minor {cols:?} is not a multiple of x[{class}]")))?;
        minors.push(MinorMatch { columns: cols, class, scalar });
    }
    let scalar_of = |cols: [usize; 3]| -> &Rat {
        let key = sorted3(cols);
        &minors.iter().find(|m| m.columns == key).expect("all ten minors").scalar
    };

    let mut identities = Vec::new();
    let mut relation_matches = Vec::new();
    let all_rulings: Vec<Ruling> = rulings(4)?;
    for fixed in 1..=MOVING {
        let terms = identity_terms(fixed);
        let poly = terms
            .iter()
            .map(|(s, a, b)| {
                signed_minor(cfg, *a)
                    .multiply(&signed_minor(cfg, *b))
                    .scale(&Rat::from_integer((*s).into()))
            })
            .reduce(|x, y| x.add(&y))
            .expect("three terms");
        let ruling = ruling_of_fixed(fixed);
        identities.push(PlueckerIdentity {
            fixed,
            ruling,
            terms: terms.clone(),
            vanishes: poly.is_zero(),
        });

        // The quadric rewritten in generators: D(a) D(b) = sign_a sign_b
        // scalar_a scalar_b x_a x_b.
        let ru = all_rulings
            .iter()
            .find(|x| x.class == ruling)
            .ok_or_else(|| Error::Inconsistency(format!("{ruling} is not a ruling")))?;
        let quadric = QuadraticRelation {
            ruling,
            terms: terms
                .iter()
                .map(|(s, a, b)| {
                    let sign = |c: [usize; 3]| {
                        let inv = (0..3)
                            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                            .filter(|&(i, j)| c[i] > c[j])
                            .count();
                        if inv % 2 == 0 { 1 } else { -1 }
                    };
                    let coeff = Rat::from_integer((s * sign(*a) * sign(*b)).into()) * scalar_of(*a) * scalar_of(*b);
                    let ia = genset.index_of_exceptional(&minor_class(sorted3(*a)))?;
                    let ib = genset.index_of_exceptional(&minor_class(sorted3(*b)))?;
                    Ok(RelationTerm { coeff, pair: (ia, ib) })
                })
                .collect::<Result<_>>()?,
        };
        let rels = ruling_relations(ru, genset)?;
        let matches = rels.len() == 1
            && quadric.holds_identically(genset)
            && proportional(
                &rels[0].fiber_vector(ru, genset)?,
                &quadric.fiber_vector(ru, genset)?,
            );
        relation_matches.push((ruling, matches));
    }
    let report = PlueckerReport {
        minors,
        identities,
        relation_matches,
        note: ASSIGNMENT_NOTE,
    };
    if !report.all_pass() {
        return Err(Error::ModelMismatch(format!(
            "Plücker checks failed: {:?}",
            report
                .identities
                .iter()
                .filter(|i| !i.vanishes)
                .map(|i| i.fixed)
                .collect::<Vec<_>>()
        )));
    }
    Ok(report)
}

/// The ten Plücker coordinates of a numeric 3x5 matrix given by columns,
/// ordered like `(1..=5).combinations(3)`.
pub fn pluecker_vector(columns: &[PlanePoint; 5]) -> Vec<Rat> {
    (0..5)
        .combinations(3)
        .map(|c| {
            let rows: Vec<Vec<Rat>> = c.iter().map(|&i| columns[i].to_vec()).collect();
            determinant(&QMatrix::from_rows(3, rows))
        })
        .collect()
}

/// Evaluates the five three-term quadrics on a Plücker vector.
pub fn pluecker_quadrics(v: &[Rat]) -> Vec<Rat> {
    let index = |c: [usize; 3]| -> (usize, i64) {
        let s = sorted3(c);
        let inv = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| c[i] > c[j])
            .count();
        let pos = (1..=MOVING)
            .combinations(3)
            .position(|x| x == s)
            .expect("valid triple");
        (pos, if inv % 2 == 0 { 1 } else { -1 })
    };
    (1..=MOVING)
        .map(|fixed| {
            identity_terms(fixed)
                .iter()
                .map(|(s, a, b)| {
                    let (ia, sa) = index(*a);
                    let (ib, sb) = index(*b);
                    Rat::from_integer((s * sa * sb).into()) * &v[ia] * &v[ib]
                })
                .sum()
        })
        .collect()
}
