//! Finite distinguished subsets of `Pic(X_r)`: exceptional curves, roots,
//! rulings and their fibres.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{check_r, PicClass, MAX_R, MIN_R};

/// The seven classical families of exceptional curves on `X_r`.
///
/// Point indices are 1-based, matching `l_1 .. l_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family")]
pub enum CurveFamily {
    /// The exceptional fibre over `p_i`.
    Point { index: usize },
    /// Line through two points.
    Line { points: Vec<usize> },
    /// Conic through five points.
    Conic { points: Vec<usize> },
    /// Cubic through seven points, one of them double.
    CubicDouble { double: usize, simple: Vec<usize> },
    /// Quartic through eight points, three of them double.
    QuarticTripleDouble { doubles: Vec<usize>, simple: Vec<usize> },
    /// Quintic through eight points, six of them double.
    QuinticSixDouble { doubles: Vec<usize>, simple: Vec<usize> },
    /// Sextic through eight points, seven double and one triple.
    SexticTriple { triple: usize, doubles: Vec<usize> },
}

impl CurveFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            CurveFamily::Point { .. } => "Point",
            CurveFamily::Line { .. } => "Line",
            CurveFamily::Conic { .. } => "Conic",
            CurveFamily::CubicDouble { .. } => "CubicDouble",
            CurveFamily::QuarticTripleDouble { .. } => "QuarticTripleDouble",
            CurveFamily::QuinticSixDouble { .. } => "QuinticSixDouble",
            CurveFamily::SexticTriple { .. } => "SexticTriple",
        }
    }

    /// Rebuilds the class of the family member on `X_r`.
    pub fn class(&self, r: usize) -> Result<PicClass> {
        let mut mults = vec![0i64; r];
        let mut set = |idx: &[usize], m: i64| -> Result<()> {
            for &i in idx {
                if i == 0 || i > r {
                    return Err(Error::InvalidInput(format!("point index {i} out of range")));
                }
                mults[i - 1] = m;
            }
            Ok(())
        };
        let degree = match self {
            CurveFamily::Point { index } => {
                set(&[*index], -1)?;
                0
            }
            CurveFamily::Line { points } => {
                set(points, 1)?;
                1
            }
            CurveFamily::Conic { points } => {
                set(points, 1)?;
                2
            }
            CurveFamily::CubicDouble { double, simple } => {
                set(simple, 1)?;
                set(&[*double], 2)?;
                3
            }
            CurveFamily::QuarticTripleDouble { doubles, simple } => {
                set(simple, 1)?;
                set(doubles, 2)?;
                4
            }
            CurveFamily::QuinticSixDouble { doubles, simple } => {
                set(simple, 1)?;
                set(doubles, 2)?;
                5
            }
            CurveFamily::SexticTriple { triple, doubles } => {
                set(doubles, 2)?;
                set(&[*triple], 3)?;
                6
            }
        };
        PicClass::from_multiplicities(r, degree, &mults)
    }
}

impl fmt::Display for CurveFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().join(",");
        match self {
            CurveFamily::Point { index } => write!(f, "Point{{{index}}}"),
            CurveFamily::Line { points } => write!(f, "Line{{{}}}", list(points)),
            CurveFamily::Conic { points } => write!(f, "Conic{{{}}}", list(points)),
            CurveFamily::CubicDouble { double, simple } => {
                write!(f, "CubicDouble{{double={double}; {}}}", list(simple))
            }
            CurveFamily::QuarticTripleDouble { doubles, simple } => {
                write!(f, "QuarticTripleDouble{{double={}; {}}}", list(doubles), list(simple))
            }
            CurveFamily::QuinticSixDouble { doubles, simple } => {
                write!(f, "QuinticSixDouble{{double={}; {}}}", list(doubles), list(simple))
            }
            CurveFamily::SexticTriple { triple, doubles } => {
                write!(f, "SexticTriple{{triple={triple}; {}}}", list(doubles))
            }
        }
    }
}

/// Plane degree and multiplicity groups `(multiplicity, count)` for each
/// family of positive degree.
const FAMILY_PATTERNS: [(i64, &[(i64, usize)]); 6] = [
    (1, &[(1, 2)]),
    (2, &[(1, 5)]),
    (3, &[(2, 1), (1, 6)]),
    (4, &[(2, 3), (1, 5)]),
    (5, &[(2, 6), (1, 2)]),
    (6, &[(3, 1), (2, 7)]),
];

/// All ways of distributing the multiplicity groups over distinct points
/// chosen from `available`.
fn place_groups(groups: &[(i64, usize)], available: &[usize], r: usize) -> Vec<Vec<i64>> {
    let Some((&(mult, count), rest)) = groups.split_first() else {
        return vec![vec![0; r]];
    };
    let mut out = Vec::new();
    for chosen in available.iter().copied().combinations(count) {
        let remaining: Vec<usize> = available.iter().copied().filter(|i| !chosen.contains(i)).collect();
        for mut tail in place_groups(rest, &remaining, r) {
            for &i in &chosen {
                tail[i] = mult;
            }
            out.push(tail);
        }
    }
    out
}

fn enumerate_exceptional(r: usize) -> Vec<PicClass> {
    let mut curves: Vec<PicClass> = (1..=r).map(|i| PicClass::l(r, i)).collect();
    let slots: Vec<usize> = (0..r).collect();
    for (m0, groups) in FAMILY_PATTERNS {
        for mults in place_groups(groups, &slots, r) {
            curves.push(PicClass::from_multiplicities(r, m0, &mults).expect("valid pattern"));
        }
    }
    curves.sort();
    curves
}

fn cached<T: Send + Sync>(
    cell: &'static [OnceLock<T>; MAX_R + 1],
    r: usize,
    init: impl FnOnce() -> T,
) -> &'static T {
    cell[r].get_or_init(init)
}

static CURVES: [OnceLock<Vec<PicClass>>; MAX_R + 1] = [const { OnceLock::new() }; MAX_R + 1];
static ROOTS: [OnceLock<Vec<PicClass>>; MAX_R + 1] = [const { OnceLock::new() }; MAX_R + 1];
static RULINGS: [OnceLock<Result<Vec<Ruling>, String>>; MAX_R + 1] =
    [const { OnceLock::new() }; MAX_R + 1];

/// Cached exceptional classes; `r` must already be validated.
pub(crate) fn exceptional_slice(r: usize) -> &'static [PicClass] {
    cached(&CURVES, r, || enumerate_exceptional(r))
}

/// All exceptional classes of `X_r` in canonical order, enumerated family by
/// family from the multiplicity patterns.
pub fn exceptional_curves(r: usize) -> Result<Vec<PicClass>> {
    check_r(r)?;
    Ok(exceptional_slice(r).to_vec())
}

/// Lattice characterisation: `(E, E) = -1` and `(E, -K) = 1`.
pub fn is_exceptional(e: &PicClass) -> bool {
    e.self_intersection() == -1 && e.degree() == 1
}

/// Identifies the family of an exceptional class.
pub fn classify_family(e: &PicClass) -> Result<CurveFamily> {
    let not_exc = || Error::NotExceptional(e.to_string());
    if !is_exceptional(e) {
        return Err(not_exc());
    }
    let m0 = e.coeff(0);
    let mults = e.multiplicities();
    let with = |m: i64| -> Vec<usize> {
        mults.iter().enumerate().filter(|(_, &v)| v == m).map(|(i, _)| i + 1).collect()
    };
    let (ones, twos, threes, neg) = (with(1), with(2), with(3), with(-1));
    let family = match (m0, ones.len(), twos.len(), threes.len(), neg.len()) {
        (0, 0, 0, 0, 1) => CurveFamily::Point { index: neg[0] },
        (1, 2, 0, 0, 0) => CurveFamily::Line { points: ones },
        (2, 5, 0, 0, 0) => CurveFamily::Conic { points: ones },
        (3, 6, 1, 0, 0) => CurveFamily::CubicDouble {
            double: twos[0],
            simple: ones,
        },
        (4, 5, 3, 0, 0) => CurveFamily::QuarticTripleDouble {
            doubles: twos,
            simple: ones,
        },
        (5, 2, 6, 0, 0) => CurveFamily::QuinticSixDouble {
            doubles: twos,
            simple: ones,
        },
        (6, 0, 7, 1, 0) => CurveFamily::SexticTriple {
            triple: threes[0],
            doubles: twos,
        },
        _ => return Err(not_exc()),
    };
    debug_assert_eq!(family.class(e.r()).ok().as_ref(), Some(e));
    Ok(family)
}

/// Every class `D` with `(D, D) = self_int` and `(D, -K) = degree`.
///
/// Writing `D = c_0 l_0 + sum c_i l_i`, the conditions read
/// `sum c_i^2 = c_0^2 - self_int` and `sum c_i = degree - 3 c_0`. By
/// Cauchy-Schwarz `(degree - 3 c_0)^2 <= r (c_0^2 - self_int)`, which bounds
/// `c_0` because `r < 9`; the same inequality prunes the inner search.
pub fn lattice_solutions(r: usize, self_int: i64, degree: i64) -> Result<Vec<PicClass>> {
    check_r(r)?;
    let rr = r as i64;
    // (9 - r) c0^2 - 6 d c0 + d^2 + r s <= 0
    let a = 9 - rr;
    let b = -6 * degree;
    let c = degree * degree + rr * self_int;
    let disc = b * b - 4 * a * c;
    let mut out = Vec::new();
    if disc < 0 {
        return Ok(out);
    }
    let sq = (disc as f64).sqrt();
    let lo = ((-b as f64 - sq) / (2 * a) as f64).floor() as i64 - 1;
    let hi = ((-b as f64 + sq) / (2 * a) as f64).ceil() as i64 + 1;
    let mut tail = vec![0i64; r];
    for c0 in lo..=hi {
        if a * c0 * c0 + b * c0 + c > 0 {
            continue;
        }
        let squares = c0 * c0 - self_int;
        let sum = degree - 3 * c0;
        if squares < 0 || (squares - sum).rem_euclid(2) != 0 {
            continue;
        }
        search_tail(&mut tail, 0, sum, squares, &mut |t| {
            let mut coeffs = vec![c0];
            coeffs.extend_from_slice(t);
            out.push(PicClass::from_slice(r, &coeffs));
        });
    }
    out.sort();
    Ok(out)
}

fn search_tail(buf: &mut [i64], pos: usize, sum: i64, squares: i64, emit: &mut impl FnMut(&[i64])) {
    let left = (buf.len() - pos) as i64;
    if left == 0 {
        if sum == 0 && squares == 0 {
            emit(buf);
        }
        return;
    }
    if squares < 0 || sum * sum > left * squares {
        return;
    }
    let bound = (squares as f64).sqrt() as i64 + 1;
    for v in -bound..=bound {
        let rest = squares - v * v;
        if rest < 0 {
            continue;
        }
        buf[pos] = v;
        search_tail(buf, pos + 1, sum - v, rest, emit);
    }
    buf[pos] = 0;
}

/// The root system `R_r = {alpha : (alpha, alpha) = -2, (alpha, K) = 0}`.
pub fn roots(r: usize) -> Result<Vec<PicClass>> {
    check_r(r)?;
    Ok(cached(&ROOTS, r, || lattice_solutions(r, -2, 0).expect("r checked")).clone())
}

/// A conic-bundle class together with its reducible fibres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ruling {
    pub class: PicClass,
    /// Unordered pairs `{E, E'}` with `E + E' = class`, `(E, E') = 1`,
    /// smaller class first, sorted.
    pub fibers: Vec<(PicClass, PicClass)>,
}

impl Ruling {
    pub fn r(&self) -> usize {
        self.class.r()
    }
}

/// The fibre pairs of a ruling class.
pub fn ruling_fibers(d: &PicClass) -> Vec<(PicClass, PicClass)> {
    exceptional_slice(d.r())
        .iter()
        .filter(|e| e.dot(d) == 0)
        .filter_map(|e| {
            let f = *d - *e;
            (*e < f && is_exceptional(&f) && e.dot(&f) == 1).then_some((*e, f))
        })
        .collect()
}

fn compute_rulings(r: usize) -> Result<Vec<Ruling>, String> {
    let curves = exceptional_slice(r);
    let mut classes = BTreeSet::new();
    for (i, e) in curves.iter().enumerate() {
        for f in &curves[i + 1..] {
            if e.dot(f) == 1 {
                classes.insert(*e + *f);
            }
        }
    }
    // The two characterisations of a ruling must agree.
    let lattice: BTreeSet<PicClass> = lattice_solutions(r, 0, 2)
        .map_err(|e| e.to_string())?
        .into_iter()
        .collect();
    if let Some(bad) = lattice.symmetric_difference(&classes).next() {
        return Err(format!(
            "class {bad} separates the pair-sum and (D,D)=0, deg 2 descriptions of rulings"
        ));
    }
    let mut out = Vec::with_capacity(classes.len());
    for class in classes {
        let fibers = ruling_fibers(&class);
        if fibers.len() != r - 1 {
            return Err(format!("ruling {class} has {} fibres, expected {}", fibers.len(), r - 1));
        }
        out.push(Ruling { class, fibers });
    }
    Ok(out)
}

/// All rulings of `X_r` in canonical order, each with its `r - 1` fibres.
pub fn rulings(r: usize) -> Result<Vec<Ruling>> {
    check_r(r)?;
    cached(&RULINGS, r, || compute_rulings(r))
        .clone()
        .map_err(Error::Inconsistency)
}

/// Unordered pairs `{E, E'}` of exceptional classes with `(E, E') = k` and
/// `E + E' = total`.
pub fn pairs_with_intersection(r: usize, k: i64, total: &PicClass) -> Result<Vec<(PicClass, PicClass)>> {
    check_r(r)?;
    if total.r() != r {
        return Err(Error::DimensionMismatch {
            left: r,
            right: total.r(),
        });
    }
    Ok(exceptional_slice(r)
        .iter()
        .filter_map(|e| {
            let f = *total - *e;
            (*e <= f && is_exceptional(&f) && e.dot(&f) == k).then_some((*e, f))
        })
        .collect())
}

/// Two explicit decompositions of `-K` into exceptional classes for each
/// `r` in `4..=7`, each containing a component through `p_1`.
pub fn anticanonical_decompositions(r: usize) -> Result<Vec<Vec<PicClass>>> {
    if !(4..=7).contains(&r) {
        return Err(Error::RangeError(r, "4..=7"));
    }
    let l = |i| PicClass::l(r, i);
    let line = |i, j| l(0) - l(i) - l(j);
    let conic = |pts: [usize; 5]| pts.iter().fold(l(0) * 2, |acc, &i| acc - l(i));
    Ok(match r {
        4 => vec![
            vec![line(1, 2), line(3, 4), line(2, 3), l(2), l(3)],
            vec![line(1, 3), line(2, 4), line(2, 3), l(2), l(3)],
        ],
        5 => vec![
            vec![line(1, 2), line(3, 4), line(4, 5), l(4)],
            vec![line(1, 5), line(2, 3), line(3, 4), l(3)],
        ],
        6 => vec![
            vec![line(1, 2), line(3, 4), line(5, 6)],
            vec![line(1, 6), line(5, 4), line(3, 2)],
        ],
        7 => vec![
            vec![conic([1, 2, 3, 4, 5]), line(6, 7)],
            vec![conic([7, 6, 5, 4, 3]), line(2, 1)],
        ],
        _ => unreachable!(),
    })
}

/// Checks that every listed decomposition sums to `-K` with exceptional
/// summands.
pub fn verify_anticanonical_decompositions(r: usize) -> bool {
    let Ok(decomps) = anticanonical_decompositions(r) else {
        return false;
    };
    let minus_k = PicClass::anticanonical(r);
    decomps.iter().all(|parts| {
        parts.iter().all(is_exceptional) && parts.iter().copied().sum::<PicClass>() == minus_k
    })
}

/// Supported surface indices.
pub fn surface_range() -> std::ops::RangeInclusive<usize> {
    MIN_R..=MAX_R
}
