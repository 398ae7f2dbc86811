//! Weyl group action on `Pic(X_r)` through the simple reflections.
//!
//! Group elements are never materialised; everything is orbit level.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::enumeration::{exceptional_slice, is_exceptional};
use crate::error::{Error, Result};
use crate::lattice::{contract_last, reflect_unchecked, simple_roots, PicClass};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// A sequence of simple-reflection indices (0-based into
/// [`simple_roots`]); applied left to right.
pub type Word = Vec<usize>;

/// BFS closure of a seed under the simple reflections.
#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub seed: PicClass,
    /// Orbit elements in discovery order (shortest words first).
    pub elements: Vec<PicClass>,
    words: HashMap<PicClass, Word>,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &PicClass) -> bool {
        self.words.contains_key(x)
    }

    pub fn word(&self, x: &PicClass) -> Option<&Word> {
        self.words.get(x)
    }

    pub fn sorted_elements(&self) -> Vec<PicClass> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }
}

/// Applies the word to `x`, first letter first.
pub fn apply_word(x: &PicClass, word: &[usize]) -> Result<PicClass> {
    let roots = simple_roots(x.r())?;
    Ok(word.iter().fold(*x, |acc, &i| reflect_unchecked(&acc, &roots[i])))
}

pub fn orbit(seed: &PicClass) -> Result<OrbitResult> {
    orbit_with_cap(seed, DEFAULT_ORBIT_CAP)
}

/// Breadth-first orbit; ties between equally short words go to the smallest
/// reflection index.
pub fn orbit_with_cap(seed: &PicClass, cap: usize) -> Result<OrbitResult> {
    let roots = simple_roots(seed.r())?;
    let mut words: HashMap<PicClass, Word> = HashMap::new();
    let mut elements = vec![*seed];
    words.insert(*seed, Vec::new());
    let mut queue = VecDeque::from([*seed]);
    while let Some(x) = queue.pop_front() {
        for (i, alpha) in roots.iter().enumerate() {
            let y = reflect_unchecked(&x, alpha);
            if words.contains_key(&y) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::OrbitOverflow(cap));
            }
            let mut w = words[&x].clone();
            w.push(i);
            words.insert(y, w);
            elements.push(y);
            queue.push_back(y);
        }
    }
    Ok(OrbitResult {
        seed: *seed,
        elements,
        words,
    })
}

/// A word `w` with `w(seed) = target`.
pub fn word_to(seed: &PicClass, target: &PicClass) -> Result<Word> {
    let orb = orbit(seed)?;
    orb.word(target)
        .cloned()
        .ok_or_else(|| Error::NotInOrbit(target.to_string(), seed.to_string()))
}

/// The pairings `((D, alpha_1), ..., (D, alpha_r))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

pub fn weight_vector(d: &PicClass) -> WeightVector {
    let roots = simple_roots(d.r()).expect("class has a valid surface index");
    WeightVector(roots.iter().map(|a| d.dot(a)).collect())
}

/// Weight data of `V(w_r)` as seen from the exceptional curves.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSummary {
    pub r: usize,
    /// Distinct nonzero weights carried by exceptional classes.
    pub nonzero_weights: usize,
    /// Multiplicity of the zero weight: zero when the exceptional classes
    /// exhaust the weights, the rank otherwise.
    pub zero_weight_multiplicity: usize,
    /// Whether the exceptional curves form a single Weyl orbit.
    pub single_orbit: bool,
    /// Whether `E + K` is a root for every exceptional `E`, i.e. the
    /// exceptional weights are the roots and `V(w_r)` is adjoint.
    pub adjoint: bool,
}

impl WeightSummary {
    pub fn dimension(&self) -> usize {
        self.nonzero_weights + self.zero_weight_multiplicity
    }
}

pub fn weight_summary(r: usize) -> Result<WeightSummary> {
    let seed = PicClass::l(r, r);
    let orb = orbit(&seed)?;
    let curves = exceptional_slice(r);
    let single_orbit = orb.len() == curves.len() && curves.iter().all(|e| orb.contains(e));
    let weights: std::collections::BTreeSet<WeightVector> = curves.iter().map(weight_vector).collect();
    let nonzero = weights.iter().filter(|w| !w.is_zero()).count();
    let k = PicClass::canonical(r);
    let adjoint = curves.iter().all(|e| {
        let a = *e + k;
        a.self_intersection() == -2 && a.degree() == 0
    });
    Ok(WeightSummary {
        r,
        nonzero_weights: nonzero,
        zero_weight_multiplicity: if adjoint { r } else { 0 },
        single_orbit,
        adjoint,
    })
}

/// Moves `e` to `l_r` by a Weyl element and contracts: the exceptional
/// classes orthogonal to `e`, read as classes on `X_{r-1}`.
pub fn blowdown_correspondence(e: &PicClass) -> Result<Vec<PicClass>> {
    if !is_exceptional(e) {
        return Err(Error::NotExceptional(e.to_string()));
    }
    let r = e.r();
    let w = word_to(e, &PicClass::l(r, r))?;
    let mut out = Vec::new();
    for f in exceptional_slice(r).iter().filter(|f| f.dot(e) == 0) {
        out.push(contract_last(&apply_word(f, &w)?)?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{exceptional_curves, roots, rulings};
    use crate::lattice::{MAX_R, MIN_R};

    #[test]
    fn exceptional_orbit_sizes() {
        let sizes: Vec<usize> = (MIN_R..=MAX_R)
            .map(|r| orbit(&PicClass::l(r, r)).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![6, 10, 16, 27, 56, 240]);
    }

    #[test]
    fn orbits_match_enumeration() {
        for r in MIN_R..=MAX_R {
            let curves = orbit(&PicClass::l(r, r)).unwrap().sorted_elements();
            assert_eq!(curves, exceptional_curves(r).unwrap());
            let rul = orbit(&(PicClass::l(r, 0) - PicClass::l(r, 1))).unwrap().sorted_elements();
            let classes: Vec<_> = rulings(r).unwrap().into_iter().map(|x| x.class).collect();
            assert_eq!(rul, classes);
        }
        for r in 4..=MAX_R {
            let a1 = simple_roots(r).unwrap()[0];
            assert_eq!(orbit(&a1).unwrap().sorted_elements(), roots(r).unwrap());
        }
    }

    #[test]
    fn r3_root_orbit_splits() {
        // A2 x A1 is reducible: alpha_1 only reaches the A2 part.
        let simple = simple_roots(3).unwrap();
        assert_eq!(orbit(&simple[0]).unwrap().len(), 6);
        assert_eq!(orbit(&simple[2]).unwrap().len(), 2);
    }

    #[test]
    fn words_reproduce_elements() {
        let orb = orbit(&PicClass::l(7, 7)).unwrap();
        for x in &orb.elements {
            assert_eq!(apply_word(&orb.seed, orb.word(x).unwrap()).unwrap(), *x);
        }
    }

    #[test]
    fn word_examples() {
        let r = 4;
        assert!(word_to(&PicClass::l(r, r), &PicClass::l(r, r)).unwrap().is_empty());
        let target = PicClass::l(r, 0) - PicClass::l(r, 1) - PicClass::l(r, 2);
        let w = word_to(&PicClass::l(r, 4), &target).unwrap();
        assert!(!w.is_empty());
        assert_eq!(apply_word(&PicClass::l(r, 4), &w).unwrap(), target);
        assert!(matches!(
            word_to(&PicClass::l(r, 4), &PicClass::l(r, 0)),
            Err(Error::NotInOrbit(..))
        ));
    }

    #[test]
    fn orbit_cap() {
        assert!(matches!(
            orbit_with_cap(&PicClass::l(8, 8), 100),
            Err(Error::OrbitOverflow(100))
        ));
    }

    #[test]
    fn weights() {
        for r in MIN_R..=MAX_R {
            assert!(weight_vector(&PicClass::canonical(r)).is_zero());
            let curves = exceptional_curves(r).unwrap();
            let distinct: std::collections::HashSet<_> = curves.iter().map(weight_vector).collect();
            assert_eq!(distinct.len(), curves.len());
        }
        for r in 4..=MAX_R {
            let s = weight_summary(r).unwrap();
            assert!(s.single_orbit);
            assert_eq!(Some(s.dimension()), crate::lattice::fundamental_weight_dimension(r));
            assert_eq!(s.adjoint, r == 8);
        }
        assert_eq!(weight_summary(8).unwrap().zero_weight_multiplicity, 8);
    }

    #[test]
    fn blowdown_counts() {
        for r in 5..=MAX_R {
            let lower = exceptional_curves(r - 1).unwrap();
            for e in exceptional_curves(r).unwrap().iter().step_by(7) {
                assert_eq!(blowdown_correspondence(e).unwrap(), lower, "r = {r}, E = {e}");
            }
        }
    }
}
