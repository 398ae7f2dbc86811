//! The Picard lattice of X_r.
//!
//! `Pic(X_r)` is `Z^{r+1}` with basis `l_0` (pullback of a line) and
//! `l_1 .. l_r` (exceptional fibres over the blown-up points). The
//! intersection form is `diag(1, -1, ..., -1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MIN_R: usize = 3;
pub const MAX_R: usize = 8;

const WIDTH: usize = MAX_R + 1;

pub(crate) fn check_r(r: usize) -> Result<()> {
    if (MIN_R..=MAX_R).contains(&r) {
        Ok(())
    } else {
        Err(Error::RangeError(r, "3..=8"))
    }
}

/// An element `m_0 l_0 + m_1 l_1 + ... + m_r l_r` of `Pic(X_r)`.
///
/// Coefficients are stored in a fixed-width array; slots past `r` are zero.
/// All arithmetic is overflow-checked and panics rather than wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PicClass {
    r: u8,
    coeffs: [i64; WIDTH],
}

impl PicClass {
    pub fn new(r: usize, coeffs: &[i64]) -> Result<Self> {
        check_r(r)?;
        if coeffs.len() != r + 1 {
            return Err(Error::CoefficientCount {
                expected: r + 1,
                actual: coeffs.len(),
            });
        }
        let mut c = [0; WIDTH];
        c[..=r].copy_from_slice(coeffs);
        Ok(PicClass { r: r as u8, coeffs: c })
    }

    /// Builds a class from coefficients already known to be well formed.
    pub(crate) fn from_slice(r: usize, coeffs: &[i64]) -> Self {
        Self::new(r, coeffs).expect("well-formed class")
    }

    pub fn zero(r: usize) -> Self {
        Self::from_slice(r, &vec![0; r + 1])
    }

    /// The basis vector `l_i` (`l_0` is the line class).
    pub fn l(r: usize, i: usize) -> Self {
        assert!(i <= r, "basis index {i} out of range for r = {r}");
        let mut c = Self::zero(r);
        c.coeffs[i] = 1;
        c
    }

    /// The canonical class `K = -3 l_0 + l_1 + ... + l_r`.
    pub fn canonical(r: usize) -> Self {
        -Self::anticanonical(r)
    }

    /// `-K = 3 l_0 - l_1 - ... - l_r`.
    pub fn anticanonical(r: usize) -> Self {
        let mut c = Self::zero(r);
        c.coeffs[0] = 3;
        for i in 1..=r {
            c.coeffs[i] = -1;
        }
        c
    }

    /// Class of a plane curve of degree `m0` with multiplicity `mults[i]`
    /// at `p_{i+1}`, i.e. `m0 l_0 - sum mults[i] l_{i+1}`.
    pub fn from_multiplicities(r: usize, m0: i64, mults: &[i64]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(r + 1);
        coeffs.push(m0);
        coeffs.extend(mults.iter().map(|m| -m));
        Self::new(r, &coeffs)
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..=self.r()]
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs()[i]
    }

    /// Multiplicities `(m_1, ..., m_r)` in the plane-curve reading of the
    /// class, i.e. the negated coefficients of `l_1 .. l_r`.
    pub fn multiplicities(&self) -> Vec<i64> {
        self.coeffs()[1..].iter().map(|c| -c).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    /// Intersection number; panics when the classes live on different surfaces.
    pub fn dot(&self, other: &PicClass) -> i64 {
        assert_eq!(self.r, other.r, "intersection of classes on different surfaces");
        let c = self.coeffs();
        let d = other.coeffs();
        let mut acc = c[0].checked_mul(d[0]).expect("intersection overflow");
        for i in 1..c.len() {
            acc = c[i]
                .checked_mul(d[i])
                .and_then(|p| acc.checked_sub(p))
                .expect("intersection overflow");
        }
        acc
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// Anticanonical degree `(D, -K)`.
    pub fn degree(&self) -> i64 {
        self.dot(&Self::anticanonical(self.r()))
    }

    fn zip_with(self, other: Self, f: impl Fn(i64, i64) -> Option<i64>) -> Self {
        assert_eq!(self.r, other.r, "arithmetic on classes of different surfaces");
        let mut out = self;
        for i in 0..=self.r() {
            out.coeffs[i] = f(self.coeffs[i], other.coeffs[i]).expect("class arithmetic overflow");
        }
        out
    }
}

/// `(a, b) = a_0 b_0 - sum_{i >= 1} a_i b_i`.
pub fn intersect(a: &PicClass, b: &PicClass) -> Result<i64> {
    if a.r != b.r {
        return Err(Error::DimensionMismatch {
            left: a.r(),
            right: b.r(),
        });
    }
    Ok(a.dot(b))
}

pub fn degree(d: &PicClass) -> i64 {
    d.degree()
}

/// Simple roots `alpha_1 .. alpha_r`:
/// `l_1 - l_2`, `l_2 - l_3`, `l_0 - l_1 - l_2 - l_3`, then `l_{i-1} - l_i`.
pub fn simple_roots(r: usize) -> Result<Vec<PicClass>> {
    check_r(r)?;
    let l = |i| PicClass::l(r, i);
    let mut roots = vec![l(1) - l(2), l(2) - l(3), l(0) - l(1) - l(2) - l(3)];
    for i in 4..=r {
        roots.push(l(i - 1) - l(i));
    }
    Ok(roots)
}

/// The reflection `x -> x + (x, alpha) alpha` in a root.
pub fn reflect(x: &PicClass, alpha: &PicClass) -> Result<PicClass> {
    let pairing = intersect(x, alpha)?;
    let norm = alpha.self_intersection();
    if norm != -2 {
        return Err(Error::NotARoot(alpha.to_string(), norm));
    }
    Ok(*x + *alpha * pairing)
}

/// Reflection without the root check, for callers iterating over known roots.
pub(crate) fn reflect_unchecked(x: &PicClass, alpha: &PicClass) -> PicClass {
    *x + *alpha * x.dot(alpha)
}

/// Pullback along the blowup `X_r -> X_{r-1}`: appends a zero coefficient
/// for the new exceptional fibre `l_r`.
pub fn embed_blowdown(d: &PicClass) -> Result<PicClass> {
    let r = d.r() + 1;
    check_r(r)?;
    let mut coeffs = d.coeffs().to_vec();
    coeffs.push(0);
    let out = PicClass::new(r, &coeffs)?;
    debug_assert_eq!(out.degree(), d.degree());
    Ok(out)
}

/// Inverse of [`embed_blowdown`]; requires the `l_r` coefficient to vanish.
pub fn contract_last(d: &PicClass) -> Result<PicClass> {
    let r = d.r();
    let last = d.coeff(r);
    if last != 0 {
        return Err(Error::Contraction(d.to_string(), r, last));
    }
    check_r(r - 1)?;
    PicClass::new(r - 1, &d.coeffs()[..r])
}

/// `D` is nef iff `(D, E) >= 0` for every exceptional class `E`.
pub fn is_nef(d: &PicClass) -> bool {
    crate::enumeration::exceptional_slice(d.r())
        .iter()
        .all(|e| d.dot(e) >= 0)
}

/// Dimension of the fundamental representation `V(w_r)` of `G(R_r)`.
pub fn fundamental_weight_dimension(r: usize) -> Option<usize> {
    match r {
        4 => Some(10),
        5 => Some(16),
        6 => Some(27),
        7 => Some(56),
        8 => Some(248),
        _ => None,
    }
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(rhs, i64::checked_add)
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(rhs, i64::checked_sub)
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> Self {
        self * -1
    }
}

impl Mul<i64> for PicClass {
    type Output = PicClass;
    fn mul(mut self, k: i64) -> Self {
        for c in self.coeffs.iter_mut() {
            *c = c.checked_mul(k).expect("class arithmetic overflow");
        }
        self
    }
}

impl std::iter::Sum for PicClass {
    fn sum<I: Iterator<Item = PicClass>>(iter: I) -> Self {
        let mut iter = iter.peekable();
        let first = *iter.peek().expect("sum of an empty class list has no surface index");
        iter.fold(PicClass::zero(first.r()), |acc, c| acc + c)
    }
}

/// Canonical order: surface index, then anticanonical degree, then
/// coefficients lexicographically.
impl Ord for PicClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.r
            .cmp(&other.r)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }
}

impl PartialOrd for PicClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if !first {
                f.write_str(" ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "l{i}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

/// Serialized as the plain coefficient array `[m_0, ..., m_r]`.
impl Serialize for PicClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PicClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        if v.is_empty() {
            return Err(serde::de::Error::custom("empty class"));
        }
        PicClass::new(v.len() - 1, &v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(r: usize, i: usize) -> PicClass {
        PicClass::l(r, i)
    }

    #[test]
    fn basis_intersections() {
        assert_eq!(intersect(&l(5, 0), &l(5, 0)).unwrap(), 1);
        assert_eq!(intersect(&l(5, 3), &l(5, 3)).unwrap(), -1);
        assert_eq!(intersect(&l(5, 1), &l(5, 2)).unwrap(), 0);
        let k = PicClass::canonical(6);
        assert_eq!(intersect(&k, &k).unwrap(), 3);
    }

    #[test]
    fn canonical_square_is_nine_minus_r() {
        for r in MIN_R..=MAX_R {
            let k = PicClass::canonical(r);
            assert_eq!(k.self_intersection(), 9 - r as i64);
        }
    }

    #[test]
    fn mismatched_surfaces_are_rejected() {
        assert!(matches!(
            intersect(&l(4, 0), &l(5, 0)),
            Err(Error::DimensionMismatch { left: 4, right: 5 })
        ));
        assert_ne!(l(4, 0), l(5, 0));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&l(4, 1)), 1);
        assert_eq!(degree(&PicClass::anticanonical(8)), 1);
        assert_eq!(degree(&PicClass::zero(6)), 0);
        assert_eq!(degree(&l(6, 0)), 3);
    }

    #[test]
    fn simple_roots_r4() {
        let roots = simple_roots(4).unwrap();
        let expected = vec![
            l(4, 1) - l(4, 2),
            l(4, 2) - l(4, 3),
            l(4, 0) - l(4, 1) - l(4, 2) - l(4, 3),
            l(4, 3) - l(4, 4),
        ];
        assert_eq!(roots, expected);
        assert!(simple_roots(2).is_err());
        assert!(simple_roots(9).is_err());
    }

    #[test]
    fn simple_roots_are_k_orthogonal_minus_two() {
        for r in MIN_R..=MAX_R {
            let k = PicClass::canonical(r);
            for a in simple_roots(r).unwrap() {
                assert_eq!(a.self_intersection(), -2);
                assert_eq!(a.dot(&k), 0);
            }
        }
    }

    #[test]
    fn dynkin_adjacency() {
        // Chain a1 - a2 - a4 - a5 - a6 - a7 - a8 with a3 attached to a4
        // (1-based labels).
        let edges = [(1, 2), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)];
        let roots = simple_roots(8).unwrap();
        for i in 1..=8 {
            for j in 1..=8 {
                if i == j {
                    continue;
                }
                let expected = edges.contains(&(i.min(j), i.max(j))) as i64;
                assert_eq!(roots[i - 1].dot(&roots[j - 1]), expected, "a{i}.a{j}");
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let r = 4;
        assert_eq!(reflect(&l(r, 1), &(l(r, 1) - l(r, 2))).unwrap(), l(r, 2));
        assert!(matches!(reflect(&l(r, 1), &l(r, 0)), Err(Error::NotARoot(_, 1))));
    }

    #[test]
    fn blowdown_round_trip() {
        let d = l(3, 0);
        let up = embed_blowdown(&d).unwrap();
        assert_eq!(up.coeffs(), &[1, 0, 0, 0, 0]);
        assert_eq!(contract_last(&up).unwrap(), d);

        let line = l(5, 0) - l(5, 1) - l(5, 2);
        assert_eq!(contract_last(&line).unwrap(), l(4, 0) - l(4, 1) - l(4, 2));
        assert!(matches!(contract_last(&l(5, 5)), Err(Error::Contraction(_, 5, 1))));
        assert!(embed_blowdown(&l(8, 0)).is_err());
    }

    #[test]
    fn nested_simple_roots() {
        for r in 4..=MAX_R {
            let lower = simple_roots(r - 1).unwrap();
            let upper = simple_roots(r).unwrap();
            for (a, b) in lower.iter().zip(&upper) {
                assert_eq!(embed_blowdown(a).unwrap(), *b);
            }
        }
    }

    #[test]
    fn nef_examples() {
        for r in MIN_R..=MAX_R {
            assert!(is_nef(&PicClass::anticanonical(r)));
            assert!(!is_nef(&l(r, 1)));
            assert!(is_nef(&l(r, 0)));
        }
    }

    #[test]
    fn display_and_serde() {
        let c = PicClass::new(4, &[2, -1, -1, 0, -1]).unwrap();
        assert_eq!(c.to_string(), "2l0 - l1 - l2 - l4");
        assert_eq!(serde_json::to_string(&c).unwrap(), "[2,-1,-1,0,-1]");
        let back: PicClass = serde_json::from_str("[2,-1,-1,0,-1]").unwrap();
        assert_eq!(back, c);
        assert_eq!(PicClass::zero(3).to_string(), "0");
    }

    #[test]
    fn canonical_order_is_degree_first() {
        let r = 4;
        let a = l(r, 0); // degree 3
        let b = l(r, 1); // degree 1
        assert!(b < a);
        assert!(l(r, 4) < l(r, 1));
    }
}
