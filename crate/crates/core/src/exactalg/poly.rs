//! Homogeneous polynomials in three variables with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use num_bigint::BigInt;

use super::rat::{denominator_lcm, Rat};

/// Exponent triple `(i, j, k)` of `x^i y^j z^k`.
///
/// Ordered graded-lexicographically with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d`, leading (graded-lex largest) first.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Monomial([i, j, d - i - j]));
        }
    }
    out
}

/// The points `(i : j : 1)` with `i, j >= 0` and `i + j <= d`, by increasing
/// `i + j`.
///
/// A form of degree at most `d` vanishing on all of them is zero: with
/// `z = 1` it becomes a polynomial of degree `<= d` in two variables, and
/// this principal lattice is unisolvent for those. Each grid is a prefix of
/// the grids of higher degree.
pub fn unisolvent_grid(d: u32) -> Vec<[i64; 2]> {
    let mut out = Vec::with_capacity(grid_len(d));
    for s in 0..=d as i64 {
        for i in 0..=s {
            out.push([i, s - i]);
        }
    }
    out
}

pub fn grid_len(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

/// A homogeneous polynomial of fixed degree. Zero coefficients are never
/// stored; the zero polynomial keeps its nominal degree.
#[derive(Clone, PartialEq, Eq)]
pub struct PlanePoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rat>,
}

impl PlanePoly {
    pub fn zero(degree: u32) -> Self {
        PlanePoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero(0);
        p.add_term(Monomial([0, 0, 0]), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The variable `x`, `y` or `z` for `var = 0, 1, 2`.
    pub fn var(var: usize) -> Self {
        let mut e = [0; 3];
        e[var] = 1;
        Self::monomial(Monomial(e), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(m.degree());
        p.add_term(m, c);
        p
    }

    /// Panics if a term has the wrong degree.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(degree);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Inverse of [`PlanePoly::coefficients`].
    pub fn from_coefficients(degree: u32, coeffs: &[Rat]) -> Self {
        let basis = monomial_basis(degree);
        assert_eq!(basis.len(), coeffs.len(), "coefficient vector length");
        Self::from_terms(degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.degree(), self.degree, "inhomogeneous term");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms, leading first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Dense coefficients in [`monomial_basis`] order.
    pub fn coefficients(&self) -> Vec<Rat> {
        monomial_basis(self.degree)
            .iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn normalized(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        PlanePoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "sum of polynomials of different degree");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = Monomial([a.0[0] + b.0[0], a.0[1] + b.0[1], a.0[2] + b.0[2]]);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(v.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// `(l, terms)` where `l > 0` is the least common denominator and
    /// `terms` are the integer coefficients of `l * self`.
    pub fn clear_denominators(&self) -> (BigInt, Vec<(Monomial, BigInt)>) {
        let l = denominator_lcm(self.terms.values());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, (c * &l).to_integer()))
            .collect();
        (l, terms)
    }

    /// `l` and the values of `l * self` on `grid`, with `l` as in
    /// [`PlanePoly::clear_denominators`].
    pub fn integer_grid_values(&self, grid: &[[i64; 2]]) -> (BigInt, Vec<BigInt>) {
        let (l, terms) = self.clear_denominators();
        let values = grid
            .iter()
            .map(|&[i, j]| {
                let (bi, bj) = (BigInt::from(i), BigInt::from(j));
                terms
                    .iter()
                    .map(|(m, c)| c * num_traits::pow(bi.clone(), m.0[0] as usize) * num_traits::pow(bj.clone(), m.0[1] as usize))
                    .sum()
            })
            .collect();
        (l, values)
    }

    /// Partial derivative with respect to variable `var` (0, 1, 2 for
    /// `x`, `y`, `z`). Degree drops by one; constants map to the zero
    /// polynomial of degree 0.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.0;
            d[var] -= 1;
            out.add_term(Monomial(d), c * Rat::from_integer(e.into()));
        }
        out
    }
}

impl Mul for &PlanePoly {
    type Output = PlanePoly;
    fn mul(self, rhs: &PlanePoly) -> PlanePoly {
        self.multiply(rhs)
    }
}

impl fmt::Display for PlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanePoly[{}]({self})", self.degree)
    }
}
