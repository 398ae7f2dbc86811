//! Dense matrices over the rationals.
//!
//! Elimination is done fraction-free: each row is scaled to integers and
//! reduced with Bareiss' algorithm, so every intermediate entry is a minor of
//! the input and divisions are exact. Rational arithmetic only enters in the
//! final back-substitution to reduced row echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{denominator_lcm, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        QMatrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Integer echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
    /// Per-row scale applied to clear denominators (in the original row order).
    scales: Vec<BigInt>,
}

fn bareiss(m: &QMatrix) -> Echelon {
    let mut scales = Vec::with_capacity(m.rows);
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            let ints = row.iter().map(|v| (v * &l).to_integer()).collect();
            scales.push(l);
            ints
        })
        .collect();
    let mut ech = bareiss_int(rows, m.cols);
    ech.scales = scales;
    ech
}

fn bareiss_int(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = rows.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon {
        rows,
        pivots,
        swaps,
        scales: Vec::new(),
    }
}

/// Rank of an integer matrix given by rows of equal length `ncols`.
pub fn rank_int(rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    bareiss_int(rows, ncols).pivots.len()
}

pub fn rank(m: &QMatrix) -> usize {
    bareiss(m).pivots.len()
}

/// Reduced row echelon form (nonzero rows only) and the pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let ech = bareiss(m);
    let mut rows: Vec<Vec<Rat>> = ech
        .rows
        .into_iter()
        .map(|row| row.into_iter().map(Rat::from_integer).collect())
        .collect();
    for k in (0..rows.len()).rev() {
        let pc = ech.pivots[k];
        let inv = rows[k][pc].recip();
        for v in rows[k].iter_mut() {
            *v *= &inv;
        }
        let (above, rest) = rows.split_at_mut(k);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for (v, p) in row.iter_mut().zip(pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
    }
    (QMatrix::from_rows(m.cols, rows), ech.pivots)
}

/// Basis of the right kernel, itself returned in reduced row echelon form
/// (so the output is a canonical function of the kernel).
pub fn nullspace(m: &QMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Vec::new();
    }
    let basis: Vec<Vec<Rat>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); m.cols];
            v[f] = Rat::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(k, f)].clone();
            }
            v
        })
        .collect();
    let (canonical, _) = rref(&QMatrix::from_rows(m.cols, basis));
    canonical.row_vecs()
}

/// Exact determinant of a square matrix.
pub fn determinant(m: &QMatrix) -> Rat {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    let ech = bareiss(m);
    if ech.pivots.len() < n {
        return Rat::zero();
    }
    // The last Bareiss pivot is the determinant of the scaled matrix.
    let mut det = Rat::from_integer(ech.rows[n - 1][n - 1].clone());
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    let scale: BigInt = ech.scales.iter().product();
    det / Rat::from_integer(scale)
}

/// Whether all entries of a vector vanish.
pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Whether `u` and `v` are nonzero scalar multiples of each other.
pub fn proportional(u: &[Rat], v: &[Rat]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(i) = u.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if v[i].is_zero() {
        return false;
    }
    let lambda = &v[i] / &u[i];
    u.iter().zip(v).all(|(a, b)| &(a * &lambda) == b)
}

/// Largest absolute numerator or denominator, a crude size measure.
pub fn max_height(v: &[Rat]) -> BigInt {
    v.iter()
        .flat_map(|x| [x.numer().abs(), x.denom().clone()])
        .max()
        .unwrap_or_default()
}
