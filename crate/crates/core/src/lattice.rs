//! Integer matrices: Hermite and Smith normal forms, kernels, saturation and
//! lattice indices. All arithmetic is exact over `BigInt`.
//!
//! Lattices are spanned by the *columns* of a matrix. The column Hermite form
//! used throughout has its pivots strictly descending down-and-right, positive
//! pivots, zeros above each pivot, and the entries to the left of a pivot
//! reduced into `[0, pivot)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// A dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let mut m = IntMatrix::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// `col[dst] -= q * col[src]`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] -= t;
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] -= t;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Keeps the first `k` columns.
    fn truncate_cols(&self, k: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, k);
        for i in 0..self.rows {
            for j in 0..k {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn select_cols(&self, from: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols - from);
        for i in 0..self.rows {
            for j in from..self.cols {
                out[(i, j - from)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Column echelon reduction. Returns the reduced matrix, the unimodular
/// transform `V` with `m * V = reduced`, and the number of nonzero columns.
fn column_echelon(m: &IntMatrix, track: bool) -> (IntMatrix, Option<IntMatrix>, usize) {
    let mut a = m.clone();
    let mut v = track.then(|| IntMatrix::identity(m.cols));
    let mut k = 0;
    for i in 0..a.rows {
        if k == a.cols {
            break;
        }
        loop {
            let best = (k..a.cols)
                .filter(|&j| !a[(i, j)].is_zero())
                .min_by(|&x, &y| a[(i, x)].abs().cmp(&a[(i, y)].abs()));
            let Some(j) = best else { break };
            a.swap_cols(j, k);
            if let Some(v) = v.as_mut() {
                v.swap_cols(j, k);
            }
            let mut clean = true;
            for j in k + 1..a.cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                let q = a[(i, j)].div_floor(&a[(i, k)]);
                a.col_axpy(j, k, &q);
                if let Some(v) = v.as_mut() {
                    v.col_axpy(j, k, &q);
                }
                if !a[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(i, k)].is_zero() {
            continue;
        }
        if a[(i, k)].is_negative() {
            a.negate_col(k);
            if let Some(v) = v.as_mut() {
                v.negate_col(k);
            }
        }
        for l in 0..k {
            let q = a[(i, l)].div_floor(&a[(i, k)]);
            a.col_axpy(l, k, &q);
            if let Some(v) = v.as_mut() {
                v.col_axpy(l, k, &q);
            }
        }
        k += 1;
    }
    (a, v, k)
}

/// Column Hermite normal form of the lattice spanned by the columns of `m`,
/// with zero columns removed.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let (a, _, k) = column_echelon(m, false);
    a.truncate_cols(k)
}

/// Smith normal form `S = U * M * V` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn snf(m: &IntMatrix) -> Smith {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    for t in 0..m.rows.min(m.cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Smith { s, u, v };
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..s.rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..s.cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..s.rows)
                .find(|&i| (t + 1..s.cols).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    // row_t += row_i brings the offending entries into the pivot row
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { s, u, v }
}

/// Determinant of a square matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = val;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    column_echelon(m, false).2
}

/// A lattice in `Z^n` given by a canonical (column HNF) basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub ambient_rank: usize,
    pub basis: IntMatrix,
}

impl LatticeBasis {
    /// The lattice spanned by the columns of `generators`.
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        LatticeBasis {
            ambient_rank: generators.rows,
            basis: hnf(generators),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols == 0
    }

    /// Whether `v` is an integer combination of the basis columns.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank, "dimension mismatch");
        let mut r: Vec<BigInt> = v.to_vec();
        let b = &self.basis;
        let mut col = 0;
        for i in 0..b.rows {
            if col < b.cols && !b[(i, col)].is_zero() {
                let (q, rem) = r[i].div_rem(&b[(i, col)]);
                if !rem.is_zero() {
                    return false;
                }
                for k in i..b.rows {
                    let t = &b[(k, col)] * &q;
                    r[k] -= t;
                }
                col += 1;
            } else if !r[i].is_zero() {
                return false;
            }
        }
        r.iter().all(Zero::is_zero)
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.basis.columns().iter().all(|c| self.contains(c))
    }
}

/// Saturated basis of `{x in Z^cols : m x = 0}`, in column HNF.
pub fn integer_kernel(m: &IntMatrix) -> LatticeBasis {
    let (_, v, k) = column_echelon(m, true);
    let v = v.expect("transform tracked");
    LatticeBasis::spanned_by(&v.select_cols(k))
}

/// `(L tensor Q) intersect Z^n` for the lattice `L` spanned by the columns of `m`.
pub fn saturate(m: &IntMatrix) -> LatticeBasis {
    let complement = integer_kernel(&m.transpose());
    integer_kernel(&complement.basis.transpose())
}

/// `[Z^n : L]` for the column lattice `L` of `generators`, or `None` when `L`
/// has rank below `n`.
pub fn lattice_index(generators: &IntMatrix) -> Option<BigInt> {
    let n = generators.rows;
    let h = hnf(generators);
    if h.cols < n {
        return None;
    }
    // full-rank column HNF is lower triangular with the pivots on the diagonal
    Some((0..n).map(|i| h[(i, i)].clone()).product())
}

/// Index via the Smith invariants, an independent route to [`lattice_index`].
pub fn lattice_index_snf(generators: &IntMatrix) -> Option<BigInt> {
    let inv = snf(generators).invariants();
    (inv.len() == generators.rows).then(|| inv.iter().product())
}

/// Convenience for tests and reports: entries as `i64` when they fit.
pub fn to_i64_rows(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(ToPrimitive::to_i64).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf(&IntMatrix::identity(3)), IntMatrix::identity(3));
        assert_eq!(hnf(&mat(&[&[2], &[4]])), mat(&[&[2], &[4]]));
        let m = mat(&[&[2, 0, 1], &[0, 3, 1]]);
        assert_eq!(hnf(&m), IntMatrix::identity(2));
        // brute-force membership of e1, e2 in the original column span
        let l = LatticeBasis::spanned_by(&m);
        assert!(l.contains(&big(&[1, 0])) && l.contains(&big(&[0, 1])));
    }

    #[test]
    fn hnf_reduces_left_of_pivot() {
        let h = hnf(&mat(&[&[1, 0], &[5, 3]]));
        assert_eq!(h, mat(&[&[1, 0], &[2, 3]]));
        let h = hnf(&mat(&[&[-4], &[6]]));
        assert_eq!(h, mat(&[&[4], &[-6]]));
    }

    #[test]
    fn snf_examples() {
        let s = snf(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(s.s, IntMatrix::diagonal(&[1, 6]));
        assert_eq!(s.u.mul(&IntMatrix::diagonal(&[2, 3])).mul(&s.v), s.s);
        let z = snf(&IntMatrix::zeros(2, 3));
        assert!(z.s.is_zero());
        assert!(z.invariants().is_empty());
    }

    #[test]
    fn kernels() {
        let k = integer_kernel(&mat(&[&[2, 4]]));
        assert_eq!(k.rank(), 1);
        let v = k.basis.column(0);
        assert!(v == big(&[2, -1]) || v == big(&[-2, 1]));
        assert!(integer_kernel(&mat(&[&[2, 1], &[1, 1]])).is_empty());
        let k = integer_kernel(&mat(&[&[1, 1, 1]]));
        assert_eq!(k.rank(), 2);
        for c in k.basis.columns() {
            assert!(mat(&[&[1, 1, 1]]).mul_vec(&c).iter().all(Zero::is_zero));
        }
        assert!(k.contains(&big(&[1, -1, 0])) && k.contains(&big(&[0, 1, -1])));
    }

    #[test]
    fn indices_and_rank() {
        assert_eq!(lattice_index(&IntMatrix::identity(3)), Some(BigInt::one()));
        assert_eq!(
            lattice_index(&IntMatrix::diagonal(&[2, 3])),
            Some(BigInt::from(6))
        );
        assert_eq!(lattice_index(&mat(&[&[1, 2], &[2, 4]])), None);
        assert_eq!(
            lattice_index_snf(&IntMatrix::diagonal(&[2, 3])),
            Some(BigInt::from(6))
        );
        assert_eq!(rank(&IntMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&mat(&[&[2, 4, 6], &[3, 6, 9]])), 1);
        // lattice_index of an empty ambient space is 1
        assert_eq!(lattice_index(&IntMatrix::zeros(0, 0)), Some(BigInt::one()));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            det(&mat(&[&[2, 0, 0], &[0, 3, 0], &[1, 1, 0]])),
            BigInt::zero()
        );
        assert_eq!(det(&IntMatrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn saturation() {
        // 2 * (1, 1) spans a non-saturated lattice
        let s = saturate(&mat(&[&[2], &[2]]));
        assert_eq!(s.basis, mat(&[&[1], &[1]]));
        let full = saturate(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(full.basis, IntMatrix::identity(2));
    }
}
