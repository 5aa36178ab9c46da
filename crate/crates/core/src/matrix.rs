//! Dense integer matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::int::Int;

/// A dense row-major matrix over the integers.
///
/// Rows are stored as separate vectors so that the row swaps and row
/// operations performed by the normal-form algorithms stay cheap.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![Int::ZERO; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::ONE;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> IntMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Convenience constructor from small literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::small(v)).collect())
                .collect(),
        )
    }

    /// The matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Int>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.data[i][i] = v.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Int] {
        &mut self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_vecs(&self) -> &[Vec<Int>] {
        &self.data
    }

    pub fn into_row_vecs(self) -> Vec<Vec<Int>> {
        self.data
    }

    pub fn push_row(&mut self, row: Vec<Int>) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.push(row);
        self.rows += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Int::is_zero))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.data[j][i] = v.clone();
                }
            }
        }
        t
    }

    /// Matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let target = &mut out.data[i];
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (t, b) in target.iter_mut().zip(&other.data[k]) {
                    if !b.is_zero() {
                        t.add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in matrix-vector product");
        self.data
            .iter()
            .map(|row| {
                let mut acc = Int::ZERO;
                for (a, b) in row.iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `y * self` for a row vector `y`.
    pub fn vec_mul(&self, y: &[Int]) -> Vec<Int> {
        assert_eq!(self.rows, y.len(), "dimension mismatch in vector-matrix product");
        let mut out = vec![Int::ZERO; self.cols];
        for (coef, row) in y.iter().zip(&self.data) {
            if coef.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                if !v.is_zero() {
                    o.add_mul_assign(coef, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        IntMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        IntMatrix { data, ..*self }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x * k).collect())
            .collect();
        IntMatrix { data, ..*self }
    }

    /// `self - I`; panics if not square.
    pub fn minus_identity(&self) -> IntMatrix {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i][i] -= &Int::ONE;
        }
        m
    }

    pub fn pow(&self, exp: u32) -> IntMatrix {
        assert!(self.is_square());
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_rows(&self, rows: impl IntoIterator<Item = usize>) -> IntMatrix {
        let data: Vec<Vec<Int>> = rows.into_iter().map(|i| self.data[i].clone()).collect();
        IntMatrix {
            rows: data.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            if !v.is_zero() {
                *v = -&*v;
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for row in &mut self.data {
            if !row[j].is_zero() {
                row[j] = -&row[j];
            }
        }
    }

    /// `row[target] -= q * row[source]`.
    pub fn sub_row_multiple(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() || target == source {
            assert!(target != source || q.is_zero(), "row operation on itself");
            return;
        }
        let (t, s) = two_rows(&mut self.data, target, source);
        for (x, y) in t.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                x.sub_mul_assign(q, y);
            }
        }
    }

    /// `col[target] -= q * col[source]`.
    pub fn sub_col_multiple(&mut self, target: usize, source: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        assert_ne!(target, source, "column operation on itself");
        for row in &mut self.data {
            if !row[source].is_zero() {
                let s = row[source].clone();
                row[target].sub_mul_assign(q, &s);
            }
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::ONE;
        }
        let mut a = self.data.clone();
        let mut sign = 1i32;
        let mut prev = Int::ONE;
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Int::ZERO,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.div_exact(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }
}

/// Mutable access to two distinct rows.
fn two_rows(data: &mut [Vec<Int>], a: usize, b: usize) -> (&mut Vec<Int>, &Vec<Int>) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = data.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = data.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i][j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i][j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
