//! Dense matrices over an exact field and Gaussian elimination.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (from the current pivot row downwards) with a nonzero entry is taken.
//! Every basis choice made downstream inherits this rule.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::field::Field;

#[derive(Clone, PartialEq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    pub reduced: DenseMatrix<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(DenseMatrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Rows given as small integers, reduced into the field.
    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<F::Elem> {
        self.row(r).to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.mul_add(&acc, a, b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let cur = out.get(i, j).clone();
                        out.set(i, j, f.mul_add(&cur, a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl<F: Field> fmt::Debug for DenseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over {}", self.rows, self.cols, self.field.descriptor())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| self.field.format(v)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form.
pub fn rref<F: Field>(m: &DenseMatrix<F>) -> Rref<F> {
    let mut r = m.clone();
    let f = m.field.clone();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..r.cols {
        if prow == r.rows {
            break;
        }
        let Some(sel) = (prow..r.rows).find(|&i| !f.is_zero(r.get(i, col))) else {
            continue;
        };
        r.swap_rows(prow, sel);
        let inv = f.inv(r.get(prow, col)).expect("nonzero pivot");
        for c in col..r.cols {
            let v = f.mul(r.get(prow, c), &inv);
            r.set(prow, c, v);
        }
        for i in 0..r.rows {
            if i == prow {
                continue;
            }
            let factor = r.get(i, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in col..r.cols {
                let pv = r.get(prow, c).clone();
                if f.is_zero(&pv) {
                    continue;
                }
                let v = f.sub(r.get(i, c), &f.mul(&factor, &pv));
                r.set(i, c, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    Rref {
        rank: pivots.len(),
        pivot_columns: pivots,
        reduced: r,
    }
}

/// Basis of `{v : M v = 0}`: one vector per non-pivot column `c`, with a 1 in
/// coordinate `c` and zeros in the other non-pivot coordinates.
pub fn kernel_basis<F: Field>(m: &DenseMatrix<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let red = rref(m);
    let is_pivot = {
        let mut v = vec![false; m.cols];
        for &p in &red.pivot_columns {
            v[p] = true;
        }
        v
    };
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &p) in red.pivot_columns.iter().enumerate() {
            v[p] = f.neg(red.reduced.get(i, free));
        }
        out.push(v);
    }
    out
}

/// Solves `M x = b`; free coordinates are set to zero.
pub fn solve<F: Field>(m: &DenseMatrix<F>, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let f = m.field();
    let mut aug = DenseMatrix::zeros(f, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let red = rref(&aug);
    if red.pivot_columns.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); m.cols];
    for (i, &p) in red.pivot_columns.iter().enumerate() {
        x[p] = red.reduced.get(i, m.cols).clone();
    }
    Ok(Some(x))
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert<F: Field>(m: &DenseMatrix<F>) -> Option<DenseMatrix<F>> {
    let n = m.rows;
    if m.cols != n {
        return None;
    }
    let f = m.field();
    let mut aug = DenseMatrix::zeros(f, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, f.one());
    }
    let red = rref(&aug);
    if red.rank < n || red.pivot_columns[n - 1] != n - 1 {
        return None;
    }
    let mut inv = DenseMatrix::zeros(f, n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, red.reduced.get(r, n + c).clone());
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{PrimeField, Rationals};

    #[test]
    fn inverse_round_trip() {
        let f = gf(7);
        let m = DenseMatrix::from_i64_rows(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = invert(&m).unwrap();
        assert_eq!(m.mul_mat(&inv).unwrap(), DenseMatrix::identity(&f, 2));
        let s = DenseMatrix::from_i64_rows(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(invert(&s).is_none());
    }

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = gf(7);
        let id = DenseMatrix::identity(&f, 2);
        let r = rref(&id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_columns, vec![0, 1]);
        assert_eq!(r.reduced, id);

        let z = DenseMatrix::zeros(&f, 3, 4);
        let r = rref(&z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_columns.is_empty());
        assert!(r.reduced.is_zero());
    }

    #[test]
    fn rref_rank_one_over_gf5() {
        // [[1,2],[2,4]]: second row is twice the first
        let m = DenseMatrix::from_i64_rows(&gf(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        let f = gf(3);
        assert!(kernel_basis(&DenseMatrix::identity(&f, 3)).is_empty());

        let m = DenseMatrix::from_i64_rows(&f, &[vec![1, 1]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![2, 1]]);
        // exhaustive oracle over GF(3)^2: the kernel has exactly 3 elements
        let mut count = 0;
        for a in 0..3u32 {
            for b in 0..3u32 {
                if m.mul_vec(&[a, b]).unwrap() == vec![0] {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 3usize.pow(k.len() as u32));

        let z = DenseMatrix::zeros(&f, 2, 3);
        let k = kernel_basis(&z);
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(2);
        let id = DenseMatrix::identity(&f, 2);
        assert_eq!(solve(&id, &[1, 0]).unwrap(), Some(vec![1, 0]));

        let m = DenseMatrix::from_i64_rows(&f, &[vec![1, 1]]).unwrap();
        assert_eq!(solve(&m, &[1]).unwrap(), Some(vec![1, 0]));

        let z = DenseMatrix::from_i64_rows(&f, &[vec![0]]).unwrap();
        assert_eq!(solve(&z, &[1]).unwrap(), None);

        assert!(solve(&m, &[1, 1]).is_err());
    }

    #[test]
    fn rationals_rref() {
        let q = Rationals;
        let m = DenseMatrix::from_i64_rows(&q, &[vec![2, 4, 6], vec![1, 3, 5]]).unwrap();
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|v| q.is_zero(v)));
    }
}
