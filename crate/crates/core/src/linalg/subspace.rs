//! Subspaces of k^n kept in reduced row echelon form.

use crate::linalg::field::Field;

/// A subspace of `k^ambient`, stored as RREF rows sorted by pivot column.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            s.insert(&unit(field, ambient, i));
        }
        s
    }

    pub fn from_vectors<'a, I>(field: &F, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a Vec<F::Elem>>,
    {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    /// RREF basis rows.
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot rows.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "ambient dimension");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row).skip(p) {
                if !f.is_zero(r) {
                    *o = f.sub(o, &f.mul(&c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut().skip(p) {
            if !f.is_zero(x) {
                *x = f.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (o, x) in row.iter_mut().zip(&r).skip(p) {
                if !f.is_zero(x) {
                    *o = f.sub(o, &f.mul(&c, x));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.pivots == other.pivots && self.rows == other.rows
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        s
    }

    /// Intersection via the kernel of `[U | -V]`.
    pub fn intersection(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.ambient);
        if self.is_zero() || other.is_zero() {
            return out;
        }
        // project each row of `other` modulo self, then kernel relations
        // among those projections give vectors of other lying in self
        let projected: Vec<Vec<F::Elem>> = other.rows.iter().map(|r| self.reduce(r)).collect();
        let m = crate::linalg::dense::DenseMatrix::from_columns(f, self.ambient, &projected);
        for k in crate::linalg::dense::kernel_basis(&m) {
            let mut v = vec![f.zero(); self.ambient];
            for (c, r) in k.iter().zip(&other.rows) {
                if f.is_zero(c) {
                    continue;
                }
                for (o, x) in v.iter_mut().zip(r) {
                    *o = f.mul_add(o, c, x);
                }
            }
            out.insert(&v);
        }
        out
    }

    /// Rows of `self` whose pivot is not a pivot of `sub`; when `sub ⊆ self`
    /// these span a complement of `sub` in `self`.
    pub fn complement_of(&self, sub: &Self) -> Vec<Vec<F::Elem>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| sub.pivots.binary_search(p).is_err())
            .map(|(r, _)| r.clone())
            .collect()
    }

    /// Standard unit vectors at non-pivot coordinates: a complement of `self`
    /// in the ambient space.
    pub fn non_pivot_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| self.pivots.binary_search(i).is_err())
            .collect()
    }
}

pub fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn is_zero_vec<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

/// `a + c * b`
pub fn add_scaled<F: Field>(field: &F, a: &mut [F::Elem], c: &F::Elem, b: &[F::Elem]) {
    if field.is_zero(c) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !field.is_zero(y) {
            *x = field.mul_add(x, c, y);
        }
    }
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, v: &[F::Elem]) -> Vec<F::Elem> {
    v.iter().map(|x| field.mul(c, x)).collect()
}

pub fn sub_vec<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn add_vec<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::PrimeField;

    #[test]
    fn insert_keeps_rref() {
        let f = PrimeField::new(7).unwrap();
        let mut s = Subspace::zero(&f, 3);
        assert!(s.insert(&[0, 2, 4]));
        assert!(s.insert(&[1, 1, 0]));
        assert!(!s.insert(&[1, 2, 2]));
        assert_eq!(s.pivots(), &[0, 1]);
        assert_eq!(s.basis()[1], vec![0, 1, 2]);
        assert_eq!(s.basis()[0], vec![1, 0, 5]);
    }

    #[test]
    fn intersection_and_complement() {
        let f = PrimeField::new(5).unwrap();
        let u = Subspace::from_vectors(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let v = Subspace::from_vectors(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let w = u.intersection(&v);
        assert_eq!(w.dim(), 1);
        assert!(w.contains(&[0, 3, 0]));
        let c = u.complement_of(&w);
        assert_eq!(c, vec![vec![1, 0, 0]]);
        assert_eq!(u.sum(&v).dim(), 3);
        assert!(w.is_subspace_of(&u));
    }
}
