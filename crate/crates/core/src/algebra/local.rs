//! Finite-dimensional commutative local algebras given by a multiplication
//! table on a basis adapted to the m-adic filtration.

use crate::error::{Error, Result};
use crate::linalg::sparse::{to_sparse, SparseVec};
use crate::linalg::subspace::{add_scaled, unit};
use crate::linalg::{invert, DenseMatrix, Field, FieldDescriptor, Subspace};

/// A local k-algebra with basis `b_0 = 1, b_1, ..., b_{D-1}`.
///
/// The basis is sorted by m-adic order and adapted: for every `i`, `m^i` is
/// spanned by the basis elements of order at least `i`. All constructors
/// enforce this, re-basing if needed.
#[derive(Clone, Debug)]
pub struct LocalAlgebra<F: Field> {
    field: F,
    var_names: Vec<String>,
    generators: Vec<Vec<F::Elem>>,
    labels: Vec<String>,
    orders: Vec<usize>,
    table: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> PartialEq for LocalAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.orders == other.orders && self.table == other.table
    }
}

impl<F: Field> LocalAlgebra<F> {
    /// Builds an algebra from products of basis elements (`table[i][j]` is the
    /// dense expansion of `b_i b_j`) with `b_0` the identity and
    /// `span(b_1..)` the maximal ideal. Verifies the axioms and re-bases to an
    /// adapted basis when necessary.
    pub fn from_table(
        field: &F,
        var_names: Vec<String>,
        generators: Vec<Vec<F::Elem>>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<F::Elem>>>,
    ) -> Result<Self> {
        let d = table.len();
        if d == 0 || labels.len() != d {
            return Err(Error::InvalidTable("empty table or label count mismatch".into()));
        }
        let sparse: Vec<SparseVec<F::Elem>> = table
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), d);
                row.iter().map(|v| {
                    assert_eq!(v.len(), d);
                    to_sparse(field, v)
                })
            })
            .collect();
        let raw = LocalAlgebra {
            field: field.clone(),
            var_names,
            generators,
            labels,
            orders: vec![0; d],
            table: sparse,
        };
        raw.check_axioms()?;
        raw.adapt()
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        let f = &self.field;
        for i in 0..d {
            let e = unit(f, d, i);
            if self.mul(&self.one(), &e) != e {
                return Err(Error::InvalidTable(format!("b_0 is not an identity on b_{i}")));
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if self.table[i * d + j] != self.table[j * d + i] {
                    return Err(Error::InvalidTable(format!("b_{i} b_{j} != b_{j} b_{i}")));
                }
            }
        }
        for i in 1..d {
            for j in 1..d {
                if self.table[i * d + j].first().is_some_and(|(k, _)| *k == 0) {
                    return Err(Error::InvalidTable(format!(
                        "b_{i} b_{j} leaves the maximal ideal"
                    )));
                }
            }
        }
        for i in 1..d {
            for j in i..d {
                let bij = self.dense(&self.table[i * d + j]);
                for k in j..d {
                    let left = self.mul_basis_vec(k, &bij);
                    let bjk = self.dense(&self.table[j * d + k]);
                    let right = self.mul_basis_vec(i, &bjk);
                    // commutativity leaves one more bracketing to compare
                    let bik = self.dense(&self.table[i * d + k]);
                    let third = self.mul_basis_vec(j, &bik);
                    if left != right || left != third {
                        return Err(Error::InvalidTable(format!(
                            "(b_{i} b_{j}) b_{k} != b_{i} (b_{j} b_{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Powers of the maximal ideal in the current coordinates, `[m, m^2, ...]`
    /// up to the last nonzero one.
    fn raw_powers(&self) -> Result<Vec<Subspace<F>>> {
        let d = self.dim();
        let f = &self.field;
        let m = Subspace::from_vectors(f, d, &(1..d).map(|i| unit(f, d, i)).collect::<Vec<_>>());
        let mut powers = Vec::new();
        let mut cur = m;
        while !cur.is_zero() {
            if powers.len() > d {
                return Err(Error::InvalidTable("maximal ideal is not nilpotent".into()));
            }
            let mut next = Subspace::zero(f, d);
            for v in cur.basis() {
                for i in 1..d {
                    next.insert(&self.mul_basis_vec(i, v));
                }
            }
            if next.dim() == cur.dim() {
                return Err(Error::InvalidTable("maximal ideal is not nilpotent".into()));
            }
            powers.push(cur);
            cur = next;
        }
        Ok(powers)
    }

    fn adapt(mut self) -> Result<Self> {
        let d = self.dim();
        let f = self.field.clone();
        let powers = self.raw_powers()?;
        let mut new_basis = vec![unit(&f, d, 0)];
        let mut orders = vec![0];
        let zero = Subspace::zero(&f, d);
        for (i, p) in powers.iter().enumerate() {
            let next = powers.get(i + 1).unwrap_or(&zero);
            for v in p.complement_of(next) {
                new_basis.push(v);
                orders.push(i + 1);
            }
        }
        let identity = (0..d).all(|i| new_basis[i] == unit(&f, d, i));
        if identity {
            self.orders = orders;
            return Ok(self);
        }
        let p = DenseMatrix::from_columns(&f, d, &new_basis);
        let pinv = invert(&p).ok_or_else(|| Error::InvalidTable("adapted basis is singular".into()))?;
        let to_new = |v: &[F::Elem]| pinv.mul_vec(v).expect("dimension");
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&new_basis[i], &new_basis[j]);
                table.push(to_sparse(&f, &to_new(&prod)));
            }
        }
        let labels = new_basis
            .iter()
            .map(|v| format_combination(&f, v, &self.labels))
            .collect();
        let generators = self.generators.iter().map(|g| to_new(g)).collect();
        Ok(LocalAlgebra {
            field: f,
            var_names: self.var_names,
            generators,
            labels,
            orders,
            table,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn descriptor(&self) -> FieldDescriptor {
        self.field.descriptor()
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }
    /// Images of the named generators; they generate m but need not be minimal.
    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.generators
    }
    /// m-adic order of each basis element.
    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// Replaces generator names and images (they must generate m).
    pub fn with_generators(mut self, names: Vec<String>, generators: Vec<Vec<F::Elem>>) -> Self {
        assert_eq!(names.len(), generators.len());
        self.var_names = names;
        self.generators = generators;
        self
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }
    pub fn one(&self) -> Vec<F::Elem> {
        unit(&self.field, self.dim(), 0)
    }
    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        unit(&self.field, self.dim(), i)
    }

    /// Sparse expansion of `b_i b_j`.
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i * self.dim() + j]
    }

    fn dense(&self, v: &SparseVec<F::Elem>) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (i, x) in v {
            out[*i as usize] = x.clone();
        }
        out
    }

    /// `b_i · v`
    pub fn mul_basis_vec(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, c) in v.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (k, x) in self.mul_basis(i, j) {
                out[*k as usize] = f.mul_add(&out[*k as usize], c, x);
            }
        }
        out
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, z) in self.mul_basis(i, j) {
                    out[*k as usize] = f.mul_add(&out[*k as usize], &xy, z);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[F::Elem], e: u32) -> Vec<F::Elem> {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    /// `Σ c_i v_i`
    pub fn combine(&self, coeffs: &[F::Elem], vs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
        let mut out = self.zero();
        for (c, v) in coeffs.iter().zip(vs) {
            add_scaled(&self.field, &mut out, c, v);
        }
        out
    }

    pub fn is_zero_elem(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// m-adic order of a nonzero element.
    pub fn order_of(&self, a: &[F::Elem]) -> Option<usize> {
        a.iter()
            .position(|x| !self.field.is_zero(x))
            .map(|i| self.orders[i])
    }

    pub fn is_unit(&self, a: &[F::Elem]) -> bool {
        !self.field.is_zero(&a[0])
    }

    /// Loewy length: the largest `s` with `m^s != 0` (0 for the field).
    pub fn loewy_length(&self) -> usize {
        *self.orders.last().expect("nonempty")
    }

    /// `h_i = dim m^i / m^{i+1}` for `0 <= i <= loewy_length`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut h = vec![0; self.loewy_length() + 1];
        for &o in &self.orders {
            h[o] += 1;
        }
        h
    }

    /// Embedding dimension `dim m/m^2`.
    pub fn edim(&self) -> usize {
        self.hilbert_function().get(1).copied().unwrap_or(0)
    }

    /// Index of the first basis element of order `>= i` (`dim` if none).
    pub fn order_start(&self, i: usize) -> usize {
        self.orders.partition_point(|&o| o < i)
    }

    pub fn format_element(&self, a: &[F::Elem]) -> String {
        format_combination(&self.field, a, &self.labels)
    }

    /// Verifies commutativity, associativity, identity and locality.
    pub fn verify(&self) -> Result<()> {
        self.check_axioms()?;
        let powers = self.raw_powers()?;
        for (i, p) in powers.iter().enumerate() {
            let start = self.order_start(i + 1);
            let expected: Vec<usize> = (start..self.dim()).collect();
            if p.pivots() != expected.as_slice() || p.dim() != self.dim() - start {
                return Err(Error::InvalidTable(format!("basis not adapted to m^{}", i + 1)));
            }
        }
        Ok(())
    }

    /// Dense multiplication table, `table[i][j]` = expansion of `b_i b_j`.
    pub fn dense_table(&self) -> Vec<Vec<Vec<F::Elem>>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.dense(self.mul_basis(i, j))).collect())
            .collect()
    }

    /// Canonical text of the table, used for hashing.
    pub fn canonical_string(&self) -> String {
        let f = &self.field;
        let mut s = format!("field={};dim={};orders={:?};", f.descriptor(), self.dim(), self.orders);
        for (k, v) in self.table.iter().enumerate() {
            if v.is_empty() {
                continue;
            }
            s.push_str(&format!("{k}:"));
            for (i, x) in v {
                s.push_str(&format!("{i}={},", f.format(x)));
            }
            s.push(';');
        }
        s
    }
}

/// `2*x + y`-style text for a vector in a labelled basis.
pub fn format_combination<F: Field>(field: &F, v: &[F::Elem], labels: &[String]) -> String {
    let mut s = String::new();
    for (c, l) in v.iter().zip(labels) {
        if field.is_zero(c) {
            continue;
        }
        let minus = field.prefers_minus(c);
        let mag = if minus { field.neg(c) } else { c.clone() };
        if s.is_empty() {
            if minus {
                s.push('-');
            }
        } else {
            s.push_str(if minus { " - " } else { " + " });
        }
        if l == "1" {
            s.push_str(&field.format(&mag));
        } else if field.is_one(&mag) {
            s.push_str(l);
        } else {
            s.push_str(&format!("{}*{}", field.format(&mag), l));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    /// k[x]/(x^3) written on the non-adapted basis {1, x + x^2, x^2}.
    #[test]
    fn rebases_to_adapted_basis() {
        let f = PrimeField::new(7).unwrap();
        // u = x + x^2, w = x^2: u^2 = x^2 = w, uw = 0, w^2 = 0
        let e = |i: usize| unit(&f, 3, i);
        let z = vec![0u32; 3];
        let table = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), z.clone()],
            vec![e(2), z.clone(), z.clone()],
        ];
        let a = LocalAlgebra::from_table(
            &f,
            vec!["u".into()],
            vec![e(1)],
            vec!["1".into(), "u".into(), "w".into()],
            table,
        )
        .unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 1, 1]);
        a.verify().unwrap();
    }

    #[test]
    fn rejects_non_associative_table() {
        let f = PrimeField::new(5).unwrap();
        let e = |i: usize| unit(&f, 3, i);
        let z = vec![0u32; 3];
        // x^2 = y, xy = 0, y^2 = 0 is fine; make xy = y to break nilpotency
        let table = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(2)],
            vec![e(2), e(2), z.clone()],
        ];
        assert!(LocalAlgebra::from_table(&f, vec![], vec![], vec!["1".into(), "x".into(), "y".into()], table).is_err());
    }
}
