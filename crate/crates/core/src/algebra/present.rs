//! Minimal presentations `k[x_1..x_n]/I` of a local algebra, `n = edim`.
//!
//! With `s` the Loewy length, `(x)^{s+1} ⊆ I`, so everything happens in
//! `k[x]/(x)^{s+2}`: the relations there are the kernel of evaluating
//! monomials of degree `≤ s+1`, and a minimal generating set of `I` is a
//! complement of `(x)I` in that kernel.

use crate::algebra::build::Presentation;
use crate::algebra::local::LocalAlgebra;
use crate::algebra::poly::{degree, LocalMonomials, Poly};
use crate::linalg::sparse::{to_sparse, SparseVec};
use crate::linalg::{kernel_basis, DenseMatrix, Field, SparseEchelon};

impl<F: Field> LocalAlgebra<F> {
    /// Names and elements used as presentation variables: the stored
    /// generators when they are minimal, else `x1..xn` for a pivot-canonical
    /// minimal generating set.
    pub fn presentation_generators(&self) -> (Vec<String>, Vec<Vec<F::Elem>>) {
        let n = self.edim();
        let gens = self.generators();
        if gens.len() == n && self.ideal_generated(gens).dim() + 1 == self.dim() {
            return (self.var_names().to_vec(), gens.to_vec());
        }
        let mg = self.minimal_generators();
        let names = (1..=mg.len()).map(|i| format!("x{i}")).collect();
        (names, mg)
    }

    /// A minimal presentation on [`presentation_generators`](Self::presentation_generators):
    /// every relation lies in `(x)^2` and none is redundant.
    pub fn minimal_presentation(&self) -> Presentation<F> {
        let f = self.field();
        let (names, gens) = self.presentation_generators();
        let n = gens.len();
        let bound = self.loewy_length() as u32 + 2;
        let monos = LocalMonomials::new(n, bound);
        // values of all monomials, built degree by degree
        let mut values: Vec<Vec<F::Elem>> = Vec::with_capacity(monos.len());
        for m in &monos.monomials {
            let v = match m.iter().position(|&e| e > 0) {
                None => self.one(),
                Some(i) => {
                    let mut prev = m.clone();
                    prev[i] -= 1;
                    let pi = monos.index_of(&prev).expect("lower degree");
                    self.mul(&values[pi], &gens[i])
                }
            };
            values.push(v);
        }
        let eval = DenseMatrix::from_columns(f, self.dim(), &values);
        let kernel: Vec<SparseVec<F::Elem>> = kernel_basis(&eval).iter().map(|v| to_sparse(f, v)).collect();
        let truncate_shift = |v: &SparseVec<F::Elem>, i: usize| -> SparseVec<F::Elem> {
            let mut out: SparseVec<F::Elem> = v
                .iter()
                .filter_map(|(j, c)| {
                    let mut m = monos.monomials[*j as usize].clone();
                    m[i] += 1;
                    monos.index_of(&m).map(|k| (k as u32, c.clone()))
                })
                .collect();
            out.sort_by_key(|e| e.0);
            out
        };
        let mut ech = SparseEchelon::new(f, monos.len());
        for v in &kernel {
            for i in 0..n {
                ech.insert(&truncate_shift(v, i));
            }
        }
        // prefer low-order relations; reduce each against (x)I for a clean form
        let mut order: Vec<&SparseVec<F::Elem>> = kernel.iter().collect();
        let low = |v: &SparseVec<F::Elem>| v.iter().map(|(j, _)| degree(&monos.monomials[*j as usize])).min();
        order.sort_by_key(|v| (low(v), v.last().map(|e| e.0)));
        let mut relations = Vec::new();
        for v in order {
            let r = ech.reduce(v);
            if r.is_empty() {
                continue;
            }
            ech.insert(&r);
            let mut p = Poly::zero(n);
            for (j, c) in &r {
                p.add_term(f, monos.monomials[*j as usize].clone(), c.clone());
            }
            relations.push(p);
        }
        Presentation::new(f, names, relations)
    }
}

#[cfg(test)]
mod tests {
    use crate::algebra::build::build_algebra;
    use crate::algebra::build::tests::{alg, running_example};

    #[test]
    fn running_example_round_trip() {
        let a = running_example();
        let p = a.minimal_presentation();
        assert_eq!(p.vars, vec!["x", "y"]);
        assert!(p.is_minimal_shape());
        assert_eq!(p.relations.len(), 2);
        let b = build_algebra(&p).unwrap();
        assert_eq!(b.hilbert_function(), a.hilbert_function());
        assert_eq!(b, a);
    }

    #[test]
    fn redundant_variable_is_dropped() {
        let a = alg(&["x", "y"], &["y - x^2", "x^4"]);
        let p = a.minimal_presentation();
        assert_eq!(p.vars.len(), 1);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(build_algebra(&p).unwrap().dim(), 4);
    }

    #[test]
    fn field_has_no_variables() {
        let k = alg(&["x"], &["x"]);
        let p = k.minimal_presentation();
        assert!(p.vars.is_empty());
        assert_eq!(build_algebra(&p).unwrap().dim(), 1);
    }
}
