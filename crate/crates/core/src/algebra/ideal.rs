//! Ideal calculus on a local algebra. Ideals are k-subspaces in RREF.

use serde::{Deserialize, Serialize};

use crate::algebra::local::{format_combination, LocalAlgebra};
use crate::error::{Error, Result};
use crate::linalg::subspace::unit;
use crate::linalg::{kernel_basis, solve, DenseMatrix, Field, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StretchClass {
    Stretched,
    AlmostStretched,
    Neither,
}

impl std::fmt::Display for StretchClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StretchClass::Stretched => "stretched",
            StretchClass::AlmostStretched => "almost_stretched",
            StretchClass::Neither => "neither",
        })
    }
}

impl<F: Field> LocalAlgebra<F> {
    /// `m^i`; `m^0` is the whole algebra.
    pub fn ideal_power(&self, i: usize) -> Subspace<F> {
        let d = self.dim();
        let start = self.order_start(i);
        let vs: Vec<Vec<F::Elem>> = (start..d).map(|k| unit(self.field(), d, k)).collect();
        Subspace::from_vectors(self.field(), d, &vs)
    }

    pub fn maximal_ideal(&self) -> Subspace<F> {
        self.ideal_power(1)
    }

    pub fn zero_ideal(&self) -> Subspace<F> {
        Subspace::zero(self.field(), self.dim())
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut s = self.zero_ideal();
        for g in gens {
            for i in 0..self.dim() {
                s.insert(&self.mul_basis_vec(i, g));
            }
        }
        s
    }

    /// `I J`
    pub fn ideal_product(&self, i: &Subspace<F>, j: &Subspace<F>) -> Subspace<F> {
        let mut s = self.zero_ideal();
        for u in i.basis() {
            for v in j.basis() {
                s.insert(&self.mul(u, v));
            }
        }
        s
    }

    /// `m J`
    pub fn m_times(&self, j: &Subspace<F>) -> Subspace<F> {
        let mut s = self.zero_ideal();
        for v in j.basis() {
            for i in 1..self.dim() {
                s.insert(&self.mul_basis_vec(i, v));
            }
        }
        s
    }

    /// Whether the subspace is closed under multiplication by the algebra.
    pub fn is_ideal(&self, v: &Subspace<F>) -> bool {
        v.basis()
            .iter()
            .all(|x| (1..self.dim()).all(|i| v.contains(&self.mul_basis_vec(i, x))))
    }

    /// `(0 : J) = {a : aJ = 0}`.
    pub fn annihilator(&self, j: &Subspace<F>) -> Subspace<F> {
        let d = self.dim();
        let f = self.field();
        let rows = j.dim() * d;
        let cols: Vec<Vec<F::Elem>> = (0..d)
            .map(|k| {
                let mut c = Vec::with_capacity(rows);
                for v in j.basis() {
                    c.extend(self.mul_basis_vec(k, v));
                }
                c
            })
            .collect();
        let m = DenseMatrix::from_columns(f, rows, &cols);
        Subspace::from_vectors(f, d, &kernel_basis(&m))
    }

    /// `(0 : x)`
    pub fn annihilator_of(&self, x: &[F::Elem]) -> Subspace<F> {
        self.annihilator(&self.ideal_generated(&[x.to_vec()]))
    }

    /// `soc(A) = (0 : m)`. For the field itself this is the unit ideal.
    pub fn socle(&self) -> Subspace<F> {
        self.annihilator(&self.maximal_ideal())
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().dim() == 1
    }

    /// Pivot-canonical generator of a one-dimensional socle.
    pub fn socle_generator(&self) -> Result<Vec<F::Elem>> {
        let s = self.socle();
        if s.dim() != 1 {
            return Err(Error::NotGorenstein { socle_dim: s.dim() });
        }
        Ok(s.basis()[0].clone())
    }

    /// Elements whose images form a basis of `J/mJ`, lifted from the RREF rows
    /// of `J` whose pivots are not pivots of `mJ`.
    pub fn min_gens(&self, j: &Subspace<F>) -> Vec<Vec<F::Elem>> {
        j.complement_of(&self.m_times(j))
    }

    /// Minimal number of generators.
    pub fn mu(&self, j: &Subspace<F>) -> usize {
        j.dim() - self.m_times(j).dim()
    }

    pub fn classify_stretch(&self) -> StretchClass {
        match self.mu(&self.ideal_power(2)) {
            0 | 1 => StretchClass::Stretched,
            2 => StretchClass::AlmostStretched,
            _ => StretchClass::Neither,
        }
    }

    /// Minimal generators of m, as elements.
    pub fn minimal_generators(&self) -> Vec<Vec<F::Elem>> {
        self.min_gens(&self.maximal_ideal())
    }

    /// `A/J` on the complement spanned by the non-pivot basis elements of `J`.
    pub fn quotient(&self, j: &Subspace<F>) -> Result<LocalAlgebra<F>> {
        if j.pivots().first() == Some(&0) {
            return Err(Error::Precondition("quotient by the unit ideal".into()));
        }
        if !self.is_ideal(j) {
            return Err(Error::Precondition("quotient by a subspace that is not an ideal".into()));
        }
        let f = self.field();
        let keep = j.non_pivot_coordinates();
        let restrict = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = j.reduce(v);
            keep.iter().map(|&k| r[k].clone()).collect()
        };
        let table = keep
            .iter()
            .map(|&a| {
                keep.iter()
                    .map(|&b| restrict(&self.mul(&self.basis_element(a), &self.basis_element(b))))
                    .collect()
            })
            .collect();
        let labels = keep.iter().map(|&k| self.labels()[k].clone()).collect();
        let gens = self.generators().iter().map(|g| restrict(g)).collect();
        LocalAlgebra::from_table(f, self.var_names().to_vec(), gens, labels, table)
    }

    /// The local algebra `k·1 ⊕ V` for a multiplicatively closed `V ⊆ m`.
    /// Its generators are the order-one basis elements, named by their
    /// expressions in this algebra's basis.
    pub fn unital_subalgebra(&self, v: &Subspace<F>) -> Result<LocalAlgebra<F>> {
        Ok(self.unital_subalgebra_embedded(v)?.0)
    }

    /// Like [`unital_subalgebra`](Self::unital_subalgebra), also returning the
    /// image in this algebra of each basis element of the subalgebra.
    pub fn unital_subalgebra_embedded(&self, v: &Subspace<F>) -> Result<(LocalAlgebra<F>, Vec<Vec<F::Elem>>)> {
        if v.pivots().first() == Some(&0) {
            return Err(Error::Precondition("subspace is not contained in m".into()));
        }
        let f = self.field();
        let d = self.dim();
        for a in 0..v.dim() {
            for b in a..v.dim() {
                if !v.contains(&self.mul(&v.basis()[a], &v.basis()[b])) {
                    return Err(Error::NotClosed { left: a, right: b });
                }
            }
        }
        // basis of V adapted to V ⊇ V^2 ⊇ ..., so the table needs no re-basing
        let mut powers = vec![v.clone()];
        loop {
            let last = powers.last().expect("nonempty");
            if last.is_zero() {
                break;
            }
            let mut next = Subspace::zero(f, d);
            for x in last.basis() {
                for y in v.basis() {
                    next.insert(&self.mul(x, y));
                }
            }
            powers.push(next);
        }
        let mut embedding = vec![self.one()];
        for w in powers.windows(2) {
            embedding.extend(w[0].complement_of(&w[1]));
        }
        let n = embedding.len();
        let columns = DenseMatrix::from_columns(f, d, &embedding[1..]);
        let coords = |x: &[F::Elem]| -> Vec<F::Elem> {
            let sol = solve(&columns, x).expect("shape").expect("closed under products");
            let mut out = vec![f.zero()];
            out.extend(sol);
            out
        };
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for a in 0..n {
            table[0][a] = unit(f, n, a);
            table[a][0] = unit(f, n, a);
        }
        for a in 1..n {
            for b in a..n {
                let p = coords(&self.mul(&embedding[a], &embedding[b]));
                table[a][b] = p.clone();
                table[b][a] = p;
            }
        }
        let labels = embedding.iter().map(|x| format_combination(f, x, self.labels())).collect();
        let sub = LocalAlgebra::from_table(f, vec![], vec![], labels, table)?;
        debug_assert!(sub.orders().windows(2).all(|w| w[0] <= w[1]));
        let start = sub.order_start(1);
        let end = sub.order_start(2);
        let names = (start..end).map(|i| sub.labels()[i].clone()).collect();
        let gens = (start..end).map(|i| sub.basis_element(i)).collect();
        Ok((sub.with_generators(names, gens), embedding))
    }
}
