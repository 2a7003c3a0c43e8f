//! Finitely generated modules given by presentations `A^s --P--> A^r --> M`.

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::sparse::{to_sparse, SparseVec};
use crate::linalg::{DenseMatrix, Field, Subspace};

/// `M = A^rank / (relations)`; each relation is a column of `rank` algebra
/// elements.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentedModule<F: Field> {
    rank: usize,
    relations: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> PresentedModule<F> {
    pub fn new(a: &LocalAlgebra<F>, rank: usize, relations: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        for r in &relations {
            if r.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: r.len(),
                });
            }
            if let Some(e) = r.iter().find(|e| e.len() != a.dim()) {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: e.len(),
                });
            }
        }
        Ok(PresentedModule { rank, relations })
    }

    pub fn free(rank: usize) -> Self {
        PresentedModule {
            rank,
            relations: Vec::new(),
        }
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(a: &LocalAlgebra<F>) -> Self {
        Self::cyclic(a, &a.minimal_generators())
    }

    /// `A/(gens)`.
    pub fn cyclic(a: &LocalAlgebra<F>, gens: &[Vec<F::Elem>]) -> Self {
        let _ = a;
        PresentedModule {
            rank: 1,
            relations: gens.iter().map(|g| vec![g.clone()]).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self, a: &LocalAlgebra<F>) -> Self {
        let rank = self.rank + other.rank;
        let mut relations = Vec::with_capacity(self.relations.len() + other.relations.len());
        for r in &self.relations {
            let mut col = r.clone();
            col.resize(rank, a.zero());
            relations.push(col);
        }
        for r in &other.relations {
            let mut col = vec![a.zero(); self.rank];
            col.extend(r.iter().cloned());
            relations.push(col);
        }
        PresentedModule { rank, relations }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.relations
    }

    /// Column `j` as a sparse vector of `A^rank` (index `b·D + k`).
    pub(crate) fn relation_vector(&self, a: &LocalAlgebra<F>, j: usize) -> SparseVec<F::Elem> {
        let flat: Vec<F::Elem> = self.relations[j].iter().flatten().cloned().collect();
        to_sparse(a.field(), &flat)
    }

    /// The submodule generated by the relations, as a subspace of `A^rank`.
    pub fn relation_subspace(&self, a: &LocalAlgebra<F>) -> Subspace<F> {
        let d = a.dim();
        let mut s = Subspace::zero(a.field(), self.rank * d);
        for r in &self.relations {
            for k in 0..d {
                let v: Vec<F::Elem> = r.iter().flat_map(|e| a.mul_basis_vec(k, e)).collect();
                s.insert(&v);
            }
        }
        s
    }

    /// The underlying vector space with its `A`-action.
    pub fn vector_space(&self, a: &LocalAlgebra<F>) -> ModuleSpace<F> {
        let f = a.field();
        let d = a.dim();
        let rel = self.relation_subspace(a);
        let free = rel.non_pivot_coordinates();
        let n = free.len();
        let coords = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = rel.reduce(v);
            free.iter().map(|&i| r[i].clone()).collect()
        };
        let mut action = Vec::with_capacity(d);
        for k in 0..d {
            let mut cols = Vec::with_capacity(n);
            for &i in &free {
                let (b, j) = (i / d, i % d);
                let mut v = vec![f.zero(); self.rank * d];
                for (l, x) in a.mul_basis(k, j) {
                    v[b * d + *l as usize] = x.clone();
                }
                cols.push(coords(&v));
            }
            action.push(DenseMatrix::from_columns(f, n, &cols));
        }
        ModuleSpace { field: f.clone(), action }
    }
}

/// A module as a vector space with one matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct ModuleSpace<F: Field> {
    field: F,
    action: Vec<DenseMatrix<F>>,
}

impl<F: Field> ModuleSpace<F> {
    pub fn dim(&self) -> usize {
        self.action.first().map_or(0, |m| m.rows())
    }

    /// Matrix of multiplication by the `k`-th algebra basis element.
    pub fn action(&self, k: usize) -> &DenseMatrix<F> {
        &self.action[k]
    }

    /// `a · v` for an algebra element `a`.
    pub fn act(&self, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (k, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let w = self.action[k].mul_vec(v).expect("shape");
            for (o, x) in out.iter_mut().zip(&w) {
                *o = f.mul_add(o, c, x);
            }
        }
        out
    }
}
