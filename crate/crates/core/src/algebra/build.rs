//! Algebras from presentations `k[x]/I` with `I` m-primary, by truncation.
//!
//! The image of `I` in `k[x]/(x)^N` is spanned by the products `u·f_j` with
//! `deg u < N`. Columns are monomials in the local order (ascending degree),
//! so each pivot is the lowest-degree term of a relation and the surviving
//! standard monomials form a basis adapted to the m-adic filtration. Once
//! `dim k[x]/(I + (x)^N) = dim k[x]/(I + (x)^{N+1})` we have
//! `(x)^N ⊆ I + (x)^{N+1}`, hence `(x)^N ⊆ I` by Nakayama.

use crate::algebra::local::LocalAlgebra;
use crate::algebra::poly::{degree, format_monomial, mono_mul, LocalMonomials, Poly};
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{Field, SparseEchelon};

/// Default bound on the truncation degree.
pub const DEFAULT_TRUNCATION_CAP: u32 = 64;

/// Generators and relations of `k[x_1..x_n]/I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub relations: Vec<Poly<F>>,
}

impl<F: Field> Presentation<F> {
    pub fn new(field: &F, vars: Vec<String>, relations: Vec<Poly<F>>) -> Self {
        Presentation {
            field: field.clone(),
            vars,
            relations,
        }
    }

    /// Whether every relation lies in `(x)^2`.
    pub fn is_minimal_shape(&self) -> bool {
        self.relations.iter().all(|r| r.low_degree().is_none_or(|d| d >= 2))
    }
}

struct Truncation<F: Field> {
    monos: LocalMonomials,
    echelon: SparseEchelon<F>,
}

fn truncate<F: Field>(p: &Presentation<F>, bound: u32) -> Truncation<F> {
    let f = &p.field;
    let n = p.vars.len();
    let monos = LocalMonomials::new(n, bound);
    let mut echelon = SparseEchelon::new(f, monos.len());
    for rel in &p.relations {
        let Some(low) = rel.low_degree() else { continue };
        if low >= bound {
            continue;
        }
        for u in monos.monomials.iter().filter(|u| degree(u) + low < bound) {
            let mut row: SparseVec<F::Elem> = rel
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let um = mono_mul(u, m);
                    monos.index_of(&um).map(|i| (i as u32, c.clone()))
                })
                .collect();
            row.sort_by_key(|e| e.0);
            echelon.insert(&row);
        }
    }
    Truncation { monos, echelon }
}

/// Builds `k[x]/I` with the default truncation cap.
pub fn build_algebra<F: Field>(p: &Presentation<F>) -> Result<LocalAlgebra<F>> {
    build_algebra_with_cap(p, DEFAULT_TRUNCATION_CAP)
}

pub fn build_algebra_with_cap<F: Field>(p: &Presentation<F>, cap: u32) -> Result<LocalAlgebra<F>> {
    let f = &p.field;
    for rel in &p.relations {
        if rel.nvars != p.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: p.vars.len(),
                found: rel.nvars,
            });
        }
    }
    let mut prev: Option<usize> = None;
    let mut bound = 1;
    let mut tr = loop {
        if bound > cap {
            return Err(Error::NotMPrimary { cap: cap as usize });
        }
        let tr = truncate(p, bound);
        if tr.echelon.is_pivot(0) {
            return Err(Error::UnitIdeal);
        }
        let dim = tr.monos.len() - tr.echelon.rank();
        if prev == Some(dim) {
            break tr;
        }
        prev = Some(dim);
        bound += 1;
    };
    let standard: Vec<usize> = (0..tr.monos.len()).filter(|&i| !tr.echelon.is_pivot(i)).collect();
    let mut position = vec![usize::MAX; tr.monos.len()];
    for (k, &i) in standard.iter().enumerate() {
        position[i] = k;
    }
    let d = standard.len();
    let normal_form = |tr: &mut Truncation<F>, m: &[u32]| -> Vec<F::Elem> {
        let mut out = vec![f.zero(); d];
        if let Some(i) = tr.monos.index_of(m) {
            for (j, c) in tr.echelon.reduce(&[(i as u32, f.one())]) {
                out[position[j as usize]] = c;
            }
        }
        out
    };
    let std_monos: Vec<Vec<u32>> = standard.iter().map(|&i| tr.monos.monomials[i].clone()).collect();
    let mut table = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in a..d {
            let prod = normal_form(&mut tr, &mono_mul(&std_monos[a], &std_monos[b]));
            table[b][a] = prod.clone();
            table[a][b] = prod;
        }
    }
    let n = p.vars.len();
    let generators = (0..n)
        .map(|i| {
            let mut m = vec![0; n];
            m[i] = 1;
            normal_form(&mut tr, &m)
        })
        .collect();
    let labels = std_monos.iter().map(|m| format_monomial(m, &p.vars)).collect();
    LocalAlgebra::from_table(f, p.vars.clone(), generators, labels, table)
}
