//! Koszul complex on a minimal generating set of `m`, its homology and the
//! induced multiplication.

use serde::Serialize;

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, solve, DenseMatrix, Field, Subspace};

/// Homology of `K(x_1..x_n; A)`. `K_p` has basis `e_J ⊗ b_k` with `J` running
/// over the `p`-subsets in lexicographic order, index `J·D + k`.
#[derive(Clone, Debug)]
pub struct KoszulHomology<F: Field> {
    algebra: LocalAlgebra<F>,
    n: usize,
    subsets: Vec<Vec<u32>>,
    /// `index[mask]` = position of the subset within its degree
    index: Vec<usize>,
    pub ranks: Vec<usize>,
    /// Cycle representatives of a basis of `H_p`.
    pub representatives: Vec<Vec<Vec<F::Elem>>>,
    boundaries: Vec<Subspace<F>>,
}

fn subsets_of_size(n: usize, p: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == p).collect();
    // lexicographic in the sorted element lists
    out.sort_by_key(|m| (0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
    out
}

/// Sign of `e_J ∧ e_L` relative to `e_{J ∪ L}`.
fn wedge_sign(j: u32, l: u32) -> bool {
    let mut inversions = 0;
    for t in 0..32 {
        if l >> t & 1 == 1 {
            inversions += (j >> (t + 1)).count_ones();
        }
    }
    inversions % 2 == 1
}

impl<F: Field> KoszulHomology<F> {
    pub fn edim(&self) -> usize {
        self.n
    }

    fn block(&self, p: usize) -> usize {
        self.subsets[p].len() * self.algebra.dim()
    }

    /// Product of two chains of degrees `p` and `q`.
    pub fn chain_product(&self, p: usize, u: &[F::Elem], q: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let a = &self.algebra;
        let f = a.field();
        let d = a.dim();
        let mut out = vec![f.zero(); self.block(p + q)];
        for (s, &jm) in self.subsets[p].iter().enumerate() {
            let x = &u[s * d..(s + 1) * d];
            if x.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            for (t, &lm) in self.subsets[q].iter().enumerate() {
                if jm & lm != 0 {
                    continue;
                }
                let y = &v[t * d..(t + 1) * d];
                if y.iter().all(|c| f.is_zero(c)) {
                    continue;
                }
                let prod = a.mul(x, y);
                let pos = self.index[(jm | lm) as usize];
                let neg = wedge_sign(jm, lm);
                for (k, c) in prod.iter().enumerate() {
                    let o = &mut out[pos * d + k];
                    *o = if neg { f.sub(o, c) } else { f.add(o, c) };
                }
            }
        }
        out
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, p: usize, z: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let f = self.algebra.field();
        let reps = &self.representatives[p];
        let mut cols: Vec<Vec<F::Elem>> = reps.clone();
        cols.extend(self.boundaries[p].basis().iter().cloned());
        let m = DenseMatrix::from_columns(f, z.len(), &cols);
        let sol = solve(&m, z)?.ok_or_else(|| Error::Verification(format!("not a cycle of degree {p}")))?;
        Ok(sol[..reps.len()].to_vec())
    }

    /// `[z_i^p] · [z_j^q]` in `H_{p+q}` coordinates.
    pub fn class_product(&self, p: usize, i: usize, q: usize, j: usize) -> Result<Vec<F::Elem>> {
        if p + q > self.n {
            return Ok(Vec::new());
        }
        let prod = self.chain_product(p, &self.representatives[p][i], q, &self.representatives[q][j]);
        self.class_of(p + q, &prod)
    }

    /// Full table of `H_p × H_q → H_{p+q}`.
    pub fn multiplication(&self, p: usize, q: usize) -> Result<Vec<Vec<Vec<F::Elem>>>> {
        (0..self.ranks[p])
            .map(|i| (0..self.ranks[q]).map(|j| self.class_product(p, i, q, j)).collect())
            .collect()
    }
}

pub fn koszul_homology<F: Field>(a: &LocalAlgebra<F>) -> KoszulHomology<F> {
    let f = a.field();
    let d = a.dim();
    let xs = a.minimal_generators();
    let n = xs.len();
    let subsets: Vec<Vec<u32>> = (0..=n).map(|p| subsets_of_size(n, p)).collect();
    let mut index = vec![0usize; 1 << n];
    for s in &subsets {
        for (i, &m) in s.iter().enumerate() {
            index[m as usize] = i;
        }
    }
    // ∂_p : K_p → K_{p-1}
    let boundary = |p: usize| -> DenseMatrix<F> {
        let rows = subsets[p - 1].len() * d;
        let mut cols = Vec::with_capacity(subsets[p].len() * d);
        for &jm in &subsets[p] {
            for k in 0..d {
                let mut col = vec![f.zero(); rows];
                let mut sign = false;
                for t in 0..n {
                    if jm >> t & 1 == 0 {
                        continue;
                    }
                    let pos = index[(jm & !(1 << t)) as usize];
                    let v = a.mul_basis_vec(k, &xs[t]);
                    for (l, c) in v.iter().enumerate() {
                        let o = &mut col[pos * d + l];
                        *o = if sign { f.sub(o, c) } else { f.add(o, c) };
                    }
                    sign = !sign;
                }
                cols.push(col);
            }
        }
        DenseMatrix::from_columns(f, rows, &cols)
    };
    let maps: Vec<DenseMatrix<F>> = (1..=n).map(boundary).collect();
    let mut ranks = Vec::with_capacity(n + 1);
    let mut representatives = Vec::with_capacity(n + 1);
    let mut boundaries = Vec::with_capacity(n + 1);
    for p in 0..=n {
        let size = subsets[p].len() * d;
        let cycles = if p == 0 {
            (0..size).map(|i| crate::linalg::subspace::unit(f, size, i)).collect()
        } else {
            kernel_basis(&maps[p - 1])
        };
        let bnd = if p == n {
            Subspace::zero(f, size)
        } else {
            let m = &maps[p];
            Subspace::from_vectors(f, size, &(0..m.cols()).map(|c| m.column(c)).collect::<Vec<_>>())
        };
        let mut span = bnd.clone();
        let mut reps = Vec::new();
        for z in cycles {
            if span.insert(&z) {
                reps.push(z);
            }
        }
        ranks.push(reps.len());
        representatives.push(reps);
        boundaries.push(bnd);
    }
    KoszulHomology {
        algebra: a.clone(),
        n,
        subsets,
        index,
        ranks,
        representatives,
        boundaries,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingWitness {
    pub h1: usize,
    pub pairing_rank: usize,
    /// Index of a degree-`n-1` class pairing nontrivially with the first
    /// degree-one class.
    pub partner: Option<usize>,
}

/// Non-degeneracy of `H_1 × H_{n-1} → H_n` for Gorenstein `A`.
pub fn poincare_pairing_check<F: Field>(a: &LocalAlgebra<F>) -> Result<(bool, PairingWitness)> {
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein {
            socle_dim: a.socle().dim(),
        });
    }
    let n = a.edim();
    if n < 2 {
        return Err(Error::Precondition(format!("edim = {n} < 2")));
    }
    let kh = koszul_homology(a);
    if kh.ranks[n] != 1 {
        return Err(Error::Verification(format!("dim H_n = {} for a Gorenstein ring", kh.ranks[n])));
    }
    let f = a.field();
    let table = kh.multiplication(1, n - 1)?;
    let rows: Vec<Vec<F::Elem>> = table.iter().map(|row| row.iter().map(|c| c[0].clone()).collect()).collect();
    let h1 = kh.ranks[1];
    let rank = if h1 == 0 {
        0
    } else {
        DenseMatrix::from_rows(f, &rows)?.rank()
    };
    let partner = rows.first().and_then(|r| r.iter().position(|c| !f.is_zero(c)));
    Ok((
        rank == h1,
        PairingWitness {
            h1,
            pairing_rank: rank,
            partner,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::tests::{alg, running_example};

    #[test]
    fn koszul_ranks() {
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(koszul_homology(&g).ranks, vec![1, 3, 2]);
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!(koszul_homology(&c).ranks, vec![1, 2, 1]);
        let k = alg(&["x"], &["x"]);
        assert_eq!(koszul_homology(&k).ranks, vec![1]);
    }

    #[test]
    fn wedge_signs() {
        // e_1 ∧ e_0 = -e_0 ∧ e_1
        assert!(wedge_sign(0b10, 0b01));
        assert!(!wedge_sign(0b01, 0b10));
        assert!(wedge_sign(0b101, 0b010));
    }

    #[test]
    fn pairing_is_perfect_on_gorenstein_rings() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let (ok, w) = poincare_pairing_check(&c).unwrap();
        assert!(ok);
        assert_eq!((w.h1, w.pairing_rank), (2, 2));
        let (ok, _) = poincare_pairing_check(&running_example()).unwrap();
        assert!(ok);
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(matches!(poincare_pairing_check(&g), Err(Error::NotGorenstein { .. })));
    }

    #[test]
    fn products_are_graded_commutative() {
        let a = alg(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let kh = koszul_homology(&a);
        assert_eq!(kh.ranks, vec![1, 3, 3, 1]);
        for i in 0..3 {
            for j in 0..3 {
                let uv = kh.class_product(1, i, 1, j).unwrap();
                let vu = kh.class_product(1, j, 1, i).unwrap();
                let f = a.field();
                assert!(uv.iter().zip(&vu).all(|(p, q)| f.add(p, q) == f.zero()));
            }
        }
    }
}
