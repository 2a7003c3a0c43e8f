//! Minimal free resolutions, Ext and Koszul homology over a local algebra.
//!
//! Elements of a free module `A^β` are vectors of length `β·D` indexed
//! `b·D + k` (generator `b`, algebra basis element `k`).

mod ext;
mod koszul;
mod module;

pub use ext::{ar_diagnostic, ext_dims, ArVerdict};
pub use koszul::{koszul_homology, poincare_pairing_check, KoszulHomology, PairingWitness};
pub use module::{ModuleSpace, PresentedModule};

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::sparse::{Accumulator, SparseVec};
use crate::linalg::{Field, SparseEchelon, Subspace};

/// A map `A^source → A^target`, stored column by column.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeMap<E> {
    pub source: usize,
    pub target: usize,
    pub columns: Vec<SparseVec<E>>,
}

impl<E: Clone> FreeMap<E> {
    /// Entry `(row, col)` as a dense algebra element of dimension `d`.
    pub fn entry<F: Field<Elem = E>>(&self, a: &LocalAlgebra<F>, row: usize, col: usize) -> Vec<E> {
        let d = a.dim();
        let mut out = a.zero();
        for (i, x) in &self.columns[col] {
            let i = *i as usize;
            if i / d == row {
                out[i % d] = x.clone();
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ResolutionOptions {
    /// Keep only the last differential.
    pub betti_only: bool,
    /// Abort when a single elimination would hold more nonzeros than this.
    pub max_nonzeros: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            betti_only: false,
            max_nonzeros: 400_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionData<E> {
    pub betti: Vec<usize>,
    /// Which generators of the presentation survive in `F_0`.
    pub augmentation: Vec<usize>,
    /// `d_1, d_2, ...`; empty in Betti-only mode except for the last one.
    pub differentials: Vec<FreeMap<E>>,
}

/// `b_k · v` for `v ∈ A^β`.
fn act_sparse<F: Field>(a: &LocalAlgebra<F>, acc: &mut Accumulator<F>, k: usize, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let d = a.dim();
    for (i, c) in v {
        let i = *i as usize;
        let (b, j) = (i / d, i % d);
        for (l, x) in a.mul_basis(k, j) {
            acc.add_mul((b * d + *l as usize) as u32, c, x);
        }
    }
    acc.take()
}

/// Kernel of `F = A^n → A^target / U` followed by a minimal generating set.
///
/// `image(b)` is the image of the `b`-th generator. Columns of the underlying
/// k-linear map are processed from the highest index down, so each kernel
/// vector has a distinct lowest index (its lead). A kernel vector is a
/// minimal generator iff its lead is not a lead of `m·Z`; since `b_k z` has a
/// strictly larger lead than `z`, `m·Z` can be built from the generators found
/// at smaller leads.
struct Syzygies<E> {
    generators: Vec<SparseVec<E>>,
    kernel_dim: usize,
    /// Rank of the map, not counting `U`.
    rank: usize,
}

fn syzygies<F: Field>(
    a: &LocalAlgebra<F>,
    n: usize,
    target: usize,
    images: &[SparseVec<F::Elem>],
    preload: &[SparseVec<F::Elem>],
    max_nonzeros: usize,
) -> Result<Syzygies<F::Elem>> {
    let f = a.field();
    let d = a.dim();
    let cols = n * d;
    let mut ech = SparseEchelon::with_tracking(f, target * d, cols + preload.len());
    for (t, v) in preload.iter().enumerate() {
        ech.insert_tracked(v, (cols + t) as u32);
    }
    let base_rank = ech.rank();
    let mut acc = Accumulator::new(f, target * d);
    let mut kernel: Vec<Option<SparseVec<F::Elem>>> = vec![None; cols];
    let mut stored = 0usize;
    for c in (0..cols).rev() {
        let (b, j) = (c / d, c % d);
        let img = act_sparse(a, &mut acc, j, &images[b]);
        if let Some(mut rel) = ech.insert_tracked(&img, c as u32) {
            rel.retain(|(i, _)| (*i as usize) < cols);
            stored += rel.len();
            kernel[c] = Some(rel);
        }
        if c % 4096 == 0 {
            let held = stored + ech.rows().iter().map(|r| r.len()).sum::<usize>();
            if held > max_nonzeros {
                return Err(Error::ResourceLimit(format!(
                    "syzygy computation over A^{n} exceeds {max_nonzeros} stored entries"
                )));
            }
        }
    }
    let rank = ech.rank() - base_rank;
    drop(ech);
    let kernel_dim = kernel.iter().filter(|k| k.is_some()).count();
    let mut mz = SparseEchelon::new(f, cols);
    let mut facc = Accumulator::new(f, cols);
    let mut generators = Vec::new();
    for c in 0..cols {
        let Some(z) = kernel[c].take() else { continue };
        if mz.is_pivot(c) {
            continue;
        }
        for k in 1..d {
            let p = act_sparse(a, &mut facc, k, &z);
            if !p.is_empty() {
                mz.insert(&p);
            }
        }
        generators.push(z);
    }
    if mz.rank() + generators.len() != kernel_dim {
        return Err(Error::Verification(format!(
            "m·Z has dimension {} but {} generators were selected from a kernel of dimension {kernel_dim}",
            mz.rank(),
            generators.len()
        )));
    }
    Ok(Syzygies {
        generators,
        kernel_dim,
        rank,
    })
}

/// Minimal free resolution of `M` through homological degree `n`.
pub fn minimal_resolution<F: Field>(
    a: &LocalAlgebra<F>,
    m: &PresentedModule<F>,
    n: usize,
) -> Result<ResolutionData<F::Elem>> {
    minimal_resolution_with(a, m, n, ResolutionOptions::default())
}

pub fn minimal_resolution_with<F: Field>(
    a: &LocalAlgebra<F>,
    m: &PresentedModule<F>,
    n: usize,
    opts: ResolutionOptions,
) -> Result<ResolutionData<F::Elem>> {
    let f = a.field();
    let d = a.dim();
    let r = m.rank();
    // generators of M: unit vectors independent modulo (relations + m A^r)
    let constant_parts: Vec<Vec<F::Elem>> = m
        .relations()
        .iter()
        .map(|col| col.iter().map(|e| e[0].clone()).collect())
        .collect();
    let mut span = Subspace::from_vectors(f, r, &constant_parts);
    let mut augmentation = Vec::new();
    for b in 0..r {
        if span.insert(&crate::linalg::subspace::unit(f, r, b)) {
            augmentation.push(b);
        }
    }
    let beta0 = augmentation.len();
    let mut betti = vec![beta0];
    let mut differentials = Vec::new();
    if n == 0 || beta0 == 0 {
        betti.resize(n + 1, 0);
        return Ok(ResolutionData {
            betti,
            augmentation,
            differentials,
        });
    }
    // F_0 → A^r / (relations)
    let images: Vec<SparseVec<F::Elem>> = augmentation
        .iter()
        .map(|&b| vec![((b * d) as u32, f.one())])
        .collect();
    let mut preload = Vec::new();
    let mut pacc = Accumulator::new(f, r * d);
    for j in 0..m.relations().len() {
        let v = m.relation_vector(a, j);
        for k in 0..d {
            let p = act_sparse(a, &mut pacc, k, &v);
            if !p.is_empty() {
                preload.push(p);
            }
        }
    }
    let mut syz = syzygies(a, beta0, r, &images, &preload, opts.max_nonzeros)?;
    let mut prev_kernel = syz.kernel_dim;
    for i in 1..=n {
        let map = FreeMap {
            source: syz.generators.len(),
            target: betti[i - 1],
            columns: std::mem::take(&mut syz.generators),
        };
        betti.push(map.source);
        if i == n || map.source == 0 {
            if opts.betti_only {
                differentials.clear();
            }
            differentials.push(map);
            break;
        }
        syz = syzygies(a, map.source, map.target, &map.columns, &[], opts.max_nonzeros)?;
        if syz.rank != prev_kernel {
            return Err(Error::Verification(format!(
                "image of d_{i} has dimension {} but the kernel below has dimension {prev_kernel}",
                syz.rank
            )));
        }
        prev_kernel = syz.kernel_dim;
        if opts.betti_only {
            differentials.clear();
        }
        differentials.push(map);
    }
    betti.resize(n + 1, 0);
    Ok(ResolutionData {
        betti,
        augmentation,
        differentials,
    })
}

pub fn betti_sequence<F: Field>(a: &LocalAlgebra<F>, m: &PresentedModule<F>, n: usize) -> Result<Vec<usize>> {
    let opts = ResolutionOptions {
        betti_only: true,
        ..Default::default()
    };
    Ok(minimal_resolution_with(a, m, n, opts)?.betti)
}

/// Betti numbers of the residue field.
pub fn residue_betti<F: Field>(a: &LocalAlgebra<F>, n: usize) -> Result<Vec<usize>> {
    betti_sequence(a, &PresentedModule::residue_field(a), n)
}

impl<E: Clone + PartialEq> ResolutionData<E> {
    /// `d_i ∘ d_{i+1} = 0` and every entry lies in `m`.
    pub fn verify<F: Field<Elem = E>>(&self, a: &LocalAlgebra<F>) -> Result<()> {
        let f = a.field();
        let d = a.dim();
        let mut acc = Accumulator::new(f, 1);
        for (i, map) in self.differentials.iter().enumerate() {
            for col in &map.columns {
                if col.iter().any(|(k, _)| *k as usize % d == 0) {
                    return Err(Error::Verification(format!("d_{} has a unit entry", i + 1)));
                }
            }
            let Some(next) = self.differentials.get(i + 1) else { continue };
            acc.grow(map.target * d);
            for col in &next.columns {
                // Σ_b col_b · d_i(e_b)
                for (idx, c) in col {
                    let (b, j) = (*idx as usize / d, *idx as usize % d);
                    let p = act_sparse(a, &mut Accumulator::new(f, map.target * d), j, &map.columns[b]);
                    for (t, x) in &p {
                        acc.add_mul(*t, c, x);
                    }
                }
                if !acc.take().is_empty() {
                    return Err(Error::Verification(format!("d_{} ∘ d_{} != 0", i + 1, i + 2)));
                }
            }
        }
        Ok(())
    }
}
