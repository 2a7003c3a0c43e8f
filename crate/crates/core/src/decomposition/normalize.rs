//! Normalized generators `x_1..x_n` of `m` for a Gorenstein ring with
//! `m^2 = x_1 m`:
//!
//! 1. `m^2 = (x_1^2, x_1x_2, ..., x_1x_m)`
//! 2. `(x_1..x_m)(x_{m+1}..x_n) = 0`
//! 3. `(x_{m+1}..x_n)^2 = soc`
//!
//! where `m = dim m^2/m^3 < n = edim`.

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::subspace::add_scaled;
use crate::linalg::{solve, DenseMatrix, Field, Subspace};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorNormalForm<E> {
    pub generators: Vec<Vec<E>>,
    /// Number of generators in the first group (`m`).
    pub split: usize,
}

fn line<F: Field>(a: &LocalAlgebra<F>, x: &[F::Elem]) -> Subspace<F> {
    Subspace::from_vectors(a.field(), a.dim(), [&x.to_vec()])
}

/// Solves `target = Σ_i c_i · x1x_i` with coefficients `c_i` in the algebra.
fn algebra_combination<F: Field>(
    a: &LocalAlgebra<F>,
    products: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Option<Vec<Vec<F::Elem>>> {
    let d = a.dim();
    let mut cols = Vec::with_capacity(products.len() * d);
    for p in products {
        for k in 0..d {
            cols.push(a.mul_basis_vec(k, p));
        }
    }
    let m = DenseMatrix::from_columns(a.field(), d, &cols);
    let sol = solve(&m, target).expect("shape")?;
    Some(sol.chunks(d).map(|c| c.to_vec()).collect())
}

/// Properties (1)-(3) as exact subspace identities.
pub fn check_normal_form<F: Field>(a: &LocalAlgebra<F>, nf: &GeneratorNormalForm<F::Elem>) -> Result<()> {
    let g = &nf.generators;
    let m = nf.split;
    if g.len() != a.edim() || a.ideal_generated(g).dim() + 1 != a.dim() {
        return Err(Error::Verification("not a minimal generating set of m".into()));
    }
    let x1 = &g[0];
    let firsts: Vec<Vec<F::Elem>> = g[..m].iter().map(|x| a.mul(x1, x)).collect();
    if !a.ideal_generated(&firsts).same_as(&a.ideal_power(2)) {
        return Err(Error::Verification("m^2 != (x1^2, x1x2, ..., x1xm)".into()));
    }
    let left = a.ideal_generated(&g[..m]);
    let right = a.ideal_generated(&g[m..]);
    if !a.ideal_product(&left, &right).is_zero() {
        return Err(Error::Verification("(x1..xm)(x_m+1..xn) != 0".into()));
    }
    if !a.ideal_product(&right, &right).same_as(&a.socle()) {
        return Err(Error::Verification("(x_m+1..xn)^2 != soc".into()));
    }
    Ok(())
}

/// Adjusts a minimal generating set extending `x1` until (1)-(3) hold.
pub fn normalize_split_generators<F: Field>(
    a: &LocalAlgebra<F>,
    x1: &[F::Elem],
) -> Result<GeneratorNormalForm<F::Elem>> {
    let f = a.field();
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein {
            socle_dim: a.socle().dim(),
        });
    }
    if a.loewy_length() < 3 {
        return Err(Error::Precondition("lo >= 3 required".into()));
    }
    let mm = a.maximal_ideal();
    let m2 = a.ideal_power(2);
    let m3 = a.ideal_power(3);
    if !mm.contains(x1) || m2.contains(x1) {
        return Err(Error::Precondition("x1 must lie in m \\ m^2".into()));
    }
    if !a.ideal_product(&line(a, x1), &mm).same_as(&m2) {
        return Err(Error::Precondition("m^2 != x1 m".into()));
    }
    let n = a.edim();
    let m = a.hilbert_function()[2];
    if m >= n {
        return Err(Error::Precondition(format!("dim m^2/m^3 = {m} is not below edim = {n}")));
    }

    // (a) x2..xm with x1x_i spanning m^2/m^3, then complete to a minimal set
    let mins = a.minimal_generators();
    let mut gens = vec![x1.to_vec()];
    let mut prods = m3.sum(&line(a, &a.mul(x1, x1)));
    for g in &mins {
        if gens.len() == m {
            break;
        }
        let p = a.mul(x1, g);
        if !prods.contains(&p) {
            prods.insert(&p);
            gens.push(g.clone());
        }
    }
    if gens.len() != m {
        return Err(Error::Verification("x1 m does not span m^2/m^3".into()));
    }
    let mut span = m2.sum(&Subspace::from_vectors(f, a.dim(), &gens));
    for g in &mins {
        if span.insert(g) {
            gens.push(g.clone());
        }
    }
    debug_assert_eq!(gens.len(), n);

    // (b) x_j -= Σ α_ij x_i so that x1 x_j = 0 for j > m
    let firsts: Vec<Vec<F::Elem>> = gens[..m].iter().map(|x| a.mul(x1, x)).collect();
    for j in m..n {
        let target = a.mul(x1, &gens[j]);
        let alpha = algebra_combination(a, &firsts, &target)
            .ok_or_else(|| Error::Verification("x1 x_j outside (x1^2, ..., x1xm)".into()))?;
        let mut xj = gens[j].clone();
        for (i, al) in alpha.iter().enumerate() {
            let t = a.mul(al, &gens[i]);
            add_scaled(f, &mut xj, &f.neg(&f.one()), &t);
        }
        gens[j] = xj;
    }

    // (c) subtract x̂_j ∈ (0 : x1) ∩ m^2 with x_i x̂_j = x_i x_j for 2 ≤ i ≤ m
    if m >= 2 {
        let u = a.annihilator_of(x1).intersection(&m2);
        let d = a.dim();
        let rows = (m - 1) * d;
        let cols: Vec<Vec<F::Elem>> = u
            .basis()
            .iter()
            .map(|b| gens[1..m].iter().flat_map(|xi| a.mul(xi, b)).collect())
            .collect();
        let mat = DenseMatrix::from_columns(f, rows, &cols);
        for j in m..n {
            let rhs: Vec<F::Elem> = gens[1..m].iter().flat_map(|xi| a.mul(xi, &gens[j])).collect();
            let c = solve(&mat, &rhs)
                .expect("shape")
                .ok_or_else(|| Error::Verification("pairing into the socle is degenerate".into()))?;
            let hat = a.combine(&c, u.basis());
            gens[j] = a.sub(&gens[j], &hat);
        }
    }
    let nf = GeneratorNormalForm { generators: gens, split: m };
    check_normal_form(a, &nf)?;
    Ok(nf)
}
