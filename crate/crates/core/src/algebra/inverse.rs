//! Gorenstein algebras `k[x]/Ann(F)` from a dual socle polynomial `F`.
//!
//! `x_i` acts on `F` as `∂/∂X_i`. The map `g ↦ g∘F` identifies `k[x]/Ann(F)`
//! with the space of derivatives of `F`, so the algebra is computed there
//! directly: a monomial `u` is standard when `∂^u F` is independent of the
//! derivatives by monomials that come later in the local order.

use crate::algebra::local::LocalAlgebra;
use crate::algebra::poly::{format_monomial, mono_mul, LocalMonomials, Poly};
use crate::error::{Error, Result};
use crate::linalg::sparse::to_sparse;
use crate::linalg::{Field, SparseEchelon, Subspace};

/// Builds `k[x]/Ann(F)`. `vars` names the algebra variables; `f` is written
/// in the dual variables (same count, same order).
pub fn from_inverse_system<F: Field>(field: &F, vars: &[String], f: &Poly<F>) -> Result<LocalAlgebra<F>> {
    if f.nvars != vars.len() {
        return Err(Error::DimensionMismatch {
            expected: vars.len(),
            found: f.nvars,
        });
    }
    let d = f
        .degree()
        .ok_or_else(|| Error::InverseSystem("dual polynomial is zero".into()))?;
    let p = field.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::InverseSystem(format!(
            "characteristic {p} must exceed the degree {d} of the dual polynomial"
        )));
    }
    let n = vars.len();
    let monos = LocalMonomials::new(n, d + 1);
    let coords = |g: &Poly<F>| -> Vec<F::Elem> {
        let mut v = vec![field.zero(); monos.len()];
        for (m, c) in &g.terms {
            v[monos.index_of(m).expect("degree bound")] = c.clone();
        }
        v
    };
    let mut span = Subspace::zero(field, monos.len());
    let mut standard = Vec::new();
    for (i, u) in monos.monomials.iter().enumerate().rev() {
        if span.insert(&coords(&f.differentiate(field, u))) {
            standard.push(i);
        }
    }
    standard.reverse();
    let basis: Vec<&Vec<u32>> = standard.iter().map(|&i| &monos.monomials[i]).collect();
    let derivs: Vec<Vec<F::Elem>> = basis.iter().map(|u| coords(&f.differentiate(field, u))).collect();
    let dim = basis.len();
    // coordinates of g∘F in the basis {∂^u F : u standard}
    let mut echelon = SparseEchelon::with_tracking(field, monos.len(), dim + 1);
    for (k, v) in derivs.iter().enumerate() {
        let s = to_sparse(field, v);
        let rel = echelon.insert_tracked(&s, k as u32);
        debug_assert!(rel.is_none());
    }
    let express = |echelon: &mut SparseEchelon<F>, u: &[u32]| -> Vec<F::Elem> {
        let g = f.differentiate(field, u);
        let mut out = vec![field.zero(); dim];
        if g.is_zero() {
            return out;
        }
        let v = to_sparse(field, &coords(&g));
        // g∘F lies in the span; a tracked insert of -v reports the combination
        let neg: Vec<(u32, F::Elem)> = v.iter().map(|(i, c)| (*i, field.neg(c))).collect();
        let rel = echelon
            .insert_tracked(&neg, dim as u32)
            .expect("derivative lies in the span of the basis derivatives");
        for (id, c) in rel {
            if (id as usize) < dim {
                out[id as usize] = c;
            }
        }
        out
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in a..dim {
            let prod = express(&mut echelon, &mono_mul(basis[a], basis[b]));
            table[b][a] = prod.clone();
            table[a][b] = prod;
        }
    }
    let generators = (0..n)
        .map(|i| {
            let mut m = vec![0; n];
            m[i] = 1;
            express(&mut echelon, &m)
        })
        .collect();
    let labels = basis.iter().map(|u| format_monomial(u, vars)).collect();
    LocalAlgebra::from_table(field, vars.to_vec(), generators, labels, table)
}

/// Upper-case dual variable names for algebra variables (`x` ↦ `X`).
pub fn dual_names(vars: &[String]) -> Vec<String> {
    vars.iter().map(|v| v.to_uppercase()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly_at;
    use crate::linalg::{PrimeField, Rationals};

    fn inv(vars: &[&str], f: &str) -> LocalAlgebra<PrimeField> {
        let k = PrimeField::default();
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let p = parse_poly_at(&k, &vars, f, 1, 1, true).unwrap();
        from_inverse_system(&k, &vars, &p).unwrap()
    }

    #[test]
    fn power_of_one_variable() {
        let a = inv(&["x"], "X^2");
        assert_eq!(a.labels(), &["1", "x", "x^2"]);
        assert!(a.is_gorenstein());
        assert_eq!(a.loewy_length(), 2);
    }

    #[test]
    fn product_gives_complete_intersection() {
        let a = inv(&["x", "y"], "X*Y");
        assert_eq!(a.hilbert_function(), vec![1, 2, 1]);
        let x = a.generators()[0].clone();
        let y = a.generators()[1].clone();
        assert!(a.is_zero_elem(&a.mul(&x, &x)));
        assert!(a.is_zero_elem(&a.mul(&y, &y)));
        assert!(!a.is_zero_elem(&a.mul(&x, &y)));
    }

    #[test]
    fn weighted_dual_gives_running_example_shape() {
        // Ann(X^4 + Y^2) = (xy, x^4 - 12 y^2): y^2 acts as 2, x^4 as 24
        let a = inv(&["x", "y"], "X^4 + Y^2");
        assert_eq!(a.dim(), 6);
        assert_eq!(a.hilbert_function(), vec![1, 2, 1, 1, 1]);
        let k = a.field().clone();
        let x = a.generators()[0].clone();
        let y = a.generators()[1].clone();
        assert!(a.is_zero_elem(&a.mul(&x, &y)));
        let lhs = a.pow(&x, 4);
        let rhs = a.scale(&k.from_i64(12), &a.mul(&y, &y));
        assert_eq!(lhs, rhs);
        assert!(a.is_gorenstein());
    }

    #[test]
    fn small_characteristic_is_rejected() {
        let k = PrimeField::new(3).unwrap();
        let vars = vec!["x".to_string()];
        let p = parse_poly_at(&k, &vars, "X^3", 1, 1, true).unwrap();
        assert!(matches!(from_inverse_system(&k, &vars, &p), Err(Error::InverseSystem(_))));
        let q = Rationals;
        let p = parse_poly_at(&q, &vars, "X^3", 1, 1, true).unwrap();
        assert_eq!(from_inverse_system(&q, &vars, &p).unwrap().dim(), 4);
    }
}
