//! Fibre products `R ×_k S` and connected sums `R # S` on multiplication tables.

use std::collections::HashSet;

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::subspace::unit;
use crate::linalg::{Field, Subspace};

/// `R ×_k S` with the coordinate embeddings of `m_R` and `m_S`.
#[derive(Clone, Debug)]
pub struct FibreProductWitness<F: Field> {
    pub algebra: LocalAlgebra<F>,
    /// `embed_r[i]` is the index in the product of basis element `i + 1` of `R`.
    pub embed_r: Vec<usize>,
    pub embed_s: Vec<usize>,
}

impl<F: Field> FibreProductWitness<F> {
    /// Image of an element of `R` (the unit part maps to the unit).
    pub fn map_r(&self, r: &[F::Elem]) -> Vec<F::Elem> {
        self.map(r, &self.embed_r)
    }

    pub fn map_s(&self, s: &[F::Elem]) -> Vec<F::Elem> {
        self.map(s, &self.embed_s)
    }

    fn map(&self, v: &[F::Elem], embed: &[usize]) -> Vec<F::Elem> {
        let mut out = self.algebra.zero();
        out[0] = v[0].clone();
        for (i, &t) in embed.iter().enumerate() {
            out[t] = v[i + 1].clone();
        }
        out
    }
}

/// `R # S` together with the fibre product it is a quotient of.
#[derive(Clone, Debug)]
pub struct ConnectedSumWitness<F: Field> {
    pub algebra: LocalAlgebra<F>,
    pub fibre: FibreProductWitness<F>,
    pub delta_r: Vec<F::Elem>,
    pub delta_s: Vec<F::Elem>,
    /// The identified line `⟨(δ_R, -δ_S)⟩` inside the fibre product.
    pub line: Subspace<F>,
}

fn check_fields<F: Field>(r: &LocalAlgebra<F>, s: &LocalAlgebra<F>) -> Result<()> {
    if r.field() != s.field() {
        return Err(Error::FieldMismatch(r.descriptor().to_string(), s.descriptor().to_string()));
    }
    Ok(())
}

fn rename_token(label: &str, map: &[(String, String)]) -> String {
    if map.is_empty() {
        return label.to_string();
    }
    let rename_factor = |fac: &str| -> String {
        let (base, exp) = match fac.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (fac, None),
        };
        let b = map
            .iter()
            .find(|(old, _)| old == base)
            .map_or(base.to_string(), |(_, new)| new.clone());
        match exp {
            Some(e) => format!("{b}^{e}"),
            None => b,
        }
    };
    label.split('*').map(rename_factor).collect::<Vec<_>>().join("*")
}

/// Variable names for `S` that avoid those of `R`.
fn fresh_names(taken: &[String], names: &[String]) -> Vec<(String, String)> {
    let mut used: HashSet<String> = taken.iter().cloned().collect();
    let mut map = Vec::new();
    for n in names {
        if used.contains(n) {
            let mut k = 2;
            while used.contains(&format!("{n}_{k}")) || names.contains(&format!("{n}_{k}")) {
                k += 1;
            }
            let new = format!("{n}_{k}");
            used.insert(new.clone());
            map.push((n.clone(), new));
        } else {
            used.insert(n.clone());
        }
    }
    map
}

/// The fibre product `{(r, s) : r ≡ s mod m}`, basis `1 ∪ m_R ∪ m_S` merged by
/// m-adic order. Cross products vanish.
pub fn fibre_product<F: Field>(r: &LocalAlgebra<F>, s: &LocalAlgebra<F>) -> Result<FibreProductWitness<F>> {
    check_fields(r, s)?;
    let f = r.field();
    // (source, index) in merged order; source 0 = R, 1 = S
    let mut slots: Vec<(u8, usize)> = Vec::new();
    let (mut i, mut j) = (1, 1);
    while i < r.dim() || j < s.dim() {
        let take_r = j >= s.dim() || (i < r.dim() && r.orders()[i] <= s.orders()[j]);
        if take_r {
            slots.push((0, i));
            i += 1;
        } else {
            slots.push((1, j));
            j += 1;
        }
    }
    let d = 1 + slots.len();
    let mut embed_r = vec![0; r.dim() - 1];
    let mut embed_s = vec![0; s.dim() - 1];
    for (k, &(src, idx)) in slots.iter().enumerate() {
        if src == 0 {
            embed_r[idx - 1] = k + 1;
        } else {
            embed_s[idx - 1] = k + 1;
        }
    }
    let lift = |v: &[F::Elem], embed: &[usize]| -> Vec<F::Elem> {
        let mut out = vec![f.zero(); d];
        out[0] = v[0].clone();
        for (a, &t) in embed.iter().enumerate() {
            out[t] = v[a + 1].clone();
        }
        out
    };
    let basis_of = |k: usize| -> Option<(u8, usize)> { if k == 0 { None } else { Some(slots[k - 1]) } };
    let mut table = vec![vec![vec![f.zero(); d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            table[a][b] = match (basis_of(a), basis_of(b)) {
                (None, _) => unit(f, d, b),
                (_, None) => unit(f, d, a),
                (Some((0, x)), Some((0, y))) => lift(&r.mul(&r.basis_element(x), &r.basis_element(y)), &embed_r),
                (Some((1, x)), Some((1, y))) => lift(&s.mul(&s.basis_element(x), &s.basis_element(y)), &embed_s),
                _ => vec![f.zero(); d],
            };
        }
    }
    let rename = fresh_names(r.var_names(), s.var_names());
    let mut labels = vec!["1".to_string()];
    for &(src, idx) in &slots {
        labels.push(if src == 0 {
            r.labels()[idx].clone()
        } else {
            rename_token(&s.labels()[idx], &rename)
        });
    }
    let mut names = r.var_names().to_vec();
    names.extend(s.var_names().iter().map(|n| {
        rename
            .iter()
            .find(|(old, _)| old == n)
            .map_or(n.clone(), |(_, new)| new.clone())
    }));
    let mut gens: Vec<Vec<F::Elem>> = r.generators().iter().map(|g| lift(g, &embed_r)).collect();
    gens.extend(s.generators().iter().map(|g| lift(g, &embed_s)));
    let algebra = LocalAlgebra::from_table(f, names, gens, labels, table)?;
    Ok(FibreProductWitness {
        algebra,
        embed_r,
        embed_s,
    })
}

/// `R # S = (R ×_k S)/⟨(δ_R, -δ_S)⟩` for Gorenstein `R`, `S` of length ≥ 2.
pub fn connected_sum<F: Field>(r: &LocalAlgebra<F>, s: &LocalAlgebra<F>) -> Result<ConnectedSumWitness<F>> {
    check_fields(r, s)?;
    for a in [r, s] {
        if a.dim() < 2 {
            return Err(Error::Precondition("connected sum needs factors of length at least 2".into()));
        }
    }
    let delta_r = r.socle_generator()?;
    let delta_s = s.socle_generator()?;
    connected_sum_along(r, s, delta_r, delta_s)
}

/// Connected sum identifying the given socle generators.
pub fn connected_sum_along<F: Field>(
    r: &LocalAlgebra<F>,
    s: &LocalAlgebra<F>,
    delta_r: Vec<F::Elem>,
    delta_s: Vec<F::Elem>,
) -> Result<ConnectedSumWitness<F>> {
    check_fields(r, s)?;
    for (a, d) in [(r, &delta_r), (s, &delta_s)] {
        let soc = a.socle();
        if soc.dim() != 1 {
            return Err(Error::NotGorenstein { socle_dim: soc.dim() });
        }
        if a.dim() < 2 || a.is_zero_elem(d) || !soc.contains(d) {
            return Err(Error::Precondition("identified elements must generate the socles".into()));
        }
    }
    let fibre = fibre_product(r, s)?;
    let t = &fibre.algebra;
    let neg_s: Vec<F::Elem> = delta_s.iter().map(|x| t.field().neg(x)).collect();
    let v = t.add(&fibre.map_r(&delta_r), &fibre.map_s(&neg_s));
    let line = Subspace::from_vectors(t.field(), t.dim(), [&v]);
    let algebra = t.quotient(&line)?;
    Ok(ConnectedSumWitness {
        algebra,
        fibre,
        delta_r,
        delta_s,
        line,
    })
}

/// `dim m_T^i = dim m_R^i + dim m_S^i` for all `i ≥ 1`.
pub fn fibre_powers_split<F: Field>(r: &LocalAlgebra<F>, s: &LocalAlgebra<F>, t: &LocalAlgebra<F>) -> bool {
    let top = r.loewy_length().max(s.loewy_length()) + 1;
    (1..=top).all(|i| t.ideal_power(i).dim() == r.ideal_power(i).dim() + s.ideal_power(i).dim())
}

/// For `2 ≤ n ≤ lo(Q)`, `Q/m_Q^n` and `R/m_R^{min(n, lo R)} ×_k S/m_S^{min(n, lo S)}`
/// have the same Hilbert function.
pub fn connected_sum_truncations_match<F: Field>(
    r: &LocalAlgebra<F>,
    s: &LocalAlgebra<F>,
    q: &LocalAlgebra<F>,
) -> Result<bool> {
    for n in 2..=q.loewy_length() {
        let lhs = q.quotient(&q.ideal_power(n))?;
        let rn = r.quotient(&r.ideal_power(n.min(r.loewy_length())))?;
        let sn = s.quotient(&s.ideal_power(n.min(s.loewy_length())))?;
        let rhs = fibre_product(&rn, &sn)?.algebra;
        if lhs.hilbert_function() != rhs.hilbert_function() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::tests::alg;

    #[test]
    fn fibre_product_of_dual_numbers() {
        let r = alg(&["x"], &["x^2"]);
        let s = alg(&["y"], &["y^2"]);
        let w = fibre_product(&r, &s).unwrap();
        let t = &w.algebra;
        assert_eq!(t.dim(), 3);
        assert!(t.ideal_power(2).is_zero());
        assert_eq!(t.var_names(), &["x", "y"]);
        t.verify().unwrap();
    }

    #[test]
    fn fibre_product_with_field_is_identity() {
        let r = alg(&["x", "y"], &["x*y", "x^4 - y^2"]);
        let k = alg(&["z"], &["z"]);
        let t = fibre_product(&r, &k).unwrap().algebra;
        assert_eq!(t, r);
    }

    #[test]
    fn fibre_product_of_cubes() {
        let r = alg(&["x"], &["x^3"]);
        let s = alg(&["y"], &["y^3"]);
        let w = fibre_product(&r, &s).unwrap();
        let t = &w.algebra;
        assert_eq!(t.dim(), 5);
        assert_eq!(t.hilbert_function(), vec![1, 2, 2]);
        let x = &t.generators()[0];
        let y = &t.generators()[1];
        assert!(t.is_zero_elem(&t.mul(x, y)));
        assert!(fibre_powers_split(&r, &s, t));
    }

    #[test]
    fn clashing_names_are_renamed() {
        let r = alg(&["x"], &["x^3"]);
        let t = fibre_product(&r, &r).unwrap().algebra;
        assert_eq!(t.var_names(), &["x", "x_2"]);
        assert_eq!(t.labels(), &["1", "x", "x_2", "x^2", "x_2^2"]);
    }

    #[test]
    fn connected_sums() {
        let x3 = alg(&["x"], &["x^3"]);
        let y3 = alg(&["y"], &["y^3"]);
        let q = connected_sum(&x3, &y3).unwrap().algebra;
        assert_eq!(q.dim(), 4);
        assert!(q.is_gorenstein());
        assert_eq!(q.hilbert_function(), vec![1, 2, 1]);

        let x5 = alg(&["x"], &["x^5"]);
        let q = connected_sum(&x5, &y3).unwrap().algebra;
        assert_eq!(q.dim(), 6);
        assert_eq!(q.hilbert_function(), vec![1, 2, 1, 1, 1]);
        assert!(q.is_gorenstein());
        assert!(connected_sum_truncations_match(&x5, &y3, &q).unwrap());

        let x2 = alg(&["x"], &["x^2"]);
        let y2 = alg(&["y"], &["y^2"]);
        let q = connected_sum(&x2, &y2).unwrap().algebra;
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn connected_sum_rejects_non_gorenstein() {
        let r = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let s = alg(&["z"], &["z^3"]);
        assert!(matches!(connected_sum(&r, &s), Err(Error::NotGorenstein { .. })));
    }
}
