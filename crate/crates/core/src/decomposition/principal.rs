//! Principal multiples: `I^2 = yI` for a single generator `y`, and the
//! reduction `m^2 = x m` when `μ(m^2) ≤ 2`.

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};

/// Outcome of the recursive search, with products taken modulo `W`.
enum Search<E> {
    /// `y` with `I^2 ⊆ yI + W`.
    Found(Vec<E>),
    /// `x ∈ I \ mI` with `dim (xI + W)/W ≥ 2`.
    Violation(Vec<E>),
}

/// `c` with `v ≡ c·u (mod W)`, if any; `u ∉ W`.
fn scalar_multiple<F: Field>(w: &Subspace<F>, u: &[F::Elem], v: &[F::Elem]) -> Option<F::Elem> {
    let f = w.field();
    let ru = w.reduce(u);
    let rv = w.reduce(v);
    let k = ru.iter().position(|x| !f.is_zero(x))?;
    let c = f.mul(&rv[k], &f.inv(&ru[k]).expect("nonzero"));
    let ok = ru.iter().zip(&rv).all(|(a, b)| f.sub(b, &f.mul(&c, a)) == f.zero());
    ok.then_some(c)
}

/// Follows the two cases of the induction: a generator with non-vanishing
/// square, or else a pair with non-vanishing product; the remaining
/// generators are corrected to annihilate the chosen ones and the search
/// recurses on the ideal they generate.
fn search<F: Field>(a: &LocalAlgebra<F>, gens: &[Vec<F::Elem>], w: &Subspace<F>) -> Search<F::Elem> {
    let f = a.field();
    match gens.len() {
        0 => return Search::Found(a.zero()),
        1 => return Search::Found(gens[0].clone()),
        _ => {}
    }
    let outside = |v: &[F::Elem]| !w.contains(v);
    let sub_scaled = |x: &[F::Elem], c: &F::Elem, y: &[F::Elem]| -> Vec<F::Elem> {
        x.iter().zip(y).map(|(p, q)| f.sub(p, &f.mul(c, q))).collect()
    };
    if let Some(i) = (0..gens.len()).find(|&i| outside(&a.mul(&gens[i], &gens[i]))) {
        let x1 = &gens[i];
        let sq = a.mul(x1, x1);
        let mut rest = Vec::new();
        for (j, xj) in gens.iter().enumerate() {
            if j == i {
                continue;
            }
            match scalar_multiple(w, &sq, &a.mul(x1, xj)) {
                Some(l) => rest.push(sub_scaled(xj, &l, x1)),
                None => return Search::Violation(x1.clone()),
            }
        }
        return match search(a, &rest, w) {
            Search::Found(y) => Search::Found(a.add(x1, &y)),
            v => v,
        };
    }
    let pair = (0..gens.len())
        .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
        .find(|&(i, j)| outside(&a.mul(&gens[i], &gens[j])));
    let Some((i, j)) = pair else {
        // I^2 ⊆ W already
        return Search::Found(gens[0].clone());
    };
    let (x1, x2) = (&gens[i], &gens[j]);
    let p = a.mul(x1, x2);
    let mut rest = Vec::new();
    for (k, xk) in gens.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        let Some(l) = scalar_multiple(w, &p, &a.mul(x1, xk)) else {
            return Search::Violation(x1.clone());
        };
        let Some(l2) = scalar_multiple(w, &p, &a.mul(x2, xk)) else {
            return Search::Violation(x2.clone());
        };
        rest.push(sub_scaled(&sub_scaled(xk, &l, x2), &l2, x1));
    }
    match search(a, &rest, w) {
        Search::Found(y) => Search::Found(a.add(x1, &y)),
        v => v,
    }
}

/// `y ∈ I \ mI` with `I^2 = yI`, assuming `μ(xI) ≤ 1` for all `x ∈ I \ mI`.
///
/// The hypothesis is checked on every candidate the construction produces;
/// a failing candidate is reported. [`exhaustive_principal_hypothesis`]
/// checks it on all of `I \ mI` over a small prime field.
pub fn principal_multiple_generator<F: Field>(a: &LocalAlgebra<F>, i: &Subspace<F>) -> Result<Vec<F::Elem>> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = a.min_gens(i);
    let i2 = a.ideal_product(i, i);
    let w = a.m_times(&i2);
    match search(a, &gens, &w) {
        Search::Violation(x) => Err(Error::Precondition(format!(
            "mu(xI) > 1 for x = {}",
            a.format_element(&x)
        ))),
        Search::Found(y) => {
            let mi = a.m_times(i);
            let yi = a.ideal_product(&Subspace::from_vectors(a.field(), a.dim(), [&y]), i);
            if mi.contains(&y) || !yi.same_as(&i2) {
                return Err(Error::Precondition(format!(
                    "the constructed y = {} does not satisfy I^2 = yI, so mu(xI) > 1 for some x in I \\ mI",
                    a.format_element(&y)
                )));
            }
            Ok(y)
        }
    }
}

/// Searches all `x ∈ I \ mI` for one with `μ(xI) > 1`. Only for prime fields
/// with at most `limit` elements in `I`.
pub fn exhaustive_principal_hypothesis<F: Field>(
    a: &LocalAlgebra<F>,
    i: &Subspace<F>,
    limit: u64,
) -> Result<Option<Vec<F::Elem>>> {
    let f = a.field();
    let p = f.characteristic();
    let dim = i.dim() as u32;
    let total = if p == 0 { None } else { p.checked_pow(dim) };
    let total = match total {
        Some(t) if t <= limit => t,
        _ => {
            return Err(Error::ResourceLimit(format!(
                "exhaustive search needs a prime field with at most {limit} elements in I"
            )))
        }
    };
    let mi = a.m_times(i);
    for code in 1..total {
        let mut c = code;
        let mut x = a.zero();
        for b in i.basis() {
            let coeff = f.from_i64((c % p) as i64);
            c /= p;
            crate::linalg::subspace::add_scaled(f, &mut x, &coeff, b);
        }
        if mi.contains(&x) {
            continue;
        }
        let xi = a.ideal_product(&Subspace::from_vectors(f, a.dim(), [&x]), i);
        if a.mu(&xi) > 1 {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `x ∈ m \ m^2` with `m^2 = x m`, for `μ(m^2) ≤ 2`; when the Loewy length is
/// at least 3 also `x^2 ∉ m^3`.
pub fn principal_reduction_of_m2<F: Field>(a: &LocalAlgebra<F>) -> Result<Vec<F::Elem>> {
    let m = a.maximal_ideal();
    let m2 = a.ideal_power(2);
    let m3 = a.ideal_power(3);
    let mu2 = a.mu(&m2);
    if mu2 > 2 {
        return Err(Error::Precondition(format!("mu(m^2) = {mu2} > 2")));
    }
    let gens = a.minimal_generators();
    if gens.is_empty() {
        return Err(Error::Precondition("the maximal ideal is zero".into()));
    }
    let x_m = |x: &Vec<F::Elem>| a.ideal_product(&Subspace::from_vectors(a.field(), a.dim(), [x]), &m);
    let x = match mu2 {
        0 => gens[0].clone(),
        1 => gens
            .iter()
            .find(|g| !x_m(g).is_subspace_of(&m3))
            .cloned()
            .ok_or_else(|| Error::Verification("no generator multiplies m outside m^3".into()))?,
        _ => match search(a, &gens, &m3) {
            // a generator with two independent products modulo m^3
            Search::Violation(x) => x,
            Search::Found(_) => {
                return Err(Error::Verification(
                    "principal search succeeded although mu(m^2) = 2".into(),
                ))
            }
        },
    };
    if m2.contains(&x) || !x_m(&x).same_as(&m2) {
        return Err(Error::Verification(format!(
            "m^2 != x m for x = {}",
            a.format_element(&x)
        )));
    }
    if a.loewy_length() >= 3 && m3.contains(&a.mul(&x, &x)) {
        return Err(Error::Verification("x^2 lies in m^3".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::tests::{alg, running_example};

    #[test]
    fn principal_maximal_ideal() {
        let a = alg(&["x"], &["x^4"]);
        let y = principal_multiple_generator(&a, &a.maximal_ideal()).unwrap();
        assert_eq!(y, a.basis_element(1));
    }

    #[test]
    fn complete_intersection_case_one() {
        let a = alg(&["x", "y"], &["x^2", "y^2"]);
        let m = a.maximal_ideal();
        let y = principal_multiple_generator(&a, &m).unwrap();
        let ym = a.ideal_product(&Subspace::from_vectors(a.field(), a.dim(), [&y]), &m);
        assert!(ym.same_as(&a.ideal_power(2)));
        // x + y works as well
        let s = a.add(&a.basis_element(1), &a.basis_element(2));
        let sm = a.ideal_product(&Subspace::from_vectors(a.field(), a.dim(), [&s]), &m);
        assert!(sm.same_as(&a.ideal_power(2)));
    }

    #[test]
    fn square_zero_and_violations() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(principal_multiple_generator(&a, &a.maximal_ideal()).is_ok());
        // m^2 needs two generators: hypothesis fails
        let b = alg(&["x", "y"], &["x^3", "y^2"]);
        assert!(matches!(
            principal_multiple_generator(&b, &b.maximal_ideal()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(principal_multiple_generator(&b, &b.zero_ideal()), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn exhaustive_mode_over_small_field() {
        let k = crate::linalg::PrimeField::new(5).unwrap();
        let vars = vec!["x".to_string(), "y".to_string()];
        let rels = ["x^2", "y^2"]
            .iter()
            .map(|r| crate::algebra::parse_poly(&k, &vars, r).unwrap())
            .collect();
        let a = crate::algebra::build_algebra(&crate::algebra::Presentation::new(&k, vars, rels)).unwrap();
        assert_eq!(exhaustive_principal_hypothesis(&a, &a.maximal_ideal(), 1000).unwrap(), None);
        let b = alg(&["x", "y"], &["x^3", "y^2"]);
        assert!(exhaustive_principal_hypothesis(&b, &b.maximal_ideal(), 1000).is_err());
    }

    #[test]
    fn reductions_of_m_squared() {
        let a = alg(&["x", "y"], &["x*y", "y^2", "x^4"]);
        assert_eq!(principal_reduction_of_m2(&a).unwrap(), a.basis_element(1));
        let r = running_example();
        assert_eq!(principal_reduction_of_m2(&r).unwrap(), r.basis_element(1));
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let x = principal_reduction_of_m2(&c).unwrap();
        assert!(!c.is_zero_elem(&c.mul(&x, &c.basis_element(2))) || !c.is_zero_elem(&c.mul(&x, &c.basis_element(1))));
        // almost stretched: m^2 = (x^2, xy) in k[x,y]/(x^3, y^2)
        let b = alg(&["x", "y"], &["x^3", "y^2"]);
        let x = principal_reduction_of_m2(&b).unwrap();
        let xm = b.ideal_product(&Subspace::from_vectors(b.field(), b.dim(), [&x]), &b.maximal_ideal());
        assert!(xm.same_as(&b.ideal_power(2)));
        let n = alg(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        assert!(principal_reduction_of_m2(&n).is_err());
    }
}
