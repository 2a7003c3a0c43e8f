//! Seeded generators of Gorenstein algebras and modules.
//!
//! Everything is driven by a ChaCha8 stream seeded from a `u64`, so a seed
//! reproduces the same corpus on every platform. Algebras come from inverse
//! systems `k[x]/Ann(F)`; a random unipotent change of dual coordinates keeps
//! the multiplication tables from being monomial.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::poly::monomials_of_degree;
use crate::algebra::{dual_names, from_inverse_system, LocalAlgebra, Poly};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::products::connected_sum;
use crate::resolution::PresentedModule;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated algebra with a description of how it was made.
#[derive(Clone, Debug)]
pub struct Sample<F: Field> {
    pub label: String,
    pub algebra: LocalAlgebra<F>,
}

/// `x, y, z, w` for up to four variables, else `x1..xn`.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn coeff(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let c = rng.random_range(1..=bound);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

fn power<F: Field>(f: &F, n: usize, i: usize, e: u32, c: i64) -> Poly<F> {
    let mut m = vec![0; n];
    m[i] = e;
    Poly::monomial(f, m, f.from_i64(c))
}

/// A form of degree `d` in `n` dual variables with random nonzero
/// coefficients on every monomial.
pub fn random_form<F: Field>(f: &F, n: usize, d: u32, rng: &mut ChaCha8Rng) -> Poly<F> {
    let mut p = Poly::zero(n);
    for m in monomials_of_degree(n, d) {
        p.add_term(f, m, f.from_i64(coeff(rng, 9)));
    }
    p
}

/// Images of the dual variables under a random unipotent triangular change
/// of coordinates composed with a random permutation.
pub fn random_linear_change<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    (0..n)
        .map(|i| {
            let mut p = power(f, n, perm[i], 1, 1);
            for j in i + 1..n {
                let c = rng.random_range(-2..=2);
                if c != 0 {
                    p = p.add(f, &power(f, n, perm[j], 1, c));
                }
            }
            p
        })
        .collect()
}

/// `k[x]/Ann(F)` with the default variable names.
pub fn gorenstein_from_dual<F: Field>(f: &F, dual: &Poly<F>) -> Result<LocalAlgebra<F>> {
    from_inverse_system(f, &variable_names(dual.nvars), dual)
}

fn label<F: Field>(f: &F, dual: &Poly<F>) -> String {
    format!("Ann({})", dual.format(f, &dual_names(&variable_names(dual.nvars))))
}

/// The dual polynomial printed by `gen inverse-system`: a random form of
/// degree `socle_degree` in `n` variables.
pub fn random_inverse_system<F: Field>(f: &F, n: usize, socle_degree: u32, seed: u64) -> Result<Poly<F>> {
    if n == 0 || socle_degree == 0 {
        return Err(Error::Precondition("need at least one variable and socle degree at least 1".into()));
    }
    Ok(random_form(f, n, socle_degree, &mut rng(seed)))
}

/// `F + (random terms of degree < deg F)` composed with a random change of
/// coordinates.
fn perturbed<F: Field>(f: &F, dual: Poly<F>, extra_terms: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let n = dual.nvars;
    let top = dual.degree().unwrap_or(0);
    let mut p = dual;
    if top >= 3 {
        for _ in 0..extra_terms {
            let d = rng.random_range(2..top);
            let ms = monomials_of_degree(n, d);
            let m = ms[rng.random_range(0..ms.len())].clone();
            p.add_term(f, m, f.from_i64(coeff(rng, 5)));
        }
    }
    let change = random_linear_change(f, n, rng);
    p.substitute(f, &change)
}

/// A random Gorenstein algebra with socle degree at least 3.
fn random_high_socle<F: Field>(f: &F, max_vars: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> Poly<F> {
    let n = rng.random_range(1..=max_vars);
    let s = rng.random_range(3..=max_degree.max(3));
    let dual = match rng.random_range(0..3) {
        // generic form: compressed Hilbert function
        0 => random_form(f, n, s, rng),
        // sum of powers with falling exponents
        1 => {
            let mut p = Poly::zero(n);
            for i in 0..n {
                let e = if i == 0 { s } else { rng.random_range(2..=s) };
                p = p.add(f, &power(f, n, i, e, coeff(rng, 5)));
            }
            p
        }
        // X^s plus a mixed term
        _ => {
            let mut p = power(f, n, 0, s, 1);
            for i in 1..n {
                p = p.add(f, &power(f, n, i, 2, coeff(rng, 5)));
                let mut m = vec![0; n];
                m[0] = rng.random_range(1..s - 1);
                m[i] = 1;
                p.add_term(f, m, f.from_i64(coeff(rng, 5)));
            }
            p
        }
    };
    perturbed(f, dual, rng.random_range(0..=2), rng)
}

/// A nondegenerate quadratic dual form in `n` variables: Hilbert function
/// `[1, n, 1]`.
fn random_quadric<F: Field>(f: &F, n: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let mut p = Poly::zero(n);
    for i in 0..n {
        p = p.add(f, &power(f, n, i, 2, coeff(rng, 5)));
    }
    let change = random_linear_change(f, n, rng);
    p.substitute(f, &change)
}

const MAX_ATTEMPTS: usize = 100_000;

fn fill<T>(count: usize, mut attempt: impl FnMut() -> Option<T>) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..MAX_ATTEMPTS {
        if out.len() == count {
            break;
        }
        if let Some(x) = attempt() {
            out.push(x);
        }
    }
    if out.len() < count {
        return Err(Error::ResourceLimit(format!("only {} of {count} samples found", out.len())));
    }
    Ok(out)
}

/// Gorenstein algebras with `μ(m^2) ≤ 2`, edim 2–4 and length ≤ `max_dim`:
/// stretched (`X^s + ΣX_i^2`) and almost stretched (`X^s + Y^t + ΣX_i^2`)
/// duals with a mixed term and a random change of coordinates.
pub fn small_square_corpus<F: Field>(f: &F, count: usize, max_dim: usize, seed: u64) -> Result<Vec<Sample<F>>> {
    let mut rng = rng(seed);
    fill(count, || {
        let n = rng.random_range(2..=4);
        let s = rng.random_range(2..=(max_dim - n).max(2) as u32);
        let mut p = power(f, n, 0, s, 1);
        let first_square = if rng.random_bool(0.5) && s >= 3 {
            let t = rng.random_range(3..=s);
            p = p.add(f, &power(f, n, 1, t, coeff(&mut rng, 5)));
            2
        } else {
            1
        };
        for i in first_square..n {
            p = p.add(f, &power(f, n, i, 2, coeff(&mut rng, 5)));
        }
        if s >= 3 && rng.random_bool(0.5) {
            let mut m = vec![0; n];
            m[0] = rng.random_range(1..s - 1);
            m[n - 1] = 1;
            p.add_term(f, m, f.from_i64(coeff(&mut rng, 5)));
        }
        let change = random_linear_change(f, n, &mut rng);
        let dual = p.substitute(f, &change);
        let a = gorenstein_from_dual(f, &dual).ok()?;
        let ok = a.dim() <= max_dim && a.edim() == n && a.mu(&a.ideal_power(2)) <= 2;
        ok.then(|| Sample {
            label: label(f, &dual),
            algebra: a,
        })
    })
}

/// Pairs `(S, T)` of Gorenstein algebras with socle degree of `S` at least 3,
/// `T` of Hilbert function `[1, m, 1]`, both of length ≤ `max_dim`.
pub fn connected_sum_pairs<F: Field>(
    f: &F,
    count: usize,
    max_dim: usize,
    seed: u64,
) -> Result<Vec<(Sample<F>, Sample<F>)>> {
    let mut rng = rng(seed);
    fill(count, || {
        let ds = random_high_socle(f, 3, 6, &mut rng);
        let s = gorenstein_from_dual(f, &ds).ok()?;
        if s.dim() > max_dim || s.loewy_length() < 3 {
            return None;
        }
        let m = rng.random_range(1..=(max_dim - 2).max(1));
        let dt = random_quadric(f, m, &mut rng);
        let t = gorenstein_from_dual(f, &dt).ok()?;
        if t.dim() != m + 2 {
            return None;
        }
        Some((
            Sample {
                label: label(f, &ds),
                algebra: s,
            },
            Sample {
                label: label(f, &dt),
                algebra: t,
            },
        ))
    })
}

/// Gorenstein algebras of length ≤ `max_dim`: inverse systems of random shape
/// in up to six variables and connected sums with `[1, m, 1]` factors, so that
/// high embedding dimensions occur.
pub fn gorenstein_corpus<F: Field>(f: &F, count: usize, max_dim: usize, seed: u64) -> Result<Vec<Sample<F>>> {
    let mut rng = rng(seed);
    fill(count, || {
        let (label, a) = match rng.random_range(0..4) {
            0 => {
                let n = rng.random_range(1..=6);
                let d = random_quadric(f, n, &mut rng);
                (label(f, &d), gorenstein_from_dual(f, &d).ok()?)
            }
            1 | 2 => {
                let d = random_high_socle(f, 4, 6, &mut rng);
                (label(f, &d), gorenstein_from_dual(f, &d).ok()?)
            }
            _ => {
                let ds = random_high_socle(f, 2, 5, &mut rng);
                let m = rng.random_range(1..=6);
                let dt = random_quadric(f, m, &mut rng);
                let s = gorenstein_from_dual(f, &ds).ok()?;
                let t = gorenstein_from_dual(f, &dt).ok()?;
                if s.dim() + t.dim() > max_dim + 2 || s.dim() < 2 {
                    return None;
                }
                let sum = connected_sum(&s, &t).ok()?.algebra;
                (format!("{} # {}", label(f, &ds), label(f, &dt)), sum)
            }
        };
        (a.dim() <= max_dim && a.dim() >= 2).then_some(Sample { label, algebra: a })
    })
}

/// A fibre-product test case: factors and a cyclic module over the first.
#[derive(Clone, Debug)]
pub struct FibreCase<F: Field> {
    pub s: Sample<F>,
    pub t: Sample<F>,
    pub module: PresentedModule<F>,
    pub module_label: String,
}

/// Factors of edim ≤ `max_edim` and length ≤ `max_dim`, with a random
/// cyclic module over the first factor.
pub fn fibre_cases<F: Field>(
    f: &F,
    count: usize,
    max_edim: usize,
    max_dim: usize,
    seed: u64,
) -> Result<Vec<FibreCase<F>>> {
    let mut rng = rng(seed);
    fill(count, || {
        let factor = |rng: &mut ChaCha8Rng| -> Option<Sample<F>> {
            let d = if rng.random_bool(0.3) {
                let n = rng.random_range(1..=max_edim);
                random_quadric(f, n, rng)
            } else {
                random_high_socle(f, max_edim, 6, rng)
            };
            let a = gorenstein_from_dual(f, &d).ok()?;
            (a.dim() <= max_dim && a.dim() >= 2).then(|| Sample {
                label: label(f, &d),
                algebra: a,
            })
        };
        let s = factor(&mut rng)?;
        let t = factor(&mut rng)?;
        let (module, module_label) = random_cyclic_module(&s.algebra, &mut rng);
        Some(FibreCase {
            s,
            t,
            module,
            module_label,
        })
    })
}

/// A random element of `m^j` for `j ≥ 1`, built from basis elements of order
/// at least `j`.
pub fn random_element_of_power<F: Field>(a: &LocalAlgebra<F>, j: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = a.field();
    let mut v = a.zero();
    let start = a.order_start(j.min(a.loewy_length() + 1)).max(1);
    for x in v.iter_mut().skip(start) {
        if rng.random_bool(0.6) {
            *x = f.from_i64(rng.random_range(-3..=3));
        }
    }
    v
}

/// `A/(g_1, .., g_r)` for one or two random elements of random powers of `m`.
pub fn random_cyclic_module<F: Field>(a: &LocalAlgebra<F>, rng: &mut ChaCha8Rng) -> (PresentedModule<F>, String) {
    let lo = a.loewy_length().max(1);
    let r = rng.random_range(1..=2);
    let gens: Vec<Vec<F::Elem>> = (0..r)
        .map(|_| {
            let j = rng.random_range(1..=lo);
            random_element_of_power(a, j, rng)
        })
        .collect();
    let label = format!(
        "A/({})",
        gens.iter().map(|g| a.format_element(g)).collect::<Vec<_>>().join(", ")
    );
    (PresentedModule::cyclic(a, &gens), label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn k() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn seeds_reproduce() {
        let a = small_square_corpus(&k(), 3, 14, 7).unwrap();
        let b = small_square_corpus(&k(), 3, 14, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.algebra.canonical_string(), y.algebra.canonical_string());
        }
        let c = random_inverse_system(&k(), 3, 4, 1).unwrap();
        assert_eq!(c, random_inverse_system(&k(), 3, 4, 1).unwrap());
        assert_ne!(c, random_inverse_system(&k(), 3, 4, 2).unwrap());
    }

    #[test]
    fn corpora_meet_their_constraints() {
        for s in small_square_corpus(&k(), 5, 14, 1).unwrap() {
            let a = &s.algebra;
            assert!(a.is_gorenstein() && (2..=4).contains(&a.edim()) && a.dim() <= 14, "{}", s.label);
            assert!(a.mu(&a.ideal_power(2)) <= 2);
        }
        for (s, t) in connected_sum_pairs(&k(), 5, 10, 1).unwrap() {
            assert!(s.algebra.loewy_length() >= 3 && s.algebra.dim() <= 10);
            assert_eq!(t.algebra.loewy_length(), 2);
            assert!(t.algebra.dim() <= 10);
        }
        for s in gorenstein_corpus(&k(), 10, 11, 1).unwrap() {
            assert!(s.algebra.is_gorenstein() && s.algebra.dim() <= 11, "{}", s.label);
        }
    }

    #[test]
    fn random_change_is_invertible() {
        let f = k();
        let mut r = rng(3);
        let q = random_quadric(&f, 4, &mut r);
        let a = gorenstein_from_dual(&f, &q).unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 4, 1]);
    }
}
