//! Polynomials with exact coefficients and the monomial orders used to build
//! algebras.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::linalg::Field;

/// Exponent vector.
pub type Monomial = Vec<u32>;

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Degree-reverse-lexicographic comparison; ties between variables are broken
/// by index, so `x_1 > x_2 > ...`.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// All monomials of degree `d` in `n` variables, grevlex-descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex_cmp(b, a));
    out
}

/// Monomials of degree `< bound` in the local order: ascending degree, and
/// grevlex-descending within a degree. The position of a monomial in this list
/// is its column index in every truncated computation.
#[derive(Clone, Debug)]
pub struct LocalMonomials {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl LocalMonomials {
    pub fn new(n: usize, bound: u32) -> Self {
        let mut monomials = Vec::new();
        for d in 0..bound {
            monomials.extend(monomials_of_degree(n, d));
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        LocalMonomials { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `x^2*y`, or `1` for the empty monomial.
pub fn format_monomial(m: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        let mut p = Self::zero(nvars);
        if !field.is_zero(&c) {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn monomial(field: &F, m: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(field, m, c);
        p
    }

    pub fn variable(field: &F, nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(field, m, field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: F::Elem) {
        if field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = field.add(v, &c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, field: &F) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(field, m.clone(), field.mul(c, v));
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(field, mono_mul(a, b), field.mul(x, y));
            }
        }
        out
    }

    pub fn pow(&self, field: &F, e: u32) -> Self {
        let mut out = Self::constant(field, self.nvars, field.one());
        for _ in 0..e {
            out = out.mul(field, self);
        }
        out
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).max()
    }

    /// Smallest degree of a term; `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree(m)).min()
    }

    /// Repeated partial derivative `∂^u` (ordinary, not divided powers).
    pub fn differentiate(&self, field: &F, u: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (i, (&a, &k)) in m.iter().zip(u).enumerate() {
                if k > a {
                    continue 'terms;
                }
                for t in 0..k {
                    coeff = field.mul(&coeff, &field.from_i64((a - t) as i64));
                }
                rest[i] = a - k;
            }
            out.add_term(field, rest, coeff);
        }
        out
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn substitute(&self, field: &F, images: &[Poly<F>]) -> Self {
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Poly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(field, nv, c.clone());
            for (i, &e) in m.iter().enumerate() {
                t = t.mul(field, &images[i].pow(field, e));
            }
            out = out.add(field, &t);
        }
        out
    }

    /// Terms sorted grevlex-descending (leading term first).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &F::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        v
    }

    /// Canonical text: grevlex-descending terms, signed coefficients,
    /// explicit `*`.
    pub fn format(&self, field: &F, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let minus = field.prefers_minus(c);
            let mag = if minus { field.neg(c) } else { c.clone() };
            if k == 0 {
                if minus {
                    s.push('-');
                }
            } else {
                s.push_str(if minus { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if degree(m) == 0 {
                s.push_str(&field.format(&mag));
            } else if field.is_one(&mag) {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", field.format(&mag), mono));
            }
        }
        s
    }
}
