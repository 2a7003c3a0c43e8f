//! Splitting a Gorenstein ring as `S # T` with `lo(T) = 2` when
//! `(0 : m^2) ⊄ m^2`, iterated factorization, and the length ≤ 11 certificate.

use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Field, Subspace};
use crate::products::{connected_sum_along, ConnectedSumWitness};

fn require_gorenstein_lo3<F: Field>(a: &LocalAlgebra<F>) -> Result<()> {
    let soc = a.socle().dim();
    if soc != 1 {
        return Err(Error::NotGorenstein { socle_dim: soc });
    }
    if a.loewy_length() < 3 {
        return Err(Error::Precondition("lo >= 3 required".into()));
    }
    Ok(())
}

/// Whether `(0 : m^2) ⊄ m^2`.
pub fn socle_split_test<F: Field>(a: &LocalAlgebra<F>) -> Result<bool> {
    require_gorenstein_lo3(a)?;
    let m2 = a.ideal_power(2);
    Ok(!a.annihilator(&m2).is_subspace_of(&m2))
}

/// Witness of `A ≅ S # T` with `S = k + (0 : I)` and `T = k + I`.
#[derive(Clone, Debug)]
pub struct DecompositionCertificate<F: Field> {
    pub s: LocalAlgebra<F>,
    pub t: LocalAlgebra<F>,
    /// Images in `A` of the bases of `S` and `T`.
    pub s_embedding: Vec<Vec<F::Elem>>,
    pub t_embedding: Vec<Vec<F::Elem>>,
    /// The chosen `y_1..y_n` generating `I`.
    pub i_generators: Vec<Vec<F::Elem>>,
    /// Socle generator of `A`.
    pub delta: Vec<F::Elem>,
    /// `S # T` as built from the factors.
    pub sum: ConnectedSumWitness<F>,
    /// Column `j` is the image in `A` of basis element `j` of `S # T`.
    pub phi: Vec<Vec<F::Elem>>,
    /// Named checks, all of which passed.
    pub checks: Vec<(String, bool)>,
    /// Number of basis pairs on which multiplicativity of `phi` was checked.
    pub pairs_checked: usize,
}

fn verify(cond: bool, name: &str, checks: &mut Vec<(String, bool)>) -> Result<()> {
    checks.push((name.to_string(), cond));
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(name.to_string()))
    }
}

/// Splits `A = S # T` with `lo(S) = lo(A)`, `lo(T) = 2`.
pub fn split_connected_sum<F: Field>(a: &LocalAlgebra<F>) -> Result<DecompositionCertificate<F>> {
    if !socle_split_test(a)? {
        return Err(Error::CriterionFails("(0 : m^2) is contained in m^2".into()));
    }
    let f = a.field();
    let d = a.dim();
    let mut checks = Vec::new();
    let m = a.maximal_ideal();
    let m2 = a.ideal_power(2);
    let z = a.annihilator(&m2);
    let y = z.complement_of(&z.intersection(&m2));
    let i = a.ideal_generated(&y);
    let k = a.annihilator(&i);
    let soc = a.socle();
    verify(i.sum(&k).same_as(&m), "m = I + (0 : I)", &mut checks)?;
    verify(i.intersection(&k).same_as(&soc), "I ∩ (0 : I) = soc", &mut checks)?;
    verify(
        i.dim() + k.dim() - i.intersection(&k).dim() + 1 == d,
        "l(I + (0 : I)) = l(I) + l(0 : I) - l(I ∩ (0 : I)) = l(A) - 1",
        &mut checks,
    )?;
    let (s, s_embedding) = a.unital_subalgebra_embedded(&k)?;
    let (t, t_embedding) = a.unital_subalgebra_embedded(&i)?;
    verify(s.is_gorenstein() && t.is_gorenstein(), "both factors Gorenstein", &mut checks)?;
    verify(s.loewy_length() == a.loewy_length(), "lo(S) = lo(A)", &mut checks)?;
    verify(t.loewy_length() == 2, "lo(T) = 2", &mut checks)?;

    // socle generators of S and T mapping to the same δ in A
    let delta = a.socle_generator()?;
    let lead = delta.iter().position(|x| !f.is_zero(x)).expect("nonzero socle");
    let rescale = |b: &LocalAlgebra<F>, emb: &[Vec<F::Elem>]| -> Result<Vec<F::Elem>> {
        let g = b.socle_generator()?;
        let img = a.combine(&g, emb);
        let c = f.inv(&img[lead]).ok_or_else(|| Error::Verification("socle of a factor maps to zero".into()))?;
        let c = f.mul(&c, &delta[lead]);
        Ok(b.scale(&c, &g))
    };
    let delta_s = rescale(&s, &s_embedding)?;
    let delta_t = rescale(&t, &t_embedding)?;
    verify(
        a.combine(&delta_s, &s_embedding) == delta && a.combine(&delta_t, &t_embedding) == delta,
        "factor socles map to the socle of A",
        &mut checks,
    )?;
    let sum = connected_sum_along(&s, &t, delta_s, delta_t)?;
    let fp = &sum.fibre;
    // φ on the fibre product: 1 ↦ 1, m_S and m_T through their embeddings
    let mut phi_fp = vec![a.one(); fp.algebra.dim()];
    for (idx, &pos) in fp.embed_r.iter().enumerate() {
        phi_fp[pos] = s_embedding[idx + 1].clone();
    }
    for (idx, &pos) in fp.embed_s.iter().enumerate() {
        phi_fp[pos] = t_embedding[idx + 1].clone();
    }
    let apply = |v: &[F::Elem]| a.combine(v, &phi_fp);
    let fpa = &fp.algebra;
    let mut ok = true;
    for p in 0..fpa.dim() {
        for q in p..fpa.dim() {
            let lhs = apply(&fpa.mul(&fpa.basis_element(p), &fpa.basis_element(q)));
            ok &= lhs == a.mul(&phi_fp[p], &phi_fp[q]);
        }
    }
    verify(ok, "phi multiplicative on the fibre product", &mut checks)?;
    let image = Subspace::from_vectors(f, d, &phi_fp);
    verify(image.dim() == d, "phi surjective", &mut checks)?;
    let kernel = crate::linalg::kernel_basis(&DenseMatrix::from_columns(f, d, &phi_fp));
    let kernel = Subspace::from_vectors(f, fpa.dim(), &kernel);
    verify(kernel.same_as(&sum.line), "ker phi = <(delta_S, -delta_T)>", &mut checks)?;

    // induced map on S # T, checked on all basis pairs
    let q = &sum.algebra;
    let kept = sum.line.non_pivot_coordinates();
    let phi: Vec<Vec<F::Elem>> = kept.iter().map(|&c| phi_fp[c].clone()).collect();
    let apply_q = |v: &[F::Elem]| a.combine(v, &phi);
    let mut pairs = 0;
    let mut ok = true;
    for p in 0..q.dim() {
        for r in 0..q.dim() {
            let lhs = apply_q(&q.mul(&q.basis_element(p), &q.basis_element(r)));
            ok &= lhs == a.mul(&phi[p], &phi[r]);
            pairs += 1;
        }
    }
    verify(ok, "induced map multiplicative on S # T", &mut checks)?;
    verify(
        q.dim() == d && Subspace::from_vectors(f, d, &phi).dim() == d,
        "induced map bijective",
        &mut checks,
    )?;
    verify(q.dim() == s.dim() + t.dim() - 2, "l(S # T) = l(S) + l(T) - 2", &mut checks)?;
    Ok(DecompositionCertificate {
        s,
        t,
        s_embedding,
        t_embedding,
        i_generators: y,
        delta,
        sum,
        phi,
        checks,
        pairs_checked: pairs,
    })
}

/// Why factorization stopped at the last factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Terminal {
    LoAtMost2,
    CriterionIndecomposable { edim_at_most_4: bool },
}

#[derive(Clone, Debug)]
pub struct Factorization<F: Field> {
    /// Split-off `lo = 2` factors in order, then the remaining factor.
    pub factors: Vec<LocalAlgebra<F>>,
    pub certificates: Vec<DecompositionCertificate<F>>,
    pub terminal: Terminal,
}

/// Repeatedly splits off a Loewy length 2 factor while the criterion holds.
pub fn factorize<F: Field>(a: &LocalAlgebra<F>) -> Result<Factorization<F>> {
    let soc = a.socle().dim();
    if soc != 1 {
        return Err(Error::NotGorenstein { socle_dim: soc });
    }
    let mut cur = a.clone();
    let mut factors = Vec::new();
    let mut certificates = Vec::new();
    let terminal = loop {
        if cur.loewy_length() <= 2 {
            break Terminal::LoAtMost2;
        }
        if !socle_split_test(&cur)? {
            break Terminal::CriterionIndecomposable {
                edim_at_most_4: cur.edim() <= 4,
            };
        }
        let cert = split_connected_sum(&cur)?;
        factors.push(cert.t.clone());
        cur = cert.s.clone();
        certificates.push(cert);
    };
    factors.push(cur);
    Ok(Factorization {
        factors,
        certificates,
        terminal,
    })
}

/// Certificate that a Gorenstein ring of length ≤ 11 has edim ≤ 4, Loewy
/// length ≤ 2, or splits off a Loewy length 2 factor leaving a ring that
/// again has such a certificate.
#[derive(Clone, Debug)]
pub enum LengthElevenCertificate<F: Field> {
    EdimAtMost4 { edim: usize },
    LoAtMost2 { lo: usize },
    Split {
        split: Box<DecompositionCertificate<F>>,
        rest: Box<LengthElevenCertificate<F>>,
    },
}

impl<F: Field> LengthElevenCertificate<F> {
    /// Short description such as `split(lo=2) -> edim<=4 (edim 3)`.
    pub fn summary(&self) -> String {
        match self {
            Self::EdimAtMost4 { edim } => format!("edim<=4 (edim {edim})"),
            Self::LoAtMost2 { lo } => format!("lo<=2 (lo {lo})"),
            Self::Split { split, rest } => format!(
                "split off lo-2 factor of length {} -> {}",
                split.t.dim(),
                rest.summary()
            ),
        }
    }

    /// The factor with edim ≤ 4 or Loewy length ≤ 2 at the end of the chain.
    pub fn depth(&self) -> usize {
        match self {
            Self::Split { rest, .. } => 1 + rest.depth(),
            _ => 0,
        }
    }
}

/// Builds the length ≤ 11 certificate; larger rings are out of range.
pub fn multiplicity11_certificate<F: Field>(a: &LocalAlgebra<F>) -> Result<LengthElevenCertificate<F>> {
    let soc = a.socle().dim();
    if soc != 1 {
        return Err(Error::NotGorenstein { socle_dim: soc });
    }
    if a.dim() > 11 {
        return Err(Error::OutOfRange(format!("length {} exceeds 11", a.dim())));
    }
    certificate_inner(a)
}

fn certificate_inner<F: Field>(a: &LocalAlgebra<F>) -> Result<LengthElevenCertificate<F>> {
    if a.edim() <= 4 {
        return Ok(LengthElevenCertificate::EdimAtMost4 { edim: a.edim() });
    }
    if a.loewy_length() <= 2 {
        return Ok(LengthElevenCertificate::LoAtMost2 { lo: a.loewy_length() });
    }
    let split = split_connected_sum(a).map_err(|e| match e {
        Error::CriterionFails(m) => Error::Verification(format!(
            "edim >= 5 and lo >= 3 but the splitting criterion fails ({m}); this contradicts the length bound"
        )),
        other => other,
    })?;
    let rest = certificate_inner(&split.s)?;
    Ok(LengthElevenCertificate::Split {
        split: Box::new(split),
        rest: Box::new(rest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::tests::{alg, running_example};
    use crate::products::connected_sum;

    #[test]
    fn golden_split_of_running_example() {
        let r = running_example();
        assert!(socle_split_test(&r).unwrap());
        let c = split_connected_sum(&r).unwrap();
        assert_eq!(c.s, alg(&["x"], &["x^5"]));
        assert_eq!(c.t, alg(&["y"], &["y^3"]));
        assert_eq!(c.i_generators, vec![r.basis_element(2)]);
        assert_eq!(c.pairs_checked, 36);
        assert!(c.checks.iter().all(|(_, ok)| *ok));
        // I = span{y, x^4}, (0 : I) = span{x, x^2, x^3, x^4}
        assert_eq!(c.t_embedding, vec![r.basis_element(0), r.basis_element(2), r.basis_element(5)]);
        assert_eq!(c.s_embedding.len(), 5);
    }

    #[test]
    fn criterion_guards() {
        let a = alg(&["x"], &["x^4"]);
        assert!(!socle_split_test(&a).unwrap());
        assert!(matches!(split_connected_sum(&a), Err(Error::CriterionFails(_))));
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        assert!(matches!(socle_split_test(&c), Err(Error::Precondition(_))));
    }

    #[test]
    fn factorizations() {
        let a = alg(&["x"], &["x^4"]);
        let fz = factorize(&a).unwrap();
        assert_eq!(fz.factors.len(), 1);
        assert_eq!(fz.terminal, Terminal::CriterionIndecomposable { edim_at_most_4: true });
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!(factorize(&c).unwrap().terminal, Terminal::LoAtMost2);

        let x5 = alg(&["x"], &["x^5"]);
        let uv = alg(&["u", "v"], &["u^2", "v^2"]);
        let w3 = alg(&["w"], &["w^3"]);
        let q = connected_sum(&connected_sum(&x5, &uv).unwrap().algebra, &w3).unwrap().algebra;
        let fz = factorize(&q).unwrap();
        // both lo-2 pieces leave together as one factor k[u,v,w]-like of length 5
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.factors[0].hilbert_function(), vec![1, 3, 1]);
        assert_eq!(fz.factors[1], x5);
        assert_eq!(fz.terminal, Terminal::CriterionIndecomposable { edim_at_most_4: true });
    }

    #[test]
    fn length_eleven_certificates() {
        let r = running_example();
        assert!(matches!(
            multiplicity11_certificate(&r).unwrap(),
            LengthElevenCertificate::EdimAtMost4 { edim: 2 }
        ));
        // edim 5, lo 3: k[x]/(x^4) # k[u,v,w,z]/(quadrics) style sum
        let x4 = alg(&["x"], &["x^4"]);
        let t = alg(&["u", "v", "w", "z"], &["u^2 - v^2", "u^2 - w^2", "u^2 - z^2", "u*v", "u*w", "u*z", "v*w", "v*z", "w*z"]);
        let q = connected_sum(&x4, &t).unwrap().algebra;
        assert_eq!(q.dim(), 8);
        let cert = multiplicity11_certificate(&q).unwrap();
        assert_eq!(cert.depth(), 1);
        let big = alg(&["x"], &["x^12"]);
        assert!(matches!(multiplicity11_certificate(&big), Err(Error::OutOfRange(_))));
    }
}
