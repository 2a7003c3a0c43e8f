//! Coefficient-level checks of Poincaré-series identities against
//! truncations computed from minimal resolutions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{IntPoly, RationalFn, TruncatedSeries};
use crate::algebra::LocalAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::products::fibre_product;
use crate::resolution::{betti_sequence, koszul_homology, residue_betti, PresentedModule};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientDiff {
    pub degree: usize,
    pub expected: String,
    pub computed: String,
}

/// One identity compared coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesCheck {
    pub name: String,
    pub passed: bool,
    pub through: usize,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
    pub mismatches: Vec<CoefficientDiff>,
}

impl SeriesCheck {
    pub fn compare(name: &str, expected: &TruncatedSeries, computed: &TruncatedSeries) -> Self {
        let n = expected.precision().min(computed.precision());
        let mismatches: Vec<CoefficientDiff> = (0..=n)
            .filter(|&i| expected.coeff(i) != computed.coeff(i))
            .map(|i| CoefficientDiff {
                degree: i,
                expected: expected.coeff(i).to_string(),
                computed: computed.coeff(i).to_string(),
            })
            .collect();
        SeriesCheck {
            name: name.to_string(),
            passed: mismatches.is_empty(),
            through: n,
            expected: expected.truncate(n).to_strings(),
            computed: computed.truncate(n).to_strings(),
            mismatches,
        }
    }

    /// `agree through t^N`, or the first differing coefficient.
    pub fn summary(&self) -> String {
        match self.mismatches.first() {
            None => format!("agree through t^{}", self.through),
            Some(d) => format!(
                "{} of {} coefficients differ; first at t^{}: expected {}, computed {}",
                self.mismatches.len(),
                self.through + 1,
                d.degree,
                d.expected,
                d.computed
            ),
        }
    }
}

/// `P^A_M` through `t^n`.
pub fn poincare_series<F: Field>(a: &LocalAlgebra<F>, m: &PresentedModule<F>, n: usize) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::from_counts(&betti_sequence(a, m, n)?))
}

/// `P^A_k` through `t^n`.
pub fn residue_poincare<F: Field>(a: &LocalAlgebra<F>, n: usize) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::from_counts(&residue_betti(a, n)?))
}

/// `κ(t) = Σ dim H_i(K^A) t^i`; also the Poincaré series of `A` over its
/// minimal Cohen presentation.
pub fn koszul_polynomial<F: Field>(a: &LocalAlgebra<F>) -> IntPoly {
    IntPoly::new(koszul_homology(a).ranks.iter().map(|&r| BigInt::from(r)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreProductReport {
    pub ring: SeriesCheck,
    pub module: Option<SeriesCheck>,
}

/// `1/P^R_k = 1/P^S_k + 1/P^T_k - 1` for `R = S ×_k T`, and, for an
/// `S`-module `M` viewed over `R`,
/// `1/P^R_M = (P^S_k / P^S_M)(1/P^S_k + 1/P^T_k - 1)`.
pub fn check_dress<F: Field>(
    s: &LocalAlgebra<F>,
    t: &LocalAlgebra<F>,
    module: Option<&PresentedModule<F>>,
    n: usize,
) -> Result<FibreProductReport> {
    let w = fibre_product(s, t)?;
    let r = &w.algebra;
    let ps = residue_poincare(s, n)?;
    let pt = residue_poincare(t, n)?;
    let pr = residue_poincare(r, n)?;
    let one = TruncatedSeries::one(n);
    let sum = ps.reciprocal()?.add(&pt.reciprocal()?).sub(&one);
    let ring = SeriesCheck::compare("fibre product, residue field", &sum, &pr.reciprocal()?);
    let module = match module {
        None => None,
        Some(m) => {
            // M over R through the projection R → S: m_T acts as zero
            let mut relations: Vec<Vec<Vec<F::Elem>>> = m
                .relations()
                .iter()
                .map(|col| col.iter().map(|e| w.map_r(e)).collect())
                .collect();
            for g in t.minimal_generators() {
                let img = w.map_s(&g);
                for b in 0..m.rank() {
                    let mut col = vec![r.zero(); m.rank()];
                    col[b] = img.clone();
                    relations.push(col);
                }
            }
            let mr = PresentedModule::new(r, m.rank(), relations)?;
            let psm = poincare_series(s, m, n)?;
            let prm = poincare_series(r, &mr, n)?;
            let rhs = ps.mul(&psm.reciprocal()?).mul(&sum);
            Some(SeriesCheck::compare("fibre product, module over the first factor", &rhs, &prm.reciprocal()?))
        }
    };
    Ok(FibreProductReport { ring, module })
}

/// `P^{A/soc}_k = P^A_k / (1 - t^2 P^A_k)` for Gorenstein `A` of edim ≥ 2.
pub fn check_levin_socle<F: Field>(a: &LocalAlgebra<F>, n: usize) -> Result<SeriesCheck> {
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein {
            socle_dim: a.socle().dim(),
        });
    }
    if a.edim() < 2 {
        return Err(Error::Precondition(format!("edim = {} < 2", a.edim())));
    }
    let p = residue_poincare(a, n)?;
    let quotient = a.quotient(&a.socle())?;
    let pq = residue_poincare(&quotient, n)?;
    let one = TruncatedSeries::one(n);
    let rhs = p.div(&one.sub(&p.shift(2)))?;
    Ok(SeriesCheck::compare("socle quotient", &rhs, &pq))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum GolodVerdict {
    /// `P^A_k` equals the upper bound through `through`. Evidence only: a
    /// finite truncation does not prove the structural property.
    NumericallyGolod { through: usize },
    /// `P^A_k` is strictly below the bound at `degree`.
    NotGolod { degree: usize },
    /// The computed series exceeded the bound, which should be impossible.
    Inconclusive { degree: usize },
}

impl std::fmt::Display for GolodVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GolodVerdict::NumericallyGolod { through } => write!(f, "equals the Golod bound through t^{through}"),
            GolodVerdict::NotGolod { degree } => write!(f, "below the Golod bound at t^{degree}, not Golod"),
            GolodVerdict::Inconclusive { degree } => write!(f, "exceeds the Golod bound at t^{degree}, inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GolodReport {
    pub verdict: GolodVerdict,
    pub bound: Vec<String>,
    pub computed: Vec<String>,
}

/// Compares `P^A_k` with `(1+t)^n / (1 - t(κ(t) - 1))`.
pub fn golod_certificate<F: Field>(a: &LocalAlgebra<F>, n: usize) -> Result<GolodReport> {
    let e = a.edim();
    let kappa = koszul_polynomial(a);
    let den = IntPoly::one().sub(&kappa.sub(&IntPoly::one()).mul(&IntPoly::monomial(1, 1)));
    let bound = RationalFn::new(IntPoly::binomial_power(1, true, e as u32), den)?.expand(n);
    let computed = residue_poincare(a, n)?;
    let verdict = match computed.first_difference(&bound) {
        None => GolodVerdict::NumericallyGolod { through: n },
        Some(d) if computed.coeff(d) < bound.coeff(d) => GolodVerdict::NotGolod { degree: d },
        Some(d) => GolodVerdict::Inconclusive { degree: d },
    };
    Ok(GolodReport {
        verdict,
        bound: bound.to_strings(),
        computed: computed.to_strings(),
    })
}

/// `d(t) = 1 - t(κ(t) - 1) + t^{n+1}(1 + t)` for Gorenstein `A` of edim
/// `n ≥ 2`.
pub fn backelin_roos_denominator<F: Field>(a: &LocalAlgebra<F>) -> Result<IntPoly> {
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein {
            socle_dim: a.socle().dim(),
        });
    }
    let n = a.edim();
    if n < 2 {
        return Err(Error::Precondition(format!("edim = {n} < 2")));
    }
    let kappa = koszul_polynomial(a);
    let t = IntPoly::monomial(1, 1);
    Ok(IntPoly::one()
        .sub(&t.mul(&kappa.sub(&IntPoly::one())))
        .add(&IntPoly::monomial(n + 1, 1).mul(&IntPoly::from_i64(&[1, 1]))))
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorReport {
    pub passed: bool,
    pub denominator: IntPoly,
    pub window_start: usize,
    pub through: usize,
    /// Coefficients of `d·P` below the window.
    pub polynomial_part: IntPoly,
    /// Degrees inside the window where `d·P` does not vanish.
    pub nonvanishing: Vec<usize>,
}

/// Default start of the vanishing window: `deg d + 1`, i.e. a numerator of
/// degree at most `deg d`. No general bound is available; pass an explicit
/// window when a module needs a longer polynomial part.
pub fn default_window(d: &IntPoly) -> usize {
    d.degree().unwrap_or(0) + 1
}

/// Checks that `d(t)·P(t)` vanishes in degrees `window_start..=precision`.
pub fn check_series_denominator(p: &TruncatedSeries, d: &IntPoly, window_start: usize) -> DenominatorReport {
    let n = p.precision();
    let prod = d.to_series(n).mul(p);
    let cut = window_start.min(n + 1);
    let part = prod
        .integers()
        .map(|c| IntPoly::new(c[..cut].to_vec()))
        .unwrap_or_default();
    let nonvanishing = prod.nonzero_from(cut);
    DenominatorReport {
        passed: nonvanishing.is_empty(),
        denominator: d.clone(),
        window_start,
        through: n,
        polynomial_part: part,
        nonvanishing,
    }
}

pub fn check_denominator<F: Field>(
    a: &LocalAlgebra<F>,
    m: &PresentedModule<F>,
    d: &IntPoly,
    n: usize,
    window_start: Option<usize>,
) -> Result<DenominatorReport> {
    let p = poincare_series(a, m, n)?;
    let w = window_start.unwrap_or_else(|| default_window(d));
    Ok(check_series_denominator(&p, d, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StretchedFamily {
    Field,
    /// Gorenstein of edim 1.
    Principal,
    /// Gorenstein with `μ(m^2) ≤ 2` and edim ≥ 2.
    GorensteinSmallSquare,
    /// Stretched with type equal to the embedding dimension.
    StretchedGolod,
    /// Stretched with type different from the embedding dimension.
    StretchedNonGolod,
    /// `R/m^i` for Gorenstein `R` with `μ(m^2) ≤ 2`.
    PowerQuotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub family: StretchedFamily,
    pub formula: RationalFn,
}

impl Prediction {
    /// Compares the closed form with the computed `P^A_k`.
    pub fn verify<F: Field>(&self, a: &LocalAlgebra<F>, n: usize) -> Result<SeriesCheck> {
        let computed = residue_poincare(a, n)?;
        Ok(SeriesCheck::compare("closed form for the residue field", &self.formula.expand(n), &computed))
    }
}

fn one_minus(n: usize, plus_t2: bool) -> IntPoly {
    IntPoly::from_i64(&[1, -(n as i64), if plus_t2 { 1 } else { 0 }])
}

/// Closed form of `P^A_k` for stretched rings and for Gorenstein rings with
/// `μ(m^2) ≤ 2`.
pub fn stretched_poincare<F: Field>(a: &LocalAlgebra<F>) -> Result<Prediction> {
    let n = a.edim();
    let mu2 = a.mu(&a.ideal_power(2));
    let (family, den) = if n == 0 {
        (StretchedFamily::Field, IntPoly::one())
    } else if a.is_gorenstein() && mu2 <= 2 {
        if n == 1 {
            (StretchedFamily::Principal, one_minus(1, false))
        } else {
            (StretchedFamily::GorensteinSmallSquare, one_minus(n, true))
        }
    } else if mu2 <= 1 {
        let r = a.socle().dim();
        if r == n {
            (StretchedFamily::StretchedGolod, one_minus(n, false))
        } else {
            (StretchedFamily::StretchedNonGolod, one_minus(n, true))
        }
    } else {
        return Err(Error::NoPrediction(format!(
            "not stretched (mu(m^2) = {mu2}) and not a Gorenstein ring with mu(m^2) <= 2"
        )));
    };
    Ok(Prediction {
        family,
        formula: RationalFn::inverse_of(den)?,
    })
}

/// Closed form `1/(1 - nt)` of `P_k` over `R/m^i`, `2 ≤ i ≤ lo(R)`, for
/// Gorenstein `R` with `μ(m^2) ≤ 2`.
pub fn power_quotient_poincare<F: Field>(r: &LocalAlgebra<F>, i: usize) -> Result<(LocalAlgebra<F>, Prediction)> {
    if !r.is_gorenstein() {
        return Err(Error::NotGorenstein {
            socle_dim: r.socle().dim(),
        });
    }
    let lo = r.loewy_length();
    let mu2 = r.mu(&r.ideal_power(2));
    if mu2 > 2 || lo < 2 || i < 2 || i > lo {
        return Err(Error::NoPrediction(format!(
            "needs mu(m^2) <= 2 and 2 <= i <= lo; here mu(m^2) = {mu2}, lo = {lo}, i = {i}"
        )));
    }
    let q = r.quotient(&r.ideal_power(i))?;
    let pred = Prediction {
        family: StretchedFamily::PowerQuotient,
        formula: RationalFn::inverse_of(one_minus(r.edim(), false))?,
    };
    Ok((q, pred))
}

/// `P_k` of `R # S` from `P^R_k` and `P^S_k`: pass to the socle quotients,
/// combine them as a fibre product and undo the socle quotient.
pub fn derive_connected_sum_poincare(pr: &TruncatedSeries, ps: &TruncatedSeries) -> Result<TruncatedSeries> {
    for p in [pr, ps] {
        if p.precision() >= 1 && p.coeff(1) < &BigRational::from_integer(BigInt::from(2)) {
            return Err(Error::Precondition(format!(
                "edim = {} < 2 in an input series",
                p.coeff(1)
            )));
        }
    }
    let n = pr.precision().min(ps.precision());
    let one = TruncatedSeries::one(n);
    let bar = |p: &TruncatedSeries| p.div(&one.sub(&p.shift(2)));
    let inv = bar(pr)?.reciprocal()?.add(&bar(ps)?.reciprocal()?).sub(&one);
    let pbar = inv.reciprocal()?;
    pbar.div(&one.add(&pbar.shift(2)))
}

/// Exponents `e_1..e_N` with `P = Π_{i odd}(1+t^i)^{e_i} / Π_{i even}(1-t^i)^{e_i}`.
pub fn deviations(p: &TruncatedSeries) -> Result<Vec<u64>> {
    let n = p.precision();
    if p.coeff(0) != &BigRational::from_integer(BigInt::from(1)) {
        return Err(Error::Series("constant term must be 1".into()));
    }
    let mut rem = p.clone();
    let mut e = Vec::with_capacity(n);
    for i in 1..=n {
        let c = rem.coeff(i);
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Series(format!(
                "series is not a Poincare series of a local ring to this degree: e_{i} = {c}"
            )));
        }
        let ei = c.to_integer().to_u64().ok_or_else(|| Error::Series("deviation too large".into()))?;
        if ei > 0 {
            let factor = IntPoly::binomial_power(i, i % 2 == 1, ei as u32).to_series(n);
            rem = if i % 2 == 1 { rem.div(&factor)? } else { rem.mul(&factor) };
        }
        e.push(ei);
    }
    Ok(e)
}

/// Inverse of [`deviations`].
pub fn product_from_deviations(e: &[u64], n: usize) -> Result<TruncatedSeries> {
    let mut p = TruncatedSeries::one(n);
    for (k, &ei) in e.iter().enumerate() {
        let i = k + 1;
        if ei == 0 || i > n {
            continue;
        }
        let factor = IntPoly::binomial_power(i, i % 2 == 1, ei as u32).to_series(n);
        p = if i % 2 == 1 { p.mul(&factor) } else { p.div(&factor)? };
    }
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub passed: bool,
    /// Whether `d·P_k` is a polynomial on the checked window.
    pub hypothesis_holds: bool,
    pub product: IntPoly,
    pub target: IntPoly,
    /// Deviation-formula values `e_1..e_N`.
    pub deviations: Vec<u64>,
    pub level: usize,
}

/// Tests that the polynomial `d(t)·P^A_k(t)` divides
/// `Π_{1 ≤ 2i+1 ≤ level}(1 + t^{2i+1})^{e_{2i+1}}`.
pub fn check_deviation_divisibility<F: Field>(
    a: &LocalAlgebra<F>,
    d: &IntPoly,
    level: usize,
    n: usize,
) -> Result<DivisibilityReport> {
    let p = residue_poincare(a, n)?;
    let den = check_series_denominator(&p, d, default_window(d));
    let e = deviations(&p)?;
    let mut target = IntPoly::one();
    for j in (1..=level.min(n)).step_by(2) {
        target = target.mul(&IntPoly::binomial_power(j, true, e[j - 1] as u32));
    }
    let passed = den.passed && !den.polynomial_part.is_zero() && den.polynomial_part.divides(&target)?;
    Ok(DivisibilityReport {
        passed,
        hypothesis_holds: den.passed,
        product: den.polynomial_part,
        target,
        deviations: e,
        level,
    })
}

/// `(1+t)^n (1 - nt + t^2)`, the common denominator for Gorenstein rings with
/// `μ(m^2) ≤ 2` and edim `n ≥ 2`; `1 - t` in edim 1.
pub fn stretched_module_denominator(n: usize) -> IntPoly {
    if n <= 1 {
        return IntPoly::from_i64(&[1, -1]);
    }
    IntPoly::binomial_power(1, true, n as u32).mul(&one_minus(n, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build::tests::{alg, running_example};
    use crate::products::connected_sum;

    #[test]
    fn fibre_product_of_dual_numbers() {
        let s = alg(&["x"], &["x^2"]);
        let t = alg(&["y"], &["y^2"]);
        let m = PresentedModule::cyclic(&s, &[s.basis_element(1)]);
        let rep = check_dress(&s, &t, Some(&m), 8).unwrap();
        assert!(rep.ring.passed, "{:?}", rep.ring);
        assert!(rep.module.unwrap().passed);
        let k = alg(&["x"], &["x"]);
        assert!(check_dress(&k, &k, None, 5).unwrap().ring.passed);
    }

    #[test]
    fn socle_quotient_identity() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        assert!(check_levin_socle(&c, 10).unwrap().passed);
        assert!(check_levin_socle(&running_example(), 10).unwrap().passed);
        assert!(check_levin_socle(&alg(&["x"], &["x^3"]), 5).is_err());
    }

    #[test]
    fn golod_verdicts() {
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(golod_certificate(&g, 8).unwrap().verdict, GolodVerdict::NumericallyGolod { through: 8 });
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        assert_eq!(golod_certificate(&c, 8).unwrap().verdict, GolodVerdict::NotGolod { degree: 3 });
        let k = alg(&["x"], &["x"]);
        assert_eq!(golod_certificate(&k, 4).unwrap().verdict, GolodVerdict::NumericallyGolod { through: 4 });
    }

    #[test]
    fn denominator_of_complete_intersection() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let d = backelin_roos_denominator(&c).unwrap();
        assert_eq!(d, IntPoly::from_i64(&[1, 0, -2, 0, 1]));
        let rep = check_denominator(&c, &PresentedModule::residue_field(&c), &d, 12, Some(3)).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.polynomial_part, IntPoly::from_i64(&[1, 2, 1]));
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert!(backelin_roos_denominator(&g).is_err());
    }

    #[test]
    fn principal_ring_denominator() {
        let a = alg(&["x"], &["x^3"]);
        let m = PresentedModule::cyclic(&a, &[a.pow(&a.basis_element(1), 2)]);
        let rep = check_denominator(&a, &m, &stretched_module_denominator(1), 8, None).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn closed_forms() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let p = stretched_poincare(&c).unwrap();
        assert_eq!(p.formula.den, IntPoly::from_i64(&[1, -2, 1]));
        assert!(p.verify(&c, 8).unwrap().passed);
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let p = stretched_poincare(&g).unwrap();
        assert_eq!(p.family, StretchedFamily::StretchedGolod);
        assert!(p.verify(&g, 8).unwrap().passed);
        let (q, p) = power_quotient_poincare(&running_example(), 3).unwrap();
        assert!(p.verify(&q, 8).unwrap().passed);
        let n = alg(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        assert!(matches!(stretched_poincare(&n), Err(Error::NoPrediction(_))));
    }

    #[test]
    fn connected_sum_series() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let q = connected_sum(&c, &c).unwrap().algebra;
        let p = residue_poincare(&c, 10).unwrap();
        let derived = derive_connected_sum_poincare(&p, &p).unwrap();
        assert_eq!(derived, residue_poincare(&q, 10).unwrap());
        let e1 = residue_poincare(&alg(&["x"], &["x^3"]), 6).unwrap();
        assert!(derive_connected_sum_poincare(&e1, &e1).is_err());
    }

    #[test]
    fn deviations_of_complete_intersection() {
        let p = RationalFn::inverse_of(IntPoly::from_i64(&[1, -2, 1])).unwrap().expand(10);
        let e = deviations(&p).unwrap();
        assert_eq!(e, vec![2, 2, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(product_from_deviations(&e, 10).unwrap(), p);
        assert_eq!(deviations(&TruncatedSeries::one(5)).unwrap(), vec![0; 5]);
        assert!(deviations(&TruncatedSeries::from_i64(&[1, 1, -3], 4)).is_err());
    }

    #[test]
    fn divisibility() {
        let c = alg(&["x", "y"], &["x^2", "y^2"]);
        let d = backelin_roos_denominator(&c).unwrap();
        let rep = check_deviation_divisibility(&c, &d, 2, 12).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.target, IntPoly::from_i64(&[1, 2, 1]));
        let g = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let rep = check_deviation_divisibility(&g, &IntPoly::one(), 2, 10).unwrap();
        assert!(!rep.hypothesis_holds && !rep.passed);
        let r = running_example();
        let d = backelin_roos_denominator(&r).unwrap();
        assert!(check_deviation_divisibility(&r, &d, 2, 12).unwrap().passed);
    }
}
