//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use ringlab::algebra::LocalAlgebra;
use ringlab::corpus::{self, connected_sum_pairs, fibre_cases, gorenstein_corpus, random_cyclic_module, small_square_corpus};
use ringlab::decomposition::{multiplicity11_certificate, split_connected_sum, DecompositionCertificate};
use ringlab::linalg::{kernel_basis, DenseMatrix, Field, PrimeField, Rationals};
use ringlab::products::connected_sum;
use ringlab::resolution::{koszul_homology, poincare_pairing_check, residue_betti};
use ringlab::series::{
    backelin_roos_denominator, check_denominator, check_dress, check_levin_socle, deviations, residue_poincare,
    stretched_module_denominator, stretched_poincare, IntPoly, RationalFn, TruncatedSeries,
};

use common::{k, ring, running_example};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn golod_family() -> Outcome {
    let mut lines = Vec::new();
    for (vars, rels, base) in [
        (&["x", "y"][..], &["x^2", "x*y", "y^2"][..], 2usize),
        (&["x", "y", "z"][..], &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"][..], 3),
    ] {
        let start = Instant::now();
        let a = ring(vars, rels);
        let b = residue_betti(&a, 10).map_err(|e| e.to_string())?;
        let expected: Vec<usize> = (0..=10).map(|i| base.pow(i)).collect();
        ensure(b == expected, || format!("edim {base}: {b:?} != {expected:?}"))?;
        within(start, Duration::from_secs(10))?;
        lines.push(format!("{base}^i through i = 10 in {:.2?}", start.elapsed()));
    }
    Ok(lines.join("; "))
}

fn socle_quotient_formula() -> Outcome {
    let start = Instant::now();
    for (name, a) in [("k[x,y]/(x^2,y^2)", ring(&["x", "y"], &["x^2", "y^2"])), ("k[x,y]/(xy,x^4-y^2)", running_example())] {
        let c = check_levin_socle(&a, 12).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("{name}: {}", c.summary()))?;
    }
    within(start, Duration::from_secs(60))?;
    Ok("both rings agree through t^12".into())
}

fn fibre_product_formula() -> Outcome {
    let start = Instant::now();
    let cases = fibre_cases(&k(), 10, 3, 12, 31).map_err(|e| e.to_string())?;
    for c in &cases {
        let r = check_dress(&c.s.algebra, &c.t.algebra, Some(&c.module), 10).map_err(|e| e.to_string())?;
        let m = r.module.expect("module clause");
        ensure(r.ring.passed && m.passed, || {
            format!(
                "{} x {} with {}: ring {}, module {}",
                c.s.label,
                c.t.label,
                c.module_label,
                r.ring.summary(),
                m.summary()
            )
        })?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} fibre products, ring and module clauses through t^10", cases.len()))
}

/// The map `k[x]/(x^n) → S`, `x ↦ g`, is bijective and multiplicative on all
/// basis pairs.
fn is_truncated_chain<F: Field>(s: &LocalAlgebra<F>, g: &[F::Elem], n: usize) -> bool {
    let powers: Vec<Vec<F::Elem>> = (0..=2 * n).map(|i| s.pow(g, i as u32)).collect();
    let independent = DenseMatrix::from_columns(s.field(), s.dim(), &powers[..n]).rank() == n;
    let table = (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = if i + j < n { powers[i + j].clone() } else { s.zero() };
            s.mul(&powers[i], &powers[j]) == expected
        })
    });
    s.dim() == n && independent && table && s.is_zero_elem(&powers[n])
}

/// Products of embedded basis elements agree with the factor's table.
fn embedding_is_multiplicative<F: Field>(a: &LocalAlgebra<F>, s: &LocalAlgebra<F>, emb: &[Vec<F::Elem>]) -> bool {
    (0..s.dim()).all(|i| {
        (0..s.dim()).all(|j| {
            let prod = s.mul(&s.basis_element(i), &s.basis_element(j));
            a.mul(&emb[i], &emb[j]) == a.combine(&prod, emb)
        })
    })
}

fn certificate_ok<F: Field>(a: &LocalAlgebra<F>, c: &DecompositionCertificate<F>) -> Result<(), String> {
    ensure(c.checks.iter().all(|(_, ok)| *ok), || format!("failed checks {:?}", c.checks))?;
    ensure(c.pairs_checked == a.dim() * a.dim(), || {
        format!("phi checked on {} pairs, expected {}", c.pairs_checked, a.dim() * a.dim())
    })?;
    ensure(embedding_is_multiplicative(a, &c.s, &c.s_embedding), || "S embedding not multiplicative".into())?;
    ensure(embedding_is_multiplicative(a, &c.t, &c.t_embedding), || "T embedding not multiplicative".into())
}

fn decomposition_golden() -> Outcome {
    let start = Instant::now();
    let a = running_example();
    let c = split_connected_sum(&a).map_err(|e| e.to_string())?;
    certificate_ok(&a, &c)?;
    let gs = c.s.minimal_generators();
    let gt = c.t.minimal_generators();
    ensure(gs.len() == 1 && is_truncated_chain(&c.s, &gs[0], 5), || "S is not k[x]/(x^5)".into())?;
    ensure(gt.len() == 1 && is_truncated_chain(&c.t, &gt[0], 3), || "T is not k[y]/(y^3)".into())?;
    within(start, Duration::from_secs(1))?;
    Ok(format!(
        "S = k[x]/(x^5), T = k[y]/(y^3), phi multiplicative on {} basis pairs",
        c.pairs_checked
    ))
}

fn connected_sum_round_trip() -> Outcome {
    let start = Instant::now();
    let pairs = connected_sum_pairs(&k(), 50, 10, 5).map_err(|e| e.to_string())?;
    for (s, t) in &pairs {
        let who = || format!("{} # {}", s.label, t.label);
        let sum = connected_sum(&s.algebra, &t.algebra).map_err(|e| format!("{}: {e}", who()))?.algebra;
        let c = split_connected_sum(&sum).map_err(|e| format!("{}: {e}", who()))?;
        certificate_ok(&sum, &c).map_err(|e| format!("{}: {e}", who()))?;
        ensure(c.s.loewy_length() == s.algebra.loewy_length(), || format!("{}: Loewy length changed", who()))?;
        ensure(c.t.loewy_length() == 2, || format!("{}: T factor has Loewy length {}", who(), c.t.loewy_length()))?;
        ensure(sum.dim() + 2 == s.algebra.dim() + t.algebra.dim(), || format!("{}: length of the sum", who()))?;
        ensure(sum.dim() + 2 == c.s.dim() + c.t.dim(), || format!("{}: length of the factors", who()))?;
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!("{} seeded pairs split with verified phi", pairs.len()))
}

fn denominator_and_divisibility() -> Outcome {
    let start = Instant::now();
    let a = ring(&["x", "y"], &["x^2", "y^2"]);
    let d = backelin_roos_denominator(&a).map_err(|e| e.to_string())?;
    let one_minus_t2 = IntPoly::from_i64(&[1, 0, -1]);
    ensure(d == one_minus_t2.mul(&one_minus_t2), || format!("d_R = {d}"))?;
    let p = residue_poincare(&a, 12).map_err(|e| e.to_string())?;
    let prod = d.to_series(12).mul(&p);
    let target = TruncatedSeries::from_i64(&[1, 2, 1], 12);
    ensure(prod == target, || format!("d_R * P_k = {prod}"))?;
    let e = deviations(&p).map_err(|e| e.to_string())?;
    ensure(e[0] == 2, || format!("e_1 = {}", e[0]))?;
    let quotient = IntPoly::from_i64(&[1, 2, 1]);
    ensure(
        quotient.divides(&IntPoly::binomial_power(1, true, e[0] as u32)).map_err(|e| e.to_string())?,
        || "(1+t)^2 does not divide (1+t)^e1".into(),
    )?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("d_R = {d}, d_R * P_k = 1 + 2*t + t^2 through t^12, e_1 = 2"))
}

fn small_square_closed_forms() -> Outcome {
    let start = Instant::now();
    let corpus = small_square_corpus(&k(), 20, 14, 2024).map_err(|e| e.to_string())?;
    let mut rng = corpus::rng(99);
    let mut modules = 0;
    for s in &corpus {
        let a = &s.algebra;
        let n = a.edim() as i64;
        let pred = stretched_poincare(a).map_err(|e| format!("{}: {e}", s.label))?;
        let expected = RationalFn::inverse_of(IntPoly::from_i64(&[1, -n, 1])).unwrap();
        ensure(pred.formula == expected, || format!("{}: predicted {}", s.label, pred.formula))?;
        let c = pred.verify(a, 10).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("{}: {}", s.label, c.summary()))?;
        let d = stretched_module_denominator(a.edim());
        for _ in 0..3 {
            let (m, label) = random_cyclic_module(a, &mut rng);
            let r = check_denominator(a, &m, &d, 10, None).map_err(|e| e.to_string())?;
            ensure(r.passed, || {
                format!("{} with {label}: nonzero at {:?} from window {}", s.label, r.nonvanishing, r.window_start)
            })?;
            modules += 1;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} rings match 1/(1-nt+t^2) through t^10; {modules} modules vanish on [deg d + 1, 10]",
        corpus.len()
    ))
}

fn length_eleven_pipeline() -> Outcome {
    let start = Instant::now();
    let corpus = gorenstein_corpus(&k(), 100, 11, 8).map_err(|e| e.to_string())?;
    let mut splits = 0;
    for s in &corpus {
        let c = multiplicity11_certificate(&s.algebra).map_err(|e| format!("{}: {e}", s.label))?;
        splits += usize::from(c.depth() > 0);
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("{} algebras certified, {splits} through a split", corpus.len()))
}

fn random_matrix<F: Field>(f: &F, rng: &mut rand_chacha::ChaCha8Rng) -> DenseMatrix<F> {
    let rows = rng.random_range(1..=12);
    let cols = rng.random_range(1..=12);
    let rank_hint = rng.random_range(1..=rows.min(cols));
    // product of random factors, so that low ranks occur
    let left: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank_hint).map(|_| rng.random_range(-4..=4)).collect()).collect();
    let right: Vec<Vec<i64>> = (0..rank_hint).map(|_| (0..cols).map(|_| rng.random_range(-4..=4)).collect()).collect();
    let l = DenseMatrix::from_i64_rows(f, &left).unwrap();
    let r = DenseMatrix::from_i64_rows(f, &right).unwrap();
    l.mul_mat(&r).unwrap()
}

fn rank_nullity<F: Field>(f: &F, rng: &mut rand_chacha::ChaCha8Rng) -> Result<(), String> {
    let m = random_matrix(f, rng);
    let ker = kernel_basis(&m);
    ensure(m.rank() + ker.len() == m.cols(), || "rank + nullity != columns".into())?;
    for v in &ker {
        ensure(m.mul_vec(v).unwrap().iter().all(|x| f.is_zero(x)), || "kernel vector not in kernel".into())?;
    }
    Ok(())
}

fn structural_suites() -> Outcome {
    let start = Instant::now();
    let f = k();
    let mut members: Vec<(String, LocalAlgebra<PrimeField>)> = Vec::new();
    for s in gorenstein_corpus(&f, 100, 11, 8).map_err(|e| e.to_string())? {
        members.push((s.label, s.algebra));
    }
    for s in small_square_corpus(&f, 20, 14, 2024).map_err(|e| e.to_string())? {
        members.push((s.label, s.algebra));
    }
    for (s, t) in connected_sum_pairs(&f, 50, 10, 5).map_err(|e| e.to_string())? {
        let sum = connected_sum(&s.algebra, &t.algebra).map_err(|e| e.to_string())?;
        members.push((format!("{} # {}", s.label, t.label), sum.algebra));
        members.push((s.label, s.algebra));
        members.push((t.label, t.algebra));
    }
    members.push(("running example".into(), running_example()));
    let mut tables = 0;
    let mut dualities = 0;
    let mut pairings = 0;
    let mut quotients = 0;
    for (label, a) in &members {
        a.verify().map_err(|e| format!("{label}: {e}"))?;
        tables += 1;
        if !a.is_gorenstein() {
            continue;
        }
        let ranks = koszul_homology(a).ranks;
        let n = a.edim();
        ensure((0..=n).all(|i| ranks[i] == ranks[n - i]), || format!("{label}: Koszul ranks {ranks:?}"))?;
        if n >= 2 {
            let (ok, w) = poincare_pairing_check(a).map_err(|e| format!("{label}: {e}"))?;
            ensure(ok, || format!("{label}: pairing rank {} of {}", w.pairing_rank, w.h1))?;
            pairings += 1;
            for i in 2..=a.loewy_length() {
                let q = a.quotient(&a.ideal_power(i)).map_err(|e| e.to_string())?;
                ensure(!q.is_gorenstein(), || format!("{label}: R/m^{i} is Gorenstein"))?;
                quotients += 1;
            }
        }
        dualities += 1;
    }
    let mut rng = corpus::rng(17);
    for i in 0..100 {
        if i % 4 == 0 {
            rank_nullity(&Rationals, &mut rng)?;
        } else {
            rank_nullity(&f, &mut rng)?;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{tables} tables associative and commutative, 100 rank-nullity cases, {dualities} self-dual Koszul complexes, {pairings} perfect pairings, {quotients} power quotients not Gorenstein"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Golod family Betti numbers", golod_family),
        ("socle quotient Poincare series", socle_quotient_formula),
        ("fibre product Poincare series", fibre_product_formula),
        ("decomposition golden test", decomposition_golden),
        ("connected sum round trip", connected_sum_round_trip),
        ("Koszul denominator and deviation divisibility", denominator_and_divisibility),
        ("closed forms for mu(m^2) <= 2", small_square_closed_forms),
        ("length at most 11 certificates", length_eleven_pipeline),
        ("structural property suites", structural_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let t = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
