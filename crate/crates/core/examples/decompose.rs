//! Split connected sums apart and check the certificates.
//!
//! `cargo run --example decompose`

use ringlab::algebra::{build_algebra, parse_poly, Presentation};
use ringlab::decomposition::{factorize, multiplicity11_certificate, socle_split_test, split_connected_sum};
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};
use ringlab::products::connected_sum;

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    let vars = vec!["x".to_string(), "y".to_string()];
    let rels = ["x*y", "x^4 - y^2"].iter().map(|r| parse_poly(&f, &vars, r)).collect::<ringlab::Result<_>>()?;
    let a = build_algebra(&Presentation::new(&f, vars, rels))?;

    println!("splits: {}", socle_split_test(&a)?);
    let c = split_connected_sum(&a)?;
    println!("S: length {} lo {}", c.s.dim(), c.s.loewy_length());
    println!("T: length {} lo {}", c.t.dim(), c.t.loewy_length());
    for (name, ok) in &c.checks {
        println!("  [{}] {name}", if *ok { "ok" } else { "FAILED" });
    }
    println!("  phi multiplicative on {} basis pairs", c.pairs_checked);

    // a three-fold sum comes apart one Loewy length 2 factor at a time
    let s = c.s.clone();
    let b = connected_sum(&connected_sum(&s, &c.t)?.algebra, &c.t)?.algebra;
    let fact = factorize(&b)?;
    println!("three-fold sum of length {} factors as lengths {:?}, stopping at {:?}",
        b.dim(),
        fact.factors.iter().map(|x| x.dim()).collect::<Vec<_>>(),
        fact.terminal);

    let cert = multiplicity11_certificate(&a)?;
    println!("length 11 certificate: {}", cert.summary());
    Ok(())
}
