//! Closed forms and rationality checks for Poincare series.
//!
//! `cargo run --example poincare_checks`

use ringlab::io::parse_ring_file;
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};
use ringlab::resolution::PresentedModule;
use ringlab::series::{
    backelin_roos_denominator, check_denominator, check_deviation_divisibility, check_levin_socle,
    golod_certificate, power_quotient_poincare, residue_poincare, stretched_poincare,
};

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    let a = parse_ring_file("vars: x, y, z\ninverse_system: X^3 + Y^2 + Z^2\n")?.algebra(&f)?;
    let n = 10;
    println!("H = {:?}, {}", a.hilbert_function(), a.classify_stretch());
    println!("P_k = {}", residue_poincare(&a, n)?);

    let pred = stretched_poincare(&a)?;
    println!("closed form {}: {}", pred.formula, pred.verify(&a, n)?.summary());

    println!("socle quotient: {}", check_levin_socle(&a, n)?.summary());
    println!("golod: {}", golod_certificate(&a, n)?.verdict);

    for i in 2..=a.loewy_length() {
        let (q, p) = power_quotient_poincare(&a, i)?;
        println!("R/m^{i}: length {}, {}", q.dim(), p.verify(&q, n)?.summary());
    }

    let d = backelin_roos_denominator(&a)?;
    let k = PresentedModule::residue_field(&a);
    let rep = check_denominator(&a, &k, &d, n, None)?;
    println!("d(t) = {d}; d·P_k is a polynomial from t^{}: {}", rep.window_start, rep.passed);
    let div = check_deviation_divisibility(&a, &d, 3, n)?;
    println!("divisibility at level 3: {} (e = {:?})", div.passed, div.deviations);
    Ok(())
}
