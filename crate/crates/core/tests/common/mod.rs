#![allow(dead_code)]

use ringlab::algebra::{build_algebra, parse_poly, LocalAlgebra, Presentation};
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};

pub fn k() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

/// `k[vars]/(rels)` over the default prime field.
pub fn ring(vars: &[&str], rels: &[&str]) -> LocalAlgebra<PrimeField> {
    let f = k();
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let rels = rels.iter().map(|r| parse_poly(&f, &vars, r).unwrap()).collect();
    build_algebra(&Presentation::new(&f, vars, rels)).unwrap()
}

/// `k[x,y]/(xy, x^4 - y^2)`.
pub fn running_example() -> LocalAlgebra<PrimeField> {
    ring(&["x", "y"], &["x*y", "x^4 - y^2"])
}
