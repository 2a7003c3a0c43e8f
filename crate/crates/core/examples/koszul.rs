//! Koszul homology, its self-duality on Gorenstein rings and the
//! `H_1 × H_{n-1}` pairing.
//!
//! `cargo run --example koszul`

use ringlab::io::parse_ring_file;
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};
use ringlab::resolution::{koszul_homology, poincare_pairing_check};
use ringlab::series::koszul_polynomial;

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    for (name, text) in [
        ("k[x,y,z]/(x^2, y^2, z^2)", "vars: x, y, z\nrelations: x^2, y^2, z^2\n"),
        ("Ann(X^2*Y + Y*Z^2 + Z^3)", "vars: x, y, z\ninverse_system: X^2*Y + Y*Z^2 + Z^3\n"),
        ("k[x,y]/(x, y)^2", "vars: x, y\nrelations: x^2, x*y, y^2\n"),
    ] {
        let a = parse_ring_file(text)?.algebra(&f)?;
        let h = koszul_homology(&a);
        println!("{name}");
        println!("  Koszul ranks {:?}", h.ranks);
        println!("  kappa(t) = {}", koszul_polynomial(&a));
        if a.is_gorenstein() && a.edim() >= 2 {
            let (ok, w) = poincare_pairing_check(&a)?;
            println!("  pairing perfect: {ok} (h1 = {}, rank {})", w.h1, w.pairing_rank);
        }
    }
    Ok(())
}
