//! Fibre products and connected sums, with the Poincare series relation
//! between a fibre product and its factors.
//!
//! `cargo run --example products`

use ringlab::io::{parse_ring_file, RingFile};
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};
use ringlab::products::{connected_sum, fibre_product};
use ringlab::resolution::PresentedModule;
use ringlab::series::check_dress;

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    let s = parse_ring_file("vars: x, y\nrelations: x^2, y^2\n")?.algebra(&f)?;
    let t = parse_ring_file("vars: z\nrelations: z^3\n")?.algebra(&f)?;

    let fp = fibre_product(&s, &t)?;
    println!("fibre product, length {}:", fp.algebra.dim());
    print!("{}", RingFile::from_algebra(&fp.algebra));

    let cs = connected_sum(&s, &t)?;
    println!("connected sum, length {}:", cs.algebra.dim());
    print!("{}", RingFile::from_algebra(&cs.algebra));

    let x = s.generators()[0].clone();
    let m = PresentedModule::cyclic(&s, &[x]);
    let r = check_dress(&s, &t, Some(&m), 10)?;
    println!("residue field: {}", r.ring.summary());
    if let Some(c) = r.module {
        println!("S/(x) over the product: {}", c.summary());
    }
    Ok(())
}
