//! Minimal free resolutions and Betti numbers of modules.
//!
//! `cargo run --example resolutions`

use ringlab::io::parse_ring_file;
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};
use ringlab::resolution::{betti_sequence, ext_dims, minimal_resolution, residue_betti, PresentedModule};
use ringlab::series::TruncatedSeries;

const TEXT: &str = "\
vars: x, y
relations: x*y, x^4 - y^2
module m: quotient x
";

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    let rf = parse_ring_file(TEXT)?;
    let a = rf.algebra(&f)?;

    let b = residue_betti(&a, 8)?;
    println!("betti(k)  = {b:?}");
    println!("P_k(t)    = {}", TruncatedSeries::from_counts(&b));

    let m = rf.module(&a, "m")?;
    println!("betti(A/x) = {:?}", betti_sequence(&a, &m, 8)?);

    // the full resolution carries its differentials and checks d∘d = 0
    let res = minimal_resolution(&a, &m, 4)?;
    res.verify(&a)?;
    println!("resolution of A/x verified through degree 4, ranks {:?}", res.betti);

    let k = PresentedModule::residue_field(&a);
    println!("dim Ext^i(A/x, k), i = 0..4: {:?}", ext_dims(&a, &m, &k, 0..=4)?);
    Ok(())
}
