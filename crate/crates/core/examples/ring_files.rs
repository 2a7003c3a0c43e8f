//! Parse a ring file, build the algebra it describes, and print it back.
//!
//! `cargo run --example ring_files`

use ringlab::io::parse_ring_file;
use ringlab::linalg::{PrimeField, Rationals, DEFAULT_PRIME};

const TEXT: &str = "\
# the running example
field: GF(32003)
vars: x, y
relations: x*y, x^4 - y^2
module m: quotient x
module n: matrix
  x, y^2
  0, x
";

const DUAL: &str = "\
field: QQ
vars: x, y, z
inverse_system: X^2*Y + Y*Z^2
  + Z^3
";

fn main() -> ringlab::Result<()> {
    let rf = parse_ring_file(TEXT)?;
    let a = rf.algebra(&PrimeField::new(DEFAULT_PRIME)?)?;
    println!("dim {} edim {} lo {}", a.dim(), a.edim(), a.loewy_length());
    println!("basis {:?}", a.labels());
    for name in rf.module_names() {
        let m = rf.module(&a, &name)?;
        println!("module {name}: rank {} with {} relations", m.rank(), m.relations().len());
    }
    print!("normalized:\n{rf}");

    let g = parse_ring_file(DUAL)?.algebra(&Rationals)?;
    println!("inverse system over QQ: H = {:?}, Gorenstein {}", g.hilbert_function(), g.is_gorenstein());
    Ok(())
}
