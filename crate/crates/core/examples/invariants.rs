//! Basic invariants of a few local algebras: Hilbert function, socle,
//! stretch class and a minimal presentation.
//!
//! `cargo run --example invariants`

use ringlab::algebra::{build_algebra, parse_poly, LocalAlgebra, Presentation};
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};

fn ring(f: &PrimeField, vars: &[&str], rels: &[&str]) -> ringlab::Result<LocalAlgebra<PrimeField>> {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let rels = rels.iter().map(|r| parse_poly(f, &vars, r)).collect::<ringlab::Result<_>>()?;
    build_algebra(&Presentation::new(f, vars, rels))
}

fn main() -> ringlab::Result<()> {
    let f = PrimeField::new(DEFAULT_PRIME)?;
    let rings = [
        ("k[x,y]/(xy, x^4 - y^2)", ring(&f, &["x", "y"], &["x*y", "x^4 - y^2"])?),
        ("k[x,y,z]/(x^2, y^2, z^2)", ring(&f, &["x", "y", "z"], &["x^2", "y^2", "z^2"])?),
        ("k[x,y]/(x^2, xy, y^3)", ring(&f, &["x", "y"], &["x^2", "x*y", "y^3"])?),
    ];
    for (name, a) in &rings {
        println!("{name}");
        println!("  length {}  edim {}  lo {}", a.dim(), a.edim(), a.loewy_length());
        println!("  H = {:?}", a.hilbert_function());
        let soc = a.socle();
        println!("  socle dim {}  Gorenstein {}", soc.dim(), a.is_gorenstein());
        for v in soc.basis() {
            println!("    {}", a.format_element(v));
        }
        println!("  {}", a.classify_stretch());
        let p = a.minimal_presentation();
        let rels: Vec<String> = p.relations.iter().map(|r| r.format(&f, &p.vars)).collect();
        println!("  minimal relations: {}", rels.join(", "));
    }
    Ok(())
}
