//! Seeded random examples: inverse systems and the reproducible corpora.
//!
//! `cargo run --example corpus -- [seed]`

use ringlab::algebra::dual_names;
use ringlab::corpus::{connected_sum_pairs, gorenstein_corpus, gorenstein_from_dual, random_inverse_system, variable_names};
use ringlab::io::RingFile;
use ringlab::linalg::{PrimeField, DEFAULT_PRIME};

fn main() -> ringlab::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let f = PrimeField::new(DEFAULT_PRIME)?;

    let dual = random_inverse_system(&f, 3, 3, seed)?;
    println!("F = {}", dual.format(&f, &dual_names(&variable_names(3))));
    let a = gorenstein_from_dual(&f, &dual)?;
    print!("{}", RingFile::from_algebra(&a));

    println!("Gorenstein corpus, length at most 11:");
    for s in gorenstein_corpus(&f, 8, 11, seed)? {
        println!("  H = {:?}", s.algebra.hilbert_function());
    }
    println!("connected sum pairs:");
    for (s, t) in connected_sum_pairs(&f, 3, 10, seed)? {
        println!("  H(S) = {:?}, H(T) = {:?}", s.algebra.hilbert_function(), t.algebra.hilbert_function());
    }
    Ok(())
}
