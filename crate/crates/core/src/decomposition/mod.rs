//! Connected-sum decompositions of Gorenstein local algebras.

pub mod normalize;
pub mod principal;
pub mod split;

pub use normalize::{check_normal_form, normalize_split_generators, GeneratorNormalForm};
pub use principal::{exhaustive_principal_hypothesis, principal_multiple_generator, principal_reduction_of_m2};
pub use split::{
    factorize, multiplicity11_certificate, socle_split_test, split_connected_sum, DecompositionCertificate,
    Factorization, LengthElevenCertificate, Terminal,
};
