//! Run every verification oracle against a constructed space: the kind
//! certificate, exhaustive nilpotency, trace orthogonality, the flag
//! certificate, and the tensor orthogonality laws.
//!
//! The bordered odd-dimensional space is the interesting case: it is
//! provably nilpotent but admits no flag certificate, so the complete and
//! the sound-only oracle legitimately disagree about certification.
//!
//! Run with: cargo run --release --example verify_space

use nilforms::constructions::construct_special_odd;
use nilforms::field::FieldSpec;
use nilforms::matrix::Matrix;
use nilforms::verify::{
    check_kind, flag_certificate, nilpotency_exhaustive, nilpotency_sample,
    orthogonality_lemmas_check, trace_orthogonality,
};

fn main() {
    let gf2 = FieldSpec::gf2();
    let space = construct_special_odd(2, gf2);
    println!(
        "space: {} basis matrices over a {}-dimensional form, kind {}",
        space.dimension(),
        space.n(),
        space.kind().as_str()
    );

    let kind = check_kind(&space);
    println!("kind certificate: {}", kind.status.as_str());

    let nilpotency = nilpotency_exhaustive(&space, 10_000_000);
    println!(
        "exhaustive nilpotency: {} ({} combinations)",
        nilpotency.status.as_str(),
        nilpotency.stats.combinations_tested
    );

    let sampled = nilpotency_sample(&space, 5000, 42);
    println!(
        "sampled nilpotency: {} ({} trials; sampling alone never proves)",
        sampled.status.as_str(),
        sampled.stats.combinations_tested
    );

    let trace = trace_orthogonality(&space).expect("conformable");
    println!("trace orthogonality: {}", trace.status.as_str());

    match flag_certificate(&space).expect("conformable") {
        Some(chain) => println!("flag certificate: present, {} steps", chain.len() - 1),
        None => println!("flag certificate: absent (yet the space IS nilpotent)"),
    }

    let x = Matrix::unit_column(gf2, space.n(), 1);
    let ortho = orthogonality_lemmas_check(&space, &x).expect("preconditions hold");
    println!(
        "tensor orthogonality laws at an isotropic x: {} ({} checks)",
        ortho.status.as_str(),
        ortho.stats.combinations_tested
    );
}
