//! Exhaustively search for the maximum nilpotent subspace of the
//! b-symmetric and b-alternating matrices at desk scale, and compare with
//! the dimension formula.
//!
//! Run with: cargo run --release --example search_small

use nilforms::constructions::SpaceKind;
use nilforms::field::FieldSpec;
use nilforms::form::BilinearForm;
use nilforms::verify::{search_max_nilpotent, theorem_bound};

fn main() {
    let gf2 = FieldSpec::gf2();
    for n in 1..=4usize {
        let form = BilinearForm::identity(gf2, n);
        let inv = form.invariants();
        for kind in [SpaceKind::BSymmetric, SpaceKind::BAlternating] {
            let outcome =
                search_max_nilpotent(&form, kind, 100_000_000).expect("gf2, non-degenerate");
            let bound = theorem_bound(kind, inv.n, inv.witt_index, inv.dim_sker_q);
            println!(
                "I_{n} {}: searched max = {} (formula {}), complete = {}, nodes = {}",
                kind.as_str(),
                outcome.max_dim,
                bound,
                outcome.complete,
                outcome.stats.nodes
            );
        }
    }
    println!();
    println!("witness for I_4 sym, first basis matrix:");
    let outcome = search_max_nilpotent(
        &BilinearForm::identity(gf2, 4),
        SpaceKind::BSymmetric,
        100_000_000,
    )
    .expect("gf2, non-degenerate");
    println!("{}", outcome.witness.basis()[0]);
}
