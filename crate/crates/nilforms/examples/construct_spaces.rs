//! Build the extremal nilpotent spaces for a handful of forms and compare
//! their dimensions with the expected values nu(n-nu), nu(n-nu-1), and
//! nu(n-nu) - dim SKer Q.
//!
//! Run with: cargo run --release --example construct_spaces

use nilforms::constructions::{
    construct_general, construct_general_odd, construct_special_odd, Coords, SpaceKind,
};
use nilforms::field::FieldSpec;
use nilforms::form::BilinearForm;

fn main() {
    let gf2 = FieldSpec::gf2();

    for n in 2..=6usize {
        let form = BilinearForm::identity(gf2, n);
        let nb = form.normal_basis().expect("non-degenerate");
        let nu = nb.nu();
        let sym = construct_general(&nb, form.gram(), SpaceKind::BSymmetric, Coords::Original)
            .expect("construction");
        println!(
            "I_{n}: b-symmetric space of dimension {} (nu(n-nu) = {})",
            sym.dimension(),
            nu * (n - nu)
        );
        if nb.p_count() == 1 {
            let alt = construct_general_odd(&nb, form.gram(), Coords::Original)
                .expect("odd construction");
            println!(
                "I_{n}: b-alternating space of dimension {} (nu(n-nu) - dim SKer Q = {})",
                alt.dimension(),
                nu * (n - nu) - nb.q_count()
            );
        } else {
            let alt =
                construct_general(&nb, form.gram(), SpaceKind::BAlternating, Coords::Original)
                    .expect("construction");
            println!(
                "I_{n}: b-alternating space of dimension {} (nu(n-nu-1) = {})",
                alt.dimension(),
                nu * (n - nu - 1)
            );
        }
    }

    println!();
    for m in 1..=3usize {
        let space = construct_special_odd(m, gf2);
        println!(
            "bordered space over I_1 + H_{}: dimension {} = m(m+1), first basis element:",
            2 * m,
            space.dimension()
        );
        println!("{}", space.basis()[0]);
    }
}
