//! Classify a few symmetric bilinear forms over GF(2) and GF(4): rank,
//! Witt index, Ker Q / SKer Q dimensions, and the normal-basis invariants
//! (p, q, m) with their congruence witness.
//!
//! Run with: cargo run --release --example classify

use nilforms::field::FieldSpec;
use nilforms::form::BilinearForm;
use nilforms::matrix::Matrix;

fn describe(label: &str, form: &BilinearForm) {
    let inv = form.invariants();
    println!("== {label} (field {}, n = {})", form.field(), inv.n);
    println!("gram:\n{}", form.gram());
    println!(
        "rank = {}, witt index = {}, dim Ker Q = {}, dim SKer Q = {}, alternating = {}",
        inv.rank, inv.witt_index, inv.dim_ker_q, inv.dim_sker_q, inv.alternating
    );
    if form.is_nondegenerate() {
        let nb = form.normal_basis().expect("non-degenerate");
        println!(
            "normal invariants: p = {}, q = {}, m = {}",
            nb.p_count(),
            nb.q_count(),
            nb.m_count()
        );
        println!("congruence witness P (P^T S P is the block normal form):\n{}", nb.basis_change());
    }
    println!();
}

fn main() {
    let gf2 = FieldSpec::gf2();
    let gf4 = FieldSpec::new(2, 7).expect("x^2+x+1 is irreducible");

    describe("dot product, odd dimension", &BilinearForm::identity(gf2, 3));
    describe("dot product, even dimension", &BilinearForm::identity(gf2, 4));
    describe("hyperbolic plane", &BilinearForm::hyperbolic(gf2, 1));

    let mixed = Matrix::from_rows(
        gf4,
        &[vec![2, 1, 0], vec![1, 0, 1], vec![0, 1, 3]],
    )
    .expect("entries fit GF(4)");
    describe("a GF(4) form", &BilinearForm::new(mixed).expect("symmetric"));
}
