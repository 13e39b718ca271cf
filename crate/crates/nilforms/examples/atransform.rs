//! The a-transform: S_a = S + d d^T with d the entrywise square root of
//! the diagonal of S. It is always alternating, fixes alternating forms,
//! and the pairing x^T S_a y equals b(x,y) + sqrt(Q(x) Q(y)).
//!
//! Run with: cargo run --release --example atransform

use nilforms::field::FieldSpec;
use nilforms::form::BilinearForm;
use nilforms::matrix::Matrix;

fn main() {
    let gf2 = FieldSpec::gf2();
    let gf4 = FieldSpec::new(2, 7).expect("irreducible");

    for n in 2..=4usize {
        let form = BilinearForm::identity(gf2, n);
        let sa = form.a_transform();
        println!("a-transform of I_{n} over gf2:\n{sa}");
        assert!(sa.is_alternating().expect("square"));
    }

    let gram = Matrix::from_rows(gf4, &[vec![2, 1], vec![1, 3]]).expect("entries fit");
    let form = BilinearForm::new(gram).expect("symmetric");
    println!("a GF(4) gram:\n{}", form.gram());
    println!("its a-transform:\n{}", form.a_transform());

    let alternating = BilinearForm::hyperbolic(gf2, 2);
    assert_eq!(&alternating.a_transform(), alternating.gram());
    println!("alternating grams are fixed points of the a-transform");
}
