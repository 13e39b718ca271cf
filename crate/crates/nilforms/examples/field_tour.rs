//! A short tour of GF(2^k) arithmetic: multiplication tables, inverses,
//! and the additive square root that powers the Ker Q and a-transform
//! computations.
//!
//! Run with: cargo run --release --example field_tour

use nilforms::field::FieldSpec;

fn main() {
    let gf4 = FieldSpec::new(2, 7).expect("x^2+x+1 is irreducible");
    println!("GF(4) as {} (elements printed as decimal bit patterns)", gf4);
    println!("multiplication table:");
    for a in gf4.elements() {
        let row: Vec<String> =
            gf4.elements().map(|b| gf4.mul(a, b).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    for a in gf4.elements().skip(1) {
        println!("  inv({a}) = {}", gf4.inv(a).expect("nonzero"));
    }

    let gf8 = FieldSpec::with_default_modulus(3).expect("shipped modulus");
    println!();
    println!("GF(8) as {}: every element has a unique square root", gf8);
    for a in gf8.elements() {
        let r = gf8.sqrt(a);
        assert_eq!(gf8.mul(r, r), a);
        println!("  sqrt({a}) = {r}");
    }

    // The square root is additive: it inverts the Frobenius automorphism.
    for a in gf8.elements() {
        for b in gf8.elements() {
            assert_eq!(gf8.sqrt(gf8.add(a, b)), gf8.add(gf8.sqrt(a), gf8.sqrt(b)));
        }
    }
    println!("sqrt(a + b) = sqrt(a) + sqrt(b) checked on all of GF(8)");

    // Rejected moduli are reported with the reason.
    match FieldSpec::new(2, 0b101) {
        Err(e) => println!("x^2 + 1 rejected as expected: {e}"),
        Ok(_) => unreachable!("x^2 + 1 factors as (x+1)^2"),
    }
}
