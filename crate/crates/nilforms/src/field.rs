//! Exact arithmetic in GF(2^k).
//!
//! Elements are polynomials over GF(2) stored as little-endian bit vectors,
//! reduced modulo a fixed irreducible polynomial. Every finite field of
//! characteristic 2 is perfect, so squaring is a bijection and each element
//! has a unique square root inside the field.

use crate::{Error, Result};
use std::fmt;

/// Irreducible modulus used for GF(2^k) when the caller does not supply one:
/// the lexicographically smallest irreducible polynomial of each degree,
/// encoded as little-endian coefficient bits. Index 0 holds degree 1.
pub const DEFAULT_MODULI: [u16; 8] = [
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b100_0011,  // x^6 + x + 1
    0b1000_0011, // x^7 + x + 1
    0b1_0001_1011, // x^8 + x^4 + x^3 + x + 1
];

/// Largest supported extension degree.
pub const MAX_DEGREE: u8 = 8;

/// An element of GF(2^k), valid only together with the [`FieldSpec`] it was
/// created for. The bit pattern is the little-endian coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Decimal bit representation; unambiguous and field-size independent.
        write!(f, "{}", self.0)
    }
}

/// Description of GF(2^k) by extension degree and irreducible modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u8,
    modulus: u16,
}

impl FieldSpec {
    /// The prime field GF(2).
    pub fn gf2() -> FieldSpec {
        FieldSpec { degree: 1, modulus: DEFAULT_MODULI[0] }
    }

    /// GF(2^k) with the shipped modulus for `degree` in 1..=8.
    pub fn with_default_modulus(degree: u8) -> Result<FieldSpec> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!(
                "degree {degree} outside supported range 1..={MAX_DEGREE}"
            )));
        }
        Ok(FieldSpec { degree, modulus: DEFAULT_MODULI[degree as usize - 1] })
    }

    /// GF(2^k) with a caller-supplied modulus, validated by trial division.
    pub fn new(degree: u8, modulus: u16) -> Result<FieldSpec> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidModulus(format!(
                "degree {degree} outside supported range 1..={MAX_DEGREE}"
            )));
        }
        if poly_degree(modulus as u32) != Some(degree as u32) {
            return Err(Error::InvalidModulus(format!(
                "modulus {modulus} does not have degree {degree}"
            )));
        }
        if modulus & 1 == 0 {
            return Err(Error::InvalidModulus(format!(
                "modulus {modulus} has zero constant term"
            )));
        }
        if !poly_is_irreducible(modulus as u32) {
            return Err(Error::InvalidModulus(format!("modulus {modulus} is reducible")));
        }
        Ok(FieldSpec { degree, modulus })
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// Number of field elements, 2^k.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn is_gf2(&self) -> bool {
        self.degree == 1
    }

    /// Checks that `bits` encodes an element of this field.
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.size() {
            return Err(Error::InvalidElement { bits, degree: self.degree });
        }
        Ok(FieldElement(bits as u16))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Addition is coefficientwise xor.
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Polynomial product reduced by the modulus.
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc: u32 = 0;
        let mut x = a.0 as u32;
        let mut y = b.0 as u32;
        while y != 0 {
            if y & 1 != 0 {
                acc ^= x;
            }
            x <<= 1;
            y >>= 1;
        }
        FieldElement(poly_reduce(acc, self.modulus as u32, self.degree as u32) as u16)
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// a^e by square-and-multiply.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, a^(2^k - 2).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("field inverse"));
        }
        Ok(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The unique square root, computed as a^(2^(k-1)) by k-1 squarings.
    /// Inverse of the Frobenius map, hence additive.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for _ in 1..self.degree {
            r = self.square(r);
        }
        r
    }

    /// All field elements in ascending bit order, starting with 0.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(|b| FieldElement(b as u16))
    }

    /// Parses `"gf2"` or `"gf(2^k):m=<decimal modulus bits>"`.
    pub fn parse(text: &str) -> Result<FieldSpec> {
        if text == "gf2" {
            return Ok(FieldSpec::gf2());
        }
        let rest = text
            .strip_prefix("gf(2^")
            .ok_or_else(|| Error::Parse(format!("bad field spec {text:?}")))?;
        let (deg_part, mod_part) = rest
            .split_once("):m=")
            .ok_or_else(|| Error::Parse(format!("bad field spec {text:?}")))?;
        let degree: u8 = deg_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in field spec {text:?}")))?;
        let modulus: u16 = mod_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in field spec {text:?}")))?;
        FieldSpec::new(degree, modulus)
    }
}

/// `Display` writes the parseable text form.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "gf2")
        } else {
            write!(f, "gf(2^{}):m={}", self.degree, self.modulus)
        }
    }
}

fn poly_degree(p: u32) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(31 - p.leading_zeros())
    }
}

fn poly_reduce(mut a: u32, modulus: u32, degree: u32) -> u32 {
    while let Some(d) = poly_degree(a) {
        if d < degree {
            break;
        }
        a ^= modulus << (d - degree);
    }
    a
}

fn poly_rem(a: u32, m: u32) -> u32 {
    let md = poly_degree(m).expect("nonzero divisor");
    let mut r = a;
    while let Some(d) = poly_degree(r) {
        if d < md {
            break;
        }
        r ^= m << (d - md);
    }
    r
}

/// Trial division by every polynomial of degree 1..=deg/2.
fn poly_is_irreducible(p: u32) -> bool {
    let deg = match poly_degree(p) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for d in 1..=deg / 2 {
        for q in (1u32 << d)..(1u32 << (d + 1)) {
            if poly_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldSpec {
        FieldSpec::new(2, 7).unwrap()
    }

    #[test]
    fn shipped_moduli_are_irreducible() {
        for (i, &m) in DEFAULT_MODULI.iter().enumerate() {
            let k = (i + 1) as u8;
            assert!(poly_is_irreducible(m as u32), "modulus {m} for degree {k}");
            assert_eq!(poly_degree(m as u32), Some(k as u32));
            assert_eq!(m & 1, 1, "constant term of {m}");
            // There is nothing irreducible below it of the same degree.
            for cand in (1u16 << k)..m {
                if cand & 1 == 1 {
                    assert!(!poly_is_irreducible(cand as u32), "{cand} beats {m}");
                }
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2
        assert!(matches!(FieldSpec::new(2, 0b101), Err(Error::InvalidModulus(_))));
        // degree mismatch
        assert!(matches!(FieldSpec::new(3, 0b111), Err(Error::InvalidModulus(_))));
        // zero constant term
        assert!(matches!(FieldSpec::new(2, 0b110), Err(Error::InvalidModulus(_))));
    }

    #[test]
    fn add_examples() {
        let f2 = FieldSpec::gf2();
        assert_eq!(f2.add(FieldElement(1), FieldElement(1)), FieldElement(0));
        let f4 = gf4();
        assert_eq!(f4.add(FieldElement(2), FieldElement(1)), FieldElement(3));
        for a in f4.elements() {
            assert_eq!(f4.add(a, FieldElement::ZERO), a);
        }
    }

    #[test]
    fn mul_and_inv_examples() {
        let f4 = gf4();
        // omega * omega = omega + 1, since x^2 = x + 1 mod x^2+x+1
        assert_eq!(f4.mul(FieldElement(2), FieldElement(2)), FieldElement(3));
        let f2 = FieldSpec::gf2();
        assert_eq!(f2.mul(FieldElement(1), FieldElement(1)), FieldElement(1));

        // Oracle for inverses: the exhaustive multiplication table.
        for a in f4.elements().skip(1) {
            let inv = f4
                .elements()
                .find(|&b| f4.mul(a, b) == FieldElement::ONE)
                .expect("every nonzero element is invertible");
            assert_eq!(f4.inv(a).unwrap(), inv);
        }
        assert_eq!(f4.inv(FieldElement(2)).unwrap(), FieldElement(3));
        assert!(matches!(f4.inv(FieldElement::ZERO), Err(Error::DivisionByZero(_))));
    }

    #[test]
    fn sqrt_examples() {
        let f2 = FieldSpec::gf2();
        assert_eq!(f2.sqrt(FieldElement(1)), FieldElement(1));
        // Oracle: square all four elements and invert the table.
        let f4 = gf4();
        for a in f4.elements() {
            let root = f4
                .elements()
                .find(|&r| f4.mul(r, r) == a)
                .expect("perfect field");
            assert_eq!(f4.sqrt(a), root);
        }
        assert_eq!(f4.sqrt(FieldElement(2)), FieldElement(3));
        assert_eq!(f4.sqrt(FieldElement::ZERO), FieldElement::ZERO);
    }

    #[test]
    fn enumerate_examples() {
        let f2 = FieldSpec::gf2();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![FieldElement(0), FieldElement(1)]);
        let f4 = gf4();
        assert_eq!(
            f4.elements().collect::<Vec<_>>(),
            vec![FieldElement(0), FieldElement(1), FieldElement(2), FieldElement(3)]
        );
        let f8 = FieldSpec::with_default_modulus(3).unwrap();
        assert_eq!(f8.elements().count(), 8);
    }

    #[test]
    fn field_laws_exhaustive() {
        // Small enough fields to check every identity on every element.
        for k in 1..=4u8 {
            let f = FieldSpec::with_default_modulus(k).unwrap();
            for a in f.elements() {
                assert_eq!(f.mul(f.sqrt(a), f.sqrt(a)), a);
                assert_eq!(f.sqrt(f.square(a)), a, "sqrt inverts Frobenius");
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for b in f.elements() {
                    assert_eq!(
                        f.sqrt(f.add(a, b)),
                        f.add(f.sqrt(a), f.sqrt(b)),
                        "sqrt additivity at k={k}"
                    );
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for text in ["gf2", "gf(2^2):m=7", "gf(2^3):m=11", "gf(2^8):m=283"] {
            let spec = FieldSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!(FieldSpec::parse("gf(2^2):m=5").is_err());
        assert!(FieldSpec::parse("gf3").is_err());
        assert!(FieldSpec::parse("gf(2^0):m=1").is_err());
    }
}
