//! Arithmetic in GF(2^m) for 1 <= m <= 16.
//!
//! Field elements are `u32` coefficient vectors, bit `i` holding the
//! coefficient of `x^i`. The reduction polynomial is stored with its leading
//! `x^m` bit included.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 16;

/// Pinned low-weight irreducible polynomials, indexed by `m - 1`.
const DEFAULT_POLYS: [u32; 16] = [
    0b11,    // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11B,   // x^8 + x^4 + x^3 + x + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct FieldGF2m {
    m: u32,
    poly: u32,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    m: u32,
    poly: u32,
}

impl TryFrom<FieldRepr> for FieldGF2m {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        FieldGF2m::with_poly(r.m, r.poly)
    }
}

impl From<FieldGF2m> for FieldRepr {
    fn from(f: FieldGF2m) -> Self {
        FieldRepr { m: f.m, poly: f.poly }
    }
}

impl FieldGF2m {
    /// GF(2^m) with the pinned default polynomial.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree {m} outside 1..={MAX_DEGREE}"
            )));
        }
        Self::with_poly(m, DEFAULT_POLYS[m as usize - 1])
    }

    /// GF(2^m) reduced by `poly`, which must have degree exactly `m` and be
    /// irreducible.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "extension degree {m} outside 1..={MAX_DEGREE}"
            )));
        }
        if degree(poly) != Some(m) {
            return Err(Error::InvalidParameter(format!(
                "polynomial {poly:#x} does not have degree {m}"
            )));
        }
        if !is_irreducible(poly) {
            return Err(Error::InvalidParameter(format!(
                "polynomial {poly:#x} is reducible over GF(2)"
            )));
        }
        Ok(FieldGF2m { m, poly })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// `2^m`.
    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn contains(&self, u: u32) -> bool {
        u < self.size()
    }

    pub fn mul(&self, u: u32, v: u32) -> u32 {
        debug_assert!(self.contains(u) && self.contains(v));
        reduce(clmul(u, v), self.poly, self.m)
    }

    /// `u^e` by square-and-multiply; `pow(u, 0) = 1` including `u = 0`.
    pub fn pow(&self, u: u32, mut e: u64) -> u32 {
        let mut base = u;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Inner product over GF(2) of two coefficient vectors.
pub fn dot_gf2(u: u32, v: u32) -> u8 {
    ((u & v).count_ones() & 1) as u8
}

fn degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Carry-less product of two polynomials of degree < 32.
fn clmul(u: u32, v: u32) -> u64 {
    let (mut a, mut b) = (u as u64, v);
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

fn reduce(mut p: u64, poly: u32, m: u32) -> u32 {
    let poly = poly as u64;
    while p >> m != 0 {
        let shift = 63 - p.leading_zeros() - m;
        p ^= poly << shift;
    }
    p as u32
}

/// Remainder of `a` modulo `b` over GF(2).
fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b).expect("nonzero divisor");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(d) = degree(poly) else { return false };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for tail in 0..(1u32 << dd) {
            if poly_rem(poly, (1 << dd) | tail) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    /// Schoolbook multiply then long-division reduce, written independently
    /// of `clmul`/`reduce`.
    fn naive_mul(u: u32, v: u32, poly: u32, m: u32) -> u32 {
        let mut coeffs = vec![0u8; 2 * m as usize];
        for i in 0..m {
            for j in 0..m {
                coeffs[(i + j) as usize] ^= (((u >> i) & 1) & ((v >> j) & 1)) as u8;
            }
        }
        for k in (m as usize..coeffs.len()).rev() {
            if coeffs[k] == 1 {
                for t in 0..=m as usize {
                    coeffs[k - m as usize + t] ^= ((poly >> t) & 1) as u8;
                }
            }
        }
        (0..m as usize).fold(0, |acc, i| acc | (coeffs[i] as u32) << i)
    }

    #[test]
    fn default_polynomials_are_irreducible() {
        for m in 1..=MAX_DEGREE {
            let f = FieldGF2m::new(m).unwrap();
            assert_eq!(f.degree(), m);
        }
        assert_eq!(FieldGF2m::new(2).unwrap().poly(), 0b111);
        assert_eq!(FieldGF2m::new(8).unwrap().poly(), 0x11B);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldGF2m::new(0).is_err());
        assert!(FieldGF2m::new(17).is_err());
        // x^2 + 1 = (x + 1)^2
        assert!(FieldGF2m::with_poly(2, 0b101).is_err());
        assert!(FieldGF2m::with_poly(3, 0b111).is_err());
        assert!(FieldGF2m::with_poly(4, 0b11111).is_ok());
    }

    #[test]
    fn gf4_example() {
        let f = FieldGF2m::new(2).unwrap();
        assert_eq!(naive_mul(0b10, 0b11, 0b111, 2), 0b01);
        assert_eq!(f.mul(0b10, 0b11), 0b01);
    }

    #[test]
    fn zero_and_one() {
        for m in [1, 3, 8, 16] {
            let f = FieldGF2m::new(m).unwrap();
            for u in [0, 1, f.size() - 1, (f.size() / 2 + 1) % f.size()] {
                assert_eq!(f.mul(u, 0), 0);
                assert_eq!(f.mul(u, 1), u);
                assert_eq!(f.pow(u, 0), 1);
            }
        }
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot_gf2(0b101, 0b111), 0);
        assert_eq!(dot_gf2(0b1101, 0), 0);
        assert_eq!(dot_gf2(1, 1), 1);
    }

    #[test]
    fn field_axioms_small() {
        for m in 1..=4 {
            let f = FieldGF2m::new(m).unwrap();
            let n = f.size();
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_order() {
        for m in 1..=8 {
            let f = FieldGF2m::new(m).unwrap();
            let q = (f.size() - 1) as u64;
            for u in 1..f.size() {
                assert_eq!(f.pow(u, q), 1, "m={m} u={u}");
            }
        }
    }

    #[test]
    fn agrees_with_naive_oracle() {
        let mut rng = crate::rng::seeded(42);
        for m in [8, 12, 16] {
            let f = FieldGF2m::new(m).unwrap();
            for _ in 0..10_000 {
                let u = rng.gen_range(0..f.size());
                let v = rng.gen_range(0..f.size());
                assert_eq!(f.mul(u, v), naive_mul(u, v, f.poly(), m));
            }
        }
    }

    #[test]
    fn json_shape() {
        let f = FieldGF2m::new(3).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"m":3,"poly":11}"#);
        assert!(serde_json::from_str::<FieldGF2m>(r#"{"m":2,"poly":5}"#).is_err());
    }
}
