//! GF(2^m) arithmetic and the inner products used by the powering construction.

use abelian_qhash::gf2m::{dot_gf2, is_irreducible};
use abelian_qhash::{FieldGF2m, Result};

fn main() -> Result<()> {
    let f = FieldGF2m::new(4)?;
    println!("GF(16) modulo {:#b}", f.poly());
    println!("x * (x^3 + 1) = {:#06b}", f.mul(0b0010, 0b1001));

    // every nonzero element has order dividing 15
    let x = 0b0010;
    let powers: Vec<u32> = (0..15).map(|i| f.pow(x, i)).collect();
    println!("powers of x: {powers:?}");
    assert!((1..16).all(|u| f.pow(u, 15) == 1));

    let y = 0b1011;
    let bits: String = (0..8).map(|i| char::from(b'0' + dot_gf2(f.pow(x, i), y))).collect();
    println!("<x^i, y> for y = {y:#06b}, i < 8: {bits}");

    for p in [0b10011u32, 0b10101, 0b11111] {
        println!("{p:#b} irreducible: {}", is_irreducible(p));
    }
    Ok(())
}
