//! Elements, enumeration order and character values of Z_3 x Z_4.

use abelian_qhash::{AbelianGroup, Result};

fn main() -> Result<()> {
    let g = AbelianGroup::new(vec![3, 4])?;
    println!("group Z_3 x Z_4: order {}, exponent {}", g.order(), g.exponent());

    let a = g.element(vec![1, 3])?;
    let b = g.element(vec![2, 2])?;
    println!("{a} + {b} = {}", g.add(&a, &b)?);
    println!("-{a} = {}", g.neg(&a)?);
    println!("index of {b} = {}", g.index_of(&b));

    // chi_a is multiplicative: chi_a(x + y) = chi_a(x) chi_a(y)
    let x = g.element(vec![1, 1])?;
    let lhs = g.character_value(&a, &g.add(&x, &b)?)?;
    let rhs = g.character_value(&a, &x)? * g.character_value(&a, &b)?;
    println!("chi_a(x+b) = {lhs:.6}, chi_a(x) chi_a(b) = {rhs:.6}");

    print!("chi_{a} over the group:");
    for x in g.enumerate()? {
        let z = g.character_value(&a, &x)?;
        print!(" {:+.3}{:+.3}i", z.re, z.im);
    }
    println!();

    let cube = AbelianGroup::boolean_cube(3)?;
    let u = cube.element(vec![1, 0, 1])?;
    let signs: Vec<i8> = cube
        .enumerate()?
        .map(|x| cube.character_sign(&u, &x))
        .collect::<Result<_>>()?;
    println!("Walsh row {u} on Z_2^3: {signs:?}");
    Ok(())
}
