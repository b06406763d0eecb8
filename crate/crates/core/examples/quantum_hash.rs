//! Hash states, pairwise overlaps and the collision spectrum of a small set.

use abelian_qhash::bias::random_biased_set;
use abelian_qhash::qhash::{collision_spectrum, inner_product, QuantumHasher};
use abelian_qhash::{AbelianGroup, Result};

fn main() -> Result<()> {
    let g = AbelianGroup::new(vec![2, 2, 4, 8])?;
    let set = random_biased_set(&g, 0.6, 4.0, 3, 20)?;
    let hasher = QuantumHasher::new(&set);
    println!("|G| = {}, |S| = {}, {} qubits", g.order(), set.len(), hasher.qubits());

    let a = g.element(vec![1, 0, 3, 5])?;
    let b = g.element(vec![1, 1, 3, 5])?;
    let ha = hasher.hash(&a)?;
    let hb = hasher.hash(&b)?;
    println!("norm of h(a) = {:.15}", ha.norm());
    println!("|<h(a)|h(a)>| = {:.15}", inner_product(&ha, &ha)?.norm());
    println!("|<h(a)|h(b)>| = {:.6}", inner_product(&ha, &hb)?.norm());
    for (j, z) in ha.amplitudes().iter().take(4).enumerate() {
        println!("  amplitude {j}: {:+.4}{:+.4}i", z.re, z.im);
    }

    let spectrum = collision_spectrum(&set)?;
    println!(
        "{} pairs, max overlap {:.6} at ({}, {}), certified eps {:.6}",
        spectrum.pairs,
        spectrum.max_modulus,
        spectrum.witness.0,
        spectrum.witness.1,
        set.certified_epsilon().unwrap()
    );
    println!("histogram over [0,1]: {:?}", spectrum.histogram);
    Ok(())
}
