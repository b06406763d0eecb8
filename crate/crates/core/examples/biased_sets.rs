//! The three constructions, exact and sampled certification, and the set file.

use abelian_qhash::bias::{
    aghp_set, bias_exact, bias_sampled, bias_witness, greedy_biased_set, load_set, random_biased_set, save_set,
};
use abelian_qhash::{AbelianGroup, BiasedSet, Result};

fn describe(name: &str, set: &BiasedSet) {
    println!(
        "{name:>8}: |S| = {:4}, certified eps = {:.4} ({:?})",
        set.len(),
        set.certified_epsilon().unwrap_or(f64::NAN),
        set.certification()
    );
}

fn main() -> Result<()> {
    let cube = AbelianGroup::boolean_cube(8)?;

    let random = random_biased_set(&cube, 0.3, 4.0, 1, 10)?;
    describe("random", &random);

    let greedy = greedy_biased_set(&cube, 64)?;
    describe("greedy", &greedy);

    let aghp = aghp_set(8, 5)?;
    describe("aghp", &aghp);
    println!("          exact bias of the aghp set: {:.4}", bias_exact(&aghp)?);

    let mixed = greedy_biased_set(&AbelianGroup::new(vec![5, 6])?, 12)?;
    let w = bias_witness(&mixed)?;
    describe("Z5xZ6", &mixed);
    println!("          worst character {} with bias {:.4}", w.character, w.bias);
    println!(
        "          sampled estimate on 16 characters: {:.4}",
        bias_sampled(&mixed, 16, 7)?
    );

    let mut file = Vec::new();
    save_set(&random, &mut file)?;
    let back = load_set(file.as_slice(), true)?;
    assert_eq!(back, random);
    println!("set file: {} bytes, id {}", file.len(), random.content_id());
    Ok(())
}
