//! SWAP-test sampling and the repeated equality protocol.

use abelian_qhash::bias::random_biased_set;
use abelian_qhash::protocols::{equality_protocol, soundness_bound, swap_test_sample};
use abelian_qhash::qhash::hash;
use abelian_qhash::{AbelianGroup, Result};

fn main() -> Result<()> {
    let g = AbelianGroup::boolean_cube(10)?;
    let set = random_biased_set(&g, 0.4, 4.0, 5, 10)?;
    let eps = set.certified_epsilon().unwrap();
    let a = g.element(vec![1, 0, 1, 1, 0, 0, 1, 0, 1, 1])?;
    let b = g.element(vec![1, 0, 1, 1, 0, 0, 1, 0, 1, 0])?;

    let (ha, hb) = (hash(&set, &a)?, hash(&set, &b)?);
    let same = swap_test_sample(&ha, &ha, 10_000, 1)?;
    let diff = swap_test_sample(&ha, &hb, 10_000, 1)?;
    println!(
        "equal messages:   accept {}/{} (p = {})",
        same.accepts, same.shots, same.analytic_accept_probability
    );
    println!(
        "unequal messages: accept {}/{} (p = {:.4})",
        diff.accepts, diff.shots, diff.analytic_accept_probability
    );

    for rounds in [1, 5, 20] {
        let t = equality_protocol(&set, &a, &b, rounds, 42)?;
        println!(
            "{rounds:2} rounds: {:?}, false-accept bound {:.2e} (eps = {eps:.3})",
            t.decision, t.soundness_bound
        );
    }
    println!("bound for eps = 0.3 over 20 rounds: {:.2e}", soundness_bound(0.3, 20));
    Ok(())
}
