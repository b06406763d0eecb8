//! Qubit counts, sampling sizes and the compression behind irreversibility.

use abelian_qhash::bias::random_biased_set;
use abelian_qhash::protocols::irreversibility_report;
use abelian_qhash::qhash::{size_report, SizeReport};
use abelian_qhash::{AbelianGroup, IrreversibilityReport, Result};

fn main() -> Result<()> {
    let g = AbelianGroup::boolean_cube(16)?;
    let set = random_biased_set(&g, 0.3, 4.0, 0, 5)?;
    let r = size_report(&set, 0.3)?;
    println!(
        "Z_2^16, eps 0.3: |S| = {} ({} qubits), sampling size {:?}, lower bound 2^{:.2}",
        r.set_size, r.qubits, r.sampling_size, r.lower_bound_log2
    );
    let ir = irreversibility_report(&set);
    println!(
        "  {} input bits -> {} qubits, ratio {:.3}",
        ir.input_bits, ir.hash_qubits, ir.compression_ratio
    );

    // groups too large to build, from their sizes alone
    for bits in [64.0, 256.0, 1024.0] {
        let r = SizeReport::from_scale(bits, 1, 0.1, Some(4.0));
        let t = r.sampling_size.unwrap();
        let ir = IrreversibilityReport::from_sizes(bits as u32, t);
        println!(
            "2^{bits} elements, eps 0.1: t = {t}, {} qubits, ratio {:.1}",
            ir.hash_qubits, ir.compression_ratio
        );
    }
    Ok(())
}
