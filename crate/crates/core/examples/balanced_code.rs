//! A set over Z_2^n read as a binary code with nearly balanced codewords.

use abelian_qhash::bias::{aghp_set, bias_exact};
use abelian_qhash::qhash::code_matrix;
use abelian_qhash::Result;

fn main() -> Result<()> {
    let set = aghp_set(8, 4)?;
    let code = code_matrix(&set)?;
    println!("{} nonzero codewords of length {}", code.rows(), code.columns());

    for row in 0..4 {
        let word: String = (0..code.columns())
            .map(|j| char::from(b'0' + code.bit(row, j)))
            .collect();
        println!("  {word}  weight {}", code.row_weight(row));
    }

    let report = code.balance();
    println!(
        "fractional weights in [{:.4}, {:.4}], max |1 - 2w| = {:.4}",
        report.min_fractional_weight, report.max_fractional_weight, report.max_deviation
    );
    println!("bias of the set: {:.4}", bias_exact(&set)?);
    Ok(())
}
