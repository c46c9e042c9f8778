//! Prints the triple-row-activation truth table from a one-column subarray.

use tramix::substrate::{MicroOp, Subarray, TEMP_ROWS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sub = Subarray::new(6, 1)?;
    let [t0, t1, t2] = TEMP_ROWS;
    println!(" A B C | MAJ");
    for case in 0..8u8 {
        let bits = [case & 4 != 0, case & 2 != 0, case & 1 != 0];
        for (row, bit) in [t0, t1, t2].into_iter().zip(bits) {
            sub.set(row, 0, bit)?;
        }
        sub.exec(&MicroOp::Tra { a: t0, b: t1, c: t2 })?;
        println!(
            " {} {} {} |  {}",
            bits[0] as u8,
            bits[1] as u8,
            bits[2] as u8,
            sub.get(t0, 0) as u8
        );
    }
    Ok(())
}
