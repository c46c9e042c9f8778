//! Row-wide AND/OR/NOT/XOR/MAJ3, and the control-row identity: MAJ with the
//! constant-0 row is AND, with the constant-1 row is OR.

use tramix::logic::{bulk_and, bulk_maj3, bulk_not, bulk_or, bulk_xor};
use tramix::substrate::{BitRow, RowId, Subarray, CONST0, CONST1};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let width = 16;
    let mut sub = Subarray::new(12, width)?;
    let (a, b, c) = (RowId(5), RowId(6), RowId(7));
    sub.write_row(a, &BitRow::from_u64(width, 0xF0F0))?;
    sub.write_row(b, &BitRow::from_u64(width, 0xCCCC))?;
    sub.write_row(c, &BitRow::from_u64(width, 0xAAAA))?;

    let mut cost = bulk_and(&mut sub, a, b, RowId(8))?;
    cost += bulk_or(&mut sub, a, b, RowId(9))?;
    cost += bulk_not(&mut sub, a, RowId(10))?;
    cost += bulk_xor(&mut sub, a, b, RowId(11))?;
    for (name, row) in [("and", 8), ("or", 9), ("not a", 10), ("xor", 11)] {
        println!("{name:>6}: {}", sub.read_row(RowId(row))?.to_hex());
    }

    cost += bulk_maj3(&mut sub, a, b, CONST0, RowId(8))?;
    cost += bulk_maj3(&mut sub, a, b, CONST1, RowId(9))?;
    println!("maj(a,b,0): {}", sub.read_row(RowId(8))?.to_hex());
    println!("maj(a,b,1): {}", sub.read_row(RowId(9))?.to_hex());
    println!("{cost}");
    Ok(())
}
