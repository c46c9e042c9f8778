//! Lane-parallel addition and comparison on bit-sliced vectors.

use tramix::bitserial::{vadd, vcompare_ge, vsum_reduce, write_lanes, VerticalVector};
use tramix::substrate::{RowId, Subarray};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 8;
    let x = VerticalVector::new(RowId(5), n)?;
    let y = VerticalVector::new(RowId(5 + n), n)?;
    let z = VerticalVector::new(RowId(5 + 2 * n), n)?;
    let ge = RowId(5 + 3 * n);
    let mut sub = Subarray::new(6 + 3 * n, 8)?;

    let xs = [1, 2, 100, 200, 255, 17, 0, 128];
    let ys = [1, 40, 100, 100, 1, 99, 0, 128];
    write_lanes(&mut sub, &x, &xs)?;
    write_lanes(&mut sub, &y, &ys)?;

    let cost = vadd(&mut sub, &x, &y, &z)?;
    vcompare_ge(&mut sub, &x, &y, ge)?;
    let sums = vsum_reduce(&sub, &z)?;
    for lane in 0..xs.len() {
        println!(
            "lane {lane}: {:3} + {:3} = {:3} (mod 256)  x>=y: {}",
            xs[lane],
            ys[lane],
            sums[lane],
            sub.get(ge, lane)
        );
    }
    println!("vadd {cost}");
    Ok(())
}
