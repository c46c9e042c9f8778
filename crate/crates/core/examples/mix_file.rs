//! Writes, reads and places a MIX1 file in both layouts.

use tramix::mixture::{Layout, Mixture};
use tramix::substrate::{RowId, Subarray};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/golden_k3.mix");
    let m = Mixture::read_from(std::fs::File::open(golden)?)?;
    println!("golden: {m:?} bytes={:02x?}", m.to_bytes());

    let big = Mixture::from_members(6, [1, 5, 9, 40, 63])?;
    let path = std::env::temp_dir().join("tramix-example.mix");
    big.write_to(std::fs::File::create(&path)?)?;
    let back = Mixture::read_from(std::fs::File::open(&path)?)?;
    assert_eq!(back, big);
    println!("{} -> {} bytes", path.display(), big.to_bytes().len());

    for layout in [Layout::Horizontal, Layout::Vertical] {
        let mut sub = Subarray::new(9, 16)?;
        let placement = big.to_subarray(&mut sub, layout, RowId(5))?;
        for i in 0..placement.rows {
            println!("{layout} row {}: {}", placement.row(i).0, sub.read_row(placement.row(i))?.to_hex());
        }
        assert_eq!(Mixture::from_subarray(&sub, &placement)?, big);
    }
    Ok(())
}
