//! Set algebra computed on the substrate agrees with per-value queries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tramix::cli::duality_check;
use tramix::mixture::{Mixture, SetOp};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = Mixture::random(10, &mut rng)?;
    let b = Mixture::random(10, &mut rng)?;
    println!("|A|={} |B|={}", a.cardinality(), b.cardinality());
    for op in SetOp::ALL {
        let line = duality_check(&a, &b, op, 64)?;
        println!("{line:?}");
    }
    let third = a.select(2)?;
    println!("third member of A: {third}, rank back: {}", a.rank(third)?);
    Ok(())
}
