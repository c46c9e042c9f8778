//! Replays a trace file (default `examples/data/xor.trace`) and prints the
//! final grid.

use tramix::cli::{cmd_run, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/xor.trace").into());
    let text = std::fs::read_to_string(path)?;
    let cfg = RunConfig {
        rows: 8,
        width: 16,
        ..RunConfig::default()
    };
    let report = cmd_run(&text, &cfg, &mut std::io::stdout())?;
    assert_eq!(report.cost.tra_count, 3);
    Ok(())
}
