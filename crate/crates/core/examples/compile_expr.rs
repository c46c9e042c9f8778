//! Lowers a boolean expression to a micro-op program and checks it against
//! direct evaluation on every assignment.

use std::collections::BTreeMap;

use tramix::migc::{eval_compiled, lower_unbounded, Expr};
use tramix::trace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "(maj a (xor b c) (not a))".into());
    let e: Expr = text.parse()?;
    let cp = lower_unbounded(&e);
    println!("# {e}");
    println!("# result row {}, {}", cp.result_row.0, cp.cost);
    print!("{}", trace::format(&cp.prog));

    let names = e.vars();
    for case in 0..1u32 << names.len() {
        let assignment: BTreeMap<String, bool> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), case >> i & 1 == 1))
            .collect();
        let got = eval_compiled(&cp, &assignment, 1)?.get(0);
        assert_eq!(got, e.eval(&assignment)?);
        println!("{assignment:?} -> {}", got as u8);
    }
    Ok(())
}
