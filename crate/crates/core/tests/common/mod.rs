#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use tramix::migc::{var, Expr};

pub const VARS: [&str; 4] = ["a", "b", "c", "d"];

/// Random expression of depth at most `depth` over the first `nvars` names.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize, nvars: usize) -> Expr {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return if rng.gen_ratio(1, 8) {
            Expr::Const(rng.gen())
        } else {
            var(VARS[rng.gen_range(0..nvars)])
        };
    }
    let sub = |rng: &mut R| random_expr(rng, depth - 1, nvars);
    match rng.gen_range(0..5) {
        0 => Expr::not(sub(rng)),
        1 => Expr::and(sub(rng), sub(rng)),
        2 => Expr::or(sub(rng), sub(rng)),
        3 => Expr::xor(sub(rng), sub(rng)),
        _ => Expr::maj3(sub(rng), sub(rng), sub(rng)),
    }
}

pub fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        4 => (0..VARS.len()).prop_map(|i| var(VARS[i])),
        1 => any::<bool>().prop_map(Expr::Const),
    ];
    leaf.prop_recursive(5, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::xor(a, b)),
            (inner.clone(), inner.clone(), inner).prop_map(|(a, b, c)| Expr::maj3(a, b, c)),
        ]
    })
}

/// Plain recursive evaluation on one assignment; shares no code with the
/// library's evaluator.
pub fn eval_bool(e: &Expr, env: &dyn Fn(&str) -> bool) -> bool {
    match e {
        Expr::Var(n) => env(n),
        Expr::Const(b) => *b,
        Expr::Not(a) => !eval_bool(a, env),
        Expr::And(a, b) => eval_bool(a, env) && eval_bool(b, env),
        Expr::Or(a, b) => eval_bool(a, env) || eval_bool(b, env),
        Expr::Xor(a, b) => eval_bool(a, env) != eval_bool(b, env),
        Expr::Maj3(a, b, c) => {
            let n = eval_bool(a, env) as u8 + eval_bool(b, env) as u8 + eval_bool(c, env) as u8;
            n >= 2
        }
    }
}

pub fn majority(a: bool, b: bool, c: bool) -> bool {
    (a && b) || (b && c) || (a && c)
}
