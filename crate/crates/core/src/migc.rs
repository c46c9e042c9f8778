//! Lowering of boolean expressions to substrate micro-op programs.
//!
//! Every gate becomes majority plus negation:
//!
//! | gate           | lowering                                   |
//! |----------------|--------------------------------------------|
//! | `and a b`      | `TRA(a, b, CONST0)`                        |
//! | `or a b`       | `TRA(a, b, CONST1)`                        |
//! | `maj a b c`    | `TRA(a, b, c)`                             |
//! | `not a`        | `NOT`                                      |
//! | `xor a b`      | `(a or b) and not (a and b)`: 3 TRA, 1 NOT |
//!
//! Operands are always copied into the three TEMP rows before an
//! activation. Intermediate results live in DATA rows that are not bound
//! to variables, handed out lowest-first from a free list and released as
//! soon as their parent consumes them. Children are lowered left to right,
//! depth first. No rewriting or sharing is performed, so the emitted
//! program depends only on the expression shape and the bindings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::substrate::{
    BitRow, CostReport, MicroOp, MicroProgram, RowGroup, RowId, Subarray, SubstrateError, CONST0,
    CONST1, FIRST_DATA_ROW, TEMP_ROWS,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Const(bool),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
    Maj3(Box<Expr>, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{name}` is bound to row {row}, which is not a DATA row of this subarray")]
    BadBinding { name: String, row: usize },
    #[error("variables `{0}` and `{1}` are bound to the same row")]
    AliasedBinding(String, String),
    #[error("expression needs {required} rows, subarray has {available}")]
    RowExhaustion { required: usize, available: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("assignment is missing variable `{0}`")]
    MissingAssignment(String),
    #[error(transparent)]
    Substrate(#[from] SubstrateError),
}

pub fn var(name: &str) -> Expr {
    Expr::Var(name.to_string())
}

impl Expr {
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Xor(Box::new(a), Box::new(b))
    }

    pub fn maj3(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::Maj3(Box::new(a), Box::new(b), Box::new(c))
    }

    /// Free variables in first-occurrence order (left to right, depth first).
    pub fn vars(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Var(name) => {
                    if !out.contains(name) {
                        out.push(name.clone());
                    }
                }
                Expr::Const(_) => {}
                Expr::Not(a) => walk(a, out),
                Expr::And(a, b) | Expr::Or(a, b) | Expr::Xor(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Expr::Maj3(a, b, c) => {
                    walk(a, out);
                    walk(b, out);
                    walk(c, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Const(_) => 0,
            Expr::Not(a) => 1 + a.depth(),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Xor(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Maj3(a, b, c) => 1 + a.depth().max(b.depth()).max(c.depth()),
        }
    }

    /// Direct tree evaluation, 64 independent assignments at once: bit `j` of
    /// the result is the value under the assignment given by bit `j` of each
    /// variable's word.
    pub fn eval_word<F>(&self, env: &F) -> Result<u64, CompileError>
    where
        F: Fn(&str) -> Option<u64>,
    {
        Ok(match self {
            Expr::Var(name) => env(name).ok_or_else(|| CompileError::UnboundVariable(name.clone()))?,
            Expr::Const(b) => {
                if *b {
                    u64::MAX
                } else {
                    0
                }
            }
            Expr::Not(a) => !a.eval_word(env)?,
            Expr::And(a, b) => a.eval_word(env)? & b.eval_word(env)?,
            Expr::Or(a, b) => a.eval_word(env)? | b.eval_word(env)?,
            Expr::Xor(a, b) => a.eval_word(env)? ^ b.eval_word(env)?,
            Expr::Maj3(a, b, c) => {
                let (x, y, z) = (a.eval_word(env)?, b.eval_word(env)?, c.eval_word(env)?);
                (x & y) | (y & z) | (x & z)
            }
        })
    }

    pub fn eval(&self, assignment: &BTreeMap<String, bool>) -> Result<bool, CompileError> {
        let word = self.eval_word(&|name| assignment.get(name).map(|&b| if b { 1 } else { 0 }))?;
        Ok(word & 1 == 1)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(name) => f.write_str(name),
            Expr::Const(b) => write!(f, "{}", *b as u8),
            Expr::Not(a) => write!(f, "(not {a})"),
            Expr::And(a, b) => write!(f, "(and {a} {b})"),
            Expr::Or(a, b) => write!(f, "(or {a} {b})"),
            Expr::Xor(a, b) => write!(f, "(xor {a} {b})"),
            Expr::Maj3(a, b, c) => write!(f, "(maj {a} {b} {c})"),
        }
    }
}

impl FromStr for Expr {
    type Err = CompileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        match ch {
            '(' => {
                out.push((pos, Token::Open));
                chars.next();
            }
            ')' => {
                out.push((pos, Token::Close));
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let start = pos;
                let mut end = pos;
                while let Some(&(p, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    end = p + c.len_utf8();
                    chars.next();
                }
                out.push((start, Token::Atom(&text[start..end])));
            }
        }
    }
    out
}

/// Parses the prefix s-expression syntax, e.g. `(xor a (and b (not c)))`.
/// Atoms `0` and `1` are constants; any other atom is a variable.
/// Operators: `not`, `and`, `or`, `xor`, `maj`.
pub fn parse_expr(text: &str) -> Result<Expr, CompileError> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let expr = parse_at(&tokens, &mut pos, text.len())?;
    if let Some((at, _)) = tokens.get(pos) {
        return Err(CompileError::Parse {
            pos: *at,
            msg: "trailing input".into(),
        });
    }
    Ok(expr)
}

fn parse_at(tokens: &[(usize, Token<'_>)], pos: &mut usize, len: usize) -> Result<Expr, CompileError> {
    let err = |at: usize, msg: &str| CompileError::Parse {
        pos: at,
        msg: msg.to_string(),
    };
    let Some((at, tok)) = tokens.get(*pos) else {
        return Err(err(len, "unexpected end of input"));
    };
    *pos += 1;
    match tok {
        Token::Close => Err(err(*at, "unexpected `)`")),
        Token::Atom("0") => Ok(Expr::Const(false)),
        Token::Atom("1") => Ok(Expr::Const(true)),
        Token::Atom(name) => {
            if name.chars().all(|c| c.is_alphanumeric() || c == '_') && !name.starts_with(|c: char| c.is_ascii_digit()) {
                Ok(Expr::Var(name.to_string()))
            } else {
                Err(err(*at, &format!("invalid variable name `{name}`")))
            }
        }
        Token::Open => {
            let Some((op_at, Token::Atom(op))) = tokens.get(*pos) else {
                return Err(err(*at, "expected an operator after `(`"));
            };
            let op_at = *op_at;
            *pos += 1;
            let arity = match op.to_ascii_lowercase().as_str() {
                "not" => 1,
                "and" | "or" | "xor" => 2,
                "maj" | "maj3" => 3,
                other => return Err(err(op_at, &format!("unknown operator `{other}`"))),
            };
            let mut args = Vec::with_capacity(arity);
            loop {
                match tokens.get(*pos) {
                    Some((_, Token::Close)) => {
                        *pos += 1;
                        break;
                    }
                    None => return Err(err(len, "missing `)`")),
                    _ => args.push(parse_at(tokens, pos, len)?),
                }
            }
            if args.len() != arity {
                return Err(err(op_at, &format!("`{op}` takes {arity} operand(s), got {}", args.len())));
            }
            let mut args = args.into_iter();
            let mut next = || Box::new(args.next().unwrap());
            Ok(match op.to_ascii_lowercase().as_str() {
                "not" => Expr::Not(next()),
                "and" => Expr::And(next(), next()),
                "or" => Expr::Or(next(), next()),
                "xor" => Expr::Xor(next(), next()),
                _ => Expr::Maj3(next(), next(), next()),
            })
        }
    }
}

/// Variable-to-row map. Ordered so that lowering is deterministic.
pub type Bindings = BTreeMap<String, RowId>;

/// Binds `names` to consecutive DATA rows starting at the first one.
pub fn sequential_bindings<S: AsRef<str>>(names: &[S]) -> Bindings {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_ref().to_string(), RowId(FIRST_DATA_ROW + i)))
        .collect()
}

/// Parses `a=5,b=6` (commas or whitespace between pairs).
pub fn parse_bindings(text: &str) -> Result<Bindings, CompileError> {
    let mut out = Bindings::new();
    for (i, pair) in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .enumerate()
    {
        let (name, row) = pair.split_once('=').ok_or_else(|| CompileError::Parse {
            pos: i,
            msg: format!("binding `{pair}` is not of the form name=row"),
        })?;
        let row: usize = row.trim().parse().map_err(|_| CompileError::Parse {
            pos: i,
            msg: format!("binding `{pair}` has a non-numeric row"),
        })?;
        out.insert(name.trim().to_string(), RowId(row));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledProgram {
    pub prog: MicroProgram,
    pub bindings: Bindings,
    pub result_row: RowId,
    pub cost: CostReport,
    /// Row count the program was lowered for.
    pub rows: usize,
}

struct Allocator {
    free: BTreeSet<usize>,
    next_virtual: usize,
    live: usize,
    peak: usize,
}

impl Allocator {
    fn alloc(&mut self) -> RowId {
        self.live += 1;
        self.peak = self.peak.max(self.live);
        match self.free.pop_first() {
            Some(r) => RowId(r),
            None => {
                // keep going past exhaustion so the error can report the real demand
                self.next_virtual += 1;
                RowId(self.next_virtual - 1)
            }
        }
    }

    fn release(&mut self, row: RowId) {
        self.live -= 1;
        self.free.insert(row.0);
    }
}

#[derive(Clone, Copy)]
struct Value {
    row: RowId,
    owned: bool,
}

struct Lowering<'a> {
    bindings: &'a Bindings,
    alloc: Allocator,
    prog: MicroProgram,
}

impl Lowering<'_> {
    fn release(&mut self, v: Value) {
        if v.owned {
            self.alloc.release(v.row);
        }
    }

    fn stage_and_activate(&mut self, rows: [RowId; 3]) {
        for (src, dst) in rows.into_iter().zip(TEMP_ROWS) {
            self.prog.push(MicroOp::Copy { src, dst });
        }
        let [a, b, c] = TEMP_ROWS;
        self.prog.push(MicroOp::Tra { a, b, c });
    }

    /// Moves a result sitting in `T0` to a fresh DATA row unless it is the root.
    fn settle(&mut self, root: bool) -> Value {
        if root {
            Value {
                row: TEMP_ROWS[0],
                owned: false,
            }
        } else {
            let dst = self.alloc.alloc();
            self.prog.push(MicroOp::Copy { src: TEMP_ROWS[0], dst });
            Value { row: dst, owned: true }
        }
    }

    fn lower(&mut self, e: &Expr, root: bool) -> Result<Value, CompileError> {
        let [t0, t1, t2] = TEMP_ROWS;
        Ok(match e {
            Expr::Var(name) => Value {
                row: *self
                    .bindings
                    .get(name)
                    .ok_or_else(|| CompileError::UnboundVariable(name.clone()))?,
                owned: false,
            },
            Expr::Const(b) => Value {
                row: if *b { CONST1 } else { CONST0 },
                owned: false,
            },
            Expr::Not(a) => {
                let va = self.lower(a, false)?;
                let (dst, owned) = if root { (t0, false) } else { (self.alloc.alloc(), true) };
                self.prog.push(MicroOp::Not { src: va.row, dst });
                self.release(va);
                Value { row: dst, owned }
            }
            Expr::And(a, b) | Expr::Or(a, b) => {
                let va = self.lower(a, false)?;
                let vb = self.lower(b, false)?;
                let control = if matches!(e, Expr::And(..)) { CONST0 } else { CONST1 };
                self.stage_and_activate([va.row, vb.row, control]);
                self.release(va);
                self.release(vb);
                self.settle(root)
            }
            Expr::Maj3(a, b, c) => {
                let va = self.lower(a, false)?;
                let vb = self.lower(b, false)?;
                let vc = self.lower(c, false)?;
                self.stage_and_activate([va.row, vb.row, vc.row]);
                self.release(va);
                self.release(vb);
                self.release(vc);
                self.settle(root)
            }
            Expr::Xor(a, b) => {
                let va = self.lower(a, false)?;
                let vb = self.lower(b, false)?;
                self.stage_and_activate([va.row, vb.row, CONST1]);
                let either = self.alloc.alloc();
                self.prog.push(MicroOp::Copy { src: t0, dst: either });
                self.stage_and_activate([va.row, vb.row, CONST0]);
                self.prog.push(MicroOp::Not { src: t0, dst: t1 });
                self.prog.push(MicroOp::Copy { src: either, dst: t0 });
                self.prog.push(MicroOp::Copy { src: CONST0, dst: t2 });
                self.prog.push(MicroOp::Tra { a: t0, b: t1, c: t2 });
                self.alloc.release(either);
                self.release(va);
                self.release(vb);
                self.settle(root)
            }
        })
    }
}

fn check_bindings(bindings: &Bindings, rows: Option<usize>) -> Result<(), CompileError> {
    let mut seen: BTreeMap<RowId, &str> = BTreeMap::new();
    for (name, &row) in bindings {
        let in_range = rows.is_none_or(|r| row.0 < r);
        if !in_range || RowGroup::of(row) != RowGroup::Data {
            return Err(CompileError::BadBinding {
                name: name.clone(),
                row: row.0,
            });
        }
        if let Some(other) = seen.insert(row, name) {
            return Err(CompileError::AliasedBinding(other.to_string(), name.clone()));
        }
    }
    Ok(())
}

fn lower_impl(e: &Expr, bindings: &Bindings, rows: Option<usize>) -> Result<CompiledProgram, CompileError> {
    check_bindings(bindings, rows)?;
    for name in e.vars() {
        if !bindings.contains_key(&name) {
            return Err(CompileError::UnboundVariable(name));
        }
    }
    let bound: BTreeSet<usize> = bindings.values().map(|r| r.0).collect();
    let top = rows.unwrap_or_else(|| FIRST_DATA_ROW + bound.len() + e.depth() * 2 + 2);
    let top = top.max(bound.iter().next_back().map_or(0, |r| r + 1));
    let free: BTreeSet<usize> = (FIRST_DATA_ROW..top).filter(|r| !bound.contains(r)).collect();
    let pool = free.len();
    let mut lowering = Lowering {
        bindings,
        alloc: Allocator {
            free,
            next_virtual: top,
            live: 0,
            peak: 0,
        },
        prog: Vec::new(),
    };
    let result = lowering.lower(e, true)?;
    let rows_used = if lowering.alloc.peak > pool {
        let required = top + (lowering.alloc.peak - pool);
        match rows {
            Some(available) => return Err(CompileError::RowExhaustion { required, available }),
            None => required,
        }
    } else {
        top
    };
    let cost = CostReport::of_program(&lowering.prog);
    Ok(CompiledProgram {
        prog: lowering.prog,
        bindings: bindings.clone(),
        result_row: result.row,
        cost,
        rows: rows.unwrap_or(rows_used.max(FIRST_DATA_ROW + 1)),
    })
}

/// Lowers `e` for a subarray with `rows` rows.
pub fn lower(e: &Expr, bindings: &Bindings, rows: usize) -> Result<CompiledProgram, CompileError> {
    lower_impl(e, bindings, Some(rows))
}

/// Lowers `e` with variables bound to consecutive DATA rows and as many
/// rows as the expression needs.
pub fn lower_unbounded(e: &Expr) -> CompiledProgram {
    let bindings = sequential_bindings(&e.vars());
    lower_impl(e, &bindings, None).expect("every variable is bound and the row pool is unbounded")
}

/// Cost of the canonical lowering. Independent of which rows are bound.
pub fn cost_of(e: &Expr) -> CostReport {
    lower_unbounded(e).cost
}

impl CompiledProgram {
    /// Runs the program on `sub`, which must already hold the inputs.
    pub fn run(&self, sub: &mut Subarray) -> Result<BitRow, CompileError> {
        sub.run_program(&self.prog)?;
        Ok(sub.read_row(self.result_row)?)
    }

    /// Writes one row per variable, runs, returns the result row. Column `j`
    /// of the result is the expression under column `j` of the inputs.
    pub fn eval_rows(&self, inputs: &BTreeMap<String, BitRow>, width: usize) -> Result<BitRow, CompileError> {
        let mut sub = Subarray::new(self.rows, width)?;
        for (name, &row) in &self.bindings {
            let bits = inputs
                .get(name)
                .ok_or_else(|| CompileError::MissingAssignment(name.clone()))?;
            sub.write_row(row, bits)?;
        }
        self.run(&mut sub)
    }
}

/// Evaluates a compiled program under one assignment, each variable's bit
/// replicated across all `width` columns.
pub fn eval_compiled(
    cp: &CompiledProgram,
    assignment: &BTreeMap<String, bool>,
    width: usize,
) -> Result<BitRow, CompileError> {
    let inputs = cp
        .bindings
        .keys()
        .map(|name| {
            let bit = *assignment
                .get(name)
                .ok_or_else(|| CompileError::MissingAssignment(name.clone()))?;
            Ok((
                name.clone(),
                if bit { BitRow::ones(width) } else { BitRow::zeros(width) },
            ))
        })
        .collect::<Result<BTreeMap<_, _>, CompileError>>()?;
    cp.eval_rows(&inputs, width)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assignment(pairs: &[(&str, bool)]) -> BTreeMap<String, bool> {
        pairs.iter().map(|(n, b)| (n.to_string(), *b)).collect()
    }

    #[test]
    fn parse_and_print() {
        let e: Expr = "(xor a (and b (not c)))".parse().unwrap();
        assert_eq!(e, Expr::xor(var("a"), Expr::and(var("b"), Expr::not(var("c")))));
        assert_eq!(e.to_string(), "(xor a (and b (not c)))");
        assert_eq!(parse_expr(" ( maj x 1 0 ) ").unwrap(), Expr::maj3(var("x"), Expr::Const(true), Expr::Const(false)));
        assert_eq!(e.vars(), vec!["a", "b", "c"]);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "(and a)", "(and a b", "(nand a b)", ")", "a b", "(and a b c)", "(1x)", "()"] {
            assert!(matches!(parse_expr(bad), Err(CompileError::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn var_lowers_to_nothing() {
        let b = sequential_bindings(&["a"]);
        let cp = lower(&var("a"), &b, 8).unwrap();
        assert!(cp.prog.is_empty());
        assert_eq!(cp.result_row, RowId(5));
        assert_eq!(cost_of(&var("a")), CostReport::default());
    }

    #[test]
    fn and_is_the_canonical_four_ops() {
        let b = sequential_bindings(&["a", "b"]);
        let cp = lower(&Expr::and(var("a"), var("b")), &b, 8).unwrap();
        assert_eq!(
            cp.prog,
            vec![
                MicroOp::Copy { src: RowId(5), dst: RowId(2) },
                MicroOp::Copy { src: RowId(6), dst: RowId(3) },
                MicroOp::Copy { src: CONST0, dst: RowId(4) },
                MicroOp::Tra { a: RowId(2), b: RowId(3), c: RowId(4) },
            ]
        );
        assert_eq!(cp.cost.tra_count, 1);
        assert_eq!(cp.result_row, RowId(2));
    }

    #[test]
    fn xor_cost() {
        let c = cost_of(&Expr::xor(var("a"), var("b")));
        assert_eq!((c.tra_count, c.not_count), (3, 1));
    }

    #[test]
    fn truth_tables() {
        let xor = Expr::xor(var("a"), var("b"));
        let maj = Expr::maj3(var("a"), var("b"), var("c"));
        let cx = lower_unbounded(&xor);
        let cm = lower_unbounded(&maj);
        for bits in 0..8u8 {
            let (a, b, c) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
            let env = assignment(&[("a", a), ("b", b), ("c", c)]);
            let row = eval_compiled(&cx, &env, 8).unwrap();
            assert_eq!(row, if a ^ b { BitRow::ones(8) } else { BitRow::zeros(8) });
            let row = eval_compiled(&cm, &env, 8).unwrap();
            let ab_bc_ac = (a && b) || (b && c) || (a && c);
            assert_eq!(row.get(0), ab_bc_ac);
            assert_eq!(row.count_ones(), if ab_bc_ac { 8 } else { 0 });
        }
    }

    #[test]
    fn constants() {
        let cp = lower_unbounded(&Expr::Const(true));
        assert_eq!(cp.result_row, CONST1);
        assert_eq!(eval_compiled(&cp, &BTreeMap::new(), 16).unwrap(), BitRow::ones(16));
        let cp = lower_unbounded(&Expr::not(Expr::Const(true)));
        assert_eq!(eval_compiled(&cp, &BTreeMap::new(), 16).unwrap(), BitRow::zeros(16));
    }

    #[test]
    fn unbound_and_bad_bindings() {
        let e = Expr::and(var("a"), var("z"));
        let b = sequential_bindings(&["a"]);
        assert_eq!(lower(&e, &b, 16), Err(CompileError::UnboundVariable("z".into())));
        let mut b = Bindings::new();
        b.insert("a".into(), RowId(3));
        assert!(matches!(lower(&var("a"), &b, 16), Err(CompileError::BadBinding { .. })));
        let b = parse_bindings("a=5, b=5").unwrap();
        assert!(matches!(
            lower(&Expr::and(var("a"), var("b")), &b, 16),
            Err(CompileError::AliasedBinding(..))
        ));
        assert!(parse_bindings("a:5").is_err());
    }

    #[test]
    fn row_exhaustion_reports_demand() {
        // two live intermediates are needed for the outer AND's operands
        let e = Expr::and(
            Expr::and(var("a"), var("b")),
            Expr::and(var("a"), var("b")),
        );
        let b = sequential_bindings(&["a", "b"]);
        assert_eq!(
            lower(&e, &b, 8),
            Err(CompileError::RowExhaustion { required: 9, available: 8 })
        );
        assert!(lower(&e, &b, 9).is_ok());
    }

    #[test]
    fn lowering_is_deterministic() {
        let e: Expr = "(or (xor a b) (maj a (not c) 1))".parse().unwrap();
        assert_eq!(lower_unbounded(&e), lower_unbounded(&e));
    }
}
