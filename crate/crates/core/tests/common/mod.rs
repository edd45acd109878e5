//! Shared fixtures: named example sequents and a seeded random sequent supply.
#![allow(dead_code)]

use coforest::{parse_sequent, Context, Formula, Sequent};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CHURCH: &str = "|- (p->p)->p->p";
pub const PEIRCE: &str = "|- ((p->q)->p)->p";
pub const DN_PEIRCE: &str = "|- ((((p->q)->p)->p)->q)->q";
pub const HORN_CTX: &str = "x:p->q->p, y:q->p->q, z:p";

pub fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

/// Named sequents used wherever a fixed corpus is needed.
pub fn corpus() -> Vec<Sequent> {
    [
        CHURCH,
        PEIRCE,
        DN_PEIRCE,
        "|- p->p",
        "|- p->q->p",
        "|- (p->q)->(q->r)->p->r",
        "|- ((p->p)->p)->p",
        "f:p->p |- p",
        "x:p->q->p, y:q->p->q, z:p |- p",
        "x:p->q->p, y:q->p->q, z:p |- q",
        "x:(p->q)->p, y:p->q |- q",
        "x:(p->q)->p |- p",
        "|- ((p->q)->q)->(q->p)->p",
    ]
    .iter()
    .map(|s| seq(s))
    .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ATOMS: [&str; 3] = ["p", "q", "r"];

pub fn formula(rng: &mut impl Rng, atoms: usize, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        Formula::atom(ATOMS[rng.gen_range(0..atoms)])
    } else {
        let a = formula(rng, atoms, depth - 1);
        let b = formula(rng, atoms, depth - 1);
        Formula::imp(a, b)
    }
}

/// A Horn formula `p1 -> … -> pk -> p` with `k <= 2`.
pub fn horn_formula(rng: &mut impl Rng, atoms: usize) -> Formula {
    let k = rng.gen_range(0..=2);
    let prefix: Vec<Formula> = (0..k).map(|_| Formula::atom(ATOMS[rng.gen_range(0..atoms)])).collect();
    Formula::from_spine(prefix, ATOMS[rng.gen_range(0..atoms)])
}

/// At most 3 atoms, formula depth at most 3, at most 3 context entries.
pub fn sequent(rng: &mut impl Rng) -> Sequent {
    let atoms = rng.gen_range(1..=3);
    let n = rng.gen_range(0..=3);
    let mut ctx = Context::new();
    for i in 0..n {
        ctx.push(format!("a{i}"), formula(rng, atoms, 3)).unwrap();
    }
    Sequent::new(ctx, formula(rng, atoms, 3))
}

/// Horn context with an atomic goal.
pub fn horn_sequent(rng: &mut impl Rng) -> Sequent {
    let atoms = rng.gen_range(1..=3);
    let n = rng.gen_range(0..=3);
    let mut ctx = Context::new();
    for i in 0..n {
        ctx.push(format!("a{i}"), horn_formula(rng, atoms)).unwrap();
    }
    Sequent::new(ctx, Formula::atom(ATOMS[rng.gen_range(0..atoms)]))
}

/// `(Γ, Γ', goal)` with `Γ ≤ Γ'` and at most 3 entries in `Γ'`: one or
/// two base formulas, then copies of them under new names.
pub fn restriction(rng: &mut impl Rng) -> (Context, Context, Formula) {
    let atoms = rng.gen_range(1..=3);
    let base = rng.gen_range(1..=2);
    let mut g = Context::new();
    for i in 0..base {
        g.push(format!("a{i}"), formula(rng, atoms, 3)).unwrap();
    }
    let formulas: Vec<Formula> = g.iter().map(|(_, f)| f.clone()).collect();
    let mut g2 = g.clone();
    for i in 0..rng.gen_range(0..=3 - base) {
        g2.push(format!("b{i}"), formulas.choose(rng).unwrap().clone()).unwrap();
    }
    (g, g2, formula(rng, atoms, 3))
}

/// A context of at most `max` entries.
pub fn context(rng: &mut impl Rng, atoms: usize, max: usize) -> Context {
    let mut ctx = Context::new();
    for i in 0..rng.gen_range(0..=max) {
        ctx.push(format!("a{i}"), formula(rng, atoms, 3)).unwrap();
    }
    ctx
}
