//! Brute-force reference prover.
//!
//! Builds every term of each size directly from the two typing rules
//! (abstraction for an implication, a variable applied to proofs of its
//! premisses for an atom) and keeps those accepted by the type checker.
//! It deliberately knows nothing about finitary terms or forests.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Context, Formula, Sequent};
use crate::lambda_bar::{typecheck, LambdaBarTerm, TermKey};

/// Default cap on the number of candidate terms built.
pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle gave up after building {cap} candidate terms")]
    Overflow { cap: usize },
}

struct Gen {
    built: usize,
    cap: usize,
}

impl Gen {
    fn tick(&mut self, n: usize) -> Result<(), OracleError> {
        self.built += n;
        if self.built > self.cap {
            Err(OracleError::Overflow { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn exact(&mut self, ctx: &Context, goal: &Formula, size: usize) -> Result<Vec<LambdaBarTerm>, OracleError> {
        if size == 0 {
            return Ok(Vec::new());
        }
        let out = match goal {
            Formula::Imp(a, b) => {
                let w = (0..)
                    .map(|k| format!("w{k}"))
                    .find(|w| ctx.lookup(w).is_none())
                    .expect("unbounded name supply");
                let inner = ctx.with(w.clone(), (**a).clone()).expect("fresh name");
                self.exact(&inner, b, size - 1)?
                    .into_iter()
                    .map(|body| LambdaBarTerm::lam(w.clone(), (**a).clone(), body))
                    .collect()
            }
            Formula::Atom(p) => {
                let mut out = Vec::new();
                for (y, f) in ctx.iter() {
                    let mut premisses = Vec::new();
                    let mut cur = f;
                    while let Formula::Imp(a, b) = cur {
                        premisses.push((**a).clone());
                        cur = b;
                    }
                    if cur != &Formula::Atom(p.clone()) {
                        continue;
                    }
                    for args in self.tuples(ctx, &premisses, size - 1)? {
                        out.push(LambdaBarTerm::app(y, args));
                    }
                }
                out
            }
        };
        self.tick(out.len())?;
        Ok(out)
    }

    fn tuples(
        &mut self,
        ctx: &Context,
        goals: &[Formula],
        total: usize,
    ) -> Result<Vec<Vec<LambdaBarTerm>>, OracleError> {
        let Some((first, rest)) = goals.split_first() else {
            return Ok(if total == 0 { vec![Vec::new()] } else { Vec::new() });
        };
        let mut out = Vec::new();
        for s in 1..=total.saturating_sub(rest.len()) {
            let heads = self.exact(ctx, first, s)?;
            if heads.is_empty() {
                continue;
            }
            let tails = self.tuples(ctx, rest, total - s)?;
            for h in &heads {
                for t in &tails {
                    let mut v = vec![h.clone()];
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
            self.tick(heads.len() * tails.len())?;
        }
        Ok(out)
    }
}

/// All proofs of `s` of size at most `max_size`, one per α-class, ordered
/// by size and then canonical form.
pub fn bfs_prove(s: &Sequent, max_size: usize) -> Result<Vec<LambdaBarTerm>, OracleError> {
    bfs_prove_with_cap(s, max_size, DEFAULT_CAP)
}

pub fn bfs_prove_with_cap(s: &Sequent, max_size: usize, cap: usize) -> Result<Vec<LambdaBarTerm>, OracleError> {
    let mut gen = Gen { built: 0, cap };
    let mut out = Vec::new();
    for size in 1..=max_size {
        let mut level: BTreeMap<TermKey, LambdaBarTerm> = BTreeMap::new();
        for t in gen.exact(&s.context, &s.goal, size)? {
            if typecheck(&s.context, &t).as_ref() == Some(&s.goal) {
                level.entry(t.alpha_key()).or_insert(t);
            }
        }
        out.extend(level.into_values());
    }
    Ok(out)
}
