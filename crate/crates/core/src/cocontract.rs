//! The context order `Γ ≤ Γ'` and co-contraction of forest approximants.
//!
//! Both `[x1+…+xn/y]` and `[Γ'/Γ]` are instances of a head fan-out map:
//! each head variable in the map's domain is replaced by the sum of its
//! images, all other heads are left alone. λ-binders extend the map with
//! themselves, and are renamed when they would capture an image.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Context, Formula, Sequent};
use crate::forest::{alternative_key, Alternative, ForestApprox};

/// `Γ ⊆ Γ'` and `|Γ| = |Γ'|`.
pub fn leq(g: &Context, g2: &Context) -> bool {
    g.is_subset_of(g2) && g.formula_set() == g2.formula_set()
}

/// `(Γ ⊢ p) ≤ (Γ' ⊢ p')` iff `Γ ≤ Γ'` and `p = p'`.
pub fn sequent_leq(s: &Sequent, s2: &Sequent) -> bool {
    s.goal == s2.goal && leq(&s.context, &s2.context)
}

/// Head fan-out: variables absent from the map are their own image.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FanOut {
    map: BTreeMap<String, Vec<String>>,
}

impl FanOut {
    pub fn identity() -> Self {
        FanOut::default()
    }

    pub fn single(old: impl Into<String>, new: Vec<String>) -> Self {
        let mut map = BTreeMap::new();
        map.insert(old.into(), new);
        FanOut { map }
    }

    pub fn insert(&mut self, var: impl Into<String>, images: Vec<String>) {
        self.map.insert(var.into(), images);
    }

    pub fn image<'a>(&'a self, var: &'a str) -> Vec<&'a str> {
        match self.map.get(var) {
            Some(images) => images.iter().map(String::as_str).collect(),
            None => vec![var],
        }
    }

    pub fn in_range(&self, var: &str) -> bool {
        self.map.values().any(|imgs| imgs.iter().any(|w| w == var))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.map
            .iter()
            .flat_map(|(k, vs)| std::iter::once(k.as_str()).chain(vs.iter().map(String::as_str)))
    }

    /// `self` first, then `outer`.
    pub fn then(&self, outer: &FanOut) -> FanOut {
        let mut map = BTreeMap::new();
        for (z, images) in &self.map {
            let mut out: Vec<String> = Vec::new();
            for w in images {
                for v in outer.image(w) {
                    if !out.iter().any(|o| o == v) {
                        out.push(v.to_string());
                    }
                }
            }
            map.insert(z.clone(), out);
        }
        for (z, images) in &outer.map {
            map.entry(z.clone()).or_insert_with(|| images.clone());
        }
        FanOut { map }
    }

    /// Image of a context: every `w` in the fan-out of `z`, declared with `z`'s formula.
    pub fn effective_context(&self, ctx: &Context) -> Vec<(String, Formula)> {
        let mut out: Vec<(String, Formula)> = Vec::new();
        for (z, f) in ctx.iter() {
            for w in self.image(z) {
                if !out.iter().any(|(v, g)| v == w && g == f) {
                    out.push((w.to_string(), f.clone()));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("context {{{source_ctx}}} is not an inessential restriction of {{{target_ctx}}}")]
pub struct NotLeq {
    pub source_ctx: Context,
    pub target_ctx: Context,
}

/// `[Γ'/Γ]` for `Γ ≤ Γ'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSubst {
    source: Context,
    target: Context,
}

impl ContextSubst {
    pub fn new(source: Context, target: Context) -> Result<Self, NotLeq> {
        if leq(&source, &target) {
            Ok(ContextSubst { source, target })
        } else {
            Err(NotLeq {
                source_ctx: source,
                target_ctx: target,
            })
        }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    /// Each `z ∈ dom(Γ)` fans out to every `w` with `(w : Γ(z)) ∈ Γ'`,
    /// in target declaration order.
    pub fn fan_out(&self) -> FanOut {
        let mut f = FanOut::identity();
        for (z, a) in self.source.iter() {
            let images = self
                .target
                .iter()
                .filter(|(_, b)| *b == a)
                .map(|(w, _)| w.to_string())
                .collect();
            f.insert(z, images);
        }
        f
    }
}

/// `[x1+…+xn/y] n`.
pub fn cocontract_vars(new_heads: &[String], old_head: &str, n: &ForestApprox) -> ForestApprox {
    apply_fan_out(&FanOut::single(old_head, new_heads.to_vec()), n)
}

/// `[Γ'/Γ] n`.
pub fn cocontract_ctx(s: &ContextSubst, n: &ForestApprox) -> ForestApprox {
    apply_fan_out(&s.fan_out(), n)
}

/// Applies a fan-out map; suspended leaves accumulate it as a pending map.
pub fn apply_fan_out(f: &FanOut, n: &ForestApprox) -> ForestApprox {
    fan(&Arc::new(f.clone()), n)
}

fn fan(f: &Arc<FanOut>, n: &ForestApprox) -> ForestApprox {
    match n {
        ForestApprox::Lam { var, ann, body } => {
            let mut inner = FanOut::clone(f);
            let name = if f.in_range(var) {
                let mut used: BTreeSet<String> = BTreeSet::new();
                body.collect_names(&mut used);
                used.extend(f.names().map(str::to_string));
                used.insert(var.clone());
                let fresh = (1..)
                    .map(|k| format!("{var}_{k}"))
                    .find(|c| !used.contains(c))
                    .expect("unbounded name supply");
                inner.insert(var.clone(), vec![fresh.clone()]);
                fresh
            } else {
                inner.insert(var.clone(), vec![var.clone()]);
                var.clone()
            };
            ForestApprox::Lam {
                var: name,
                ann: ann.clone(),
                body: Box::new(fan(&Arc::new(inner), body)),
            }
        }
        ForestApprox::Sum(alts) => {
            let mut out: Vec<Alternative> = Vec::new();
            for alt in alts {
                let args: Vec<ForestApprox> = alt.args.iter().map(|a| fan(f, a)).collect();
                for w in f.image(&alt.head) {
                    out.push(Alternative {
                        head: w.to_string(),
                        args: args.clone(),
                    });
                }
            }
            // Sums are sets; repeated images would otherwise compound. Only
            // alternatives sharing a head can coincide.
            let mut heads: BTreeMap<&str, usize> = BTreeMap::new();
            for a in &out {
                *heads.entry(a.head.as_str()).or_default() += 1;
            }
            if heads.values().all(|&n| n == 1) {
                return ForestApprox::Sum(out);
            }
            let shared: BTreeSet<String> = heads
                .into_iter()
                .filter(|&(_, n)| n > 1)
                .map(|(h, _)| h.to_string())
                .collect();
            let mut seen = BTreeSet::new();
            out.retain(|a| !shared.contains(&a.head) || seen.insert(alternative_key(a)));
            ForestApprox::Sum(out)
        }
        ForestApprox::Suspended { sigma, pending } => ForestApprox::Suspended {
            sigma: sigma.clone(),
            pending: Some(match pending {
                Some(p) => Arc::new(p.then(f)),
                None => f.clone(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{approx_equal, expand_solution};
    use crate::formula::{parse_context, parse_formula, parse_sequent};

    fn ctx(s: &str) -> Context {
        parse_context(s).unwrap()
    }

    #[test]
    fn leq_examples() {
        let g = ctx("x:p, y:(p->q)->p");
        assert!(leq(&g, &g));
        let a = "(((p->q)->p)->p)->q";
        let small = ctx(&format!("x:{a}, y:(p->q)->p, z:p"));
        let big = ctx(&format!("x:{a}, y:(p->q)->p, z:p, y1:(p->q)->p, z1:p"));
        assert!(leq(&small, &big));
        assert!(!leq(&big, &small));
        assert!(!leq(&ctx("x:p"), &ctx("x:p, w:q")));
        assert!(!leq(&ctx("x:p"), &ctx("y:p")));
    }

    #[test]
    fn context_subst_requires_leq() {
        assert!(ContextSubst::new(ctx("x:p"), ctx("x:p, w:q")).is_err());
        let s = ContextSubst::new(ctx("x:p, y:q"), ctx("x:p, y:q, x1:p")).unwrap();
        let f = s.fan_out();
        assert_eq!(f.image("x"), ["x", "x1"]);
        assert_eq!(f.image("y"), ["y"]);
        assert_eq!(f.image("w"), ["w"]);
    }

    #[test]
    fn fan_out_composition() {
        let inner = FanOut::single("y", vec!["a".into(), "b".into()]);
        let mut outer = FanOut::single("a", vec!["c".into(), "d".into()]);
        outer.insert("e", vec!["f".into()]);
        let both = inner.then(&outer);
        assert_eq!(both.image("y"), ["c", "d", "b"]);
        assert_eq!(both.image("a"), ["c", "d"]);
        assert_eq!(both.image("e"), ["f"]);
        assert_eq!(both.image("b"), ["b"]);
    }

    fn leaf(s: &str) -> ForestApprox {
        ForestApprox::Suspended {
            sigma: Arc::new(parse_sequent(s).unwrap()),
            pending: None,
        }
    }

    #[test]
    fn vars_leave_other_heads_alone() {
        let n = ForestApprox::Lam {
            var: "w".into(),
            ann: Formula::atom("p"),
            body: Box::new(ForestApprox::Sum(vec![Alternative {
                head: "w".into(),
                args: vec![],
            }])),
        };
        let out = cocontract_vars(&["x1".into(), "x2".into()], "y", &n);
        assert_eq!(out, n);
    }

    #[test]
    fn vars_fan_out_the_old_head() {
        let inner = leaf("y:p->p |- p");
        let n = ForestApprox::Sum(vec![Alternative {
            head: "y".into(),
            args: vec![inner],
        }]);
        let out = cocontract_vars(&["x1".into(), "x2".into()], "y", &n);
        let ForestApprox::Sum(alts) = &out else { panic!() };
        let heads: Vec<_> = alts.iter().map(|a| a.head.as_str()).collect();
        assert_eq!(heads, ["x1", "x2"]);
        assert_eq!(alts[0].args, alts[1].args);
        let ForestApprox::Suspended { pending: Some(p), .. } = &alts[0].args[0] else { panic!() };
        assert_eq!(p.image("y"), ["x1", "x2"]);
    }

    #[test]
    fn binder_is_renamed_instead_of_capturing() {
        // [x1+x2/y] (λx1. y) must not capture the image x1.
        let n = ForestApprox::Lam {
            var: "x1".into(),
            ann: Formula::atom("q"),
            body: Box::new(ForestApprox::Sum(vec![
                Alternative { head: "y".into(), args: vec![] },
                Alternative { head: "x1".into(), args: vec![] },
            ])),
        };
        let out = cocontract_vars(&["x1".into(), "x2".into()], "y", &n);
        let ForestApprox::Lam { var, body, .. } = &out else { panic!() };
        assert_ne!(var, "x1");
        let ForestApprox::Sum(alts) = body.as_ref() else { panic!() };
        let heads: Vec<_> = alts.iter().map(|a| a.head.as_str()).collect();
        assert_eq!(heads, ["x1", "x2", var.as_str()]);
    }

    #[test]
    fn cleavage_instance_depth_five() {
        let a = parse_formula("p->p").unwrap();
        let c = Formula::atom("p");
        let split = Context::from_pairs([("x1", a.clone()), ("x2", a.clone())]).unwrap();
        let merged = Context::from_pairs([("y", a)]).unwrap();
        let lhs = expand_solution(&Sequent::new(split, c.clone()), 5);
        let rhs = cocontract_vars(
            &["x1".into(), "x2".into()],
            "y",
            &expand_solution(&Sequent::new(merged, c), 5),
        );
        assert!(approx_equal(&lhs, &rhs));
    }

    #[test]
    fn cleavage_two_instance_depth_four() {
        let g = ctx("y:(p->q)->p");
        let g2 = ctx("y:(p->q)->p, y1:(p->q)->p");
        let c = Formula::atom("p");
        let lhs = expand_solution(&Sequent::new(g2.clone(), c.clone()), 4);
        let subst = ContextSubst::new(g.clone(), g2).unwrap();
        let rhs = cocontract_ctx(&subst, &expand_solution(&Sequent::new(g, c), 4));
        assert!(approx_equal(&lhs, &rhs));
    }

    #[test]
    fn identity_subst_on_distinct_formulas() {
        let g = ctx("f:p->p, x:p, y:(p->q)->p");
        let n = expand_solution(&Sequent::new(g.clone(), Formula::atom("p")), 5);
        let id = ContextSubst::new(g.clone(), g).unwrap();
        assert!(approx_equal(&cocontract_ctx(&id, &n), &n));
    }
}
