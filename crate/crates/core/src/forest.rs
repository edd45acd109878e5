//! Depth-bounded approximants of Böhm forests.
//!
//! Two producers are provided: [`expand_solution`] unfolds the corecursive
//! definition of the solution space directly, and [`interp_unfold`]
//! interprets a finitary term. Both charge one unit of depth per λ and per
//! sum node; argument lists are free. When the budget runs out the current
//! sequent is left as a [`ForestApprox::Suspended`] leaf.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::cocontract::{cocontract_ctx, sequent_leq, ContextSubst, FanOut};
use crate::formula::{Context, Formula, Sequent};
use crate::gfp_calc::FinTerm;
use crate::lambda_bar::{resolve, VarRef};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ForestApprox {
    Lam {
        var: String,
        ann: Formula,
        body: Box<ForestApprox>,
    },
    /// Empty for `O`.
    Sum(Vec<Alternative>),
    /// Unexpanded rest of the forest at `sigma`, with the head fan-out
    /// still owed to it.
    Suspended {
        sigma: Arc<Sequent>,
        pending: Option<Arc<FanOut>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alternative {
    pub head: String,
    pub args: Vec<ForestApprox>,
}

impl ForestApprox {
    pub fn empty() -> Self {
        ForestApprox::Sum(Vec::new())
    }

    pub fn suspended(sigma: Sequent) -> Self {
        ForestApprox::Suspended {
            sigma: Arc::new(sigma),
            pending: None,
        }
    }

    pub(crate) fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            ForestApprox::Lam { var, body, .. } => {
                out.insert(var.clone());
                body.collect_names(out);
            }
            ForestApprox::Sum(alts) => {
                for a in alts {
                    out.insert(a.head.clone());
                    for arg in &a.args {
                        arg.collect_names(out);
                    }
                }
            }
            ForestApprox::Suspended { sigma, pending } => {
                out.extend(sigma.context.names().map(str::to_string));
                if let Some(p) = pending {
                    out.extend(p.names().map(str::to_string));
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ForestApprox::Lam { body, .. } => 1 + body.node_count(),
            ForestApprox::Sum(alts) => {
                1 + alts
                    .iter()
                    .map(|a| a.args.iter().map(Self::node_count).sum::<usize>())
                    .sum::<usize>()
            }
            ForestApprox::Suspended { .. } => 1,
        }
    }

    pub fn has_suspended(&self) -> bool {
        match self {
            ForestApprox::Lam { body, .. } => body.has_suspended(),
            ForestApprox::Sum(alts) => alts.iter().any(|a| a.args.iter().any(Self::has_suspended)),
            ForestApprox::Suspended { .. } => true,
        }
    }

    /// Declarations seen by a suspended leaf once its pending fan-out is applied.
    pub fn effective_context(sigma: &Sequent, pending: &Option<Arc<FanOut>>) -> Vec<(String, Formula)> {
        match pending {
            Some(p) => p.effective_context(&sigma.context),
            None => sigma
                .context
                .iter()
                .map(|(v, f)| (v.to_string(), f.clone()))
                .collect(),
        }
    }
}

/// Unfolds the solution space of `s` to `depth` layers.
pub fn expand_solution(s: &Sequent, depth: usize) -> ForestApprox {
    fn go(ctx: &Context, goal: &Formula, budget: usize) -> ForestApprox {
        if budget == 0 {
            return ForestApprox::suspended(Sequent::new(ctx.clone(), goal.clone()));
        }
        match goal {
            Formula::Imp(a, b) => {
                let x = ctx.fresh_name("x");
                let inner = ctx.with(x.clone(), (**a).clone()).expect("fresh name");
                ForestApprox::Lam {
                    var: x,
                    ann: (**a).clone(),
                    body: Box::new(go(&inner, b, budget - 1)),
                }
            }
            Formula::Atom(p) => ForestApprox::Sum(
                ctx.iter()
                    .filter_map(|(y, f)| {
                        let (args, target) = f.spine();
                        (target == p).then(|| Alternative {
                            head: y.to_string(),
                            args: args.iter().map(|b| go(ctx, b, budget - 1)).collect(),
                        })
                    })
                    .collect(),
            ),
        }
    }
    go(&s.context, &s.goal, depth)
}

/// Re-expands a binding to any requested depth.
pub type Generator = Arc<dyn Fn(usize) -> ForestApprox + Send + Sync>;

#[derive(Clone)]
enum Binding<'t> {
    Gfp {
        node: &'t FinTerm,
        scope: Environment<'t>,
    },
    Generator(Generator),
}

struct EnvNode<'t> {
    fpvar: String,
    sigma: Sequent,
    binding: Binding<'t>,
    next: Environment<'t>,
}

/// Bindings of sequent-typed fixpoint variables to forest producers.
#[derive(Clone, Default)]
pub struct Environment<'t> {
    head: Option<Arc<EnvNode<'t>>>,
}

impl fmt::Debug for Environment<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        let mut cur = &self.head;
        while let Some(node) = cur {
            list.entry(&format_args!("{} @ {{{}}}", node.fpvar, node.sigma));
            cur = &node.next.head;
        }
        list.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("fixpoint variable `{0}` is not bound")]
    Unbound(String),
    #[error("`{fpvar}` is bound at {{{bound}}}, which is not below the reference {{{reference}}}")]
    NotBelow {
        fpvar: String,
        bound: Sequent,
        reference: Sequent,
    },
    #[error("`{fpvar}` is already bound at {{{existing}}}")]
    ConflictingBinding { fpvar: String, existing: Sequent },
}

impl<'t> Environment<'t> {
    pub fn new() -> Self {
        Environment::default()
    }

    fn lookup(&self, fpvar: &str) -> Option<&EnvNode<'t>> {
        let mut cur = &self.head;
        while let Some(node) = cur {
            if node.fpvar == fpvar {
                return Some(node);
            }
            cur = &node.next.head;
        }
        None
    }

    fn push(&self, fpvar: String, sigma: Sequent, binding: Binding<'t>) -> Self {
        Environment {
            head: Some(Arc::new(EnvNode {
                fpvar,
                sigma,
                binding,
                next: self.clone(),
            })),
        }
    }

    /// Binds `fpvar @ sigma` to a generator. A variable may be bound at
    /// one sequent only.
    pub fn bind(&self, fpvar: &str, sigma: Sequent, generator: Generator) -> Result<Self, InterpError> {
        if let Some(node) = self.lookup(fpvar) {
            if node.sigma != sigma {
                return Err(InterpError::ConflictingBinding {
                    fpvar: fpvar.to_string(),
                    existing: node.sigma.clone(),
                });
            }
        }
        Ok(self.push(fpvar.to_string(), sigma, Binding::Generator(generator)))
    }

    /// Binds `fpvar @ sigma` to the solution space of `sigma`.
    pub fn bind_solution(&self, fpvar: &str, sigma: Sequent) -> Result<Self, InterpError> {
        let s = sigma.clone();
        self.bind(fpvar, sigma, Arc::new(move |d| expand_solution(&s, d)))
    }
}

/// Interprets `t` to `depth` layers. A fixpoint reference `X @ σ'` bound at
/// `σ ≤ σ'` re-expands its binding at `σ` with the remaining budget and
/// applies `[σ'/σ]` to the result.
pub fn interp_unfold(t: &FinTerm, depth: usize, env: &Environment<'_>) -> Result<ForestApprox, InterpError> {
    let root = t.root_sequent();
    interp(t, &root.context, depth, env)
}

fn interp<'t>(
    t: &'t FinTerm,
    ctx: &Context,
    budget: usize,
    env: &Environment<'t>,
) -> Result<ForestApprox, InterpError> {
    if let FinTerm::FpRef { fpvar, sigma } = t {
        let node = env
            .lookup(fpvar)
            .ok_or_else(|| InterpError::Unbound(fpvar.clone()))?;
        if !sequent_leq(&node.sigma, sigma) {
            return Err(InterpError::NotBelow {
                fpvar: fpvar.clone(),
                bound: node.sigma.clone(),
                reference: sigma.clone(),
            });
        }
        let expanded = match &node.binding {
            Binding::Gfp { node: gfp, scope } => interp(gfp, &node.sigma.context, budget, scope)?,
            Binding::Generator(g) => g(budget),
        };
        // [Γ/Γ] only adds alternatives already present in a solution space.
        if node.sigma.context == sigma.context {
            return Ok(expanded);
        }
        let subst = ContextSubst::new(node.sigma.context.clone(), sigma.context.clone())
            .expect("checked by sequent_leq");
        return Ok(cocontract_ctx(&subst, &expanded));
    }
    if budget == 0 {
        return Ok(ForestApprox::suspended(Sequent::new(ctx.clone(), t.goal())));
    }
    match t {
        FinTerm::Lam { var, ann, body } => Ok(ForestApprox::Lam {
            var: var.clone(),
            ann: ann.clone(),
            body: Box::new(interp(body, &ctx.with_shadowing(var, ann.clone()), budget - 1, env)?),
        }),
        FinTerm::Gfp { fpvar, sigma, alts } => {
            let inner = env.push(
                fpvar.clone(),
                sigma.clone(),
                Binding::Gfp {
                    node: t,
                    scope: env.clone(),
                },
            );
            let mut out = Vec::with_capacity(alts.len());
            for alt in alts {
                let mut args = Vec::with_capacity(alt.args.len());
                for a in &alt.args {
                    args.push(interp(a, ctx, budget - 1, &inner)?);
                }
                out.push(Alternative {
                    head: alt.head.clone(),
                    args,
                });
            }
            Ok(ForestApprox::Sum(out))
        }
        FinTerm::FpRef { .. } => unreachable!("handled above"),
    }
}

/// Alpha- and set-invariant key of an approximant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ForestKey {
    Lam(Formula, Box<ForestKey>),
    Sum(BTreeSet<(VarRef, Vec<ForestKey>)>),
    Leaf(Formula, BTreeSet<(VarRef, Formula)>),
}

pub fn forest_key(n: &ForestApprox) -> ForestKey {
    key_in(n, &mut Vec::new())
}

/// Key of one alternative, with names bound outside it left free.
pub(crate) fn alternative_key(a: &Alternative) -> (VarRef, Vec<ForestKey>) {
    let mut scope = Vec::new();
    (
        resolve(&scope, &a.head),
        a.args.iter().map(|x| key_in(x, &mut scope)).collect(),
    )
}

fn key_in(n: &ForestApprox, scope: &mut Vec<String>) -> ForestKey {
    fn go(n: &ForestApprox, scope: &mut Vec<String>) -> ForestKey {
        match n {
            ForestApprox::Lam { var, ann, body } => {
                scope.push(var.clone());
                let k = go(body, scope);
                scope.pop();
                ForestKey::Lam(ann.clone(), Box::new(k))
            }
            ForestApprox::Sum(alts) => ForestKey::Sum(
                alts.iter()
                    .map(|a| {
                        (
                            resolve(scope, &a.head),
                            a.args.iter().map(|x| go(x, scope)).collect(),
                        )
                    })
                    .collect(),
            ),
            ForestApprox::Suspended { sigma, pending } => ForestKey::Leaf(
                sigma.goal.clone(),
                ForestApprox::effective_context(sigma, pending)
                    .into_iter()
                    .map(|(w, f)| (resolve(scope, &w), f))
                    .collect(),
            ),
        }
    }
    go(n, scope)
}

/// Equality up to renaming of λ-binders and up to order and multiplicity
/// of alternatives; suspended leaves compare by goal and effective context.
pub fn approx_equal(a: &ForestApprox, b: &ForestApprox) -> bool {
    forest_key(a) == forest_key(b)
}

/// Cuts `n`, an approximant of the forest at `root`, down to `depth`.
pub fn truncate(n: &ForestApprox, root: &Sequent, depth: usize) -> ForestApprox {
    fn go(n: &ForestApprox, ctx: &Context, goal: &Formula, budget: usize) -> ForestApprox {
        if let ForestApprox::Suspended { .. } = n {
            return n.clone();
        }
        if budget == 0 {
            return ForestApprox::suspended(Sequent::new(ctx.clone(), goal.clone()));
        }
        match (n, goal) {
            (ForestApprox::Lam { var, ann, body }, Formula::Imp(_, b)) => ForestApprox::Lam {
                var: var.clone(),
                ann: ann.clone(),
                body: Box::new(go(body, &ctx.with_shadowing(var, ann.clone()), b, budget - 1)),
            },
            (ForestApprox::Sum(alts), _) => ForestApprox::Sum(
                alts.iter()
                    .map(|a| {
                        let goals: Vec<Formula> = ctx
                            .lookup(&a.head)
                            .map(|f| f.spine().0.into_iter().cloned().collect())
                            .unwrap_or_default();
                        Alternative {
                            head: a.head.clone(),
                            args: a
                                .args
                                .iter()
                                .zip(goals.iter())
                                .map(|(x, g)| go(x, ctx, g, budget - 1))
                                .collect(),
                        }
                    })
                    .collect(),
            ),
            _ => n.clone(),
        }
    }
    go(n, &root.context, &root.goal, depth)
}

fn leaf_text(sigma: &Sequent, pending: &Option<Arc<FanOut>>) -> String {
    let decls: Vec<String> = ForestApprox::effective_context(sigma, pending)
        .into_iter()
        .map(|(v, f)| format!("{v}:{f}"))
        .collect();
    if decls.is_empty() {
        format!("?{{|- {}}}", sigma.goal)
    } else {
        format!("?{{{} |- {}}}", decls.join(", "), sigma.goal)
    }
}

/// One-line rendering: `\x:A. N`, `a + b`, `O`, `?{CTX |- p}`.
impl fmt::Display for ForestApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForestApprox::Lam { var, ann, body } => write!(f, "\\{var}:{ann}. {body}"),
            ForestApprox::Sum(alts) if alts.is_empty() => f.write_str("O"),
            ForestApprox::Sum(alts) => {
                for (i, a) in alts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    f.write_str(&a.head)?;
                    if !a.args.is_empty() {
                        f.write_str("<")?;
                        for (j, x) in a.args.iter().enumerate() {
                            if j > 0 {
                                f.write_str(", ")?;
                            }
                            write!(f, "{x}")?;
                        }
                        f.write_str(">")?;
                    }
                }
                Ok(())
            }
            ForestApprox::Suspended { sigma, pending } => f.write_str(&leaf_text(sigma, pending)),
        }
    }
}

/// Indented tree rendering, one node per line.
pub fn pretty(n: &ForestApprox) -> String {
    fn go(n: &ForestApprox, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match n {
            ForestApprox::Lam { var, ann, body } => {
                let _ = writeln!(out, "{pad}\\{var}:{ann}.");
                go(body, indent + 1, out);
            }
            ForestApprox::Sum(alts) if alts.is_empty() => {
                let _ = writeln!(out, "{pad}O");
            }
            ForestApprox::Sum(alts) => {
                for a in alts {
                    let _ = writeln!(out, "{pad}+ {}", a.head);
                    for x in &a.args {
                        go(x, indent + 2, out);
                    }
                }
            }
            ForestApprox::Suspended { sigma, pending } => {
                let _ = writeln!(out, "{pad}{}", leaf_text(sigma, pending));
            }
        }
    }
    let mut out = String::new();
    go(n, 0, &mut out);
    out
}

/// Graphviz rendering of the approximant as a tree.
pub fn to_dot(n: &ForestApprox) -> String {
    fn esc(s: &str) -> String {
        s.replace('\\', "\\\\").replace('"', "\\\"")
    }
    fn go(n: &ForestApprox, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        match n {
            ForestApprox::Lam { var, ann, body } => {
                let _ = writeln!(out, "  n{id} [label=\"{}\", shape=box];", esc(&format!("λ{var}:{ann}")));
                let child = go(body, next, out);
                let _ = writeln!(out, "  n{id} -> n{child};");
            }
            ForestApprox::Sum(alts) => {
                let label = if alts.is_empty() { "O" } else { "+" };
                let _ = writeln!(out, "  n{id} [label=\"{label}\", shape=circle];");
                for a in alts {
                    let aid = *next;
                    *next += 1;
                    let _ = writeln!(out, "  n{aid} [label=\"{}\", shape=ellipse];", esc(&a.head));
                    let _ = writeln!(out, "  n{id} -> n{aid};");
                    for (i, x) in a.args.iter().enumerate() {
                        let child = go(x, next, out);
                        let _ = writeln!(out, "  n{aid} -> n{child} [label=\"{}\"];", i + 1);
                    }
                }
            }
            ForestApprox::Suspended { sigma, pending } => {
                let _ = writeln!(
                    out,
                    "  n{id} [label=\"{}\", shape=note, style=dashed];",
                    esc(&leaf_text(sigma, pending))
                );
            }
        }
        id
    }
    let mut out = String::from("digraph forest {\n");
    let mut next = 0;
    go(n, &mut next, &mut out);
    out.push_str("}\n");
    out
}
