//! Finite cut-free λ̄ proof terms and their inductive typing.
//!
//! Concrete syntax: `\x:A. t` for abstraction, `x<t1,...,tk>` for an
//! application with an argument list, and a bare `x` for the empty list.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{self, Context, Formula};
use crate::syntax::{Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LambdaBarTerm {
    Lam {
        var: String,
        ann: Formula,
        body: Box<LambdaBarTerm>,
    },
    App {
        head: String,
        args: Vec<LambdaBarTerm>,
    },
}

/// A variable occurrence after alpha-normalisation: bound variables are
/// identified by the binder depth (de Bruijn level) of their λ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarRef {
    Bound(usize),
    Free(String),
}

pub(crate) fn resolve(scope: &[String], name: &str) -> VarRef {
    match scope.iter().rposition(|n| n == name) {
        Some(level) => VarRef::Bound(level),
        None => VarRef::Free(name.to_string()),
    }
}

/// Alpha-invariant key of a term; equal keys iff alpha-equivalent terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermKey {
    Lam(Formula, Box<TermKey>),
    App(VarRef, Vec<TermKey>),
}

impl LambdaBarTerm {
    pub fn lam(var: impl Into<String>, ann: Formula, body: LambdaBarTerm) -> Self {
        LambdaBarTerm::Lam {
            var: var.into(),
            ann,
            body: Box::new(body),
        }
    }

    pub fn app(head: impl Into<String>, args: Vec<LambdaBarTerm>) -> Self {
        LambdaBarTerm::App {
            head: head.into(),
            args,
        }
    }

    pub fn var(name: impl Into<String>) -> Self {
        LambdaBarTerm::app(name, Vec::new())
    }

    /// Constructor count: a λ counts 1, an application `1 + Σ args`.
    pub fn size(&self) -> usize {
        match self {
            LambdaBarTerm::Lam { body, .. } => 1 + body.size(),
            LambdaBarTerm::App { args, .. } => 1 + args.iter().map(Self::size).sum::<usize>(),
        }
    }

    pub fn contains_lambda(&self) -> bool {
        match self {
            LambdaBarTerm::Lam { .. } => true,
            LambdaBarTerm::App { args, .. } => args.iter().any(Self::contains_lambda),
        }
    }

    pub fn alpha_key(&self) -> TermKey {
        fn go(t: &LambdaBarTerm, scope: &mut Vec<String>) -> TermKey {
            match t {
                LambdaBarTerm::Lam { var, ann, body } => {
                    scope.push(var.clone());
                    let k = go(body, scope);
                    scope.pop();
                    TermKey::Lam(ann.clone(), Box::new(k))
                }
                LambdaBarTerm::App { head, args } => TermKey::App(
                    resolve(scope, head),
                    args.iter().map(|a| go(a, scope)).collect(),
                ),
            }
        }
        go(self, &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &LambdaBarTerm) -> bool {
        self.alpha_key() == other.alpha_key()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(t: &LambdaBarTerm, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                LambdaBarTerm::Lam { var, body, .. } => {
                    scope.push(var.clone());
                    go(body, scope, out);
                    scope.pop();
                }
                LambdaBarTerm::App { head, args } => {
                    if !scope.contains(head) {
                        out.insert(head.clone());
                    }
                    for a in args {
                        go(a, scope, out);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Alpha-equivalent term whose binders are pairwise distinct and avoid
    /// both `avoid` and the free variables of `self`.
    pub fn rename_apart(&self, avoid: &BTreeSet<String>) -> LambdaBarTerm {
        let mut used: BTreeSet<String> = avoid.union(&self.free_vars()).cloned().collect();
        fn go(
            t: &LambdaBarTerm,
            renames: &mut Vec<(String, String)>,
            used: &mut BTreeSet<String>,
        ) -> LambdaBarTerm {
            match t {
                LambdaBarTerm::Lam { var, ann, body } => {
                    let fresh = (0..)
                        .map(|n| format!("{var}{n}"))
                        .find(|c| !used.contains(c))
                        .expect("unbounded name supply");
                    used.insert(fresh.clone());
                    renames.push((var.clone(), fresh.clone()));
                    let body = go(body, renames, used);
                    renames.pop();
                    LambdaBarTerm::lam(fresh, ann.clone(), body)
                }
                LambdaBarTerm::App { head, args } => {
                    let head = renames
                        .iter()
                        .rev()
                        .find(|(old, _)| old == head)
                        .map_or_else(|| head.clone(), |(_, new)| new.clone());
                    LambdaBarTerm::app(head, args.iter().map(|a| go(a, renames, used)).collect())
                }
            }
        }
        go(self, &mut Vec::new(), &mut used)
    }
}

impl fmt::Display for LambdaBarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaBarTerm::Lam { var, ann, body } => write!(f, "\\{var}:{ann}. {body}"),
            LambdaBarTerm::App { head, args } => {
                f.write_str(head)?;
                if !args.is_empty() {
                    f.write_str("<")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(">")?;
                }
                Ok(())
            }
        }
    }
}

pub fn parse_term(text: &str) -> Result<LambdaBarTerm, ParseError> {
    let mut cur = Cursor::new(text)?;
    let t = term(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

fn term(cur: &mut Cursor) -> Result<LambdaBarTerm, ParseError> {
    if cur.eat(&Tok::Backslash) {
        let var = cur.ident()?;
        cur.expect(&Tok::Colon)?;
        let ann = formula::formula(cur)?;
        cur.expect(&Tok::Dot)?;
        let body = term(cur)?;
        return Ok(LambdaBarTerm::lam(var, ann, body));
    }
    let head = cur.ident()?;
    let mut args = Vec::new();
    if cur.eat(&Tok::Lt) {
        if !cur.eat(&Tok::Gt) {
            loop {
                args.push(term(cur)?);
                if cur.eat(&Tok::Gt) {
                    break;
                }
                cur.expect(&Tok::Comma)?;
            }
        }
    }
    Ok(LambdaBarTerm::app(head, args))
}

/// The unique `A` with `Γ ⊢ t : A`, if any.
///
/// Checks by inversion: a λ checks its body in the extended context, and
/// `x<t1..tk>` checks iff `x : B1 -> .. -> Bk -> p` is declared and every
/// `ti` checks against `Bi`, yielding `p`. A λ whose variable is already
/// declared shadows the earlier declaration.
pub fn typecheck(ctx: &Context, t: &LambdaBarTerm) -> Option<Formula> {
    match t {
        LambdaBarTerm::Lam { var, ann, body } => {
            let inner = ctx.with_shadowing(var, ann.clone());
            let c = typecheck(&inner, body)?;
            Some(Formula::imp(ann.clone(), c))
        }
        LambdaBarTerm::App { head, args } => {
            let declared = ctx.lookup(head)?;
            let (prefix, target) = declared.spine();
            if prefix.len() != args.len() {
                return None;
            }
            for (b, arg) in prefix.iter().zip(args) {
                if typecheck(ctx, arg).as_ref() != Some(*b) {
                    return None;
                }
            }
            Some(Formula::atom(target))
        }
    }
}

/// `Γ ⊢ t : A` as a yes/no question.
pub fn checks_against(ctx: &Context, t: &LambdaBarTerm, goal: &Formula) -> bool {
    typecheck(ctx, t).as_ref() == Some(goal)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornError {
    #[error("context declaration `{0}` is not a Horn formula")]
    NotHornContext(String),
    #[error("λ-abstractions do not occur in Horn proofs")]
    ContainsLambda,
}

/// Typing restricted to the Horn fragment: λ-free terms in Horn contexts.
pub fn typecheck_horn(ctx: &Context, t: &LambdaBarTerm) -> Result<Option<String>, HornError> {
    if let Some((v, _)) = ctx.iter().find(|(_, f)| !f.is_horn()) {
        return Err(HornError::NotHornContext(v.to_string()));
    }
    if t.contains_lambda() {
        return Err(HornError::ContainsLambda);
    }
    let index: HashMap<&str, (Vec<&str>, &str)> = ctx
        .iter()
        .map(|(v, f)| {
            let (prefix, target) = f.spine();
            let atoms = prefix.iter().filter_map(|a| a.as_atom()).collect();
            (v, (atoms, target))
        })
        .collect();
    fn go<'a>(index: &HashMap<&str, (Vec<&'a str>, &'a str)>, t: &LambdaBarTerm) -> Option<&'a str> {
        let LambdaBarTerm::App { head, args } = t else {
            return None;
        };
        let (prefix, target) = index.get(head.as_str())?;
        if prefix.len() != args.len() {
            return None;
        }
        for (q, arg) in prefix.iter().zip(args) {
            if go(index, arg) != Some(*q) {
                return None;
            }
        }
        Some(target)
    }
    Ok(go(&index, t).map(str::to_string))
}
