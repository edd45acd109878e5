//! Implicational formulas, contexts and sequents.
//!
//! Concrete syntax:
//!
//! ```text
//! formula     := arrow
//! arrow       := atomOrParen ("->" arrow)?
//! atomOrParen := IDENT | "(" formula ")"
//! context     := (IDENT ":" formula ("," IDENT ":" formula)*)?
//! sequent     := context "|-" formula
//! ```
//!
//! `->` associates to the right and printing emits the fewest parentheses.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(String),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn imp(antecedent: Formula, consequent: Formula) -> Self {
        Formula::Imp(Arc::new(antecedent), Arc::new(consequent))
    }

    /// Folds `A1 -> ... -> An -> head`.
    pub fn from_spine(prefix: impl IntoIterator<Item = Formula>, head: impl Into<String>) -> Self {
        let prefix: Vec<Formula> = prefix.into_iter().collect();
        prefix
            .into_iter()
            .rev()
            .fold(Formula::Atom(head.into()), |acc, a| Formula::imp(a, acc))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Formula::Atom(p) => Some(p),
            Formula::Imp(..) => None,
        }
    }

    /// The unique decomposition `A⃗ ⊃ p`, borrowing the antecedents.
    pub fn spine(&self) -> (Vec<&Formula>, &str) {
        let mut prefix = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Atom(p) => return (prefix, p),
                Formula::Imp(a, b) => {
                    prefix.push(a.as_ref());
                    cur = b;
                }
            }
        }
    }

    /// Every antecedent on the spine is atomic.
    pub fn is_horn(&self) -> bool {
        self.spine().0.iter().all(|a| a.is_atom())
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            if let Formula::Imp(a, b) = self {
                a.subformulas(out);
                b.subformulas(out);
            }
        }
    }

    /// Nesting depth of `->`; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// `(prefix, head)` with `f == Formula::from_spine(prefix, head)`.
pub fn decompose(f: &Formula) -> (Vec<Formula>, String) {
    let (prefix, head) = f.spine();
    (prefix.into_iter().cloned().collect(), head.to_string())
}

pub fn is_horn(f: &Formula) -> bool {
    f.is_horn()
}

pub fn is_horn_sequent(s: &Sequent) -> bool {
    s.goal.is_atom() && s.context.iter().all(|(_, f)| f.is_horn())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => f.write_str(p),
            Formula::Imp(a, b) => {
                if a.is_atom() {
                    write!(f, "{a}->{b}")
                } else {
                    write!(f, "({a})->{b}")
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binding {
    pub var: String,
    pub formula: Formula,
}

/// Ordered list of declarations `x:A` with pairwise distinct variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Binding>", into = "Vec<Binding>")]
pub struct Context {
    bindings: Vec<Binding>,
}

impl TryFrom<Vec<Binding>> for Context {
    type Error = ContextError;

    fn try_from(bindings: Vec<Binding>) -> Result<Self, Self::Error> {
        let mut ctx = Context::new();
        for b in bindings {
            ctx.push(b.var, b.formula)?;
        }
        Ok(ctx)
    }
}

impl From<Context> for Vec<Binding> {
    fn from(ctx: Context) -> Self {
        ctx.bindings
    }
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, ContextError>
    where
        I: IntoIterator<Item = (S, Formula)>,
        S: Into<String>,
    {
        let mut ctx = Context::new();
        for (v, f) in pairs {
            ctx.push(v, f)?;
        }
        Ok(ctx)
    }

    pub fn push(&mut self, var: impl Into<String>, formula: Formula) -> Result<(), ContextError> {
        let var = var.into();
        if self.lookup(&var).is_some() {
            return Err(ContextError::DuplicateVariable(var));
        }
        self.bindings.push(Binding { var, formula });
        Ok(())
    }

    pub fn with(&self, var: impl Into<String>, formula: Formula) -> Result<Self, ContextError> {
        let mut ctx = self.clone();
        ctx.push(var, formula)?;
        Ok(ctx)
    }

    /// Extends with `var:formula`, dropping an earlier declaration of `var`.
    pub fn with_shadowing(&self, var: &str, formula: Formula) -> Self {
        let mut ctx = self.clone();
        ctx.bindings.retain(|b| b.var != var);
        ctx.bindings.push(Binding {
            var: var.to_string(),
            formula,
        });
        ctx
    }

    pub fn lookup(&self, var: &str) -> Option<&Formula> {
        self.bindings
            .iter()
            .find(|b| b.var == var)
            .map(|b| &b.formula)
    }

    pub fn contains_binding(&self, var: &str, formula: &Formula) -> bool {
        self.lookup(var) == Some(formula)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> + '_ {
        self.bindings.iter().map(|b| (b.var.as_str(), &b.formula))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.bindings.iter().map(|b| b.var.as_str())
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// `|Γ|`: the set of declared formulas.
    pub fn formula_set(&self) -> BTreeSet<Formula> {
        self.bindings.iter().map(|b| b.formula.clone()).collect()
    }

    /// Every declaration of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &Context) -> bool {
        self.iter().all(|(v, f)| other.contains_binding(v, f))
    }

    /// Same declarations, ignoring order.
    pub fn same_bindings(&self, other: &Context) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// First name of the form `{base}{n}` not declared here.
    pub fn fresh_name(&self, base: &str) -> String {
        (0..)
            .map(|n| format!("{base}{n}"))
            .find(|c| self.lookup(c).is_none())
            .expect("unbounded name supply")
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{}", b.var, b.formula)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequent {
    pub context: Context,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(context: Context, goal: Formula) -> Self {
        Sequent { context, goal }
    }

    /// Variable names erased; `None` unless the goal is an atom.
    pub fn stripped(&self) -> Option<StrippedSequent> {
        Some(StrippedSequent {
            formulas: self.context.formula_set(),
            goal_atom: self.goal.as_atom()?.to_string(),
        })
    }

    /// Subformula closure of every formula in the sequent.
    pub fn closure(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        for (_, f) in self.context.iter() {
            f.subformulas(&mut out);
        }
        self.goal.subformulas(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context.is_empty() {
            write!(f, "|- {}", self.goal)
        } else {
            write!(f, "{} |- {}", self.context, self.goal)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrippedSequent {
    pub formulas: BTreeSet<Formula>,
    pub goal_atom: String,
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let f = formula(&mut cur)?;
    cur.finish()?;
    Ok(f)
}

pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let mut cur = Cursor::new(text)?;
    let ctx = context(&mut cur)?;
    cur.finish()?;
    Ok(ctx)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut cur = Cursor::new(text)?;
    let s = sequent(&mut cur)?;
    cur.finish()?;
    Ok(s)
}

pub(crate) fn formula(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = match cur.peek() {
        Some(Tok::Ident(_)) => Formula::Atom(cur.ident()?),
        Some(Tok::LParen) => {
            cur.bump();
            let inner = formula(cur)?;
            cur.expect(&Tok::RParen)?;
            inner
        }
        _ => return Err(cur.unexpected("an atom or `(`")),
    };
    if cur.eat(&Tok::Arrow) {
        Ok(Formula::imp(lhs, formula(cur)?))
    } else {
        Ok(lhs)
    }
}

pub(crate) fn context(cur: &mut Cursor) -> Result<Context, ParseError> {
    let mut ctx = Context::new();
    if !matches!(cur.peek(), Some(Tok::Ident(_))) {
        return Ok(ctx);
    }
    loop {
        let pos = cur.pos();
        let var = cur.ident()?;
        cur.expect(&Tok::Colon)?;
        let f = formula(cur)?;
        ctx.push(var, f)
            .map_err(|e| ParseError::new(pos, e.to_string()))?;
        if !cur.eat(&Tok::Comma) {
            return Ok(ctx);
        }
    }
}

pub(crate) fn sequent(cur: &mut Cursor) -> Result<Sequent, ParseError> {
    let ctx = context(cur)?;
    cur.expect(&Tok::Turnstile)?;
    let goal = formula(cur)?;
    Ok(Sequent::new(ctx, goal))
}
