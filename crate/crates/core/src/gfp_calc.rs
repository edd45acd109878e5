//! Finitary terms with sequent-typed greatest fixed points, and the
//! synthesis maps that produce a closed finitary description of the
//! solution space of a sequent.
//!
//! Text form:
//!
//! ```text
//! \z0:A. N                        abstraction
//! gfp X @ {CTX |- p}. E1 + E2     fixed point over a sum of alternatives
//! gfp X @ {CTX |- p}. O           fixed point over the empty sum
//! X @ {CTX |- p}                  fixpoint variable at a sequent
//! x<N1, ..., Nk>                  elimination alternative
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cocontract::sequent_leq;
use crate::formula::{self, is_horn_sequent, Context, Formula, Sequent, StrippedSequent};
use crate::syntax::{Cursor, ParseError, Tok};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FinTerm {
    Lam {
        var: String,
        ann: Formula,
        body: Box<FinTerm>,
    },
    Gfp {
        fpvar: String,
        sigma: Sequent,
        alts: Vec<ElimAlt>,
    },
    FpRef {
        fpvar: String,
        sigma: Sequent,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElimAlt {
    pub head: String,
    pub args: Vec<FinTerm>,
}

impl FinTerm {
    pub fn lam(var: impl Into<String>, ann: Formula, body: FinTerm) -> Self {
        FinTerm::Lam {
            var: var.into(),
            ann,
            body: Box::new(body),
        }
    }

    pub fn gfp(fpvar: impl Into<String>, sigma: Sequent, alts: Vec<ElimAlt>) -> Self {
        FinTerm::Gfp {
            fpvar: fpvar.into(),
            sigma,
            alts,
        }
    }

    pub fn fpref(fpvar: impl Into<String>, sigma: Sequent) -> Self {
        FinTerm::FpRef {
            fpvar: fpvar.into(),
            sigma,
        }
    }

    /// Goal formula of the sequent this term inhabits.
    pub fn goal(&self) -> Formula {
        match self {
            FinTerm::Lam { ann, body, .. } => Formula::imp(ann.clone(), body.goal()),
            FinTerm::Gfp { sigma, .. } | FinTerm::FpRef { sigma, .. } => sigma.goal.clone(),
        }
    }

    /// The sequent at the root, read off the first fixpoint annotation
    /// below the λ-prefix.
    pub fn root_sequent(&self) -> Sequent {
        match self {
            FinTerm::Lam { var, ann, body } => {
                let inner = body.root_sequent();
                let ctx = Context::from_pairs(
                    inner
                        .context
                        .iter()
                        .filter(|(v, _)| v != var)
                        .map(|(v, f)| (v.to_string(), f.clone())),
                )
                .expect("sub-list of a valid context");
                Sequent::new(ctx, Formula::imp(ann.clone(), inner.goal))
            }
            FinTerm::Gfp { sigma, .. } | FinTerm::FpRef { sigma, .. } => sigma.clone(),
        }
    }

    /// Number of syntax nodes (λ, gfp, variable occurrences, alternatives).
    pub fn node_count(&self) -> usize {
        match self {
            FinTerm::Lam { body, .. } => 1 + body.node_count(),
            FinTerm::Gfp { alts, .. } => {
                1 + alts
                    .iter()
                    .map(|a| 1 + a.args.iter().map(Self::node_count).sum::<usize>())
                    .sum::<usize>()
            }
            FinTerm::FpRef { .. } => 1,
        }
    }

    /// The term with its λ-prefix stripped.
    pub fn strip_lambdas(&self) -> &FinTerm {
        match self {
            FinTerm::Lam { body, .. } => body.strip_lambdas(),
            other => other,
        }
    }
}

pub fn free_fpvars(t: &FinTerm) -> BTreeSet<String> {
    fn go<'a>(t: &'a FinTerm, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match t {
            FinTerm::Lam { body, .. } => go(body, bound, out),
            FinTerm::Gfp { fpvar, alts, .. } => {
                bound.push(fpvar);
                for a in alts {
                    for arg in &a.args {
                        go(arg, bound, out);
                    }
                }
                bound.pop();
            }
            FinTerm::FpRef { fpvar, .. } => {
                if !bound.contains(&fpvar.as_str()) {
                    out.insert(fpvar.clone());
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellFormednessError {
    #[error("fixpoint variable `{0}` occurs free")]
    Free(String),
    #[error("`{fpvar}` is bound at {{{bound}}} but referenced at {{{reference}}}, which is not above it")]
    NotBelow {
        fpvar: String,
        bound: Sequent,
        reference: Sequent,
    },
}

/// Closed, and every `X @ σ'` under `gfp X @ σ` has `σ ≤ σ'`.
pub fn validate(t: &FinTerm) -> Result<(), WellFormednessError> {
    fn go<'a>(t: &'a FinTerm, bound: &mut Vec<(&'a str, &'a Sequent)>) -> Result<(), WellFormednessError> {
        match t {
            FinTerm::Lam { body, .. } => go(body, bound),
            FinTerm::Gfp { fpvar, sigma, alts } => {
                bound.push((fpvar, sigma));
                for a in alts {
                    for arg in &a.args {
                        go(arg, bound)?;
                    }
                }
                bound.pop();
                Ok(())
            }
            FinTerm::FpRef { fpvar, sigma } => {
                let Some((_, at)) = bound.iter().rev().find(|(x, _)| x == fpvar) else {
                    return Err(WellFormednessError::Free(fpvar.clone()));
                };
                if sequent_leq(at, sigma) {
                    Ok(())
                } else {
                    Err(WellFormednessError::NotBelow {
                        fpvar: fpvar.clone(),
                        bound: (*at).clone(),
                        reference: sigma.clone(),
                    })
                }
            }
        }
    }
    go(t, &mut Vec::new())
}

/// Every gfp node lists alternatives with pairwise distinct
/// (head, argument goals) profiles.
pub fn alternatives_distinct(t: &FinTerm) -> bool {
    match t {
        FinTerm::Lam { body, .. } => alternatives_distinct(body),
        FinTerm::FpRef { .. } => true,
        FinTerm::Gfp { alts, .. } => {
            let profiles: BTreeSet<(&str, Vec<Formula>)> = alts
                .iter()
                .map(|a| (a.head.as_str(), a.args.iter().map(FinTerm::goal).collect()))
                .collect();
            profiles.len() == alts.len()
                && alts
                    .iter()
                    .all(|a| a.args.iter().all(alternatives_distinct))
        }
    }
}

/// `a · 2^k` for the subformula closure of `formulas`, with `a` atoms and
/// `k` formulas in total: the number of stripped sequents over it.
/// Saturates at `u128::MAX`.
pub fn measure(formulas: &BTreeSet<Formula>) -> u128 {
    let mut closure = BTreeSet::new();
    for f in formulas {
        f.subformulas(&mut closure);
    }
    let atoms = closure.iter().filter(|f| f.is_atom()).count() as u128;
    let k = closure.len() as u32;
    match 1u128.checked_shl(k) {
        Some(pow) if k < 128 => atoms.saturating_mul(pow),
        _ => u128::MAX,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("sequent is not in the Horn fragment")]
    NotHorn,
    #[error("fixpoint accumulator reached {entries} entries, above the bound {bound}")]
    BudgetExceeded { entries: usize, bound: u128 },
    #[error("stripped sequent {0} was declared twice along one branch")]
    RepeatedStrippedSequent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisStats {
    /// Longest fixpoint accumulator seen on any branch.
    pub accumulator_peak: usize,
    /// `measure` of the root sequent's subformula closure.
    pub bound: u128,
    pub nodes: usize,
}

/// Ordered fixpoint declarations; no variable and no sequent occurs twice.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixpointDecls {
    decls: Vec<(String, Sequent, StrippedSequent)>,
}

impl FixpointDecls {
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Sequent)> + '_ {
        self.decls.iter().map(|(x, s, _)| (x.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    /// Oldest declaration `X : Θ ⊢ q` with `q = p`, `Θ ⊆ ctx` and
    /// `|Θ| = formulas`.
    fn find_lower(&self, ctx: &Context, p: &str, formulas: &BTreeSet<Formula>) -> Option<&str> {
        self.decls
            .iter()
            .find(|(_, th, st)| {
                st.goal_atom == p && &st.formulas == formulas && th.context.is_subset_of(ctx)
            })
            .map(|(x, _, _)| x.as_str())
    }
}

struct Synthesizer {
    avoid: BTreeSet<String>,
    next_var: usize,
    next_fp: usize,
    bound: u128,
    peak: usize,
}

impl Synthesizer {
    fn new(s: &Sequent) -> Self {
        Synthesizer {
            avoid: s.context.names().map(str::to_string).collect(),
            next_var: 0,
            next_fp: 0,
            bound: measure(&s.closure()),
            peak: 0,
        }
    }

    fn fresh_var(&mut self) -> String {
        loop {
            let name = format!("z{}", self.next_var);
            self.next_var += 1;
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }

    fn fresh_fp(&mut self) -> String {
        let name = format!("X{}", self.next_fp);
        self.next_fp += 1;
        name
    }

    fn build(&mut self, ctx: &Context, goal: &Formula, xi: &mut FixpointDecls) -> Result<FinTerm, SynthesisError> {
        let (prefix, p) = goal.spine();
        let mut delta = ctx.clone();
        let mut binders = Vec::with_capacity(prefix.len());
        for a in prefix {
            let z = self.fresh_var();
            delta
                .push(z.clone(), a.clone())
                .expect("fresh names are not declared");
            binders.push((z, a.clone()));
        }
        let sigma = Sequent::new(delta, Formula::atom(p));
        let stripped = sigma.stripped().expect("atomic goal");

        let body = if let Some(x) = xi.find_lower(ctx, p, &stripped.formulas) {
            FinTerm::fpref(x, sigma)
        } else {
            if xi.decls.iter().any(|(_, _, st)| st == &stripped) {
                return Err(SynthesisError::RepeatedStrippedSequent(sigma.to_string()));
            }
            let entries = xi.len() + 1;
            if entries as u128 > self.bound {
                return Err(SynthesisError::BudgetExceeded {
                    entries,
                    bound: self.bound,
                });
            }
            self.peak = self.peak.max(entries);
            let y = self.fresh_fp();
            xi.decls.push((y.clone(), sigma.clone(), stripped));
            let delta = &sigma.context;
            let mut alts = Vec::new();
            for (v, f) in delta.iter() {
                let (args, target) = f.spine();
                if target != p {
                    continue;
                }
                let mut built = Vec::with_capacity(args.len());
                for b in args {
                    built.push(self.build(delta, b, xi)?);
                }
                alts.push(ElimAlt {
                    head: v.to_string(),
                    args: built,
                });
            }
            xi.decls.pop();
            FinTerm::gfp(y, sigma.clone(), alts)
        };
        Ok(binders
            .into_iter()
            .rev()
            .fold(body, |acc, (z, a)| FinTerm::lam(z, a, acc)))
    }
}

/// Closed finitary term whose interpretation is the solution space of `s`.
pub fn synthesize(s: &Sequent) -> Result<FinTerm, SynthesisError> {
    synthesize_with_stats(s).map(|(t, _)| t)
}

pub fn synthesize_with_stats(s: &Sequent) -> Result<(FinTerm, SynthesisStats), SynthesisError> {
    let mut synth = Synthesizer::new(s);
    let t = synth.build(&s.context, &s.goal, &mut FixpointDecls::default())?;
    let stats = SynthesisStats {
        accumulator_peak: synth.peak,
        bound: synth.bound,
        nodes: t.node_count(),
    };
    Ok((t, stats))
}

/// The Horn-fragment map: one fixpoint variable `X_p` per atom, all
/// recursion relative to the fixed context.
pub fn synthesize_horn(s: &Sequent) -> Result<FinTerm, SynthesisError> {
    if !is_horn_sequent(s) {
        return Err(SynthesisError::NotHorn);
    }
    fn go(ctx: &Context, p: &str, open: &mut Vec<String>) -> FinTerm {
        let sigma = Sequent::new(ctx.clone(), Formula::atom(p));
        let x = format!("X_{p}");
        if open.iter().any(|q| q == p) {
            return FinTerm::fpref(x, sigma);
        }
        open.push(p.to_string());
        let alts = ctx
            .iter()
            .filter(|(_, f)| f.spine().1 == p)
            .map(|(y, f)| ElimAlt {
                head: y.to_string(),
                args: f
                    .spine()
                    .0
                    .iter()
                    .map(|r| go(ctx, r.as_atom().expect("Horn antecedent"), open))
                    .collect(),
            })
            .collect();
        open.pop();
        FinTerm::gfp(x, sigma, alts)
    }
    let goal = s.goal.as_atom().expect("Horn goal");
    Ok(go(&s.context, goal, &mut Vec::new()))
}

fn write_sequent_braced(f: &mut fmt::Formatter<'_>, s: &Sequent) -> fmt::Result {
    write!(f, "{{{s}}}")
}

impl fmt::Display for FinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinTerm::Lam { var, ann, body } => write!(f, "\\{var}:{ann}. {body}"),
            FinTerm::Gfp { fpvar, sigma, alts } => {
                write!(f, "gfp {fpvar} @ ")?;
                write_sequent_braced(f, sigma)?;
                f.write_str(". ")?;
                if alts.is_empty() {
                    return f.write_str("O");
                }
                for (i, a) in alts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
            FinTerm::FpRef { fpvar, sigma } => {
                write!(f, "{fpvar} @ ")?;
                write_sequent_braced(f, sigma)
            }
        }
    }
}

impl fmt::Display for ElimAlt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.args.is_empty() {
            f.write_str("<")?;
            for (i, a) in self.args.iter().enumerate() {
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

pub fn parse_finterm(text: &str) -> Result<FinTerm, ParseError> {
    let mut cur = Cursor::new(text)?;
    let t = finterm(&mut cur)?;
    cur.finish()?;
    Ok(t)
}

fn braced_sequent(cur: &mut Cursor) -> Result<Sequent, ParseError> {
    cur.expect(&Tok::At)?;
    cur.expect(&Tok::LBrace)?;
    let s = formula::sequent(cur)?;
    cur.expect(&Tok::RBrace)?;
    Ok(s)
}

fn finterm(cur: &mut Cursor) -> Result<FinTerm, ParseError> {
    match cur.peek() {
        Some(Tok::Backslash) => {
            cur.bump();
            let var = cur.ident()?;
            cur.expect(&Tok::Colon)?;
            let ann = formula::formula(cur)?;
            cur.expect(&Tok::Dot)?;
            Ok(FinTerm::lam(var, ann, finterm(cur)?))
        }
        Some(Tok::Ident(kw)) if kw == "gfp" && matches!(cur.peek2(), Some(Tok::Upper(_))) => {
            cur.bump();
            let fpvar = cur.upper()?;
            let sigma = braced_sequent(cur)?;
            cur.expect(&Tok::Dot)?;
            let mut alts = Vec::new();
            if !cur.eat(&Tok::Upper("O".into())) {
                loop {
                    alts.push(elim_alt(cur)?);
                    if !cur.eat(&Tok::Plus) {
                        break;
                    }
                }
            }
            Ok(FinTerm::gfp(fpvar, sigma, alts))
        }
        Some(Tok::Upper(_)) => {
            let fpvar = cur.upper()?;
            let sigma = braced_sequent(cur)?;
            Ok(FinTerm::fpref(fpvar, sigma))
        }
        _ => Err(cur.unexpected("`\\`, `gfp` or a fixpoint variable")),
    }
}

fn elim_alt(cur: &mut Cursor) -> Result<ElimAlt, ParseError> {
    let head = cur.ident()?;
    let mut args = Vec::new();
    if cur.eat(&Tok::Lt) && !cur.eat(&Tok::Gt) {
        loop {
            args.push(finterm(cur)?);
            if cur.eat(&Tok::Gt) {
                break;
            }
            cur.expect(&Tok::Comma)?;
        }
    }
    Ok(ElimAlt { head, args })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, parse_sequent};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn set(fs: &[&str]) -> BTreeSet<Formula> {
        fs.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    #[test]
    fn church_numerals_synthesis() {
        let t = synthesize(&seq("|- (p->p)->p->p")).unwrap();
        let expected = parse_finterm(
            "\\z0:p->p. \\z1:p. gfp X0 @ {z0:p->p, z1:p |- p}. \
             z0<X0 @ {z0:p->p, z1:p |- p}> + z1",
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn peirce_synthesis_hand_run() {
        let t = synthesize(&seq("|- ((p->q)->p)->p")).unwrap();
        let expected = parse_finterm(
            "\\z0:(p->q)->p. gfp X0 @ {z0:(p->q)->p |- p}. \
             z0<\\z1:p. gfp X1 @ {z0:(p->q)->p, z1:p |- q}. O>",
        )
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn horn_example_synthesis() {
        let s = seq("x:p->q->p, y:q->p->q, z:p |- p");
        let t = synthesize_horn(&s).unwrap();
        let ctx = "x:p->q->p, y:q->p->q, z:p";
        let expected = parse_finterm(&format!(
            "gfp X_p @ {{{ctx} |- p}}. x<X_p @ {{{ctx} |- p}}, \
             gfp X_q @ {{{ctx} |- q}}. y<X_q @ {{{ctx} |- q}}, X_p @ {{{ctx} |- p}}>> + z"
        ))
        .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn horn_trivial_cases() {
        let t = synthesize_horn(&seq("z:p |- p")).unwrap();
        assert_eq!(t, parse_finterm("gfp X_p @ {z:p |- p}. z").unwrap());
        let t = synthesize_horn(&seq("x:q->p |- p")).unwrap();
        assert_eq!(
            t,
            parse_finterm("gfp X_p @ {x:q->p |- p}. x<gfp X_q @ {x:q->p |- q}. O>").unwrap()
        );
        assert_eq!(synthesize_horn(&seq("|- p->p")), Err(SynthesisError::NotHorn));
    }

    #[test]
    fn general_synthesis_of_horn_example_uses_the_same_equations() {
        let s = seq("x:p->q->p, y:q->p->q, z:p |- p");
        let t = synthesize(&s).unwrap();
        let FinTerm::Gfp { alts, .. } = &t else { panic!("{t}") };
        let heads: Vec<_> = alts.iter().map(|a| a.head.as_str()).collect();
        assert_eq!(heads, ["x", "z"]);
        assert!(matches!(&alts[0].args[0], FinTerm::FpRef { fpvar, .. } if fpvar == "X0"));
        let FinTerm::Gfp { alts: q_alts, .. } = &alts[0].args[1] else { panic!() };
        assert_eq!(q_alts.len(), 1);
        assert_eq!(q_alts[0].head, "y");
        assert!(matches!(&q_alts[0].args[0], FinTerm::FpRef { fpvar, .. } if fpvar == "X1"));
        assert!(matches!(&q_alts[0].args[1], FinTerm::FpRef { fpvar, .. } if fpvar == "X0"));
    }

    #[test]
    fn free_fpvar_examples() {
        let s = seq("x:p |- p");
        let r = FinTerm::fpref("X", s.clone());
        assert_eq!(free_fpvars(&r), ["X".to_string()].into());
        let g = FinTerm::gfp(
            "X",
            s,
            vec![ElimAlt {
                head: "x".into(),
                args: vec![r],
            }],
        );
        assert!(free_fpvars(&g).is_empty());
        for text in ["|- (p->p)->p->p", "|- ((p->q)->p)->p", "|- ((((p->q)->p)->p)->q)->q"] {
            assert!(free_fpvars(&synthesize(&seq(text)).unwrap()).is_empty());
        }
    }

    #[test]
    fn measure_examples() {
        assert_eq!(measure(&set(&["p"])), 2);
        assert_eq!(measure(&set(&["p->p"])), 4);
        assert_eq!(measure(&set(&["((p->q)->p)->p"])), 64);
    }

    #[test]
    fn measure_brute_force_count_of_stripped_sequents() {
        // Count pairs (B, p) with B ⊆ closure and p an atom of the closure.
        let closure = set(&["p", "q", "p->q", "(p->q)->p", "((p->q)->p)->p"]);
        let atoms = closure.iter().filter(|f| f.is_atom()).count();
        let subsets = 1usize << closure.len();
        assert_eq!(measure(&closure), (atoms * subsets) as u128);
    }

    #[test]
    fn peirce_stays_within_bound() {
        let (_, stats) = synthesize_with_stats(&seq("|- ((p->q)->p)->p")).unwrap();
        assert_eq!(stats.bound, 64);
        assert!(stats.accumulator_peak as u128 <= stats.bound);
        assert_eq!(stats.accumulator_peak, 2);
    }

    #[test]
    fn dn_peirce_back_edge_uses_cocontraction() {
        let t = synthesize(&seq("|- ((((p->q)->p)->p)->q)->q")).unwrap();
        validate(&t).unwrap();
        let text = t.to_string();
        // The back edge refers to the x,y,z fixpoint from the larger context.
        assert!(text.contains("X2 @ {z0:(((p->q)->p)->p)->q, z1:(p->q)->p, z2:p, z3:(p->q)->p, z4:p |- q}"), "{text}");
    }

    #[test]
    fn validate_rejects_bad_references() {
        let lower = seq("x:p |- p");
        let other = seq("x:q |- p");
        let bad = FinTerm::gfp(
            "X",
            lower.clone(),
            vec![ElimAlt {
                head: "x".into(),
                args: vec![FinTerm::fpref("X", other)],
            }],
        );
        assert!(matches!(validate(&bad), Err(WellFormednessError::NotBelow { .. })));
        assert_eq!(
            validate(&FinTerm::fpref("Y", lower)),
            Err(WellFormednessError::Free("Y".into()))
        );
    }

    #[test]
    fn root_sequent_recovers_input() {
        for text in ["|- (p->p)->p->p", "w:q |- ((p->q)->p)->p", "x:p->q->p, z:p |- p"] {
            let s = seq(text);
            assert_eq!(synthesize(&s).unwrap().root_sequent(), s);
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        for text in ["|- (p->p)->p->p", "|- ((((p->q)->p)->p)->q)->q", "x:q->p |- p"] {
            let t = synthesize(&seq(text)).unwrap();
            assert_eq!(parse_finterm(&t.to_string()).unwrap(), t);
        }
        assert!(parse_finterm("gfp X @ {|- p}").is_err());
        assert!(parse_finterm("x").is_err());
    }

    #[test]
    fn json_mirrors_the_ast() {
        let t = synthesize(&seq("|- p->p")).unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert!(json["Lam"]["body"]["Gfp"]["alts"].is_array());
        let back: FinTerm = serde_json::from_value(json).unwrap();
        assert_eq!(back, t);
    }
}
