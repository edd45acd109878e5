//! Provability, enumeration, counting and membership over finitary terms.
//!
//! Gfp nodes are numbered in preorder. Finite viability is the least
//! fixpoint of "some alternative has all arguments viable"; productivity
//! (any member at all, infinite ones included) is the greatest fixpoint of
//! the same equations.
//!
//! Enumeration and membership never materialize the forest. They walk the
//! finitary term carrying a head fan-out map, and at a back-edge `X @ σ'`
//! they compose the map with `[σ'/σ]` and continue at the binder of `X`.
//!
//! Sizes follow [`LambdaBarTerm::size`]: a λ counts 1 plus its body, an
//! application counts 1 plus the sizes of its arguments.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::cocontract::{ContextSubst, FanOut};
use crate::formula::{Context, Sequent};
use crate::gfp_calc::{synthesize, FinTerm, SynthesisError};
use crate::lambda_bar::{LambdaBarTerm, TermKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Gfp(usize),
    /// Back-edge with no enclosing binder.
    Free,
}

/// Gfp nodes in preorder with the argument targets of each alternative.
struct Graph {
    alts: Vec<Vec<Vec<Target>>>,
    fprefs: Vec<Target>,
    root: Target,
}

impl Graph {
    fn build(t: &FinTerm) -> Self {
        let mut g = Graph {
            alts: Vec::new(),
            fprefs: Vec::new(),
            root: Target::Free,
        };
        let mut scope: Vec<(String, usize)> = Vec::new();
        g.root = g.visit(t, &mut scope);
        g
    }

    fn visit(&mut self, t: &FinTerm, scope: &mut Vec<(String, usize)>) -> Target {
        match t {
            FinTerm::Lam { body, .. } => self.visit(body, scope),
            FinTerm::FpRef { fpvar, .. } => {
                let target = scope
                    .iter()
                    .rev()
                    .find(|(x, _)| x == fpvar)
                    .map_or(Target::Free, |&(_, id)| Target::Gfp(id));
                self.fprefs.push(target);
                target
            }
            FinTerm::Gfp { fpvar, alts, .. } => {
                let id = self.alts.len();
                self.alts.push(Vec::new());
                scope.push((fpvar.clone(), id));
                let mut out = Vec::with_capacity(alts.len());
                for alt in alts {
                    let targets = alt.args.iter().map(|a| self.visit(a, scope)).collect();
                    out.push(targets);
                }
                scope.pop();
                self.alts[id] = out;
                Target::Gfp(id)
            }
        }
    }

    fn solve(&self, init: bool) -> InhabitationMarking {
        let mut gfp = vec![init; self.alts.len()];
        let mark = |gfp: &[bool], t: Target| match t {
            Target::Gfp(id) => gfp[id],
            Target::Free => init,
        };
        loop {
            let mut changed = false;
            for id in 0..self.alts.len() {
                let v = self.alts[id]
                    .iter()
                    .any(|args| args.iter().all(|&a| mark(&gfp, a)));
                if v != gfp[id] {
                    gfp[id] = v;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let alternatives = self
            .alts
            .iter()
            .map(|alts| {
                alts.iter()
                    .map(|args| args.iter().all(|&a| mark(&gfp, a)))
                    .collect()
            })
            .collect();
        InhabitationMarking {
            fprefs: self.fprefs.iter().map(|&t| mark(&gfp, t)).collect(),
            root: mark(&gfp, self.root),
            alternatives,
            gfp,
        }
    }
}

/// Viability flags for every Gfp node, alternative and back-edge of a term,
/// each list in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InhabitationMarking {
    pub gfp: Vec<bool>,
    pub alternatives: Vec<Vec<bool>>,
    pub fprefs: Vec<bool>,
    /// Mark of the node under the root λ-prefix.
    pub root: bool,
}

/// Least fixpoint: which nodes have a finite member. Unbound back-edges
/// count as uninhabited.
pub fn finite_marking(t: &FinTerm) -> InhabitationMarking {
    Graph::build(t).solve(false)
}

/// Greatest fixpoint: which nodes have any member, finite or not. Unbound
/// back-edges count as inhabited.
pub fn productive_marking(t: &FinTerm) -> InhabitationMarking {
    Graph::build(t).solve(true)
}

/// Drops every alternative that has no finite member.
pub fn prune(t: &FinTerm) -> FinTerm {
    fn go(t: &FinTerm, m: &InhabitationMarking, next: &mut usize) -> FinTerm {
        match t {
            FinTerm::Lam { var, ann, body } => FinTerm::lam(var.clone(), ann.clone(), go(body, m, next)),
            FinTerm::FpRef { .. } => t.clone(),
            FinTerm::Gfp { fpvar, sigma, alts } => {
                let id = *next;
                *next += 1;
                let rebuilt: Vec<_> = alts
                    .iter()
                    .map(|alt| crate::gfp_calc::ElimAlt {
                        head: alt.head.clone(),
                        args: alt.args.iter().map(|a| go(a, m, next)).collect(),
                    })
                    .collect();
                let kept = rebuilt
                    .into_iter()
                    .zip(&m.alternatives[id])
                    .filter_map(|(alt, &ok)| ok.then_some(alt))
                    .collect();
                FinTerm::gfp(fpvar.clone(), sigma.clone(), kept)
            }
        }
    }
    let m = finite_marking(t);
    go(t, &m, &mut 0)
}

/// Whether `s` has a finite proof.
pub fn provable(s: &Sequent) -> Result<bool, SynthesisError> {
    let pruned = prune(&synthesize(s)?);
    Ok(finite_marking(&pruned).root)
}

/// Whether the forest of `t` has any member, finite or infinite.
pub fn has_any_member(t: &FinTerm) -> bool {
    productive_marking(t).root
}

/// Lexical binder of every back-edge, keyed by node address.
fn binders(t: &FinTerm) -> HashMap<*const FinTerm, &FinTerm> {
    fn go<'t>(t: &'t FinTerm, scope: &mut Vec<&'t FinTerm>, out: &mut HashMap<*const FinTerm, &'t FinTerm>) {
        match t {
            FinTerm::Lam { body, .. } => go(body, scope, out),
            FinTerm::FpRef { fpvar, .. } => {
                let b = scope
                    .iter()
                    .rev()
                    .find(|n| matches!(n, FinTerm::Gfp { fpvar: y, .. } if y == fpvar));
                if let Some(b) = b {
                    out.insert(t as *const FinTerm, *b);
                }
            }
            FinTerm::Gfp { alts, .. } => {
                scope.push(t);
                for alt in alts {
                    for a in &alt.args {
                        go(a, scope, out);
                    }
                }
                scope.pop();
            }
        }
    }
    let mut out = HashMap::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Fan-out owed when following the back-edge `node` to its binder.
fn back_edge<'t>(
    node: &'t FinTerm,
    binders: &HashMap<*const FinTerm, &'t FinTerm>,
    f: &FanOut,
) -> Option<(&'t FinTerm, FanOut)> {
    let FinTerm::FpRef { sigma: reference, .. } = node else {
        return None;
    };
    let binder = *binders.get(&(node as *const FinTerm))?;
    let FinTerm::Gfp { sigma: bound, .. } = binder else {
        return None;
    };
    let subst = ContextSubst::new(bound.context.clone(), reference.context.clone()).ok()?;
    Some((binder, subst.fan_out().then(f)))
}

fn identity_on(ctx: &Context) -> FanOut {
    let mut f = FanOut::identity();
    for (z, _) in ctx.iter() {
        f.insert(z, vec![z.to_string()]);
    }
    f
}

type Batch = Rc<Vec<LambdaBarTerm>>;

struct Enumerator<'t> {
    binders: HashMap<*const FinTerm, &'t FinTerm>,
    memo: HashMap<(*const FinTerm, FanOut, usize), Batch>,
}

impl<'t> Enumerator<'t> {
    fn new(t: &'t FinTerm) -> Self {
        Enumerator {
            binders: binders(t),
            memo: HashMap::new(),
        }
    }

    /// Members of `node` under `f` of exactly `size`.
    fn exact(&mut self, node: &'t FinTerm, f: &FanOut, size: usize) -> Batch {
        if size == 0 {
            return Rc::new(Vec::new());
        }
        let key = (node as *const FinTerm, f.clone(), size);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = Rc::new(self.compute(node, f, size));
        self.memo.insert(key, out.clone());
        out
    }

    fn compute(&mut self, node: &'t FinTerm, f: &FanOut, size: usize) -> Vec<LambdaBarTerm> {
        match node {
            FinTerm::Lam { var, ann, body } => {
                let name = binder_name(var, f);
                let mut inner = f.clone();
                inner.insert(var.clone(), vec![name.clone()]);
                self.exact(body, &inner, size - 1)
                    .iter()
                    .map(|b| LambdaBarTerm::lam(name.clone(), ann.clone(), b.clone()))
                    .collect()
            }
            FinTerm::FpRef { .. } => match back_edge(node, &self.binders, f) {
                Some((binder, g)) => self.exact(binder, &g, size).as_ref().clone(),
                None => Vec::new(),
            },
            FinTerm::Gfp { alts, .. } => {
                let mut out = Vec::new();
                let mut seen = HashSet::new();
                for alt in alts {
                    for args in self.arg_lists(&alt.args, f, size - 1) {
                        for h in f.image(&alt.head) {
                            let t = LambdaBarTerm::app(h, args.clone());
                            if seen.insert(t.clone()) {
                                out.push(t);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Argument tuples whose sizes sum to exactly `total`.
    fn arg_lists(&mut self, args: &'t [FinTerm], f: &FanOut, total: usize) -> Vec<Vec<LambdaBarTerm>> {
        let Some((first, rest)) = args.split_first() else {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        };
        if total < args.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for s in 1..=total - rest.len() {
            let heads = self.exact(first, f, s);
            if heads.is_empty() {
                continue;
            }
            let tails = self.arg_lists(rest, f, total - s);
            for h in heads.iter() {
                for tail in &tails {
                    let mut v = Vec::with_capacity(args.len());
                    v.push(h.clone());
                    v.extend(tail.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Keeps a λ-binder's name unless a fan-out image already uses it.
fn binder_name(var: &str, f: &FanOut) -> String {
    if !f.in_range(var) {
        return var.to_string();
    }
    let used: BTreeSet<&str> = f.names().collect();
    (1..)
        .map(|k| format!("{var}_{k}"))
        .find(|c| !used.contains(c.as_str()))
        .expect("unbounded name supply")
}

/// Finite members of `t` (a term for `ctx ⊢ _`) up to `max_size`, distinct
/// up to α, ordered by size and then canonical form.
pub fn enumerate_finterm(ctx: &Context, t: &FinTerm, max_size: usize, limit: Option<usize>) -> Vec<LambdaBarTerm> {
    let mut e = Enumerator::new(t);
    let f = identity_on(ctx);
    let mut out = Vec::new();
    let mut seen: HashSet<TermKey> = HashSet::new();
    for size in 1..=max_size {
        let mut batch: Vec<(TermKey, LambdaBarTerm)> = e
            .exact(t, &f, size)
            .iter()
            .map(|m| (m.alpha_key(), m.clone()))
            .filter(|(k, _)| seen.insert(k.clone()))
            .collect();
        batch.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, m) in batch {
            if limit.is_some_and(|l| out.len() >= l) {
                return out;
            }
            out.push(m);
        }
    }
    out
}

/// Finite proofs of `s` up to `max_size`, at most `limit` of them.
pub fn enumerate(s: &Sequent, max_size: usize, limit: Option<usize>) -> Result<Vec<LambdaBarTerm>, SynthesisError> {
    let t = prune(&synthesize(s)?);
    Ok(enumerate_finterm(&s.context, &t, max_size, limit))
}

/// Number of finite proofs of `s` up to `max_size`.
pub fn count_proofs(s: &Sequent, max_size: usize) -> Result<usize, SynthesisError> {
    Ok(enumerate(s, max_size, None)?.len())
}

/// Whether the finite term `t` is a member of the forest of `fin`, where
/// `fin` was synthesized for a sequent over `ctx`.
pub fn member(ctx: &Context, t: &LambdaBarTerm, fin: &FinTerm) -> bool {
    let avoid: BTreeSet<String> = ctx.names().map(str::to_string).collect();
    let cand = t.rename_apart(&avoid);
    let binders = binders(fin);
    mem(&cand, fin, &identity_on(ctx), &binders)
}

fn mem<'t>(
    t: &LambdaBarTerm,
    node: &'t FinTerm,
    f: &FanOut,
    binders: &HashMap<*const FinTerm, &'t FinTerm>,
) -> bool {
    match (t, node) {
        (_, FinTerm::FpRef { .. }) => match back_edge(node, binders, f) {
            Some((binder, g)) => mem(t, binder, &g, binders),
            None => false,
        },
        (
            LambdaBarTerm::Lam { var: x, ann, body },
            FinTerm::Lam {
                var: z,
                ann: ann2,
                body: body2,
            },
        ) => {
            if ann != ann2 {
                return false;
            }
            let mut inner = f.clone();
            inner.insert(z.clone(), vec![x.clone()]);
            mem(body, body2, &inner, binders)
        }
        (LambdaBarTerm::App { head, args }, FinTerm::Gfp { alts, .. }) => alts.iter().any(|alt| {
            alt.args.len() == args.len()
                && f.image(&alt.head).contains(&head.as_str())
                && args.iter().zip(&alt.args).all(|(a, n)| mem(a, n, f, binders))
        }),
        _ => false,
    }
}

/// [`member`] against the synthesized term of `s`.
pub fn member_of(s: &Sequent, t: &LambdaBarTerm) -> Result<bool, SynthesisError> {
    Ok(member(&s.context, t, &synthesize(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;
    use crate::gfp_calc::synthesize_horn;
    use crate::lambda_bar::{parse_term, typecheck};

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    const CHURCH: &str = "|- (p->p)->p->p";
    const PEIRCE: &str = "|- ((p->q)->p)->p";
    const DN_PEIRCE: &str = "|- ((((p->q)->p)->p)->q)->q";
    const HORN: &str = "x:p->q->p, y:q->p->q, z:p";

    #[test]
    fn provability_examples() {
        assert!(!provable(&seq(PEIRCE)).unwrap());
        assert!(provable(&seq(DN_PEIRCE)).unwrap());
        assert!(provable(&seq("|- p->p")).unwrap());
        assert!(provable(&seq(CHURCH)).unwrap());
    }

    #[test]
    fn prune_peirce_empties_the_body() {
        let t = prune(&synthesize(&seq(PEIRCE)).unwrap());
        let FinTerm::Lam { body, .. } = &t else { panic!("{t}") };
        assert!(matches!(&**body, FinTerm::Gfp { alts, .. } if alts.is_empty()), "{t}");
    }

    #[test]
    fn prune_keeps_church() {
        let t = synthesize(&seq(CHURCH)).unwrap();
        assert_eq!(prune(&t), t);
        let empty = FinTerm::gfp("X", seq("|- p"), Vec::new());
        assert_eq!(prune(&empty), empty);
    }

    #[test]
    fn church_numerals() {
        let got = enumerate(&seq(CHURCH), 5, None).unwrap();
        let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            vec![
                "\\z0:p->p. \\z1:p. z1",
                "\\z0:p->p. \\z1:p. z0<z1>",
                "\\z0:p->p. \\z1:p. z0<z0<z1>>",
            ]
        );
        assert_eq!(count_proofs(&seq(CHURCH), 8).unwrap(), 6);
        assert_eq!(enumerate(&seq(CHURCH), 20, Some(4)).unwrap().len(), 4);
    }

    #[test]
    fn counting_examples() {
        for k in [1, 5, 12] {
            assert_eq!(count_proofs(&seq(PEIRCE), k).unwrap(), 0);
        }
        assert_eq!(count_proofs(&seq("|- p->p"), 1).unwrap(), 0);
        for k in 2..8 {
            assert_eq!(count_proofs(&seq("|- p->p"), k).unwrap(), 1);
        }
    }

    #[test]
    fn horn_example() {
        let p = seq(&format!("{HORN} |- p"));
        let q = seq(&format!("{HORN} |- q"));
        let got = enumerate(&p, 12, None).unwrap();
        assert_eq!(got, vec![LambdaBarTerm::var("z")]);
        assert!(!provable(&q).unwrap());
        assert!(has_any_member(&synthesize(&q).unwrap()));
        assert!(has_any_member(&synthesize_horn(&q).unwrap()));
        assert!(!finite_marking(&synthesize_horn(&q).unwrap()).root);
    }

    #[test]
    fn productivity_examples() {
        assert!(!has_any_member(&synthesize(&seq(PEIRCE)).unwrap()));
        assert!(has_any_member(&synthesize(&seq("|- p->p")).unwrap()));
        // An infinite spine with no finite end.
        assert!(has_any_member(&synthesize(&seq("f:p->p |- p")).unwrap()));
        assert!(!provable(&seq("f:p->p |- p")).unwrap());
    }

    #[test]
    fn dn_peirce_proofs_typecheck() {
        let s = seq(DN_PEIRCE);
        let got = enumerate(&s, 12, None).unwrap();
        assert!(!got.is_empty());
        for t in &got {
            assert_eq!(typecheck(&s.context, t).as_ref(), Some(&s.goal), "{t}");
        }
        // Sorted by size.
        assert!(got.windows(2).all(|w| w[0].size() <= w[1].size()));
    }

    #[test]
    fn membership_examples() {
        let s = seq(CHURCH);
        let fin = synthesize(&s).unwrap();
        let one = parse_term("\\f:p->p. \\x:p. f<x>").unwrap();
        assert!(member(&s.context, &one, &fin));
        let three = parse_term("\\f:p->p. \\x:p. f<f<f<x>>>").unwrap();
        assert!(member(&s.context, &three, &fin));
        let bad = parse_term("\\f:p->p. \\x:p. x<x>").unwrap();
        assert!(!member(&s.context, &bad, &fin));
        let wrong_ann = parse_term("\\f:p. \\x:p. x").unwrap();
        assert!(!member(&s.context, &wrong_ann, &fin));
        // Binder names that collide with the synthesized ones.
        let swapped = parse_term("\\z1:p->p. \\z0:p. z1<z0>").unwrap();
        assert!(member(&s.context, &swapped, &fin));
    }

    #[test]
    fn membership_through_cocontraction() {
        let s = seq(DN_PEIRCE);
        let fin = synthesize(&s).unwrap();
        for t in enumerate(&s, 14, None).unwrap() {
            assert!(member(&s.context, &t, &fin), "{t}");
        }
    }

    #[test]
    fn marking_shapes() {
        let t = synthesize(&seq(CHURCH)).unwrap();
        let m = finite_marking(&t);
        assert_eq!(m.gfp, vec![true]);
        assert_eq!(m.alternatives, vec![vec![true, true]]);
        assert_eq!(m.fprefs, vec![true]);
    }
}
