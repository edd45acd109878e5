//! Coinductive proof search for implicational intuitionistic logic.
//!
//! A sequent `Γ ⊢ A` is turned into a finite term with greatest fixpoints
//! ([`gfp_calc`]) that represents every cut-free proof of it, finite or
//! infinite. From there [`forest`] unfolds depth-bounded approximants,
//! [`search`] decides provability and enumerates finite proofs, and
//! [`oracle`] provides a brute-force prover used to cross-check the rest.

mod syntax;

pub mod cli;
pub mod cocontract;
pub mod forest;
pub mod formula;
pub mod gfp_calc;
pub mod lambda_bar;
pub mod oracle;
pub mod search;

pub use cocontract::{cocontract_ctx, cocontract_vars, leq, ContextSubst, FanOut};
pub use forest::{approx_equal, expand_solution, interp_unfold, Environment, ForestApprox};
pub use formula::{parse_context, parse_formula, parse_sequent, Context, Formula, Sequent};
pub use gfp_calc::{parse_finterm, synthesize, synthesize_horn, FinTerm};
pub use lambda_bar::{parse_term, typecheck, LambdaBarTerm};
pub use oracle::bfs_prove;
pub use search::{count_proofs, enumerate, has_any_member, member, provable, prune};
pub use syntax::ParseError;

use thiserror::Error;

/// Any failure surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Context(#[from] formula::ContextError),
    #[error(transparent)]
    Synthesis(#[from] gfp_calc::SynthesisError),
    #[error(transparent)]
    Interp(#[from] forest::InterpError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}
