//! Engine against the brute-force prover on the named example sequents.

mod common;

use std::collections::BTreeSet;

use coforest::lambda_bar::LambdaBarTerm;
use coforest::oracle::bfs_prove;
use coforest::search::{enumerate, has_any_member, provable};
use coforest::synthesize;

use common::*;

fn keys(ts: &[LambdaBarTerm]) -> BTreeSet<coforest::lambda_bar::TermKey> {
    ts.iter().map(LambdaBarTerm::alpha_key).collect()
}

#[test]
fn enumeration_matches_oracle_up_to_size_12() {
    for s in corpus() {
        for k in [4, 8, 12] {
            let ours = enumerate(&s, k, None).unwrap();
            let theirs = bfs_prove(&s, k).unwrap();
            assert_eq!(keys(&ours), keys(&theirs), "{s} at size {k}");
            assert_eq!(ours.len(), theirs.len(), "{s}: duplicates up to α");
        }
    }
}

#[test]
fn provability_agrees_with_search_and_oracle() {
    for s in corpus() {
        let p = provable(&s).unwrap();
        assert_eq!(p, !enumerate(&s, 12, Some(1)).unwrap().is_empty(), "{s}");
        assert_eq!(p, !bfs_prove(&s, 12).unwrap().is_empty(), "{s}");
        if p {
            assert!(has_any_member(&synthesize(&s).unwrap()), "{s}");
        }
    }
}

#[test]
fn productivity_separates_infinite_only_goals() {
    let q = seq(&format!("{HORN_CTX} |- q"));
    assert!(!provable(&q).unwrap());
    assert!(has_any_member(&synthesize(&q).unwrap()));
    assert!(!has_any_member(&synthesize(&seq(PEIRCE)).unwrap()));
}
