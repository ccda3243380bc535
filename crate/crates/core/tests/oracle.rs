mod common;

use std::collections::BTreeSet;

use ccc_core::graph::{ccc_graph, detect_clique_union};
use ccc_core::group::conjugacy_data;

#[test]
fn classes_and_center_match_brute_force() {
    for g in common::corpus(100) {
        let data = conjugacy_data(&g);
        let ours: BTreeSet<Vec<usize>> = data
            .classes
            .iter()
            .map(|c| c.members.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(ours, common::brute_classes(&g), "classes of {}", g.name());

        let center: Vec<usize> = g
            .elements()
            .filter(|&z| g.elements().all(|y| g.commute(z, y)))
            .map(|e| e.index())
            .collect();
        let ours: Vec<usize> = data.center.iter().map(|e| e.index()).collect();
        assert_eq!(ours, center, "center of {}", g.name());
    }
}

#[test]
fn representative_edge_test_matches_all_pairs() {
    let corpus = common::corpus(100);
    assert!(corpus.len() > 100);
    for g in &corpus {
        let fast = ccc_graph(g);
        let slow = common::all_pairs_ccc(g);
        assert_eq!(fast.labels(), slow.labels(), "{}", g.name());
        assert_eq!(fast.edges(), slow.edges(), "CCC edges of {}", g.name());
    }
}

#[test]
fn every_corpus_graph_is_a_clique_union() {
    // Not a theorem in general, but true for every group here; a failure
    // means either the graph or the detector is wrong.
    for g in common::corpus(100) {
        assert!(detect_clique_union(&ccc_graph(&g)).is_some(), "{}", g.name());
    }
}
