#![allow(dead_code)]

use std::collections::BTreeSet;

use ccc_core::families::{build_group, FamilySpec, GroupSpec};
use ccc_core::graph::SimpleGraph;
use ccc_core::group::{conjugacy_data, FiniteGroup};

/// Every family member of order at most `max_order`.
pub fn family_specs(max_order: u64) -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for m in 3.. {
        if 2 * m > max_order {
            break;
        }
        specs.push(FamilySpec::Dihedral { m });
    }
    specs.extend((2..).take_while(|m| 4 * m <= max_order).map(|m| FamilySpec::Dicyclic { m }));
    specs.extend((2..).take_while(|m| 8 * m <= max_order).map(|m| FamilySpec::Semidihedral { m }));
    specs.extend((1..).take_while(|m| 8 * m <= max_order).map(|m| FamilySpec::V8m { m }));
    for n in 2..=max_order / 6 {
        specs.extend((3..).take_while(|m| 2 * n * m <= max_order).map(|m| FamilySpec::Unm { n, m }));
    }
    for p in [2u64, 3, 5, 7] {
        for m in 1..8u32 {
            for n in 1..8u32 {
                if p.pow(m + n + 1) <= max_order {
                    specs.push(FamilySpec::Gpmn { p, m: m as u64, n: n as u64 });
                }
            }
        }
    }
    specs
}

const AUX: &[&str] = &[
    "heisenberg:2", "heisenberg:3", "extraspecial:2", "extraspecial:3", "frobenius:3,2",
    "frobenius:5,2", "frobenius:7,3", "frobenius:13,3", "frobenius:19,3", "frobenius:31,3",
    "frobenius:11,5", "frobenius-sq:5,4", "frobenius-sq:13,4", "gen-dihedral:3", "gen-dihedral:5",
    "a4", "modular:2,4", "modular:2,5", "modular:3,3", "cyclic:1", "cyclic:7", "cyclic:12",
    "xcyclic:2:dihedral:4", "xcyclic:2:dicyclic:2", "xcyclic:3:a4", "xcyclic:2:heisenberg:3",
    "xcyclic:5:dihedral:5", "xcyclic:2:frobenius:7,3",
];

/// Family members plus the auxiliary groups, all of order at most
/// `max_order`.
pub fn corpus(max_order: u64) -> Vec<FiniteGroup> {
    let mut groups: Vec<FiniteGroup> = family_specs(max_order)
        .iter()
        .map(|s| build_group(&GroupSpec::Family(*s)).expect("family member builds"))
        .collect();
    for text in AUX {
        let spec: GroupSpec = text.parse().expect("aux spec parses");
        let g = build_group(&spec).expect("aux group builds");
        if g.order() as u64 <= max_order {
            groups.push(g);
        }
    }
    groups
}

/// Conjugacy classes straight from the definition, as sorted index sets.
pub fn brute_classes(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    g.elements()
        .map(|x| {
            let class: BTreeSet<usize> = g.elements().map(|y| g.conjugate(x, y).index()).collect();
            class.into_iter().collect()
        })
        .collect()
}

/// CCC graph with the all-pairs edge test: classes X, Y are adjacent when
/// some x ∈ X and y ∈ Y commute. Vertex order follows `conjugacy_data`.
pub fn all_pairs_ccc(g: &FiniteGroup) -> SimpleGraph {
    let data = conjugacy_data(g);
    let classes: Vec<_> = data.noncentral_classes().map(|(_, c)| c.clone()).collect();
    let labels = classes.iter().map(|c| g.label(c.representative).to_string()).collect();
    let mut graph = SimpleGraph::empty(labels);
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let adjacent = classes[i]
                .members
                .iter()
                .any(|&x| classes[j].members.iter().any(|&y| g.commute(x, y)));
            if adjacent {
                graph.add_edge(i, j).unwrap();
            }
        }
    }
    graph
}
