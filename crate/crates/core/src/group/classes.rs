use std::collections::HashSet;

use num_rational::Ratio;
use serde::Serialize;

use super::{Element, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    /// Smallest member id.
    pub representative: Element,
    /// Sorted ascending.
    pub members: Vec<Element>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy partition of a group together with its center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    /// Ordered by smallest member id.
    pub classes: Vec<ConjugacyClass>,
    /// `class_of[g]` is the index of g's class in `classes`.
    pub class_of: Vec<usize>,
    /// Sorted ascending.
    pub center: Vec<Element>,
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn noncentral_classes(&self) -> impl Iterator<Item = (usize, &ConjugacyClass)> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.size() > 1)
    }

    /// Class sizes, sorted ascending.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        sizes
    }
}

pub fn conjugacy_data(group: &FiniteGroup) -> ClassData {
    let n = group.order();
    let conjugators = group.orbit_generators();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();

    for start in group.elements() {
        if class_of[start.index()] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        class_of[start.index()] = idx;
        let mut members = vec![start];
        let mut frontier = 0;
        while frontier < members.len() {
            let x = members[frontier];
            frontier += 1;
            for &g in &conjugators {
                let y = group.conjugate(x, g);
                if class_of[y.index()] == usize::MAX {
                    class_of[y.index()] = idx;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: members[0],
            members,
        });
    }

    let center = classes
        .iter()
        .filter(|c| c.size() == 1)
        .map(|c| c.representative)
        .collect();
    ClassData {
        classes,
        class_of,
        center,
    }
}

/// `{h : hg = gh}`, sorted.
pub fn centralizer(group: &FiniteGroup, g: Element) -> Vec<Element> {
    group.elements().filter(|&h| group.commute(g, h)).collect()
}

/// Number of ordered pairs `(a, b)` with `ab = ba`.
pub fn commuting_pair_count(group: &FiniteGroup) -> u64 {
    let mut count = 0u64;
    for a in group.elements() {
        count += group.elements().filter(|&b| group.commute(a, b)).count() as u64;
    }
    count
}

/// `k(G)/|G|`, with k the number of conjugacy classes.
pub fn commuting_probability(group: &FiniteGroup) -> Ratio<u64> {
    let k = conjugacy_data(group).num_classes() as u64;
    Ratio::new(k, group.order() as u64)
}

/// Number of set-distinct centralizers `C_G(g)` over all g.
pub fn distinct_centralizer_count(group: &FiniteGroup) -> usize {
    let words = group.order().div_ceil(64);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for g in group.elements() {
        let mut bits = vec![0u64; words];
        for h in group.elements() {
            if group.commute(g, h) {
                bits[h.index() / 64] |= 1 << (h.index() % 64);
            }
        }
        seen.insert(bits);
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn d6() -> FiniteGroup {
        // a^i b^j with i in Z3, j in Z2; ba = a^-1 b.
        FiniteGroup::from_fn(
            "D6",
            6,
            vec![("a".into(), Element::new(1)), ("b".into(), Element::new(3))],
            |x, y| {
                let (i1, j1) = (x % 3, x / 3);
                let (i2, j2) = (y % 3, y / 3);
                let i = if j1 == 0 { i1 + i2 } else { i1 + 3 - i2 } % 3;
                i + 3 * ((j1 + j2) % 2)
            },
        )
        .unwrap()
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let z4 = cyclic(4);
        let cd = conjugacy_data(&z4);
        assert_eq!(cd.num_classes(), 4);
        assert_eq!(cd.center.len(), 4);
        assert_eq!(commuting_probability(&z4), Ratio::new(1, 1));
        assert_eq!(distinct_centralizer_count(&z4), 1);
        assert_eq!(centralizer(&z4, Element::new(1)).len(), 4);
    }

    #[test]
    fn d6_classes_and_probability() {
        let g = d6();
        let cd = conjugacy_data(&g);
        let sets: Vec<Vec<usize>> = cd
            .classes
            .iter()
            .map(|c| c.members.iter().map(|e| e.index()).collect())
            .collect();
        assert_eq!(sets, vec![vec![0], vec![1, 2], vec![3, 4, 5]]);
        assert_eq!(cd.center, vec![Element::new(0)]);
        assert_eq!(commuting_probability(&g), Ratio::new(1, 2));
        assert_eq!(commuting_pair_count(&g), 18);
        assert_eq!(distinct_centralizer_count(&g), 5);
        assert_eq!(centralizer(&g, g.identity()).len(), 6);
    }

    #[test]
    fn orbit_generators_and_full_conjugation_agree() {
        let g = d6();
        let stripped = FiniteGroup::from_table("D6", 6, g.table().to_vec(), vec![]).unwrap();
        assert_eq!(conjugacy_data(&g), conjugacy_data(&stripped));
    }
}
