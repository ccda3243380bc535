use super::{conjugacy_data, Element, FiniteGroup, GroupError};

/// `G/Z(G)`.
pub fn quotient_by_center(group: &FiniteGroup) -> FiniteGroup {
    let center = conjugacy_data(group).center;
    quotient_by_normal_subgroup(group, &center)
        .expect("the center is always a normal subgroup")
        .with_name(format!("{}/Z", group.name()))
}

/// Quotient by a normal subgroup given as an element list.
///
/// Cosets are numbered by their smallest member, so the identity coset is 0
/// whenever the identity of `group` is element 0.
pub fn quotient_by_normal_subgroup(
    group: &FiniteGroup,
    normal: &[Element],
) -> Result<FiniteGroup, GroupError> {
    let n = group.order();
    let mut in_sub = vec![false; n];
    for &h in normal {
        in_sub[h.index()] = true;
    }
    if !in_sub[group.identity().index()]
        || normal
            .iter()
            .any(|&a| normal.iter().any(|&b| !in_sub[group.mul(a, b).index()]))
    {
        return Err(GroupError::NotNormal);
    }
    for g in group.elements() {
        if normal.iter().any(|&h| !in_sub[group.conjugate(h, g).index()]) {
            return Err(GroupError::NotNormal);
        }
    }

    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset_of[g.index()] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &h in normal {
            coset_of[group.mul(g, h).index()] = id;
        }
        reps.push(g);
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[group.mul(a, b).index()] as u32);
        }
    }

    let identity_coset = coset_of[group.identity().index()];
    let mut generators: Vec<(String, Element)> = Vec::new();
    for (label, g) in group.generators() {
        let c = coset_of[g.index()];
        if c != identity_coset && !generators.iter().any(|(_, e)| e.index() == c) {
            generators.push((label.clone(), Element::new(c)));
        }
    }
    FiniteGroup::from_table(format!("{}/N", group.name()), k, table, generators)
}

/// Componentwise product; `(g, h)` has id `g·|H| + h`.
pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (left.order(), right.order());
    let mut generators = Vec::new();
    for (label, g) in left.generators() {
        generators.push((label.clone(), Element::new(g.index() * m + right.identity().index())));
    }
    for (label, h) in right.generators() {
        let mut label = label.clone();
        if generators.iter().any(|(l, _)| *l == label) {
            label.push('\'');
        }
        generators.push((label, Element::new(left.identity().index() * m + h.index())));
    }
    FiniteGroup::from_fn(
        format!("{}x{}", left.name(), right.name()),
        n * m,
        generators,
        |x, y| {
            let g = left.mul(Element::new(x / m), Element::new(y / m));
            let h = right.mul(Element::new(x % m), Element::new(y % m));
            g.index() * m + h.index()
        },
    )
    .expect("direct product of groups is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_data, cyclic};

    #[test]
    fn abelian_quotient_is_trivial() {
        let q = quotient_by_center(&cyclic(6));
        assert_eq!(q.order(), 1);
        assert!(q.generators().is_empty());
    }

    #[test]
    fn product_with_trivial_keeps_order_and_classes() {
        let z3 = cyclic(3);
        let p = direct_product(&z3, &cyclic(1));
        assert_eq!(p.order(), 3);
        assert_eq!(conjugacy_data(&p).class_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn product_generator_labels_are_disambiguated() {
        let p = direct_product(&cyclic(2), &cyclic(2));
        let labels: Vec<&str> = p.generators().iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(labels, vec!["a", "a'"]);
        assert_eq!(p.order(), 4);
        assert!(p.elements().all(|g| p.element_order(g) <= 2));
    }

    #[test]
    fn non_normal_subset_is_rejected() {
        let z4 = cyclic(4);
        let err = quotient_by_normal_subgroup(&z4, &[Element::new(0), Element::new(1)]);
        assert_eq!(err.unwrap_err(), GroupError::NotNormal);
    }
}
