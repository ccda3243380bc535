use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{conjugacy_data, Element, FiniteGroup, GroupError};

/// Upper bound on the number of subgroups explored by
/// [`frobenius_decomposition`].
pub const DEFAULT_SUBGROUP_BUDGET: usize = 20_000;

/// Orders above this are refused by the Frobenius search outright.
const FROBENIUS_ORDER_CAP: usize = 10_000;

/// Coarse identification of a group. Only the named families are ever
/// recognised; anything else is `Other`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructureTag {
    Trivial,
    Cyclic { n: usize },
    ElementaryAbelian { p: usize, rank: u32 },
    /// Invariant factors d₁ | d₂ | … | d_k.
    Abelian { factors: Vec<usize> },
    /// Dihedral of order 2m.
    Dihedral { m: usize },
    Other,
}

impl fmt::Display for StructureTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureTag::Trivial => write!(f, "trivial"),
            StructureTag::Cyclic { n } => write!(f, "Z{n}"),
            StructureTag::ElementaryAbelian { p, rank } => write!(f, "Z{p}^{rank}"),
            StructureTag::Abelian { factors } => {
                let parts: Vec<String> = factors.iter().map(|d| format!("Z{d}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            StructureTag::Dihedral { m } => write!(f, "D{}", 2 * m),
            StructureTag::Other => write!(f, "other"),
        }
    }
}

pub fn recognize_structure(group: &FiniteGroup) -> StructureTag {
    let n = group.order();
    if n == 1 {
        return StructureTag::Trivial;
    }
    let orders: Vec<usize> = group.elements().map(|g| group.element_order(g)).collect();
    if group.is_abelian() {
        return abelian_tag(n, &orders);
    }
    if n.is_multiple_of(2) && n >= 6 && is_dihedral(group, n / 2, &orders) {
        return StructureTag::Dihedral { m: n / 2 };
    }
    StructureTag::Other
}

fn abelian_tag(n: usize, orders: &[usize]) -> StructureTag {
    // For each prime p, the counts |{g : g^(p^k) = 1}| = p^(Σ min(k, e_i))
    // pin down the partition (e_i) of the p-primary part.
    let mut primary: Vec<(usize, Vec<u32>)> = Vec::new();
    for (p, e) in factorize(n) {
        let mut prev = 0u32;
        let mut parts_at_least: Vec<u32> = Vec::new();
        for k in 1..=e {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            let s = count.ilog(p);
            parts_at_least.push(s - prev);
            prev = s;
        }
        // parts_at_least[k-1] = #{i : e_i >= k}; convert to exponents.
        let rank = parts_at_least[0] as usize;
        let mut exps = vec![0u32; rank];
        for (k, &c) in parts_at_least.iter().enumerate() {
            for slot in exps.iter_mut().take(c as usize) {
                *slot = k as u32 + 1;
            }
        }
        exps.sort_unstable();
        primary.push((p, exps));
    }

    if primary.len() == 1 {
        let (p, exps) = &primary[0];
        if exps.len() >= 2 && exps.iter().all(|&e| e == 1) {
            return StructureTag::ElementaryAbelian {
                p: *p,
                rank: exps.len() as u32,
            };
        }
    }
    let rank = primary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; rank];
    for (p, exps) in &primary {
        let offset = rank - exps.len();
        for (i, &e) in exps.iter().enumerate() {
            factors[offset + i] *= p.pow(e);
        }
    }
    if factors.len() == 1 {
        StructureTag::Cyclic { n: factors[0] }
    } else {
        StructureTag::Abelian { factors }
    }
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = BTreeMap::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out.into_iter().collect()
}

fn is_dihedral(group: &FiniteGroup, m: usize, orders: &[usize]) -> bool {
    if m < 3 {
        return false;
    }
    let involutions: Vec<Element> = group.elements().filter(|g| orders[g.index()] == 2).collect();
    group
        .elements()
        .filter(|c| orders[c.index()] == m)
        .any(|c| {
            let c_inv = group.inv(c);
            involutions.iter().any(|&t| group.conjugate(c, t) == c_inv)
        })
}

/// Kernel and complement orders of a Frobenius group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FrobeniusSplit {
    pub kernel_order: usize,
    pub complement_order: usize,
}

/// Searches for a Frobenius complement: a proper nontrivial subgroup H with
/// `H ∩ gHg⁻¹ = 1` for all `g ∉ H`.
///
/// Subgroups are enumerated by closing cyclic subgroups under joins; the
/// search stops with [`GroupError::CapExceeded`] after `budget` subgroups.
pub fn frobenius_decomposition(
    group: &FiniteGroup,
    budget: usize,
) -> Result<Option<FrobeniusSplit>, GroupError> {
    let n = group.order();
    if n > FROBENIUS_ORDER_CAP {
        return Err(GroupError::CapExceeded(budget));
    }
    if n == 1 || conjugacy_data(group).center.len() != 1 {
        return Ok(None);
    }

    let subgroups = enumerate_subgroups(group, budget)?;
    let mut candidates: Vec<&Vec<Element>> = subgroups
        .iter()
        .filter(|h| h.len() > 1 && h.len() < n)
        // |K| ≡ 1 (mod |H|) holds for every Frobenius complement.
        .filter(|h| (n / h.len()) % h.len() == 1)
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    for h in candidates {
        if is_malnormal(group, h) {
            return Ok(Some(FrobeniusSplit {
                kernel_order: n / h.len(),
                complement_order: h.len(),
            }));
        }
    }
    Ok(None)
}

fn is_malnormal(group: &FiniteGroup, sub: &[Element]) -> bool {
    let mut member = vec![false; group.order()];
    for &h in sub {
        member[h.index()] = true;
    }
    let nontrivial: Vec<Element> = sub
        .iter()
        .copied()
        .filter(|&h| h != group.identity())
        .collect();
    group
        .elements()
        .filter(|g| !member[g.index()])
        .all(|g| nontrivial.iter().all(|&h| !member[group.conjugate(h, g).index()]))
}

fn enumerate_subgroups(group: &FiniteGroup, budget: usize) -> Result<Vec<Vec<Element>>, GroupError> {
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    let mut cyclic_gens: Vec<Element> = Vec::new();
    let mut found: Vec<(Vec<Element>, Vec<Element>)> = Vec::new();

    for g in group.elements() {
        let sub = group.closure(&[g]);
        if seen.insert(sub.clone()) {
            cyclic_gens.push(g);
            found.push((sub, vec![g]));
            if found.len() > budget {
                return Err(GroupError::CapExceeded(budget));
            }
        }
    }

    let mut frontier = 0;
    while frontier < found.len() {
        let (members, gens) = found[frontier].clone();
        frontier += 1;
        let mut member = vec![false; group.order()];
        for &m in &members {
            member[m.index()] = true;
        }
        for &c in &cyclic_gens {
            if member[c.index()] {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(c);
            let sub = group.closure(&next_gens);
            if seen.insert(sub.clone()) {
                found.push((sub, next_gens));
                if found.len() > budget {
                    return Err(GroupError::CapExceeded(budget));
                }
            }
        }
    }
    Ok(found.into_iter().map(|(members, _)| members).collect())
}
