//! Concrete finite groups stored as dense Cayley tables.
//!
//! Elements are indices `0..order`. Every constructor in the crate funnels
//! through [`FiniteGroup::from_table`], which validates the table (Latin
//! square, identity, inverses, associativity) before handing out a value.

mod classes;
mod ops;
mod recognize;

use std::collections::VecDeque;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classes::{
    centralizer, commuting_pair_count, commuting_probability, conjugacy_data,
    distinct_centralizer_count, ClassData, ConjugacyClass,
};
pub use ops::{direct_product, quotient_by_center, quotient_by_normal_subgroup};
pub use recognize::{
    frobenius_decomposition, recognize_structure, FrobeniusSplit, StructureTag,
    DEFAULT_SUBGROUP_BUDGET,
};

/// Tables up to this order get a full associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Random triples tested above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("multiplication table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: u32 },
    #[error("row {0} of the table is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} of the table is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("generator {label:?} refers to element {element}, out of range")]
    BadGenerator { label: String, element: usize },
    #[error("generators span a subgroup of order {spanned}, not the whole group of order {order}")]
    GeneratorsDoNotGenerate { spanned: usize, order: usize },
    #[error("subgroup search exceeded its budget of {0} subgroups")]
    CapExceeded(usize),
    #[error("subset is not a normal subgroup")]
    NotNormal,
}

/// A group element, identified by its row in the Cayley table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub fn new(index: usize) -> Self {
        Element(u32::try_from(index).expect("element index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub element: usize,
}

/// JSON wire form of a group: `{name, order, mul, generators}` with `mul`
/// flattened row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub name: String,
    pub order: usize,
    pub mul: Vec<u32>,
    #[serde(default)]
    pub generators: Vec<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    identity: Element,
    inverses: Vec<Element>,
    generators: Vec<(String, Element)>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a row-major Cayley table and builds the group.
    ///
    /// `generators` may be empty. When present they must generate the whole
    /// group; they drive conjugacy orbit computations and element labels.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        generators: Vec<(String, Element)>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if table.len() != order * order {
            return Err(GroupError::TableSize {
                expected: order * order,
                found: table.len(),
            });
        }
        check_latin_square(order, &table)?;

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g))
            .ok_or(GroupError::NoIdentity)?;
        if (0..order).any(|g| table[g * order + identity] as usize != g) {
            return Err(GroupError::NoIdentity);
        }
        // Latin rows guarantee exactly one right inverse per element.
        let mut inverses = vec![Element(0); order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let h = row.iter().position(|&v| v as usize == identity).unwrap();
            inverses[g] = Element::new(h);
        }
        check_associativity(order, &table)?;

        for (label, g) in &generators {
            if g.index() >= order {
                return Err(GroupError::BadGenerator {
                    label: label.clone(),
                    element: g.index(),
                });
            }
        }

        let mut group = FiniteGroup {
            name: name.into(),
            order,
            table,
            identity: Element::new(identity),
            inverses,
            generators,
            labels: Vec::new(),
        };
        group.labels = group.compute_labels()?;
        Ok(group)
    }

    /// Builds a group from a binary operation on `0..order`.
    pub fn from_fn(
        name: impl Into<String>,
        order: usize,
        generators: Vec<(String, Element)>,
        op: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = op(a, b);
                table.push(u32::try_from(v).unwrap_or(u32::MAX));
            }
        }
        Self::from_table(name, order, table, generators)
    }

    pub fn from_document(doc: &GroupDocument) -> Result<Self, GroupError> {
        let generators = doc
            .generators
            .iter()
            .map(|g| {
                if g.element >= doc.order {
                    Err(GroupError::BadGenerator {
                        label: g.label.clone(),
                        element: g.element,
                    })
                } else {
                    Ok((g.label.clone(), Element::new(g.element)))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(doc.name.clone(), doc.order, doc.mul.clone(), generators)
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            name: self.name.clone(),
            order: self.order,
            mul: self.table.clone(),
            generators: self
                .generators
                .iter()
                .map(|(label, g)| Generator {
                    label: label.clone(),
                    element: g.index(),
                })
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn generators(&self) -> &[(String, Element)] {
        &self.generators
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + Clone {
        (0..self.order).map(Element::new)
    }

    /// Raw row-major table, as stored.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.table[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverses[a.index()]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: Element, g: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commute(&self, a: Element, b: Element) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: Element, exp: i64) -> Element {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..exp.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<Element> = if self.generators.is_empty() {
            self.elements().collect()
        } else {
            self.generators.iter().map(|(_, g)| *g).collect()
        };
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Human-readable label: a shortest word in the generators, or `g<id>`.
    pub fn label(&self, a: Element) -> &str {
        &self.labels[a.index()]
    }

    /// Elements used to compute conjugacy orbits: the attached generators,
    /// or every element when none are attached.
    pub(crate) fn orbit_generators(&self) -> Vec<Element> {
        if self.generators.is_empty() {
            self.elements().collect()
        } else {
            self.generators.iter().map(|(_, g)| *g).collect()
        }
    }

    /// Subgroup generated by `seeds`, as a sorted element list.
    pub fn closure(&self, seeds: &[Element]) -> Vec<Element> {
        let mut member = vec![false; self.order];
        member[self.identity.index()] = true;
        let mut queue = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !member[y.index()] {
                    member[y.index()] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn compute_labels(&self) -> Result<Vec<String>, GroupError> {
        if self.generators.is_empty() {
            return Ok((0..self.order).map(|i| format!("g{i}")).collect());
        }
        // BFS over right multiplication by generators gives shortest words.
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[self.identity.index()] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            let base = words[x.index()].clone().unwrap();
            for (gi, (_, g)) in self.generators.iter().enumerate() {
                let y = self.mul(x, *g);
                if words[y.index()].is_none() {
                    let mut w = base.clone();
                    w.push(gi);
                    words[y.index()] = Some(w);
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != self.order {
            return Err(GroupError::GeneratorsDoNotGenerate {
                spanned: reached,
                order: self.order,
            });
        }
        let single_char = self.generators.iter().all(|(l, _)| l.chars().count() == 1);
        Ok(words
            .into_iter()
            .map(|w| render_word(&w.unwrap(), &self.generators, single_char))
            .collect())
    }
}

fn render_word(word: &[usize], gens: &[(String, Element)], single_char: bool) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let g = word[i];
        let mut run = 1;
        while i + run < word.len() && word[i + run] == g {
            run += 1;
        }
        let label = &gens[g].0;
        parts.push(if run == 1 {
            label.clone()
        } else {
            format!("{label}^{run}")
        });
        i += run;
    }
    parts.join(if single_char { "" } else { " " })
}

fn check_latin_square(order: usize, table: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![usize::MAX; order];
    for row in 0..order {
        for col in 0..order {
            let v = table[row * order + col];
            if v as usize >= order {
                return Err(GroupError::EntryOutOfRange { row, col, value: v });
            }
            if seen[v as usize] == row {
                return Err(GroupError::RowNotPermutation(row));
            }
            seen[v as usize] = row;
        }
    }
    seen.fill(usize::MAX);
    for col in 0..order {
        for row in 0..order {
            let v = table[row * order + col] as usize;
            if seen[v] == col {
                return Err(GroupError::ColumnNotPermutation(col));
            }
            seen[v] = col;
        }
    }
    Ok(())
}

fn check_associativity(order: usize, table: &[u32]) -> Result<(), GroupError> {
    let m = |a: usize, b: usize| table[a * order + b] as usize;
    if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (
                rng.gen_range(0..order),
                rng.gen_range(0..order),
                rng.gen_range(0..order),
            );
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(GroupError::NotAssociative(a, b, c));
            }
        }
    }
    Ok(())
}

/// The cyclic group ℤₙ with generator `a`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    let gens = if n > 1 {
        vec![("a".to_string(), Element::new(1))]
    } else {
        Vec::new()
    };
    FiniteGroup::from_fn(format!("Z{n}"), n, gens, |a, b| (a + b) % n)
        .expect("cyclic table is a group")
}
