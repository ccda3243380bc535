//! First and second Zagreb indices and the Hansen–Vukičević comparison
//! `M₂/|E| ≥ M₁/|V|`, decided by cross-multiplication.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{detect_clique_union, CliqueDecomposition, SimpleGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZagrebError {
    #[error("graph with no vertices cannot have M1 = {m1}, M2 = {m2}, |E| = {edges}")]
    Domain { m1: BigUint, m2: BigUint, edges: BigUint },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    #[serde(rename = "strict")]
    StrictlySatisfied,
    Equality,
    Violated,
    VacuousEquality,
}

impl Verdict {
    /// Equality in the conjecture's sense, including the edgeless case.
    pub fn is_equality(self) -> bool {
        matches!(self, Verdict::Equality | Verdict::VacuousEquality)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StrictlySatisfied => "strict",
            Verdict::Equality => "equality",
            Verdict::Violated => "violated",
            Verdict::VacuousEquality => "vacuous-equality",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Big numbers go over the wire as decimal strings.
pub(crate) fn ser_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_ratios<S: Serializer>(
    v: &Option<(BigRational, BigRational)>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some((a, b)) => s.collect_seq([a.to_string(), b.to_string()]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZagrebReport {
    #[serde(serialize_with = "ser_display")]
    pub m1: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub m2: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub num_vertices: BigUint,
    #[serde(serialize_with = "ser_display")]
    pub num_edges: BigUint,
    /// `M₂·|V|`.
    #[serde(serialize_with = "ser_display")]
    pub lhs: BigUint,
    /// `M₁·|E|`.
    #[serde(serialize_with = "ser_display")]
    pub rhs: BigUint,
    pub verdict: Verdict,
    /// `(M₂/|E|, M₁/|V|)` when both denominators are nonzero.
    #[serde(serialize_with = "ser_ratios")]
    pub ratios: Option<(BigRational, BigRational)>,
}

impl ZagrebReport {
    /// `lhs − rhs`; nonnegative exactly when the conjecture holds.
    pub fn difference(&self) -> BigInt {
        BigInt::from(self.lhs.clone()) - BigInt::from(self.rhs.clone())
    }
}

/// `(M₁, M₂)` straight from the degree sequence.
pub fn zagreb_generic(graph: &SimpleGraph) -> (BigUint, BigUint) {
    let deg = graph.degrees();
    let m1: BigUint = deg.iter().map(|&d| BigUint::from(d) * d).sum();
    let m2: BigUint = graph
        .edges()
        .into_iter()
        .map(|(u, v)| BigUint::from(deg[u]) * deg[v])
        .sum();
    (m1, m2)
}

/// `M₁ = Σ lᵢmᵢ(mᵢ−1)²`, `M₂ = Σ lᵢmᵢ(mᵢ−1)³/2`.
pub fn zagreb_from_decomposition(d: &CliqueDecomposition) -> (BigUint, BigUint) {
    let mut m1 = BigUint::zero();
    let mut m2 = BigUint::zero();
    for &(l, m) in d.parts() {
        let l = BigUint::from(l);
        let m = BigUint::from(m);
        let deg = if m.is_zero() { BigUint::zero() } else { &m - 1u32 };
        let base = &l * &m * &deg * &deg;
        m2 += &base * &deg / 2u32;
        m1 += base;
    }
    (m1, m2)
}

pub fn conjecture_verdict(
    m1: &BigUint,
    m2: &BigUint,
    num_vertices: &BigUint,
    num_edges: &BigUint,
) -> Result<Verdict, ZagrebError> {
    if num_vertices.is_zero() && !(m1.is_zero() && m2.is_zero() && num_edges.is_zero()) {
        return Err(ZagrebError::Domain {
            m1: m1.clone(),
            m2: m2.clone(),
            edges: num_edges.clone(),
        });
    }
    if num_edges.is_zero() {
        return Ok(Verdict::VacuousEquality);
    }
    Ok(match (m2 * num_vertices).cmp(&(m1 * num_edges)) {
        Ordering::Greater => Verdict::StrictlySatisfied,
        Ordering::Equal => Verdict::Equality,
        Ordering::Less => Verdict::Violated,
    })
}

fn build_report(m1: BigUint, m2: BigUint, v: BigUint, e: BigUint) -> Result<ZagrebReport, ZagrebError> {
    let verdict = conjecture_verdict(&m1, &m2, &v, &e)?;
    let ratios = (!v.is_zero() && !e.is_zero()).then(|| {
        let big = |x: &BigUint| BigInt::from(x.clone());
        (
            BigRational::new(big(&m2), big(&e)),
            BigRational::new(big(&m1), big(&v)),
        )
    });
    Ok(ZagrebReport {
        lhs: &m2 * &v,
        rhs: &m1 * &e,
        m1,
        m2,
        num_vertices: v,
        num_edges: e,
        verdict,
        ratios,
    })
}

pub fn zagreb_report(graph: &SimpleGraph) -> ZagrebReport {
    let (m1, m2) = zagreb_generic(graph);
    if let Some(d) = detect_clique_union(graph) {
        assert_eq!(
            zagreb_from_decomposition(&d),
            (m1.clone(), m2.clone()),
            "clique-union closed form disagrees with the degree sum for {d}"
        );
    }
    build_report(
        m1,
        m2,
        BigUint::from(graph.num_vertices()),
        BigUint::from(graph.num_edges()),
    )
    .expect("a concrete graph is always in the domain")
}

/// Report for `⊔ lᵢK_{mᵢ}` without materialising the graph.
pub fn report_from_decomposition(d: &CliqueDecomposition) -> ZagrebReport {
    let (m1, m2) = zagreb_from_decomposition(d);
    let mut v = BigUint::zero();
    let mut e = BigUint::zero();
    for &(l, m) in d.parts() {
        let (l, m) = (BigUint::from(l), BigUint::from(m));
        e += &l * &m * (&m - 1u32) / 2u32;
        v += l * m;
    }
    build_report(m1, m2, v, e).expect("a decomposition always describes a graph")
}
