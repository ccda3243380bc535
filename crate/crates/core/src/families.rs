//! Constructors for the group families under study and for the auxiliary
//! groups used to instantiate central-quotient hypotheses.
//!
//! Every family has two independent realisations: a hand-written normal form
//! ([`build_family`]) and a presentation fed to the coset enumerator
//! ([`family_presentation`]). `V8m` only has the latter.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::group::{cyclic, direct_product, Element, FiniteGroup, GroupError};
use crate::presentation::{coset_enumerate, Presentation, PresentationError, DEFAULT_COSET_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("cannot parse group spec {0:?}")]
    Parse(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidParams(msg.into()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// D₂ₘ, order 2m.
    Dihedral { m: u64 },
    /// Q₄ₘ, order 4m.
    Dicyclic { m: u64 },
    /// SD₈ₘ, order 8m.
    Semidihedral { m: u64 },
    /// V₈ₘ, order 8m.
    V8m { m: u64 },
    /// U₍ₙ,ₘ₎, order 2nm.
    Unm { n: u64, m: u64 },
    /// G(p,m,n), order p^(m+n+1).
    Gpmn { p: u64, m: u64, n: u64 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Dihedral { m } if m < 3 => invalid("dihedral needs m >= 3"),
            FamilySpec::Dicyclic { m } if m < 2 => invalid("dicyclic needs m >= 2"),
            FamilySpec::Semidihedral { m } if m < 2 => invalid("semidihedral needs m >= 2"),
            FamilySpec::V8m { m } if m < 1 => invalid("v8m needs m >= 1"),
            FamilySpec::Unm { n, m } if m < 3 || n < 2 => invalid("unm needs m >= 3 and n >= 2"),
            FamilySpec::Gpmn { p, m, n } if !is_prime(p) || m < 1 || n < 1 => {
                invalid("gpmn needs p prime and m, n >= 1")
            }
            _ => Ok(()),
        }
    }

    /// Order the family member must have.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FamilySpec::Dihedral { m } => 2u64.checked_mul(m),
            FamilySpec::Dicyclic { m } => 4u64.checked_mul(m),
            FamilySpec::Semidihedral { m } | FamilySpec::V8m { m } => 8u64.checked_mul(m),
            FamilySpec::Unm { n, m } => (2 * n).checked_mul(m),
            FamilySpec::Gpmn { p, m, n } => {
                let e = u32::try_from(m + n + 1).ok()?;
                p.checked_pow(e)
            }
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Dihedral { .. } => "dihedral",
            FamilySpec::Dicyclic { .. } => "dicyclic",
            FamilySpec::Semidihedral { .. } => "semidihedral",
            FamilySpec::V8m { .. } => "v8m",
            FamilySpec::Unm { .. } => "unm",
            FamilySpec::Gpmn { .. } => "gpmn",
        }
    }

    /// Parameters as written in the spec syntax, e.g. `3,1,2`.
    pub fn params_string(&self) -> String {
        match *self {
            FamilySpec::Dihedral { m }
            | FamilySpec::Dicyclic { m }
            | FamilySpec::Semidihedral { m }
            | FamilySpec::V8m { m } => m.to_string(),
            FamilySpec::Unm { n, m } => format!("{n},{m}"),
            FamilySpec::Gpmn { p, m, n } => format!("{p},{m},{n}"),
        }
    }

    /// Conventional group name, e.g. `D12`, `Q8`, `U(2,6)`.
    pub fn group_name(&self) -> String {
        match *self {
            FamilySpec::Dihedral { m } => format!("D{}", 2 * m),
            FamilySpec::Dicyclic { m } => format!("Q{}", 4 * m),
            FamilySpec::Semidihedral { m } => format!("SD{}", 8 * m),
            FamilySpec::V8m { m } => format!("V{}", 8 * m),
            FamilySpec::Unm { n, m } => format!("U({n},{m})"),
            FamilySpec::Gpmn { p, m, n } => format!("G({p},{m},{n})"),
        }
    }

    /// Builds a spec from a family name and positional parameters.
    pub fn from_parts(family: &str, params: &[u64]) -> Result<Self, FamilyError> {
        let spec = match (family, params) {
            ("dihedral", &[m]) => FamilySpec::Dihedral { m },
            ("dicyclic", &[m]) => FamilySpec::Dicyclic { m },
            ("semidihedral", &[m]) => FamilySpec::Semidihedral { m },
            ("v8m", &[m]) => FamilySpec::V8m { m },
            ("unm", &[n, m]) => FamilySpec::Unm { n, m },
            ("gpmn", &[p, m, n]) => FamilySpec::Gpmn { p, m, n },
            _ => return Err(FamilyError::Parse(format!("{family}:{params:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family_name(), self.params_string())
    }
}

fn parse_params(s: &str, whole: &str) -> Result<Vec<u64>, FamilyError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| FamilyError::Parse(whole.to_string()))
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// `dihedral:12`, `unm:2,6` (n, m), `gpmn:3,1,2` (p, m, n).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Parse(s.to_string()))?;
        let params = parse_params(params, s)?;
        FamilySpec::from_parts(&name.trim().to_ascii_lowercase(), &params)
    }
}

fn small(v: u64, what: &str) -> Result<usize, FamilyError> {
    usize::try_from(v)
        .ok()
        .filter(|&x| x <= 1 << 20)
        .ok_or_else(|| FamilyError::InvalidParams(format!("{what} = {v} is too large")))
}

/// The defining presentation of a family member.
pub fn family_presentation(spec: &FamilySpec) -> Result<Presentation, FamilyError> {
    spec.validate()?;
    let text = match *spec {
        FamilySpec::Dihedral { m } => format!("a, b | a^{m}, b^2, b a b^-1 a"),
        FamilySpec::Dicyclic { m } => format!("a, b | a^{}, b^2 = a^{m}, b a b^-1 a", 2 * m),
        FamilySpec::Semidihedral { m } => {
            format!("a, b | a^{}, b^2, b a b^-1 = a^{}", 4 * m, 2 * m - 1)
        }
        // Read literally as `b a = b^-1 a^-1`, the first relation forces
        // b^2 = a^-2 and collapses the group to an abelian one of order 4 or
        // 8; `a^-1 b^-1` is the standard form and has order 8m.
        FamilySpec::V8m { m } => {
            format!("a, b | a^{}, b^4, b a = a^-1 b^-1, b^-1 a = a^-1 b", 2 * m)
        }
        FamilySpec::Unm { n, m } => format!("a, b | a^{}, b^{m}, a^-1 b a b", 2 * n),
        FamilySpec::Gpmn { p, m, n } => {
            let pm = p.checked_pow(m as u32);
            let pn = p.checked_pow(n as u32);
            let (Some(pm), Some(pn)) = (pm, pn) else {
                return invalid("gpmn exponents overflow");
            };
            format!("a, b | a^{pm}, b^{pn}, [a, b]^{p}, [a, [a, b]], [b, [a, b]]")
        }
    };
    Ok(Presentation::parse(&text)?)
}

fn gens(pairs: &[(&str, usize)]) -> Vec<(String, Element)> {
    pairs
        .iter()
        .map(|&(l, e)| (l.to_string(), Element::new(e)))
        .collect()
}

/// Normal-form constructor (coset enumeration for `V8m`).
pub fn build_family(spec: &FamilySpec) -> Result<FiniteGroup, FamilyError> {
    build_family_with_limit(spec, DEFAULT_COSET_LIMIT)
}

pub fn build_family_with_limit(spec: &FamilySpec, coset_limit: usize) -> Result<FiniteGroup, FamilyError> {
    spec.validate()?;
    let name = spec.group_name();
    let group = match *spec {
        FamilySpec::Dihedral { m } => {
            let m = small(m, "m")?;
            // a^i b^j ↦ i + m j, with b a = a⁻¹ b.
            FiniteGroup::from_fn(&name, 2 * m, gens(&[("a", 1), ("b", m)]), |x, y| {
                let (i1, j1, i2, j2) = (x % m, x / m, y % m, y / m);
                let i = if j1 == 0 { i1 + i2 } else { i1 + m - i2 } % m;
                i + m * ((j1 + j2) % 2)
            })?
        }
        FamilySpec::Dicyclic { m } => {
            let m = small(m, "m")?;
            let r = 2 * m;
            // a^i b^j ↦ i + 2m j, with b² = aᵐ and b a = a⁻¹ b.
            FiniteGroup::from_fn(&name, 4 * m, gens(&[("a", 1), ("b", r)]), |x, y| {
                let (i1, j1, i2, j2) = (x % r, x / r, y % r, y / r);
                let mut i = if j1 == 0 { i1 + i2 } else { i1 + r - i2 };
                if j1 == 1 && j2 == 1 {
                    i += m;
                }
                i % r + r * ((j1 + j2) % 2)
            })?
        }
        FamilySpec::Semidihedral { m } => {
            let m = small(m, "m")?;
            let r = 4 * m;
            let twist = 2 * m - 1;
            // b a = a^(2m-1) b.
            FiniteGroup::from_fn(&name, 8 * m, gens(&[("a", 1), ("b", r)]), |x, y| {
                let (i1, j1, i2, j2) = (x % r, x / r, y % r, y / r);
                let i = if j1 == 0 { i1 + i2 } else { i1 + twist * i2 } % r;
                i + r * ((j1 + j2) % 2)
            })?
        }
        FamilySpec::V8m { .. } => {
            let p = family_presentation(spec)?;
            coset_enumerate(&p, coset_limit)?.with_name(&name)
        }
        FamilySpec::Unm { n, m } => {
            let (n, m) = (small(n, "n")?, small(m, "m")?);
            let k = 2 * n;
            // b^i a^j ↦ i + m j, with a b = b⁻¹ a.
            FiniteGroup::from_fn(&name, k * m, gens(&[("a", m), ("b", 1)]), |x, y| {
                let (i1, j1, i2, j2) = (x % m, x / m, y % m, y / m);
                let i = if j1 % 2 == 0 { i1 + i2 } else { i1 + m - i2 } % m;
                i + m * ((j1 + j2) % k)
            })?
        }
        FamilySpec::Gpmn { p, m, n } => {
            let order = spec
                .order()
                .filter(|&o| o <= 1 << 16)
                .ok_or_else(|| FamilyError::InvalidParams(format!("{name} is too large")))?;
            let p = p as usize;
            let pm = p.pow(m as u32);
            let pn = p.pow(n as u32);
            // a^i b^j c^k ↦ i + pᵐ (j + pⁿ k), c = [a,b] central,
            // b^j a^i = a^i b^j c^(-ij).
            FiniteGroup::from_fn(&name, order as usize, gens(&[("a", 1), ("b", pm)]), |x, y| {
                let (i1, j1, k1) = (x % pm, (x / pm) % pn, x / (pm * pn));
                let (i2, j2, k2) = (y % pm, (y / pm) % pn, y / (pm * pn));
                let i = (i1 + i2) % pm;
                let j = (j1 + j2) % pn;
                let k = (k1 + k2 + p * p - (j1 % p) * (i2 % p) % p) % p;
                i + pm * (j + pn * k)
            })?
        }
    };
    debug_assert_eq!(Some(group.order() as u64), spec.order());
    if Some(group.order() as u64) != spec.order() {
        return invalid(format!(
            "{name} came out with order {} instead of {:?}",
            group.order(),
            spec.order()
        ));
    }
    Ok(group)
}

/// Auxiliary groups for the central-quotient checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AuxSpec {
    /// 3×3 upper unitriangular matrices over 𝔽ₚ.
    Heisenberg { p: u64 },
    /// ℤ_{p²} ⋊ ℤₚ with action 1 + p.
    Extraspecial { p: u64 },
    /// ℤ_q ⋊ ℤ_p, Frobenius of order pq.
    FrobeniusPq { q: u64, p: u64 },
    /// ℤ_q ⋊ ℤ_c with c = p², Frobenius of order p²q (F₂₀ for q=5, c=4).
    FrobeniusCyclicComplement { q: u64, c: u64 },
    /// (ℤₚ × ℤₚ) ⋊ ℤ₂ by inversion.
    GeneralizedDihedral { p: u64 },
    AltFour,
    /// Modular p-group ℤ_{p^(n-1)} ⋊ ℤₚ with action 1 + p^(n-2), order pⁿ.
    Modular { p: u64, n: u64 },
    Cyclic { n: u64 },
    /// `base × ℤ_c`.
    TimesCyclic { base: Box<GroupSpec>, c: u64 },
}

impl fmt::Display for AuxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuxSpec::Heisenberg { p } => write!(f, "heisenberg:{p}"),
            AuxSpec::Extraspecial { p } => write!(f, "extraspecial:{p}"),
            AuxSpec::FrobeniusPq { q, p } => write!(f, "frobenius:{q},{p}"),
            AuxSpec::FrobeniusCyclicComplement { q, c } => write!(f, "frobenius-sq:{q},{c}"),
            AuxSpec::GeneralizedDihedral { p } => write!(f, "gen-dihedral:{p}"),
            AuxSpec::AltFour => write!(f, "a4"),
            AuxSpec::Modular { p, n } => write!(f, "modular:{p},{n}"),
            AuxSpec::Cyclic { n } => write!(f, "cyclic:{n}"),
            AuxSpec::TimesCyclic { base, c } => write!(f, "xcyclic:{c}:{base}"),
        }
    }
}

impl FromStr for AuxSpec {
    type Err = FamilyError;

    /// `frobenius:7,3`, `frobenius-sq:5,4`, `heisenberg:3`, `extraspecial:3`,
    /// `gen-dihedral:3`, `a4`, `modular:2,4`, `cyclic:6`,
    /// `xcyclic:2:dihedral:4` (D₈ × ℤ₂).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::Parse(s.to_string());
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim().to_ascii_lowercase();
        if name == "xcyclic" {
            let (c, base) = rest.split_once(':').ok_or_else(bad)?;
            let c: u64 = c.trim().parse().map_err(|_| bad())?;
            let base: GroupSpec = base.parse()?;
            let spec = AuxSpec::TimesCyclic {
                base: Box::new(base),
                c,
            };
            spec.validate()?;
            return Ok(spec);
        }
        let params = if rest.is_empty() {
            Vec::new()
        } else {
            parse_params(rest, s)?
        };
        let spec = match (name.as_str(), params.as_slice()) {
            ("heisenberg", &[p]) => AuxSpec::Heisenberg { p },
            ("extraspecial", &[p]) => AuxSpec::Extraspecial { p },
            ("frobenius", &[q, p]) => AuxSpec::FrobeniusPq { q, p },
            ("frobenius-sq", &[q, c]) => AuxSpec::FrobeniusCyclicComplement { q, c },
            ("gen-dihedral", &[p]) => AuxSpec::GeneralizedDihedral { p },
            ("a4", &[]) => AuxSpec::AltFour,
            ("modular", &[p, n]) => AuxSpec::Modular { p, n },
            ("cyclic", &[n]) => AuxSpec::Cyclic { n },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn integer_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&x| x * x == n)
}

impl AuxSpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            AuxSpec::Heisenberg { p } | AuxSpec::Extraspecial { p } | AuxSpec::GeneralizedDihedral { p } => {
                if !is_prime(*p) {
                    return invalid(format!("{self}: p must be prime"));
                }
            }
            AuxSpec::FrobeniusPq { q, p } => {
                if !is_prime(*q) || !is_prime(*p) || (q - 1) % p != 0 {
                    return invalid(format!("{self}: need primes with p | q-1"));
                }
            }
            AuxSpec::FrobeniusCyclicComplement { q, c } => {
                let ok = is_prime(*q)
                    && integer_sqrt(*c).is_some_and(is_prime)
                    && (q - 1) % c == 0;
                if !ok {
                    return invalid(format!("{self}: need q prime, c = p^2 with p prime, c | q-1"));
                }
            }
            AuxSpec::Modular { p, n } => {
                let min_n = if *p == 2 { 4 } else { 3 };
                if !is_prime(*p) || *n < min_n {
                    return invalid(format!("{self}: need p prime and n >= {min_n}"));
                }
            }
            AuxSpec::Cyclic { n } => {
                if *n == 0 {
                    return invalid("cyclic needs n >= 1");
                }
            }
            AuxSpec::TimesCyclic { base, c } => {
                base.validate()?;
                if *c == 0 {
                    return invalid("xcyclic needs c >= 1");
                }
            }
            AuxSpec::AltFour => {}
        }
        Ok(())
    }
}

/// Smallest h in 2..q whose multiplicative order mod q is exactly `k`.
fn multiplier_of_order(q: u64, k: u64) -> Option<u64> {
    (2..q).find(|&h| {
        let mut x = 1u64;
        for i in 1..=k {
            x = x * h % q;
            if x == 1 {
                return i == k;
            }
        }
        false
    })
}

/// ℤₙ ⋊ ℤₖ with the generator of ℤₖ acting as multiplication by `r`.
fn metacyclic(name: &str, n: usize, k: usize, r: usize) -> Result<FiniteGroup, FamilyError> {
    let mut powers = vec![1usize; k];
    for j in 1..k {
        powers[j] = powers[j - 1] * r % n;
    }
    if powers[k - 1] * r % n != 1 % n {
        return invalid(format!("{r} does not have order dividing {k} mod {n}"));
    }
    Ok(FiniteGroup::from_fn(
        name,
        n * k,
        gens(&[("a", 1 % (n * k)), ("b", n)]),
        |x, y| {
            let (i1, j1, i2, j2) = (x % n, x / n, y % n, y / n);
            (i1 + powers[j1] * i2) % n + n * ((j1 + j2) % k)
        },
    )?)
}

fn alt_four() -> Result<FiniteGroup, FamilyError> {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    if distinct {
                        let inversions = (0..4)
                            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                            .filter(|&(i, j)| p[i] > p[j])
                            .count();
                        if inversions % 2 == 0 {
                            perms.push(p);
                        }
                    }
                }
            }
        }
    }
    let index = |p: [usize; 4]| perms.iter().position(|&q| q == p).unwrap();
    let three_cycle = index([1, 2, 0, 3]);
    let double_transposition = index([1, 0, 3, 2]);
    // (x·y)(i) = x(y(i)).
    Ok(FiniteGroup::from_fn(
        "A4",
        12,
        gens(&[("s", three_cycle), ("t", double_transposition)]),
        |x, y| {
            let (px, py) = (perms[x], perms[y]);
            index([px[py[0]], px[py[1]], px[py[2]], px[py[3]]])
        },
    )?)
}

pub fn build_aux(spec: &AuxSpec) -> Result<FiniteGroup, FamilyError> {
    spec.validate()?;
    match spec {
        AuxSpec::Heisenberg { p } => {
            let p = small(*p, "p")?;
            // (x, y, z) ↦ [[1,x,z],[0,1,y],[0,0,1]].
            Ok(FiniteGroup::from_fn(
                format!("Heis({p})"),
                p * p * p,
                gens(&[("x", 1), ("y", p)]),
                |u, v| {
                    let (x1, y1, z1) = (u % p, (u / p) % p, u / (p * p));
                    let (x2, y2, z2) = (v % p, (v / p) % p, v / (p * p));
                    (x1 + x2) % p + p * ((y1 + y2) % p) + p * p * ((z1 + z2 + x1 * y2) % p)
                },
            )?)
        }
        AuxSpec::Extraspecial { p } => {
            let p = small(*p, "p")?;
            metacyclic(&format!("M({p}^3)"), p * p, p, 1 + p)
        }
        AuxSpec::FrobeniusPq { q, p } => {
            let h = multiplier_of_order(*q, *p).expect("p | q-1 guarantees a multiplier");
            metacyclic(&format!("F({q},{p})"), small(*q, "q")?, small(*p, "p")?, h as usize)
        }
        AuxSpec::FrobeniusCyclicComplement { q, c } => {
            let h = multiplier_of_order(*q, *c).expect("c | q-1 guarantees a multiplier");
            metacyclic(&format!("F{}", q * c), small(*q, "q")?, small(*c, "c")?, h as usize)
        }
        AuxSpec::GeneralizedDihedral { p } => {
            let p = small(*p, "p")?;
            let k = p * p;
            // (u, v, s): s inverts the kernel ℤₚ × ℤₚ.
            Ok(FiniteGroup::from_fn(
                format!("Dih(Z{p}^2)"),
                2 * k,
                gens(&[("u", 1), ("v", p), ("t", k)]),
                |x, y| {
                    let (u1, v1, s1) = (x % p, (x / p) % p, x / k);
                    let (u2, v2, s2) = (y % p, (y / p) % p, y / k);
                    let (u2, v2) = if s1 == 1 { ((p - u2) % p, (p - v2) % p) } else { (u2, v2) };
                    (u1 + u2) % p + p * ((v1 + v2) % p) + k * ((s1 + s2) % 2)
                },
            )?)
        }
        AuxSpec::AltFour => alt_four(),
        AuxSpec::Modular { p, n } => {
            let p = small(*p, "p")?;
            let n = *n as u32;
            metacyclic(&format!("M{}", p.pow(n)), p.pow(n - 1), p, 1 + p.pow(n - 2))
        }
        AuxSpec::Cyclic { n } => Ok(cyclic(small(*n, "n")?)),
        AuxSpec::TimesCyclic { base, c } => {
            let base = build_group(base)?;
            Ok(direct_product(&base, &cyclic(small(*c, "c")?)))
        }
    }
}

/// Either a family member or an auxiliary group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Family(FamilySpec),
    Aux(AuxSpec),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            GroupSpec::Family(f) => f.validate(),
            GroupSpec::Aux(a) => a.validate(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Family(s) => s.fmt(f),
            GroupSpec::Aux(s) => s.fmt(f),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<FamilySpec>() {
            Ok(f) => Ok(GroupSpec::Family(f)),
            Err(FamilyError::Parse(_)) => s.parse::<AuxSpec>().map(GroupSpec::Aux),
            Err(e) => Err(e),
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, FamilyError> {
    match spec {
        GroupSpec::Family(f) => build_family(f),
        GroupSpec::Aux(a) => build_aux(a),
    }
}
