//! Finite presentations and Todd–Coxeter coset enumeration over the trivial
//! subgroup.
//!
//! # Text syntax
//!
//! ```text
//! presentation := generators "|" [ relation { "," relation } ]
//! generators   := ident { "," ident }
//! relation     := word [ "=" word ]          (a = b means a b⁻¹ is a relator)
//! word         := { factor }                 ("1" alone is the empty word)
//! factor       := atom [ "^" integer ]       (negative exponents invert)
//! atom         := ident | "(" word ")" | "[" word "," word "]"
//! ```
//!
//! `[u, v]` is the commutator `u⁻¹ v⁻¹ u v`. Factors are separated by
//! whitespace; when every generator is a single character, juxtaposed letters
//! such as `bab` are also accepted. Commas inside brackets or parentheses do
//! not split relations. Example: `a, b | a^5, b^2, b a b^-1 a`.

use std::fmt;

use thiserror::Error;

use crate::group::{Element, FiniteGroup, GroupError};

/// Default coset budget for enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;
/// Environment variable consulted by [`coset_limit_from_env`].
pub const COSET_LIMIT_ENV: &str = "CCC_COSET_LIMIT";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("generator {0:?} listed twice")]
    DuplicateGenerator(String),
    #[error("coset table exceeded the limit of {limit} cosets (infinite group or budget too small; raise --coset-limit or {COSET_LIMIT_ENV})")]
    LimitExceeded { limit: usize },
    #[error("relator {0} does not evaluate to the identity in the enumerated group")]
    RelatorFailed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A generator or its inverse: `2·gen + (1 if inverse)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(2 * generator as u32 + inverse as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    fn column(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Letter>;

fn free_reduce(word: Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are freely reduced; empty ones are dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relators {
            if let Some(l) = r.iter().find(|l| l.generator() >= generators.len()) {
                return Err(PresentationError::UnknownGenerator(format!("#{}", l.generator())));
            }
        }
        let relators = relators
            .into_iter()
            .map(free_reduce)
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        Parser::new(text).presentation()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn render_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut run = 1;
            while i + run < word.len() && word[i + run] == word[i] {
                run += 1;
            }
            let name = &self.generators[word[i].generator()];
            let exp = if word[i].is_inverse() { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.render_word(r)).collect();
        write!(f, "{} | {}", self.generators.join(", "), rels.join(", "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    generators: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            generators: Vec::new(),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        let mut chars = self.src[start..].char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let mut end = self.src.len();
        for (i, c) in chars {
            if !(c.is_alphanumeric() || c == '_') {
                end = start + i;
                break;
            }
        }
        self.pos = end;
        Some(self.src[start..end].to_string())
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("expected an integer exponent"))
    }

    fn presentation(mut self) -> Result<Presentation, PresentationError> {
        loop {
            match self.ident() {
                Some(g) => {
                    if self.generators.contains(&g) {
                        return Err(PresentationError::DuplicateGenerator(g));
                    }
                    self.generators.push(g);
                }
                None => {
                    if self.generators.is_empty() {
                        // `| ...` with no generators is the trivial group.
                        break;
                    }
                    return self.err("expected a generator name");
                }
            }
            if !self.eat(',') {
                break;
            }
        }
        if !self.eat('|') {
            return self.err("expected '|' after the generator list");
        }
        let mut relators = Vec::new();
        self.skip_ws();
        if self.pos < self.src.len() {
            loop {
                let lhs = self.word()?;
                let rel = if self.eat('=') {
                    let rhs = self.word()?;
                    let mut w = lhs;
                    w.extend(invert(&rhs));
                    w
                } else {
                    lhs
                };
                relators.push(rel);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Presentation::new(self.generators, relators)
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_alphabetic() || c == '_' || c == '(' || c == '[' || c == '1' => {
                    out.extend(self.factor()?);
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        self.skip_ws();
        let mut atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                w
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                if !self.eat(',') {
                    return self.err("expected ',' inside commutator");
                }
                let v = self.word()?;
                if !self.eat(']') {
                    return self.err("expected ']'");
                }
                let mut w = invert(&u);
                w.extend(invert(&v));
                w.extend(u);
                w.extend(v);
                w
            }
            Some('1') => {
                self.pos += 1;
                Vec::new()
            }
            _ => {
                let name = self.ident().expect("caller checked for an identifier");
                self.resolve(&name)?
            }
        };
        if self.eat('^') {
            let exp = self.integer()?;
            let base = if exp < 0 { invert(&atom) } else { atom };
            atom = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
            for _ in 0..exp.unsigned_abs() {
                atom.extend_from_slice(&base);
            }
        }
        Ok(atom)
    }

    fn resolve(&self, name: &str) -> Result<Word, PresentationError> {
        if let Some(i) = self.generators.iter().position(|g| g == name) {
            return Ok(vec![Letter::new(i, false)]);
        }
        let single = self.generators.iter().all(|g| g.chars().count() == 1);
        if single {
            let letters: Option<Word> = name
                .chars()
                .map(|c| {
                    self.generators
                        .iter()
                        .position(|g| g.starts_with(c))
                        .map(|i| Letter::new(i, false))
                })
                .collect();
            if let Some(w) = letters {
                return Ok(w);
            }
        }
        Err(PresentationError::UnknownGenerator(name.to_string()))
    }
}

/// Reads the coset limit from `CCC_COSET_LIMIT`, falling back to the default.
pub fn coset_limit_from_env() -> usize {
    std::env::var(COSET_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v >= 1)
        .unwrap_or(DEFAULT_COSET_LIMIT)
}

const UNDEFINED: u32 = u32::MAX;

/// HLT coset table with union-find coincidence handling.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    limit: usize,
}

impl CosetTable {
    fn new(cols: usize, limit: usize) -> Self {
        CosetTable {
            cols,
            table: vec![UNDEFINED; cols],
            parent: vec![0],
            limit,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, PresentationError> {
        if self.len() >= self.limit {
            return Err(PresentationError::LimitExceeded { limit: self.limit });
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEFINED, self.cols));
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for col in 0..self.cols {
                let target = self.get(dead, col);
                if target == UNDEFINED {
                    continue;
                }
                self.set(target, col ^ 1, UNDEFINED);
                let (mu, nu) = (self.rep(dead), self.rep(target));
                let mu_col = self.get(mu, col);
                if mu_col != UNDEFINED {
                    self.merge(nu, mu_col, &mut queue);
                } else {
                    let nu_back = self.get(nu, col ^ 1);
                    if nu_back != UNDEFINED {
                        self.merge(mu, nu_back, &mut queue);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, coset: u32, word: &[Letter]) -> Result<(), PresentationError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = coset;
        let mut b = coset;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize].column()) != UNDEFINED {
                f = self.get(f, word[i as usize].column());
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize].inverse().column()) != UNDEFINED {
                b = self.get(b, word[j as usize].inverse().column());
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                // Deduction: a single gap closes the cycle.
                let l = word[i as usize];
                self.set(f, l.column(), b);
                self.set(b, l.inverse().column(), f);
                return Ok(());
            }
            self.define(f, word[i as usize].column())?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup and returns the group as a
/// Cayley table. Element 0 is the identity; generator `g` becomes the
/// element reached from the identity coset by `g`.
pub fn coset_enumerate(
    presentation: &Presentation,
    coset_limit: usize,
) -> Result<FiniteGroup, PresentationError> {
    let ngens = presentation.generators.len();
    let cols = 2 * ngens;
    if ngens == 0 {
        return Ok(FiniteGroup::from_table("1", 1, vec![0], vec![])?);
    }
    let mut ct = CosetTable::new(cols, coset_limit.max(1));

    let mut c = 0u32;
    while (c as usize) < ct.len() {
        if ct.alive(c) {
            for r in &presentation.relators {
                ct.scan_and_fill(c, r)?;
                if !ct.alive(c) {
                    break;
                }
            }
            if ct.alive(c) {
                for col in 0..cols {
                    if ct.get(c, col) == UNDEFINED {
                        ct.define(c, col)?;
                    }
                }
            }
        }
        c += 1;
    }

    // Renumber live cosets in increasing order.
    let live: Vec<u32> = (0..ct.len() as u32).filter(|&c| ct.alive(c)).collect();
    let mut new_id = vec![u32::MAX; ct.len()];
    for (i, &c) in live.iter().enumerate() {
        new_id[c as usize] = i as u32;
    }
    let n = live.len();
    let mut action = vec![0u32; n * cols];
    for (i, &c) in live.iter().enumerate() {
        for col in 0..cols {
            let t = ct.get(c, col);
            debug_assert_ne!(t, UNDEFINED, "incomplete coset table");
            let t = ct.rep(t);
            action[i * cols + col] = new_id[t as usize];
        }
    }

    // Spanning tree from the identity coset, in BFS order.
    let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut order = vec![0u32];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for col in 0..cols {
            let y = action[x as usize * cols + col];
            if !visited[y as usize] {
                visited[y as usize] = true;
                parent[y as usize] = Some((x, col));
                order.push(y);
            }
        }
    }

    // mul[x][y] = x acted on by the tree word of y.
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let row = &mut table[x * n..(x + 1) * n];
        for &y in &order {
            row[y as usize] = match parent[y as usize] {
                None => x as u32,
                Some((py, col)) => action[row[py as usize] as usize * cols + col],
            };
        }
    }

    let generators = presentation
        .generators
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), Element::new(action[2 * i] as usize)))
        .collect();
    let group = FiniteGroup::from_table(presentation.to_string(), n, table, generators)?;

    let gens: Vec<Element> = (0..ngens).map(|i| Element::new(action[2 * i] as usize)).collect();
    for r in &presentation.relators {
        if evaluate(&group, &gens, r) != group.identity() {
            return Err(PresentationError::RelatorFailed(presentation.render_word(r)));
        }
    }
    Ok(group)
}

/// Evaluates a word given the images of the generators.
pub fn evaluate(group: &FiniteGroup, generator_images: &[Element], word: &[Letter]) -> Element {
    word.iter().fold(group.identity(), |acc, l| {
        let g = generator_images[l.generator()];
        group.mul(acc, if l.is_inverse() { group.inv(g) } else { g })
    })
}
