//! Words in the standard generators of 𝓜₀^m (half-twists `s_i`, also read as
//! their lifts to a cyclic cover) and of 𝓗_g (Dehn twists `c_i` on the
//! symmetric chain plus the twists `dp_i`, `dm_i` about the two boundary
//! curves of a neighbourhood of c_1 ∪ … ∪ c_{2i−1}).
//!
//! Grammar (whitespace separates items and is otherwise ignored):
//!
//! ```text
//! word  := item*
//! item  := atom ('^' int)?
//! atom  := letter | macro | '(' word ')'
//! letter:= 's' N | 'c' N | 'dp' N | 'dm' N
//! macro := 'sep' N | 'iota' | 'cor' | 'deck' | 'delta'
//! int   := '-'? digits
//! ```
//!
//! Macros expand at parse time: `sep0` is `c1`; `sep h` (h ≥ 1) is
//! `(c_{2h} ⋯ c_1)^{2(2h+1)}`, the twist about the separating curve cutting
//! off genus h; `iota` is the hyperelliptic involution
//! `c_{2g+1} ⋯ c_1 c_1 ⋯ c_{2g+1}`; `cor` is the genus-g element
//! `c_1^{2g+8} (dp_2 dm_2 ⋯ dp_{g−1} dm_{g−1})^2 (sep1 ⋯ sep_{g−1})^{−1}`;
//! `deck` is `s_1 ⋯ s_{m−2} s_{m−1}^2 s_{m−2} ⋯ s_1`, whose lift generates the
//! deck group (it acts on V^λ by λ^{−1}); `delta` is `s_1 ⋯ s_{m−1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    /// 𝓜₀^m; the σ-letters act on the d-fold cyclic cover branched at the m points.
    Sphere { m: u32, d: u32 },
    /// Hyperelliptic mapping class group of genus g.
    Hyperelliptic { g: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Sigma(u32),
    Curve(u32),
    DPlus(u32),
    DMinus(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MappingClassWord {
    group: Group,
    letters: Vec<Letter>,
}

impl Group {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Group::Sphere { m, d } => {
                if m < 3 {
                    return Err(Error::InvalidInput(format!("need m ≥ 3, got {m}")));
                }
                if d < 2 || m % d != 0 {
                    return Err(Error::InvalidInput(format!(
                        "cover degree d = {d} must be ≥ 2 and divide m = {m}"
                    )));
                }
            }
            Group::Hyperelliptic { g } => {
                if g < 1 {
                    return Err(Error::InvalidInput("genus must be ≥ 1".into()));
                }
            }
        }
        Ok(())
    }

    pub fn check_generator(&self, gen: Generator) -> Result<()> {
        let ok = match (*self, gen) {
            (Group::Sphere { m, .. }, Generator::Sigma(i)) => (1..m).contains(&i),
            (Group::Hyperelliptic { g }, Generator::Curve(i)) => (1..=2 * g + 2).contains(&i),
            (Group::Hyperelliptic { g }, Generator::DPlus(i) | Generator::DMinus(i)) => {
                (1..=g).contains(&i)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "generator {gen} is not defined in {self:?}"
            )))
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::Curve(i) => write!(f, "c{i}"),
            Generator::DPlus(i) => write!(f, "dp{i}"),
            Generator::DMinus(i) => write!(f, "dm{i}"),
        }
    }
}

impl Letter {
    pub fn new(gen: Generator, exp: i64) -> Self {
        Letter { gen, exp }
    }
}

impl MappingClassWord {
    pub fn identity(group: Group) -> Self {
        MappingClassWord {
            group,
            letters: Vec::new(),
        }
    }

    /// Builds and freely reduces a word, checking every generator.
    pub fn new(group: Group, letters: Vec<Letter>) -> Result<Self> {
        group.validate()?;
        for l in &letters {
            group.check_generator(l.gen)?;
        }
        Ok(MappingClassWord { group, letters }.reduced())
    }

    /// Word in the given generators with unit exponents.
    pub fn from_gens(group: Group, gens: &[Generator]) -> Result<Self> {
        Self::new(group, gens.iter().map(|&g| Letter::new(g, 1)).collect())
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit-exponent letters.
    pub fn syllable_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    /// The word as a sequence of (generator, ±1).
    pub fn unit_letters(&self) -> Vec<(Generator, i64)> {
        self.letters
            .iter()
            .flat_map(|l| {
                std::iter::repeat_n((l.gen, l.exp.signum()), l.exp.unsigned_abs() as usize)
            })
            .collect()
    }

    fn reduced(mut self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in self.letters.drain(..) {
            if l.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.gen == l.gen => {
                    last.exp += l.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(l),
            }
        }
        self.letters = out;
        self
    }

    pub fn inverse(&self) -> Self {
        MappingClassWord {
            group: self.group,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.gen, -l.exp))
                .collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::InvalidInput("words from different groups".into()));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(MappingClassWord {
            group: self.group,
            letters,
        }
        .reduced())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        MappingClassWord {
            group: self.group,
            letters,
        }
        .reduced()
    }

    /// `a · self · a^{-1}`.
    pub fn conjugate_by(&self, a: &Self) -> Result<Self> {
        a.concat(self)?.concat(&a.inverse())
    }

    /// `[a, b] = a b a^{-1} b^{-1}`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        a.concat(b)?.concat(&a.inverse())?.concat(&b.inverse())
    }

    pub fn parse(group: Group, text: &str) -> Result<Self> {
        group.validate()?;
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            group,
        };
        let letters = p.word()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected character"));
        }
        Self::new(group, letters)
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.exp == 1 {
                    l.gen.to_string()
                } else {
                    format!("{}^{}", l.gen, l.exp)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    group: Group,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')') => return Ok(out),
                _ => out.extend(self.item()?),
            }
        }
    }

    fn item(&mut self) -> Result<Vec<Letter>> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.int()?;
            return Ok(power(&atom, k));
        }
        Ok(atom)
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                msg: "expected an integer".into(),
            })
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                offset: start,
                msg: "expected an index".into(),
            })
    }

    fn atom(&mut self) -> Result<Vec<Letter>> {
        let start = self.pos;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.word()?;
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        // "1" is the identity, as printed for the empty word.
        if self.peek() == Some(b'1') && !self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
            return Ok(Vec::new());
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let wrap = |gen: Generator, group: Group| -> Result<Vec<Letter>> {
            group.check_generator(gen).map_err(|e| Error::Parse {
                offset: start,
                msg: e.to_string(),
            })?;
            Ok(vec![Letter::new(gen, 1)])
        };
        match name {
            "s" => wrap(Generator::Sigma(self.number()?), self.group),
            "c" => wrap(Generator::Curve(self.number()?), self.group),
            "dp" => wrap(Generator::DPlus(self.number()?), self.group),
            "dm" => wrap(Generator::DMinus(self.number()?), self.group),
            "sep" => {
                let h = self.number()?;
                macro_word(self.group, Macro::Sep(h)).map_err(|e| Error::Parse {
                    offset: start,
                    msg: e.to_string(),
                })
            }
            "iota" | "cor" | "deck" | "delta" => {
                let mac = match name {
                    "iota" => Macro::Iota,
                    "cor" => Macro::Cor,
                    "deck" => Macro::Deck,
                    _ => Macro::Delta,
                };
                macro_word(self.group, mac).map_err(|e| Error::Parse {
                    offset: start,
                    msg: e.to_string(),
                })
            }
            "" => Err(self.err("expected a letter, macro or '('")),
            _ => Err(Error::Parse {
                offset: start,
                msg: format!("unknown token '{name}'"),
            }),
        }
    }
}

fn power(atom: &[Letter], k: i64) -> Vec<Letter> {
    let inv: Vec<Letter>;
    let base: &[Letter] = if k < 0 {
        inv = atom
            .iter()
            .rev()
            .map(|l| Letter::new(l.gen, -l.exp))
            .collect();
        &inv
    } else {
        atom
    };
    let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
    for _ in 0..k.unsigned_abs() {
        out.extend_from_slice(base);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Macro {
    Sep(u32),
    Iota,
    Cor,
    Deck,
    Delta,
}

fn unit(gens: impl IntoIterator<Item = Generator>) -> Vec<Letter> {
    gens.into_iter().map(|g| Letter::new(g, 1)).collect()
}

/// Expansion of a named macro.
pub fn macro_word(group: Group, mac: Macro) -> Result<Vec<Letter>> {
    let bad = || Error::InvalidInput(format!("macro {mac:?} is not defined in {group:?}"));
    match (group, mac) {
        (Group::Hyperelliptic { g }, Macro::Sep(h)) => {
            if h == 0 {
                return Ok(unit([Generator::Curve(1)]));
            }
            if h >= g {
                return Err(bad());
            }
            let chain = unit((1..=2 * h).rev().map(Generator::Curve));
            Ok(power(&chain, 2 * (2 * h as i64 + 1)))
        }
        (Group::Hyperelliptic { g }, Macro::Iota) => {
            let mut v = unit((1..=2 * g + 1).rev().map(Generator::Curve));
            v.extend(unit((1..=2 * g + 1).map(Generator::Curve)));
            Ok(v)
        }
        (Group::Hyperelliptic { g }, Macro::Cor) => {
            if g < 2 {
                return Err(bad());
            }
            let mut v = vec![Letter::new(Generator::Curve(1), 2 * g as i64 + 8)];
            let pairs: Vec<Letter> = (2..g)
                .flat_map(|i| unit([Generator::DPlus(i), Generator::DMinus(i)]))
                .collect();
            v.extend(power(&pairs, 2));
            let mut seps = Vec::new();
            for h in 1..g {
                seps.extend(macro_word(group, Macro::Sep(h))?);
            }
            v.extend(power(&seps, -1));
            Ok(v)
        }
        (Group::Sphere { m, .. }, Macro::Deck) => {
            let mut v = unit((1..m - 1).map(Generator::Sigma));
            v.push(Letter::new(Generator::Sigma(m - 1), 2));
            v.extend(unit((1..m - 1).rev().map(Generator::Sigma)));
            Ok(v)
        }
        (Group::Sphere { m, .. }, Macro::Delta) => Ok(unit((1..m).map(Generator::Sigma))),
        _ => Err(bad()),
    }
}

/// Rewrites the boundary twists of a hyperelliptic word into curve letters:
/// d_1^± = c_1, d_g^± = c_{2g+1}, and an adjacent pair (d_i^+ d_i^−)^a with
/// 1 < i < g becomes ((c_{2i−1}⋯c_1)^{2i})^a. A lone middle d_i^± has no
/// expression in the chain twists and is rejected.
pub fn expand_boundary_pairs(w: &MappingClassWord) -> Result<MappingClassWord> {
    let Group::Hyperelliptic { g } = w.group() else {
        return Ok(w.clone());
    };
    let ls = w.letters();
    let mut out: Vec<Letter> = Vec::with_capacity(ls.len());
    let mut k = 0;
    while k < ls.len() {
        let l = ls[k];
        let (i, partner) = match l.gen {
            Generator::DPlus(i) => (i, Generator::DMinus(i)),
            Generator::DMinus(i) => (i, Generator::DPlus(i)),
            _ => {
                out.push(l);
                k += 1;
                continue;
            }
        };
        if i == 1 || i == g {
            let c = if i == 1 { 1 } else { 2 * g + 1 };
            out.push(Letter::new(Generator::Curve(c), l.exp));
            k += 1;
            continue;
        }
        match ls.get(k + 1) {
            Some(n) if n.gen == partner && n.exp == l.exp => {
                let chain = unit((1..2 * i).rev().map(Generator::Curve));
                out.extend(power(&chain, 2 * i as i64 * l.exp));
                k += 2;
            }
            _ => {
                return Err(Error::UnknownValue(format!(
                    "{} needs its partner {partner} with the same exponent next to it",
                    l.gen
                )))
            }
        }
    }
    MappingClassWord::new(w.group(), out)
}

/// Image of a hyperelliptic word in 𝓜₀^{2g+2} (read on the d-fold cover):
/// c_i ↦ σ_i for i ≤ 2g+1, after `expand_boundary_pairs`.
pub fn to_sphere(w: &MappingClassWord, d: u32) -> Result<MappingClassWord> {
    let Group::Hyperelliptic { g } = w.group() else {
        return Err(Error::InvalidInput("expected a hyperelliptic word".into()));
    };
    let group = Group::Sphere { m: 2 * g + 2, d };
    let letters = expand_boundary_pairs(w)?
        .letters()
        .iter()
        .map(|l| match l.gen {
            Generator::Curve(i) if i <= 2 * g + 1 => Ok(Letter::new(Generator::Sigma(i), l.exp)),
            other => Err(Error::InvalidInput(format!(
                "{other} has no chain image in the sphere"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    MappingClassWord::new(group, letters)
}

/// A named relation `lhs = rhs` holding in the group.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: MappingClassWord,
    pub rhs: MappingClassWord,
}

/// Defining and derived relations used to test well-definedness.
pub fn relation_catalog(group: Group) -> Result<Vec<Relation>> {
    group.validate()?;
    let w = |letters: Vec<Letter>| MappingClassWord::new(group, letters);
    let id = MappingClassWord::identity(group);
    let mut out = Vec::new();
    let mut push = |name: String, lhs: MappingClassWord, rhs: MappingClassWord| {
        out.push(Relation { name, lhs, rhs })
    };
    let (gen, n, adjacent): (fn(u32) -> Generator, u32, Vec<(u32, u32)>) = match group {
        Group::Sphere { m, .. } => (
            Generator::Sigma,
            m - 1,
            (1..m - 1).map(|i| (i, i + 1)).collect(),
        ),
        Group::Hyperelliptic { g } => {
            let mut adj: Vec<(u32, u32)> = (1..2 * g + 1).map(|i| (i, i + 1)).collect();
            adj.push((1, 2 * g + 2));
            adj.push((2 * g + 1, 2 * g + 2));
            adj.sort_unstable();
            adj.dedup();
            (Generator::Curve, 2 * g + 2, adj)
        }
    };
    for &(a, b) in &adjacent {
        let (x, y) = (gen(a), gen(b));
        push(
            format!("braid {x} {y}"),
            w(unit([x, y, x]))?,
            w(unit([y, x, y]))?,
        );
    }
    for a in 1..=n {
        for b in a + 1..=n {
            if adjacent.contains(&(a, b)) {
                continue;
            }
            let (x, y) = (gen(a), gen(b));
            push(
                format!("commute {x} {y}"),
                w(unit([x, y]))?,
                w(unit([y, x]))?,
            );
        }
    }
    match group {
        Group::Sphere { m, d } => {
            let deck = w(macro_word(group, Macro::Deck)?)?;
            for i in 1..m {
                let s = w(unit([Generator::Sigma(i)]))?;
                push(
                    format!("deck central s{i}"),
                    deck.concat(&s)?,
                    s.concat(&deck)?,
                );
            }
            push(format!("deck^{d}"), deck.pow(d as i64), id.clone());
            let delta = w(macro_word(group, Macro::Delta)?)?;
            // Δ^m is a power of the deck transformation; test it via Δ^m commuting with s1
            let s1 = w(unit([Generator::Sigma(1)]))?;
            let dm = delta.pow(m as i64);
            push("delta^m central".into(), dm.concat(&s1)?, s1.concat(&dm)?);
        }
        Group::Hyperelliptic { g } => {
            let iota = w(macro_word(group, Macro::Iota)?)?;
            push("iota^2".into(), iota.pow(2), id.clone());
            for i in 1..=2 * g + 2 {
                let c = w(unit([Generator::Curve(i)]))?;
                push(
                    format!("iota central c{i}"),
                    iota.concat(&c)?,
                    c.concat(&iota)?,
                );
            }
            let chain = w(unit((1..=2 * g + 1).map(Generator::Curve)))?;
            push("odd chain".into(), chain.pow(2 * g as i64 + 2), id.clone());
            if g >= 2 {
                let even = w(unit((2..=2 * g).rev().map(Generator::Curve)))?;
                push(
                    "boundary of even chain".into(),
                    even.pow(2 * g as i64),
                    w(vec![Letter::new(Generator::Curve(2 * g + 2), 2)])?,
                );
            }
            for i in 1..=g {
                let pair = w(unit([Generator::DPlus(i), Generator::DMinus(i)]))?;
                let sub = w(unit((1..2 * i).rev().map(Generator::Curve)))?;
                push(format!("boundary pair {i}"), pair, sub.pow(2 * i as i64));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let s6 = Group::Sphere { m: 6, d: 6 };
        let w = MappingClassWord::parse(s6, "(s1 s2)^6").unwrap();
        assert_eq!(w.syllable_length(), 12);
        let w = MappingClassWord::parse(s6, "s3^-2 s3 s3").unwrap();
        assert!(w.is_empty());
        let w = MappingClassWord::parse(s6, "s1s2 (s3 (s4)^2)^-1").unwrap();
        assert_eq!(w.to_string(), "s1 s2 s4^-2 s3^-1");
        assert!(MappingClassWord::parse(s6, "s6").is_err());
        assert!(MappingClassWord::parse(s6, "(s1").is_err());
        assert!(MappingClassWord::parse(s6, "x1").is_err());
        assert!(MappingClassWord::parse(s6, "1").unwrap().is_empty());
        assert!(MappingClassWord::parse(s6, "12").is_err());
        assert!(MappingClassWord::parse(s6, "c1").is_err());
        let h2 = Group::Hyperelliptic { g: 2 };
        let w = MappingClassWord::parse(h2, "sep1").unwrap();
        assert_eq!(w.to_string(), ["c2 c1"; 6].join(" "));
        assert_eq!(
            MappingClassWord::parse(h2, "iota")
                .unwrap()
                .syllable_length(),
            10
        );
        assert_eq!(
            MappingClassWord::parse(h2, "sep0").unwrap().to_string(),
            "c1"
        );
        assert!(MappingClassWord::parse(h2, "sep2").is_err());
        assert!(MappingClassWord::parse(h2, "dp3").is_err());
    }

    #[test]
    fn macros() {
        let g = Group::Sphere { m: 4, d: 2 };
        let deck = MappingClassWord::new(g, macro_word(g, Macro::Deck).unwrap()).unwrap();
        assert_eq!(deck.to_string(), "s1 s2 s3^2 s2 s1");
        let h3 = Group::Hyperelliptic { g: 3 };
        let cor = MappingClassWord::new(h3, macro_word(h3, Macro::Cor).unwrap()).unwrap();
        assert!(cor.to_string().starts_with("c1^14 dp2 dm2 dp2 dm2"));
    }

    #[test]
    fn inverse_and_commutator() {
        let g = Group::Sphere { m: 5, d: 5 };
        let a = MappingClassWord::parse(g, "s1 s2^3").unwrap();
        assert!(a.concat(&a.inverse()).unwrap().is_empty());
        let b = MappingClassWord::parse(g, "s4").unwrap();
        let c = MappingClassWord::commutator(&a, &b).unwrap();
        assert_eq!(c.to_string(), "s1 s2^3 s4 s2^-3 s1^-1 s4^-1");
        assert_eq!(a.pow(-2).to_string(), "s2^-3 s1^-1 s2^-3 s1^-1");
    }
}
