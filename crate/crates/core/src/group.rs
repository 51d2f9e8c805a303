//! Exact arithmetic in `G = F ⋊ ℤ`, where `F` is free on `b, c` and the
//! generator of `ℤ` acts by `α: b ↦ c, c ↦ b⁻¹`.
//!
//! The monoid `S = ⟨a, b⟩ ⊆ G` embeds here with `a = (ε, 1)` and `b = (b, 0)`.
//! This gives an independent equality oracle for `S`, and since normal forms
//! can be read back off a group element, exact left and right division too.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monoid::{self, NormalFormS, A, B};
use crate::word::{Letter, Word};

/// Letter of the free group `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FreeLetter {
    B,
    C,
}

impl FreeLetter {
    fn name(self) -> char {
        match self {
            FreeLetter::B => 'b',
            FreeLetter::C => 'c',
        }
    }
}

/// Position of `x^{±1}` on the orbit `b → c → b⁻¹ → c⁻¹ → b` of `α`.
fn orbit_index(letter: FreeLetter, positive: bool) -> u8 {
    match (letter, positive) {
        (FreeLetter::B, true) => 0,
        (FreeLetter::C, true) => 1,
        (FreeLetter::B, false) => 2,
        (FreeLetter::C, false) => 3,
    }
}

fn from_orbit_index(i: u8) -> (FreeLetter, bool) {
    match i % 4 {
        0 => (FreeLetter::B, true),
        1 => (FreeLetter::C, true),
        2 => (FreeLetter::B, false),
        _ => (FreeLetter::C, false),
    }
}

/// Reduced word in `F`, run-length encoded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeWord {
    runs: Vec<(FreeLetter, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn from_runs<I: IntoIterator<Item = (FreeLetter, i64)>>(runs: I) -> Self {
        let mut w = FreeWord::identity();
        for (l, e) in runs {
            w.push_run(l, e);
        }
        w
    }

    pub fn letter(l: FreeLetter) -> Self {
        FreeWord::from_runs([(l, 1)])
    }

    pub fn runs(&self) -> &[(FreeLetter, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Appends `l^e`, cancelling against the last run.
    fn push_run(&mut self, l: FreeLetter, e: i64) {
        if e == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((last, exp)) if *last == l => {
                *exp = exp.checked_add(e).expect("free group exponent overflow");
                if *exp == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((l, e)),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(l, e) in &other.runs {
            out.push_run(l, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            runs: self.runs.iter().rev().map(|&(l, e)| (l, -e)).collect(),
        }
    }

    /// `α^k(self)`; only `k mod 4` matters.
    pub fn alpha(&self, k: i64) -> FreeWord {
        let shift = k.rem_euclid(4) as u8;
        if shift == 0 {
            return self.clone();
        }
        // α^k permutes {b, c} up to sign, so reducedness is preserved
        FreeWord {
            runs: self
                .runs
                .iter()
                .map(|&(l, e)| {
                    let (l2, positive) = from_orbit_index(orbit_index(l, true) + shift);
                    (l2, if positive { e } else { -e })
                })
                .collect(),
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("e");
        }
        for (i, (l, e)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}^{}", l.name(), e)?;
        }
        Ok(())
    }
}

/// Element `(w, t)` of `F ⋊ ℤ`; `t` is the total `a`-exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupElement {
    pub f: FreeWord,
    pub t: i64,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn new(f: FreeWord, t: i64) -> Self {
        GroupElement { f, t }
    }

    pub fn a() -> Self {
        GroupElement::new(FreeWord::identity(), 1)
    }

    pub fn b() -> Self {
        GroupElement::new(FreeWord::letter(FreeLetter::B), 0)
    }

    pub fn c() -> Self {
        GroupElement::new(FreeWord::letter(FreeLetter::C), 0)
    }

    /// `(w₁, n₁)(w₂, n₂) = (w₁ α^{n₁}(w₂), n₁ + n₂)`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            f: self.f.mul(&other.f.alpha(self.t)),
            t: self.t.checked_add(other.t).expect("a-exponent overflow"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            f: self.f.inverse().alpha(-self.t),
            t: -self.t,
        }
    }

    pub fn pow(&self, k: u64) -> GroupElement {
        (0..k).fold(GroupElement::identity(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | a^{}", self.f, self.t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid group element `{0}`: expected e.g. `b^3 c^-2 | a^5`")]
pub struct GroupParseError(String);

impl FromStr for GroupElement {
    type Err = GroupParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GroupParseError(s.to_string());
        let (free, t) = s.split_once('|').ok_or_else(err)?;
        let t = t
            .trim()
            .strip_prefix("a^")
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(err)?;
        let mut runs = Vec::new();
        for tok in free.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (l, e) = tok.split_once('^').unwrap_or((tok, "1"));
            let l = match l {
                "b" => FreeLetter::B,
                "c" => FreeLetter::C,
                _ => return Err(err()),
            };
            runs.push((l, e.parse::<i64>().map_err(|_| err())?));
        }
        Ok(GroupElement::new(FreeWord::from_runs(runs), t))
    }
}

/// `α^k(w)`.
pub fn alpha(w: &FreeWord, k: i64) -> FreeWord {
    w.alpha(k)
}

pub fn g_mul(x: &GroupElement, y: &GroupElement) -> GroupElement {
    x.mul(y)
}

pub fn g_inv(x: &GroupElement) -> GroupElement {
    x.inverse()
}

/// Image of a word over `{a, b}` in `G`.
pub fn embed_letters(letters: &[Letter]) -> GroupElement {
    let mut f = FreeWord::identity();
    let mut t: i64 = 0;
    for &l in letters {
        match l {
            A => t += 1,
            B => {
                let (fl, positive) = from_orbit_index(t.rem_euclid(4) as u8);
                f.push_run(fl, if positive { 1 } else { -1 });
            }
            _ => panic!("letter {l} is not a generator of S"),
        }
    }
    GroupElement { f, t }
}

/// Image of a word over `{a, b}` in `G`.
///
/// Panics if the word is not over the alphabet of `S`.
pub fn embed(w: &Word) -> GroupElement {
    assert!(
        w.alphabet() == monoid::alphabet(),
        "embed expects a word over the alphabet a b"
    );
    embed_letters(w.letters())
}

pub fn embed_nf(x: &NormalFormS) -> GroupElement {
    embed_letters(&x.letters())
}

/// Outcome of a membership test for `S ⊆ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SMembership {
    In(NormalFormS),
    NotIn,
}

impl SMembership {
    pub fn is_in(&self) -> bool {
        matches!(self, SMembership::In(_))
    }

    pub fn into_option(self) -> Option<NormalFormS> {
        match self {
            SMembership::In(x) => Some(x),
            SMembership::NotIn => None,
        }
    }
}

/// Decides whether `g ∈ S`, reading the normal form off the free-group part.
///
/// Block `i` of a normal form contributes `α^{n₁+⋯+nᵢ}(b)^{mᵢ}`, so the orbit
/// index of each run fixes the partial sum of the `nᵢ` modulo 4. Consecutive
/// differences give the `nᵢ` themselves, and the remaining `a`-exponent is
/// the trailing `n`. A leading positive `b`-run is `b^{m₀}`; a leading
/// negative one can only come from `n₁ = 2` (with `m₀ = 0`).
pub fn parse_membership(g: &GroupElement) -> SMembership {
    let runs = g.f.runs();
    let mut m0 = 0u64;
    let mut rest = runs;
    if let Some(&(FreeLetter::B, e)) = runs.first() {
        if e > 0 {
            m0 = e as u64;
            rest = &runs[1..];
        }
    }
    let mut blocks = Vec::with_capacity(rest.len());
    let mut prev = 0u8;
    let mut consumed: i64 = 0;
    for (i, &(l, e)) in rest.iter().enumerate() {
        let idx = orbit_index(l, e > 0);
        let step = (idx + 4 - prev) % 4;
        // steps of 0 cannot occur in a reduced word; 2 only for the first block
        if step == 0 || (step == 2 && (i > 0 || m0 > 0)) {
            return SMembership::NotIn;
        }
        blocks.push((step, e.unsigned_abs()));
        consumed += step as i64;
        prev = idx;
    }
    let n = g.t - consumed;
    if n < 0 {
        return SMembership::NotIn;
    }
    let nf = NormalFormS::new(m0, blocks, n as u64)
        .expect("parsed parameters always satisfy the normal form constraints");
    debug_assert_eq!(&embed_nf(&nf), g);
    SMembership::In(nf)
}

/// Solves `x = u·v` for `v ∈ S`.
pub fn left_quotient(u: &Word, x: &Word) -> SMembership {
    parse_membership(&embed(u).inverse().mul(&embed(x)))
}

/// Solves `x = u·v` for `u ∈ S`.
pub fn right_quotient(x: &Word, v: &Word) -> SMembership {
    parse_membership(&embed(x).mul(&embed(v).inverse()))
}

pub fn left_quotient_nf(u: &NormalFormS, x: &NormalFormS) -> SMembership {
    parse_membership(&embed_nf(u).inverse().mul(&embed_nf(x)))
}

pub fn right_quotient_nf(x: &NormalFormS, v: &NormalFormS) -> SMembership {
    parse_membership(&embed_nf(x).mul(&embed_nf(v).inverse()))
}
