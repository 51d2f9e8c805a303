//! The monoid `S = ⟨a, b | ba²b = a², a⁴b = ba⁴⟩`.
//!
//! Every element has a unique normal form
//! `b^{m₀} a^{n₁} b^{m₁} ⋯ a^{n_k} b^{m_k} a^n` with `n₁ ∈ {1,2,3}`,
//! `nᵢ ∈ {1,3}` for `i ≥ 2`, all `mᵢ > 0` for `i ≥ 1`, and `m₀ = 0` whenever
//! `n₁ = 2`. [`normalize`] computes it by pushing `a⁴` to the right and
//! cancelling `b a² b`; uniqueness is certified by the group embedding in
//! [`crate::group`].
//!
//! `S` is atomic with atoms exactly `{a, b}` and only the trivial unit, yet
//! `a² = bⁿ a² bⁿ` for all `n`, so factorization lengths of `a²` are
//! unbounded and the principal right ideals `bᵏ a² S` form a strictly
//! ascending chain.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{self, SMembership};
use crate::par;
use crate::word::{self, Alphabet, Certificate, Letter, RewriteSystem, Word, WordError};

pub const A: Letter = 0;
pub const B: Letter = 1;

/// Candidate words examined when certifying that a length is absent.
const ENUMERATION_BUDGET: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("cap {cap} is below the minimal word length {min} of the element")]
    CapBelowMinimalLength { cap: u64, min: u64 },
    #[error("invalid normal form parameters: {0}")]
    InvalidNormalForm(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// The alphabet `a b` of `S`.
pub fn alphabet() -> &'static Alphabet {
    static AB: OnceLock<Alphabet> = OnceLock::new();
    AB.get_or_init(|| Alphabet::new(["a", "b"]).expect("valid alphabet"))
}

/// Parses a word over `{a, b}`, e.g. `b a^2 b` or `baab`.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    Word::parse(alphabet(), text)
}

/// The defining relations as a presentation.
pub fn presentation() -> word::Presentation {
    word::Presentation::parse(
        "generators: a b\nrelation: b a a b = a a\nrelation: a a a a b = b a a a a\n",
    )
    .expect("static presentation")
}

/// Orientation `ba²b → a²`, `a⁴b → ba⁴`, certified by (length, #(a before b) pairs).
pub fn rewrite_system() -> RewriteSystem {
    let certificate: Certificate = Arc::new(|ls: &[Letter]| {
        let mut a_seen = 0u64;
        let mut inversions = 0u64;
        for &l in ls {
            if l == A {
                a_seen += 1;
            } else {
                inversions += a_seen;
            }
        }
        vec![ls.len() as u64, inversions]
    });
    let w = |s| parse_word(s).expect("static word");
    RewriteSystem::new(
        alphabet().clone(),
        vec![(w("b a a b"), w("a a")), (w("a a a a b"), w("b a a a a"))],
        certificate,
    )
    .expect("static rewrite system")
}

/// Canonical representative of an element of `S`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalFormS {
    m0: u64,
    blocks: Vec<(u8, u64)>,
    n: u64,
}

impl NormalFormS {
    pub fn new(m0: u64, blocks: Vec<(u8, u64)>, n: u64) -> Result<Self, MonoidError> {
        for (i, &(ni, mi)) in blocks.iter().enumerate() {
            let ok = match i {
                0 => matches!(ni, 1 | 3) || (ni == 2 && m0 == 0),
                _ => matches!(ni, 1 | 3),
            };
            if !ok {
                return Err(MonoidError::InvalidNormalForm(format!(
                    "block {} has a-exponent {ni} (m0 = {m0})",
                    i + 1
                )));
            }
            if mi == 0 {
                return Err(MonoidError::InvalidNormalForm(format!(
                    "block {} has zero b-exponent",
                    i + 1
                )));
            }
        }
        Ok(NormalFormS { m0, blocks, n })
    }

    pub fn identity() -> Self {
        NormalFormS {
            m0: 0,
            blocks: Vec::new(),
            n: 0,
        }
    }

    pub fn a_pow(n: u64) -> Self {
        NormalFormS {
            m0: 0,
            blocks: Vec::new(),
            n,
        }
    }

    pub fn b_pow(m: u64) -> Self {
        NormalFormS {
            m0: m,
            blocks: Vec::new(),
            n: 0,
        }
    }

    pub fn m0(&self) -> u64 {
        self.m0
    }

    /// The `(nᵢ, mᵢ)` pairs.
    pub fn blocks(&self) -> &[(u8, u64)] {
        &self.blocks
    }

    /// Trailing `a`-exponent.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.len() == 0
    }

    pub fn a_count(&self) -> u64 {
        self.blocks.iter().map(|&(ni, _)| ni as u64).sum::<u64>() + self.n
    }

    pub fn b_count(&self) -> u64 {
        self.m0 + self.blocks.iter().map(|&(_, mi)| mi).sum::<u64>()
    }

    /// Length of the normal-form word, which is the minimal word length.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        self.a_count() + self.b_count()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len() as usize);
        out.extend(std::iter::repeat_n(B, self.m0 as usize));
        for &(ni, mi) in &self.blocks {
            out.extend(std::iter::repeat_n(A, ni as usize));
            out.extend(std::iter::repeat_n(B, mi as usize));
        }
        out.extend(std::iter::repeat_n(A, self.n as usize));
        out
    }

    pub fn word(&self) -> Word {
        Word::from_letters(alphabet(), self.letters())
    }

    pub fn mul(&self, other: &NormalFormS) -> NormalFormS {
        let mut ls = self.letters();
        ls.extend(other.letters());
        normalize_letters(&ls)
    }

    pub fn pow(&self, k: u64) -> NormalFormS {
        (0..k).fold(NormalFormS::identity(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for NormalFormS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&word::compress(alphabet(), &self.letters()))
    }
}

impl fmt::Debug for NormalFormS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalFormS({self})")
    }
}

/// Parses any word over `{a, b}` and normalizes it.
impl FromStr for NormalFormS {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(normalize(&parse_word(s)?))
    }
}

/// Shortlex order on normal-form words.
impl PartialOrd for NormalFormS {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalFormS {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters().cmp(&other.letters()))
    }
}

/// Normal form of a word over `{a, b}`.
///
/// Panics if `w` is over a different alphabet.
pub fn normalize(w: &Word) -> NormalFormS {
    assert!(
        w.alphabet() == alphabet(),
        "normalize expects a word over the alphabet a b, got [{}]",
        w.alphabet()
    );
    normalize_letters(w.letters())
}

/// Normal form of a letter sequence (`0 = a`, `1 = b`).
pub fn normalize_letters(letters: &[Letter]) -> NormalFormS {
    // alternating runs (is_a, count)
    let mut runs: Vec<(bool, u64)> = Vec::new();
    for &l in letters {
        let is_a = l == A;
        match runs.last_mut() {
            Some((k, c)) if *k == is_a => *c += 1,
            _ => runs.push((is_a, 1)),
        }
    }
    loop {
        compact(&mut runs);
        // a^n b^m → a^{n mod 4} b^m a^{n - n mod 4}
        if let Some(i) = (0..runs.len().saturating_sub(1)).find(|&i| runs[i].0 && runs[i].1 >= 4) {
            let moved = runs[i].1 / 4 * 4;
            runs[i].1 -= moved;
            if i + 2 < runs.len() {
                runs[i + 2].1 += moved;
            } else {
                runs.push((true, moved));
            }
            continue;
        }
        // b^p a² b^q → b^{p-d} a² b^{q-d}, d = min(p, q)
        if let Some(i) = (1..runs.len().saturating_sub(1)).find(|&i| runs[i].0 && runs[i].1 == 2) {
            let d = runs[i - 1].1.min(runs[i + 1].1);
            runs[i - 1].1 -= d;
            runs[i + 1].1 -= d;
            continue;
        }
        break;
    }
    let mut it = runs.into_iter().peekable();
    let m0 = match it.peek() {
        Some(&(false, m)) => {
            it.next();
            m
        }
        _ => 0,
    };
    let mut blocks = Vec::new();
    let mut n = 0;
    while let Some((_, na)) = it.next() {
        match it.next() {
            Some((_, mb)) => blocks.push((na as u8, mb)),
            None => n = na,
        }
    }
    NormalFormS { m0, blocks, n }
}

fn compact(runs: &mut Vec<(bool, u64)>) {
    let mut out: Vec<(bool, u64)> = Vec::with_capacity(runs.len());
    for &(k, c) in runs.iter() {
        if c == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    *runs = out;
}

/// Word problem for `S`.
pub fn equal(u: &Word, v: &Word) -> bool {
    normalize(u) == normalize(v)
}

/// All elements of minimal word length `≤ max_len`, in shortlex order.
pub fn enumerate_elements(max_len: u64) -> Vec<NormalFormS> {
    let mut out = par::flat_map(&(0..=max_len).collect::<Vec<_>>(), |&m0| {
        let mut acc = Vec::new();
        let mut blocks = Vec::new();
        extend_elements(m0, &mut blocks, max_len - m0, &mut acc);
        acc
    });
    out.sort();
    out
}

fn extend_elements(
    m0: u64,
    blocks: &mut Vec<(u8, u64)>,
    remaining: u64,
    out: &mut Vec<NormalFormS>,
) {
    for n in 0..=remaining {
        out.push(NormalFormS {
            m0,
            blocks: blocks.clone(),
            n,
        });
    }
    let choices: &[u8] = if blocks.is_empty() && m0 == 0 {
        &[1, 2, 3]
    } else {
        &[1, 3]
    };
    for &ni in choices {
        for mi in 1..=remaining.saturating_sub(ni as u64) {
            blocks.push((ni, mi));
            extend_elements(m0, blocks, remaining - ni as u64 - mi, out);
            blocks.pop();
        }
    }
}

/// Number of elements of minimal length exactly `ℓ`, for `ℓ = 0..=max_len`,
/// counted over normal-form parameters without materializing them.
pub fn count_by_length(max_len: u64) -> Vec<u128> {
    let l = max_len as usize;
    // tail[r]: continuations (blocks with nᵢ ∈ {1,3}, then a^n) of length exactly r
    let mut tail = vec![0u128; l + 1];
    for r in 0..=l {
        let mut t = 1;
        for ni in [1usize, 3] {
            for mi in 1..=r.saturating_sub(ni) {
                t += tail[r - ni - mi];
            }
        }
        tail[r] = t;
    }
    (0..=l)
        .map(|len| {
            (0..=len)
                .map(|m0| {
                    let r = len - m0;
                    let firsts: &[usize] = if m0 == 0 { &[1, 2, 3] } else { &[1, 3] };
                    // k = 0: b^{m0} a^{r}
                    let mut c = 1;
                    for &n1 in firsts {
                        for m1 in 1..=r.saturating_sub(n1) {
                            c += tail[r - n1 - m1];
                        }
                    }
                    c
                })
                .sum()
        })
        .collect()
}

/// Outcome of [`is_atom`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AtomVerdict {
    Unit,
    Atom,
    /// `x = left · right` with both factors nonunits.
    NotAtom {
        left: NormalFormS,
        right: NormalFormS,
    },
}

/// Exact atom test. Units of `S` are trivial and the atoms are exactly `a`
/// and `b`, so anything of minimal length `≥ 2` splits off its first letter.
pub fn is_atom(x: &NormalFormS) -> AtomVerdict {
    match x.len() {
        0 => AtomVerdict::Unit,
        1 => AtomVerdict::Atom,
        _ => {
            let ls = x.letters();
            AtomVerdict::NotAtom {
                left: normalize_letters(&ls[..1]),
                right: normalize_letters(&ls[1..]),
            }
        }
    }
}

/// How the completeness of a [`LengthSetReport`] was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthCertificate {
    /// The congruence closure never needed a word longer than the cap.
    ClosureStable,
    /// Every missing length of the right parity was ruled out by normalizing
    /// all words with the same `a`-count.
    CanonicalEnumeration,
    /// Neither check was affordable.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthSetReport {
    pub element: NormalFormS,
    pub cap: u64,
    pub lengths: BTreeSet<u64>,
    pub exhausted: bool,
    pub certificate: LengthCertificate,
    pub words_visited: usize,
}

impl LengthSetReport {
    pub fn max(&self) -> Option<u64> {
        self.lengths.iter().next_back().copied()
    }
}

const RELATIONS: [(&[Letter], &[Letter]); 2] = [
    (&[B, A, A, B], &[A, A]),
    (&[A, A, A, A, B], &[B, A, A, A, A]),
];

/// One-step neighbours under the congruence, restricted to length `≤ cap`.
/// The flag reports whether some neighbour was cut off by the cap.
fn neighbours(w: &[Letter], cap: usize) -> (Vec<Vec<Letter>>, bool) {
    let mut out = Vec::new();
    let mut touched = false;
    for (l, r) in RELATIONS {
        for (from, to) in [(l, r), (r, l)] {
            if from.len() > w.len() {
                continue;
            }
            for pos in 0..=w.len() - from.len() {
                if &w[pos..pos + from.len()] != from {
                    continue;
                }
                if w.len() - from.len() + to.len() > cap {
                    touched = true;
                    continue;
                }
                let mut v = Vec::with_capacity(w.len() - from.len() + to.len());
                v.extend_from_slice(&w[..pos]);
                v.extend_from_slice(to);
                v.extend_from_slice(&w[pos + from.len()..]);
                out.push(v);
            }
        }
    }
    (out, touched)
}

/// Factorization lengths of `x` up to `cap`.
///
/// Atoms of `S` are exactly the generators, so factorization lengths are the
/// lengths of words representing `x`. These are collected by a breadth-first
/// closure under both relations in both directions, restricted to words of
/// length `≤ cap`. Lengths of the wrong parity are impossible (the `a`-count
/// and the parity of the `b`-count are invariant); any other length the
/// closure did not reach is settled by normalizing every word of that length
/// with the right `a`-count.
pub fn length_set(x: &NormalFormS, cap: u64) -> Result<LengthSetReport, MonoidError> {
    if cap < x.len() {
        return Err(MonoidError::CapBelowMinimalLength { cap, min: x.len() });
    }
    let cap_us = cap as usize;
    let start = x.letters();
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    let mut touched = false;
    while !frontier.is_empty() {
        let expanded = par::map(&frontier, |w| neighbours(w, cap_us));
        let mut next = Vec::new();
        for (ns, t) in expanded {
            touched |= t;
            for v in ns {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut lengths: BTreeSet<u64> = seen.iter().map(|w| w.len() as u64).collect();

    let certificate = if !touched {
        LengthCertificate::ClosureStable
    } else {
        let a = x.a_count();
        let missing: Vec<u64> = (x.len()..=cap)
            .step_by(2)
            .filter(|l| !lengths.contains(l))
            .collect();
        let cost: u128 = missing.iter().map(|&l| binomial(l, a)).sum();
        if cost <= ENUMERATION_BUDGET {
            let found = par::map(&missing, |&l| represents_with_length(x, a, l));
            lengths.extend(
                missing
                    .iter()
                    .zip(found)
                    .filter(|(_, f)| *f)
                    .map(|(l, _)| *l),
            );
            LengthCertificate::CanonicalEnumeration
        } else {
            LengthCertificate::None
        }
    };
    Ok(LengthSetReport {
        element: x.clone(),
        cap,
        lengths,
        exhausted: certificate != LengthCertificate::None,
        certificate,
        words_visited: seen.len(),
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Is there a word of length `len` with exactly `a` letters `a` equal to `x`?
fn represents_with_length(x: &NormalFormS, a: u64, len: u64) -> bool {
    fn rec(buf: &mut Vec<Letter>, a_left: u64, b_left: u64, x: &NormalFormS) -> bool {
        if a_left == 0 && b_left == 0 {
            return normalize_letters(buf) == *x;
        }
        for (l, ok) in [(A, a_left > 0), (B, b_left > 0)] {
            if !ok {
                continue;
            }
            buf.push(l);
            let hit = if l == A {
                rec(buf, a_left - 1, b_left, x)
            } else {
                rec(buf, a_left, b_left - 1, x)
            };
            buf.pop();
            if hit {
                return true;
            }
        }
        false
    }
    len >= a && rec(&mut Vec::with_capacity(len as usize), a, len - a, x)
}

/// One link of the chain `a²S ⊊ ba²S ⊊ b²a²S ⊊ ⋯`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccpLink {
    /// `bᵏ a²`.
    pub generator: NormalFormS,
    /// The `c` with `generator = b^{k+1}a² · c`.
    pub cofactor: NormalFormS,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccpWitness {
    pub depth: u64,
    pub chain: Vec<AccpLink>,
    /// Certified strict inclusions between consecutive listed generators.
    pub strict_inclusions: u64,
}

/// Builds and certifies the ascending chain of principal right ideals
/// generated by `bᵏ a²`, `k = 0..=depth`.
///
/// Each link is certified by one successful exact division
/// (`bᵏa² = b^{k+1}a² · b`) and one failed one (`b^{k+1}a² ∉ bᵏa² S`).
pub fn verify_accp_failure(depth: u64) -> Result<AccpWitness, MonoidError> {
    let a2 = NormalFormS::a_pow(2);
    let gen = |k: u64| NormalFormS::b_pow(k).mul(&a2);
    let links = par::map(&(0..=depth).collect::<Vec<_>>(), |&k| {
        let (g, next) = (gen(k), gen(k + 1));
        let cofactor = match group::left_quotient_nf(&next, &g) {
            SMembership::In(c) if c == NormalFormS::b_pow(1) && next.mul(&c) == g => c,
            other => {
                return Err(MonoidError::Consistency(format!(
                    "{g} = {next} · b failed: {other:?}"
                )))
            }
        };
        if group::left_quotient_nf(&g, &next).is_in() {
            return Err(MonoidError::Consistency(format!("{next} ∈ {g}·S")));
        }
        Ok(AccpLink {
            generator: g,
            cofactor,
        })
    });
    let chain = links.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(AccpWitness {
        depth,
        chain,
        strict_inclusions: depth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SbnVerdict {
    /// `x = cofactor · a² · bⁱ`, hence `x ∈ S bⁿ` for every `n`.
    Yes { i: u64, cofactor: NormalFormS },
    /// `x ∈ S bⁿ` exactly for `n ≤ max_n` (within the probe).
    No { max_n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SbnReport {
    pub element: NormalFormS,
    pub probe: u64,
    pub verdict: SbnVerdict,
}

/// Default search depth for [`in_all_sbn`].
pub fn default_probe(x: &NormalFormS) -> u64 {
    x.b_count() + 4
}

/// Tests membership of `x` in `⋂ₙ S bⁿ` by looking for a certificate
/// `x = xᵢ a² bⁱ` with `i ≤ probe`. Such a certificate suffices because
/// `a² = bᵐ a² bᵐ` absorbs any number of trailing `b`s.
pub fn in_all_sbn(x: &NormalFormS, probe: Option<u64>) -> SbnReport {
    let probe = probe.unwrap_or_else(|| default_probe(x));
    let a2 = NormalFormS::a_pow(2);
    for i in 0..=probe {
        let tail = a2.mul(&NormalFormS::b_pow(i));
        if let SMembership::In(xi) = group::right_quotient_nf(x, &tail) {
            debug_assert_eq!(&xi.mul(&tail), x);
            return SbnReport {
                element: x.clone(),
                probe,
                verdict: SbnVerdict::Yes { i, cofactor: xi },
            };
        }
    }
    let max_n = (0..=probe)
        .take_while(|&n| group::right_quotient_nf(x, &NormalFormS::b_pow(n)).is_in())
        .last()
        .unwrap_or(0);
    SbnReport {
        element: x.clone(),
        probe,
        verdict: SbnVerdict::No { max_n },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::embed;
    use crate::word::enumerate_words;

    fn nf(s: &str) -> NormalFormS {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(nf("b a a b"), NormalFormS::new(0, vec![], 2).unwrap());
        assert_eq!(nf("a a a a b"), NormalFormS::new(1, vec![], 4).unwrap());
        for n in 0..=8 {
            assert_eq!(nf(&format!("b^{n} a^2 b^{n}")), NormalFormS::a_pow(2));
        }
        assert_eq!(nf("b^2 a^3 b a^2").to_string(), "b^2 a^3 b^1 a^2");
    }

    #[test]
    fn normalize_matches_string_rewriting() {
        let rs = rewrite_system();
        for w in enumerate_words(alphabet(), 11) {
            let fixed = rs.rewrite_to_fixpoint(&w, 10_000).unwrap();
            assert_eq!(normalize(&w).word(), fixed, "{w}");
        }
    }

    #[test]
    fn equal_examples() {
        let w = |s| parse_word(s).unwrap();
        assert!(equal(&w("b a a b"), &w("a a")));
        assert!(!equal(&w("a b"), &w("b a")));
        assert_ne!(embed(&w("a b")), embed(&w("b a")));
        assert!(equal(&w("a b b a"), &w("a b b a")));
    }

    #[test]
    fn normal_forms_are_fixpoints() {
        for x in enumerate_elements(9) {
            assert_eq!(normalize(&x.word()), x);
            assert_eq!(NormalFormS::new(x.m0, x.blocks.clone(), x.n).unwrap(), x);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(NormalFormS::new(1, vec![(2, 1)], 0).is_err());
        assert!(NormalFormS::new(0, vec![(1, 1), (2, 1)], 0).is_err());
        assert!(NormalFormS::new(0, vec![(4, 1)], 0).is_err());
        assert!(NormalFormS::new(0, vec![(1, 0)], 0).is_err());
        assert!(NormalFormS::new(0, vec![(2, 3), (3, 1)], 5).is_ok());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_elements(0), vec![NormalFormS::identity()]);
        let one: Vec<String> = enumerate_elements(1)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(one, ["e", "a^1", "b^1"]);
        let two: Vec<String> = enumerate_elements(2)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(two, ["e", "a^1", "b^1", "a^2", "a^1 b^1", "b^1 a^1", "b^2"]);
    }

    #[test]
    fn enumeration_matches_word_dedup_and_counting() {
        for n in 0..=9u64 {
            let distinct: HashSet<NormalFormS> = enumerate_words(alphabet(), n as usize)
                .map(|w| normalize(&w))
                .collect();
            let listed = enumerate_elements(n);
            assert_eq!(listed.len(), distinct.len(), "n = {n}");
            let counted: u128 = count_by_length(n).iter().sum();
            assert_eq!(counted, listed.len() as u128);
        }
    }

    #[test]
    fn atom_examples() {
        assert_eq!(is_atom(&nf("a")), AtomVerdict::Atom);
        assert_eq!(is_atom(&nf("b")), AtomVerdict::Atom);
        assert_eq!(is_atom(&nf("e")), AtomVerdict::Unit);
        assert_eq!(
            is_atom(&nf("a a")),
            AtomVerdict::NotAtom {
                left: nf("a"),
                right: nf("a")
            }
        );
    }

    #[test]
    fn length_set_examples() {
        let r = length_set(&nf("a a"), 8).unwrap();
        assert_eq!(r.lengths, BTreeSet::from([2, 4, 6, 8]));
        assert!(r.exhausted);
        let r = length_set(&nf("b"), 5).unwrap();
        assert_eq!(r.lengths, BTreeSet::from([1]));
        assert_eq!(r.certificate, LengthCertificate::ClosureStable);
        let r = length_set(&nf("e"), 3).unwrap();
        assert_eq!(r.lengths, BTreeSet::from([0]));
        assert_eq!(
            length_set(&nf("a b a"), 2),
            Err(MonoidError::CapBelowMinimalLength { cap: 2, min: 3 })
        );
    }

    #[test]
    fn length_sets_have_constant_parity() {
        for x in enumerate_elements(4) {
            let r = length_set(&x, 8).unwrap();
            assert!(r.lengths.iter().all(|l| l % 2 == x.len() % 2), "{x}");
            assert_eq!(r.lengths.first(), Some(&x.len()));
        }
    }

    #[test]
    fn accp_examples() {
        let w = verify_accp_failure(1).unwrap();
        assert_eq!(w.strict_inclusions, 1);
        assert_eq!(
            w.chain,
            vec![
                AccpLink {
                    generator: nf("a a"),
                    cofactor: nf("b")
                },
                AccpLink {
                    generator: nf("b a a"),
                    cofactor: nf("b")
                },
            ]
        );
        let w = verify_accp_failure(20).unwrap();
        assert_eq!(w.strict_inclusions, 20);
        assert_eq!(w.chain.len(), 21);
        // strictness at k = 0: (a²)⁻¹ ba² = (b⁻¹, 0) is not in S
        let q = group::embed_nf(&nf("a a"))
            .inverse()
            .mul(&group::embed_nf(&nf("b a a")));
        assert_eq!(q.to_string(), "b^-1 | a^0");
        assert_eq!(
            group::left_quotient_nf(&nf("a a"), &nf("b a a")),
            SMembership::NotIn
        );
        // while the inclusion direction divides: a² = ba² · b
        assert_eq!(
            group::left_quotient_nf(&nf("b a a"), &nf("a a")),
            SMembership::In(nf("b"))
        );
    }

    #[test]
    fn sbn_examples() {
        assert_eq!(
            in_all_sbn(&nf("a a"), None).verdict,
            SbnVerdict::Yes {
                i: 0,
                cofactor: nf("e")
            }
        );
        assert_eq!(
            in_all_sbn(&nf("b b b"), None).verdict,
            SbnVerdict::No { max_n: 3 }
        );
        assert_eq!(
            in_all_sbn(&nf("a a b"), None).verdict,
            SbnVerdict::Yes {
                i: 1,
                cofactor: nf("e")
            }
        );
        for m in 0..=5 {
            assert_eq!(nf(&format!("b^{m} a^2 b^{}", m + 1)), nf("a a b"));
        }
    }

    #[test]
    fn unit_group_is_trivial() {
        let xs = enumerate_elements(5);
        for x in xs.iter().filter(|x| !x.is_identity()) {
            for y in &xs {
                assert!(!x.mul(y).is_identity());
            }
        }
    }

    #[test]
    fn count_by_length_small_values() {
        assert_eq!(count_by_length(2), vec![1, 2, 4]);
    }
}
