//! Growth of the frame `V = span{1, generators}` in a monoid algebra.
//!
//! Monomials are a basis, so `dim Vⁿ` is the number of distinct monoid
//! elements of minimal word length `≤ n`; no linear algebra is needed.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::group::{self, GroupElement};
use crate::monoid;
use crate::par;
use crate::word::{enumerate_words, word_count, Alphabet, Letter};

/// Upper bound on the number of words or elements a table may touch.
pub const GROWTH_BUDGET: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("classification needs at least {needed} entries, got {got}")]
    TooFewEntries { needed: usize, got: usize },
    #[error("unknown growth model `{0}`; expected free, free-commutative, s or s-words")]
    UnknownModel(String),
}

/// Heuristic growth class. The thresholds are pragmatic, not theorems.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Polynomial { degree: u32, slope: f64 },
    Exponential { ratio: f64 },
    Inconclusive,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Polynomial { degree, slope } => {
                write!(
                    f,
                    "polynomial(degree {degree}, local slope {slope:.3}) [heuristic]"
                )
            }
            Classification::Exponential { ratio } => {
                write!(f, "exponential(ratio {ratio:.3}) [heuristic]")
            }
            Classification::Inconclusive => f.write_str("inconclusive [heuristic]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthTable {
    pub frame: String,
    /// `(n, dim Vⁿ)` for `n = 0, 1, …`.
    pub entries: Vec<(u64, u128)>,
    /// First `n` left out because it would exceed the budget.
    pub truncated_at: Option<u64>,
    pub classification: Option<Classification>,
}

impl GrowthTable {
    fn new(frame: impl Into<String>, entries: Vec<(u64, u128)>, n_max: u64) -> Self {
        let last = entries.last().map(|e| e.0);
        let truncated_at = match last {
            Some(l) if l >= n_max => None,
            Some(l) => Some(l + 1),
            None => Some(0),
        };
        let mut table = GrowthTable {
            frame: frame.into(),
            entries,
            truncated_at,
            classification: None,
        };
        table.classification = classify(&table).ok();
        table
    }

    pub fn dims(&self) -> Vec<u128> {
        self.entries.iter().map(|e| e.1).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,dim\n");
        for (n, d) in &self.entries {
            writeln!(out, "{n},{d}").unwrap();
        }
        out
    }

    /// Whitespace-separated columns with `#` comments, as gnuplot expects.
    pub fn to_columns(&self) -> String {
        let mut out = format!("# frame: {}\n", self.frame);
        if let Some(n) = self.truncated_at {
            writeln!(out, "# truncated at n = {n}").unwrap();
        }
        if let Some(c) = &self.classification {
            writeln!(out, "# {c}").unwrap();
        }
        out.push_str("# n dim\n");
        for (n, d) in &self.entries {
            writeln!(out, "{n} {d}").unwrap();
        }
        out
    }
}

/// Counts distinct normal forms of all words up to length `n_max`, one
/// length at a time, stopping early once the word budget would be exceeded.
pub fn growth_table_by_words<K, N>(
    frame: &str,
    alphabet: &Alphabet,
    n_max: u64,
    normalizer: N,
) -> GrowthTable
where
    K: Hash + Eq + Send,
    N: Fn(&[Letter]) -> K + Sync + Send,
{
    let k = alphabet.len();
    let reachable = (0..=n_max)
        .take_while(|&n| word_count(k, n as usize) <= GROWTH_BUDGET)
        .last();
    let mut entries = Vec::new();
    if let Some(top) = reachable {
        let mut seen = HashSet::new();
        let mut words = enumerate_words(alphabet, top as usize).peekable();
        for n in 0..=top {
            let mut batch = Vec::new();
            while let Some(w) = words.next_if(|w| w.len() as u64 == n) {
                batch.push(w);
            }
            for key in par::map(&batch, |w| normalizer(w.letters())) {
                seen.insert(key);
            }
            entries.push((n, seen.len() as u128));
        }
    }
    GrowthTable::new(frame, entries, n_max)
}

/// Free monoid on `k` generators.
pub fn free_monoid(k: usize, n_max: u64) -> GrowthTable {
    growth_table_by_words(
        &format!("free monoid, {k} generators"),
        &generic_alphabet(k),
        n_max,
        |w| w.to_vec(),
    )
}

/// Free commutative monoid on `k` generators; normal form = sorted letters.
pub fn free_commutative(k: usize, n_max: u64) -> GrowthTable {
    growth_table_by_words(
        &format!("free commutative monoid, {k} generators"),
        &generic_alphabet(k),
        n_max,
        |w| {
            let mut v = w.to_vec();
            v.sort_unstable();
            v
        },
    )
}

fn generic_alphabet(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| format!("g{i}"))).expect("distinct generated names")
}

/// `S` by direct enumeration of normal forms.
pub fn s_by_tuples(n_max: u64) -> GrowthTable {
    let counts = monoid::count_by_length(n_max);
    let mut total = 0u128;
    let top = counts
        .iter()
        .take_while(|&&c| {
            total += c;
            total <= GROWTH_BUDGET
        })
        .count() as u64;
    let mut entries = Vec::new();
    if top > 0 {
        let mut per_len = vec![0u128; top as usize];
        for x in monoid::enumerate_elements(top - 1) {
            per_len[x.len() as usize] += 1;
        }
        let mut acc = 0;
        for (n, c) in per_len.into_iter().enumerate() {
            acc += c;
            entries.push((n as u64, acc));
        }
    }
    GrowthTable::new("monoid S (normal forms)", entries, n_max)
}

/// `S` by breadth-first search over words, identifying words through their
/// images in the group `F ⋊ ℤ`.
pub fn s_by_words(n_max: u64) -> GrowthTable {
    let gens = [GroupElement::a(), GroupElement::b()];
    let mut seen: HashSet<GroupElement> = HashSet::from([GroupElement::identity()]);
    let mut frontier = vec![GroupElement::identity()];
    let mut entries = vec![(0, 1u128)];
    for n in 1..=n_max {
        let candidates = par::flat_map(&frontier, |g| {
            gens.iter().map(|s| g.mul(s)).collect::<Vec<_>>()
        });
        if seen.len() as u128 + candidates.len() as u128 > GROWTH_BUDGET {
            break;
        }
        frontier = candidates
            .into_iter()
            .filter(|g| seen.insert(g.clone()))
            .collect();
        debug_assert!(frontier.iter().all(|g| group::parse_membership(g).is_in()));
        entries.push((n, seen.len() as u128));
    }
    GrowthTable::new("monoid S (words + group oracle)", entries, n_max)
}

/// Named models for the command line.
pub fn growth_table(model: &str, n_max: u64) -> Result<GrowthTable, GrowthError> {
    match model {
        "free" => Ok(free_monoid(2, n_max)),
        "free-commutative" => Ok(free_commutative(2, n_max)),
        "s" => Ok(s_by_tuples(n_max)),
        "s-words" => Ok(s_by_words(n_max)),
        other => Err(GrowthError::UnknownModel(other.to_string())),
    }
}

const MIN_ENTRIES: usize = 8;
const WINDOW: usize = 4;

/// Polynomial when the last local log-log slopes `Δ log dim / Δ log(n+1)`
/// agree within 10% and sit within 10% of an integer; exponential when
/// instead the last successive ratios agree within 10% and exceed 1.05.
pub fn classify(table: &GrowthTable) -> Result<Classification, GrowthError> {
    let e = &table.entries;
    if e.len() < MIN_ENTRIES {
        return Err(GrowthError::TooFewEntries {
            needed: MIN_ENTRIES,
            got: e.len(),
        });
    }
    let tail = &e[e.len() - WINDOW - 1..];
    let ratios: Vec<f64> = tail
        .windows(2)
        .map(|w| w[1].1 as f64 / w[0].1 as f64)
        .collect();
    let slopes: Vec<f64> = tail
        .windows(2)
        .map(|w| {
            let (n0, d0) = (w[0].0 as f64 + 1.0, w[0].1 as f64);
            let (n1, d1) = (w[1].0 as f64 + 1.0, w[1].1 as f64);
            (d1 / d0).ln() / (n1 / n0).ln()
        })
        .collect();
    let spread = |v: &[f64]| {
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.iter().cloned().fold(f64::MAX, f64::min);
        (max - min, max)
    };

    let slope = *slopes.last().unwrap();
    let degree = slope.round().max(0.0);
    let (slope_spread, _) = spread(&slopes);
    let tolerance = 0.1 * degree.max(1.0);
    if slope_spread <= tolerance && (slope - degree).abs() <= tolerance {
        return Ok(Classification::Polynomial {
            degree: degree as u32,
            slope,
        });
    }
    let (ratio_spread, ratio_max) = spread(&ratios);
    let ratio = *ratios.last().unwrap();
    if ratio_spread <= 0.1 * ratio_max && ratio > 1.05 {
        return Ok(Classification::Exponential { ratio });
    }
    Ok(Classification::Inconclusive)
}
