//! Alphabets, words, finite presentations and a small string rewriting engine.
//!
//! Words are immutable values tied to an [`Alphabet`]. Letters are stored as
//! generator indices; the alphabet only matters for printing, parsing and for
//! rejecting operations that mix words from different alphabets.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a generator inside its alphabet.
pub type Letter = u16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet mismatch: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGenerator(String),
    #[error("rewrite budget of {budget} steps exceeded")]
    BudgetExceeded { budget: usize },
    #[error(
        "termination certificate did not decrease when applying rule {rule} at position {position}"
    )]
    CertificateViolated { rule: usize, position: usize },
    #[error("rule {0} increases word length")]
    LengthIncreasingRule(usize),
    #[error("rule {0} has an empty pattern")]
    EmptyPattern(usize),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A generator of a presented monoid: its index and printable name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: Letter,
    pub name: String,
}

/// An ordered set of generator names. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '^') || name == "e"
            {
                return Err(WordError::InvalidGenerator(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(WordError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(Alphabet(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.0[letter as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.0.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0.iter().enumerate().map(|(i, n)| Generator {
            id: i as Letter,
            name: n.clone(),
        })
    }

    fn single_char_names(&self) -> bool {
        self.0.iter().all(|n| n.chars().count() == 1)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", &self.0[..])
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

/// A finite word over an alphabet. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(alphabet: &Alphabet) -> Self {
        Word {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    /// Builds a word from raw letters.
    ///
    /// Panics if a letter is out of range for the alphabet.
    pub fn from_letters(alphabet: &Alphabet, letters: Vec<Letter>) -> Self {
        assert!(
            letters.iter().all(|&l| (l as usize) < alphabet.len()),
            "letter out of range for alphabet [{alphabet}]"
        );
        Word {
            alphabet: alphabet.clone(),
            letters,
        }
    }

    /// Parses space separated generator tokens with optional `^k` exponents,
    /// e.g. `b a^2 b`. The token `e` denotes the empty word.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self, WordError> {
        parse_word_line(alphabet, text, 1, 1)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        self.check_alphabet(other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            letters,
        })
    }

    pub fn check_alphabet(&self, other: &Word) -> Result<(), WordError> {
        if self.alphabet != other.alphabet {
            return Err(WordError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    /// Exponent-compressed rendering, e.g. `b^2 a^3 b^1`; `e` for the empty word.
    pub fn to_compressed(&self) -> String {
        compress(&self.alphabet, &self.letters)
    }
}

pub(crate) fn compress(alphabet: &Alphabet, letters: &[Letter]) -> String {
    if letters.is_empty() {
        return "e".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        parts.push(format!("{}^{}", alphabet.name(letters[i]), j - i));
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.alphabet.name(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Shortlex order: shorter words first, then lexicographic by generator index.
impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.alphabet.0.cmp(&other.alphabet.0))
    }
}

fn parse_word_line(
    alphabet: &Alphabet,
    text: &str,
    line: usize,
    column_offset: usize,
) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    let mut column = column_offset;
    for raw in text.split(' ') {
        let token_column = column;
        column += raw.chars().count() + 1;
        if raw.is_empty() {
            continue;
        }
        let err = |col: usize, message: String| WordError::Parse {
            line,
            column: col,
            message,
        };
        let (symbol, exponent) = match raw.split_once('^') {
            Some((s, e)) => {
                let k: usize = e.parse().map_err(|_| {
                    err(
                        token_column + s.chars().count() + 1,
                        format!("invalid exponent `{e}`"),
                    )
                })?;
                (s, k)
            }
            None => (raw, 1),
        };
        if symbol == "e" {
            continue;
        }
        if let Some(l) = alphabet.lookup(symbol) {
            letters.extend(std::iter::repeat_n(l, exponent));
        } else if exponent == 1 && alphabet.single_char_names() {
            // juxtaposed single-character generators, e.g. `baab`
            for (offset, ch) in symbol.chars().enumerate() {
                let l = alphabet.lookup(&ch.to_string()).ok_or_else(|| {
                    err(token_column + offset, format!("unknown generator `{ch}`"))
                })?;
                letters.push(l);
            }
        } else {
            return Err(err(token_column, format!("unknown generator `{symbol}`")));
        }
    }
    Ok(Word {
        alphabet: alphabet.clone(),
        letters,
    })
}

/// A finite monoid presentation `⟨generators | relations⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Self, WordError> {
        for (lhs, rhs) in &relations {
            if lhs.alphabet != alphabet {
                return Err(WordError::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: lhs.alphabet.to_string(),
                });
            }
            lhs.check_alphabet(rhs)?;
        }
        Ok(Presentation {
            alphabet,
            relations,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// Parses the line format
    ///
    /// ```text
    /// generators: a b
    /// relation: baab = aa
    /// relation: a a a a b = b a a a a
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (first_no, first) = lines.next().ok_or(WordError::Parse {
            line: 1,
            column: 1,
            message: "missing `generators:` line".into(),
        })?;
        let names = first.strip_prefix("generators:").ok_or(WordError::Parse {
            line: first_no,
            column: 1,
            message: "expected `generators:`".into(),
        })?;
        let alphabet = Alphabet::new(names.split_whitespace()).map_err(|e| WordError::Parse {
            line: first_no,
            column: 12,
            message: e.to_string(),
        })?;
        let mut relations = Vec::new();
        for (no, line) in lines {
            let body = line.strip_prefix("relation:").ok_or(WordError::Parse {
                line: no,
                column: 1,
                message: "expected `relation:`".into(),
            })?;
            let offset = "relation:".len() + 1;
            let (lhs, rhs) = body.split_once('=').ok_or(WordError::Parse {
                line: no,
                column: offset,
                message: "expected `=` in relation".into(),
            })?;
            let rhs_offset = offset + lhs.chars().count() + 1;
            let lhs = parse_word_line(&alphabet, lhs, no, offset)?;
            let rhs = parse_word_line(&alphabet, rhs, no, rhs_offset)?;
            relations.push((lhs, rhs));
        }
        Ok(Presentation {
            alphabet,
            relations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.alphabet);
        for (l, r) in &self.relations {
            out.push_str(&format!("relation: {l} = {r}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub pattern: Vec<Letter>,
    pub replacement: Vec<Letter>,
}

/// Strictly decreasing (lexicographic) weight witnessing termination.
pub type Certificate = Arc<dyn Fn(&[Letter]) -> Vec<u64> + Send + Sync>;

/// An oriented string rewriting system with a termination certificate.
///
/// Rules are applied leftmost first; at a given position the first matching
/// rule wins. Every step is checked against the certificate.
#[derive(Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    certificate: Certificate,
}

impl fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("alphabet", &self.alphabet)
            .field("rules", &self.rules)
            .finish_non_exhaustive()
    }
}

impl RewriteSystem {
    pub fn new(
        alphabet: Alphabet,
        rules: Vec<(Word, Word)>,
        certificate: Certificate,
    ) -> Result<Self, WordError> {
        let mut out = Vec::with_capacity(rules.len());
        for (i, (p, r)) in rules.into_iter().enumerate() {
            if p.alphabet != alphabet || r.alphabet != alphabet {
                return Err(WordError::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: p.alphabet.to_string(),
                });
            }
            if p.is_empty() {
                return Err(WordError::EmptyPattern(i));
            }
            if r.len() > p.len() {
                return Err(WordError::LengthIncreasingRule(i));
            }
            out.push(Rule {
                pattern: p.letters,
                replacement: r.letters,
            });
        }
        Ok(RewriteSystem {
            alphabet,
            rules: out,
            certificate,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Finds the leftmost redex: `(position, rule index)`.
    fn find_redex(&self, letters: &[Letter]) -> Option<(usize, usize)> {
        (0..letters.len()).find_map(|pos| {
            self.rules
                .iter()
                .position(|r| letters[pos..].starts_with(&r.pattern))
                .map(|ri| (pos, ri))
        })
    }

    /// Rewrites until no rule applies.
    pub fn rewrite_to_fixpoint(&self, w: &Word, step_budget: usize) -> Result<Word, WordError> {
        if w.alphabet != self.alphabet {
            return Err(WordError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: w.alphabet.to_string(),
            });
        }
        let mut letters = w.letters.clone();
        let mut weight = (self.certificate)(&letters);
        let mut steps = 0;
        while let Some((pos, ri)) = self.find_redex(&letters) {
            if steps == step_budget {
                return Err(WordError::BudgetExceeded {
                    budget: step_budget,
                });
            }
            let rule = &self.rules[ri];
            letters.splice(
                pos..pos + rule.pattern.len(),
                rule.replacement.iter().copied(),
            );
            let next = (self.certificate)(&letters);
            if next >= weight {
                return Err(WordError::CertificateViolated {
                    rule: ri,
                    position: pos,
                });
            }
            weight = next;
            steps += 1;
        }
        Ok(Word {
            alphabet: w.alphabet.clone(),
            letters,
        })
    }
}

/// Every word of length at most `max_len`, in shortlex order.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> ShortlexWords {
    ShortlexWords {
        alphabet: alphabet.clone(),
        max_len,
        next: Some(Vec::new()),
    }
}

/// Number of words of length at most `max_len` over `k` letters.
pub fn word_count(k: usize, max_len: usize) -> u128 {
    (0..=max_len as u32).map(|n| (k as u128).pow(n)).sum()
}

#[derive(Debug, Clone)]
pub struct ShortlexWords {
    alphabet: Alphabet,
    max_len: usize,
    next: Option<Vec<Letter>>,
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let k = self.alphabet.len() as Letter;
        let mut succ = current.clone();
        // odometer increment; on overflow move to the next length
        let mut i = succ.len();
        loop {
            if i == 0 {
                if k > 0 && succ.len() < self.max_len {
                    self.next = Some(vec![0; succ.len() + 1]);
                }
                break;
            }
            i -= 1;
            if succ[i] + 1 < k {
                succ[i] += 1;
                for l in &mut succ[i + 1..] {
                    *l = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(Word {
            alphabet: self.alphabet.clone(),
            letters: current,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(&ab(), s).unwrap()
    }

    fn s_system() -> RewriteSystem {
        let inversions: Certificate = Arc::new(|ls: &[Letter]| {
            let mut a_seen = 0u64;
            let mut inv = 0u64;
            for &l in ls {
                if l == 0 {
                    a_seen += 1;
                } else {
                    inv += a_seen;
                }
            }
            vec![ls.len() as u64, inv]
        });
        RewriteSystem::new(
            ab(),
            vec![(w("baab"), w("aa")), (w("aaaab"), w("baaaa"))],
            inversions,
        )
        .unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("e").concat(&w("e")).unwrap(), w("e"));
        assert_eq!(w("ab").concat(&w("ba")).unwrap(), w("abba"));
        assert_eq!(w("b").concat(&w("aab")).unwrap(), w("baab"));
    }

    #[test]
    fn concat_rejects_foreign_alphabet() {
        let other = Alphabet::new(["x", "y"]).unwrap();
        let x = Word::parse(&other, "x").unwrap();
        assert!(matches!(
            w("a").concat(&x),
            Err(WordError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn rewrite_examples() {
        let rs = s_system();
        assert_eq!(rs.rewrite_to_fixpoint(&w("baab"), 10).unwrap(), w("aa"));
        assert_eq!(rs.rewrite_to_fixpoint(&w("aaaab"), 10).unwrap(), w("baaaa"));
        assert_eq!(rs.rewrite_to_fixpoint(&w("e"), 1).unwrap(), w("e"));
    }

    #[test]
    fn rewrite_budget_exceeded() {
        let rs = s_system();
        assert_eq!(
            rs.rewrite_to_fixpoint(&w("b b a a b b"), 1),
            Err(WordError::BudgetExceeded { budget: 1 })
        );
    }

    #[test]
    fn misoriented_rule_trips_certificate() {
        let len_only: Certificate = Arc::new(|ls: &[Letter]| vec![ls.len() as u64]);
        let rs = RewriteSystem::new(ab(), vec![(w("ab"), w("ba"))], len_only).unwrap();
        assert!(matches!(
            rs.rewrite_to_fixpoint(&w("ab"), 100),
            Err(WordError::CertificateViolated { rule: 0, .. })
        ));
    }

    #[test]
    fn length_increasing_rule_rejected() {
        let c: Certificate = Arc::new(|ls: &[Letter]| vec![ls.len() as u64]);
        assert_eq!(
            RewriteSystem::new(ab(), vec![(w("a"), w("aa"))], c).unwrap_err(),
            WordError::LengthIncreasingRule(0)
        );
    }

    #[test]
    fn rewriting_idempotent_and_nonincreasing() {
        let rs = s_system();
        for x in enumerate_words(&ab(), 12) {
            let y = rs.rewrite_to_fixpoint(&x, 10_000).unwrap();
            assert!(y.len() <= x.len());
            assert_eq!(rs.rewrite_to_fixpoint(&y, 10_000).unwrap(), y);
        }
    }

    #[test]
    fn enumerate_examples() {
        let words: Vec<_> = enumerate_words(&ab(), 1).map(|w| w.to_string()).collect();
        assert_eq!(words, ["e", "a", "b"]);
        assert_eq!(enumerate_words(&ab(), 0).count(), 1);
        assert_eq!(enumerate_words(&ab(), 2).count(), 7);
        let three = Alphabet::new(["x", "y", "z"]).unwrap();
        for n in 0..6 {
            assert_eq!(enumerate_words(&three, n).count() as u128, word_count(3, n));
            assert_eq!(word_count(3, n), (3u128.pow(n as u32 + 1) - 1) / 2);
        }
    }

    #[test]
    fn enumerate_is_strictly_shortlex() {
        let words: Vec<_> = enumerate_words(&ab(), 6).collect();
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn presentation_round_trip_and_diagnostics() {
        let p =
            Presentation::parse("generators: a b\nrelation: baab = aa\nrelation: a^4 b = b a^4\n")
                .unwrap();
        assert_eq!(p.relations().len(), 2);
        assert_eq!(p.relations()[1].0, w("aaaab"));
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);

        let err = Presentation::parse("generators: a b\nrelation: bacb = aa").unwrap_err();
        assert_eq!(
            err,
            WordError::Parse {
                line: 2,
                column: 13,
                message: "unknown generator `c`".into()
            }
        );
        let err = Presentation::parse("generators: a b\nrelation: a b = a z").unwrap_err();
        assert!(
            matches!(
                err,
                WordError::Parse {
                    line: 2,
                    column: 19,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn duplicate_generators_rejected() {
        assert_eq!(
            Alphabet::new(["a", "a"]).unwrap_err(),
            WordError::DuplicateGenerator("a".into())
        );
    }

    #[test]
    fn compressed_form() {
        assert_eq!(w("b b a a a b").to_compressed(), "b^2 a^3 b^1");
        assert_eq!(w("e").to_compressed(), "e");
        assert_eq!(Word::parse(&ab(), "b^2 a^3 b^1").unwrap(), w("bbaaab"));
    }
}
