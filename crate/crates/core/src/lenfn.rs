//! Checking the length function axioms on sampled factorizations.
//!
//! A sample is a triple `(a, b, c)` with `a = b·c` verified by the host's own
//! multiplication. The harness never looks for factorizations; hosts hand
//! them in.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::monoid::{self, NormalFormS};
use crate::par;
use crate::poly::BasePoly;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LengthError {
    #[error("sample {index} is not a factorization: {a} != ({b})*({c})")]
    NotAFactorization {
        index: usize,
        a: String,
        b: String,
        c: String,
    },
}

/// Elements a length function can be checked on.
pub trait Host: Clone + PartialEq + fmt::Display + Send + Sync {
    /// `None` when the product is undefined (e.g. mixed alphabets).
    fn product(&self, other: &Self) -> Option<Self>;
}

impl Host for NormalFormS {
    fn product(&self, other: &Self) -> Option<Self> {
        Some(self.mul(other))
    }
}

impl Host for Word {
    fn product(&self, other: &Self) -> Option<Self> {
        self.concat(other).ok()
    }
}

impl<F: Field> Host for BasePoly<F> {
    fn product(&self, other: &Self) -> Option<Self> {
        (self.ctx() == other.ctx()).then(|| self.mul(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `λ(a) > λ(b)` whenever `a = bc` with `c` a nonunit.
    Right,
    /// Additionally `λ(a) > λ(c)` whenever `a = bc` with `b` a nonunit.
    TwoSided,
    /// `λ(bc) ≥ λ(b) + λ(c)`, and `λ(x) = 0` only for units.
    Superadditive,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Right => "right",
            Flavor::TwoSided => "two_sided",
            Flavor::Superadditive => "superadditive",
        })
    }
}

pub type Evaluator<E> = Arc<dyn Fn(&E) -> u64 + Send + Sync>;
pub type UnitTest<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

/// A candidate length function together with the contract it claims.
pub struct LengthFunctionSpec<E> {
    pub name: String,
    pub flavor: Flavor,
    evaluator: Evaluator<E>,
    unit_test: UnitTest<E>,
}

impl<E> LengthFunctionSpec<E> {
    pub fn new(
        name: impl Into<String>,
        flavor: Flavor,
        evaluator: impl Fn(&E) -> u64 + Send + Sync + 'static,
        unit_test: impl Fn(&E) -> bool + Send + Sync + 'static,
    ) -> Self {
        LengthFunctionSpec {
            name: name.into(),
            flavor,
            evaluator: Arc::new(evaluator),
            unit_test: Arc::new(unit_test),
        }
    }

    pub fn eval(&self, x: &E) -> u64 {
        (self.evaluator)(x)
    }

    pub fn is_unit(&self, x: &E) -> bool {
        (self.unit_test)(x)
    }

    /// Same evaluator, different claimed contract.
    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        LengthFunctionSpec {
            flavor,
            ..self.clone()
        }
    }
}

impl<E> Clone for LengthFunctionSpec<E> {
    fn clone(&self) -> Self {
        LengthFunctionSpec {
            name: self.name.clone(),
            flavor: self.flavor,
            evaluator: Arc::clone(&self.evaluator),
            unit_test: Arc::clone(&self.unit_test),
        }
    }
}

impl<E> fmt::Debug for LengthFunctionSpec<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LengthFunctionSpec({}, {})", self.name, self.flavor)
    }
}

/// `a = b·c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triple<E> {
    pub a: E,
    pub b: E,
    pub c: E,
}

impl<E: Host> Triple<E> {
    pub fn new(a: E, b: E, c: E) -> Self {
        Triple { a, b, c }
    }

    /// The triple `(b·c, b, c)`; `None` when the product is undefined.
    pub fn from_factors(b: E, c: E) -> Option<Self> {
        Some(Triple {
            a: b.product(&c)?,
            b,
            c,
        })
    }

    pub fn is_factorization(&self) -> bool {
        self.b.product(&self.c).as_ref() == Some(&self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `c` nonunit but `λ(a) ≤ λ(b)`.
    RightFactor,
    /// `b` nonunit but `λ(a) ≤ λ(c)`.
    LeftFactor,
    /// `λ(a) < λ(b) + λ(c)`.
    Superadditivity,
    /// Some element of the triple is a nonunit with `λ = 0`.
    ZeroOnNonunit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub c: String,
    pub lambda_a: u64,
    pub lambda_b: u64,
    pub lambda_c: u64,
    pub clause: Clause,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub contract: Flavor,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn clauses<E>(spec: &LengthFunctionSpec<E>, t: &Triple<E>, l: [u64; 3]) -> Vec<Clause> {
    let [la, lb, lc] = l;
    let mut out = Vec::new();
    let c_nonunit = !spec.is_unit(&t.c);
    let b_nonunit = !spec.is_unit(&t.b);
    if c_nonunit && la <= lb {
        out.push(Clause::RightFactor);
    }
    if matches!(spec.flavor, Flavor::TwoSided) && b_nonunit && la <= lc {
        out.push(Clause::LeftFactor);
    }
    if matches!(spec.flavor, Flavor::Superadditive) {
        if la < lb + lc {
            out.push(Clause::Superadditivity);
        }
        let zero_nonunit =
            (la == 0 && !spec.is_unit(&t.a)) || (lb == 0 && b_nonunit) || (lc == 0 && c_nonunit);
        if zero_nonunit {
            out.push(Clause::ZeroOnNonunit);
        }
    }
    out
}

/// Evaluates the declared contract on every sample. The right-factor clause
/// is checked for all flavors, since each stronger contract implies it.
pub fn check_contract<E: Host>(
    spec: &LengthFunctionSpec<E>,
    sample: &[Triple<E>],
) -> Result<ViolationReport, LengthError> {
    if let Some(index) = sample.iter().position(|t| !t.is_factorization()) {
        let t = &sample[index];
        return Err(LengthError::NotAFactorization {
            index,
            a: t.a.to_string(),
            b: t.b.to_string(),
            c: t.c.to_string(),
        });
    }
    let per_triple = par::map(sample, |t| {
        let l = [spec.eval(&t.a), spec.eval(&t.b), spec.eval(&t.c)];
        clauses(spec, t, l)
            .into_iter()
            .map(|clause| Violation {
                a: t.a.to_string(),
                b: t.b.to_string(),
                c: t.c.to_string(),
                lambda_a: l[0],
                lambda_b: l[1],
                lambda_c: l[2],
                clause,
            })
            .collect::<Vec<_>>()
    });
    Ok(ViolationReport {
        contract: spec.flavor,
        samples: sample.len(),
        violations: per_triple.into_iter().flatten().collect(),
    })
}

/// `max ℒ(x) ≤ λ(x)`; vacuous for an empty length set.
pub fn bf_bound_check<E>(
    spec: &LengthFunctionSpec<E>,
    element: &E,
    lengths: &BTreeSet<u64>,
) -> bool {
    lengths.last().is_none_or(|&m| m <= spec.eval(element))
}

/// `n` nonunits of `S` whose product is `a²`, for `n ≥ 1`: `b^k a² b^k` for
/// odd `n = 2k+1` and `b^k a a b^k` for even `n = 2k+2`.
pub fn nonunit_power_witness(n: u64) -> Option<Vec<NormalFormS>> {
    if n == 0 {
        return None;
    }
    let b = NormalFormS::b_pow(1);
    let k = (n - 1) / 2;
    let middle = if n % 2 == 1 {
        vec![NormalFormS::a_pow(2)]
    } else {
        vec![NormalFormS::a_pow(1), NormalFormS::a_pow(1)]
    };
    let mut factors = vec![b.clone(); k as usize];
    factors.extend(middle);
    factors.extend(std::iter::repeat_n(b, k as usize));
    let product = factors
        .iter()
        .fold(NormalFormS::identity(), |acc, f| acc.mul(f));
    debug_assert_eq!(product, NormalFormS::a_pow(2));
    Some(factors)
}

/// Result of refuting a candidate right length function on `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    /// The `n` at which the first violation appeared.
    pub n: u64,
    /// `λ(a²) + 1`, the point by which a violation must have appeared.
    pub bound: u64,
    pub report: ViolationReport,
}

/// The triples examined at step `n`: `a² = bⁿa²·bⁿ`, `bⁿa² = bⁿ·a²` and
/// `bⁿ = bⁿ⁻¹·b`.
pub fn s_refutation_triples(n: u64) -> Vec<Triple<NormalFormS>> {
    let a2 = NormalFormS::a_pow(2);
    let bn = NormalFormS::b_pow(n);
    let bna2 = bn.mul(&a2);
    let mut out = vec![
        Triple::new(a2.clone(), bna2.clone(), bn.clone()),
        Triple::new(bna2, bn.clone(), a2),
    ];
    if n >= 1 {
        out.push(Triple::new(
            bn,
            NormalFormS::b_pow(n - 1),
            NormalFormS::b_pow(1),
        ));
    }
    out
}

/// Any `λ` on `S` fails the right contract: `λ(a²) > λ(bⁿa²) > λ(bⁿ) ≥ n`
/// cannot hold once `n > λ(a²)`. Searches `n = 0, 1, …` and stops at the
/// first violating step, which is never later than `λ(a²) + 1`.
pub fn refute_on_s(spec: &LengthFunctionSpec<NormalFormS>) -> Refutation {
    let right = spec.with_flavor(Flavor::Right);
    let bound = spec.eval(&NormalFormS::a_pow(2)) + 1;
    let mut samples = 0;
    for n in 0..=bound {
        let triples = s_refutation_triples(n);
        samples += triples.len();
        let report =
            check_contract(&right, &triples).expect("refutation triples are factorizations");
        if !report.passed() {
            return Refutation {
                n,
                bound,
                report: ViolationReport { samples, ..report },
            };
        }
    }
    unreachable!("a right length function on S would need λ(a²) > λ(a²) + 1")
}

/// Unit test for `S`: only the identity.
pub fn s_is_unit(x: &NormalFormS) -> bool {
    x.is_identity()
}

/// `λ(x)` = length of the normal form; a natural but doomed candidate on `S`.
pub fn s_normal_form_length() -> LengthFunctionSpec<NormalFormS> {
    LengthFunctionSpec::new(
        "normal-form length",
        Flavor::Right,
        NormalFormS::len,
        s_is_unit,
    )
}

/// `λ(x)` = maximal factorization length within `cap`, from [`monoid::length_set`].
pub fn s_max_length(cap: u64) -> LengthFunctionSpec<NormalFormS> {
    LengthFunctionSpec::new(
        format!("max length (cap {cap})"),
        Flavor::Right,
        move |x: &NormalFormS| {
            monoid::length_set(x, cap.max(x.len()))
                .ok()
                .and_then(|r| r.max())
                .unwrap_or(0)
        },
        s_is_unit,
    )
}

/// Word length on a free monoid.
pub fn free_word_length() -> LengthFunctionSpec<Word> {
    LengthFunctionSpec::new(
        "word length",
        Flavor::Superadditive,
        |w: &Word| w.len() as u64,
        |w: &Word| w.is_empty(),
    )
}

/// `deg` on `K[y] ∖ {0}`.
pub fn poly_degree<F: Field>() -> LengthFunctionSpec<BasePoly<F>> {
    LengthFunctionSpec::new(
        "degree",
        Flavor::Superadditive,
        |f: &BasePoly<F>| f.degree().map_or(0, |d| d as u64),
        BasePoly::is_unit,
    )
}
