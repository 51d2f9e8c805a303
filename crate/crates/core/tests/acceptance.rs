//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use factorlab::group::{self, embed_letters, embed_nf, g_inv, SMembership};
use factorlab::growth;
use factorlab::lenfn::{self, Clause, Flavor, LengthFunctionSpec};
use factorlab::monoid::{self, AtomVerdict, NormalFormS, A, B};
use factorlab::ore::{self, OreConfig};
use factorlab::pi_matrix::{self, Mat2};
use factorlab::word::{enumerate_words, Letter};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Word problem: normal-form equality and group equality induce the same
/// partition of all words of length at most 10.
fn oracle_equivalence() -> Result<String, String> {
    let words: Vec<Vec<Letter>> = enumerate_words(monoid::alphabet(), 10)
        .map(|w| w.letters().to_vec())
        .collect();
    ensure(words.len() == 2047, || format!("{} words", words.len()))?;
    let mut nf_to_group = HashMap::new();
    let mut group_to_nf = HashMap::new();
    let mut discrepancies = 0;
    for w in &words {
        let (x, g) = (monoid::normalize_letters(w), embed_letters(w));
        if *nf_to_group.entry(x.clone()).or_insert_with(|| g.clone()) != g {
            discrepancies += 1;
        }
        if *group_to_nf.entry(g).or_insert_with(|| x.clone()) != x {
            discrepancies += 1;
        }
    }
    ensure(discrepancies == 0, || {
        format!("{discrepancies} discrepancies")
    })?;
    Ok(format!(
        "{} words, {} classes, {} ordered pairs covered, 0 discrepancies",
        words.len(),
        nf_to_group.len(),
        words.len() * words.len()
    ))
}

/// Round trip through the group and injectivity of the embedding.
fn round_trip() -> Result<String, String> {
    let elements = monoid::enumerate_elements(12);
    let mut images = HashSet::new();
    for x in &elements {
        let g = embed_nf(x);
        match group::parse_membership(&g) {
            SMembership::In(y) if y == *x => {}
            other => return Err(format!("{x} came back as {other:?}")),
        }
        images.insert(g);
    }
    ensure(images.len() == elements.len(), || {
        "embedding not injective".into()
    })?;
    let dp: u128 = monoid::count_by_length(12).iter().sum();
    ensure(dp == elements.len() as u128, || {
        format!("count {dp} vs {}", elements.len())
    })?;
    Ok(format!(
        "{} normal forms, all distinct images",
        elements.len()
    ))
}

/// Chain of principal right ideals `bᵏa²S`, rechecked link by link.
fn accp() -> Result<String, String> {
    let w = monoid::verify_accp_failure(20).map_err(|e| e.to_string())?;
    ensure(w.strict_inclusions == 20, || {
        format!("{} inclusions", w.strict_inclusions)
    })?;
    for pair in w.chain.windows(2) {
        let (g, next) = (&pair[0].generator, &pair[1].generator);
        ensure(next.mul(&NormalFormS::b_pow(1)) == *g, || {
            format!("{g} != {next} b")
        })?;
        ensure(!group::left_quotient_nf(g, next).is_in(), || {
            format!("{next} in {g} S")
        })?;
    }
    Ok("20 strict inclusions, each with one exact division and one refuted".into())
}

/// `ℒ(a²)` up to 12, against words with two `a`s normalized one by one.
fn length_set() -> Result<String, String> {
    let a2 = NormalFormS::a_pow(2);
    let report = monoid::length_set(&a2, 12).map_err(|e| e.to_string())?;
    let expected: BTreeSet<u64> = (1..=6).map(|k| 2 * k).collect();
    ensure(report.lengths == expected, || {
        format!("{:?}", report.lengths)
    })?;
    ensure(report.exhausted, || "not certified complete".into())?;
    // a-count is invariant, so only words with exactly two a's can represent a^2
    let mut oracle = BTreeSet::new();
    for len in 2..=12usize {
        for i in 0..len {
            for j in i + 1..len {
                let mut w = vec![B; len];
                w[i] = A;
                w[j] = A;
                if monoid::normalize_letters(&w) == a2 {
                    oracle.insert(len as u64);
                }
            }
        }
    }
    ensure(oracle == expected, || {
        format!("brute force found {oracle:?}")
    })?;
    Ok("{2,4,6,8,10,12}, matching brute force".into())
}

/// Atoms of length at most 6 are `a` and `b`; `ε` is the only unit.
fn atoms() -> Result<String, String> {
    let elements = monoid::enumerate_elements(6);
    let mut atoms = Vec::new();
    for x in &elements {
        match monoid::is_atom(x) {
            AtomVerdict::Atom => atoms.push(x.clone()),
            AtomVerdict::NotAtom { left, right } => {
                ensure(
                    !left.is_identity() && !right.is_identity() && left.mul(&right) == *x,
                    || format!("bad split of {x}"),
                )?;
            }
            AtomVerdict::Unit => ensure(x.is_identity(), || format!("{x} reported as unit"))?,
        }
        let has_inverse = group::parse_membership(&g_inv(&embed_nf(x))).is_in();
        ensure(has_inverse == x.is_identity(), || {
            format!("{x}: inverse in S = {has_inverse}")
        })?;
    }
    let expected = vec![NormalFormS::a_pow(1), NormalFormS::b_pow(1)];
    ensure(atoms == expected, || format!("atoms {atoms:?}"))?;
    // no split of a or b among short nonunits
    for u in elements.iter().filter(|u| !u.is_identity()) {
        for g in &expected {
            ensure(
                !matches!(group::left_quotient_nf(u, g), SMembership::In(v) if !v.is_identity()),
                || format!("{g} splits off {u}"),
            )?;
        }
    }
    Ok(format!(
        "{} elements, atoms = {{a, b}}, units = {{e}}",
        elements.len()
    ))
}

/// Every candidate right length function on `S` is refuted in time.
fn negative_control() -> Result<String, String> {
    let unit = lenfn::s_is_unit;
    let candidates = [
        LengthFunctionSpec::new("normal-form length", Flavor::Right, NormalFormS::len, unit),
        LengthFunctionSpec::new("a-count", Flavor::Right, NormalFormS::a_count, unit),
        LengthFunctionSpec::new(
            "a-count + b-count",
            Flavor::Right,
            |x: &NormalFormS| x.a_count() + x.b_count(),
            unit,
        ),
    ];
    let mut found = Vec::new();
    for spec in &candidates {
        let r = lenfn::refute_on_s(spec);
        ensure(r.n <= r.bound && !r.report.passed(), || {
            format!("{} not refuted", spec.name)
        })?;
        // each violation must re-check by hand
        for v in &r.report.violations {
            let (a, b, c): (NormalFormS, NormalFormS, NormalFormS) = (
                v.a.parse().unwrap(),
                v.b.parse().unwrap(),
                v.c.parse().unwrap(),
            );
            ensure(
                b.mul(&c) == a && !c.is_identity() && v.clause == Clause::RightFactor,
                || format!("bogus violation {v:?}"),
            )?;
            ensure(spec.eval(&a) <= spec.eval(&b), || {
                format!("not a violation {v:?}")
            })?;
        }
        found.push(format!("{} at n={}", spec.name, r.n));
    }
    Ok(found.join(", "))
}

/// Right length functions on the three skew rings.
fn skew() -> Result<String, String> {
    let start = Instant::now();
    let mut out = Vec::new();
    for (i, cfg) in ["weyl", "qplane:q=2", "qtorus:q=2"].into_iter().enumerate() {
        let cfg: OreConfig = cfg.parse().map_err(|e| format!("{e}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(100 + i as u64);
        let r = ore::skew_suite(&cfg, 1000, 100 + i as u64, &mut rng);
        ensure(r.pairs == 1000 && r.right_length.samples == 1000, || {
            "sample size".into()
        })?;
        ensure(r.passed(), || format!("{cfg}: {r:?}"))?;
        out.push(format!("{cfg} ok"));
    }
    Ok(format!(
        "{} ({:.1}s)",
        out.join(", "),
        start.elapsed().as_secs_f64()
    ))
}

fn filtration() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let r = ore::filtration_suite(500, 200, &mut rng);
    ensure(r.passed(), || format!("{r:?}"))?;
    Ok("500 Weyl pairs, total degree exactly additive".into())
}

fn growth_baselines() -> Result<String, String> {
    let free = growth::free_monoid(2, 16);
    let comm = growth::free_commutative(2, 16);
    ensure(free.entries.len() == 17 && comm.entries.len() == 17, || {
        "truncated".into()
    })?;
    for (&(n, d), &(_, e)) in free.entries.iter().zip(&comm.entries) {
        ensure(d == (1u128 << (n + 1)) - 1, || format!("free n={n}: {d}"))?;
        ensure(e == ((n + 1) * (n + 2) / 2) as u128, || {
            format!("commutative n={n}: {e}")
        })?;
    }
    let (tuples, words) = (growth::s_by_tuples(10), growth::s_by_words(10));
    ensure(tuples.dims() == words.dims(), || {
        format!("{:?} vs {:?}", tuples.dims(), words.dims())
    })?;
    ensure(tuples.dims()[..3] == [1, 3, 7], || "small values".into())?;
    Ok(format!(
        "closed forms to n=16; S agrees to n=10 (dim V^10 = {})",
        tuples.dims()[10]
    ))
}

fn pi_chain() -> Result<String, String> {
    let a = pi_matrix::default_matrix();
    let chain = pi_matrix::peel_chain(&a, 25).map_err(|e| e.to_string())?;
    ensure(
        chain.len() == 25 && chain.iter().all(|s| s.passed()),
        || "failed step".into(),
    )?;
    let last = &chain[24].matrix;
    let u25 = (0..25).fold(Mat2::identity(), |acc, _| acc.mul(&Mat2::u()));
    ensure(u25.mul(last) == a, || "A != U^25 A_25".into())?;
    ensure(!last.det().is_zero(), || "singular".into())?;
    Ok(format!("25 steps, A_25 = {last}"))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("normal form round trip", round_trip),
        ("ACCP failure", accp),
        ("length set of a^2", length_set),
        ("atom structure", atoms),
        ("length function negative control", negative_control),
        ("skew length functions", skew),
        ("filtration additivity", filtration),
        ("growth baselines", growth_baselines),
        ("PI peel chain", pi_chain),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
