//! Properties that tie several modules together.

use factorlab::algebra::{divides_right, AlgebraElement, Divisibility};
use factorlab::field::{Fp, Prime, Rationals, Q};
use factorlab::group::{self, embed_letters, embed_nf, SMembership};
use factorlab::lenfn::{self, Triple};
use factorlab::monoid::{self, NormalFormS};
use factorlab::poly::BasePoly;
use factorlab::word::{Presentation, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters(max: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..2, 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn both_oracles_are_homomorphisms(u in letters(14), v in letters(14)) {
        let uv: Vec<u16> = u.iter().chain(&v).copied().collect();
        let (x, y) = (monoid::normalize_letters(&u), monoid::normalize_letters(&v));
        prop_assert_eq!(monoid::normalize_letters(&uv), x.mul(&y));
        prop_assert_eq!(embed_letters(&uv), embed_letters(&u).mul(&embed_letters(&v)));
        prop_assert_eq!(embed_nf(&x.mul(&y)), embed_nf(&x).mul(&embed_nf(&y)));
    }

    #[test]
    fn normalizer_matches_string_rewriting(w in letters(20)) {
        let word = Word::from_letters(monoid::alphabet(), w.clone());
        let fixpoint = monoid::rewrite_system().rewrite_to_fixpoint(&word, 100_000).unwrap();
        prop_assert_eq!(monoid::normalize(&fixpoint), monoid::normalize_letters(&w));
        prop_assert_eq!(fixpoint.letters(), &monoid::normalize_letters(&w).letters()[..]);
    }

    #[test]
    fn quotients_certify_products(u in letters(8), v in letters(8)) {
        let (x, y) = (monoid::normalize_letters(&u), monoid::normalize_letters(&v));
        let xy = x.mul(&y);
        prop_assert_eq!(group::left_quotient_nf(&x, &xy), SMembership::In(y.clone()));
        prop_assert_eq!(group::right_quotient_nf(&xy, &y), SMembership::In(x.clone()));
    }

    #[test]
    fn monomial_division_agrees_with_the_group(u in letters(6), v in letters(6)) {
        let (x, y) = (monoid::normalize_letters(&u), monoid::normalize_letters(&v));
        let f = AlgebraElement::<Q>::basis(&Rationals, x.clone());
        let g = AlgebraElement::<Q>::basis(&Rationals, y.clone());
        let verdict = divides_right(&f, &g, 4).unwrap();
        let oracle = group::left_quotient_nf(&x, &y);
        prop_assert_eq!(matches!(verdict, Divisibility::Yes(_)), oracle.is_in());
        if let Divisibility::Yes(h) = verdict {
            prop_assert_eq!(f.mul(&h).unwrap(), g);
        }
    }
}

#[test]
fn presentation_text_round_trips() {
    let p = monoid::presentation();
    let text = p.to_text();
    let q = Presentation::parse(&text).unwrap();
    assert_eq!(q.to_text(), text);
    for (l, r) in q.relations() {
        assert!(monoid::equal(l, r));
        assert_eq!(group::embed(l), group::embed(r));
    }
}

#[test]
fn right_contract_on_s_fails_for_normal_form_length_on_random_triples_too() {
    // a^2 = (b a^2) b is the canonical witness
    let t = Triple::from_factors(
        "b a a".parse::<NormalFormS>().unwrap(),
        NormalFormS::b_pow(1),
    )
    .unwrap();
    assert_eq!(t.a, NormalFormS::a_pow(2));
    let report = lenfn::check_contract(&lenfn::s_normal_form_length(), &[t]).unwrap();
    assert!(!report.passed());
}

#[test]
fn degree_is_superadditive_over_a_prime_field() {
    let p = Prime::new(13).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sample: Vec<_> = (0..300)
        .map(|_| {
            let b = BasePoly::<Fp>::random_nonzero(&p, &mut rng, 5);
            let c = BasePoly::<Fp>::random_nonzero(&p, &mut rng, 5);
            Triple::from_factors(b, c).unwrap()
        })
        .collect();
    assert!(lenfn::check_contract(&lenfn::poly_degree::<Fp>(), &sample)
        .unwrap()
        .passed());
}

#[test]
fn length_sets_respect_the_bf_bound_for_words_in_the_free_part() {
    // b^k has the single factorization length k
    for k in 0..6 {
        let x = NormalFormS::b_pow(k);
        let report = monoid::length_set(&x, k + 4).unwrap();
        assert_eq!(report.lengths.iter().copied().collect::<Vec<_>>(), vec![k]);
        assert!(lenfn::bf_bound_check(
            &lenfn::s_normal_form_length(),
            &x,
            &report.lengths
        ));
    }
}
