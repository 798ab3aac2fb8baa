use compgray::binary::{brgc, double_rev_ref, ruskey_path};
use compgray::cli::{parse_code, write_code, Format};
use compgray::combinations::{choose, complementary_subsets, eades_mckay};
use compgray::permutations::multiset_cycle;
use compgray::qary::{quasi_complementary_hamming, quasi_complementary_lee};
use compgray::word::{hamming, lee};
use compgray::{verify_code, Code, CodeSpec, Metric, Pairing, Transform, Universe, Word};
use proptest::prelude::*;

fn digits(q: u32, n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..q, n)
}

fn word_pair() -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (2u32..9, 1usize..7).prop_flat_map(|(q, n)| (Just(q), digits(q, n), digits(q, n), digits(q, n)))
}

/// Admissible `(q, n)` for the Lee family with at most 4096 words.
fn lee_params() -> impl Strategy<Value = (u32, usize)> {
    (2u32..9, 1usize..6).prop_filter("admissible and small", |&(q, n)| {
        (q as u64).pow(n as u32) <= 4096 && !(n % 2 == 1 && n >= 3 && q % 2 == 0)
    })
}

proptest! {
    #[test]
    fn metrics_are_metrics((q, a, b, c) in word_pair()) {
        prop_assert_eq!(lee(q, &a, &b), lee(q, &b, &a));
        prop_assert!(lee(q, &a, &c) <= lee(q, &a, &b) + lee(q, &b, &c));
        prop_assert!(hamming(&a, &c) <= hamming(&a, &b) + hamming(&b, &c));
        prop_assert!(lee(q, &a, &b) >= hamming(&a, &b) as u64);
        prop_assert!(lee(q, &a, &b) <= (a.len() as u64) * u64::from(q / 2));
        prop_assert_eq!(lee(q, &a, &b) == 0, a == b);
    }

    #[test]
    fn translation_preserves_distance((q, a, b, c) in word_pair()) {
        let wa = Word::new(q, a).unwrap();
        let wb = Word::new(q, b).unwrap();
        let wc = Word::new(q, c).unwrap();
        let (ta, tb) = (wa.add(&wc).unwrap(), wb.add(&wc).unwrap());
        prop_assert_eq!(ta.lee_distance(&tb).unwrap(), wa.lee_distance(&wb).unwrap());
        prop_assert_eq!(ta.sub(&wc).unwrap(), wa);
    }

    #[test]
    fn order_transforms_are_involutions(n in 1usize..8) {
        let g = brgc(n).unwrap();
        for t in [Transform::ComplementEach, Transform::ReverseOrder, Transform::ReverseEachWord] {
            prop_assert_eq!(g.apply(&t).unwrap().apply(&t).unwrap(), g.clone());
        }
    }

    #[test]
    fn doubling_keeps_gray_and_completeness(n in 1usize..10, cyclic in any::<bool>()) {
        let g = if cyclic { brgc(n).unwrap() } else { ruskey_path(n).unwrap().into_code() };
        let h = double_rev_ref(&g).unwrap();
        prop_assert_eq!(h.len(), 2 * g.len());
        prop_assert_eq!(h.is_cyclic(), cyclic);
        let mut spec = CodeSpec::new(Metric::Hamming).complete();
        if cyclic {
            spec = spec.cyclic();
        }
        prop_assert!(verify_code(&h, &spec).unwrap().pass());
    }

    #[test]
    fn lee_codes_are_quasi_complementary((q, n) in lee_params()) {
        let c = quasi_complementary_lee(q, n).unwrap();
        let block = (q as usize).pow(n as u32 - 1);
        let len = c.len();
        for i in 0..len {
            let next = Pairing::AddDiagonal(1).apply(q, c.word(i));
            prop_assert_eq!(c.word((i + block) % len), next.as_slice());
            prop_assert_eq!(lee(q, c.word(i), c.word((i + 1) % len)), 1);
        }
    }

    #[test]
    fn hamming_codes_are_quasi_complementary(q in 3u32..7, n in 1usize..5) {
        prop_assume!((q as u64).pow(n as u32) <= 4096);
        let c = quasi_complementary_hamming(q, n).unwrap();
        let spec = CodeSpec::new(Metric::Hamming)
            .cyclic()
            .complete()
            .pairing(Pairing::AddDiagonal(1), [(q as usize).pow(n as u32 - 1)]);
        prop_assert!(verify_code(&c, &spec).unwrap().pass());
    }

    #[test]
    fn subset_codes_close_under_complement(n in 1usize..7) {
        let c = complementary_subsets(n).unwrap();
        let half = c.len() / 2;
        prop_assert_eq!(c.len() as u64, choose(2 * n, n));
        for i in 0..c.len() {
            let comp: Vec<u32> = c.word(i).iter().map(|b| 1 - b).collect();
            prop_assert_eq!(c.word((i + half) % c.len()), comp.as_slice());
        }
    }

    #[test]
    fn eades_mckay_is_strong_minimal_change(m in 1usize..13, k in 0usize..13) {
        prop_assume!(k <= m);
        let c = eades_mckay(k, m).unwrap();
        let spec = CodeSpec::new(Metric::StrongMinimalChange).universe(Universe::Weight(k));
        prop_assert!(verify_code(&c, &spec).unwrap().pass());
    }

    #[test]
    fn multiset_cycles_have_every_arrangement(half in 1usize..8) {
        let n = 2 * half + 1;
        let c = multiset_cycle(n).unwrap();
        prop_assert_eq!(c.len(), n * (n - 1));
        let mut symbols = vec![3; n];
        symbols[0] = 1;
        symbols[1] = 2;
        let spec = CodeSpec::new(Metric::AdjacentTransposition).cyclic().universe(Universe::Multiset(symbols));
        prop_assert!(verify_code(&c, &spec).unwrap().pass());
    }

    #[test]
    fn one_substituted_word_is_caught((q, n) in lee_params(), pick in any::<prop::sample::Index>(), with in any::<prop::sample::Index>()) {
        let c = quasi_complementary_lee(q, n).unwrap();
        prop_assume!(c.len() >= 2);
        let (i, j) = (pick.index(c.len()), with.index(c.len()));
        prop_assume!(i != j);
        let words: Vec<Vec<u32>> = (0..c.len()).map(|k| c.word(if k == i { j } else { k }).to_vec()).collect();
        let broken = Code::from_words(q, true, words).unwrap();
        let r = verify_code(&broken, &CodeSpec::new(Metric::Lee).cyclic().complete()).unwrap();
        prop_assert!(!r.pass());
    }

    #[test]
    fn text_round_trip(q in 2u32..16, n in 1usize..6, rows in 1usize..20, seed in any::<u64>()) {
        let mut state = seed;
        let words: Vec<Vec<u32>> = (0..rows)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((state >> 33) % u64::from(q)) as u32
                    })
                    .collect()
            })
            .collect();
        let c = Code::from_words(q, false, words).unwrap();
        let format = if q <= 10 { Format::Digits } else { Format::Spaced };
        let mut text = Vec::new();
        write_code(&c, format, &mut text).unwrap();
        let back = parse_code(std::str::from_utf8(&text).unwrap(), Some(q), Some(n), false).unwrap();
        prop_assert_eq!(back.code, c);
    }
}
