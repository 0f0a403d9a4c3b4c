//! Property suites over the core invariants.

use causaltrust_core::classify::{self, combine_terms, confidence, Hyperparameters};
use causaltrust_core::density::{
    self, beta_pdf_grid, kl, normalize_entropy, squash_kl, DensityGrid,
};
use causaltrust_core::extract::{format_structured_line, parse_structured_line};
use causaltrust_core::graph::fuse;
use causaltrust_core::synth::{self, Quota, SynthScenario};
use causaltrust_core::{AdverbLexicon, CausalAssertion, WeightedCausalGraph};
use proptest::prelude::*;
use std::sync::OnceLock;

const M: usize = 1000;

fn lexicon() -> &'static AdverbLexicon {
    static LEX: OnceLock<AdverbLexicon> = OnceLock::new();
    LEX.get_or_init(|| AdverbLexicon::with_defaults(M).unwrap())
}

fn adverb() -> impl Strategy<Value = &'static str> {
    let names: Vec<&'static str> = lexicon().entries().iter().map(|e| e.name()).collect();
    proptest::sample::select(names)
}

fn shape() -> impl Strategy<Value = f64> {
    0.5f64..30.0
}

fn beta_grid() -> impl Strategy<Value = DensityGrid> {
    (shape(), shape()).prop_map(|(a, b)| beta_pdf_grid(a, b, M).unwrap())
}

fn concept() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9 '-]{0,20}[A-Za-z0-9]"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kl_self_is_zero_and_gibbs_holds(p in beta_grid(), q in beta_grid()) {
        prop_assert!(kl(&p, &p).unwrap().abs() < 1e-9);
        prop_assert!(kl(&p, &q).unwrap() >= -1e-9);
    }

    #[test]
    fn normalize_is_idempotent(heights in prop::collection::vec(0.0f64..10.0, 2..64)) {
        prop_assume!(heights.iter().any(|v| *v > 0.0));
        let g = DensityGrid::from_heights(heights).unwrap();
        let once = g.normalize().unwrap();
        prop_assert!(once.is_normalized());
        prop_assert!(once.normalize().unwrap().sup_distance(&once).unwrap() < 1e-12);
        let smoothed = once.smooth(1e-9).unwrap().normalize().unwrap();
        prop_assert!(smoothed.is_normalized());
    }

    #[test]
    fn squash_is_monotone(a in 0.0f64..50.0, b in 0.0f64..50.0) {
        prop_assume!((a - b).abs() > 1e-12);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(squash_kl(lo).unwrap() <= squash_kl(hi).unwrap());
        // 1 - exp(-d) rounds to 1.0 in f64 beyond d ≈ 37.
        if hi < 30.0 {
            prop_assert!(squash_kl(hi).unwrap() < 1.0);
        }
    }

    #[test]
    fn normalized_entropy_is_clamped(h in -100.0f64..100.0) {
        let (lo, hi) = lexicon().entropy_range();
        let n = normalize_entropy(h, lo, hi).unwrap();
        prop_assert!((0.0..=1.0).contains(&n));
    }

    #[test]
    fn fuse_commutes(a in adverb(), b in adverb()) {
        let lex = lexicon();
        let (pa, pb) = (lex.prior(a).unwrap(), lex.prior(b).unwrap());
        let ab = fuse(pa, pb).unwrap();
        let ba = fuse(pb, pa).unwrap();
        prop_assert!(ab.sup_distance(&ba).unwrap() < 1e-9);
    }

    #[test]
    fn fuse_associates(a in adverb(), b in adverb(), c in adverb()) {
        let lex = lexicon();
        let (pa, pb, pc) = (lex.prior(a).unwrap(), lex.prior(b).unwrap(), lex.prior(c).unwrap());
        let left = fuse(&fuse(pa, pb).unwrap(), pc).unwrap();
        let right = fuse(pa, &fuse(pb, pc).unwrap()).unwrap();
        prop_assert!(left.sup_distance(&right).unwrap() < 1e-9);
    }

    #[test]
    fn fuse_associates_on_beta_grids(p in beta_grid(), q in beta_grid(), r in beta_grid()) {
        let left = fuse(&fuse(&p, &q).unwrap(), &r).unwrap();
        let right = fuse(&p, &fuse(&q, &r).unwrap()).unwrap();
        prop_assert!(left.sup_distance(&right).unwrap() < 1e-9);
    }

    #[test]
    fn replay_reproduces_posterior(adverbs in prop::collection::vec(adverb(), 1..25)) {
        let lex = lexicon();
        let mut g = WeightedCausalGraph::new(M);
        for adv in &adverbs {
            g.add_assertion(&CausalAssertion::new("a", adv, "b").unwrap(), lex).unwrap();
        }
        let edge = g.get_edge("a", "b").unwrap();
        prop_assert_eq!(edge.observation_count(), adverbs.len());
        prop_assert_eq!(edge.prior(), lex.prior(adverbs[0]).unwrap());
        let replayed = WeightedCausalGraph::replay(edge, lex).unwrap();
        prop_assert!(replayed.sup_distance(edge.posterior()).unwrap() < 1e-9);
    }

    #[test]
    fn p_f_monotone_in_divergence(k1 in 0.0f64..1.0, k2 in 0.0f64..1.0, h in 0.0f64..1.0,
                                  w in 0.0f64..=1.0, sigma in 0.1f64..10.0) {
        let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
        let (a, b) = (combine_terms(lo, h, w, sigma), combine_terms(hi, h, w, sigma));
        prop_assert!(a <= b);
        prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
    }

    #[test]
    fn p_f_monotone_in_entropy(k in 0.0f64..1.0, h1 in 0.0f64..1.0, h2 in 0.0f64..1.0,
                               w in 0.001f64..=1.0, sigma in 0.1f64..10.0) {
        let (lo, hi) = if h1 < h2 { (h1, h2) } else { (h2, h1) };
        prop_assert!(combine_terms(k, lo, w, sigma) <= combine_terms(k, hi, w, sigma));
    }

    #[test]
    fn p_f_in_unit_interval_on_grids(s in beta_grid(), l in beta_grid(),
                                     w in 0.0f64..=1.0, sigma in 0.1f64..10.0) {
        let hp = Hyperparameters { w, sigma, ..Hyperparameters::default() };
        let p = classify::fake_probability(&s, &l, &hp, lexicon()).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn confidence_in_unit_interval(score in 0.0f64..=1.0, threshold in 0.0f64..=1.0) {
        let c = confidence(score, threshold);
        prop_assert!((0.0..=1.0).contains(&c), "{}", c);
        prop_assert_eq!(c == 0.0, score == threshold);
    }

    #[test]
    fn trust_degree_is_permutation_invariant(mut ps in prop::collection::vec(0.0f64..=1.0, 1..20)) {
        let alpha = classify::trust_degree(&ps).unwrap();
        ps.reverse();
        let reversed = classify::trust_degree(&ps).unwrap();
        prop_assert!((alpha - reversed).abs() < 1e-12);
        let mean = ps.iter().sum::<f64>() / ps.len() as f64;
        prop_assert!((alpha - mean).abs() < 1e-12);
    }

    #[test]
    fn structured_line_round_trips(cause in concept(), adv in adverb(), effect in concept()) {
        let Ok(a) = CausalAssertion::new(&cause, adv, &effect) else {
            return Ok(());
        };
        let back = parse_structured_line(&format_structured_line(&a), lexicon()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn extractor_stays_in_vocabulary(cause in "[a-z]{1,8}( [a-z]{1,8}){0,2}", adv in adverb(),
                                     effect in "[a-z]{1,8}( [a-z]{1,8}){0,2}") {
        let sentence = format!("{cause} {adv} causes {effect}");
        for a in causaltrust_core::extract::extract_from_sentence(&sentence, lexicon(), "always") {
            prop_assert!(lexicon().lookup(a.adverb()).is_some());
        }
    }
}

#[test]
fn refusing_own_first_adverb_never_raises_entropy() {
    let lex = lexicon();
    for entry in lex.entries() {
        let mut g = WeightedCausalGraph::new(M);
        let claim = CausalAssertion::new("a", entry.name(), "b").unwrap();
        g.add_assertion(&claim, lex).unwrap();
        let mut entropy = g.get_edge("a", "b").unwrap().posterior().entropy();
        for _ in 0..6 {
            g.add_assertion(&claim, lex).unwrap();
            let next = g.get_edge("a", "b").unwrap().posterior().entropy();
            assert!(next <= entropy, "{}", entry.name());
            entropy = next;
        }
    }
}

#[test]
fn sharp_fusion_clamps_to_zero() {
    let lex = lexicon();
    let always = lex.prior("always").unwrap();
    let fused = fuse(always, always).unwrap();
    let (lo, hi) = lex.entropy_range();
    assert!(fused.entropy() < lo);
    assert_eq!(normalize_entropy(fused.entropy(), lo, hi).unwrap(), 0.0);
}

#[test]
fn grid_refinement_converges_for_every_prior() {
    let coarse = AdverbLexicon::with_defaults(M).unwrap();
    let fine = AdverbLexicon::with_defaults(2 * M).unwrap();
    let uniform_c = DensityGrid::uniform(M).unwrap();
    let uniform_f = DensityGrid::uniform(2 * M).unwrap();
    for (c, f) in coarse.entries().iter().zip(fine.entries()) {
        assert!((c.entropy() - f.entropy()).abs() < 1e-3, "{}", c.name());
        let kc = density::kl(c.prior(), &uniform_c).unwrap();
        let kf = density::kl(f.prior(), &uniform_f).unwrap();
        assert!((kc - kf).abs() < 1e-3, "{}", c.name());
    }
}

#[test]
fn generator_retains_a_third_of_draws() {
    let s = SynthScenario::new(Quota::Draws(10_000), &["usually", "normally"], 2024);
    let frac = synth::retained_fraction(&s, 10_000);
    assert!((frac - 1.0 / 3.0).abs() < 0.03, "{frac}");
    let corpus = synth::generate(&s, lexicon(), "train").unwrap();
    assert_eq!(corpus.len() as f64, (frac * 10_000.0).round());
}

#[test]
fn generator_adverbs_are_uniform() {
    let subset = ["never", "seldom", "sometimes", "often", "always"];
    let s = SynthScenario::new(Quota::Retained(10_000), &subset, 99);
    let corpus = synth::generate(&s, lexicon(), "x").unwrap();
    let expected = corpus.len() as f64 / subset.len() as f64;
    let chi2: f64 = subset
        .iter()
        .map(|adv| {
            let n = corpus
                .assertions()
                .iter()
                .filter(|a| a.adverb() == *adv)
                .count() as f64;
            (n - expected).powi(2) / expected
        })
        .sum();
    // 99.9th percentile of chi-square with 4 degrees of freedom.
    assert!(chi2 < 18.47, "chi2 = {chi2}");
}
