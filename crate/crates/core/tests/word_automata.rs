use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsafe_core::random::{random_dpw, random_nba};
use rsafe_core::*;

fn dpw_of(text: &str, sig: &Signature) -> ParityWordAutomaton {
    let f = parse_ltl(text, sig).unwrap();
    determinize(&translate(&f, sig).unwrap(), DEFAULT_STATE_BUDGET).unwrap()
}

fn never_b(sig: &Signature) -> ParityWordAutomaton {
    let mut a = ParityWordAutomaton::new(sig.clone(), vec![2], 0);
    for l in sig.letters().filter(|l| l.output & 1 == 0) {
        a.add_transition(0, l, 0);
    }
    a
}

#[test]
fn completion() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let c = never_b(&sig).complete().unwrap();
    assert_eq!(c.num_states(), 2);
    assert_eq!(c.color(1), 1);
    assert!(c.is_total() && c.is_deterministic());
    assert_eq!(c.complete().unwrap(), c);

    let figure = dpw_of("G(c -> X(f | F b)) & G(e -> X G !b)", &Signature::coffee());
    assert_eq!(figure.complete().unwrap(), figure);

    let mut nd = ParityWordAutomaton::new(sig.clone(), vec![1, 2], 0);
    nd.add_transition(0, Letter::new(0, 0), 0);
    nd.add_transition(0, Letter::new(0, 0), 1);
    assert_eq!(nd.complete(), Err(Error::Nondeterministic));
}

#[test]
fn pruning_examples() {
    let sig = Signature::new::<&str>(&[], &["b"]).unwrap();
    // state 1 is an odd trap
    let mut a = ParityWordAutomaton::new(sig.clone(), vec![2, 1], 0);
    a.add_transition(0, Letter::new(0, 0), 0);
    a.add_transition(0, Letter::new(1, 0), 1);
    a.add_transition(1, Letter::new(0, 0), 1);
    a.add_transition(1, Letter::new(1, 0), 1);
    let p = a.prune_word();
    assert_eq!(p.num_states(), 1);

    let eventually = dpw_of("F b", &sig);
    assert_eq!(eventually.prune_word(), eventually);
}

#[test]
fn linear_safety_examples() {
    let sig = Signature::coffee();
    assert!(dpw_of("G(e -> X G !b)", &sig)
        .classify_linear_safety()
        .unwrap());
    assert!(!dpw_of("G(c -> X(f | F b)) & G(e -> X G !b)", &sig)
        .classify_linear_safety()
        .unwrap());
    assert!(never_b(&sig)
        .complete()
        .unwrap()
        .classify_linear_safety()
        .unwrap());
}

#[test]
fn all_zero_colors_mean_safety() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let mut a = never_b(&sig);
    a.set_color(0, 0);
    assert!(a.is_safety());
    for lasso in all_lassos(&sig, 2, 2) {
        let has_run = lasso.stem.iter().chain(&lasso.cycle).all(|l| l.output == 0);
        assert_eq!(a.accepts_lasso(&lasso), has_run);
    }
}

#[test]
fn hoa_round_trip_and_formats() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let mut a = ParityWordAutomaton::new(sig.clone(), vec![0, 0], 0);
    a.add_transition(0, Letter::new(0, 0), 0);
    a.add_transition(0, Letter::new(0, 1), 1);
    a.add_transition(1, Letter::new(1, 0), 0);
    let text = write_hoa(&a);
    assert!(text.contains("spec-io: 1"));
    assert!(text.contains("AP: 2 \"c\" \"b\""));
    let b = read_hoa(&text).unwrap();
    assert_eq!(b, a);

    let figure = dpw_of("G(c -> X(f | F b)) & G(e -> X G !b)", &Signature::coffee());
    let text = write_hoa(&figure);
    assert!(text.contains("acc-name: parity max even"));
    let back = read_hoa(&text).unwrap();
    assert_eq!(write_hoa(&back), text);
    assert_eq!(back.num_states(), figure.num_states());
}

#[test]
fn buchi_hoa_keeps_the_language() {
    let sig = Signature::new::<&str>(&[], &["b"]).unwrap();
    let text = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"b\"\nspec-io: 0\nacc-name: Buchi\n\
                Acceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 0\n[0] 1\nState: 1 {0}\n[0] 1\n--END--\n";
    let a = read_hoa(text).unwrap();
    assert_eq!(a.colors(), &[1, 2]);
    let gfb = translate(&parse_ltl("F G b", &sig).unwrap(), &sig).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let stem = (0..rng.gen_range(0..4))
            .map(|_| Letter::new(rng.gen_range(0..2), 0))
            .collect();
        let cycle = (0..rng.gen_range(1..4))
            .map(|_| Letter::new(rng.gen_range(0..2), 0))
            .collect();
        let lasso = Lasso::new(stem, cycle);
        assert_eq!(a.accepts_lasso(&lasso), gfb.accepts_lasso(&lasso));
    }
}

#[test]
fn hoa_errors() {
    let sig = Signature::coffee();
    let ok = write_hoa(&ParityWordAutomaton::accept_all(sig.clone()));
    assert!(read_hoa_with_signature(&ok, &sig).is_ok());
    let swapped = Signature::new(&["b", "f"], &["c", "e"]).unwrap();
    assert!(matches!(
        read_hoa_with_signature(&ok, &swapped),
        Err(Error::SignatureMismatch(_))
    ));
    assert!(matches!(
        read_hoa(&ok.replace("HOA: v1", "HOA: v2")),
        Err(Error::Hoa { .. })
    ));
    assert!(matches!(
        read_hoa(&ok.replace("parity max even 1", "parity min odd 1")),
        Err(Error::Hoa { .. })
    ));
    assert!(matches!(
        read_hoa(&ok.replace("--END--\n", "")),
        Err(Error::Hoa { .. })
    ));
}

fn tiny_sig() -> Signature {
    Signature::new(&["c"], &["b"]).unwrap()
}

/// Brute-force reading of linear-time safety: every rejected lasso must
/// have a prefix whose residual language is empty.
fn safety_by_bad_prefixes(a: &ParityWordAutomaton) -> bool {
    let bound = 2 * a.num_states() + 2;
    let sig = a.signature();
    for lasso in all_lassos(sig, (bound / 2).min(3), (bound / 2).min(3)) {
        if a.accepts_lasso_deterministic(&lasso) {
            continue;
        }
        let horizon = lasso.stem.len() + (a.num_states() + 1) * lasso.cycle.len();
        if (0..=horizon).all(|n| a.residual_nonempty(&lasso.prefix(n))) {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pruning_keeps_the_language(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = tiny_sig();
        let states = rng.gen_range(1..=5);
        let a = random_nba(&mut rng, &sig, states, 0.3);
        let p = a.prune_word();
        for lasso in &all_lassos(&sig, 3, 3) {
            prop_assert_eq!(a.accepts_lasso(lasso), p.accepts_lasso(lasso));
        }
    }

    #[test]
    fn classification_matches_bad_prefixes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = tiny_sig();
        let states = rng.gen_range(1..=3);
        let a = random_dpw(&mut rng, &sig, states, 3, 0.9).complete().unwrap();
        prop_assert_eq!(a.classify_linear_safety().unwrap(), safety_by_bad_prefixes(&a));
    }

    #[test]
    fn hoa_round_trip_random(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sig = tiny_sig();
        let states = rng.gen_range(1..=5);
        let a = random_nba(&mut rng, &sig, states, 0.3);
        let text = write_hoa(&a);
        let b = read_hoa(&text).unwrap();
        prop_assert_eq!(write_hoa(&b), text);
    }
}
