use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsafe_core::random::random_formula;
use rsafe_core::*;

fn atom(p: &str) -> Formula {
    Formula::atom(p)
}

#[test]
fn parses_the_coffee_formulas() {
    let sig = Signature::coffee();
    assert_eq!(
        parse_ltl("G(c -> X(f | F b))", &sig).unwrap(),
        Formula::globally(Formula::implies(
            atom("c"),
            Formula::next(Formula::or(atom("f"), Formula::finally(atom("b"))))
        ))
    );
    assert_eq!(
        parse_ltl("G(e -> X G !b)", &sig).unwrap(),
        Formula::globally(Formula::implies(
            atom("e"),
            Formula::next(Formula::globally(Formula::not(atom("b"))))
        ))
    );
    let outputs_only = Signature::new::<&str>(&[], &["b"]).unwrap();
    assert_eq!(parse_ltl("b", &outputs_only).unwrap(), atom("b"));
}

#[test]
fn precedence_and_associativity() {
    let sig = Signature::new(&["a"], &["b", "c"]).unwrap();
    let p = |t| parse_ltl(t, &sig).unwrap();
    assert_eq!(p("a U b U c"), p("a U (b U c)"));
    assert_eq!(p("a -> b -> c"), p("a -> (b -> c)"));
    assert_eq!(p("a | b & c"), p("a | (b & c)"));
    assert_eq!(p("a & b U c"), p("(a & b) U c"));
    assert_eq!(p("!a U b"), p("(!a) U b"));
    assert_eq!(p("X a & b"), p("(X a) & b"));
    assert_eq!(p("a U b -> c"), p("(a U b) -> c"));
    assert_eq!(
        p("true R false"),
        Formula::release(Formula::True, Formula::False)
    );
}

#[test]
fn errors_carry_positions_and_names() {
    let sig = Signature::coffee();
    assert!(matches!(
        parse_ltl("G(c -> )", &sig),
        Err(Error::Syntax { pos: 7, .. })
    ));
    assert!(matches!(parse_ltl("(b", &sig), Err(Error::Syntax { .. })));
    assert!(matches!(parse_ltl("b b", &sig), Err(Error::Syntax { .. })));
    assert!(matches!(parse_ltl("", &sig), Err(Error::Syntax { .. })));
    assert_eq!(
        parse_ltl("G zz", &sig),
        Err(Error::UndeclaredProposition("zz".into()))
    );
}

#[test]
fn nnf_examples() {
    let sig = Signature::new(&["a", "c"], &["b", "f"]).unwrap();
    let nnf = |t| parse_ltl(t, &sig).unwrap().to_nnf().to_string();
    assert_eq!(nnf("!G b"), "F !b");
    assert_eq!(nnf("!(a U b)"), "!a R !b");
    assert_eq!(nnf("G(c -> X f)"), "G(!c | X f)");
}

fn small_sig() -> Signature {
    Signature::new(&["a"], &["b", "c"]).unwrap()
}

fn random_lasso(rng: &mut ChaCha8Rng, sig: &Signature, max_len: usize) -> Lasso {
    let cycle_len = rng.gen_range(1..=max_len.max(1));
    let stem_len = rng.gen_range(0..=max_len - cycle_len);
    let letter = |rng: &mut ChaCha8Rng| sig.letter(rng.gen_range(0..sig.num_letters()));
    let stem = (0..stem_len).map(|_| letter(rng)).collect();
    let cycle = (0..cycle_len).map(|_| letter(rng)).collect();
    Lasso::new(stem, cycle)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let sig = small_sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &sig, 6);
        let printed = f.to_string();
        prop_assert_eq!(parse_ltl(&printed, &sig).unwrap(), f, "{}", printed);
    }

    #[test]
    fn nnf_preserves_semantics(seed in any::<u64>()) {
        let sig = small_sig();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &sig, 6);
        let g = f.to_nnf();
        prop_assert!(g.is_nnf());
        prop_assert!(g.size() <= 2 * f.size(), "{} -> {}", f, g);
        for _ in 0..50 {
            let lasso = random_lasso(&mut rng, &sig, 8);
            prop_assert_eq!(
                eval_ltl_lasso(&f, &lasso, &sig).unwrap(),
                eval_ltl_lasso(&g, &lasso, &sig).unwrap(),
                "{} vs {} on {}", f, g, lasso.display(&sig)
            );
        }
    }
}
