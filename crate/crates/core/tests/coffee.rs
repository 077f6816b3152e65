//! The coffee-machine specification `psi1 & psi2` end to end.

use rsafe_core::*;

const COFFEE: &str = "G(c -> X(f | F b)) & G(e -> X G !b)";

fn sig() -> Signature {
    Signature::coffee()
}

fn safety_automaton(text: &str) -> ParityWordAutomaton {
    let sig = sig();
    let f = parse_ltl(text, &sig).unwrap();
    let dpw = determinize(&translate(&f, &sig).unwrap(), DEFAULT_STATE_BUDGET).unwrap();
    assert!(
        dpw.classify_linear_safety().unwrap(),
        "{text} is not safety"
    );
    dpw.safety_closure()
}

fn coffee_monitor() -> ParityWordAutomaton {
    let sig = sig();
    let f = parse_ltl(COFFEE, &sig).unwrap();
    let verdict = check_reactive_safety(Property::Ltl(&f), &sig, &CheckOptions::default()).unwrap();
    assert_eq!(verdict.class(), SafetyClass::ReactiveSafeNotLinear);
    verdict.monitor().unwrap().clone()
}

/// Brews right after a request until the first emergency shutdown, and
/// answers every later request with a failure message.
fn brewing_machine() -> MooreMachine {
    let text = "inputs: c e\noutputs: b f\ninitial: 0\n\
                state 0 output {} next [{}:0, {c}:1, {e}:2, {c,e}:3]\n\
                state 1 output {b} next [{}:0, {c}:1, {e}:2, {c,e}:3]\n\
                state 2 output {} next [{}:2, {c}:3, {e}:2, {c,e}:3]\n\
                state 3 output {f} next [{}:2, {c}:3, {e}:2, {c,e}:3]\n";
    MooreMachine::parse(text).unwrap()
}

#[test]
fn immediate_brewing_separates_the_two_safety_readings() {
    let sig = sig();
    let m = brewing_machine();
    let f = parse_ltl(COFFEE, &sig).unwrap();
    let dpw = determinize(&translate(&f, &sig).unwrap(), DEFAULT_STATE_BUDGET).unwrap();
    assert!(dpw.accepts_moore(&m).unwrap());
    assert!(coffee_monitor().accepts_moore(&m).unwrap());
    let failure_only = safety_automaton("G(c -> X f) & G(e -> X G !b)");
    assert!(!failure_only.accepts_moore(&m).unwrap());
}

#[test]
fn monitor_is_failure_or_brewing_right_away() {
    let expected = safety_automaton("G(c -> X(f | b)) & G(e -> X G !b)");
    assert!(monitor_equivalent(&coffee_monitor(), &expected).unwrap());
}
