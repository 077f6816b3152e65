//! Random instances for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Prop, Signature};
use crate::game::{ParityGame, Player};
use crate::ltl::Formula;
use crate::tree::ParityTreeAutomaton;
use crate::word::ParityWordAutomaton;

fn prop_name(sig: &Signature, p: Prop) -> &str {
    match p {
        Prop::Input(i) => &sig.inputs()[i],
        Prop::Output(i) => &sig.outputs()[i],
    }
}

/// A random formula of at most the given operator depth over the
/// propositions of `sig`.
pub fn random_formula(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Formula {
    let props: Vec<Prop> = (0..sig.num_input_props())
        .map(Prop::Input)
        .chain((0..sig.num_output_props()).map(Prop::Output))
        .collect();
    let leaf = |rng: &mut dyn rand::RngCore| -> Formula {
        match props.choose(rng) {
            Some(&p) if rng.gen_bool(0.9) => Formula::atom(prop_name(sig, p)),
            _ => {
                if rng.gen_bool(0.5) {
                    Formula::True
                } else {
                    Formula::False
                }
            }
        }
    };
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = |rng: &mut _| random_formula(rng, sig, depth - 1);
    match rng.gen_range(0..9) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::next(sub(rng)),
        5 => Formula::finally(sub(rng)),
        6 => Formula::globally(sub(rng)),
        7 => Formula::until(sub(rng), sub(rng)),
        _ => Formula::release(sub(rng), sub(rng)),
    }
}

/// A random Büchi automaton (colors 1 and 2) where each (state, letter,
/// target) triple is present with probability `density`.
pub fn random_nba(
    rng: &mut impl Rng,
    sig: &Signature,
    states: usize,
    density: f64,
) -> ParityWordAutomaton {
    let colors = (0..states).map(|_| rng.gen_range(1..=2)).collect();
    let mut a = ParityWordAutomaton::new(sig.clone(), colors, 0);
    for q in 0..states {
        for l in sig.letters() {
            for t in 0..states {
                if rng.gen_bool(density) {
                    a.add_transition(q, l, t);
                }
            }
        }
    }
    a
}

/// A random deterministic automaton with colors in `0..=max_color`; each
/// letter has a successor with probability `density`.
pub fn random_dpw(
    rng: &mut impl Rng,
    sig: &Signature,
    states: usize,
    max_color: u32,
    density: f64,
) -> ParityWordAutomaton {
    let colors = (0..states).map(|_| rng.gen_range(0..=max_color)).collect();
    let mut a = ParityWordAutomaton::new(sig.clone(), colors, 0);
    for q in 0..states {
        for l in sig.letters() {
            if rng.gen_bool(density) {
                a.add_transition(q, l, rng.gen_range(0..states));
            }
        }
    }
    a
}

/// A random deterministic safety automaton (all colors 0, partial
/// transition function).
pub fn random_safety_automaton(
    rng: &mut impl Rng,
    sig: &Signature,
    states: usize,
    density: f64,
) -> ParityWordAutomaton {
    random_dpw(rng, sig, states, 0, density)
}

/// A random deterministic tree automaton; each output label has a
/// transition with probability `density`.
pub fn random_tree_automaton(
    rng: &mut impl Rng,
    sig: &Signature,
    states: usize,
    max_color: u32,
    density: f64,
) -> ParityTreeAutomaton {
    let colors = (0..states).map(|_| rng.gen_range(0..=max_color)).collect();
    let mut a = ParityTreeAutomaton::new(sig.clone(), colors, 0);
    for q in 0..states {
        for y in 0..sig.num_labels() as u32 {
            if rng.gen_bool(density) {
                let targets = (0..sig.num_directions())
                    .map(|_| rng.gen_range(0..states))
                    .collect();
                a.add_transition(q, y, targets);
            }
        }
    }
    a
}

/// A random total game with colors in `0..=max_color` and up to
/// `max_out` successors per vertex.
pub fn random_game(
    rng: &mut impl Rng,
    vertices: usize,
    max_color: u32,
    max_out: usize,
) -> ParityGame {
    let mut g = ParityGame::new();
    for _ in 0..vertices {
        let owner = if rng.gen_bool(0.5) {
            Player::Output
        } else {
            Player::Input
        };
        g.add_vertex(owner, rng.gen_range(0..=max_color));
    }
    for v in 0..vertices {
        for _ in 0..rng.gen_range(1..=max_out.max(1)) {
            g.add_edge(v, rng.gen_range(0..vertices));
        }
    }
    g
}
