use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsafe_core::game::{emptiness_game, verify_solution};
use rsafe_core::random::{random_game, random_tree_automaton};
use rsafe_core::*;

#[test]
fn three_vertex_game() {
    // v0 (Output, 1) -> v1 | v2; v1 (Input, 2) -> v1; v2 (Input, 3) -> v2
    let mut g = ParityGame::new();
    let v0 = g.add_vertex(Player::Output, 1);
    let v1 = g.add_vertex(Player::Input, 2);
    let v2 = g.add_vertex(Player::Input, 3);
    g.add_edge(v0, v1);
    g.add_edge(v0, v2);
    g.add_edge(v1, v1);
    g.add_edge(v2, v2);
    let sol = solve(&g);
    assert_eq!(
        sol.winner,
        vec![Player::Output, Player::Output, Player::Input]
    );
    assert_eq!(sol.strategy[v0], v1);
    assert!(verify_solution(&g, &sol));
}

#[test]
fn dead_ends_lose_for_the_stuck_player() {
    let mut g = ParityGame::new();
    let a = g.add_vertex(Player::Output, 2);
    let b = g.add_vertex(Player::Input, 1);
    g.add_edge(b, a);
    assert!(!g.is_total());
    g.totalize();
    assert!(g.is_total());
    let sol = solve(&g);
    assert_eq!(sol.winner[a], Player::Input);
    assert_eq!(sol.winner[b], Player::Input);
}

fn dpw_of(text: &str, sig: &Signature) -> ParityWordAutomaton {
    let f = parse_ltl(text, sig).unwrap();
    determinize(&translate(&f, sig).unwrap(), DEFAULT_STATE_BUDGET).unwrap()
}

#[test]
fn coffee_pruning_facts() {
    let sig = Signature::coffee();
    let t = spread(&dpw_of("G(c -> X(f | F b)) & G(e -> X G !b)", &sig)).unwrap();
    let p = prune(&t);
    assert!(!p.empty_states.is_empty());
    assert!(!p.is_empty_language());
    assert_eq!(has_rejecting_cycle(&p.automaton).unwrap(), None);
    assert!(nonempty_states(&p.automaton).iter().all(|&l| l));
}

#[test]
fn eventually_b_has_a_rejecting_cycle() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let p = prune(&spread(&dpw_of("F b", &sig)).unwrap());
    let w = has_rejecting_cycle(&p.automaton).unwrap().expect("cycle");
    assert!(!w.cycle.is_empty());
    let lasso = w.to_lasso();
    assert!(lasso.cycle.iter().all(|l| l.output == 0));
}

#[test]
fn rejecting_cycle_needs_a_pruned_automaton() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let mut t = ParityTreeAutomaton::new(sig, vec![2, 1], 0);
    t.add_transition(0, 0, vec![0, 1]);
    t.add_transition(1, 0, vec![1, 1]);
    assert!(matches!(has_rejecting_cycle(&t), Err(Error::NotPruned(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn solutions_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=30);
        let g = random_game(&mut rng, n, 5, 3);
        let sol = solve(&g);
        prop_assert!(verify_solution(&g, &sol));
    }

    /// A state is nonempty iff some small system is accepted from it.
    #[test]
    fn nonemptiness_matches_small_systems(seed in any::<u64>()) {
        let sig = Signature::new(&["c"], &["b"]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let states = rng.gen_range(1..=3);
        let t = random_tree_automaton(&mut rng, &sig, states, 3, 0.7);
        let live = nonempty_states(&t);
        let machines: Vec<MooreMachine> = enumerate_moore(&sig, 3).unwrap().collect();
        for (q, &alive) in live.iter().enumerate() {
            let from_q = t.with_initial(q);
            let checker = MooreChecker::for_tree(&from_q).unwrap();
            let any = machines.iter().any(|m| checker.accepts(m).unwrap());
            prop_assert_eq!(alive, any, "state {}", q);
        }
        let g = emptiness_game(&t);
        prop_assert!(verify_solution(&g, &solve(&g)));
    }
}
