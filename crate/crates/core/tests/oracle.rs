use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsafe_core::oracle::count_moore;
use rsafe_core::random::random_formula;
use rsafe_core::*;

/// BFS renumbering of the part reachable from the initial state.
fn canonical(outputs: &[u32], next: &[usize], dirs: usize) -> (Vec<u32>, Vec<usize>) {
    let n = outputs.len();
    let mut id = vec![usize::MAX; n];
    let mut order = vec![0];
    id[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(s) = queue.pop_front() {
        for x in 0..dirs {
            let t = next[s * dirs + x];
            if id[t] == usize::MAX {
                id[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let outs = order.iter().map(|&s| outputs[s]).collect();
    let nxt = order
        .iter()
        .flat_map(|&s| (0..dirs).map(move |x| (s, x)))
        .map(|(s, x)| id[next[s * dirs + x]])
        .collect();
    (outs, nxt)
}

fn naive_count(labels: usize, dirs: usize, max: usize) -> usize {
    let mut seen = HashSet::new();
    for n in 1..=max {
        let cells = n * dirs;
        for o in 0..labels.pow(n as u32) {
            let outputs: Vec<u32> = (0..n)
                .map(|i| ((o / labels.pow(i as u32)) % labels) as u32)
                .collect();
            for t in 0..n.pow(cells as u32) {
                let next: Vec<usize> = (0..cells).map(|i| (t / n.pow(i as u32)) % n).collect();
                seen.insert(canonical(&outputs, &next, dirs));
            }
        }
    }
    seen.len()
}

#[test]
fn enumeration_counts() {
    let only_out = Signature::new::<&str>(&[], &["b"]).unwrap();
    assert_eq!(enumerate_moore(&only_out, 1).unwrap().count(), 2);
    let small = Signature::new(&["c"], &["b"]).unwrap();
    assert_eq!(enumerate_moore(&small, 1).unwrap().count(), 2);
    let two = enumerate_moore(&small, 2).unwrap().count();
    assert_eq!(two, naive_count(2, 2, 2));
    assert_eq!(two as u128, count_moore(&small, 2));
    let wide = Signature::new(&["c"], &["b", "f"]).unwrap();
    assert_eq!(
        enumerate_moore(&wide, 2).unwrap().count(),
        naive_count(4, 2, 2)
    );
}

#[test]
fn enumeration_is_duplicate_free() {
    let sig = Signature::new(&["c"], &["b"]).unwrap();
    let all: Vec<MooreMachine> = enumerate_moore(&sig, 3).unwrap().collect();
    let unique: HashSet<&MooreMachine> = all.iter().collect();
    assert_eq!(unique.len(), all.len());
}

#[test]
fn enumeration_guard() {
    assert!(enumerate_moore(&Signature::coffee(), 5).is_err());
}

#[test]
fn lasso_evaluation_examples() {
    let sig = Signature::coffee();
    let idle = Lasso::new(vec![], vec![Letter::new(0, 0)]);
    assert!(eval_ltl_lasso(&parse_ltl("G !b", &sig).unwrap(), &idle, &sig).unwrap());
    let b = sig.parse_output("{b}").unwrap();
    let with_b = Lasso::new(
        vec![Letter::new(0, 0), Letter::new(b, 0)],
        vec![Letter::new(0, 1)],
    );
    assert!(eval_ltl_lasso(&parse_ltl("F b", &sig).unwrap(), &with_b, &sig).unwrap());
    let c = sig.parse_input("{c}").unwrap();
    let pressed = Lasso::new(vec![Letter::new(0, c)], vec![Letter::new(0, 0)]);
    let both = parse_ltl("G(c -> X(f | F b)) & G(e -> X G !b)", &sig).unwrap();
    assert!(!eval_ltl_lasso(&both, &pressed, &sig).unwrap());
}

#[test]
fn evaluation_matches_buchi_membership() {
    let sig = Signature::new(&["a"], &["b"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let f = random_formula(&mut rng, &sig, 4);
        let nba = translate(&f, &sig).unwrap();
        let letter = |rng: &mut ChaCha8Rng| sig.letter(rng.gen_range(0..sig.num_letters()));
        let stem = (0..rng.gen_range(0..4)).map(|_| letter(&mut rng)).collect();
        let cycle = (0..rng.gen_range(1..4)).map(|_| letter(&mut rng)).collect();
        let l = Lasso::new(stem, cycle);
        assert_eq!(
            eval_ltl_lasso(&f, &l, &sig).unwrap(),
            nba.accepts_lasso(&l),
            "{f}"
        );
    }
}

#[test]
fn differential_acceptance_on_golden_formulas() {
    let sig = Signature::coffee();
    let golden = [
        "G(c -> X(f | F b))",
        "G(e -> X G !b)",
        "G(c -> X(f | F b)) & G(e -> X G !b)",
        "G !b",
        "F b",
    ];
    let machines: Vec<MooreMachine> = enumerate_moore(&sig, 2).unwrap().collect();
    for text in golden {
        let f = parse_ltl(text, &sig).unwrap();
        let dpw = determinize(&translate(&f, &sig).unwrap(), DEFAULT_STATE_BUDGET).unwrap();
        let checker = MooreChecker::for_word(&dpw).unwrap();
        for m in &machines {
            assert_eq!(
                checker.accepts(m).unwrap(),
                moore_satisfies_ltl(&f, &dpw, m).unwrap(),
                "{text} on\n{}",
                m.to_text()
            );
        }
    }
}
