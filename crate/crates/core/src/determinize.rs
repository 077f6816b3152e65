//! Büchi to parity determinization with compact Safra trees (Piterman's
//! construction).
//!
//! A macro-state is an ordered tree whose nodes carry a name in `1..=n` and a
//! nonempty set of Büchi states. Children are ordered oldest first, their
//! labels are pairwise disjoint and their union is a strict subset of the
//! parent's label. One transition:
//!
//! 1. apply the transition relation to every label;
//! 2. every node whose label meets the accepting set gets a new youngest child
//!    holding exactly those accepting states;
//! 3. a state is kept only in the oldest branch that holds it;
//! 4. empty nodes are deleted;
//! 5. a node whose label equals the union of its children's labels loses all
//!    descendants and is *flagged*;
//! 6. surviving names are compacted to `1..=m`, preserving their order.
//!
//! With `f` the least flagged name and `e` the least deleted name among the
//! nodes that existed before the step, the step has min-parity priority `2f`
//! if `f < e`, `2e - 1` if `e` exists otherwise, and `2n + 1` if neither. The
//! priority is moved onto the target state and flipped to max-even via
//! `2n + 2 - p`, so all colors lie in `1..=2n+1`.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::word::ParityWordAutomaton;

pub const DEFAULT_STATE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SafraNode {
    name: u32,
    label: FixedBitSet,
    children: Vec<SafraNode>,
}

impl SafraNode {
    fn leaf(name: u32, label: FixedBitSet) -> Self {
        SafraNode {
            name,
            label,
            children: Vec::new(),
        }
    }

    fn names(&self, out: &mut Vec<u32>) {
        out.push(self.name);
        for c in &self.children {
            c.names(out);
        }
    }

    fn count(&self) -> u32 {
        1 + self.children.iter().map(SafraNode::count).sum::<u32>()
    }
}

struct Stepper<'a> {
    nba: &'a ParityWordAutomaton,
    accepting: FixedBitSet,
    n: usize,
}

#[derive(Default)]
struct Events {
    removed: Vec<u32>,
    flagged: Vec<u32>,
}

impl Stepper<'_> {
    fn post(&self, label: &FixedBitSet, letter: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n);
        for q in label.ones() {
            for &t in self.nba.successors_index(q, letter) {
                out.insert(t);
            }
        }
        out
    }

    fn update(&self, node: &mut SafraNode, letter: usize) {
        node.label = self.post(&node.label, letter);
        for c in &mut node.children {
            self.update(c, letter);
        }
    }

    fn spawn(&self, node: &mut SafraNode, next_name: &mut u32) {
        let existing = node.children.len();
        let mut acc = node.label.clone();
        acc.intersect_with(&self.accepting);
        if acc.count_ones(..) > 0 {
            node.children.push(SafraNode::leaf(*next_name, acc));
            *next_name += 1;
        }
        for c in &mut node.children[..existing] {
            self.spawn(c, next_name);
        }
    }

    fn horizontal_merge(node: &mut SafraNode, forbidden: &FixedBitSet) {
        node.label.difference_with(forbidden);
        let mut claimed = forbidden.clone();
        for c in &mut node.children {
            Self::horizontal_merge(c, &claimed);
            claimed.union_with(&c.label);
        }
    }

    fn remove_empty(node: &mut SafraNode, events: &mut Events) {
        node.children.retain(|c| {
            if c.label.count_ones(..) == 0 {
                c.names(&mut events.removed);
                false
            } else {
                true
            }
        });
        for c in &mut node.children {
            Self::remove_empty(c, events);
        }
    }

    fn vertical_merge(node: &mut SafraNode, events: &mut Events) {
        if node.children.is_empty() {
            return;
        }
        let mut union = FixedBitSet::with_capacity(node.label.len());
        for c in &node.children {
            union.union_with(&c.label);
        }
        if union == node.label {
            for c in &node.children {
                c.names(&mut events.removed);
            }
            node.children.clear();
            events.flagged.push(node.name);
        } else {
            for c in &mut node.children {
                Self::vertical_merge(c, events);
            }
        }
    }

    fn rename(node: &mut SafraNode, map: &HashMap<u32, u32>) {
        node.name = map[&node.name];
        for c in &mut node.children {
            Self::rename(c, map);
        }
    }

    /// Successor tree and max-even color of the step.
    fn step(&self, tree: &Option<SafraNode>, letter: usize) -> (Option<SafraNode>, u32) {
        let n = self.n as u32;
        let top = 2 * n + 2;
        let Some(root) = tree else {
            return (None, top - (2 * n + 1));
        };
        let old_count = root.count();
        let mut root = root.clone();
        let mut events = Events::default();

        self.update(&mut root, letter);
        let mut next_name = old_count + 1;
        self.spawn(&mut root, &mut next_name);
        Self::horizontal_merge(&mut root, &FixedBitSet::with_capacity(self.n));

        let tree = if root.label.count_ones(..) == 0 {
            root.names(&mut events.removed);
            None
        } else {
            Self::remove_empty(&mut root, &mut events);
            Self::vertical_merge(&mut root, &mut events);
            Some(root)
        };

        let e = events
            .removed
            .iter()
            .copied()
            .filter(|&name| name <= old_count)
            .min();
        let f = events.flagged.iter().copied().min();
        let priority = match (e, f) {
            (Some(e), Some(f)) if f < e => 2 * f,
            (None, Some(f)) => 2 * f,
            (Some(e), _) => 2 * e - 1,
            (None, None) => 2 * n + 1,
        };

        let tree = tree.map(|mut root| {
            let mut names = Vec::new();
            root.names(&mut names);
            names.sort_unstable();
            let map: HashMap<u32, u32> = names
                .iter()
                .enumerate()
                .map(|(i, &name)| (name, i as u32 + 1))
                .collect();
            Self::rename(&mut root, &map);
            root
        });
        (tree, top - priority)
    }
}

/// Determinizes a Büchi automaton (colors in `{1, 2}`; all-zero safety
/// automata are read as all-accepting) into a total deterministic max-even
/// parity automaton with the same language.
///
/// Deterministic inputs skip the Safra construction: their colors already
/// form a parity condition and they are only completed.
pub fn determinize(nba: &ParityWordAutomaton, budget: usize) -> Result<ParityWordAutomaton> {
    let all_accepting = nba.is_safety();
    if !nba.is_buchi() && !all_accepting {
        return Err(Error::NotBuchi);
    }
    if nba.is_deterministic() {
        return nba.complete();
    }

    let n = nba.num_states();
    let mut accepting = FixedBitSet::with_capacity(n);
    for q in 0..n {
        if all_accepting || nba.color(q) == 2 {
            accepting.insert(q);
        }
    }
    let stepper = Stepper { nba, accepting, n };
    let sig = nba.signature().clone();
    let letters = sig.num_letters();

    let mut init_label = FixedBitSet::with_capacity(n);
    init_label.insert(nba.initial());
    let init = (Some(SafraNode::leaf(1, init_label)), 1u32);

    let mut dpw = ParityWordAutomaton::new(sig, vec![init.1], 0);
    let mut ids = HashMap::from([(init.clone(), 0usize)]);
    let mut queue = VecDeque::from([init]);

    while let Some(state) = queue.pop_front() {
        let from = ids[&state];
        for letter in 0..letters {
            let key = stepper.step(&state.0, letter);
            let to = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    if dpw.num_states() >= budget {
                        return Err(Error::StateBudgetExceeded { limit: budget });
                    }
                    let id = dpw.add_state(key.1);
                    ids.insert(key.clone(), id);
                    queue.push_back(key);
                    id
                }
            };
            dpw.add_transition_index(from, letter, to);
        }
    }
    Ok(dpw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Letter, Signature};

    fn sig() -> Signature {
        Signature::new::<&str>(&[], &["b"]).unwrap()
    }

    fn eventually_b() -> ParityWordAutomaton {
        let s = sig();
        let mut a = ParityWordAutomaton::new(s.clone(), vec![1, 2], 0);
        for l in s.letters() {
            a.add_transition(0, l, 0);
            if l.output == 1 {
                a.add_transition(0, l, 1);
            }
            a.add_transition(1, l, 1);
        }
        a
    }

    #[test]
    fn deterministic_input_is_only_completed() {
        let s = sig();
        let mut a = ParityWordAutomaton::new(s.clone(), vec![2], 0);
        a.add_transition(0, Letter::new(0, 0), 0);
        let d = determinize(&a, DEFAULT_STATE_BUDGET).unwrap();
        assert_eq!(d.num_states(), 2);
        assert_eq!(d.colors(), &[2, 1]);
    }

    #[test]
    fn eventually_b_determinizes() {
        let a = eventually_b();
        let d = determinize(&a, DEFAULT_STATE_BUDGET).unwrap();
        assert!(d.is_deterministic() && d.is_total());
        assert!(d.max_color() <= 2 * a.num_states() as u32 + 1);
        // waiting, the one-shot state entered on the first b, and the
        // flagged loop that follows
        assert_eq!(d.num_states(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let a = eventually_b();
        assert_eq!(
            determinize(&a, 2),
            Err(Error::StateBudgetExceeded { limit: 2 })
        );
    }

    #[test]
    fn rejects_non_buchi_colors() {
        let s = sig();
        let a = ParityWordAutomaton::new(s, vec![3], 0);
        assert_eq!(determinize(&a, 10), Err(Error::NotBuchi));
    }
}
