//! LTL to nondeterministic Büchi automata by tableau expansion.
//!
//! A tableau node is the set of obligations that must hold from the current
//! position on. Expanding a node unfolds `U`, `R`, `F` and `G` one step and
//! splits disjunctions, producing *covers*: a set of literals the current
//! letter must satisfy plus the obligations passed to the next position.
//! Every cover records which eventualities (`U`/`F` formulas) it postponed; a
//! run is accepting iff each eventuality is not postponed infinitely often.
//! This generalized condition is degeneralized with a counter, giving a
//! state-based Büchi automaton with colors 1 (non-accepting) and 2 (accepting).

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::{Letter, Prop, Signature};
use crate::error::{Error, Result};
use crate::ltl::Formula;
use crate::word::ParityWordAutomaton;

type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(Prop, bool),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Next(NodeId),
    Finally(NodeId),
    Globally(NodeId),
    Until(NodeId, NodeId),
    Release(NodeId, NodeId),
}

#[derive(Default)]
struct Closure {
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
}

impl Closure {
    fn intern(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        self.nodes.push(node.clone());
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn add(&mut self, f: &Formula, sig: &Signature) -> Result<NodeId> {
        use Formula as F;
        let node = match f {
            F::True => Node::True,
            F::False => Node::False,
            F::Atom(p) => Node::Lit(lookup(sig, p)?, true),
            F::Not(inner) => match &**inner {
                F::Atom(p) => Node::Lit(lookup(sig, p)?, false),
                _ => return self.add(&f.to_nnf(), sig),
            },
            F::And(a, b) => Node::And(self.add(a, sig)?, self.add(b, sig)?),
            F::Or(a, b) => Node::Or(self.add(a, sig)?, self.add(b, sig)?),
            F::Implies(..) => return self.add(&f.to_nnf(), sig),
            F::Next(a) => Node::Next(self.add(a, sig)?),
            F::Finally(a) => Node::Finally(self.add(a, sig)?),
            F::Globally(a) => Node::Globally(self.add(a, sig)?),
            F::Until(a, b) => Node::Until(self.add(a, sig)?, self.add(b, sig)?),
            F::Release(a, b) => Node::Release(self.add(a, sig)?, self.add(b, sig)?),
        };
        Ok(self.intern(node))
    }

    fn eventualities(&self) -> Vec<NodeId> {
        (0..self.nodes.len())
            .filter(|&i| matches!(self.nodes[i], Node::Finally(_) | Node::Until(..)))
            .collect()
    }
}

fn lookup(sig: &Signature, p: &str) -> Result<Prop> {
    sig.prop(p)
        .ok_or_else(|| Error::UndeclaredProposition(p.to_owned()))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cover {
    literals: BTreeSet<(Prop, bool)>,
    next: BTreeSet<NodeId>,
    postponed: BTreeSet<NodeId>,
}

impl Cover {
    fn matches(&self, letter: Letter) -> bool {
        self.literals
            .iter()
            .all(|&(p, positive)| letter.holds(p) == positive)
    }
}

/// Partial expansion: formulas still to process plus the cover built so far.
#[derive(Clone)]
struct Branch {
    todo: Vec<NodeId>,
    done: BTreeSet<NodeId>,
    cover: Cover,
}

fn expand(closure: &Closure, obligations: &BTreeSet<NodeId>) -> Vec<Cover> {
    let mut out = BTreeSet::new();
    let mut stack = vec![Branch {
        todo: obligations.iter().rev().copied().collect(),
        done: BTreeSet::new(),
        cover: Cover {
            literals: BTreeSet::new(),
            next: BTreeSet::new(),
            postponed: BTreeSet::new(),
        },
    }];
    'branches: while let Some(mut b) = stack.pop() {
        while let Some(id) = b.todo.pop() {
            if !b.done.insert(id) {
                continue;
            }
            match closure.nodes[id] {
                Node::True => {}
                Node::False => continue 'branches,
                Node::Lit(p, positive) => {
                    if b.cover.literals.contains(&(p, !positive)) {
                        continue 'branches;
                    }
                    b.cover.literals.insert((p, positive));
                }
                Node::And(x, y) => {
                    b.todo.push(y);
                    b.todo.push(x);
                }
                Node::Or(x, y) => {
                    let mut alt = b.clone();
                    alt.todo.push(y);
                    stack.push(alt);
                    b.todo.push(x);
                }
                Node::Next(x) => {
                    b.cover.next.insert(x);
                }
                Node::Finally(x) => {
                    let mut later = b.clone();
                    later.cover.next.insert(id);
                    later.cover.postponed.insert(id);
                    stack.push(later);
                    b.todo.push(x);
                }
                Node::Globally(x) => {
                    b.cover.next.insert(id);
                    b.todo.push(x);
                }
                Node::Until(x, y) => {
                    let mut later = b.clone();
                    later.todo.push(x);
                    later.cover.next.insert(id);
                    later.cover.postponed.insert(id);
                    stack.push(later);
                    b.todo.push(y);
                }
                Node::Release(x, y) => {
                    let mut later = b.clone();
                    later.todo.push(y);
                    later.cover.next.insert(id);
                    stack.push(later);
                    b.todo.push(y);
                    b.todo.push(x);
                }
            }
        }
        out.insert(b.cover);
    }
    out.into_iter().collect()
}

/// Translates a formula into an equivalent nondeterministic Büchi automaton
/// (colors 2 for accepting, 1 for non-accepting states). Only states
/// reachable from the initial one are built.
pub fn translate(f: &Formula, sig: &Signature) -> Result<ParityWordAutomaton> {
    let mut closure = Closure::default();
    let root = closure.add(f, sig)?;
    let eventualities = closure.eventualities();
    let k = eventualities.len();

    let color_of = |counter: usize| if counter == k { 2 } else { 1 };
    let mut obligations = BTreeSet::new();
    if closure.nodes[root] != Node::True {
        obligations.insert(root);
    }
    let init: (BTreeSet<NodeId>, usize) = (obligations, 0);

    let mut ids: HashMap<(BTreeSet<NodeId>, usize), usize> = HashMap::new();
    let mut covers_of: HashMap<BTreeSet<NodeId>, Vec<Cover>> = HashMap::new();
    let mut aut = ParityWordAutomaton::new(sig.clone(), vec![color_of(0)], 0);
    ids.insert(init.clone(), 0);
    let mut queue = VecDeque::from([init]);

    while let Some((obligations, counter)) = queue.pop_front() {
        let from = ids[&(obligations.clone(), counter)];
        let covers = covers_of
            .entry(obligations.clone())
            .or_insert_with(|| expand(&closure, &obligations))
            .clone();
        for cover in covers {
            let mut next_counter = if counter == k { 0 } else { counter };
            while next_counter < k && !cover.postponed.contains(&eventualities[next_counter]) {
                next_counter += 1;
            }
            let key = (cover.next.clone(), next_counter);
            let to = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = aut.add_state(color_of(next_counter));
                    ids.insert(key.clone(), id);
                    queue.push_back(key);
                    id
                }
            };
            for letter in sig.letters().filter(|&l| cover.matches(l)) {
                aut.add_transition(from, letter, to);
            }
        }
    }
    Ok(aut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_ltl;

    fn sig() -> Signature {
        Signature::new(&["c"], &["b"]).unwrap()
    }

    #[test]
    fn never_b_is_one_accepting_state() {
        let s = sig();
        let a = translate(&parse_ltl("G !b", &s).unwrap(), &s).unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.color(0), 2);
        for l in s.letters() {
            let expect: &[usize] = if l.output & 1 == 0 { &[0] } else { &[] };
            assert_eq!(a.successors(0, l), expect);
        }
    }

    #[test]
    fn eventually_b_waits_then_sinks() {
        let s = sig();
        let a = translate(&parse_ltl("F b", &s).unwrap(), &s).unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.colors(), &[1, 2]);
        for l in s.letters() {
            let b = l.output & 1 == 1;
            let expect: &[usize] = if b { &[0, 1] } else { &[0] };
            assert_eq!(a.successors(0, l), expect);
            assert_eq!(a.successors(1, l), &[1]);
        }
        assert!(!a.is_deterministic());
    }

    #[test]
    fn constants() {
        let s = sig();
        let t = translate(&Formula::True, &s).unwrap();
        assert_eq!(t.num_states(), 1);
        assert!(t.is_total());
        let f = translate(&Formula::False, &s).unwrap();
        assert_eq!(f.num_transitions(), 0);
    }
}
