//! Explicit-state parity word automata over `Σ = O × I`.
//!
//! Acceptance is max-parity: a run is accepting iff the largest color visited
//! infinitely often is even. A missing transition kills the run, so safety
//! automata (all colors 0) accept exactly the words that have an infinite run.

use crate::alphabet::{Lasso, Letter, Signature};
use crate::error::{Error, Result};
use crate::graph::{self, Parity};

pub type StateId = usize;

/// Color given to the sink added by [`ParityWordAutomaton::complete`].
pub const SINK_COLOR: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityWordAutomaton {
    sig: Signature,
    initial: StateId,
    colors: Vec<u32>,
    /// Successor lists indexed by `state * |Σ| + letter`, sorted and deduplicated.
    succ: Vec<Vec<StateId>>,
}

impl ParityWordAutomaton {
    /// An automaton with `colors.len()` states and no transitions.
    pub fn new(sig: Signature, colors: Vec<u32>, initial: StateId) -> Self {
        assert!(initial < colors.len(), "initial state out of range");
        let succ = vec![Vec::new(); colors.len() * sig.num_letters()];
        ParityWordAutomaton {
            sig,
            initial,
            colors,
            succ,
        }
    }

    /// The one-state automaton accepting every word (safety, self-loops).
    pub fn accept_all(sig: Signature) -> Self {
        let mut a = Self::new(sig, vec![0], 0);
        for l in 0..a.sig.num_letters() {
            a.succ[l].push(0);
        }
        a
    }

    /// The one-state safety automaton without transitions.
    pub fn reject_all(sig: Signature) -> Self {
        Self::new(sig, vec![0], 0)
    }

    /// The same automaton started in `q`.
    pub fn with_initial(&self, q: StateId) -> Self {
        assert!(q < self.num_states(), "initial state out of range");
        ParityWordAutomaton {
            initial: q,
            ..self.clone()
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn num_states(&self) -> usize {
        self.colors.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn color(&self, q: StateId) -> u32 {
        self.colors[q]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn set_color(&mut self, q: StateId, color: u32) {
        self.colors[q] = color;
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn add_state(&mut self, color: u32) -> StateId {
        self.colors.push(color);
        self.succ
            .extend(std::iter::repeat_with(Vec::new).take(self.sig.num_letters()));
        self.colors.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, letter: Letter, to: StateId) {
        let idx = self.sig.letter_index(letter);
        self.add_transition_index(from, idx, to);
    }

    pub(crate) fn add_transition_index(&mut self, from: StateId, letter: usize, to: StateId) {
        assert!(to < self.num_states(), "target state out of range");
        let list = &mut self.succ[from * self.sig.num_letters() + letter];
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
    }

    pub fn successors(&self, q: StateId, letter: Letter) -> &[StateId] {
        self.successors_index(q, self.sig.letter_index(letter))
    }

    #[inline]
    pub(crate) fn successors_index(&self, q: StateId, letter: usize) -> &[StateId] {
        &self.succ[q * self.sig.num_letters() + letter]
    }

    /// Deterministic successor; the first one if there are several.
    #[inline]
    pub fn step(&self, q: StateId, letter: Letter) -> Option<StateId> {
        self.successors(q, letter).first().copied()
    }

    #[inline]
    pub(crate) fn step_index(&self, q: StateId, letter: usize) -> Option<StateId> {
        self.succ[q * self.sig.num_letters() + letter]
            .first()
            .copied()
    }

    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().all(|s| s.len() <= 1)
    }

    pub fn is_total(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    pub fn is_safety(&self) -> bool {
        self.colors.iter().all(|&c| c == 0)
    }

    /// Büchi automata use color 2 for accepting and 1 for non-accepting states.
    pub fn is_buchi(&self) -> bool {
        self.colors.iter().all(|&c| c == 1 || c == 2)
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// State graph with letters forgotten.
    pub(crate) fn state_graph(&self) -> Vec<Vec<StateId>> {
        let n = self.sig.num_letters();
        (0..self.num_states())
            .map(|q| {
                let mut out: Vec<StateId> = self.succ[q * n..(q + 1) * n]
                    .iter()
                    .flatten()
                    .copied()
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect()
    }

    pub fn reachable_states(&self) -> Vec<bool> {
        graph::reachable(&self.state_graph(), &[self.initial], None)
    }

    /// States from which some word is accepted.
    pub fn nonempty_states(&self) -> Vec<bool> {
        let adj = self.state_graph();
        // a state is live iff it reaches a cycle with even maximal color
        let mut good = vec![false; self.num_states()];
        let mut colors: Vec<u32> = self.colors.clone();
        colors.sort_unstable();
        colors.dedup();
        for k in colors.into_iter().filter(|c| c % 2 == 0) {
            let sub: Vec<bool> = self.colors.iter().map(|&c| c <= k).collect();
            for comp in graph::sccs(&adj, Some(&sub)) {
                let has_k = comp.iter().any(|&v| self.colors[v] == k);
                let nontrivial = comp.len() > 1 || adj[comp[0]].contains(&comp[0]);
                if has_k && nontrivial {
                    for &v in &comp {
                        good[v] = true;
                    }
                }
            }
        }
        graph::backward_reachable(&adj, &good, None)
    }

    /// Keeps the states flagged in `keep` (renumbered in order); transitions
    /// into dropped states vanish. Falls back to [`Self::reject_all`] when
    /// the initial state is dropped.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        if !keep[self.initial] {
            return Self::reject_all(self.sig.clone());
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut colors = Vec::new();
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = colors.len();
                colors.push(self.colors[q]);
            }
        }
        let mut out = Self::new(self.sig.clone(), colors, map[self.initial]);
        let n = self.sig.num_letters();
        for q in (0..self.num_states()).filter(|&q| keep[q]) {
            for l in 0..n {
                for &t in self.successors_index(q, l) {
                    if keep[t] {
                        out.succ[map[q] * n + l].push(map[t]);
                    }
                }
            }
        }
        out
    }

    /// Drops states that are unreachable from the initial state.
    pub fn trim(&self) -> Self {
        self.restrict(&self.reachable_states())
    }

    /// Total deterministic automaton with the same language; adds at most one
    /// rejecting sink of color [`SINK_COLOR`].
    pub fn complete(&self) -> Result<Self> {
        if !self.is_deterministic() {
            return Err(Error::Nondeterministic);
        }
        if self.is_total() {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        let sink = out.add_state(SINK_COLOR);
        let n = self.sig.num_letters();
        for q in 0..out.num_states() {
            for l in 0..n {
                let list = &mut out.succ[q * n + l];
                if list.is_empty() {
                    list.push(sink);
                }
            }
        }
        Ok(out)
    }

    /// Removes every state whose language is empty. The language is unchanged.
    pub fn prune_word(&self) -> Self {
        self.restrict(&self.nonempty_states())
    }

    /// Decides whether the language is a linear-time safety property: after
    /// pruning, no reachable cycle may have an odd maximal color.
    pub fn classify_linear_safety(&self) -> Result<bool> {
        if !self.is_deterministic() {
            return Err(Error::Nondeterministic);
        }
        let pruned = self.prune_word();
        let adj = pruned.state_graph();
        let reach = graph::reachable(&adj, &[pruned.initial], None);
        Ok(graph::find_parity_cycle(&adj, &pruned.colors, Some(&reach), Parity::Odd).is_none())
    }

    /// The safety closure: prune, then treat every surviving state as
    /// accepting. Its language is the set of words all of whose prefixes have
    /// a nonempty residual.
    pub fn safety_closure(&self) -> Self {
        let mut out = self.prune_word().trim();
        out.colors.iter_mut().for_each(|c| *c = 0);
        out
    }

    /// Lasso membership by searching the product of the automaton with the
    /// lasso positions for a reachable cycle with even maximal color. Works
    /// for nondeterministic automata.
    pub fn accepts_lasso(&self, lasso: &Lasso) -> bool {
        let positions = lasso.len();
        let node = |q: StateId, i: usize| q * positions + i;
        let total = self.num_states() * positions;
        let mut adj = vec![Vec::new(); total];
        let mut colors = vec![0; total];
        for q in 0..self.num_states() {
            for i in 0..positions {
                colors[node(q, i)] = self.colors[q];
                let next = lasso.next_position(i);
                adj[node(q, i)] = self
                    .successors(q, lasso.at(i))
                    .iter()
                    .map(|&t| node(t, next))
                    .collect();
            }
        }
        let reach = graph::reachable(&adj, &[node(self.initial, 0)], None);
        graph::find_parity_cycle(&adj, &colors, Some(&reach), Parity::Even).is_some()
    }

    /// Lasso membership for deterministic automata by direct simulation.
    pub fn accepts_lasso_deterministic(&self, lasso: &Lasso) -> bool {
        debug_assert!(self.is_deterministic());
        let mut q = self.initial;
        for &l in &lasso.stem {
            match self.step(q, l) {
                Some(t) => q = t,
                None => return false,
            }
        }
        // iterate the cycle until the state at the cycle start repeats
        let mut seen: Vec<Option<usize>> = vec![None; self.num_states()];
        let mut maxima: Vec<u32> = Vec::new();
        loop {
            if let Some(round) = seen[q] {
                let inf = maxima[round..].iter().copied().max().unwrap_or(0);
                return inf % 2 == 0;
            }
            seen[q] = Some(maxima.len());
            let mut max = 0;
            for &l in &lasso.cycle {
                max = max.max(self.colors[q]);
                match self.step(q, l) {
                    Some(t) => q = t,
                    None => return false,
                }
            }
            maxima.push(max);
        }
    }

    /// Whether some infinite extension of `prefix` is accepted.
    pub fn residual_nonempty(&self, prefix: &[Letter]) -> bool {
        let live = self.nonempty_states();
        let mut current = vec![self.initial];
        for &l in prefix {
            let mut next: Vec<StateId> = current
                .iter()
                .flat_map(|&q| self.successors(q, l).iter().copied())
                .filter(|&t| live[t])
                .collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        current.iter().any(|&q| live[q])
    }
}
