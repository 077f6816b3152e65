//! Parity tree automata over `O`-labeled `I`-trees, Moore machines as finite
//! generators of full trees, and the constructions linking trees to words:
//! [`spread`] lifts a deterministic word automaton to the tree automaton whose
//! language is "every path is accepted", [`collapse_w`] folds a tree automaton
//! back into a deterministic safety word automaton by a subset construction.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Lasso, Letter, Signature};
use crate::error::{Error, Result};
use crate::graph::{self, Parity};
use crate::word::{ParityWordAutomaton, StateId};

/// One element `(q, y, f)` of the transition relation: reading label `y` in
/// state `q`, direction `x` continues in `targets[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeTransition {
    pub label: u32,
    pub targets: Vec<StateId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTreeAutomaton {
    sig: Signature,
    initial: StateId,
    colors: Vec<u32>,
    /// Per state, sorted by label.
    transitions: Vec<Vec<TreeTransition>>,
}

impl ParityTreeAutomaton {
    pub fn new(sig: Signature, colors: Vec<u32>, initial: StateId) -> Self {
        assert!(initial < colors.len(), "initial state out of range");
        let transitions = vec![Vec::new(); colors.len()];
        ParityTreeAutomaton {
            sig,
            initial,
            colors,
            transitions,
        }
    }

    /// One state, no transitions: the empty tree language.
    pub fn empty(sig: Signature) -> Self {
        Self::new(sig, vec![1], 0)
    }

    /// The same automaton started in `q`.
    pub fn with_initial(&self, q: StateId) -> Self {
        assert!(q < self.num_states(), "initial state out of range");
        ParityTreeAutomaton {
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

    pub fn add_transition(&mut self, q: StateId, label: u32, targets: Vec<StateId>) {
        assert_eq!(
            targets.len(),
            self.sig.num_directions(),
            "one target per direction"
        );
        assert!(
            (label as usize) < self.sig.num_labels(),
            "label out of range"
        );
        assert!(targets.iter().all(|&t| t < self.num_states()));
        let t = TreeTransition { label, targets };
        let list = &mut self.transitions[q];
        if let Err(pos) = list.binary_search(&t) {
            list.insert(pos, t);
        }
    }

    pub fn transitions(&self, q: StateId) -> &[TreeTransition] {
        &self.transitions[q]
    }

    /// The (first) transition of `q` on `label`.
    #[inline]
    pub fn transition(&self, q: StateId, label: u32) -> Option<&[StateId]> {
        self.transitions[q]
            .iter()
            .find(|t| t.label == label)
            .map(|t| t.targets.as_slice())
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .iter()
            .all(|ts| ts.windows(2).all(|w| w[0].label != w[1].label))
    }

    pub(crate) fn state_graph(&self) -> Vec<Vec<StateId>> {
        self.transitions
            .iter()
            .map(|ts| {
                let mut out: Vec<StateId> =
                    ts.iter().flat_map(|t| t.targets.iter().copied()).collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect()
    }

    pub fn reachable_states(&self) -> Vec<bool> {
        graph::reachable(&self.state_graph(), &[self.initial], None)
    }

    /// Smallest `(label, direction)` leading from `from` to `to`.
    pub(crate) fn edge(&self, from: StateId, to: StateId) -> Option<(u32, u32)> {
        self.transitions[from].iter().find_map(|t| {
            t.targets
                .iter()
                .position(|&s| s == to)
                .map(|x| (t.label, x as u32))
        })
    }

    /// Keeps the flagged states; transitions that mention a dropped state are
    /// deleted. Yields [`Self::empty`] when the initial state is dropped.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        if !keep[self.initial] {
            return Self::empty(self.sig.clone());
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
        for q in (0..self.num_states()).filter(|&q| keep[q]) {
            for t in &self.transitions[q] {
                if t.targets.iter().all(|&s| keep[s]) {
                    out.transitions[map[q]].push(TreeTransition {
                        label: t.label,
                        targets: t.targets.iter().map(|&s| map[s]).collect(),
                    });
                }
            }
        }
        out
    }

    /// Inverse of [`spread`] on deterministic automata: the word automaton
    /// with `δ(q, (y, x)) = f(x)` for the transition `(q, y, f)`.
    pub fn unspread(&self) -> Result<ParityWordAutomaton> {
        if !self.is_deterministic() {
            return Err(Error::Nondeterministic);
        }
        let mut w = ParityWordAutomaton::new(self.sig.clone(), self.colors.clone(), self.initial);
        for q in 0..self.num_states() {
            for t in &self.transitions[q] {
                for (x, &target) in t.targets.iter().enumerate() {
                    w.add_transition(q, Letter::new(t.label, x as u32), target);
                }
            }
        }
        Ok(w)
    }

    /// Serializes to the line-based text format read by [`Self::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.sig, self.initial);
        for (q, c) in self.colors.iter().enumerate() {
            let _ = writeln!(out, "state {q} color {c}");
        }
        for q in 0..self.num_states() {
            for t in &self.transitions[q] {
                let _ = writeln!(
                    out,
                    "{q} --{}--> {}",
                    self.sig.format_output(t.label),
                    format_targets(&self.sig, &t.targets)
                );
            }
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// inputs: c e
    /// outputs: b f
    /// initial: 0
    /// state 0 color 2
    /// 0 --{f}--> [{}:0, {c}:0, {e}:0, {c,e}:0]
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = Header::default();
        let mut colors: Vec<(usize, u32)> = Vec::new();
        let mut edges: Vec<(usize, usize, String, String)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = strip_comment(raw);
            if line.is_empty() || header.take(line, line_no)? {
                continue;
            }
            if let Some(rest) = line.strip_prefix("state ") {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                match parts.as_slice() {
                    [q, "color", c] => {
                        colors.push((parse_num(q, line_no)?, parse_num(c, line_no)? as u32))
                    }
                    _ => return Err(Error::format(line_no, "expected `state <q> color <c>`")),
                }
            } else if let Some((from, rest)) = line.split_once("--") {
                let (label, targets) = rest
                    .split_once("-->")
                    .ok_or_else(|| Error::format(line_no, "expected `q --y--> [...]`"))?;
                edges.push((
                    line_no,
                    parse_num(from.trim(), line_no)?,
                    label.trim().to_owned(),
                    targets.trim().to_owned(),
                ));
            } else {
                return Err(Error::format(
                    line_no,
                    format!("unrecognized line `{line}`"),
                ));
            }
        }
        let (sig, initial) = header.finish()?;
        let num_states = colors.iter().map(|&(q, _)| q + 1).max().unwrap_or(0);
        if num_states == 0 {
            return Err(Error::format(0, "no states declared"));
        }
        let mut color_vec = vec![None; num_states];
        for (q, c) in colors {
            color_vec[q] = Some(c);
        }
        let color_vec: Vec<u32> = color_vec
            .into_iter()
            .enumerate()
            .map(|(q, c)| c.ok_or_else(|| Error::format(0, format!("state {q} has no color"))))
            .collect::<Result<_>>()?;
        if initial >= num_states {
            return Err(Error::format(0, "initial state out of range"));
        }
        let mut a = Self::new(sig, color_vec, initial);
        for (line_no, from, label, targets) in edges {
            let label = a
                .sig
                .parse_output(&label)
                .map_err(|e| relocate(e, line_no))?;
            let targets = parse_targets(&a.sig, &targets, num_states, line_no)?;
            if from >= num_states {
                return Err(Error::format(line_no, "state out of range"));
            }
            a.add_transition(from, label, targets);
        }
        Ok(a)
    }
}

/// Lifts a total deterministic word automaton over `O × I` to the
/// deterministic tree automaton accepting exactly the trees all of whose
/// paths are accepted. States, initial state and colors are unchanged.
pub fn spread(word: &ParityWordAutomaton) -> Result<ParityTreeAutomaton> {
    if !word.is_deterministic() {
        return Err(Error::Nondeterministic);
    }
    let sig = word.signature().clone();
    let mut tree = ParityTreeAutomaton::new(sig.clone(), word.colors().to_vec(), word.initial());
    for q in 0..word.num_states() {
        for y in 0..sig.num_labels() as u32 {
            let mut targets = Vec::with_capacity(sig.num_directions());
            for x in 0..sig.num_directions() as u32 {
                let letter = Letter::new(y, x);
                match word.step(q, letter) {
                    Some(t) => targets.push(t),
                    None => {
                        return Err(Error::NotTotal {
                            state: q,
                            letter: sig.format_letter(letter),
                        })
                    }
                }
            }
            tree.transitions[q].push(TreeTransition { label: y, targets });
        }
    }
    Ok(tree)
}

/// Subset construction from a tree automaton to a deterministic safety word
/// automaton: on `(y, x)` a macro-state moves to the set of `f(x)` over all
/// transitions `(q, y, f)` of its members. The empty macro-state is not
/// materialized; the missing transition rejects.
pub fn collapse_w(tree: &ParityTreeAutomaton) -> ParityWordAutomaton {
    let sig = tree.signature().clone();
    let start = vec![tree.initial()];
    let mut ids: HashMap<Vec<StateId>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut out = ParityWordAutomaton::new(sig.clone(), vec![0], 0);
    let mut queue = VecDeque::from([start]);
    while let Some(macro_state) = queue.pop_front() {
        let from = ids[&macro_state];
        for l in 0..sig.num_letters() {
            let letter = sig.letter(l);
            let mut next: Vec<StateId> = macro_state
                .iter()
                .flat_map(|&q| {
                    tree.transitions(q)
                        .iter()
                        .filter(move |t| t.label == letter.output)
                        .map(move |t| t.targets[letter.input as usize])
                })
                .collect();
            if next.is_empty() {
                continue;
            }
            next.sort_unstable();
            next.dedup();
            let to = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = out.add_state(0);
                    ids.insert(next.clone(), id);
                    queue.push_back(next);
                    id
                }
            };
            out.add_transition_index(from, l, to);
        }
    }
    out
}

/// A lasso through a tree automaton as `(state, label, direction)` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeWitness {
    pub stem: Vec<(StateId, u32, u32)>,
    pub cycle: Vec<(StateId, u32, u32)>,
}

impl TreeWitness {
    /// Projects the steps to letters `(label, direction)` of `Σ = O × I`.
    pub fn to_lasso(&self) -> Lasso {
        let letters = |steps: &[(StateId, u32, u32)]| {
            steps
                .iter()
                .map(|&(_, y, x)| Letter::new(y, x))
                .collect::<Vec<_>>()
        };
        Lasso::new(letters(&self.stem), letters(&self.cycle))
    }
}

/// A finite-state reactive system: emits the output of its current state,
/// then reads an input and moves. Unfolding it from the initial state yields
/// the full tree whose node `t_0 … t_{k-1}` is labelled with the output after
/// reading `t_0 … t_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MooreMachine {
    pub(crate) sig: Signature,
    pub(crate) initial: usize,
    pub(crate) outputs: Vec<u32>,
    /// `next[s * |I| + x]`
    pub(crate) next: Vec<usize>,
}

impl MooreMachine {
    pub fn new(
        sig: Signature,
        outputs: Vec<u32>,
        next: Vec<usize>,
        initial: usize,
    ) -> Result<Self> {
        let n = outputs.len();
        let dirs = sig.num_directions();
        if n == 0 || next.len() != n * dirs || initial >= n {
            return Err(Error::format(0, "malformed Moore machine"));
        }
        if next.iter().any(|&t| t >= n) || outputs.iter().any(|&y| y as usize >= sig.num_labels()) {
            return Err(Error::format(
                0,
                "Moore machine refers to an undefined state or output",
            ));
        }
        Ok(MooreMachine {
            sig,
            initial,
            outputs,
            next,
        })
    }

    /// A one-state machine that always emits `output`.
    pub fn constant(sig: Signature, output: u32) -> Self {
        let dirs = sig.num_directions();
        MooreMachine::new(sig, vec![output], vec![0; dirs], 0).expect("well-formed")
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn output(&self, s: usize) -> u32 {
        self.outputs[s]
    }

    #[inline]
    pub fn next(&self, s: usize, input: u32) -> usize {
        self.next[s * self.sig.num_directions() + input as usize]
    }

    /// The run on an infinite input sequence given as a lasso of inputs,
    /// as a lasso word over `O × I`.
    pub fn run(&self, stem: &[u32], cycle: &[u32]) -> Lasso {
        // unroll the input cycle until the machine state at its start repeats
        let mut s = self.initial;
        let mut letters = Vec::new();
        for &x in stem {
            letters.push(Letter::new(self.output(s), x));
            s = self.next(s, x);
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        loop {
            if let Some(&start) = seen.get(&s) {
                let stem_part = letters[..start].to_vec();
                let cycle_part = letters[start..].to_vec();
                return Lasso::new(stem_part, cycle_part);
            }
            seen.insert(s, letters.len());
            for &x in cycle {
                letters.push(Letter::new(self.output(s), x));
                s = self.next(s, x);
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_header(&mut out, &self.sig, self.initial);
        let dirs = self.sig.num_directions();
        for s in 0..self.num_states() {
            let _ = writeln!(
                out,
                "state {s} output {} next {}",
                self.sig.format_output(self.outputs[s]),
                format_targets(&self.sig, &self.next[s * dirs..(s + 1) * dirs])
            );
        }
        out
    }

    /// Parses the text format:
    ///
    /// ```text
    /// inputs: c e
    /// outputs: b f
    /// initial: 0
    /// state 0 output {f} next [{}:0, {c}:0, {e}:0, {c,e}:0]
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = Header::default();
        let mut rows: Vec<(usize, usize, String, String)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = strip_comment(raw);
            if line.is_empty() || header.take(line, line_no)? {
                continue;
            }
            let rest = line
                .strip_prefix("state ")
                .ok_or_else(|| Error::format(line_no, format!("unrecognized line `{line}`")))?;
            let (q, rest) = rest.trim().split_once(' ').ok_or_else(|| {
                Error::format(line_no, "expected `state <s> output {..} next [..]`")
            })?;
            let rest = rest
                .trim()
                .strip_prefix("output")
                .ok_or_else(|| Error::format(line_no, "expected `output`"))?;
            let (out, next) = rest
                .split_once("next")
                .ok_or_else(|| Error::format(line_no, "expected `next`"))?;
            rows.push((
                line_no,
                parse_num(q, line_no)?,
                out.trim().to_owned(),
                next.trim().to_owned(),
            ));
        }
        let (sig, initial) = header.finish()?;
        let n = rows.iter().map(|r| r.1 + 1).max().unwrap_or(0);
        let dirs = sig.num_directions();
        let mut outputs = vec![None; n];
        let mut next = vec![0; n * dirs];
        for (line_no, s, out, targets) in rows {
            outputs[s] = Some(sig.parse_output(&out).map_err(|e| relocate(e, line_no))?);
            let t = parse_targets(&sig, &targets, n, line_no)?;
            next[s * dirs..(s + 1) * dirs].copy_from_slice(&t);
        }
        let outputs = outputs
            .into_iter()
            .enumerate()
            .map(|(s, o)| o.ok_or_else(|| Error::format(0, format!("state {s} is not defined"))))
            .collect::<Result<Vec<_>>>()?;
        MooreMachine::new(sig, outputs, next, initial)
    }
}

const NO_STATE: u32 = u32::MAX;

/// A deterministic automaton compiled for repeated Moore-machine checks: a
/// dense transition table indexed by `state * |Σ| + letter`, where
/// [`NO_STATE`] marks a missing (rejecting) transition. Tree automata are
/// compiled through their word view, which reads the same table.
#[derive(Debug, Clone)]
pub struct MooreChecker {
    sig: Signature,
    initial: usize,
    colors: Vec<u32>,
    table: Vec<u32>,
    all_even: bool,
    /// `below[k]` flags the product nodes `s * |Q| + q` with color `<= k`,
    /// for odd `k`, as long as the product fits 128 nodes.
    below: Vec<u128>,
}

impl MooreChecker {
    pub fn for_word(a: &ParityWordAutomaton) -> Result<Self> {
        if !a.is_deterministic() {
            return Err(Error::Nondeterministic);
        }
        let letters = a.signature().num_letters();
        let mut table = vec![NO_STATE; a.num_states() * letters];
        for q in 0..a.num_states() {
            for l in 0..letters {
                if let Some(t) = a.step_index(q, l) {
                    table[q * letters + l] = t as u32;
                }
            }
        }
        let nq = a.num_states();
        let below = (0..=a.max_color())
            .map(|k| {
                (0..128.min(128 / nq.max(1) * nq))
                    .filter(|&v| a.color(v % nq) <= k)
                    .fold(0u128, |m, v| m | 1 << v)
            })
            .collect();
        Ok(MooreChecker {
            sig: a.signature().clone(),
            initial: a.initial(),
            colors: a.colors().to_vec(),
            table,
            all_even: a.colors().iter().all(|c| c % 2 == 0),
            below,
        })
    }

    pub fn for_tree(a: &ParityTreeAutomaton) -> Result<Self> {
        Self::for_word(&a.unspread()?)
    }

    /// Whether every path of the tree unfolded from `machine` is accepted.
    pub fn accepts(&self, machine: &MooreMachine) -> Result<bool> {
        check_signature(&self.sig, &machine.sig)?;
        let nq = self.colors.len();
        if machine.num_states() * nq <= 128 {
            Ok(self.accepts_small(machine))
        } else {
            Ok(self.accepts_large(machine))
        }
    }

    #[inline]
    fn target(&self, machine: &MooreMachine, s: usize, q: usize, x: usize) -> Option<usize> {
        let bits = self.sig.num_input_props();
        let letter = ((machine.outputs[s] as usize) << bits) | x;
        let t = self.table[q * self.sig.num_letters() + letter];
        (t != NO_STATE).then_some(t as usize)
    }

    /// Product with at most 128 nodes, explored with bitset adjacency.
    fn accepts_small(&self, machine: &MooreMachine) -> bool {
        let nq = self.colors.len();
        let dirs = self.sig.num_directions();
        let mut succ = [0u128; 128];
        let start = machine.initial * nq + self.initial;
        let mut reached: u128 = 1 << start;
        let mut stack = [0u8; 128];
        stack[0] = start as u8;
        let mut top = 1;
        while top > 0 {
            top -= 1;
            let v = stack[top] as usize;
            let (s, q) = (v / nq, v % nq);
            for x in 0..dirs {
                let Some(t) = self.target(machine, s, q, x) else {
                    return false;
                };
                let w = machine.next[s * dirs + x] * nq + t;
                succ[v] |= 1 << w;
                if reached & (1 << w) == 0 {
                    reached |= 1 << w;
                    stack[top] = w as u8;
                    top += 1;
                }
            }
        }
        if self.all_even {
            return true;
        }
        // an odd node v of color k lies on a cycle with maximum k iff it
        // reaches itself through nodes of color <= k
        let mut nodes = reached;
        while nodes != 0 {
            let v = nodes.trailing_zeros() as usize;
            nodes &= nodes - 1;
            let k = self.colors[v % nq];
            if k.is_multiple_of(2) {
                continue;
            }
            let allowed = reached & self.below[k as usize];
            let mut seen = succ[v] & allowed;
            let mut frontier = seen;
            while frontier != 0 {
                if seen & (1 << v) != 0 {
                    return false;
                }
                let mut next = 0;
                while frontier != 0 {
                    let w = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    next |= succ[w];
                }
                frontier = next & allowed & !seen;
                seen |= frontier;
            }
            if seen & (1 << v) != 0 {
                return false;
            }
        }
        true
    }

    fn accepts_large(&self, machine: &MooreMachine) -> bool {
        let nq = self.colors.len();
        let dirs = self.sig.num_directions();
        let total = machine.num_states() * nq;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        let mut seen = vec![false; total];
        let start = machine.initial * nq + self.initial;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let (s, q) = (v / nq, v % nq);
            for x in 0..dirs {
                let Some(t) = self.target(machine, s, q, x) else {
                    return false;
                };
                let w = machine.next[s * dirs + x] * nq + t;
                adj[v].push(w);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if self.all_even {
            return true;
        }
        let colors: Vec<u32> = (0..total).map(|v| self.colors[v % nq]).collect();
        graph::find_parity_cycle(&adj, &colors, Some(&seen), Parity::Odd).is_none()
    }
}

fn check_signature(a: &Signature, b: &Signature) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch(format!(
            "automaton has inputs {:?} / outputs {:?}, machine has inputs {:?} / outputs {:?}",
            a.inputs(),
            a.outputs(),
            b.inputs(),
            b.outputs()
        )));
    }
    Ok(())
}

/// Whether the deterministic tree automaton accepts the tree unfolded from
/// `machine`.
pub fn accepts_moore(tree: &ParityTreeAutomaton, machine: &MooreMachine) -> Result<bool> {
    MooreChecker::for_tree(tree)?.accepts(machine)
}

impl ParityWordAutomaton {
    /// Whether every path of the tree unfolded from `machine` is accepted.
    /// Missing transitions reject, as in the spread of the completed
    /// automaton.
    pub fn accepts_moore(&self, machine: &MooreMachine) -> Result<bool> {
        MooreChecker::for_word(self)?.accepts(machine)
    }
}

#[derive(Default)]
struct Header {
    inputs: Option<Vec<String>>,
    outputs: Option<Vec<String>>,
    initial: Option<usize>,
}

impl Header {
    fn take(&mut self, line: &str, line_no: usize) -> Result<bool> {
        let split = |s: &str| -> Vec<String> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_owned)
                .collect()
        };
        if let Some(rest) = line.strip_prefix("inputs:") {
            self.inputs = Some(split(rest));
        } else if let Some(rest) = line.strip_prefix("outputs:") {
            self.outputs = Some(split(rest));
        } else if let Some(rest) = line.strip_prefix("initial:") {
            self.initial = Some(parse_num(rest.trim(), line_no)?);
        } else {
            return Ok(false);
        }
        Ok(true)
    }

    fn finish(self) -> Result<(Signature, usize)> {
        let inputs = self
            .inputs
            .ok_or_else(|| Error::format(0, "missing `inputs:`"))?;
        let outputs = self
            .outputs
            .ok_or_else(|| Error::format(0, "missing `outputs:`"))?;
        let sig = Signature::new(&inputs, &outputs)?;
        Ok((sig, self.initial.unwrap_or(0)))
    }
}

fn write_header(out: &mut String, sig: &Signature, initial: usize) {
    let _ = writeln!(out, "inputs: {}", sig.inputs().join(" "));
    let _ = writeln!(out, "outputs: {}", sig.outputs().join(" "));
    let _ = writeln!(out, "initial: {initial}");
}

fn format_targets(sig: &Signature, targets: &[usize]) -> String {
    let items: Vec<String> = targets
        .iter()
        .enumerate()
        .map(|(x, t)| format!("{}:{t}", sig.format_input(x as u32)))
        .collect();
    format!("[{}]", items.join(", "))
}

fn parse_targets(
    sig: &Signature,
    text: &str,
    num_states: usize,
    line_no: usize,
) -> Result<Vec<usize>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::format(line_no, "expected `[dir:state, ...]`"))?;
    let mut targets = vec![None; sig.num_directions()];
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let close = rest
            .find('}')
            .ok_or_else(|| Error::format(line_no, "expected a direction set"))?;
        let dir = sig
            .parse_input(&rest[..=close])
            .map_err(|e| relocate(e, line_no))?;
        let after = rest[close + 1..]
            .trim_start()
            .strip_prefix(':')
            .ok_or_else(|| Error::format(line_no, "expected `:` after direction"))?;
        let (num, tail) = match after.find(',') {
            Some(i) => (&after[..i], &after[i + 1..]),
            None => (after, ""),
        };
        let target = parse_num(num.trim(), line_no)?;
        if target >= num_states {
            return Err(Error::format(
                line_no,
                format!("state {target} out of range"),
            ));
        }
        if targets[dir as usize].replace(target).is_some() {
            return Err(Error::format(line_no, "direction listed twice"));
        }
        rest = tail.trim();
    }
    targets
        .into_iter()
        .map(|t| t.ok_or_else(|| Error::format(line_no, "every direction needs a target")))
        .collect()
}

fn parse_num(s: &str, line_no: usize) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::format(line_no, format!("expected a number, got `{s}`")))
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn relocate(e: Error, line_no: usize) -> Error {
    match e {
        Error::Format { message, .. } => Error::format(line_no, message),
        other => other,
    }
}
