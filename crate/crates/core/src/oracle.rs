//! Brute-force reference machinery: Moore-machine enumeration, LTL
//! evaluation on lassos, and machine model checking by simple-cycle
//! enumeration. These share no code with the automata pipeline beyond the
//! data types and serve as independent cross-checks.

use std::collections::VecDeque;

use crate::alphabet::{Lasso, Letter, Prop, Signature};
use crate::error::{Error, Result};
use crate::ltl::Formula;
use crate::tree::MooreMachine;
use crate::word::ParityWordAutomaton;

/// Largest `|I|^n · |O|^n` accepted by [`enumerate_moore`].
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// Largest exact number of machines [`enumerate_moore`] will list.
pub const MACHINE_LIMIT: u128 = 100_000_000;

/// Number of machines listed by [`enumerate_moore`] (saturating).
pub fn count_moore(sig: &Signature, max_states: usize) -> u128 {
    let dirs = sig.num_directions();
    let labels = sig.num_labels() as u128;
    (1..=max_states)
        .map(|n| count_tables(n, dirs).saturating_mul(labels.saturating_pow(n as u32)))
        .fold(0u128, u128::saturating_add)
}

/// Number of canonical transition tables with exactly `n` states, by
/// dynamic programming over (position, highest state seen so far).
fn count_tables(n: usize, dirs: usize) -> u128 {
    let mut ways = vec![0u128; n];
    ways[0] = 1;
    for pos in 0..n * dirs {
        if pos % dirs == 0 {
            // row s is only scanned once discovered
            ways[..(pos / dirs).min(n)].fill(0);
        }
        let mut next = vec![0u128; n];
        for (m, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            next[m] = next[m].saturating_add(w.saturating_mul(m as u128 + 1));
            if m + 1 < n {
                next[m + 1] = next[m + 1].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[n - 1]
}

/// All Moore machines with `1..=max_states` states, each in breadth-first
/// canonical form: the initial state is 0, and scanning the transition
/// table row by row, every state first appears as the successor of a lower
/// one, in increasing order. This lists every machine whose states are all
/// reachable exactly once up to isomorphism.
pub fn enumerate_moore(sig: &Signature, max_states: usize) -> Result<MooreEnumeration> {
    let dirs = sig.num_directions() as u128;
    let labels = sig.num_labels() as u128;
    let mut size: u128 = 1;
    for _ in 0..max_states {
        size = size.saturating_mul(dirs).saturating_mul(labels);
    }
    if size > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard(format!(
            "{max_states} states over {dirs} inputs and {labels} outputs exceeds {ENUMERATION_GUARD}"
        )));
    }
    let count = count_moore(sig, max_states);
    if count > MACHINE_LIMIT {
        return Err(Error::EnumerationGuard(format!(
            "{count} machines exceed the limit of {MACHINE_LIMIT}"
        )));
    }
    Ok(MooreEnumeration {
        sig: sig.clone(),
        max_states,
        states: 0,
        tables: Vec::new(),
        table: 0,
        outputs: Vec::new(),
    })
}

/// Iterator returned by [`enumerate_moore`].
pub struct MooreEnumeration {
    sig: Signature,
    max_states: usize,
    states: usize,
    /// Flattened transition tables for `states` states.
    tables: Vec<usize>,
    table: usize,
    /// Output assignment of the next machine; empty before the first one.
    outputs: Vec<u32>,
}

impl MooreEnumeration {
    /// Visits every machine through one reused buffer, which is much cheaper
    /// than collecting owned machines. Stops early when `f` returns false.
    pub fn for_each_machine(mut self, mut f: impl FnMut(&MooreMachine) -> bool) {
        let mut machine = MooreMachine::constant(self.sig.clone(), 0);
        while self.advance() {
            let width = self.states * self.sig.num_directions();
            machine.outputs.clear();
            machine.outputs.extend_from_slice(&self.outputs);
            machine.next.clear();
            machine
                .next
                .extend_from_slice(&self.tables[self.table * width..(self.table + 1) * width]);
            if !f(&machine) {
                return;
            }
        }
    }

    /// Moves to the next machine; false once exhausted.
    fn advance(&mut self) -> bool {
        let labels = self.sig.num_labels() as u32;
        // next output assignment for the current table
        if !self.outputs.is_empty() {
            for y in self.outputs.iter_mut() {
                *y += 1;
                if *y < labels {
                    return true;
                }
                *y = 0;
            }
            self.table += 1;
            let width = self.states * self.sig.num_directions();
            if (self.table + 1) * width <= self.tables.len() {
                return true;
            }
        }
        // next state count
        if self.states >= self.max_states {
            return false;
        }
        self.states += 1;
        self.tables = canonical_tables(self.states, self.sig.num_directions());
        self.table = 0;
        self.outputs = vec![0; self.states];
        true
    }
}

impl Iterator for MooreEnumeration {
    type Item = MooreMachine;

    fn next(&mut self) -> Option<MooreMachine> {
        if !self.advance() {
            return None;
        }
        let width = self.states * self.sig.num_directions();
        Some(MooreMachine {
            sig: self.sig.clone(),
            initial: 0,
            outputs: self.outputs.clone(),
            next: self.tables[self.table * width..(self.table + 1) * width].to_vec(),
        })
    }
}

/// All breadth-first canonical transition tables with exactly `n` states.
fn canonical_tables(n: usize, dirs: usize) -> Vec<usize> {
    fn go(
        pos: usize,
        max_seen: usize,
        n: usize,
        dirs: usize,
        row: &mut Vec<usize>,
        out: &mut Vec<usize>,
    ) {
        if pos == n * dirs {
            if max_seen + 1 == n {
                out.extend_from_slice(row);
            }
            return;
        }
        // row s must already be discovered when it is scanned
        if pos.is_multiple_of(dirs) && pos / dirs > max_seen {
            return;
        }
        for t in 0..=(max_seen + 1).min(n - 1) {
            row.push(t);
            go(pos + 1, max_seen.max(t), n, dirs, row, out);
            row.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, dirs, &mut Vec::with_capacity(n * dirs), &mut out);
    out
}

/// Every lasso with a stem of at most `max_stem` letters and a cycle of
/// `1..=max_loop` letters, shortest first.
pub fn all_lassos(sig: &Signature, max_stem: usize, max_loop: usize) -> Vec<Lasso> {
    let words = |len: usize| -> Vec<Vec<Letter>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    sig.letters().map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let mut out = Vec::new();
    for s in 0..=max_stem {
        let stems = words(s);
        for c in 1..=max_loop {
            let cycles = words(c);
            for stem in &stems {
                for cycle in &cycles {
                    out.push(Lasso::new(stem.clone(), cycle.clone()));
                }
            }
        }
    }
    out
}

/// Satisfaction of `f` on the word `stem · cycle^ω`, computed per position
/// with least fixpoints for `U`/`F` and greatest fixpoints for `R`/`G`.
pub fn eval_ltl_lasso(f: &Formula, lasso: &Lasso, sig: &Signature) -> Result<bool> {
    Ok(eval_positions(f, lasso, sig)?[0])
}

fn eval_positions(f: &Formula, lasso: &Lasso, sig: &Signature) -> Result<Vec<bool>> {
    use Formula as F;
    let len = lasso.len();
    let succ = |i: usize| lasso.next_position(i);
    let atom = |name: &str| -> Result<Prop> {
        sig.prop(name)
            .ok_or_else(|| Error::UndeclaredProposition(name.to_owned()))
    };
    let fixpoint = |init: bool, step: &dyn Fn(usize, &[bool]) -> bool| -> Vec<bool> {
        let mut v = vec![init; len];
        loop {
            let mut changed = false;
            for i in (0..len).rev() {
                let new = step(i, &v);
                if new != v[i] {
                    v[i] = new;
                    changed = true;
                }
            }
            if !changed {
                return v;
            }
        }
    };
    Ok(match f {
        F::True => vec![true; len],
        F::False => vec![false; len],
        F::Atom(name) => {
            let p = atom(name)?;
            (0..len).map(|i| lasso.at(i).holds(p)).collect()
        }
        F::Not(a) => eval_positions(a, lasso, sig)?
            .into_iter()
            .map(|b| !b)
            .collect(),
        F::And(a, b) => zip(
            eval_positions(a, lasso, sig)?,
            eval_positions(b, lasso, sig)?,
            |x, y| x && y,
        ),
        F::Or(a, b) => zip(
            eval_positions(a, lasso, sig)?,
            eval_positions(b, lasso, sig)?,
            |x, y| x || y,
        ),
        F::Implies(a, b) => zip(
            eval_positions(a, lasso, sig)?,
            eval_positions(b, lasso, sig)?,
            |x, y| !x || y,
        ),
        F::Next(a) => {
            let va = eval_positions(a, lasso, sig)?;
            (0..len).map(|i| va[succ(i)]).collect()
        }
        F::Finally(a) => {
            let va = eval_positions(a, lasso, sig)?;
            fixpoint(false, &|i, v| va[i] || v[succ(i)])
        }
        F::Globally(a) => {
            let va = eval_positions(a, lasso, sig)?;
            fixpoint(true, &|i, v| va[i] && v[succ(i)])
        }
        F::Until(a, b) => {
            let (va, vb) = (
                eval_positions(a, lasso, sig)?,
                eval_positions(b, lasso, sig)?,
            );
            fixpoint(false, &|i, v| vb[i] || (va[i] && v[succ(i)]))
        }
        F::Release(a, b) => {
            let (va, vb) = (
                eval_positions(a, lasso, sig)?,
                eval_positions(b, lasso, sig)?,
            );
            fixpoint(true, &|i, v| vb[i] && (va[i] || v[succ(i)]))
        }
    })
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

/// Decides whether every path of `machine` satisfies `f` without using the
/// automaton's acceptance condition: the product of the machine with the
/// deterministic automaton `dpw` (any total deterministic automaton for `f`)
/// only guides which lassos to look at. Every simple cycle of the reachable
/// product, together with a shortest stem, is turned into a lasso of the
/// machine and evaluated directly. A violating machine always has a violating
/// path that follows some simple product cycle whenever `dpw` is correct, so
/// disagreement with [`ParityWordAutomaton::accepts_moore`] exposes a bug in
/// one of the two.
pub fn moore_satisfies_ltl(
    f: &Formula,
    dpw: &ParityWordAutomaton,
    machine: &MooreMachine,
) -> Result<bool> {
    let sig = dpw.signature();
    if !dpw.is_deterministic() || !dpw.is_total() {
        return Err(Error::Nondeterministic);
    }
    for a in f.atoms() {
        if sig.prop(a).is_none() {
            return Err(Error::UndeclaredProposition(a.to_owned()));
        }
    }
    let dirs = sig.num_directions();
    let nq = dpw.num_states();
    let node = |s: usize, q: usize| s * nq + q;
    let total = machine.num_states() * nq;
    let letter_at = |v: usize, x: usize| Letter::new(machine.output(v / nq), x as u32);
    let step = |v: usize, x: usize| -> usize {
        let (s, q) = (v / nq, v % nq);
        let t = dpw.step(q, letter_at(v, x)).expect("total");
        node(machine.next(s, x as u32), t)
    };

    // breadth-first stems
    let start = node(machine.initial(), dpw.initial());
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    seen[start] = true;
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for x in 0..dirs {
            let w = step(v, x);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, x));
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let stem_to = |mut v: usize| {
        let mut letters = Vec::new();
        while let Some((p, x)) = parent[v] {
            letters.push(letter_at(p, x));
            v = p;
        }
        letters.reverse();
        letters
    };

    // simple cycles, each enumerated once from its least node
    for &root in &order {
        let stem = stem_to(root);
        let mut on_path = vec![false; total];
        let mut violated = false;
        cycles_from(
            root,
            root,
            dirs,
            &step,
            &seen,
            &mut on_path,
            &mut Vec::new(),
            &mut |c| {
                if !violated {
                    let letters = c.iter().map(|&(v, x)| letter_at(v, x)).collect();
                    let lasso = Lasso::new(stem.clone(), letters);
                    violated = !eval_ltl_lasso(f, &lasso, sig).expect("atoms checked");
                }
            },
        );
        if violated {
            return Ok(false);
        }
    }
    Ok(true)
}

type CycleSink<'a> = &'a mut dyn FnMut(&[(usize, usize)]);

#[allow(clippy::too_many_arguments)]
fn cycles_from(
    root: usize,
    v: usize,
    dirs: usize,
    step: &dyn Fn(usize, usize) -> usize,
    reachable: &[bool],
    on_path: &mut [bool],
    path: &mut Vec<(usize, usize)>,
    report: CycleSink<'_>,
) {
    on_path[v] = true;
    let mut targets_done: Vec<usize> = Vec::with_capacity(dirs);
    for x in 0..dirs {
        let w = step(v, x);
        // one letter per product edge suffices to name the node cycle
        if targets_done.contains(&w) || w < root || !reachable[w] {
            continue;
        }
        targets_done.push(w);
        path.push((v, x));
        if w == root {
            report(path);
        } else if !on_path[w] {
            cycles_from(root, w, dirs, step, reachable, on_path, path, report);
        }
        path.pop();
    }
    on_path[v] = false;
}
