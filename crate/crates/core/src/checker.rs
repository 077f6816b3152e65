//! The decision procedure: reduce any front end to a total deterministic
//! parity word automaton, spread it to a tree automaton, prune empty states,
//! and look for a reachable rejecting cycle. Without one the property is
//! reactive safe and the collapsed pruned automaton is a tight monitor.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Lasso, Signature};
use crate::determinize::{determinize, DEFAULT_STATE_BUDGET};
use crate::error::{Error, Result};
use crate::game::{has_rejecting_cycle, prune, Pruned};
use crate::ltl::Formula;
use crate::nba::translate;
use crate::tree::{collapse_w, spread, ParityTreeAutomaton, TreeWitness};
use crate::word::ParityWordAutomaton;

/// A property to classify.
#[derive(Debug, Clone, Copy)]
pub enum Property<'a> {
    Ltl(&'a Formula),
    /// A deterministic parity automaton, or a Büchi/safety automaton that
    /// will be determinized.
    Word(&'a ParityWordAutomaton),
    /// A deterministic tree automaton.
    Tree(&'a ParityTreeAutomaton),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Cap on the number of states produced by determinization.
    pub max_states: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_states: DEFAULT_STATE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SafetyClass {
    LinearSafe,
    ReactiveSafeNotLinear,
    NotReactiveSafe,
}

impl SafetyClass {
    pub fn is_reactive_safe(self) -> bool {
        self != SafetyClass::NotReactiveSafe
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    LinearSafe {
        monitor: ParityWordAutomaton,
    },
    ReactiveSafeNotLinear {
        monitor: ParityWordAutomaton,
    },
    /// `witness` is rejected, yet each of its prefixes can still be
    /// extended to an accepted word.
    NotReactiveSafe {
        witness: Lasso,
    },
}

impl Verdict {
    pub fn class(&self) -> SafetyClass {
        match self {
            Verdict::LinearSafe { .. } => SafetyClass::LinearSafe,
            Verdict::ReactiveSafeNotLinear { .. } => SafetyClass::ReactiveSafeNotLinear,
            Verdict::NotReactiveSafe { .. } => SafetyClass::NotReactiveSafe,
        }
    }

    /// The tight safety monitor of a reactive safe property.
    pub fn monitor(&self) -> Option<&ParityWordAutomaton> {
        match self {
            Verdict::LinearSafe { monitor } | Verdict::ReactiveSafeNotLinear { monitor } => {
                Some(monitor)
            }
            Verdict::NotReactiveSafe { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Lasso> {
        match self {
            Verdict::NotReactiveSafe { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Every intermediate stage of a check.
#[derive(Debug, Clone)]
pub struct Analysis {
    /// The Büchi automaton, for LTL input.
    pub nba: Option<ParityWordAutomaton>,
    /// Total deterministic parity automaton of the property.
    pub dpw: ParityWordAutomaton,
    pub spread: ParityTreeAutomaton,
    pub pruned: Pruned,
    pub tree_witness: Option<TreeWitness>,
    pub verdict: Verdict,
}

fn same_signature(expected: &Signature, actual: &Signature) -> Result<()> {
    if expected != actual {
        return Err(Error::SignatureMismatch(format!(
            "expected inputs {:?} / outputs {:?}, automaton has inputs {:?} / outputs {:?}",
            expected.inputs(),
            expected.outputs(),
            actual.inputs(),
            actual.outputs()
        )));
    }
    Ok(())
}

pub fn analyze(
    property: Property<'_>,
    sig: &Signature,
    options: &CheckOptions,
) -> Result<Analysis> {
    let (nba, dpw) = match property {
        Property::Ltl(f) => {
            let nba = translate(f, sig)?;
            let dpw = determinize(&nba, options.max_states)?;
            (Some(nba), dpw)
        }
        Property::Word(a) => {
            same_signature(sig, a.signature())?;
            let dpw = if a.is_deterministic() {
                a.complete()?
            } else {
                determinize(a, options.max_states)?
            };
            (None, dpw)
        }
        Property::Tree(t) => {
            same_signature(sig, t.signature())?;
            (None, t.unspread()?.complete()?)
        }
    };
    let spread = spread(&dpw)?;
    let pruned = prune(&spread);

    let (tree_witness, verdict) = if pruned.is_empty_language() {
        let monitor = ParityWordAutomaton::reject_all(sig.clone());
        (None, Verdict::LinearSafe { monitor })
    } else {
        match has_rejecting_cycle(&pruned.automaton)? {
            Some(w) => {
                let witness = w.to_lasso();
                (Some(w), Verdict::NotReactiveSafe { witness })
            }
            None => {
                let monitor = collapse_w(&pruned.automaton);
                let verdict = if dpw.classify_linear_safety()? {
                    Verdict::LinearSafe { monitor }
                } else {
                    Verdict::ReactiveSafeNotLinear { monitor }
                };
                (None, verdict)
            }
        }
    };
    Ok(Analysis {
        nba,
        dpw,
        spread,
        pruned,
        tree_witness,
        verdict,
    })
}

/// Decides whether `property` is a reactive safety property over `sig`.
pub fn check_reactive_safety(
    property: Property<'_>,
    sig: &Signature,
    options: &CheckOptions,
) -> Result<Verdict> {
    Ok(analyze(property, sig, options)?.verdict)
}

/// Language equality of two deterministic safety automata. After removing
/// empty states, a letter readable on exactly one side of a reachable pair
/// separates the languages.
pub fn monitor_equivalent(m1: &ParityWordAutomaton, m2: &ParityWordAutomaton) -> Result<bool> {
    same_signature(m1.signature(), m2.signature())?;
    for m in [m1, m2] {
        if !m.is_deterministic() {
            return Err(Error::Nondeterministic);
        }
        if !m.is_safety() {
            return Err(Error::NotSafety);
        }
    }
    let (a, b) = (m1.prune_word(), m2.prune_word());
    let start = (a.initial(), b.initial());
    let mut seen = HashMap::from([(start, ())]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        for l in a.signature().letters() {
            match (a.step(p, l), b.step(q, l)) {
                (None, None) => {}
                (Some(p2), Some(q2)) => {
                    if seen.insert((p2, q2), ()).is_none() {
                        queue.push_back((p2, q2));
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
