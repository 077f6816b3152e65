//! Reactive safety checking.
//!
//! Given a temporal property of a reactive system with inputs `AP_I` and
//! outputs `AP_O`, decide whether it is a reactive (I/O) safety property: every
//! system violating it has a finite input/output path after which no system
//! sharing that path can satisfy it. Positive answers come with a tight
//! deterministic safety word automaton that is equivalent to the property on
//! every system with the same interface, and can serve as a runtime monitor.
//!
//! The pipeline is
//!
//! ```text
//! LTL --parse/nnf--> NBA --determinize--> DPW --complete/spread--> tree automaton
//!     --prune (parity game)--> rejecting-cycle search --collapse--> monitor
//! ```
//!
//! ```
//! use rsafe_core::{check_reactive_safety, parse_ltl, Property, SafetyClass, Signature};
//!
//! let sig = Signature::coffee();
//! let f = parse_ltl("G(c -> X(f | F b)) & G(e -> X G !b)", &sig).unwrap();
//! let verdict = check_reactive_safety(Property::Ltl(&f), &sig, &Default::default()).unwrap();
//! assert_eq!(verdict.class(), SafetyClass::ReactiveSafeNotLinear);
//! ```

pub mod alphabet;
pub mod checker;
pub mod determinize;
pub mod dot;
pub mod error;
pub mod game;
mod graph;
pub mod hoa;
pub mod ltl;
pub mod nba;
pub mod oracle;
pub mod random;
pub mod tree;
pub mod word;

pub use alphabet::{Lasso, Letter, Prop, Signature};
pub use checker::{
    analyze, check_reactive_safety, monitor_equivalent, Analysis, CheckOptions, Property,
    SafetyClass, Verdict,
};
pub use determinize::{determinize, DEFAULT_STATE_BUDGET};
pub use error::{Error, Result};
pub use game::{
    has_rejecting_cycle, nonempty_states, prune, solve, ParityGame, Player, Pruned, Solution,
};
pub use hoa::{read_hoa, read_hoa_with_signature, write_hoa};
pub use ltl::{parse_ltl, Formula};
pub use nba::translate;
pub use oracle::{all_lassos, enumerate_moore, eval_ltl_lasso, moore_satisfies_ltl};
pub use tree::{
    accepts_moore, collapse_w, spread, MooreChecker, MooreMachine, ParityTreeAutomaton, TreeWitness,
};
pub use word::{ParityWordAutomaton, StateId};
