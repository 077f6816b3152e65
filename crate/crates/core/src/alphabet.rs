//! Input/output signatures and the product alphabet `O × I`.
//!
//! A letter pairs the output emitted in a step with the input read afterwards.
//! Both halves are bitsets over the declared proposition lists, and letters are
//! indexed as `(output << |AP_I|) | input`, so index order is the lexicographic
//! order of `(output-set, input-set)` bitvectors.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Upper bound on the total number of propositions.
pub const MAX_PROPOSITIONS: usize = 16;

/// A reactive-system interface: input propositions `AP_I` and output
/// propositions `AP_O`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

/// Which half of the signature a proposition belongs to, plus its position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prop {
    Input(usize),
    Output(usize),
}

impl Signature {
    pub fn new<S: AsRef<str>>(inputs: &[S], outputs: &[S]) -> Result<Self> {
        let inputs: Vec<String> = inputs.iter().map(|s| s.as_ref().to_owned()).collect();
        let outputs: Vec<String> = outputs.iter().map(|s| s.as_ref().to_owned()).collect();
        if inputs.len() + outputs.len() > MAX_PROPOSITIONS {
            return Err(Error::InvalidSignature(format!(
                "at most {MAX_PROPOSITIONS} propositions are supported"
            )));
        }
        let mut seen = HashSet::new();
        for name in inputs.iter().chain(&outputs) {
            if !is_identifier(name) || is_reserved(name) {
                return Err(Error::InvalidSignature(format!(
                    "`{name}` is not a valid proposition name"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSignature(format!(
                    "proposition `{name}` declared twice"
                )));
            }
        }
        Ok(Signature { inputs, outputs })
    }

    /// The signature of the running example: inputs `c, e`, outputs `b, f`.
    pub fn coffee() -> Self {
        Signature::new(&["c", "e"], &["b", "f"]).expect("valid signature")
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn num_input_props(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_output_props(&self) -> usize {
        self.outputs.len()
    }

    /// `|I| = 2^|AP_I|`, the number of tree directions.
    pub fn num_directions(&self) -> usize {
        1 << self.inputs.len()
    }

    /// `|O| = 2^|AP_O|`, the number of tree labels.
    pub fn num_labels(&self) -> usize {
        1 << self.outputs.len()
    }

    pub fn num_letters(&self) -> usize {
        self.num_labels() * self.num_directions()
    }

    pub fn letter_index(&self, letter: Letter) -> usize {
        ((letter.output as usize) << self.inputs.len()) | letter.input as usize
    }

    pub fn letter(&self, index: usize) -> Letter {
        Letter {
            output: (index >> self.inputs.len()) as u32,
            input: (index & (self.num_directions() - 1)) as u32,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.num_letters()).map(|i| self.letter(i))
    }

    pub fn prop(&self, name: &str) -> Option<Prop> {
        if let Some(i) = self.inputs.iter().position(|p| p == name) {
            return Some(Prop::Input(i));
        }
        self.outputs
            .iter()
            .position(|p| p == name)
            .map(Prop::Output)
    }

    pub fn format_output(&self, output: u32) -> String {
        format_set(&self.outputs, output)
    }

    pub fn format_input(&self, input: u32) -> String {
        format_set(&self.inputs, input)
    }

    /// Renders a letter as `(output-set,input-set)`, e.g. `({f},{c,e})`.
    pub fn format_letter(&self, letter: Letter) -> String {
        format!(
            "({},{})",
            self.format_output(letter.output),
            self.format_input(letter.input)
        )
    }

    pub fn parse_output(&self, text: &str) -> Result<u32> {
        parse_set(&self.outputs, text)
    }

    pub fn parse_input(&self, text: &str) -> Result<u32> {
        parse_set(&self.inputs, text)
    }

    /// Parses the `(output-set,input-set)` rendering produced by
    /// [`Signature::format_letter`].
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let text = text.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::format(0, format!("malformed letter `{text}`")))?;
        let split = inner
            .find('}')
            .ok_or_else(|| Error::format(0, format!("malformed letter `{text}`")))?;
        let (out, rest) = inner.split_at(split + 1);
        let rest = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| Error::format(0, format!("malformed letter `{text}`")))?;
        Ok(Letter {
            output: self.parse_output(out)?,
            input: self.parse_input(rest)?,
        })
    }
}

fn format_set(names: &[String], bits: u32) -> String {
    let members: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| bits & (1 << i) != 0)
        .map(|(_, n)| n.as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

fn parse_set(names: &[String], text: &str) -> Result<u32> {
    let text = text.trim();
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::format(0, format!("expected a set like {{a,b}}, got `{text}`")))?;
    let mut bits = 0;
    for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UndeclaredProposition(name.to_owned()))?;
        bits |= 1 << i;
    }
    Ok(bits)
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_reserved(s: &str) -> bool {
    matches!(s, "X" | "F" | "G" | "U" | "R" | "true" | "false")
}

/// One step of a run: the output emitted, then the input read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter {
    pub output: u32,
    pub input: u32,
}

impl Letter {
    pub fn new(output: u32, input: u32) -> Self {
        Letter { output, input }
    }

    pub fn holds(&self, prop: Prop) -> bool {
        match prop {
            Prop::Input(i) => self.input & (1 << i) != 0,
            Prop::Output(i) => self.output & (1 << i) != 0,
        }
    }
}

/// An ultimately periodic word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub stem: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl Lasso {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        Lasso { stem, cycle }
    }

    /// Number of distinct suffix positions.
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, position: usize) -> Letter {
        if position < self.stem.len() {
            self.stem[position]
        } else {
            self.cycle[(position - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Successor of a suffix position inside `0..len()`.
    pub fn next_position(&self, position: usize) -> usize {
        if position + 1 < self.len() {
            position + 1
        } else {
            self.stem.len()
        }
    }

    /// The first `n` letters of the infinite word.
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.at(i)).collect()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> LassoDisplay<'a> {
        LassoDisplay { lasso: self, sig }
    }
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    sig: &'a Signature,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |letters: &[Letter]| {
            letters
                .iter()
                .map(|l| format!(" {}", self.sig.format_letter(*l)))
                .collect::<String>()
        };
        writeln!(f, "stem:{}", render(&self.lasso.stem))?;
        write!(f, "loop:{}", render(&self.lasso.cycle))
    }
}
