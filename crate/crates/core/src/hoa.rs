//! A subset of the HOA v1 format for state-based parity word automata.
//!
//! The alphabet split is carried by the non-standard header `spec-io: k`:
//! the first `k` atomic propositions of `AP:` are inputs, the rest outputs.
//! Accepted acceptance conditions are `parity max even n` (state color `c`
//! is written as the acceptance set `{c}`), Büchi (`Inf(0)`; marked states
//! get color 2, the others color 1) and `t` (all states safe, color 0).
//! Edges must carry explicit labels; transition-based marks are rejected.

use std::collections::VecDeque;
use std::fmt::Write;

use crate::alphabet::{Letter, Prop, Signature};
use crate::error::{Error, Result};
use crate::word::ParityWordAutomaton;

/// Canonical acceptance formula of `parity max even n`.
pub fn parity_max_even_formula(n: u32) -> String {
    fn from(set: u32) -> String {
        let atom = if set.is_multiple_of(2) {
            format!("Inf({set})")
        } else {
            format!("Fin({set})")
        };
        match set {
            0 => atom,
            1 => format!("{atom} & {}", from(0)),
            _ => {
                let op = if set.is_multiple_of(2) { '|' } else { '&' };
                format!("{atom} {op} ({})", from(set - 1))
            }
        }
    }
    if n == 0 {
        "f".to_owned()
    } else {
        from(n - 1)
    }
}

/// Serializes an automaton with states renumbered breadth-first from the
/// initial state (letters in index order); unreachable states follow in
/// their original order.
pub fn write_hoa(a: &ParityWordAutomaton) -> String {
    let sig = a.signature();
    let n = a.num_states();
    let mut order = Vec::with_capacity(n);
    let mut id = vec![usize::MAX; n];
    let mut queue = VecDeque::from([a.initial()]);
    id[a.initial()] = 0;
    order.push(a.initial());
    while let Some(q) = queue.pop_front() {
        for l in sig.letters() {
            for &t in a.successors(q, l) {
                if id[t] == usize::MAX {
                    id[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
    }
    for (q, slot) in id.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = order.len();
            order.push(q);
        }
    }

    let sets = a.max_color() + 1;
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    let _ = writeln!(out, "States: {n}");
    out.push_str("Start: 0\n");
    let _ = write!(
        out,
        "AP: {}",
        sig.num_input_props() + sig.num_output_props()
    );
    for name in sig.inputs().iter().chain(sig.outputs()) {
        let _ = write!(out, " \"{name}\"");
    }
    out.push('\n');
    let _ = writeln!(out, "spec-io: {}", sig.num_input_props());
    let _ = writeln!(out, "acc-name: parity max even {sets}");
    let _ = writeln!(out, "Acceptance: {sets} {}", parity_max_even_formula(sets));
    out.push_str("properties: explicit-labels state-acc\n");
    out.push_str("--BODY--\n");
    for &q in &order {
        let _ = writeln!(out, "State: {} {{{}}}", id[q], a.color(q));
        for l in sig.letters() {
            let mut targets: Vec<usize> = a.successors(q, l).iter().map(|&t| id[t]).collect();
            targets.sort_unstable();
            for t in targets {
                let _ = writeln!(out, "[{}] {}", letter_label(sig, l), t);
            }
        }
    }
    out.push_str("--END--\n");
    out
}

fn letter_label(sig: &Signature, l: Letter) -> String {
    let ni = sig.num_input_props();
    let total = ni + sig.num_output_props();
    if total == 0 {
        return "t".to_owned();
    }
    (0..total)
        .map(|j| {
            let prop = if j < ni {
                Prop::Input(j)
            } else {
                Prop::Output(j - ni)
            };
            if l.holds(prop) {
                j.to_string()
            } else {
                format!("!{j}")
            }
        })
        .collect::<Vec<_>>()
        .join("&")
}

/// Reads an automaton whose signature comes from the `AP:` and `spec-io:`
/// headers.
pub fn read_hoa(text: &str) -> Result<ParityWordAutomaton> {
    let doc = Document::parse(text)?;
    let k = doc
        .spec_io
        .ok_or_else(|| Error::hoa(doc.ap_line, "missing `spec-io:` header"))?;
    if k > doc.aps.len() {
        return Err(Error::hoa(
            doc.ap_line,
            "`spec-io:` exceeds the number of APs",
        ));
    }
    let sig = Signature::new(&doc.aps[..k], &doc.aps[k..])?;
    doc.build(&sig)
}

/// Reads an automaton over a given signature, matching APs by name. A
/// `spec-io:` header, if present, must agree with the signature.
pub fn read_hoa_with_signature(text: &str, sig: &Signature) -> Result<ParityWordAutomaton> {
    let doc = Document::parse(text)?;
    for (j, name) in doc.aps.iter().enumerate() {
        let prop = sig
            .prop(name)
            .ok_or_else(|| Error::UndeclaredProposition(name.clone()))?;
        if let Some(k) = doc.spec_io {
            let is_input = matches!(prop, Prop::Input(_));
            if is_input != (j < k) {
                return Err(Error::SignatureMismatch(format!(
                    "`{name}` is {} in the signature but not in the HOA header",
                    if is_input { "an input" } else { "an output" }
                )));
            }
        }
    }
    doc.build(sig)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AcceptanceKind {
    Parity(u32),
    Buchi,
    All,
}

#[derive(Debug)]
enum Label {
    True,
    False,
    Ap(usize),
    Not(Box<Label>),
    And(Box<Label>, Box<Label>),
    Or(Box<Label>, Box<Label>),
}

impl Label {
    fn eval(&self, val: &dyn Fn(usize) -> bool) -> bool {
        match self {
            Label::True => true,
            Label::False => false,
            Label::Ap(j) => val(*j),
            Label::Not(a) => !a.eval(val),
            Label::And(a, b) => a.eval(val) && b.eval(val),
            Label::Or(a, b) => a.eval(val) || b.eval(val),
        }
    }
}

struct Edge {
    from: usize,
    label: Label,
    to: usize,
}

struct Document {
    states: usize,
    start: usize,
    aps: Vec<String>,
    ap_line: usize,
    spec_io: Option<usize>,
    acceptance: AcceptanceKind,
    marks: Vec<Option<u32>>,
    edges: Vec<Edge>,
}

fn header_error(line: usize, name: &str) -> Error {
    Error::hoa(line, format!("malformed `{name}` header"))
}

/// Splits a header value into whitespace-separated tokens, keeping quoted
/// strings (without quotes) as single tokens.
fn header_tokens(line: usize, text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some('\\') => s.extend(chars.next()),
                    Some(c) => s.push(c),
                    None => return Err(Error::hoa(line, "unterminated string")),
                }
            }
            out.push(s);
        } else {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                s.push(c);
                chars.next();
            }
            out.push(s);
        }
    }
    Ok(out)
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::hoa(line, format!("expected a number, got `{s}`")))
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl Document {
    fn parse(text: &str) -> Result<Document> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut states = None;
        let mut start = None;
        let mut aps = None;
        let mut ap_line = 1;
        let mut spec_io = None;
        let mut acc_name: Option<(usize, Vec<String>)> = None;
        let mut acceptance: Option<(usize, String)> = None;
        let mut seen_version = false;
        let mut in_body = false;

        for (ln, line) in lines.by_ref() {
            if line.is_empty() {
                continue;
            }
            if line == "--BODY--" {
                in_body = true;
                break;
            }
            let (name, value) = line
                .split_once(':')
                .ok_or_else(|| Error::hoa(ln, format!("expected a header, got `{line}`")))?;
            let value = value.trim();
            match name {
                "HOA" => {
                    if value != "v1" {
                        return Err(Error::hoa(ln, format!("unsupported version `{value}`")));
                    }
                    seen_version = true;
                }
                "States" => states = Some(parse_usize(ln, value)?),
                "Start" => {
                    if start.is_some() {
                        return Err(Error::hoa(ln, "multiple initial states are not supported"));
                    }
                    if value.contains('&') {
                        return Err(Error::hoa(ln, "alternating start is not supported"));
                    }
                    start = Some(parse_usize(ln, value)?);
                }
                "AP" => {
                    let tokens = header_tokens(ln, value)?;
                    let (count, names) =
                        tokens.split_first().ok_or_else(|| header_error(ln, "AP"))?;
                    if parse_usize(ln, count)? != names.len() {
                        return Err(Error::hoa(ln, "AP count does not match the listed names"));
                    }
                    aps = Some(names.to_vec());
                    ap_line = ln;
                }
                "spec-io" => spec_io = Some(parse_usize(ln, value)?),
                "acc-name" => acc_name = Some((ln, header_tokens(ln, value)?)),
                "Acceptance" => acceptance = Some((ln, value.to_owned())),
                "Alias" => return Err(Error::hoa(ln, "aliases are not supported")),
                _ => {}
            }
        }
        if !seen_version {
            return Err(Error::hoa(1, "missing `HOA: v1` header"));
        }
        if !in_body {
            return Err(Error::hoa(text.lines().count(), "missing `--BODY--`"));
        }
        let states = states.ok_or_else(|| Error::hoa(1, "missing `States:` header"))?;
        let start = start.ok_or_else(|| Error::hoa(1, "missing `Start:` header"))?;
        if start >= states {
            return Err(Error::hoa(1, "initial state out of range"));
        }
        let aps = aps.unwrap_or_default();
        let (acc_line, acc_text) =
            acceptance.ok_or_else(|| Error::hoa(1, "missing `Acceptance:` header"))?;
        let kind = Self::acceptance_kind(acc_line, &acc_text, acc_name.as_ref())?;

        let mut marks = vec![None; states];
        let mut edges = Vec::new();
        let mut current: Option<usize> = None;
        let mut ended = false;
        for (ln, line) in lines {
            if line.is_empty() {
                continue;
            }
            if line == "--END--" {
                ended = true;
                break;
            }
            if let Some(rest) = line.strip_prefix("State:") {
                let rest = rest.trim();
                if rest.starts_with('[') {
                    return Err(Error::hoa(ln, "state labels are not supported"));
                }
                let (id_text, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let q = parse_usize(ln, id_text)?;
                if q >= states {
                    return Err(Error::hoa(ln, format!("state {q} out of range")));
                }
                marks[q] = parse_marks(ln, tail)?;
                current = Some(q);
                continue;
            }
            let from = current.ok_or_else(|| Error::hoa(ln, "edge before any `State:`"))?;
            let rest = line
                .strip_prefix('[')
                .ok_or_else(|| Error::hoa(ln, "edges must carry explicit labels"))?;
            let close = rest
                .find(']')
                .ok_or_else(|| Error::hoa(ln, "unterminated edge label"))?;
            let label = LabelParser::new(ln, &rest[..close]).parse(aps.len())?;
            let tail = rest[close + 1..].trim();
            let (target, acc) = tail.split_once(char::is_whitespace).unwrap_or((tail, ""));
            if target.contains('&') {
                return Err(Error::hoa(ln, "universal branching is not supported"));
            }
            if !acc.trim().is_empty() {
                return Err(Error::hoa(
                    ln,
                    "transition-based acceptance is not supported",
                ));
            }
            let to = parse_usize(ln, target)?;
            if to >= states {
                return Err(Error::hoa(ln, format!("state {to} out of range")));
            }
            edges.push(Edge { from, label, to });
        }
        if !ended {
            return Err(Error::hoa(text.lines().count(), "missing `--END--`"));
        }
        Ok(Document {
            states,
            start,
            aps,
            ap_line,
            spec_io,
            acceptance: kind,
            marks,
            edges,
        })
    }

    fn acceptance_kind(
        line: usize,
        text: &str,
        name: Option<&(usize, Vec<String>)>,
    ) -> Result<AcceptanceKind> {
        let (count, formula) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let sets: u32 = count
            .parse()
            .map_err(|_| header_error(line, "Acceptance"))?;
        let formula = normalize(formula);
        if sets == 0 && formula == "t" {
            return Ok(AcceptanceKind::All);
        }
        if sets == 1 && formula == "Inf(0)" {
            let parity =
                matches!(name, Some((_, n)) if n.first().map(String::as_str) == Some("parity"));
            if !parity {
                return Ok(AcceptanceKind::Buchi);
            }
        }
        if let Some((ln, tokens)) = name {
            let t: Vec<&str> = tokens.iter().map(String::as_str).collect();
            match t.as_slice() {
                ["parity", "max", "even", n] => {
                    let n: u32 = n.parse().map_err(|_| header_error(*ln, "acc-name"))?;
                    if n != sets {
                        return Err(Error::hoa(*ln, "acc-name and Acceptance disagree"));
                    }
                }
                ["parity", ..] => {
                    return Err(Error::hoa(*ln, "only `parity max even` is supported"));
                }
                _ => {}
            }
        }
        if formula == normalize(&parity_max_even_formula(sets)) {
            Ok(AcceptanceKind::Parity(sets))
        } else {
            Err(Error::hoa(
                line,
                format!("unsupported acceptance condition `{text}`"),
            ))
        }
    }

    fn build(&self, sig: &Signature) -> Result<ParityWordAutomaton> {
        let mut colors = Vec::with_capacity(self.states);
        for (q, mark) in self.marks.iter().enumerate() {
            let color = match (self.acceptance, mark) {
                (AcceptanceKind::All, None) => 0,
                (AcceptanceKind::Buchi, None) => 1,
                (AcceptanceKind::Buchi, Some(0)) => 2,
                (AcceptanceKind::Parity(n), Some(c)) if *c < n => *c,
                (AcceptanceKind::Parity(_), None) => {
                    return Err(Error::hoa(0, format!("state {q} carries no color")));
                }
                _ => return Err(Error::hoa(0, format!("state {q} has an invalid mark"))),
            };
            colors.push(color);
        }
        let props: Vec<Prop> = self
            .aps
            .iter()
            .map(|name| {
                sig.prop(name)
                    .ok_or_else(|| Error::UndeclaredProposition(name.clone()))
            })
            .collect::<Result<_>>()?;
        let mut a = ParityWordAutomaton::new(sig.clone(), colors, self.start);
        for e in &self.edges {
            for l in sig.letters() {
                if e.label.eval(&|j| l.holds(props[j])) {
                    a.add_transition(e.from, l, e.to);
                }
            }
        }
        Ok(a)
    }
}

fn parse_marks(line: usize, text: &str) -> Result<Option<u32>> {
    let text = match text.find('{') {
        Some(i) => &text[i..],
        None => return Ok(None),
    };
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::hoa(line, "malformed acceptance marks"))?;
    let sets: Vec<&str> = inner.split_whitespace().collect();
    match sets.as_slice() {
        [] => Ok(None),
        [one] => one
            .parse()
            .map(Some)
            .map_err(|_| Error::hoa(line, format!("bad acceptance set `{one}`"))),
        _ => Err(Error::hoa(line, "a state may carry at most one color")),
    }
}

struct LabelParser<'a> {
    line: usize,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> LabelParser<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        LabelParser {
            line,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self, num_aps: usize) -> Result<Label> {
        let l = self.or(num_aps)?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.error("trailing characters in label"));
        }
        Ok(l)
    }

    fn error(&self, msg: &str) -> Error {
        Error::hoa(self.line, format!("{msg} (column {})", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self, n: usize) -> Result<Label> {
        let mut l = self.and(n)?;
        while self.eat(b'|') {
            l = Label::Or(Box::new(l), Box::new(self.and(n)?));
        }
        Ok(l)
    }

    fn and(&mut self, n: usize) -> Result<Label> {
        let mut l = self.unary(n)?;
        while self.eat(b'&') {
            l = Label::And(Box::new(l), Box::new(self.unary(n)?));
        }
        Ok(l)
    }

    fn unary(&mut self, n: usize) -> Result<Label> {
        if self.eat(b'!') {
            return Ok(Label::Not(Box::new(self.unary(n)?)));
        }
        if self.eat(b'(') {
            let l = self.or(n)?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(l);
        }
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b't') => {
                self.pos += 1;
                Ok(Label::True)
            }
            Some(b'f') => {
                self.pos += 1;
                Ok(Label::False)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
                let j: usize = text.parse().map_err(|_| self.error("bad AP index"))?;
                if j >= n {
                    return Err(self.error(&format!("AP index {j} out of range")));
                }
                Ok(Label::Ap(j))
            }
            _ => Err(self.error("expected a label expression")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_formulas() {
        assert_eq!(parity_max_even_formula(1), "Inf(0)");
        assert_eq!(parity_max_even_formula(2), "Fin(1) & Inf(0)");
        assert_eq!(parity_max_even_formula(3), "Inf(2) | (Fin(1) & Inf(0))");
        assert_eq!(
            parity_max_even_formula(4),
            "Fin(3) & (Inf(2) | (Fin(1) & Inf(0)))"
        );
    }

    #[test]
    fn round_trip_safety_automaton() {
        let sig = Signature::new(&["c"], &["b"]).unwrap();
        let mut a = ParityWordAutomaton::new(sig.clone(), vec![0, 0], 0);
        a.add_transition(0, Letter::new(0, 1), 1);
        a.add_transition(0, Letter::new(0, 0), 0);
        a.add_transition(1, Letter::new(1, 0), 0);
        let text = write_hoa(&a);
        let b = read_hoa(&text).unwrap();
        assert_eq!(write_hoa(&b), text);
        assert_eq!(b.num_transitions(), 3);
    }

    #[test]
    fn reads_buchi_and_parity() {
        let buchi = "HOA: v1\nStates: 2\nStart: 0\nAP: 1 \"b\"\nspec-io: 0\nacc-name: Buchi\n\
                     Acceptance: 1 Inf(0)\n--BODY--\nState: 0\n[t] 0\n[0] 1\nState: 1 {0}\n[t] 1\n--END--\n";
        let a = read_hoa(buchi).unwrap();
        assert_eq!(a.colors(), &[1, 2]);
        assert!(!a.is_deterministic());

        let parity = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"b\"\nspec-io: 0\n\
                      acc-name: parity max even 3\nAcceptance: 3 Inf(2) | (Fin(1) & Inf(0))\n\
                      --BODY--\nState: 0 {2}\n[!0] 0\n--END--\n";
        let p = read_hoa(parity).unwrap();
        assert_eq!(p.colors(), &[2]);
    }

    #[test]
    fn rejects_bad_input() {
        let rabin =
            "HOA: v1\nStates: 1\nStart: 0\nAP: 0\nspec-io: 0\nAcceptance: 2 Fin(0) & Inf(1)\n\
                     --BODY--\nState: 0 {1}\n[t] 0\n--END--\n";
        assert!(matches!(read_hoa(rabin), Err(Error::Hoa { .. })));
        let undeclared = "HOA: v1\nStates: 1\nStart: 0\nAP: 1 \"z\"\nAcceptance: 0 t\n\
                          --BODY--\nState: 0\n[0] 0\n--END--\n";
        let sig = Signature::new(&["c"], &["b"]).unwrap();
        assert_eq!(
            read_hoa_with_signature(undeclared, &sig),
            Err(Error::UndeclaredProposition("z".into()))
        );
        assert!(matches!(read_hoa("States: 1\n"), Err(Error::Hoa { .. })));
    }
}
