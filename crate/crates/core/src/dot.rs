//! Graphviz renderings of automata and games, for debugging.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::game::{ParityGame, Player};
use crate::tree::ParityTreeAutomaton;
use crate::word::ParityWordAutomaton;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn word_to_dot(a: &ParityWordAutomaton) -> String {
    let sig = a.signature();
    let mut out = String::from("digraph word {\n  rankdir=LR;\n  init [shape=point];\n");
    for q in 0..a.num_states() {
        let shape = if a.color(q).is_multiple_of(2) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  q{q} [shape={shape}, label=\"q{q} / {}\"];",
            a.color(q)
        );
    }
    let _ = writeln!(out, "  init -> q{};", a.initial());
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for q in 0..a.num_states() {
        for l in sig.letters() {
            for &t in a.successors(q, l) {
                edges.entry((q, t)).or_default().push(sig.format_letter(l));
            }
        }
    }
    for ((q, t), labels) in edges {
        let _ = writeln!(
            out,
            "  q{q} -> q{t} [label=\"{}\"];",
            escape(&labels.join("\\n"))
        );
    }
    out.push_str("}\n");
    out
}

pub fn tree_to_dot(a: &ParityTreeAutomaton) -> String {
    let sig = a.signature();
    let mut out = String::from("digraph tree {\n  rankdir=LR;\n  init [shape=point];\n");
    for q in 0..a.num_states() {
        let shape = if a.color(q).is_multiple_of(2) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  q{q} [shape={shape}, label=\"q{q} / {}\"];",
            a.color(q)
        );
    }
    let _ = writeln!(out, "  init -> q{};", a.initial());
    for q in 0..a.num_states() {
        for (i, t) in a.transitions(q).iter().enumerate() {
            let _ = writeln!(
                out,
                "  t{q}_{i} [shape=box, label=\"{}\"];\n  q{q} -> t{q}_{i};",
                escape(&sig.format_output(t.label))
            );
            for (x, &target) in t.targets.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  t{q}_{i} -> q{target} [label=\"{}\"];",
                    escape(&sig.format_input(x as u32))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn game_to_dot(g: &ParityGame) -> String {
    let mut out = String::from("digraph game {\n");
    for v in 0..g.num_vertices() {
        let shape = match g.owner(v) {
            Player::Output => "circle",
            Player::Input => "box",
        };
        let _ = writeln!(
            out,
            "  v{v} [shape={shape}, label=\"v{v} / {}\"];",
            g.color(v)
        );
    }
    for v in 0..g.num_vertices() {
        for &w in g.successors(v) {
            let _ = writeln!(out, "  v{v} -> v{w};");
        }
    }
    out.push_str("}\n");
    out
}
