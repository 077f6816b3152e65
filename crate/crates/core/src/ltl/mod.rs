//! LTL formulas over a partitioned signature.

mod nnf;
mod parser;

use std::fmt;

pub use parser::parse_ltl;

/// LTL abstract syntax. `Implies` and `Release` are kept as surface syntax;
/// [`Formula::to_nnf`] removes the former and uses the latter as the dual of
/// `Until`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_owned())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn finally(f: Formula) -> Formula {
        Formula::Finally(Box::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            True | False | Atom(_) => vec![],
            Not(a) | Next(a) | Finally(a) | Globally(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | Release(a, b) => vec![a, b],
        }
    }

    /// Proposition names in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Formula::Atom(p) = self {
            if !out.contains(&p.as_str()) {
                out.push(p);
            }
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// True iff negations occur only directly above atoms and no implication
    /// is left.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
            Formula::Implies(..) => false,
            _ => self.children().iter().all(|c| c.is_nnf()),
        }
    }

    fn level(&self) -> u8 {
        use Formula::*;
        match self {
            Implies(..) => 0,
            Until(..) | Release(..) => 1,
            Or(..) => 2,
            And(..) => 3,
            Not(_) | Next(_) | Finally(_) | Globally(_) => 4,
            True | False | Atom(_) => 5,
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    /// Prints with the minimal parentheses needed to parse back to the same
    /// tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let level = self.level();
        match self {
            True => write!(f, "true"),
            False => write!(f, "false"),
            Atom(p) => write!(f, "{p}"),
            Not(a) | Next(a) | Finally(a) | Globally(a) => {
                let op = match self {
                    Not(_) => "!",
                    Next(_) => "X",
                    Finally(_) => "F",
                    _ => "G",
                };
                let parens = a.level() < level;
                if parens || op == "!" {
                    write!(f, "{op}")?;
                } else {
                    write!(f, "{op} ")?;
                }
                write_child(f, a, parens)
            }
            // right-associative
            Implies(a, b) | Until(a, b) | Release(a, b) => {
                let op = match self {
                    Implies(..) => "->",
                    Until(..) => "U",
                    _ => "R",
                };
                write_child(f, a, a.level() <= level)?;
                write!(f, " {op} ")?;
                write_child(f, b, b.level() < level)
            }
            // left-associative
            And(a, b) | Or(a, b) => {
                let op = if matches!(self, And(..)) { "&" } else { "|" };
                write_child(f, a, a.level() < level)?;
                write!(f, " {op} ")?;
                write_child(f, b, b.level() <= level)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_minimal_parentheses() {
        let f = Formula::globally(Formula::implies(
            Formula::atom("c"),
            Formula::next(Formula::or(
                Formula::atom("f"),
                Formula::finally(Formula::atom("b")),
            )),
        ));
        assert_eq!(f.to_string(), "G(c -> X(f | F b))");

        let g = Formula::until(
            Formula::until(Formula::atom("a"), Formula::atom("b")),
            Formula::atom("c"),
        );
        assert_eq!(g.to_string(), "(a U b) U c");
        assert_eq!(
            Formula::not(Formula::not(Formula::atom("a"))).to_string(),
            "!!a"
        );
    }

    #[test]
    fn size_and_atoms() {
        let f = Formula::and(Formula::atom("a"), Formula::next(Formula::atom("a")));
        assert_eq!(f.size(), 4);
        assert_eq!(f.depth(), 3);
        assert_eq!(f.atoms(), vec!["a"]);
    }
}
