use super::Formula;

impl Formula {
    /// Negation normal form. `F` and `G` stay primitive; `R` is the dual of
    /// `U`; implications are eliminated.
    pub fn to_nnf(&self) -> Formula {
        push(self, false)
    }
}

fn push(f: &Formula, negate: bool) -> Formula {
    use Formula::*;
    match (f, negate) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(_), false) => f.clone(),
        (Atom(_), true) => Formula::not(f.clone()),
        (Not(a), n) => push(a, !n),
        (And(a, b), false) => Formula::and(push(a, false), push(b, false)),
        (And(a, b), true) => Formula::or(push(a, true), push(b, true)),
        (Or(a, b), false) => Formula::or(push(a, false), push(b, false)),
        (Or(a, b), true) => Formula::and(push(a, true), push(b, true)),
        (Implies(a, b), false) => Formula::or(push(a, true), push(b, false)),
        (Implies(a, b), true) => Formula::and(push(a, false), push(b, true)),
        (Next(a), n) => Formula::next(push(a, n)),
        (Finally(a), false) => Formula::finally(push(a, false)),
        (Finally(a), true) => Formula::globally(push(a, true)),
        (Globally(a), false) => Formula::globally(push(a, false)),
        (Globally(a), true) => Formula::finally(push(a, true)),
        (Until(a, b), false) => Formula::until(push(a, false), push(b, false)),
        (Until(a, b), true) => Formula::release(push(a, true), push(b, true)),
        (Release(a, b), false) => Formula::release(push(a, false), push(b, false)),
        (Release(a, b), true) => Formula::until(push(a, true), push(b, true)),
    }
}

#[cfg(test)]
mod tests {
    use crate::alphabet::Signature;
    use crate::ltl::parse_ltl;

    fn nnf(text: &str) -> String {
        let sig = Signature::new(&["a", "c"], &["b", "f"]).unwrap();
        parse_ltl(text, &sig).unwrap().to_nnf().to_string()
    }

    #[test]
    fn dualities() {
        assert_eq!(nnf("!G b"), "F !b");
        assert_eq!(nnf("!(a U b)"), "!a R !b");
        assert_eq!(nnf("G(c -> X f)"), "G(!c | X f)");
        assert_eq!(nnf("!(a -> X !b)"), "a & X b");
        assert_eq!(nnf("!!a"), "a");
        assert_eq!(nnf("!true | false"), "false | false");
    }
}
