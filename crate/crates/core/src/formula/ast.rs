use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

/// First-order formula over the lattice signature `{⊓, ⊔, 0, 1, ≤, =}`.
///
/// Identifiers that are not bound by an enclosing quantifier are parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    /// Meet of a nonempty list, associated to the left.
    pub fn meet_all(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().reduce(Term::meet).expect("nonempty meet")
    }

    pub fn join_all(terms: impl IntoIterator<Item = Term>) -> Term {
        terms.into_iter().reduce(Term::join).expect("nonempty join")
    }

    pub fn equals(self, other: Term) -> Formula {
        Formula::Eq(self, other)
    }

    pub fn le(self, other: Term) -> Formula {
        Formula::Le(self, other)
    }

    pub fn is_zero(self) -> Formula {
        Formula::Eq(self, Term::Zero)
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn substitute(&self, name: &str, with: &Term) -> Term {
        match self {
            Term::Var(v) if v == name => with.clone(),
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Meet(a, b) => a.substitute(name, with).meet(b.substitute(name, with)),
            Term::Join(a, b) => a.substitute(name, with).join(b.substitute(name, with)),
        }
    }
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall_many<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::forall(v.as_ref(), acc))
    }

    pub fn exists_many<S: AsRef<str>>(vars: &[S], body: Formula) -> Formula {
        vars.iter()
            .rev()
            .fold(body, |acc, v| Formula::exists(v.as_ref(), acc))
    }

    /// Conjunction of a nonempty list, associated to the left.
    pub fn and_all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .expect("nonempty conjunction")
    }

    /// Free identifiers, i.e. the parameters of the formula.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                let mut vars = BTreeSet::new();
                a.collect_vars(&mut vars);
                b.collect_vars(&mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Forall(v, _) | Formula::Exists(v, _) = f {
                out.insert(v.clone());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Eq(..) | Formula::Le(..) => {}
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        let mut qf = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Forall(..) | Formula::Exists(..)) {
                qf = false;
            }
        });
        qf
    }

    /// Checks that no quantifier rebinds a variable already in scope and
    /// that parameter names never reuse a bound name.
    pub fn check_well_formed(&self) -> Result<()> {
        fn walk(f: &Formula, scope: &mut Vec<String>) -> Result<()> {
            match f {
                Formula::Eq(..) | Formula::Le(..) => Ok(()),
                Formula::Not(g) => walk(g, scope),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, scope)?;
                    walk(b, scope)
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    if scope.contains(v) {
                        return Err(Error::input(format!(
                            "variable `{v}` is bound twice in the same scope"
                        )));
                    }
                    scope.push(v.clone());
                    let r = walk(g, scope);
                    scope.pop();
                    r
                }
            }
        }
        walk(self, &mut Vec::new())?;
        let bound = self.bound_vars();
        if let Some(clash) = self.params().intersection(&bound).next() {
            return Err(Error::input(format!(
                "`{clash}` is used both as a parameter and as a bound variable"
            )));
        }
        Ok(())
    }

    /// Rejects parameters outside `allowed`.
    pub fn check_params<S: AsRef<str>>(&self, allowed: &[S]) -> Result<()> {
        match self
            .params()
            .into_iter()
            .find(|p| !allowed.iter().any(|a| a.as_ref() == p))
        {
            Some(p) => Err(Error::UnboundVariable(p)),
            None => Ok(()),
        }
    }

    /// Replaces free occurrences of the parameter `name` by `with`.
    ///
    /// The caller is responsible for `with` not mentioning variables bound
    /// inside `self`; the builders use level-suffixed names for that.
    pub fn substitute(&self, name: &str, with: &Term) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(name, with), b.substitute(name, with)),
            Formula::Le(a, b) => Formula::Le(a.substitute(name, with), b.substitute(name, with)),
            Formula::Not(f) => f.substitute(name, with).not(),
            Formula::And(a, b) => a.substitute(name, with).and(b.substitute(name, with)),
            Formula::Or(a, b) => a.substitute(name, with).or(b.substitute(name, with)),
            Formula::Implies(a, b) => a.substitute(name, with).implies(b.substitute(name, with)),
            Formula::Forall(v, _) | Formula::Exists(v, _) if v == name => self.clone(),
            Formula::Forall(v, f) => Formula::forall(v, f.substitute(name, with)),
            Formula::Exists(v, f) => Formula::exists(v, f.substitute(name, with)),
        }
    }

    /// Splits a leading block of existential quantifiers from its matrix.
    pub fn existential_block(&self) -> (Vec<String>, &Formula) {
        let mut vars = Vec::new();
        let mut cur = self;
        while let Formula::Exists(v, body) = cur {
            vars.push(v.clone());
            cur = body;
        }
        (vars, cur)
    }

    /// Number of nodes, counting terms.
    pub fn size(&self) -> usize {
        fn term_size(t: &Term) -> usize {
            match t {
                Term::Var(_) | Term::Zero | Term::One => 1,
                Term::Meet(a, b) | Term::Join(a, b) => 1 + term_size(a) + term_size(b),
            }
        }
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => 1 + term_size(a) + term_size(b),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_bound() {
        let f = Formula::exists("y", Term::var("y").meet(Term::var("a")).is_zero());
        assert_eq!(f.params().into_iter().collect::<Vec<_>>(), vec!["a"]);
        assert_eq!(f.bound_vars().into_iter().collect::<Vec<_>>(), vec!["y"]);
    }

    #[test]
    fn shadowing_rejected() {
        let f = Formula::forall("x", Formula::exists("x", Term::var("x").is_zero()));
        assert!(f.check_well_formed().is_err());
        let g = Formula::forall("x", Term::var("x").is_zero()).and(Term::var("x").is_zero());
        assert!(g.check_well_formed().is_err());
    }

    #[test]
    fn substitution_respects_binding() {
        let f =
            Formula::forall("x", Term::var("x").le(Term::var("a"))).and(Term::var("x").is_zero());
        let g = f.substitute("x", &Term::One);
        assert_eq!(
            g,
            Formula::forall("x", Term::var("x").le(Term::var("a"))).and(Term::One.is_zero())
        );
    }
}
