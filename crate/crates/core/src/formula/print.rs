use std::fmt;

use super::ast::{Formula, Term};

// Binding strength; higher binds tighter.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

fn write_term(t: &Term, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // term precedence: join 1, meet 2
    match t {
        Term::Var(v) => f.write_str(v),
        Term::Zero => f.write_str("0"),
        Term::One => f.write_str("1"),
        Term::Join(a, b) => {
            if ctx > 1 {
                f.write_str("(")?;
            }
            write_term(a, 1, f)?;
            f.write_str(" v ")?;
            write_term(b, 2, f)?;
            if ctx > 1 {
                f.write_str(")")?;
            }
            Ok(())
        }
        Term::Meet(a, b) => {
            if ctx > 2 {
                f.write_str("(")?;
            }
            write_term(a, 2, f)?;
            f.write_str(" ^ ")?;
            write_term(b, 3, f)?;
            if ctx > 2 {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}

fn prec(phi: &Formula) -> u8 {
    match phi {
        Formula::Eq(..) | Formula::Le(..) => ATOM,
        Formula::Not(_) => NOT,
        Formula::And(..) => AND,
        Formula::Or(..) => OR,
        Formula::Implies(..) => IMPLIES,
        // a quantifier swallows everything to its right
        Formula::Forall(..) | Formula::Exists(..) => 0,
    }
}

/// `tail` is true when nothing follows the printed text at this nesting
/// level, which is the only place an unparenthesized quantifier may appear.
fn write_formula(phi: &Formula, ctx: u8, tail: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = prec(phi);
    let quantifier = p == 0;
    let paren = if quantifier { !tail } else { p < ctx };
    if paren {
        f.write_str("(")?;
    }
    let tail = tail || paren;
    match phi {
        Formula::Eq(a, b) => {
            write_term(a, 0, f)?;
            f.write_str(" = ")?;
            write_term(b, 0, f)?;
        }
        Formula::Le(a, b) => {
            write_term(a, 0, f)?;
            f.write_str(" <= ")?;
            write_term(b, 0, f)?;
        }
        Formula::Not(g) => {
            f.write_str("!")?;
            write_formula(g, NOT, tail, f)?;
        }
        Formula::And(a, b) => {
            write_formula(a, AND, false, f)?;
            f.write_str(" & ")?;
            write_formula(b, AND + 1, tail, f)?;
        }
        Formula::Or(a, b) => {
            write_formula(a, OR, false, f)?;
            f.write_str(" | ")?;
            write_formula(b, OR + 1, tail, f)?;
        }
        Formula::Implies(a, b) => {
            write_formula(a, IMPLIES + 1, false, f)?;
            f.write_str(" -> ")?;
            write_formula(b, IMPLIES, tail, f)?;
        }
        Formula::Forall(v, g) => {
            write!(f, "A {v}. ")?;
            write_formula(g, 0, true, f)?;
        }
        Formula::Exists(v, g) => {
            write!(f, "E {v}. ")?;
            write_formula(g, 0, true, f)?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, 0, f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, 0, true, f)
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::parse;

    #[test]
    fn prints_minimal_parentheses() {
        for text in [
            "A x. x <= 1",
            "E y. y ^ a = 0 & y v a = 1",
            "(A x. x = 0) & a = 0",
            "!(A x. x = 0) & a = 0",
            "a = 0 -> b = 0 -> c = 0",
            "(a = 0 -> b = 0) -> c = 0",
            "(x v y) ^ z = x ^ (y ^ z)",
            "!(a = 0 | b = 0)",
            "a = 0 & (b = 0 & c = 0)",
        ] {
            assert_eq!(parse(text).unwrap().to_string(), text);
        }
    }
}
