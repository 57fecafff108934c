//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! term    := ident | 0 | 1 | term ^ term | term v term | ( term )
//! atom    := term = term | term <= term
//! formula := atom | !formula | formula & formula | formula | formula
//!          | formula -> formula | A x. formula | E x. formula | ( formula )
//! ```
//!
//! `^` binds tighter than `v`; `!` > `&` > `|` > `->`; `&`, `|`, `^`, `v`
//! associate to the left and `->` to the right. A quantifier's scope runs as
//! far right as possible. `A`, `E` and `v` are reserved words.

use super::ast::{Formula, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Meet,
    Join,
    Eq,
    Le,
    Not,
    And,
    Or,
    Implies,
    Forall,
    Exists,
    Dot,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::End => "end of input".to_string(),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::Meet => "`^`".into(),
            Tok::Join => "`v`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Forall => "`A`".into(),
            Tok::Exists => "`E`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'^' => Tok::Meet,
            b'=' => Tok::Eq,
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'.' => Tok::Dot,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Le
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                match &text[start..=i] {
                    "0" => Tok::Zero,
                    "1" => Tok::One,
                    other => return Err(syntax(start, format!("unexpected number `{other}`"))),
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "A" => Tok::Forall,
                    "E" => Tok::Exists,
                    "v" => Tok::Join,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!(
                    "expected {}, found {}",
                    want.describe(),
                    self.peek().describe()
                ),
            ))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.formula()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    other => {
                        self.pos -= usize::from(other != Tok::End);
                        return Err(syntax(
                            self.offset(),
                            format!("expected a variable, found {}", other.describe()),
                        ));
                    }
                };
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if universal {
                    Formula::forall(&var, body)
                } else {
                    Formula::exists(&var, body)
                })
            }
            Tok::LParen => {
                // Either a parenthesized term starting an atom or a
                // parenthesized formula: try the atom first.
                let save = self.pos;
                match self.atom() {
                    Ok(f) => Ok(f),
                    Err(atom_err) => {
                        let atom_pos = self.pos;
                        self.pos = save;
                        self.bump();
                        match self.formula().and_then(|f| {
                            self.expect(Tok::RParen)?;
                            Ok(f)
                        }) {
                            Ok(f) => Ok(f),
                            Err(e) => {
                                // report whichever attempt got further
                                if atom_pos > self.pos {
                                    Err(atom_err)
                                } else {
                                    Err(e)
                                }
                            }
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::Le => {
                self.bump();
                Ok(Formula::Le(lhs, self.term()?))
            }
            other => Err(syntax(
                self.offset(),
                format!("expected `=` or `<=`, found {}", other.describe()),
            )),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.meet_term()?;
        while *self.peek() == Tok::Join {
            self.bump();
            lhs = lhs.join(self.meet_term()?);
        }
        Ok(lhs)
    }

    fn meet_term(&mut self) -> Result<Term> {
        let mut lhs = self.term_factor()?;
        while *self.peek() == Tok::Meet {
            self.bump();
            lhs = lhs.meet(self.term_factor()?);
        }
        Ok(lhs)
    }

    fn term_factor(&mut self) -> Result<Term> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(v) => Ok(Term::Var(v)),
            Tok::Zero => Ok(Term::Zero),
            Tok::One => Ok(Term::One),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => {
                self.pos -= usize::from(other != Tok::End);
                Err(syntax(
                    at,
                    format!("expected a term, found {}", other.describe()),
                ))
            }
        }
    }
}

/// Parses a formula; identifiers left free become parameters.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} after formula", p.peek().describe()),
        ));
    }
    f.check_well_formed()?;
    Ok(f)
}

/// Parses a formula whose free identifiers must all be among `params`;
/// anything else is reported as an unbound variable.
pub fn parse_with_params<S: AsRef<str>>(text: &str, params: &[S]) -> Result<Formula> {
    let f = parse(text)?;
    f.check_params(params)?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::var(s)
    }

    #[test]
    fn forall_le_one() {
        assert_eq!(
            parse("A x. x <= 1").unwrap(),
            Formula::forall("x", v("x").le(Term::One))
        );
    }

    #[test]
    fn existential_with_parameter() {
        let f = parse("E y. (y ^ a = 0) & (y v a = 1)").unwrap();
        assert_eq!(
            f,
            Formula::exists(
                "y",
                v("y")
                    .meet(v("a"))
                    .is_zero()
                    .and(v("y").join(v("a")).equals(Term::One))
            )
        );
        assert_eq!(f.params().into_iter().collect::<Vec<_>>(), vec!["a"]);
    }

    #[test]
    fn missing_dot_reports_second_x() {
        assert_eq!(
            parse("A x x").unwrap_err(),
            Error::Syntax {
                pos: 4,
                msg: "expected `.`, found identifier `x`".into()
            }
        );
    }

    #[test]
    fn unbound_variable_named() {
        assert_eq!(
            parse_with_params("A x. x <= b", &["a"]).unwrap_err(),
            Error::UnboundVariable("b".into())
        );
    }

    #[test]
    fn precedence() {
        // ! > & > | > ->, meet over join
        let f = parse("!a = 0 & b = 0 | c = 0 -> d = 0 -> x ^ y v z = 1").unwrap();
        let expected = v("a")
            .is_zero()
            .not()
            .and(v("b").is_zero())
            .or(v("c").is_zero())
            .implies(
                v("d")
                    .is_zero()
                    .implies(v("x").meet(v("y")).join(v("z")).equals(Term::One)),
            );
        assert_eq!(f, expected);
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse("a = 0 & A x. x = 0 | x = 1").unwrap();
        assert_eq!(
            f,
            v("a").is_zero().and(Formula::forall(
                "x",
                v("x").is_zero().or(v("x").equals(Term::One))
            ))
        );
    }

    #[test]
    fn parenthesized_term_vs_formula() {
        assert_eq!(
            parse("(x v y) ^ z = 0").unwrap(),
            v("x").join(v("y")).meet(v("z")).is_zero()
        );
        assert_eq!(parse("((x = 0))").unwrap(), v("x").is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("x = "), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x = 2"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(
            parse("x = 0 )"),
            Err(Error::Syntax { pos: 6, .. })
        ));
        assert!(matches!(parse("(x = 0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("x # 0"), Err(Error::Syntax { pos: 2, .. })));
        assert!(parse("A x. E x. x = 0").is_err());
    }
}
