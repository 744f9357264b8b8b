//! Text syntax for laws.
//!
//! ```text
//! law  := [atom {"&" atom} "=>"] atom
//! atom := term "<=" term | term "=" term
//! term := var | "1" | "(" term ")" | term op term
//! op   := "->" | "/\" | "\/" | "*"
//! ```
//!
//! Variables are single letters `a`-`z`, numbered in order of first
//! appearance. Fully parenthesised input is always accepted. Without
//! parentheses, `*` binds tightest, then `/\`, then `\/`, and `->` binds
//! loosest and associates to the right.

use std::fmt;

use crate::term::{Atom, Law, Relation, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(char),
    One,
    Open,
    Close,
    Imp,
    Meet,
    Join,
    Mul,
    Le,
    Eq,
    And,
    Then,
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Var(c) => format!("variable `{c}`"),
            Tok::One => "`1`".into(),
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Meet => "`/\\`".into(),
            Tok::Join => "`\\/`".into(),
            Tok::Mul => "`*`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Eq => "`=`".into(),
            Tok::And => "`&`".into(),
            Tok::Then => "`=>`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            (c, _) if c.is_whitespace() => {
                i += 1;
                continue;
            }
            ('a'..='z', _) => (Tok::Var(c), 1),
            ('1', _) => (Tok::One, 1),
            ('(', _) => (Tok::Open, 1),
            (')', _) => (Tok::Close, 1),
            ('-', Some('>')) => (Tok::Imp, 2),
            ('/', Some('\\')) => (Tok::Meet, 2),
            ('\\', Some('/')) => (Tok::Join, 2),
            ('*', _) => (Tok::Mul, 1),
            ('<', Some('=')) => (Tok::Le, 2),
            ('=', Some('>')) => (Tok::Then, 2),
            ('=', _) => (Tok::Eq, 1),
            ('&', _) => (Tok::And, 1),
            _ => return Err(ParseError { column: col, message: format!("unexpected character `{c}`") }),
        };
        out.push((tok, col));
        i += len;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vec<char>,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn law(&mut self) -> Result<Law, ParseError> {
        let mut atoms = vec![self.atom()?];
        let mut implication = false;
        loop {
            match self.peek() {
                Tok::And if !implication => {
                    self.bump();
                    atoms.push(self.atom()?);
                }
                Tok::Then if !implication => {
                    self.bump();
                    implication = true;
                    atoms.push(self.atom()?);
                }
                Tok::End => break,
                _ => return self.error(if implication { "end of input" } else { "`&`, `=>` or end of input" }),
            }
        }
        if !implication && atoms.len() > 1 {
            return Err(ParseError {
                column: self.column(),
                message: "hypotheses joined by `&` must be followed by `=>`".into(),
            });
        }
        let conclusion = atoms.pop().expect("at least one atom");
        let vars = self.vars.iter().map(|c| c.to_string()).collect();
        Ok(Law { hypotheses: atoms, conclusion, vars })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let lhs = self.term(0)?;
        let rel = match self.peek() {
            Tok::Le => Relation::Le,
            Tok::Eq => Relation::Eq,
            _ => return self.error("`<=` or `=`"),
        };
        self.bump();
        let rhs = self.term(0)?;
        Ok(Atom { lhs, rel, rhs })
    }

    /// Precedence climbing; levels: 0 `->` (right), 1 `\/`, 2 `/\`, 3 `*`.
    fn term(&mut self, min_level: u8) -> Result<Term, ParseError> {
        let mut lhs = self.primary()?;
        loop {
            let (level, right_assoc) = match self.peek() {
                Tok::Imp => (0, true),
                Tok::Join => (1, false),
                Tok::Meet => (2, false),
                Tok::Mul => (3, false),
                _ => return Ok(lhs),
            };
            if level < min_level {
                return Ok(lhs);
            }
            let op = self.bump();
            let rhs = self.term(if right_assoc { level } else { level + 1 })?;
            lhs = match op {
                Tok::Imp => lhs.imp(rhs),
                Tok::Join => lhs.join(rhs),
                Tok::Meet => lhs.meet(rhs),
                _ => lhs.mul(rhs),
            };
        }
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Var(c) => {
                self.bump();
                let idx = match self.vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        self.vars.push(c);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(idx))
            }
            Tok::One => {
                self.bump();
                Ok(Term::Unit)
            }
            Tok::Open => {
                self.bump();
                let t = self.term(0)?;
                if self.peek() != Tok::Close {
                    return self.error("`)`");
                }
                self.bump();
                Ok(t)
            }
            _ => self.error("a variable, `1` or `(`"),
        }
    }
}

pub fn parse_law(text: &str) -> Result<Law, ParseError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0, vars: Vec::new() }.law()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::var;

    #[test]
    fn unparenthesised_refl() {
        let law = parse_law("x -> x = 1").unwrap();
        assert_eq!(law, Law::identity(var(0).imp(var(0)), Term::Unit));
    }

    #[test]
    fn strict_grammar() {
        let law = parse_law("(x -> (y -> z)) <= ((x -> y) -> (x -> z))").unwrap();
        assert_eq!(law.arity(), 3);
        assert!(law.hypotheses.is_empty());
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_law("x -> y -> z = 1").unwrap().conclusion.lhs, var(0).imp(var(1).imp(var(2))));
        assert_eq!(
            parse_law("x /\\ y \\/ z * x = x").unwrap().conclusion.lhs,
            var(0).meet(var(1)).join(var(2).mul(var(0)))
        );
    }

    #[test]
    fn quasi_identity_vars_in_order() {
        let law = parse_law("x <= y => (z -> x) <= (z -> y)").unwrap();
        assert_eq!(law.vars, vec!["x", "y", "z"]);
        assert_eq!(law.hypotheses.len(), 1);
        let law = parse_law("b <= a & a <= b => a = b").unwrap();
        assert_eq!(law.vars, vec!["b", "a"]);
        assert_eq!(law.hypotheses.len(), 2);
    }

    #[test]
    fn display_reparses() {
        for text in ["x -> x = 1", "x <= y => (z -> x) <= (z -> y)", "(x * (x -> y)) \\/ y <= 1"] {
            let law = parse_law(text).unwrap();
            assert_eq!(parse_law(&law.to_string()).unwrap(), law);
        }
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_law("x -> ").unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_law("x ? y").unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_law("(x -> y = 1").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(parse_law("x = y & y = x").is_err());
        assert!(parse_law("x -> y").is_err());
    }
}
