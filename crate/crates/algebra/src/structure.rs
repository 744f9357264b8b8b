//! Plain-text structure files.
//!
//! ```text
//! algebra m2
//! elements 4 0 a b 1
//! top 1
//! leq 0 a
//! leq 0 b
//! leq a 1
//! leq b 1
//! op imp
//! 1 1 1 1
//! b 1 b 1
//! a a 1 1
//! 0 a b 1
//! end
//! ```
//!
//! `#` starts a comment. `leq` lines are generators of the order; the
//! serialiser writes the covering pairs. Tables list row `x`, column `y` as
//! `op(x, y)`.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::OrderedAlgebra;
use crate::error::{Error, OpKind};
use crate::poset::{Elem, Poset};
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unknown element `{name}`")]
    UnknownName { line: usize, column: usize, name: String },
    #[error("`{a}` and `{b}` are distinct but each is below the other")]
    AntisymmetryViolation { a: String, b: String },
    #[error("op {op}: table is {rows}x{cols}, expected {n}x{n}")]
    BadTableShape { op: OpKind, rows: usize, cols: usize, n: usize },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub poset: Poset,
    pub top: Option<Elem>,
    pub imp: Option<OpTable>,
    pub mul: Option<OpTable>,
    pub join: Option<OpTable>,
    pub meet: Option<OpTable>,
}

const OP_ORDER: [OpKind; 4] = [OpKind::Imp, OpKind::Mul, OpKind::Join, OpKind::Meet];

struct Line<'a> {
    number: usize,
    tokens: Vec<(&'a str, usize)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (byte, c)) in content.char_indices().enumerate() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some((byte, col + 1)),
                (true, Some((b, column))) => {
                    tokens.push((&content[b..byte], column));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, column)) = start {
            tokens.push((&content[b..], column));
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn syntax<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, StructureError> {
    Err(StructureError::Syntax { line, column, message: message.into() })
}

const KEYWORDS: [&str; 6] = ["algebra", "elements", "top", "leq", "op", "end"];

impl StructureFile {
    pub fn op(&self, kind: OpKind) -> Option<&OpTable> {
        match kind {
            OpKind::Imp => self.imp.as_ref(),
            OpKind::Mul => self.mul.as_ref(),
            OpKind::Join => self.join.as_ref(),
            OpKind::Meet => self.meet.as_ref(),
        }
    }

    fn op_mut(&mut self, kind: OpKind) -> &mut Option<OpTable> {
        match kind {
            OpKind::Imp => &mut self.imp,
            OpKind::Mul => &mut self.mul,
            OpKind::Join => &mut self.join,
            OpKind::Meet => &mut self.meet,
        }
    }

    pub fn parse(text: &str) -> Result<StructureFile, StructureError> {
        let lines = tokenize(text);
        let last_line = text.lines().count().max(1);
        let mut it = lines.iter().peekable();

        let Some(first) = it.next() else { return syntax(1, 1, "empty input, expected `algebra <name>`") };
        if first.tokens[0].0 != "algebra" || first.tokens.len() != 2 {
            return syntax(first.number, first.tokens[0].1, "expected `algebra <name>`");
        }
        let name = first.tokens[1].0.to_string();

        let Some(el) = it.next() else { return syntax(last_line, 1, "expected `elements`") };
        if el.tokens[0].0 != "elements" || el.tokens.len() < 2 {
            return syntax(el.number, el.tokens[0].1, "expected `elements <n> <names>`");
        }
        let (count_tok, count_col) = el.tokens[1];
        let n: usize = match count_tok.parse() {
            Ok(n) if n > 0 => n,
            _ => return syntax(el.number, count_col, format!("bad element count `{count_tok}`")),
        };
        let names: Vec<&str> = el.tokens[2..].iter().map(|t| t.0).collect();
        if names.len() != n {
            return syntax(el.number, count_col, format!("declared {n} elements, listed {}", names.len()));
        }
        for (i, (nm, col)) in el.tokens[2..].iter().enumerate() {
            if names[..i].contains(nm) {
                return syntax(el.number, *col, format!("duplicate element `{nm}`"));
            }
            if KEYWORDS.contains(nm) {
                return syntax(el.number, *col, format!("`{nm}` is a keyword"));
            }
        }
        let lookup = |line: usize, (tok, col): (&str, usize)| -> Result<Elem, StructureError> {
            names.iter().position(|&x| x == tok).ok_or_else(|| StructureError::UnknownName {
                line,
                column: col,
                name: tok.to_string(),
            })
        };

        let mut top = None;
        let mut pairs = Vec::new();
        let mut tables: Vec<(OpKind, OpTable)> = Vec::new();
        let mut ended = false;
        while let Some(line) = it.next() {
            let (kw, col) = line.tokens[0];
            if ended {
                return syntax(line.number, col, "content after `end`");
            }
            let arity = |k: usize| -> Result<(), StructureError> {
                if line.tokens.len() != k + 1 {
                    return syntax(line.number, col, format!("`{kw}` takes {k} argument(s)"));
                }
                Ok(())
            };
            match kw {
                "top" => {
                    arity(1)?;
                    if top.is_some() {
                        return syntax(line.number, col, "duplicate `top`");
                    }
                    top = Some(lookup(line.number, line.tokens[1])?);
                }
                "leq" => {
                    arity(2)?;
                    pairs.push((lookup(line.number, line.tokens[1])?, lookup(line.number, line.tokens[2])?));
                }
                "op" => {
                    arity(1)?;
                    let (op_tok, op_col) = line.tokens[1];
                    let Some(kind) = OpKind::parse(op_tok) else {
                        return syntax(line.number, op_col, format!("unknown operation `{op_tok}`"));
                    };
                    if tables.iter().any(|(k, _)| *k == kind) {
                        return syntax(line.number, op_col, format!("duplicate table for `{op_tok}`"));
                    }
                    let mut rows: Vec<Vec<Elem>> = Vec::new();
                    let mut bad_width = None;
                    while let Some(row) = it.peek() {
                        if KEYWORDS.contains(&row.tokens[0].0) {
                            break;
                        }
                        let row = it.next().expect("peeked");
                        if row.tokens.len() != n {
                            bad_width.get_or_insert(row.tokens.len());
                        }
                        let mut values = Vec::with_capacity(row.tokens.len());
                        for &t in &row.tokens {
                            values.push(lookup(row.number, t)?);
                        }
                        rows.push(values);
                    }
                    if rows.len() != n || bad_width.is_some() {
                        return Err(StructureError::BadTableShape {
                            op: kind,
                            rows: rows.len(),
                            cols: bad_width.unwrap_or(n),
                            n,
                        });
                    }
                    tables.push((kind, OpTable::from_rows(&rows).expect("shape checked")));
                }
                "end" => {
                    arity(0)?;
                    ended = true;
                }
                "algebra" | "elements" => return syntax(line.number, col, format!("`{kw}` may appear only once")),
                _ => return syntax(line.number, col, format!("unknown keyword `{kw}`")),
            }
        }
        if !ended {
            return syntax(last_line + 1, 1, "missing `end`");
        }

        let poset = Poset::from_generators(n, &pairs).and_then(|p| p.with_names(names.iter().copied())).map_err(
            |e| match e {
                Error::AntisymmetryViolation { a, b } => {
                    StructureError::AntisymmetryViolation { a: names[a].to_string(), b: names[b].to_string() }
                }
                other => StructureError::Invalid(other.to_string()),
            },
        )?;
        if let Some(t) = top {
            if poset.top() != Some(t) {
                return Err(StructureError::Invalid(format!(
                    "declared top `{}` is not the greatest element",
                    names[t]
                )));
            }
        }
        let mut s = StructureFile { name, poset, top, imp: None, mul: None, join: None, meet: None };
        for (kind, table) in tables {
            let expected = match kind {
                OpKind::Join => Some(OpTable::join_of(&s.poset)),
                OpKind::Meet => Some(OpTable::meet_of(&s.poset)),
                _ => None,
            };
            if let Some(expected) = expected {
                if expected.as_ref() != Ok(&table) {
                    return Err(StructureError::Invalid(format!("`{kind}` table does not match the order")));
                }
            }
            *s.op_mut(kind) = Some(table);
        }
        if s.imp.is_some() && s.poset.top().is_none() {
            return Err(StructureError::Invalid("an implication needs a greatest element".into()));
        }
        Ok(s)
    }

    pub fn serialize(&self) -> String {
        let p = &self.poset;
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.name);
        let _ = writeln!(out, "elements {} {}", p.size(), p.names().join(" "));
        if let Some(t) = self.top {
            let _ = writeln!(out, "top {}", p.name(t));
        }
        for (a, b) in p.covers() {
            let _ = writeln!(out, "leq {} {}", p.name(a), p.name(b));
        }
        for kind in OP_ORDER {
            if let Some(t) = self.op(kind) {
                let _ = writeln!(out, "op {kind}");
                for row in t.rows() {
                    let cells: Vec<&str> = row.iter().map(|&v| p.name(v)).collect();
                    let _ = writeln!(out, "{}", cells.join(" "));
                }
            }
        }
        out.push_str("end\n");
        out
    }

    /// The algebra on the poset with the implication and product tables; the
    /// unit is the greatest element.
    pub fn to_algebra(&self) -> crate::error::Result<OrderedAlgebra> {
        let poset = Arc::new(self.poset.clone());
        let unit = self.top.or(poset.top()).ok_or(Error::NoTop)?;
        OrderedAlgebra::new(poset, unit, self.imp.clone(), self.mul.clone())
    }

    pub fn from_algebra(name: impl Into<String>, a: &OrderedAlgebra) -> StructureFile {
        let poset = a.poset().clone();
        StructureFile {
            name: name.into(),
            top: poset.top(),
            imp: a.imp_opt().cloned(),
            mul: a.mul_opt().cloned(),
            join: None,
            meet: None,
            poset,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M2: &str = "algebra m2
elements 4 0 a b 1
top 1
leq 0 a
leq 0 b
leq a 1
leq b 1
op imp
1 1 1 1
b 1 b 1
a a 1 1
0 a b 1
end
";

    #[test]
    fn m2_fixture() {
        let s = StructureFile::parse(M2).unwrap();
        assert_eq!(s.poset, Poset::diamond());
        assert_eq!(s.imp.as_ref().unwrap().at(1, 0), 2);
        assert_eq!(s.serialize(), M2);
        assert_eq!(StructureFile::parse(&s.serialize()).unwrap(), s);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\nalgebra c2 # two\n\nelements 2 p q\nleq p q\nend\n";
        let s = StructureFile::parse(text).unwrap();
        assert!(s.poset.leq(0, 1));
        assert!(s.imp.is_none());
    }

    #[test]
    fn antisymmetry() {
        let text = "algebra bad\nelements 2 a b\nleq a b\nleq b a\nend\n";
        assert_eq!(
            StructureFile::parse(text),
            Err(StructureError::AntisymmetryViolation { a: "a".into(), b: "b".into() })
        );
    }

    #[test]
    fn bad_shape() {
        let text = "algebra c3\nelements 3 0 a 1\nleq 0 a\nleq a 1\nop imp\n1 1\na 1\n0 a\nend\n";
        assert_eq!(
            StructureFile::parse(text),
            Err(StructureError::BadTableShape { op: OpKind::Imp, rows: 3, cols: 2, n: 3 })
        );
    }

    #[test]
    fn unknown_name_position() {
        let text = "algebra c2\nelements 2 p q\nleq p  r\nend\n";
        assert_eq!(
            StructureFile::parse(text),
            Err(StructureError::UnknownName { line: 3, column: 8, name: "r".into() })
        );
    }

    #[test]
    fn syntax_errors() {
        for text in [
            "",
            "elements 2 a b\nend\n",
            "algebra x\nelements 2 a\nend\n",
            "algebra x\nelements 2 a b\nfoo\nend\n",
            "algebra x\nelements 2 a b\n",
            "algebra x\nelements 2 a a\nend\n",
            "algebra x\nelements 1 a\nop div\na\nend\n",
        ] {
            assert!(matches!(StructureFile::parse(text), Err(StructureError::Syntax { .. })), "{text:?}");
        }
    }

    #[test]
    fn top_must_be_greatest() {
        let text = "algebra c2\nelements 2 p q\ntop p\nleq p q\nend\n";
        assert!(matches!(StructureFile::parse(text), Err(StructureError::Invalid(_))));
    }
}
