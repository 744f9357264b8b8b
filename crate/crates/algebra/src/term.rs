//! Terms over `{variables, 1, ->, ∧, ∨, ·}` and (quasi-)identities built
//! from them.

use std::fmt;

use crate::algebra::OrderedAlgebra;
use crate::axioms::scan;
use crate::error::{Error, OpKind, Result};
use crate::poset::{Elem, Poset};
use crate::report::Witness;
use crate::table::Lookup;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Unit,
    Imp(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

impl Term {
    pub fn imp(self, rhs: Term) -> Term {
        Term::Imp(Box::new(self), Box::new(rhs))
    }

    pub fn meet(self, rhs: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(rhs))
    }

    pub fn join(self, rhs: Term) -> Term {
        Term::Join(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }

    /// `(self -> y) -> y`, written `self -> y. -> y` in dot notation.
    pub fn imp_back(self, y: Term) -> Term {
        self.imp(y.clone()).imp(y)
    }

    /// Number of variables, i.e. one more than the largest index used.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Unit => 0,
            Term::Imp(a, b) | Term::Meet(a, b) | Term::Join(a, b) | Term::Mul(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn uses(&self, op: OpKind) -> bool {
        match self {
            Term::Var(_) | Term::Unit => false,
            Term::Imp(a, b) => op == OpKind::Imp || a.uses(op) || b.uses(op),
            Term::Meet(a, b) => op == OpKind::Meet || a.uses(op) || b.uses(op),
            Term::Join(a, b) => op == OpKind::Join || a.uses(op) || b.uses(op),
            Term::Mul(a, b) => op == OpKind::Mul || a.uses(op) || b.uses(op),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, names: &[String], top: bool) -> fmt::Result {
        let (sym, a, b) = match self {
            Term::Var(i) => {
                return match names.get(*i) {
                    Some(name) => f.write_str(name),
                    None => write!(f, "v{i}"),
                }
            }
            Term::Unit => return f.write_str("1"),
            Term::Imp(a, b) => ("->", a, b),
            Term::Meet(a, b) => ("/\\", a, b),
            Term::Join(a, b) => ("\\/", a, b),
            Term::Mul(a, b) => ("*", a, b),
        };
        if !top {
            f.write_str("(")?;
        }
        a.write(f, names, false)?;
        write!(f, " {sym} ")?;
        b.write(f, names, false)?;
        if !top {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// The majority term `((x -> y) -> y) ∧ ((y -> z) -> z) ∧ ((z -> x) -> x)`.
pub fn majority_lower() -> Term {
    let (x, y, z) = (var(0), var(1), var(2));
    x.clone().imp_back(y.clone()).meet(y.imp_back(z.clone())).meet(z.imp_back(x))
}

/// The Mal'cev term `((x -> y) -> z) ∧ ((z -> y) -> x)`.
pub fn malcev_lower() -> Term {
    let (x, y, z) = (var(0), var(1), var(2));
    x.clone().imp(y.clone()).imp(z.clone()).meet(z.imp(y).imp(x))
}

/// The majority term `x(x -> y) ∨ y(y -> z) ∨ z(z -> x)`.
pub fn majority_upper() -> Term {
    let (x, y, z) = (var(0), var(1), var(2));
    let part = |a: &Term, b: &Term| a.clone().mul(a.clone().imp(b.clone()));
    part(&x, &y).join(part(&y, &z)).join(part(&z, &x))
}

/// The Mal'cev term `x(y -> z) ∨ z(y -> x)`.
pub fn malcev_upper() -> Term {
    let (x, y, z) = (var(0), var(1), var(2));
    x.clone().mul(y.clone().imp(z.clone())).join(z.mul(y.imp(x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub lhs: Term,
    pub rel: Relation,
    pub rhs: Term,
}

impl Atom {
    pub fn le(lhs: Term, rhs: Term) -> Atom {
        Atom { lhs, rel: Relation::Le, rhs }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Atom {
        Atom { lhs, rel: Relation::Eq, rhs }
    }

    fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    fn uses(&self, op: OpKind) -> bool {
        self.lhs.uses(op) || self.rhs.uses(op)
    }

    /// `None` when a needed cell is still undefined.
    fn eval(&self, it: &Interp<'_>, asg: &[Elem]) -> Result<Option<bool>> {
        let (Some(l), Some(r)) = (it.eval(&self.lhs, asg)?, it.eval(&self.rhs, asg)?) else {
            return Ok(None);
        };
        Ok(Some(match self.rel {
            Relation::Le => it.poset.leq(l, r),
            Relation::Eq => l == r,
        }))
    }
}

/// `h_1 & ... & h_k => c`; an identity or inequality when there are no
/// hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Law {
    pub hypotheses: Vec<Atom>,
    pub conclusion: Atom,
    pub vars: Vec<String>,
}

const DEFAULT_VARS: [&str; 8] = ["x", "y", "z", "u", "v", "w", "s", "t"];

impl Law {
    pub fn new(hypotheses: Vec<Atom>, conclusion: Atom) -> Law {
        let arity = hypotheses.iter().map(Atom::arity).chain([conclusion.arity()]).max().unwrap_or(0);
        let vars = (0..arity).map(|i| DEFAULT_VARS.get(i).map_or_else(|| format!("v{i}"), |s| s.to_string())).collect();
        Law { hypotheses, conclusion, vars }
    }

    pub fn identity(lhs: Term, rhs: Term) -> Law {
        Law::new(Vec::new(), Atom::eq(lhs, rhs))
    }

    pub fn inequality(lhs: Term, rhs: Term) -> Law {
        Law::new(Vec::new(), Atom::le(lhs, rhs))
    }

    pub fn parse(text: &str) -> std::result::Result<Law, crate::parse::ParseError> {
        crate::parse::parse_law(text)
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn uses(&self, op: OpKind) -> bool {
        self.conclusion.uses(op) || self.hypotheses.iter().any(|h| h.uses(op))
    }

    /// `Some(true)` holds, `Some(false)` violated, `None` undetermined.
    pub fn eval(&self, it: &Interp<'_>, asg: &[Elem]) -> Result<Option<bool>> {
        let mut unknown = false;
        for h in &self.hypotheses {
            match h.eval(it, asg)? {
                Some(false) => return Ok(Some(true)),
                Some(true) => {}
                None => unknown = true,
            }
        }
        match self.conclusion.eval(it, asg)? {
            Some(true) => Ok(Some(true)),
            Some(false) if !unknown => Ok(Some(false)),
            _ => Ok(None),
        }
    }

    /// Least assignment (variables by index, elements by index) satisfying
    /// every hypothesis and violating the conclusion.
    pub fn violation(&self, it: &Interp<'_>) -> Result<Option<Vec<Elem>>> {
        let mut err = None;
        let found = scan(it.poset.size(), self.arity(), |asg| match self.eval(it, asg) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                Some(true)
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |f: &mut fmt::Formatter<'_>, a: &Atom| {
            a.lhs.write(f, &self.vars, true)?;
            f.write_str(match a.rel {
                Relation::Le => " <= ",
                Relation::Eq => " = ",
            })?;
            a.rhs.write(f, &self.vars, true)
        };
        for (i, h) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            atom(f, h)?;
        }
        if !self.hypotheses.is_empty() {
            f.write_str(" => ")?;
        }
        atom(f, &self.conclusion)
    }
}

/// Interpretation of the operation symbols on a poset.
#[derive(Clone, Copy)]
pub struct Interp<'a> {
    pub poset: &'a Poset,
    pub unit: Elem,
    pub imp: Option<&'a dyn Lookup>,
    pub mul: Option<&'a dyn Lookup>,
}

impl<'a> Interp<'a> {
    pub fn of(a: &'a OrderedAlgebra) -> Interp<'a> {
        Interp {
            poset: a.poset(),
            unit: a.unit(),
            imp: a.imp_opt().map(|t| t as &dyn Lookup),
            mul: a.mul_opt().map(|t| t as &dyn Lookup),
        }
    }

    /// Bottom-up evaluation; `Ok(None)` when a table cell is undefined.
    pub fn eval(&self, t: &Term, asg: &[Elem]) -> Result<Option<Elem>> {
        Ok(match t {
            Term::Var(i) => Some(asg[*i]),
            Term::Unit => Some(self.unit),
            Term::Imp(a, b) | Term::Mul(a, b) => {
                let (op, table) = match t {
                    Term::Imp(..) => (OpKind::Imp, self.imp),
                    _ => (OpKind::Mul, self.mul),
                };
                let table = table.ok_or(Error::MissingOperation(op))?;
                let (Some(x), Some(y)) = (self.eval(a, asg)?, self.eval(b, asg)?) else {
                    return Ok(None);
                };
                table.get(x, y)
            }
            Term::Meet(a, b) | Term::Join(a, b) => {
                let (Some(x), Some(y)) = (self.eval(a, asg)?, self.eval(b, asg)?) else {
                    return Ok(None);
                };
                let (op, v) = match t {
                    Term::Meet(..) => (OpKind::Meet, self.poset.meet(x, y)),
                    _ => (OpKind::Join, self.poset.join(x, y)),
                };
                Some(v.ok_or(Error::PartialOperationUndefined { op, x, y })?)
            }
        })
    }
}

/// Value of `t` in `a` under `assignment`.
pub fn eval(t: &Term, a: &OrderedAlgebra, assignment: &[Elem]) -> Result<Elem> {
    if assignment.len() < t.arity() {
        return Err(Error::PreconditionViolation(format!(
            "term needs {} variables, got {}",
            t.arity(),
            assignment.len()
        )));
    }
    if let Some(&bad) = assignment.iter().find(|&&e| e >= a.size()) {
        return Err(Error::IndexOutOfRange { index: bad, size: a.size() });
    }
    Ok(Interp::of(a).eval(t, assignment)?.expect("total tables"))
}

/// `None` if `law` holds in `a`, else the least counterexample.
pub fn check_law(a: &OrderedAlgebra, law: &Law) -> Result<Option<Witness>> {
    Ok(law.violation(&Interp::of(a))?.map(|t| Witness::new(&law.vars, t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sectional::derive_j_implication;
    use crate::table::OpTable;

    fn two_chain() -> OrderedAlgebra {
        OrderedAlgebra::implicative(Poset::chain(2).unwrap(), OpTable::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap())
            .unwrap()
    }

    #[test]
    fn eval_examples() {
        let a = two_chain();
        assert_eq!(eval(&Term::Unit, &a, &[]).unwrap(), 1);
        assert_eq!(eval(&var(0).imp(var(0)), &a, &[0]).unwrap(), 1);
        assert_eq!(eval(&majority_lower(), &a, &[0, 0, 1]).unwrap(), 0);
        assert_eq!(eval(&malcev_lower(), &a, &[0, 1, 1]).unwrap(), 0);
    }

    #[test]
    fn eval_errors() {
        let a = OrderedAlgebra::bare(Poset::chain(2).unwrap()).unwrap();
        assert_eq!(eval(&var(0).imp(var(0)), &a, &[0]), Err(Error::MissingOperation(OpKind::Imp)));
        let vee = Poset::from_generators(3, &[(0, 2), (1, 2)]).unwrap();
        let a = OrderedAlgebra::bare(vee).unwrap();
        assert_eq!(
            eval(&var(0).meet(var(1)), &a, &[0, 1]),
            Err(Error::PartialOperationUndefined { op: OpKind::Meet, x: 0, y: 1 })
        );
    }

    #[test]
    fn isot_as_quasi_identity_on_pentagon() {
        let n5 = Poset::pentagon();
        let imp = derive_j_implication(&n5).unwrap().table.unwrap();
        let a = OrderedAlgebra::implicative(n5, imp).unwrap();
        // variables in order of appearance: z, x, y
        let (z, x, y) = (var(0), var(1), var(2));
        let law = Law::new(vec![Atom::le(x.clone(), y.clone())], Atom::le(z.clone().imp(x), z.imp(y)));
        let law = Law { vars: vec!["z".into(), "x".into(), "y".into()], ..law };
        let w = check_law(&a, &law).unwrap().unwrap();
        assert_eq!(w.values, vec![1, 0, 2]);
    }

    #[test]
    fn refl_identity() {
        let a = two_chain();
        let law = Law::identity(var(0).imp(var(0)), Term::Unit);
        assert_eq!(check_law(&a, &law).unwrap(), None);
    }

    #[test]
    fn regg_on_diamond() {
        let m2 = Poset::diamond();
        let imp = derive_j_implication(&m2).unwrap().table.unwrap();
        let a = OrderedAlgebra::implicative(m2, imp).unwrap();
        let law = Law::inequality(var(0).meet(var(0).imp(var(1))), var(1));
        assert_eq!(check_law(&a, &law).unwrap(), None);
    }

    #[test]
    fn vacuous_hypotheses_agree() {
        let a = two_chain();
        let bare = Law::inequality(var(0), var(0).imp(var(0)));
        let guarded = Law::new(vec![Atom::le(var(0), Term::Unit)], bare.conclusion.clone());
        assert_eq!(check_law(&a, &bare).unwrap(), check_law(&a, &guarded).unwrap());
    }
}
