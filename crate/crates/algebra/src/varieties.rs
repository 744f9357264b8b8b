//! Equational descriptions of wBCK* semilattices and the arithmetical terms.

use crate::algebra::OrderedAlgebra;
use crate::axioms::{self, scan, AxiomId};
use crate::error::{Error, Result};
use crate::poset::{Elem, Poset};
use crate::report::{Report, Verdict, Witness};
use crate::table::Lookup;
use crate::term::{self, var, Interp, Law, Term};

/// `x -> (x \/ y) = 1` and `(x \/ y) -> z <= y -> z`.
pub fn uppvar_laws() -> [Law; 2] {
    [
        Law::identity(var(0).imp(var(0).join(var(1))), Term::Unit),
        Law::inequality(var(0).join(var(1)).imp(var(2)), var(1).imp(var(2))),
    ]
}

/// `(x /\ y) -> y = 1` and `x -> z <= (x /\ y) -> z`.
pub fn lowvar_laws() -> [Law; 2] {
    [
        Law::identity(var(0).meet(var(1)).imp(var(1)), Term::Unit),
        Law::inequality(var(0).imp(var(2)), var(0).meet(var(1)).imp(var(2))),
    ]
}

fn four_law_report(p: &Poset, unit: Elem, imp: &dyn Lookup, laws: &[Law; 2]) -> Result<Report> {
    let mut r = Report::new();
    for id in [AxiomId::Bck2, AxiomId::Sreg] {
        let found = axioms::find_violation(id, p, unit, imp)?;
        r.push(Verdict::from_violation(id.name(), found.map(|v| Witness::new(id.vars(), v))));
    }
    let it = Interp { poset: p, unit, imp: Some(imp), mul: None };
    for (name, law) in ["B1", "B2"].into_iter().zip(laws) {
        let found = law.violation(&it)?;
        r.push(Verdict::from_violation(name, found.map(|v| Witness::new(&law.vars, v))));
    }
    Ok(r)
}

fn equivalence(law: &str, four: bool, wbck: bool) -> Verdict {
    Verdict { law: law.into(), holds: four == wbck, witness: None, note: None }
        .with_note(format!("laws {four}, wbck {wbck}"))
}

/// `BCK2`, `SREG`, `B1`, `B2` on a join-semilattice, and `UPPVAR-EQUIV`:
/// the four laws hold exactly when the algebra is wBCK*.
pub fn check_uppvar(a: &OrderedAlgebra) -> Result<Report> {
    let imp = a.imp()?;
    let p = a.poset();
    if !p.classify_order().is_join_semilattice {
        return Err(Error::NotJoinSemilattice);
    }
    let mut r = four_law_report(p, a.unit(), imp, &uppvar_laws())?;
    let four = r.all_hold();
    r.push(equivalence("UPPVAR-EQUIV", four, axioms::classify_table(p, a.unit(), imp).wbck));
    Ok(r)
}

/// Meet-semilattice counterpart of [`check_uppvar`], plus `REG-REGG` on
/// wBCK* algebras.
pub fn check_lowvar(a: &OrderedAlgebra) -> Result<Report> {
    let imp = a.imp()?;
    let p = a.poset();
    if !p.classify_order().is_meet_semilattice {
        return Err(Error::NotMeetSemilattice);
    }
    let mut r = four_law_report(p, a.unit(), imp, &lowvar_laws())?;
    let four = r.all_hold();
    let wbck = axioms::classify_table(p, a.unit(), imp).wbck;
    r.push(equivalence("LOWVAR-EQUIV", four, wbck));
    if wbck {
        let reg = axioms::holds(AxiomId::Reg, p, a.unit(), imp)?;
        let regg = axioms::holds(AxiomId::Regg, p, a.unit(), imp)?;
        r.push(
            Verdict { law: "REG-REGG".into(), holds: reg == regg, witness: None, note: None }
                .with_note(format!("reg {reg}, regg {regg}")),
        );
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Implication and meet.
    LowerWbck,
    /// Product, implication and join.
    UpperPocrig,
}

impl Variant {
    pub fn terms(self) -> (Term, Term) {
        match self {
            Variant::LowerWbck => (term::majority_lower(), term::malcev_lower()),
            Variant::UpperPocrig => (term::majority_upper(), term::malcev_upper()),
        }
    }
}

/// Assignment of `(x, y)` to the three term variables.
type Spread = fn(Elem, Elem) -> [Elem; 3];

/// `MAJ-1..3`: `m(x,x,y) = m(x,y,x) = m(y,x,x) = x`; `MAL-1..2`:
/// `p(x,y,y) = x = p(y,y,x)`.
pub fn verify_arithmetical_terms(a: &OrderedAlgebra, variant: Variant) -> Result<Report> {
    let flags = a.poset().classify_order();
    match variant {
        Variant::LowerWbck => {
            a.imp()?;
            if !flags.is_meet_semilattice {
                return Err(Error::WrongVariant("lower terms need a meet-semilattice"));
            }
        }
        Variant::UpperPocrig => {
            a.imp()?;
            a.mul()?;
            if !flags.is_join_semilattice {
                return Err(Error::WrongVariant("upper terms need a join-semilattice"));
            }
        }
    }
    let (m, p) = variant.terms();
    let it = Interp::of(a);
    let n = a.size();
    let cases: [(&str, &Term, Spread); 5] = [
        ("MAJ-1", &m, |x, y| [x, x, y]),
        ("MAJ-2", &m, |x, y| [x, y, x]),
        ("MAJ-3", &m, |x, y| [y, x, x]),
        ("MAL-1", &p, |x, y| [x, y, y]),
        ("MAL-2", &p, |x, y| [y, y, x]),
    ];
    let mut r = Report::new();
    for (name, t, args) in cases {
        let found = scan(n, 2, |xy| {
            let v = it.eval(t, &args(xy[0], xy[1])).expect("operations checked").expect("total tables");
            Some(v == xy[0])
        });
        r.push(Verdict::from_violation(name, found.map(|v| Witness::new(&["x", "y"], v))));
    }
    Ok(r)
}
