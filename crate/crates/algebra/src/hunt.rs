//! Finite countermodel search.
//!
//! Posets are visited by size, then in canonical order; on each poset the
//! implication tables satisfying the assumptions are generated in search
//! order and the first one violating the target is returned. Parallel runs
//! split the posets of one size across workers and keep the first hit in
//! canonical order, so the verdict does not depend on the worker count.

use std::fmt;
use std::time::Instant;

use crate::adjunction::condition_s_product_of;
use crate::algebra::OrderedAlgebra;
use crate::axioms::{self, AlgebraClass, AxiomId};
use crate::enumerate::{enumerate_posets_upto, ENUMERATION_BOUND};
use crate::error::{Error, OpKind, Result};
use crate::exec::Exec;
use crate::poset::{OrderClass, Poset};
use crate::report::Witness;
use crate::search::TableSearch;
use crate::table::{Lookup, OpTable};
use crate::term::{Interp, Law};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assumption {
    Axiom(AxiomId),
    Class(AlgebraClass),
    Law(Law),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Axiom(AxiomId),
    Law(Law),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Axiom(id) => id.name().to_string(),
            Target::Law(l) => l.to_string(),
        }
    }

    fn uses(&self, op: OpKind) -> bool {
        match self {
            Target::Axiom(AxiomId::Regg) => op == OpKind::Meet,
            Target::Axiom(_) => false,
            Target::Law(l) => l.uses(op),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone)]
pub struct HuntQuery {
    pub size_max: usize,
    pub order: OrderClass,
    pub assume: Vec<Assumption>,
    pub refute: Target,
    pub deadline: Option<Instant>,
}

impl HuntQuery {
    pub fn new(size_max: usize, assume: Vec<Assumption>, refute: Target) -> HuntQuery {
        HuntQuery { size_max, order: OrderClass::Any, assume, refute, deadline: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    /// Implicative algebra; carries the condition-S product when the query
    /// involves one.
    pub algebra: OrderedAlgebra,
    /// Position among the canonical posets of its size.
    pub canonical_index: usize,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HuntVerdict {
    Countermodel(Countermodel),
    Exhausted(usize),
}

/// What the assumptions add beyond a table search.
#[derive(Default)]
struct Plan {
    axioms: Vec<AxiomId>,
    laws: Vec<Law>,
    lattice: bool,
    needs_meet: bool,
    needs_join: bool,
    product: bool,
    associative: bool,
}

fn plan(q: &HuntQuery) -> Plan {
    let mut p = Plan::default();
    let add = |p: &mut Plan, id: AxiomId| {
        if !p.axioms.contains(&id) {
            p.axioms.push(id);
        }
    };
    for a in &q.assume {
        match a {
            Assumption::Axiom(id) => add(&mut p, *id),
            Assumption::Class(c) => {
                for &id in c.axioms() {
                    add(&mut p, id);
                }
                p.lattice |= *c == AlgebraClass::Heyting;
                p.product |= c.needs_product();
                p.associative |= *c == AlgebraClass::Pocrim;
            }
            Assumption::Law(l) => {
                p.needs_meet |= l.uses(OpKind::Meet);
                p.needs_join |= l.uses(OpKind::Join);
                p.product |= l.uses(OpKind::Mul);
                p.laws.push(l.clone());
            }
        }
    }
    p.needs_meet |= p.axioms.contains(&AxiomId::Regg) || q.refute.uses(OpKind::Meet);
    p.needs_join |= q.refute.uses(OpKind::Join);
    p.product |= q.refute.uses(OpKind::Mul);
    p
}

fn associative(t: &OpTable) -> bool {
    let n = t.size();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t.at(t.at(x, y), z) == t.at(x, t.at(y, z)))))
}

fn refute_on(q: &HuntQuery, p: &Poset, top: usize, imp: &OpTable, mul: Option<&OpTable>) -> Result<Option<Witness>> {
    Ok(match &q.refute {
        Target::Axiom(id) => axioms::find_violation(*id, p, top, imp)?.map(|v| Witness::new(id.vars(), v)),
        Target::Law(law) => {
            let it = Interp { poset: p, unit: top, imp: Some(imp), mul: mul.map(|m| m as &dyn Lookup) };
            law.violation(&it)?.map(|v| Witness::new(&law.vars, v))
        }
    })
}

/// First countermodel on `p`, in table search order.
fn hunt_poset(q: &HuntQuery, plan: &Plan, p: &Poset) -> Result<Option<(OpTable, Option<OpTable>, Witness)>> {
    let flags = p.classify_order();
    let Some(top) = p.top() else { return Ok(None) };
    if (plan.lattice && !flags.is_lattice)
        || (plan.needs_meet && !flags.is_meet_semilattice)
        || (plan.needs_join && !flags.is_join_semilattice)
    {
        return Ok(None);
    }
    let mut search = TableSearch::implicative(p, &plan.axioms)?.deadline(q.deadline);
    for l in &plan.laws {
        search = search.law(l.clone());
    }
    let mut err = None;
    let found = search.find_map(|imp| {
        let mul = if plan.product {
            match condition_s_product_of(p, imp) {
                Ok(m) if !plan.associative || associative(&m) => Some(m),
                _ => return None,
            }
        } else {
            None
        };
        match refute_on(q, p, top, imp, mul.as_ref()) {
            Ok(Some(w)) => Some((mul, w)),
            Ok(None) => None,
            Err(e) => {
                err.get_or_insert(e);
                Some((None, Witness::empty()))
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(found.map(|(imp, (mul, w))| (imp, mul, w)))
}

pub fn hunt(q: &HuntQuery, exec: Exec) -> Result<HuntVerdict> {
    if q.size_max == 0 {
        return Err(Error::EmptyCarrier);
    }
    if q.size_max > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded { requested: q.size_max, bound: ENUMERATION_BOUND });
    }
    let plan = plan(q);
    let levels = enumerate_posets_upto(q.size_max, OrderClass::Any, exec)?;
    for level in levels {
        if q.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(Error::Timeout);
        }
        let candidates: Vec<(usize, &Poset)> =
            level.iter().enumerate().filter(|(_, p)| q.order.accepts(p.classify_order())).collect();
        let hit = exec.find_map_first(&candidates, |&(_, p)| match hunt_poset(q, &plan, p) {
            Ok(None) => None,
            other => Some(other),
        });
        if let Some((i, res)) = hit {
            let (imp, mul, witness) = res?.expect("hits are Some");
            let (index, p) = candidates[i];
            let algebra = OrderedAlgebra::new(p.clone(), p.top().expect("top"), Some(imp), mul)?;
            return Ok(HuntVerdict::Countermodel(Countermodel { algebra, canonical_index: index, witness }));
        }
    }
    Ok(HuntVerdict::Exhausted(q.size_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    #[test]
    fn refl_is_never_refuted() {
        let q = HuntQuery::new(
            4,
            vec![Assumption::Class(AlgebraClass::Wbck)],
            Target::Law(Law::parse("x -> x = 1").unwrap()),
        );
        assert_eq!(hunt(&q, Exec::Parallel).unwrap(), HuntVerdict::Exhausted(4));
    }

    #[test]
    fn isot_fails_first_on_pentagon() {
        let mut q = HuntQuery::new(
            5,
            [AxiomId::LeTo, AxiomId::WExch, AxiomId::Reg, AxiomId::Comp].map(Assumption::Axiom).to_vec(),
            Target::Axiom(AxiomId::Isot),
        );
        q.order = OrderClass::Lattice;
        let HuntVerdict::Countermodel(c) = hunt(&q, Exec::Parallel).unwrap() else { panic!("expected a countermodel") };
        assert!(is_isomorphic(c.algebra.poset(), &Poset::pentagon()));
        assert!(!axioms::check_axiom(&c.algebra, AxiomId::Isot).unwrap().all_hold());
    }

    #[test]
    fn strategies_agree() {
        let q = HuntQuery::new(4, vec![Assumption::Class(AlgebraClass::Wbck)], Target::Axiom(AxiomId::Bck1));
        assert_eq!(hunt(&q, Exec::Sequential).unwrap(), hunt(&q, Exec::Parallel).unwrap());
    }

    #[test]
    fn bounds() {
        let q = HuntQuery::new(9, vec![], Target::Axiom(AxiomId::Refl));
        assert!(matches!(hunt(&q, Exec::Sequential), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn expired_deadline() {
        let mut q = HuntQuery::new(4, vec![], Target::Axiom(AxiomId::Refl));
        q.deadline = Some(Instant::now());
        std::thread::sleep(std::time::Duration::from_millis(2));
        assert_eq!(hunt(&q, Exec::Sequential), Err(Error::Timeout));
    }
}
