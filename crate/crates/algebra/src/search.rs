//! Backtracking enumeration of implication tables.
//!
//! Cells are filled in row-major order with candidate values ascending, so
//! tables come out in a fixed order. After each assignment every constraint is
//! re-scanned on the partial table; instances that touch an unfilled cell are
//! inconclusive, so a branch is cut only on a definite violation. Laws that
//! mention the product `*` cannot be decided before the table is complete:
//! they are evaluated on full tables against the condition-S product, and a
//! table without a total product is rejected.

use std::ops::ControlFlow;
use std::time::Instant;

use crate::adjunction::condition_s_product_of;
use crate::axioms::{self, AxiomId};
use crate::error::{Error, OpKind, Result};
use crate::exec::Exec;
use crate::poset::{Elem, Poset};
use crate::table::{Lookup, OpTable, PartialOpTable};
use crate::term::{Interp, Law};

#[derive(Debug, Clone)]
pub struct TableSearch<'p> {
    poset: &'p Poset,
    unit: Elem,
    start: PartialOpTable,
    free: Vec<(Elem, Elem)>,
    domains: Vec<Vec<Elem>>,
    axioms: Vec<AxiomId>,
    laws: Vec<Law>,
    product_laws: Vec<Law>,
    deadline: Option<Instant>,
}

impl<'p> TableSearch<'p> {
    /// Tables satisfying `x <= y iff x -> y = 1` plus `required`.
    ///
    /// The biconditional is built into the space: cells with `x <= y` hold the
    /// top, all other cells range over the non-top elements. If SREG is
    /// required, the unit row is fixed to the identity.
    pub fn implicative(poset: &'p Poset, required: &[AxiomId]) -> Result<TableSearch<'p>> {
        let top = poset.top().ok_or(Error::NoTop)?;
        let mut start = PartialOpTable::undefined(poset.size());
        let mut axioms = vec![AxiomId::LeTo];
        for &id in required {
            if !axioms.contains(&id) {
                axioms.push(id);
            }
        }
        if axioms.contains(&AxiomId::Regg) && !poset.classify_order().is_meet_semilattice {
            return Err(Error::NotMeetSemilattice);
        }
        for x in poset.elements() {
            for y in poset.elements() {
                if poset.leq(x, y) {
                    start.set(x, y, top);
                } else if x == top && axioms.contains(&AxiomId::Sreg) {
                    start.set(x, y, y);
                }
            }
        }
        let non_top: Vec<Elem> = poset.elements().filter(|&e| e != top).collect();
        Ok(TableSearch::over(poset, top, start, |_, _| non_top.clone(), axioms))
    }

    /// Tables with `x -> y = 1` whenever `x <= y`; other cells unrestricted.
    pub fn upward(poset: &'p Poset) -> Result<TableSearch<'p>> {
        let top = poset.top().ok_or(Error::NoTop)?;
        let start = PartialOpTable::from_fn(poset.size(), |x, y| poset.leq(x, y).then_some(top));
        let all: Vec<Elem> = poset.elements().collect();
        Ok(TableSearch::over(poset, top, start, |_, _| all.clone(), Vec::new()))
    }

    /// Every table on the carrier.
    pub fn unrestricted(poset: &'p Poset, unit: Elem) -> TableSearch<'p> {
        let all: Vec<Elem> = poset.elements().collect();
        let start = PartialOpTable::undefined(poset.size());
        TableSearch::over(poset, unit, start, |_, _| all.clone(), Vec::new())
    }

    fn over(
        poset: &'p Poset,
        unit: Elem,
        start: PartialOpTable,
        domain: impl Fn(Elem, Elem) -> Vec<Elem>,
        axioms: Vec<AxiomId>,
    ) -> TableSearch<'p> {
        let mut free = Vec::new();
        let mut domains = Vec::new();
        for x in poset.elements() {
            for y in poset.elements() {
                if start.at(x, y).is_none() {
                    free.push((x, y));
                    domains.push(domain(x, y));
                }
            }
        }
        TableSearch {
            poset,
            unit,
            start,
            free,
            domains,
            axioms,
            laws: Vec::new(),
            product_laws: Vec::new(),
            deadline: None,
        }
    }

    pub fn require(mut self, id: AxiomId) -> Result<Self> {
        if id == AxiomId::Regg && !self.poset.classify_order().is_meet_semilattice {
            return Err(Error::NotMeetSemilattice);
        }
        if !self.axioms.contains(&id) {
            self.axioms.push(id);
        }
        Ok(self)
    }

    pub fn law(mut self, law: Law) -> Self {
        if law.uses(OpKind::Mul) {
            self.product_laws.push(law);
        } else {
            self.laws.push(law);
        }
        self
    }

    pub fn deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    /// Number of cells the search has to fill.
    pub fn free_cells(&self) -> usize {
        self.free.len()
    }

    fn consistent(&self, t: &PartialOpTable) -> Result<bool> {
        for &id in &self.axioms {
            if axioms::find_violation(id, self.poset, self.unit, t)?.is_some() {
                return Ok(false);
            }
        }
        if !self.laws.is_empty() {
            let it = Interp { poset: self.poset, unit: self.unit, imp: Some(t), mul: None };
            for law in &self.laws {
                if law.violation(&it)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn accept_leaf(&self, t: &OpTable) -> Result<bool> {
        if self.product_laws.is_empty() {
            return Ok(true);
        }
        let Some(mul) = condition_s_product_of(self.poset, t).ok() else {
            return Ok(false);
        };
        let it = Interp { poset: self.poset, unit: self.unit, imp: Some(t), mul: Some(&mul as &dyn Lookup) };
        for law in &self.product_laws {
            if law.violation(&it)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn dfs(
        &self,
        k: usize,
        t: &mut PartialOpTable,
        nodes: &mut u64,
        emit: &mut dyn FnMut(OpTable) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        *nodes += 1;
        if (*nodes).is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout);
                }
            }
        }
        if k == self.free.len() {
            let total = t.to_total().expect("all cells assigned");
            if self.accept_leaf(&total)? {
                return Ok(emit(total));
            }
            return Ok(ControlFlow::Continue(()));
        }
        let (x, y) = self.free[k];
        for &v in &self.domains[k] {
            t.set(x, y, v);
            if self.consistent(t)? {
                if let ControlFlow::Break(()) = self.dfs(k + 1, t, nodes, emit)? {
                    t.clear(x, y);
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        t.clear(x, y);
        Ok(ControlFlow::Continue(()))
    }

    /// Visits matching tables in search order until `f` breaks.
    pub fn for_each(&self, mut f: impl FnMut(OpTable) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        let mut t = self.start.clone();
        if !self.consistent(&t)? {
            return Ok(ControlFlow::Continue(()));
        }
        let mut nodes = 0;
        self.dfs(0, &mut t, &mut nodes, &mut f)
    }

    /// First table in search order satisfying `pred`, with its payload.
    pub fn find_map<R>(&self, mut pred: impl FnMut(&OpTable) -> Option<R>) -> Result<Option<(OpTable, R)>> {
        let mut found = None;
        let _ = self.for_each(|t| match pred(&t) {
            Some(r) => {
                found = Some((t, r));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        })?;
        Ok(found)
    }

    /// All matching tables in search order. The tree is split at the first
    /// free cell; subtrees are explored independently and concatenated.
    pub fn collect(&self, exec: Exec) -> Result<Vec<OpTable>> {
        let mut root = self.start.clone();
        if !self.consistent(&root)? {
            return Ok(Vec::new());
        }
        if self.free.is_empty() {
            let total = root.to_total().expect("no free cells");
            return Ok(if self.accept_leaf(&total)? { vec![total] } else { Vec::new() });
        }
        let (x, y) = self.free[0];
        let parts = exec.map(&self.domains[0], |&v| -> Result<Vec<OpTable>> {
            let mut t = root.clone();
            t.set(x, y, v);
            let mut out = Vec::new();
            if self.consistent(&t)? {
                let mut nodes = 0;
                let _ = self.dfs(1, &mut t, &mut nodes, &mut |table| {
                    out.push(table);
                    ControlFlow::Continue(())
                })?;
            }
            Ok(out)
        });
        root.clear(x, y);
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
        }
        Ok(all)
    }

    pub fn count(&self, exec: Exec) -> Result<usize> {
        Ok(self.collect(exec)?.len())
    }
}

/// All implication tables on `poset` satisfying `x <= y iff x -> y = 1` and
/// every axiom in `required`, in deterministic order.
pub fn enumerate_imp_tables(poset: &Poset, required: &[AxiomId], exec: Exec) -> Result<Vec<OpTable>> {
    TableSearch::implicative(poset, required)?.collect(exec)
}
