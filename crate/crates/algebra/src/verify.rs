//! Exhaustive theorem sweeps behind `verify-paper`.
//!
//! Tables are enumerated on every poset with a top element up to
//! `size_max`; algebras built from the order alone (derived j-implications,
//! poset counts) go up to `derived_max`.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::adjunction::{self, condition_s_product_of, groupoid_profile};
use crate::algebra::OrderedAlgebra;
use crate::axioms::{self, AxiomId};
use crate::enumerate::enumerate_posets_upto;
use crate::error::Result;
use crate::exec::Exec;
use crate::hunt::{hunt, Assumption, HuntQuery, HuntVerdict, Target};
use crate::poset::{OrderClass, Poset};
use crate::report::Report;
use crate::search::{enumerate_imp_tables, TableSearch};
use crate::sectional::{
    check_l1, derive_j_implication, is_sectionally_pseudocomplemented, join_extension, sectional_pc,
};
use crate::table::OpTable;
use crate::varieties::{self, Variant};

/// Unlabelled posets on 1..=6 elements.
pub const POSET_COUNTS: [usize; 6] = [1, 2, 5, 16, 63, 318];

pub const ENUMERATION_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const LEMMA_TIME_LIMIT: Duration = Duration::from_secs(120);
pub const SUITE_TIME_LIMIT: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub size_max: usize,
    pub derived_max: usize,
    pub exec: Exec,
}

impl SuiteConfig {
    /// Derived algebras go two sizes further, and never below 6.
    pub fn new(size_max: usize, exec: Exec) -> SuiteConfig {
        SuiteConfig { size_max, derived_max: (size_max + 2).max(6), exec }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checked: usize,
    pub exceptions: usize,
    /// First exception in enumeration order, or extra information.
    pub detail: Option<String>,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.exceptions == 0 && self.time_limit.is_none_or(|l| self.elapsed <= l)
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} checked={} exceptions={}",
            self.id,
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked,
            self.exceptions
        )?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Checked-instance counter that remembers the first failure.
#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    exceptions: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.exceptions += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn report(&mut self, r: &Report, poset: &Poset, context: impl Fn() -> String) {
        let bad = r.first_failure();
        self.check(bad.is_none(), || {
            let v = bad.expect("failure");
            let w = v.witness.as_ref().map(|w| w.display(poset)).unwrap_or_default();
            format!("{}: {} fails {w}", context(), v.law)
        });
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.exceptions += other.exceptions;
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }

    fn merged(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }
}

fn label(p: &Poset, t: &OpTable) -> String {
    format!("{}-element poset {:?} with imp {:?}", p.size(), p, t)
}

/// Canonical posets with a greatest element, sizes `1..=max`.
fn posets_with_top(max: usize, exec: Exec) -> Result<Vec<Poset>> {
    Ok(enumerate_posets_upto(max, OrderClass::WithTop, exec)?.into_iter().flatten().collect())
}

/// Posets of size `<= max` paired with all their wBCK* tables.
fn wbck_corpus(max: usize, exec: Exec) -> Result<Vec<(Poset, Vec<OpTable>)>> {
    let posets = posets_with_top(max, exec)?;
    let tables = exec.map(&posets, |p| enumerate_imp_tables(p, &[AxiomId::WExch], Exec::Sequential));
    posets.into_iter().zip(tables).map(|(p, t)| Ok((p, t?))).collect()
}

fn finish(id: u8, title: &'static str, tally: Tally, start: Instant, limit: Option<Duration>) -> CriterionOutcome {
    CriterionOutcome {
        id,
        title,
        checked: tally.checked,
        exceptions: tally.exceptions,
        detail: tally.first,
        elapsed: start.elapsed(),
        time_limit: limit,
    }
}

/// Poset counts for sizes `1..=6` against the published sequence.
pub fn criterion_enumeration(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let levels = enumerate_posets_upto(POSET_COUNTS.len(), OrderClass::Any, cfg.exec)?;
    let mut tally = Tally::default();
    for (i, level) in levels.iter().enumerate() {
        tally.check(level.len() == POSET_COUNTS[i], || {
            format!("size {}: {} posets, expected {}", i + 1, level.len(), POSET_COUNTS[i])
        });
    }
    Ok(finish(1, "poset enumeration", tally, start, Some(ENUMERATION_TIME_LIMIT)))
}

/// On join-semilattices: derived j-implications satisfy W-EXCH, REG, COMP
/// and L1, and every table satisfying the three axioms restricts to the
/// sectional pseudocomplement.
pub fn criterion_sectional(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let forward_posets: Vec<Poset> = enumerate_posets_upto(cfg.derived_max, OrderClass::JoinSemilattice, cfg.exec)?
        .into_iter()
        .flatten()
        .filter(|p| is_sectionally_pseudocomplemented(p).all_hold())
        .collect();
    let forward = cfg.exec.map(&forward_posets, |p| -> Result<Tally> {
        let mut tally = Tally::default();
        let Some(t) = join_extension(p)? else {
            tally.check(false, || format!("{p:?}: join extension undefined"));
            return Ok(tally);
        };
        let mut r = Report::new();
        let a = OrderedAlgebra::implicative(p.clone(), t.clone())?;
        r.extend(axioms::check_axioms(&a, &[AxiomId::WExch, AxiomId::Reg, AxiomId::Comp])?);
        r.extend(check_l1(p, &t)?);
        tally.report(&r, p, || label(p, &t));
        Ok(tally)
    });
    let converse_posets: Vec<Poset> =
        enumerate_posets_upto(cfg.size_max, OrderClass::JoinSemilattice, cfg.exec)?.into_iter().flatten().collect();
    let sjp = [AxiomId::WExch, AxiomId::Reg, AxiomId::Comp];
    let converse = cfg.exec.map(&converse_posets, |p| -> Result<Tally> {
        let mut tally = Tally::default();
        for t in enumerate_imp_tables(p, &sjp, Exec::Sequential)? {
            let mut ok = true;
            for x in p.elements() {
                for y in p.elements().filter(|&y| p.leq(y, x)) {
                    ok &= sectional_pc(p, x, y)? == Some(t.at(x, y));
                }
            }
            tally.check(ok, || format!("{}: restriction is not the sectional pseudocomplement", label(p, &t)));
        }
        Ok(tally)
    });
    let tally = Tally::merged(forward.into_iter().chain(converse).collect::<Result<Vec<_>>>()?);
    Ok(finish(2, "sectional pseudocomplements", tally, start, None))
}

/// `imp(x, y) = max {imp(z, y) : x, y <= z}`.
fn unique_extension_holds(p: &Poset, t: &OpTable) -> bool {
    p.elements().all(|x| {
        p.elements().all(|y| {
            let zs: Vec<usize> = p.elements().filter(|&z| p.leq(x, z) && p.leq(y, z)).collect();
            let v = t.at(x, y);
            zs.iter().any(|&z| t.at(z, y) == v) && zs.iter().all(|&z| p.leq(t.at(z, y), v))
        })
    })
}

fn derived_tables(cfg: &SuiteConfig) -> Result<Vec<(Poset, OpTable)>> {
    let posets = posets_with_top(cfg.derived_max, cfg.exec)?;
    let derived = cfg.exec.map(&posets, |p| {
        if !is_sectionally_pseudocomplemented(p).all_hold() {
            return Ok(None);
        }
        derive_j_implication(p).map(|j| j.table)
    });
    let mut out = Vec::new();
    for (p, t) in posets.into_iter().zip(derived) {
        if let Some(t) = t? {
            out.push((p, t));
        }
    }
    Ok(out)
}

/// The eight consequences of the wBCK* axioms and the unique-extension
/// formula, on enumerated and derived tables.
pub fn criterion_wbck_lemmas(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let check = |p: &Poset, t: &OpTable| -> Result<Tally> {
        let mut tally = Tally::default();
        let a = OrderedAlgebra::implicative(p.clone(), t.clone())?;
        tally.report(&axioms::check_derived_laws(&a)?, p, || label(p, t));
        tally.check(unique_extension_holds(p, t), || format!("{}: unique extension formula fails", label(p, t)));
        Ok(tally)
    };
    let corpus = wbck_corpus(cfg.size_max, cfg.exec)?;
    let enumerated = cfg.exec.map(&corpus, |(p, ts)| -> Result<Tally> {
        ts.iter().map(|t| check(p, t)).collect::<Result<Vec<_>>>().map(Tally::merged)
    });
    let derived = derived_tables(cfg)?;
    let from_order = cfg.exec.map(&derived, |(p, t)| check(p, t));
    let tally = Tally::merged(enumerated.into_iter().chain(from_order).collect::<Result<Vec<_>>>()?);
    Ok(finish(3, "wbck lemma and unique extension", tally, start, Some(LEMMA_TIME_LIMIT)))
}

fn table_set(p: &Poset, required: &[AxiomId]) -> Result<BTreeSet<OpTable>> {
    Ok(enumerate_imp_tables(p, required, Exec::Sequential)?.into_iter().collect())
}

/// RPC-8 and RPC-9 against W-EXCH, REG and RPC-9; on meet-semilattices the
/// sectionally j-pseudocomplemented tables with ISOT against the relatively
/// pseudocomplemented ones; the ISOT witness on the pentagon.
pub fn criterion_rpc(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    use AxiomId::*;
    let start = Instant::now();
    let posets = posets_with_top(cfg.size_max, cfg.exec)?;
    let enumerated = cfg.exec.map(&posets, |p| -> Result<Tally> {
        let mut tally = Tally::default();
        let relpc = table_set(p, &[Rpc8, Rpc9])?;
        let alt = table_set(p, &[WExch, Reg, Rpc9])?;
        tally.check(relpc == alt, || format!("{p:?}: RPC characterisation differs"));
        if p.classify_order().is_meet_semilattice {
            let sjp_isot = table_set(p, &[WExch, Reg, Comp, Isot])?;
            tally.check(sjp_isot == relpc, || format!("{p:?}: sjp with ISOT differs from relpc"));
        }
        Ok(tally)
    });
    let derived = derived_tables(cfg)?;
    let from_order = cfg.exec.map(&derived, |(p, t)| -> Result<Tally> {
        let mut tally = Tally::default();
        let top = p.top().expect("top");
        let h = |id| axioms::holds(id, p, top, t);
        let relpc = h(Rpc8)? && h(Rpc9)?;
        tally.check(relpc == (h(WExch)? && h(Reg)? && h(Rpc9)?), || format!("{}: RPC characterisation", label(p, t)));
        if p.classify_order().is_meet_semilattice {
            let sjp = h(WExch)? && h(Reg)? && h(Comp)?;
            tally.check((sjp && h(Isot)?) == relpc, || format!("{}: sjp with ISOT vs relpc", label(p, t)));
        }
        Ok(tally)
    });
    let mut tally = Tally::merged(enumerated.into_iter().chain(from_order).collect::<Result<Vec<_>>>()?);
    let n5 = Poset::pentagon();
    let imp = derive_j_implication(&n5)?.table.expect("pentagon is sectionally pseudocomplemented");
    let witness = axioms::find_violation(Isot, &n5, 4, &imp)?;
    tally.check(witness == Some(vec![1, 0, 2]), || format!("pentagon ISOT witness {witness:?}"));
    Ok(finish(4, "relative pseudocomplementation", tally, start, None))
}

/// Condition-S products on wBCK* tables: adjunction, the four conditions,
/// commutativity with neutral top, REG iff idempotent, the idempotent case
/// and distributivity over joins.
pub fn criterion_condition_s(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let corpus = wbck_corpus(cfg.size_max, cfg.exec)?;
    let parts = cfg.exec.map(&corpus, |(p, tables)| -> Result<Tally> {
        let mut tally = Tally::default();
        let top = p.top().expect("top");
        for t in tables {
            let Ok(mul) = condition_s_product_of(p, t) else { continue };
            let a = OrderedAlgebra::new(p.clone(), top, Some(t.clone()), Some(mul.clone()))?;
            let ctx = || format!("{} and product {:?}", label(p, t), mul);
            tally.report(&adjunction::check_adjunction(&a)?, p, ctx);
            let g = groupoid_profile(p, top, &mul);
            tally.check(g.commutative && g.integral, || format!("{}: product not commutative with neutral top", ctx()));
            let reg = axioms::holds(AxiomId::Reg, p, top, t)?;
            tally.check(reg == g.idempotent, || format!("{}: REG {reg}, idempotent {}", ctx(), g.idempotent));
            if g.is_idempotent_pocrig() {
                tally.report(&adjunction::check_idempotent_pocrig_lemma(&a)?, p, ctx);
            }
            if p.classify_order().is_join_semilattice {
                tally.report(&adjunction::check_mult_semilattice(&a)?, p, ctx);
            }
        }
        Ok(tally)
    });
    let tally = Tally::merged(parts.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(finish(5, "condition S and adjunction", tally, start, None))
}

fn law_set(p: &Poset, laws: [crate::term::Law; 2]) -> Result<BTreeSet<OpTable>> {
    let mut s = TableSearch::upward(p)?.require(AxiomId::Bck2)?.require(AxiomId::Sreg)?;
    for l in laws {
        s = s.law(l);
    }
    Ok(s.collect(Exec::Sequential)?.into_iter().collect())
}

/// Pocrigs `(p, imp, product)` whose implication is wBCK*; the product is the
/// condition-S product and its residual must be `imp`.
pub fn pocrigs_from_tables(p: &Poset, tables: &[OpTable]) -> Vec<(OpTable, OpTable)> {
    let top = p.top().expect("top");
    tables
        .iter()
        .filter_map(|t| {
            let mul = condition_s_product_of(p, t).ok()?;
            let g = groupoid_profile(p, top, &mul);
            (g.is_pocrig() && g.residual.as_ref() == Some(t)).then(|| (t.clone(), mul))
        })
        .collect()
}

/// The two equational descriptions as exact biconditionals, REG iff REGG,
/// and the majority and Mal'cev terms of both varieties.
pub fn criterion_varieties(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let corpus = wbck_corpus(cfg.size_max, cfg.exec)?;
    let parts = cfg.exec.map(&corpus, |(p, wbck)| -> Result<Tally> {
        let mut tally = Tally::default();
        let flags = p.classify_order();
        let top = p.top().expect("top");
        let wbck_set: BTreeSet<OpTable> = wbck.iter().cloned().collect();
        if flags.is_join_semilattice {
            let four = law_set(p, varieties::uppvar_laws())?;
            tally.check(four == wbck_set, || {
                format!("{p:?}: upper laws select {} tables, wbck {}", four.len(), wbck_set.len())
            });
            for (imp, mul) in pocrigs_from_tables(p, wbck) {
                let a = OrderedAlgebra::new(p.clone(), top, Some(imp.clone()), Some(mul))?;
                tally.report(&varieties::verify_arithmetical_terms(&a, Variant::UpperPocrig)?, p, || label(p, &imp));
            }
        }
        if flags.is_meet_semilattice {
            let four = law_set(p, varieties::lowvar_laws())?;
            tally.check(four == wbck_set, || {
                format!("{p:?}: lower laws select {} tables, wbck {}", four.len(), wbck_set.len())
            });
            for t in wbck {
                let reg = axioms::holds(AxiomId::Reg, p, top, t)?;
                let regg = axioms::holds(AxiomId::Regg, p, top, t)?;
                tally.check(reg == regg, || format!("{}: REG {reg}, REGG {regg}", label(p, t)));
                let a = OrderedAlgebra::implicative(p.clone(), t.clone())?;
                tally.report(&varieties::verify_arithmetical_terms(&a, Variant::LowerWbck)?, p, || label(p, t));
            }
        }
        Ok(tally)
    });
    let tally = Tally::merged(parts.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(finish(6, "equational classes and arithmetical terms", tally, start, None))
}

/// `hunt --assume wbck --refute bck1` gives the same verdict sequentially,
/// in parallel and on a second run, and a countermodel re-verifies.
pub fn criterion_hunt(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let q =
        HuntQuery::new(cfg.size_max, vec![Assumption::Class(axioms::AlgebraClass::Wbck)], Target::Axiom(AxiomId::Bck1));
    let runs = [hunt(&q, Exec::Sequential)?, hunt(&q, Exec::Parallel)?, hunt(&q, cfg.exec)?];
    let mut tally = Tally::default();
    tally.check(runs.iter().all(|r| *r == runs[0]), || "verdicts differ between runs".into());
    let detail = match &runs[0] {
        HuntVerdict::Exhausted(n) => format!("exhausted at size {n}"),
        HuntVerdict::Countermodel(c) => {
            let a = &c.algebra;
            let wbck = axioms::check_axioms(a, &[AxiomId::LeTo, AxiomId::WExch])?;
            tally.check(wbck.all_hold(), || "countermodel is not wbck".into());
            let bck1 = axioms::check_axiom(a, AxiomId::Bck1)?;
            let again = bck1.get("BCK1").and_then(|v| v.witness.clone());
            tally.check(again.as_ref() == Some(&c.witness), || "countermodel does not re-verify".into());
            format!("countermodel on {} elements, {}", a.size(), c.witness.display(a.poset()))
        }
    };
    let mut out = finish(7, "hunter stability", tally, start, None);
    if out.detail.is_none() {
        out.detail = Some(detail);
    }
    Ok(out)
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    match id {
        1 => criterion_enumeration(cfg),
        2 => criterion_sectional(cfg),
        3 => criterion_wbck_lemmas(cfg),
        4 => criterion_rpc(cfg),
        5 => criterion_condition_s(cfg),
        6 => criterion_varieties(cfg),
        7 => criterion_hunt(cfg),
        _ => Err(crate::error::Error::PreconditionViolation(format!("no criterion {id}"))),
    }
}

pub const CRITERIA: [u8; 7] = [1, 2, 3, 4, 5, 6, 7];

/// All criteria in order, plus the total running time.
pub fn verify_paper(cfg: &SuiteConfig) -> Result<(Vec<CriterionOutcome>, Duration)> {
    let start = Instant::now();
    let outcomes = CRITERIA.iter().map(|&id| run_criterion(id, cfg)).collect::<Result<Vec<_>>>()?;
    Ok((outcomes, start.elapsed()))
}
