//! Sectional pseudocomplements and the implications built from them.
//!
//! For `y <= x`, `x * y` is the greatest `u` in `[y)` such that `y` is the
//! only lower bound of `u` and `x` inside `[y)` (written `u ⊥_y x`). The set
//! of such `u` is down-closed in `[y)`, so `x * y` exists exactly when that
//! set has a maximum. A merely maximal element never counts.

use crate::axioms::{self, AxiomId};
use crate::error::{Error, Result};
use crate::poset::{bits, Elem, Poset};
use crate::report::{Report, Verdict, Witness};
use crate::table::{Lookup, OpTable, PartialOpTable};

/// Least `v` in `[y)` below both `u` and `x` other than `y` itself.
pub fn perp_witness(p: &Poset, u: Elem, x: Elem, y: Elem) -> Result<Option<Elem>> {
    if !(p.leq(y, u) && p.leq(y, x)) {
        return Err(Error::PreconditionViolation(format!(
            "{} and {} must both lie in [{})",
            p.name(u),
            p.name(x),
            p.name(y)
        )));
    }
    let common = p.down_mask(u) & p.down_mask(x) & p.up_mask(y) & !(1u64 << y);
    Ok(bits(common).next())
}

/// `u ⊥_y x`.
pub fn perp(p: &Poset, u: Elem, x: Elem, y: Elem) -> Result<bool> {
    Ok(perp_witness(p, u, x, y)?.is_none())
}

fn perp_set(p: &Poset, x: Elem, y: Elem) -> u64 {
    bits(p.up_mask(y))
        .filter(|&u| p.down_mask(u) & p.down_mask(x) & p.up_mask(y) == 1u64 << y)
        .fold(0, |acc, u| acc | 1u64 << u)
}

fn maximum(p: &Poset, set: u64) -> Option<Elem> {
    bits(set).find(|&m| set & !p.down_mask(m) == 0)
}

/// `x * y` for `y <= x`.
pub fn sectional_pc(p: &Poset, x: Elem, y: Elem) -> Result<Option<Elem>> {
    if !p.leq(y, x) {
        return Err(Error::PreconditionViolation(format!(
            "{} * {} needs {} <= {}",
            p.name(x),
            p.name(y),
            p.name(y),
            p.name(x)
        )));
    }
    Ok(maximum(p, perp_set(p, x, y)))
}

/// The partial operation `*`; cells with `y` not below `x` stay undefined.
pub fn sectional_pc_table(p: &Poset) -> PartialOpTable {
    PartialOpTable::from_fn(p.size(), |x, y| if p.leq(y, x) { maximum(p, perp_set(p, x, y)) } else { None })
}

/// Holds iff `p` has a top and `x * y` exists for every `y <= x`.
pub fn is_sectionally_pseudocomplemented(p: &Poset) -> Report {
    let law = "SPC";
    if p.top().is_none() {
        return Report::from_iter([Verdict::fails(law, Witness::empty()).with_note("no top element")]);
    }
    let star = sectional_pc_table(p);
    let missing = p
        .elements()
        .flat_map(|x| p.elements().map(move |y| (x, y)))
        .find(|&(x, y)| p.leq(y, x) && star.at(x, y).is_none());
    Report::from_iter([Verdict::from_violation(law, missing.map(|(x, y)| Witness::new(&["x", "y"], vec![x, y])))])
}

fn require_spc(p: &Poset) -> Result<PartialOpTable> {
    if p.top().is_none() {
        return Err(Error::NoTop);
    }
    let star = sectional_pc_table(p);
    for x in p.elements() {
        for y in p.elements() {
            if p.leq(y, x) && star.at(x, y).is_none() {
                return Err(Error::NotSectionallyPc { x, y });
            }
        }
    }
    Ok(star)
}

/// Result of [`derive_j_implication`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JImplication {
    /// Present iff `max{z * y : z >= x, y}` exists for every pair.
    pub table: Option<OpTable>,
    pub report: Report,
}

impl JImplication {
    pub fn is_valid(&self) -> bool {
        self.table.is_some() && self.report.all_hold()
    }
}

/// `x -> y = max{z * y : x, y <= z}`, validated against the three
/// characterising axioms (and, on join-semilattices, against
/// `x -> y = (x ∨ y) * y`).
pub fn derive_j_implication(p: &Poset) -> Result<JImplication> {
    let star = require_spc(p)?;
    let top = p.top().expect("checked");
    let mut report = Report::new();
    let n = p.size();
    let mut cells = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let above = p.up_mask(x) & p.up_mask(y);
            let values = bits(above).fold(0u64, |acc, z| acc | 1u64 << star.at(z, y).expect("y <= z"));
            match maximum(p, values) {
                Some(m) => cells[x * n + y] = m,
                None => {
                    report.push(Verdict::fails("J-MAX", Witness::new(&["x", "y"], vec![x, y])));
                    return Ok(JImplication { table: None, report });
                }
            }
        }
    }
    report.push(Verdict::holds("J-MAX"));
    let table = OpTable::from_fn(n, |x, y| cells[x * n + y]);
    for id in [AxiomId::WExch, AxiomId::Reg, AxiomId::Comp] {
        let v = axioms::find_violation(id, p, top, &table)?;
        report.push(Verdict::from_violation(id.name(), v.map(|t| Witness::new(id.vars(), t))));
    }
    if p.classify_order().is_join_semilattice {
        let disagreement = p.elements().flat_map(|x| p.elements().map(move |y| (x, y))).find(|&(x, y)| {
            let j = p.join(x, y).expect("join-semilattice");
            star.at(j, y) != Some(table.at(x, y))
        });
        report.push(Verdict::from_violation("JOIN-EXT", disagreement.map(|(x, y)| Witness::new(&["x", "y"], vec![x, y]))));
    }
    Ok(JImplication { table: Some(table), report })
}

/// `x -> y = (x ∨ y) * y` on a join-semilattice.
pub fn join_extension(p: &Poset) -> Result<Option<OpTable>> {
    if !p.classify_order().is_join_semilattice {
        return Err(Error::NotJoinSemilattice);
    }
    let star = sectional_pc_table(p);
    Ok(OpTable::try_from_fn(p.size(), |x, y| star.at(p.join(x, y)?, y)))
}

/// `x -> y = x * (x ∧ y)` on a meet-semilattice; `None` if some `*` value
/// is undefined.
pub fn derive_m_implication(p: &Poset) -> Result<Option<OpTable>> {
    if !p.classify_order().is_meet_semilattice {
        return Err(Error::NotMeetSemilattice);
    }
    let star = sectional_pc_table(p);
    Ok(OpTable::try_from_fn(p.size(), |x, y| star.at(x, p.meet(x, y)?)))
}

/// `z <= x -> y` iff `(z ∨ y) ∧ (x ∨ y)` exists and equals `y`,
/// witnesses ordered `(x, y, z)`.
pub fn check_l1(p: &Poset, imp: &dyn Lookup) -> Result<Report> {
    if !p.classify_order().is_join_semilattice {
        return Err(Error::NotJoinSemilattice);
    }
    let j = |a, b| p.join(a, b).expect("join-semilattice");
    let v = axioms::scan(p.size(), 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = p.leq(z, imp.get(x, y)?);
        let rhs = p.meet(j(z, y), j(x, y)) == Some(y);
        Some(lhs == rhs)
    });
    Ok(Report::from_iter([Verdict::from_violation("L1", v.map(|t| Witness::new(&["x", "y", "z"], t)))]))
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Elem = 1;
    const B: Elem = 2;
    const C: Elem = 3;

    #[test]
    fn perp_examples() {
        let m2 = Poset::diamond();
        assert!(perp(&m2, A, B, 0).unwrap());
        assert_eq!(perp_witness(&m2, A, A, 0).unwrap(), Some(A));
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(perp_witness(&c3, 1, 2, 0).unwrap(), Some(1));
        assert!(matches!(perp(&c3, 0, 2, 1), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn pc_examples() {
        assert_eq!(sectional_pc(&Poset::diamond(), A, 0).unwrap(), Some(B));
        assert_eq!(sectional_pc(&Poset::pentagon(), B, 0).unwrap(), Some(A));
        let n5 = Poset::pentagon();
        for x in n5.elements() {
            assert_eq!(sectional_pc(&n5, x, x).unwrap(), Some(4));
        }
        assert!(sectional_pc(&n5, 0, A).is_err());
    }

    #[test]
    fn maximal_is_not_maximum() {
        // M3: three atoms, no pseudocomplement of an atom
        let m3 = Poset::from_generators(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(sectional_pc(&m3, 1, 0).unwrap(), None);
        let r = is_sectionally_pseudocomplemented(&m3);
        assert_eq!(r.verdicts[0].witness.as_ref().unwrap().values, vec![1, 0]);
        assert_eq!(derive_j_implication(&m3), Err(Error::NotSectionallyPc { x: 1, y: 0 }));
    }

    #[test]
    fn spc_examples() {
        assert!(is_sectionally_pseudocomplemented(&Poset::pentagon()).all_hold());
        let anti = Poset::antichain(2).unwrap();
        let r = is_sectionally_pseudocomplemented(&anti);
        assert!(!r.all_hold());
        assert_eq!(r.verdicts[0].note.as_deref(), Some("no top element"));
        for n in 1..=6 {
            let c = Poset::chain(n).unwrap();
            assert!(is_sectionally_pseudocomplemented(&c).all_hold());
            for x in 0..n {
                for y in 0..=x {
                    let want = if x == y { n - 1 } else { y };
                    assert_eq!(sectional_pc(&c, x, y).unwrap(), Some(want));
                }
            }
        }
    }

    #[test]
    fn j_implication_examples() {
        let c3 = derive_j_implication(&Poset::chain(3).unwrap()).unwrap();
        assert!(c3.is_valid());
        let t = c3.table.unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(t.at(x, y), if x <= y { 2 } else { y });
            }
        }

        let m2 = derive_j_implication(&Poset::diamond()).unwrap();
        assert!(m2.is_valid());
        let t = m2.table.unwrap();
        assert_eq!(t.at(A, B), B);
        assert_eq!(t.at(A, 0), B);

        let n5 = derive_j_implication(&Poset::pentagon()).unwrap();
        assert!(n5.is_valid());
        let t = n5.table.unwrap();
        assert_eq!(t.at(A, 0), C);
        assert_eq!(t.at(A, B), B);
    }

    #[test]
    fn m_implication_examples() {
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(derive_m_implication(&c3).unwrap(), derive_j_implication(&c3).unwrap().table);
        let m2 = derive_m_implication(&Poset::diamond()).unwrap().unwrap();
        assert_eq!(m2.at(A, B), B);
        let n5 = Poset::pentagon();
        let t = derive_m_implication(&n5).unwrap().unwrap();
        for x in n5.elements() {
            assert_eq!(t.at(x, x), 4);
        }
        let vee = Poset::from_generators(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(derive_m_implication(&vee), Err(Error::NotMeetSemilattice));
    }

    #[test]
    fn l1_examples() {
        let m2 = Poset::diamond();
        let t = derive_j_implication(&m2).unwrap().table.unwrap();
        assert!(check_l1(&m2, &t).unwrap().all_hold());
        let n5 = Poset::pentagon();
        let t = derive_j_implication(&n5).unwrap().table.unwrap();
        assert!(check_l1(&n5, &t).unwrap().all_hold());

        let two = Poset::chain(2).unwrap();
        let r = check_l1(&two, &OpTable::constant(2, 1)).unwrap();
        assert_eq!(r.verdicts[0].witness.as_ref().unwrap().values, vec![1, 0, 1]);

        let m2_meetless = Poset::from_generators(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(check_l1(&m2_meetless, &OpTable::constant(3, 0)), Err(Error::NotJoinSemilattice));
    }
}
