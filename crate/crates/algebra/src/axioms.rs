//! The implication axiom catalogue and class memberships.
//!
//! Every law is checked by a direct scan over all assignments in
//! lexicographic order (variables in the order listed by [`AxiomId::vars`],
//! elements by index), so the first violation found is the least one.
//!
//! The scans run against any [`Lookup`]. A cell that is not yet defined makes
//! the instance inconclusive and it is skipped; on total tables this never
//! happens. The table search relies on this to prune partial assignments.

use std::fmt;
use std::str::FromStr;

use crate::algebra::OrderedAlgebra;
use crate::error::{Error, Result};
use crate::poset::{Elem, Poset};
use crate::report::{Report, Verdict, Witness};
use crate::table::Lookup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// if x <= y -> z then y <= x -> z
    WExch,
    /// if x <= x -> y then x <= y
    Reg,
    /// if x /\ y exists then x <= y -> (x /\ y)
    Comp,
    /// if x <= y then z -> x <= z -> y
    Isot,
    /// x /\ (x -> y) <= y
    Regg,
    /// x <= y iff x -> y = 1
    LeTo,
    /// x <= (x -> y) -> y
    Bck2,
    /// if x <= y then y -> z <= x -> z
    Antitone,
    /// y <= (x -> y) -> y
    Ubound,
    /// ((x -> y) -> y) -> y = x -> y
    Expan,
    /// x -> x = 1
    Refl,
    /// x <= y -> x
    H1,
    /// 1 -> x = x
    Sreg,
    /// x -> 1 = 1
    Unit,
    /// x -> y <= (y -> z) -> (x -> z)
    Bck1,
    /// x -> (x -> y) = x -> y
    HilbContr,
    /// x -> (y -> z) <= (x -> y) -> (x -> z)
    PosImpl,
    /// if u <= x -> y and v <= x, u then v <= y
    Rpc8,
    /// if every common lower bound of x and u is below y then u <= x -> y
    Rpc9,
    /// if z <= x and z <= x -> y then z <= y
    Rpc10,
}

impl AxiomId {
    pub const ALL: [AxiomId; 20] = [
        AxiomId::WExch,
        AxiomId::Reg,
        AxiomId::Comp,
        AxiomId::Isot,
        AxiomId::Regg,
        AxiomId::LeTo,
        AxiomId::Bck2,
        AxiomId::Antitone,
        AxiomId::Ubound,
        AxiomId::Expan,
        AxiomId::Refl,
        AxiomId::H1,
        AxiomId::Sreg,
        AxiomId::Unit,
        AxiomId::Bck1,
        AxiomId::HilbContr,
        AxiomId::PosImpl,
        AxiomId::Rpc8,
        AxiomId::Rpc9,
        AxiomId::Rpc10,
    ];

    /// The eight consequences of the wBCK* axioms.
    pub const DERIVED: [AxiomId; 8] = [
        AxiomId::Bck2,
        AxiomId::Antitone,
        AxiomId::Ubound,
        AxiomId::Expan,
        AxiomId::Refl,
        AxiomId::H1,
        AxiomId::Sreg,
        AxiomId::Unit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::WExch => "W-EXCH",
            AxiomId::Reg => "REG",
            AxiomId::Comp => "COMP",
            AxiomId::Isot => "ISOT",
            AxiomId::Regg => "REGG",
            AxiomId::LeTo => "LE-TO",
            AxiomId::Bck2 => "BCK2",
            AxiomId::Antitone => "ANTITONE",
            AxiomId::Ubound => "UBOUND",
            AxiomId::Expan => "EXPAN",
            AxiomId::Refl => "REFL",
            AxiomId::H1 => "H1",
            AxiomId::Sreg => "SREG",
            AxiomId::Unit => "UNIT",
            AxiomId::Bck1 => "BCK1",
            AxiomId::HilbContr => "HILB-CONTR",
            AxiomId::PosImpl => "POS-IMPL",
            AxiomId::Rpc8 => "RPC-8",
            AxiomId::Rpc9 => "RPC-9",
            AxiomId::Rpc10 => "RPC-10",
        }
    }

    /// Variable names in witness order.
    pub fn vars(self) -> &'static [&'static str] {
        match self {
            AxiomId::Refl | AxiomId::Sreg | AxiomId::Unit => &["x"],
            AxiomId::Reg
            | AxiomId::Comp
            | AxiomId::Regg
            | AxiomId::LeTo
            | AxiomId::Bck2
            | AxiomId::Ubound
            | AxiomId::Expan
            | AxiomId::H1
            | AxiomId::HilbContr => &["x", "y"],
            AxiomId::Isot => &["z", "x", "y"],
            AxiomId::WExch | AxiomId::Antitone | AxiomId::Bck1 | AxiomId::PosImpl | AxiomId::Rpc10 => &["x", "y", "z"],
            AxiomId::Rpc8 => &["x", "y", "u", "v"],
            AxiomId::Rpc9 => &["x", "y", "u"],
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    /// Case-insensitive; `-` may be omitted (`bck1`, `wexch`, `rpc8`).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = |t: &str| t.to_ascii_uppercase().replace(['-', '_'], "");
        let wanted = key(s);
        AxiomId::ALL.into_iter().find(|id| key(id.name()) == wanted).ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// Calls `f` on every tuple of `arity` elements in lexicographic order and
/// returns the first tuple for which it yields `Some(false)`.
pub(crate) fn scan(n: usize, arity: usize, mut f: impl FnMut(&[Elem]) -> Option<bool>) -> Option<Vec<Elem>> {
    let mut t = vec![0; arity];
    loop {
        if f(&t) == Some(false) {
            return Some(t);
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Least violating assignment of `id`, or `None` if it holds
/// (on partial tables: if no instance is definitely violated).
pub fn find_violation(id: AxiomId, p: &Poset, unit: Elem, imp: &dyn Lookup) -> Result<Option<Vec<Elem>>> {
    let n = p.size();
    let le = |a: Elem, b: Elem| p.leq(a, b);
    let i = |a: Elem, b: Elem| imp.get(a, b);
    let arity = id.vars().len();
    let found = match id {
        AxiomId::LeTo => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(le(x, y) == (i(x, y)? == unit))
        }),
        AxiomId::WExch => scan(n, arity, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            if !le(x, i(y, z)?) {
                return Some(true);
            }
            Some(le(y, i(x, z)?))
        }),
        AxiomId::Reg => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(!le(x, i(x, y)?) || le(x, y))
        }),
        AxiomId::Comp => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            match p.meet(x, y) {
                None => Some(true),
                Some(m) => Some(le(x, i(y, m)?)),
            }
        }),
        AxiomId::Isot => scan(n, arity, |t| {
            let (z, x, y) = (t[0], t[1], t[2]);
            if !le(x, y) {
                return Some(true);
            }
            Some(le(i(z, x)?, i(z, y)?))
        }),
        AxiomId::Regg => {
            if !p.classify_order().is_meet_semilattice {
                return Err(Error::NotMeetSemilattice);
            }
            scan(n, arity, |t| {
                let (x, y) = (t[0], t[1]);
                Some(le(p.meet(x, i(x, y)?)?, y))
            })
        }
        AxiomId::Bck2 => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(le(x, i(i(x, y)?, y)?))
        }),
        AxiomId::Antitone => scan(n, arity, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            if !le(x, y) {
                return Some(true);
            }
            Some(le(i(y, z)?, i(x, z)?))
        }),
        AxiomId::Ubound => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(le(y, i(i(x, y)?, y)?))
        }),
        AxiomId::Expan => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(i(i(i(x, y)?, y)?, y)? == i(x, y)?)
        }),
        AxiomId::Refl => scan(n, arity, |t| Some(i(t[0], t[0])? == unit)),
        AxiomId::H1 => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            Some(le(x, i(y, x)?))
        }),
        AxiomId::Sreg => scan(n, arity, |t| Some(i(unit, t[0])? == t[0])),
        AxiomId::Unit => scan(n, arity, |t| Some(i(t[0], unit)? == unit)),
        AxiomId::Bck1 => scan(n, arity, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            Some(le(i(x, y)?, i(i(y, z)?, i(x, z)?)?))
        }),
        AxiomId::HilbContr => scan(n, arity, |t| {
            let (x, y) = (t[0], t[1]);
            let xy = i(x, y)?;
            Some(i(x, xy)? == xy)
        }),
        AxiomId::PosImpl => scan(n, arity, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            Some(le(i(x, i(y, z)?)?, i(i(x, y)?, i(x, z)?)?))
        }),
        AxiomId::Rpc8 => scan(n, arity, |t| {
            let (x, y, u, v) = (t[0], t[1], t[2], t[3]);
            if !(le(v, x) && le(v, u)) {
                return Some(true);
            }
            Some(!le(u, i(x, y)?) || le(v, y))
        }),
        AxiomId::Rpc9 => scan(n, arity, |t| {
            let (x, y, u) = (t[0], t[1], t[2]);
            let common = p.down_mask(x) & p.down_mask(u);
            if common & !p.down_mask(y) != 0 {
                return Some(true);
            }
            Some(le(u, i(x, y)?))
        }),
        AxiomId::Rpc10 => scan(n, arity, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            if !le(z, x) {
                return Some(true);
            }
            Some(!le(z, i(x, y)?) || le(z, y))
        }),
    };
    Ok(found)
}

pub fn holds(id: AxiomId, p: &Poset, unit: Elem, imp: &dyn Lookup) -> Result<bool> {
    Ok(find_violation(id, p, unit, imp)?.is_none())
}

pub fn check_axiom(a: &OrderedAlgebra, id: AxiomId) -> Result<Report> {
    let imp = a.imp()?;
    let v = find_violation(id, a.poset(), a.unit(), imp)?;
    Ok(Report::from_iter([Verdict::from_violation(id.name(), v.map(|t| Witness::new(id.vars(), t)))]))
}

pub fn check_axioms(a: &OrderedAlgebra, ids: &[AxiomId]) -> Result<Report> {
    let mut r = Report::new();
    for &id in ids {
        r.extend(check_axiom(a, id)?);
    }
    Ok(r)
}

/// Biconditional `x <= y  iff  x -> y = 1`.
pub fn check_le_to(a: &OrderedAlgebra) -> Result<Report> {
    check_axiom(a, AxiomId::LeTo)
}

/// The eight laws that hold in every wBCK*-algebra.
pub fn check_derived_laws(a: &OrderedAlgebra) -> Result<Report> {
    check_axioms(a, &AxiomId::DERIVED)
}

/// Named classes of implicative algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraClass {
    Wbck,
    WeaklyContractive,
    SectionallyJPc,
    Bck,
    Hilbert,
    RelPc,
    Heyting,
    Pocrig,
    Pocrim,
}

impl AlgebraClass {
    pub const ALL: [AlgebraClass; 9] = [
        AlgebraClass::Wbck,
        AlgebraClass::WeaklyContractive,
        AlgebraClass::SectionallyJPc,
        AlgebraClass::Bck,
        AlgebraClass::Hilbert,
        AlgebraClass::RelPc,
        AlgebraClass::Heyting,
        AlgebraClass::Pocrig,
        AlgebraClass::Pocrim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraClass::Wbck => "wbck",
            AlgebraClass::WeaklyContractive => "wcontractive",
            AlgebraClass::SectionallyJPc => "sjp",
            AlgebraClass::Bck => "bck",
            AlgebraClass::Hilbert => "hilbert",
            AlgebraClass::RelPc => "relpc",
            AlgebraClass::Heyting => "heyting",
            AlgebraClass::Pocrig => "pocrig",
            AlgebraClass::Pocrim => "pocrim",
        }
    }

    pub fn parse(s: &str) -> Option<AlgebraClass> {
        AlgebraClass::ALL.into_iter().find(|c| c.name() == s.to_ascii_lowercase())
    }

    /// Axioms defining the implication part of the class. Heyting adds a
    /// lattice order; pocrig/pocrim add a residuated product.
    pub fn axioms(self) -> &'static [AxiomId] {
        use AxiomId::*;
        match self {
            AlgebraClass::Wbck | AlgebraClass::Pocrig | AlgebraClass::Pocrim => &[LeTo, WExch],
            AlgebraClass::WeaklyContractive => &[LeTo, WExch, Reg],
            AlgebraClass::SectionallyJPc => &[LeTo, WExch, Reg, Comp],
            AlgebraClass::Bck => &[LeTo, Bck2, Bck1],
            AlgebraClass::Hilbert => &[LeTo, Bck2, Bck1, PosImpl],
            AlgebraClass::RelPc | AlgebraClass::Heyting => &[Rpc8, Rpc9],
        }
    }

    pub fn needs_product(self) -> bool {
        matches!(self, AlgebraClass::Pocrig | AlgebraClass::Pocrim)
    }
}

/// Class memberships of an implicative algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub wbck: bool,
    pub weakly_contractive: bool,
    pub sectionally_jpc: bool,
    pub bck: bool,
    /// BCK* plus positive implicativity.
    pub hilbert: bool,
    /// BCK* plus `x -> (x -> y) = x -> y`; must agree with `hilbert`.
    pub hilbert_by_contraction: bool,
    /// RPC-8 and RPC-9.
    pub relpc: bool,
    /// RPC-10 and RPC-9; must agree with `relpc`.
    pub relpc_by_rpc10: bool,
    pub heyting: bool,
}

impl Classification {
    /// Containments that must hold for every input: Hilbert inside weakly
    /// contractive wBCK*, relatively pseudocomplemented inside sectionally
    /// j-pseudocomplemented, and the two pairs of alternative definitions.
    pub fn consistency_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.hilbert && !self.weakly_contractive {
            out.push("hilbert-not-wcontractive");
        }
        if self.relpc && !self.sectionally_jpc {
            out.push("relpc-not-sjp");
        }
        if self.hilbert != self.hilbert_by_contraction {
            out.push("hilbert-definitions-disagree");
        }
        if self.relpc != self.relpc_by_rpc10 {
            out.push("rpc8-rpc10-disagree");
        }
        out
    }

    pub fn member(&self, class: AlgebraClass) -> Option<bool> {
        match class {
            AlgebraClass::Wbck => Some(self.wbck),
            AlgebraClass::WeaklyContractive => Some(self.weakly_contractive),
            AlgebraClass::SectionallyJPc => Some(self.sectionally_jpc),
            AlgebraClass::Bck => Some(self.bck),
            AlgebraClass::Hilbert => Some(self.hilbert),
            AlgebraClass::RelPc => Some(self.relpc),
            AlgebraClass::Heyting => Some(self.heyting),
            AlgebraClass::Pocrig | AlgebraClass::Pocrim => None,
        }
    }
}

pub fn classify_table(p: &Poset, unit: Elem, imp: &dyn Lookup) -> Classification {
    let h = |id| holds(id, p, unit, imp).expect("catalogue laws other than REGG never error");
    let le_to = h(AxiomId::LeTo);
    let wexch = h(AxiomId::WExch);
    let reg = h(AxiomId::Reg);
    let comp = h(AxiomId::Comp);
    let bck = le_to && h(AxiomId::Bck2) && h(AxiomId::Bck1);
    let rpc9 = h(AxiomId::Rpc9);
    let relpc = h(AxiomId::Rpc8) && rpc9;
    Classification {
        wbck: le_to && wexch,
        weakly_contractive: le_to && wexch && reg,
        sectionally_jpc: le_to && wexch && reg && comp,
        bck,
        hilbert: bck && h(AxiomId::PosImpl),
        hilbert_by_contraction: bck && h(AxiomId::HilbContr),
        relpc,
        relpc_by_rpc10: h(AxiomId::Rpc10) && rpc9,
        heyting: relpc && p.classify_order().is_lattice,
    }
}

pub fn classify(a: &OrderedAlgebra) -> Result<Classification> {
    Ok(classify_table(a.poset(), a.unit(), a.imp()?))
}
