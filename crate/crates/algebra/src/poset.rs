//! Finite posets stored as dense bit matrices.
//!
//! Elements are 0-based indices; names are display metadata. Row `i` of the
//! `up` matrix holds `{j : i <= j}` and row `j` of `down` holds `{i : i <= j}`.
//! Meets and joins are tabulated once at construction.

use std::fmt;

use crate::error::{Error, Result};

pub type Elem = usize;

/// Largest carrier a [`Poset`] can hold (one `u64` row per element).
pub const MAX_POSET_SIZE: usize = 64;

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = Elem> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OrderFlags {
    pub has_top: bool,
    pub is_meet_semilattice: bool,
    pub is_join_semilattice: bool,
    pub is_lattice: bool,
}

/// Order classes used to filter enumeration and hunting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderClass {
    #[default]
    Any,
    WithTop,
    MeetSemilattice,
    JoinSemilattice,
    Lattice,
}

impl OrderClass {
    pub fn accepts(self, flags: OrderFlags) -> bool {
        match self {
            OrderClass::Any => true,
            OrderClass::WithTop => flags.has_top,
            OrderClass::MeetSemilattice => flags.is_meet_semilattice,
            OrderClass::JoinSemilattice => flags.is_join_semilattice,
            OrderClass::Lattice => flags.is_lattice,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "poset" | "any" => Some(OrderClass::Any),
            "top" | "with-top" => Some(OrderClass::WithTop),
            "meetsl" => Some(OrderClass::MeetSemilattice),
            "joinsl" => Some(OrderClass::JoinSemilattice),
            "lattice" => Some(OrderClass::Lattice),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    names: Vec<String>,
    meets: Vec<Option<Elem>>,
    joins: Vec<Option<Elem>>,
    top: Option<Elem>,
    bottom: Option<Elem>,
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` (each `(a, b)` read as `a <= b`).
    pub fn from_generators(n: usize, pairs: &[(Elem, Elem)]) -> Result<Poset> {
        check_size(n)?;
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for &(a, b) in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, size: n });
                }
            }
            up[a] |= 1u64 << b;
        }
        Poset::from_up_rows(n, up, default_names(n))
    }

    /// Builds a poset from rows `up[i] = {j : i <= j}` after closing them.
    pub(crate) fn from_up_rows(n: usize, mut up: Vec<u64>, names: Vec<String>) -> Result<Poset> {
        check_size(n)?;
        debug_assert_eq!(up.len(), n);
        for (i, row) in up.iter_mut().enumerate() {
            *row |= 1u64 << i;
        }
        // Warshall
        for k in 0..n {
            let row_k = up[k];
            for row in up.iter_mut() {
                if *row >> k & 1 == 1 {
                    *row |= row_k;
                }
            }
        }
        for i in 0..n {
            for j in bits(up[i] & !(1u64 << i)) {
                if up[j] >> i & 1 == 1 {
                    return Err(Error::AntisymmetryViolation { a: i.min(j), b: i.max(j) });
                }
            }
        }
        Ok(Poset::assemble(n, up, names))
    }

    fn assemble(n: usize, up: Vec<u64>, names: Vec<String>) -> Poset {
        let mut down = vec![0u64; n];
        for (i, &row) in up.iter().enumerate() {
            for j in bits(row) {
                down[j] |= 1u64 << i;
            }
        }
        let all = full_mask(n);
        let top = (0..n).find(|&t| down[t] == all);
        let bottom = (0..n).find(|&b| up[b] == all);
        let mut meets = vec![None; n * n];
        let mut joins = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower = down[x] & down[y];
                meets[x * n + y] = bits(lower).find(|&m| lower & !down[m] == 0);
                let upper = up[x] & up[y];
                joins[x * n + y] = bits(upper).find(|&j| upper & !up[j] == 0);
            }
        }
        Poset { n, up, down, names, meets, joins, top, bottom }
    }

    pub fn chain(n: usize) -> Result<Poset> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_generators(n, &pairs)
    }

    pub fn antichain(n: usize) -> Result<Poset> {
        Poset::from_generators(n, &[])
    }

    /// The four-element Boolean lattice `0 < a, b < 1`.
    pub fn diamond() -> Poset {
        Poset::from_generators(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .and_then(|p| p.with_names(["0", "a", "b", "1"]))
            .expect("diamond is a poset")
    }

    /// The pentagon `0 < a < 1`, `0 < b < c < 1`, labelled `0 a b c 1`.
    pub fn pentagon() -> Poset {
        Poset::from_generators(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)])
            .and_then(|p| p.with_names(["0", "a", "b", "c", "1"]))
            .expect("pentagon is a poset")
    }

    pub fn with_names<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Result<Poset> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != self.n {
            return Err(Error::PreconditionViolation(format!("expected {} names, got {}", self.n, names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::PreconditionViolation(format!("duplicate element name `{a}`")));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x] >> y & 1 == 1
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    /// Bit mask of `{u : x <= u}`.
    #[inline]
    pub fn up_mask(&self, x: Elem) -> u64 {
        self.up[x]
    }

    /// Bit mask of `{u : u <= x}`.
    #[inline]
    pub fn down_mask(&self, x: Elem) -> u64 {
        self.down[x]
    }

    pub fn up_rows(&self) -> &[u64] {
        &self.up
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.meets[x * self.n + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.joins[x * self.n + y]
    }

    pub fn top(&self) -> Option<Elem> {
        self.top
    }

    pub fn bottom(&self) -> Option<Elem> {
        self.bottom
    }

    /// The principal filter `[y) = {u : y <= u}` in ascending index order.
    pub fn principal_filter(&self, y: Elem) -> Vec<Elem> {
        bits(self.up[y]).collect()
    }

    pub fn principal_ideal(&self, y: Elem) -> Vec<Elem> {
        bits(self.down[y]).collect()
    }

    pub fn classify_order(&self) -> OrderFlags {
        let is_meet_semilattice = self.meets.iter().all(Option::is_some);
        let is_join_semilattice = self.joins.iter().all(Option::is_some);
        OrderFlags {
            has_top: self.top.is_some(),
            is_meet_semilattice,
            is_join_semilattice,
            is_lattice: is_meet_semilattice && is_join_semilattice,
        }
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between,
    /// in lexicographic order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in bits(self.up[a] & !(1u64 << a)) {
                let between = self.up[a] & self.down[b] & !(1u64 << a) & !(1u64 << b);
                if between == 0 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Poset whose element `p` is this poset's element `perm[p]`.
    pub fn relabel(&self, perm: &[Elem]) -> Poset {
        let n = self.n;
        let mut inverse = vec![0; n];
        for (p, &old) in perm.iter().enumerate() {
            inverse[old] = p;
        }
        let up = perm.iter().map(|&old| bits(self.up[old]).fold(0u64, |acc, j| acc | 1u64 << inverse[j])).collect();
        let names = perm.iter().map(|&old| self.names[old].clone()).collect();
        Poset::assemble(n, up, names)
    }

    /// Induced sub-poset on `elems` (kept in the given order).
    pub fn induced(&self, elems: &[Elem]) -> Poset {
        let up = elems
            .iter()
            .map(|&a| {
                elems.iter().enumerate().filter(|&(_, &b)| self.leq(a, b)).fold(0u64, |acc, (q, _)| acc | 1u64 << q)
            })
            .collect();
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        Poset::assemble(elems.len(), up, names)
    }

    /// Order ideals (down-closed subsets) as bit masks, ascending.
    pub fn downsets(&self) -> Vec<u64> {
        (0..=full_mask(self.n)).filter(|&m| bits(m).all(|i| self.down[i] & !m == 0)).collect()
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> =
            self.covers().into_iter().map(|(a, b)| format!("{}<{}", self.names[a], self.names[b])).collect();
        write!(f, "Poset({}; {})", self.n, covers.join(" "))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > MAX_POSET_SIZE {
        Err(Error::BoundExceeded { requested: n, bound: MAX_POSET_SIZE })
    } else {
        Ok(())
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_closure() {
        let p = Poset::from_generators(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert_eq!(p, Poset::chain(3).unwrap());
    }

    #[test]
    fn diamond_from_generators() {
        let p = Poset::from_generators(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(p.meet(1, 2), Some(0));
        assert_eq!(p.join(1, 2), Some(3));
        assert!(p.classify_order().is_lattice);
    }

    #[test]
    fn two_cycle_rejected() {
        assert_eq!(Poset::from_generators(2, &[(0, 1), (1, 0)]), Err(Error::AntisymmetryViolation { a: 0, b: 1 }));
        assert!(matches!(
            Poset::from_generators(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::AntisymmetryViolation { .. })
        ));
    }

    #[test]
    fn bad_indices() {
        assert_eq!(Poset::from_generators(2, &[(0, 2)]), Err(Error::IndexOutOfRange { index: 2, size: 2 }));
        assert_eq!(Poset::from_generators(0, &[]), Err(Error::EmptyCarrier));
    }

    #[test]
    fn meets() {
        let m2 = Poset::diamond();
        assert_eq!(m2.meet(1, 2), Some(0));
        let anti = Poset::antichain(2).unwrap();
        assert_eq!(anti.meet(0, 1), None);
        for x in m2.elements() {
            assert_eq!(m2.meet(x, x), Some(x));
        }
    }

    #[test]
    fn filters() {
        let c3 = Poset::chain(3).unwrap();
        assert_eq!(c3.principal_filter(1), vec![1, 2]);
        assert_eq!(c3.principal_filter(2), vec![2]);
        let m2 = Poset::diamond();
        assert_eq!(m2.principal_filter(0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn order_flags() {
        let all = OrderFlags { has_top: true, is_meet_semilattice: true, is_join_semilattice: true, is_lattice: true };
        assert_eq!(Poset::pentagon().classify_order(), all);
        assert_eq!(Poset::chain(1).unwrap().classify_order(), all);
        let vee = Poset::from_generators(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            vee.classify_order(),
            OrderFlags { has_top: true, is_meet_semilattice: false, is_join_semilattice: true, is_lattice: false }
        );
    }

    #[test]
    fn covers_of_pentagon() {
        let n5 = Poset::pentagon();
        assert_eq!(n5.covers(), vec![(0, 1), (0, 2), (1, 4), (2, 3), (3, 4)]);
    }

    #[test]
    fn relabel_roundtrip() {
        let n5 = Poset::pentagon();
        let perm = [4, 2, 0, 3, 1];
        let r = n5.relabel(&perm);
        for p in 0..5 {
            for q in 0..5 {
                assert_eq!(r.leq(p, q), n5.leq(perm[p], perm[q]));
            }
        }
        assert_eq!(r.name(0), "1");
    }

    #[test]
    fn downsets_of_chain() {
        assert_eq!(Poset::chain(3).unwrap().downsets(), vec![0b000, 0b001, 0b011, 0b111]);
    }
}
