//! Total and partial binary operation tables over a finite carrier.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Elem, Poset};

/// Read access to a binary operation. `None` means "not (yet) defined".
pub trait Lookup: Sync {
    fn size(&self) -> usize;
    fn get(&self, x: Elem, y: Elem) -> Option<Elem>;
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    n: usize,
    cells: Vec<u8>,
}

impl OpTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> OpTable {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                assert!(v < n, "table value {v} outside carrier of size {n}");
                cells.push(v as u8);
            }
        }
        OpTable { n, cells }
    }

    pub fn try_from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Option<Elem>) -> Option<OpTable> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y)? as u8);
            }
        }
        Some(OpTable { n, cells })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<OpTable> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::BadTableShape { rows: n, cols: row.len(), n });
            }
            for &v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                cells.push(v as u8);
            }
        }
        Ok(OpTable { n, cells })
    }

    pub fn constant(n: usize, value: Elem) -> OpTable {
        OpTable::from_fn(n, |_, _| value)
    }

    /// The meet operation of a meet-semilattice.
    pub fn meet_of(p: &Poset) -> Result<OpTable> {
        OpTable::try_from_fn(p.size(), |x, y| p.meet(x, y)).ok_or(Error::NotMeetSemilattice)
    }

    pub fn join_of(p: &Poset) -> Result<OpTable> {
        OpTable::try_from_fn(p.size(), |x, y| p.join(x, y)).ok_or(Error::NotJoinSemilattice)
    }

    #[inline]
    pub fn at(&self, x: Elem, y: Elem) -> Elem {
        self.cells[x * self.n + y] as Elem
    }

    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) {
        assert!(v < self.n);
        self.cells[x * self.n + y] = v as u8;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.cells.chunks(self.n.max(1)).map(|r| r.iter().map(|&v| v as Elem).collect()).collect()
    }

    /// Restriction to `elems`, re-indexed by position; `None` if not closed.
    pub fn restrict(&self, elems: &[Elem]) -> Option<OpTable> {
        let pos = |v: Elem| elems.iter().position(|&e| e == v);
        OpTable::try_from_fn(elems.len(), |i, j| pos(self.at(elems[i], elems[j])))
    }
}

impl Lookup for OpTable {
    fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        Some(self.at(x, y))
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().into_iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// A table whose cells may be explicitly undefined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialOpTable {
    n: usize,
    cells: Vec<Option<u8>>,
}

impl PartialOpTable {
    pub fn undefined(n: usize) -> PartialOpTable {
        PartialOpTable { n, cells: vec![None; n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Elem, Elem) -> Option<Elem>) -> PartialOpTable {
        let mut t = PartialOpTable::undefined(n);
        for x in 0..n {
            for y in 0..n {
                if let Some(v) = f(x, y) {
                    t.set(x, y, v);
                }
            }
        }
        t
    }

    #[inline]
    pub fn at(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.cells[x * self.n + y].map(Elem::from)
    }

    pub fn set(&mut self, x: Elem, y: Elem, v: Elem) {
        assert!(v < self.n);
        self.cells[x * self.n + y] = Some(v as u8);
    }

    pub fn clear(&mut self, x: Elem, y: Elem) {
        self.cells[x * self.n + y] = None;
    }

    pub fn is_total(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// First undefined cell in row-major order.
    pub fn first_undefined(&self) -> Option<(Elem, Elem)> {
        self.cells.iter().position(Option::is_none).map(|i| (i / self.n, i % self.n))
    }

    pub fn to_total(&self) -> Option<OpTable> {
        OpTable::try_from_fn(self.n, |x, y| self.at(x, y))
    }
}

impl Lookup for PartialOpTable {
    fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.at(x, y)
    }
}

impl fmt::Debug for PartialOpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |c: &Option<u8>| c.map_or_else(|| "-".to_string(), |v| v.to_string());
        let rows: Vec<String> =
            self.cells.chunks(self.n.max(1)).map(|r| r.iter().map(cell).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}
