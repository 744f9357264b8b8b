//! Ordered algebras: a poset with a designated unit and optional
//! implication and product tables.

use std::sync::Arc;

use crate::error::{Error, OpKind, Result};
use crate::poset::{Elem, Poset};
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedAlgebra {
    poset: Arc<Poset>,
    unit: Elem,
    imp: Option<OpTable>,
    mul: Option<OpTable>,
}

impl OrderedAlgebra {
    pub fn new(
        poset: impl Into<Arc<Poset>>,
        unit: Elem,
        imp: Option<OpTable>,
        mul: Option<OpTable>,
    ) -> Result<OrderedAlgebra> {
        let poset = poset.into();
        let n = poset.size();
        if unit >= n {
            return Err(Error::IndexOutOfRange { index: unit, size: n });
        }
        for t in imp.iter().chain(mul.iter()) {
            if t.size() != n {
                return Err(Error::BadTableShape { rows: t.size(), cols: t.size(), n });
            }
        }
        if imp.is_some() && poset.top() != Some(unit) {
            return Err(Error::UnitNotTop { unit });
        }
        Ok(OrderedAlgebra { poset, unit, imp, mul })
    }

    /// `(A, ->, 1)` with 1 the top of `poset`.
    pub fn implicative(poset: impl Into<Arc<Poset>>, imp: OpTable) -> Result<OrderedAlgebra> {
        let poset = poset.into();
        let top = poset.top().ok_or(Error::NoTop)?;
        OrderedAlgebra::new(poset, top, Some(imp), None)
    }

    pub fn groupoid(poset: impl Into<Arc<Poset>>, unit: Elem, mul: OpTable) -> Result<OrderedAlgebra> {
        OrderedAlgebra::new(poset, unit, None, Some(mul))
    }

    /// Bare poset with its top as unit.
    pub fn bare(poset: impl Into<Arc<Poset>>) -> Result<OrderedAlgebra> {
        let poset = poset.into();
        let top = poset.top().ok_or(Error::NoTop)?;
        OrderedAlgebra::new(poset, top, None, None)
    }

    pub fn with_mul(self, mul: OpTable) -> Result<OrderedAlgebra> {
        OrderedAlgebra::new(self.poset, self.unit, self.imp, Some(mul))
    }

    pub fn with_imp(self, imp: OpTable) -> Result<OrderedAlgebra> {
        OrderedAlgebra::new(self.poset, self.unit, Some(imp), self.mul)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn imp(&self) -> Result<&OpTable> {
        self.imp.as_ref().ok_or(Error::MissingOperation(OpKind::Imp))
    }

    pub fn mul(&self) -> Result<&OpTable> {
        self.mul.as_ref().ok_or(Error::MissingOperation(OpKind::Mul))
    }

    pub fn imp_opt(&self) -> Option<&OpTable> {
        self.imp.as_ref()
    }

    pub fn mul_opt(&self) -> Option<&OpTable> {
        self.mul.as_ref()
    }
}

/// A subalgebra together with the original indices of its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    pub elements: Vec<Elem>,
    pub algebra: OrderedAlgebra,
}

/// All subsets containing the unit and closed under the present operations,
/// with the induced order, in ascending bit-mask order.
pub fn subalgebras(a: &OrderedAlgebra) -> Result<Vec<Subalgebra>> {
    let imp = a.imp()?;
    let n = a.size();
    if n > 20 {
        return Err(Error::BoundExceeded { requested: n, bound: 20 });
    }
    let unit_bit = 1u64 << a.unit;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask & unit_bit == 0 {
            continue;
        }
        let inside = |v: Elem| mask >> v & 1 == 1;
        let closed = |t: &OpTable| {
            (0..n).filter(|&x| inside(x)).all(|x| (0..n).filter(|&y| inside(y)).all(|y| inside(t.at(x, y))))
        };
        if !closed(imp) || a.mul.as_ref().is_some_and(|m| !closed(m)) {
            continue;
        }
        let elems: Vec<Elem> = (0..n).filter(|&x| inside(x)).collect();
        let poset = a.poset.induced(&elems);
        let unit = elems.iter().position(|&e| e == a.unit).unwrap();
        let sub_imp = imp.restrict(&elems).expect("closed");
        let sub_mul = a.mul.as_ref().map(|m| m.restrict(&elems).expect("closed"));
        let algebra = OrderedAlgebra::new(poset, unit, Some(sub_imp), sub_mul)?;
        out.push(Subalgebra { elements: elems, algebra });
    }
    Ok(out)
}
