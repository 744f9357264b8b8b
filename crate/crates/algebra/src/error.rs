use std::fmt;

use thiserror::Error;

use crate::poset::Elem;

/// Operation symbols that an algebra may or may not carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Imp,
    Mul,
    Join,
    Meet,
}

impl OpKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OpKind::Imp => "imp",
            OpKind::Mul => "mul",
            OpKind::Join => "join",
            OpKind::Meet => "meet",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "imp" => Some(OpKind::Imp),
            "mul" => Some(OpKind::Mul),
            "join" => Some(OpKind::Join),
            "meet" => Some(OpKind::Meet),
            _ => None,
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order relation is not antisymmetric: {a} <= {b} and {b} <= {a}")]
    AntisymmetryViolation { a: Elem, b: Elem },
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: Elem, size: usize },
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("size {requested} exceeds the supported bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("poset has no top element")]
    NoTop,
    #[error("not sectionally pseudocomplemented: {x}*{y} is undefined")]
    NotSectionallyPc { x: Elem, y: Elem },
    #[error("poset is not a meet-semilattice")]
    NotMeetSemilattice,
    #[error("poset is not a join-semilattice")]
    NotJoinSemilattice,
    #[error("operation `{0}` is not present")]
    MissingOperation(OpKind),
    #[error("{op}({x}, {y}) does not exist")]
    PartialOperationUndefined { op: OpKind, x: Elem, y: Elem },
    #[error("table has shape {rows}x{cols}, expected {n}x{n}")]
    BadTableShape { rows: usize, cols: usize, n: usize },
    #[error("unit {unit} must be the top element when an implication is present")]
    UnitNotTop { unit: Elem },
    #[error("the pair (mul, imp) is not an adjunction")]
    AdjunctionRequired,
    #[error("the groupoid is not an idempotent pocrig")]
    NotIdempotentPocrig,
    #[error("algebra does not fit the `{0}` variant")]
    WrongVariant(&'static str),
    #[error("time budget exhausted")]
    Timeout,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
