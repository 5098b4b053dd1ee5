use alloc::string::String;
use core::fmt;

/// First order axiom a relation fails, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    Reflexivity { x: usize },
    Antisymmetry { x: usize, y: usize },
    Transitivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            OrderViolation::Reflexivity { x } => write!(f, "reflexivity fails at {x}"),
            OrderViolation::Antisymmetry { x, y } => {
                write!(f, "antisymmetry fails at ({x}, {y}): {x} <= {y} and {y} <= {x}")
            }
            OrderViolation::Transitivity { x, y, z } => write!(
                f,
                "transitivity fails at ({x}, {y}, {z}): {x} <= {y} <= {z} but not {x} <= {z}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PosetError {
    TooLarge { n: usize, max: usize },
    IndexOutOfRange { index: usize, n: usize },
    Violation(OrderViolation),
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::TooLarge { n, max } => {
                write!(f, "poset has {n} elements, at most {max} are supported")
            }
            PosetError::IndexOutOfRange { index, n } => {
                write!(f, "element {index} out of range for a poset with {n} elements")
            }
            PosetError::Violation(v) => write!(f, "not a partial order: {v}"),
        }
    }
}

impl From<OrderViolation> for PosetError {
    fn from(v: OrderViolation) -> Self {
        PosetError::Violation(v)
    }
}

/// Why a map between posets is not a pp-morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PpFailure {
    /// The map has the wrong number of entries.
    Arity { expected: usize, found: usize },
    /// `map[x]` is not an element of the target.
    Range { x: usize, image: usize, target_len: usize },
    /// `x <= y` in the source but `map[x] <= map[y]` fails in the target.
    Monotonicity { x: usize, y: usize },
    /// `M(map[x]) != map[M(x)]`.
    MaximaPreservation { x: usize },
}

impl fmt::Display for PpFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PpFailure::Arity { expected, found } => {
                write!(f, "map has {found} entries, source has {expected} elements")
            }
            PpFailure::Range { x, image, target_len } => {
                write!(f, "image {image} of {x} outside target of size {target_len}")
            }
            PpFailure::Monotonicity { x, y } => {
                write!(f, "not monotone: {x} <= {y} but h({x}) </= h({y})")
            }
            PpFailure::MaximaPreservation { x } => {
                write!(f, "maxima not preserved at {x}: h(M({x})) != M(h({x}))")
            }
        }
    }
}

/// First p-algebra axiom a set of tables fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Empty,
    TableShape { table: &'static str },
    OutOfRange { table: &'static str },
    Idempotence { op: &'static str, x: usize },
    Commutativity { op: &'static str, x: usize, y: usize },
    Associativity { op: &'static str, x: usize, y: usize, z: usize },
    Absorption { x: usize, y: usize },
    Bounds { x: usize },
    Distributivity { x: usize, y: usize, z: usize },
    Pseudocomplement { x: usize, y: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraViolation::Empty => f.write_str("algebra has no elements"),
            AlgebraViolation::TableShape { table } => write!(f, "{table} table has the wrong shape"),
            AlgebraViolation::OutOfRange { table } => {
                write!(f, "{table} table refers to a missing element")
            }
            AlgebraViolation::Idempotence { op, x } => write!(f, "{op} not idempotent at {x}"),
            AlgebraViolation::Commutativity { op, x, y } => {
                write!(f, "{op} not commutative at ({x}, {y})")
            }
            AlgebraViolation::Associativity { op, x, y, z } => {
                write!(f, "{op} not associative at ({x}, {y}, {z})")
            }
            AlgebraViolation::Absorption { x, y } => write!(f, "absorption fails at ({x}, {y})"),
            AlgebraViolation::Bounds { x } => write!(f, "zero/one are not bounds at {x}"),
            AlgebraViolation::Distributivity { x, y, z } => {
                write!(f, "distributivity fails at ({x}, {y}, {z})")
            }
            AlgebraViolation::Pseudocomplement { x, y } => {
                write!(f, "pseudocomplement law fails at ({x}, {y}): x meet y = 0 iff x <= y* is false")
            }
        }
    }
}

/// A search or table would exceed its configured budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub what: &'static str,
    pub requested: u64,
    pub limit: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} needs {} but the budget is {}", self.what, self.requested, self.limit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuasivarError {
    EmptyBase,
    BaseTooLarge { size: usize },
    EmptyFamilyMember,
    FamilyMemberOutsideBase,
    /// `m` outside the range an operation is defined for.
    BadM { m: usize, min: usize },
    /// Base size does not match what the operation requires.
    BaseSize { expected: usize, found: usize },
    /// A hypothesis of the construction does not hold; names the hypothesis.
    Precondition(String),
    Poset(PosetError),
}

impl fmt::Display for QuasivarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasivarError::EmptyBase => f.write_str("base set is empty"),
            QuasivarError::BaseTooLarge { size } => write!(f, "base of size {size} is too large"),
            QuasivarError::EmptyFamilyMember => f.write_str("family contains the empty set"),
            QuasivarError::FamilyMemberOutsideBase => {
                f.write_str("family member is not a subset of the base")
            }
            QuasivarError::BadM { m, min } => write!(f, "m = {m} is not supported (need m >= {min})"),
            QuasivarError::BaseSize { expected, found } => {
                write!(f, "base has {found} elements, expected {expected}")
            }
            QuasivarError::Precondition(what) => write!(f, "precondition failed: {what}"),
            QuasivarError::Poset(e) => e.fmt(f),
        }
    }
}

impl From<PosetError> for QuasivarError {
    fn from(e: PosetError) -> Self {
        QuasivarError::Poset(e)
    }
}

impl core::error::Error for OrderViolation {}
impl core::error::Error for PosetError {}
impl core::error::Error for PpFailure {}
impl core::error::Error for AlgebraViolation {}
impl core::error::Error for BudgetExceeded {}
impl core::error::Error for QuasivarError {}
