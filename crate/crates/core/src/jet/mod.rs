//! Linear differential expressions and C-differential operators on the jet
//! space of a scalar function of two variables.

mod expr;
mod op;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact_arith::VarPair;

pub use expr::{evolutionary_apply, jacobi_bracket, DiffExpr};
pub use op::{linearization, op_apply, op_commutator, op_compose, CDiffOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(Chart, Chart),
    #[error("jet order {order} exceeds the limit {limit}")]
    OrderLimit { order: u32, limit: u32 },
    #[error("coefficient degree {degree} exceeds the limit {limit}")]
    DegreeLimit { degree: u32, limit: u32 },
    #[error("operator has a jet-free term and cannot act as a C-differential operator")]
    FreeTerm,
}

/// Resource guards for computations whose output size grows with order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: u32,
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 16,
            max_degree: 64,
        }
    }
}

impl Limits {
    pub fn check_order(&self, order: u32) -> Result<(), JetError> {
        if order > self.max_order {
            Err(JetError::OrderLimit {
                order,
                limit: self.max_order,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_degree(&self, degree: u32) -> Result<(), JetError> {
        if degree > self.max_degree {
            Err(JetError::DegreeLimit {
                degree,
                limit: self.max_degree,
            })
        } else {
            Ok(())
        }
    }
}

/// Coordinate chart on the base. Every expression and operator carries one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Chart {
    /// `(x, y)`, home of the elliptic equation.
    Elliptic,
    /// `(xi, eta)`, home of the hyperbolic equation.
    Hyperbolic,
    /// `(X, Y)` with `X = x + y`, `Y = x - y`.
    Intermediate,
}

const XY: VarPair = VarPair {
    first: "x",
    second: "y",
};
const XI_ETA: VarPair = VarPair {
    first: "xi",
    second: "eta",
};
const CAP_XY: VarPair = VarPair {
    first: "X",
    second: "Y",
};

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::Elliptic, Chart::Hyperbolic, Chart::Intermediate];

    pub fn vars(self) -> VarPair {
        match self {
            Chart::Elliptic => XY,
            Chart::Hyperbolic => XI_ETA,
            Chart::Intermediate => CAP_XY,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::Elliptic => "elliptic",
            Chart::Hyperbolic => "hyperbolic",
            Chart::Intermediate => "intermediate",
        }
    }

    /// Resolves a base-variable identifier, accepting `ξ`/`η` as aliases
    /// in the hyperbolic chart.
    pub fn axis_of(self, ident: &str) -> Option<Axis> {
        let vars = self.vars();
        let ident = match (self, ident) {
            (Chart::Hyperbolic, "ξ") => "xi",
            (Chart::Hyperbolic, "η") => "eta",
            _ => ident,
        };
        if ident == vars.first {
            Some(Axis::First)
        } else if ident == vars.second {
            Some(Axis::Second)
        } else {
            None
        }
    }

    pub(crate) fn ensure_same(self, other: Chart) -> Result<(), JetError> {
        if self == other {
            Ok(())
        } else {
            Err(JetError::ChartMismatch(self, other))
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Chart {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "elliptic" => Ok(Chart::Elliptic),
            "hyperbolic" => Ok(Chart::Hyperbolic),
            "intermediate" => Ok(Chart::Intermediate),
            other => Err(format!("unknown chart `{other}`")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axis {
    First,
    Second,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::First, Axis::Second];

    pub fn index(self) -> usize {
        match self {
            Axis::First => 0,
            Axis::Second => 1,
        }
    }
}

/// Derivative counts `(d1, d2)` in the chart's first and second variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MultiIndex {
    pub d1: u32,
    pub d2: u32,
}

impl MultiIndex {
    pub const ZERO: MultiIndex = MultiIndex { d1: 0, d2: 0 };

    pub const fn new(d1: u32, d2: u32) -> Self {
        MultiIndex { d1, d2 }
    }

    pub fn order(self) -> u32 {
        self.d1 + self.d2
    }

    pub fn bump(self, axis: Axis) -> Self {
        match axis {
            Axis::First => MultiIndex::new(self.d1 + 1, self.d2),
            Axis::Second => MultiIndex::new(self.d1, self.d2 + 1),
        }
    }

    /// Steps one derivative back along `axis`, if there is one.
    pub fn lower(self, axis: Axis) -> Option<Self> {
        match axis {
            Axis::First if self.d1 > 0 => Some(MultiIndex::new(self.d1 - 1, self.d2)),
            Axis::Second if self.d2 > 0 => Some(MultiIndex::new(self.d1, self.d2 - 1)),
            _ => None,
        }
    }

    pub fn plus(self, o: MultiIndex) -> Self {
        MultiIndex::new(self.d1 + o.d1, self.d2 + o.d2)
    }

    /// Componentwise `self >= o`.
    pub fn dominates(self, o: MultiIndex) -> bool {
        self.d1 >= o.d1 && self.d2 >= o.d2
    }
}

/// Graded by total order; within an order, more first-variable derivatives come first.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then(other.d1.cmp(&self.d1))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.d1, self.d2)
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as i64;
    let n = n as i64;
    let mut acc = 1i64;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}
