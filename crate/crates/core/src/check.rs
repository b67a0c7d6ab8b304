use serde::{Deserialize, Serialize};

/// Direction of an inequality `lhs ? rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    GreaterEq,
    LessEq,
}

/// A numerically checked inequality, carrying both sides and the slack it
/// was judged with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub holds: bool,
}

impl InequalityCheck {
    pub fn new(lhs: f64, relation: Relation, rhs: f64, tolerance: f64) -> Self {
        let holds = match relation {
            Relation::GreaterEq => lhs >= rhs - tolerance,
            Relation::LessEq => lhs <= rhs + tolerance,
        };
        InequalityCheck {
            lhs,
            rhs,
            relation,
            tolerance,
            holds: holds && lhs.is_finite() && rhs.is_finite(),
        }
    }

    /// `lhs - rhs` oriented so that a positive value means the inequality
    /// holds with room to spare.
    pub fn margin(&self) -> f64 {
        match self.relation {
            Relation::GreaterEq => self.lhs - self.rhs,
            Relation::LessEq => self.rhs - self.lhs,
        }
    }

    /// Margin relative to `|rhs|`.
    pub fn relative_slack(&self) -> f64 {
        self.margin() / self.rhs.abs().max(f64::MIN_POSITIVE)
    }
}

/// Default relative slack for inequality checks on first-order
/// discretizations.
pub const DEFAULT_REL_SLACK: f64 = 0.05;

/// `max(rel * |magnitude|, floor)`.
pub fn slack(magnitude: f64, rel: f64, floor: f64) -> f64 {
    (rel * magnitude.abs()).max(floor)
}
