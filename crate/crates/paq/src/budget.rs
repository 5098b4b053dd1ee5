//! Search budgets, overridable through the environment.

use paq_core::duality::DEFAULT_IB_BUDGET;

/// Environment variable holding the identity-evaluation budget: the largest
/// number of tuples `ib_m` may be evaluated on for a single algebra.
pub const BUDGET_VAR: &str = "PAQ_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub ib_tuples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { ib_tuples: DEFAULT_IB_BUDGET }
    }
}

impl Budget {
    /// Reads [`BUDGET_VAR`]; unset means the default, anything else must be
    /// a positive integer.
    pub fn from_env() -> Result<Budget, String> {
        match std::env::var(BUDGET_VAR) {
            Err(_) => Ok(Budget::default()),
            Ok(v) => match v.trim().parse::<u64>() {
                Ok(n) if n > 0 => Ok(Budget { ib_tuples: n }),
                _ => Err(format!("{BUDGET_VAR} must be a positive integer, got `{v}`")),
            },
        }
    }
}
