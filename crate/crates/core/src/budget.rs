use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("work budget of {limit} units exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// A counter of abstract work units with an optional ceiling.
///
/// Searches charge one unit per node they expand. Running out is reported
/// as [`BudgetExceeded`], never as a negative answer.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: Option<u64>,
    used: u64,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { limit: None, used: 0 }
    }

    pub fn limited(limit: u64) -> Self {
        Budget { limit: Some(limit), used: 0 }
    }

    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn charge(&mut self, units: u64) -> Result<(), BudgetExceeded> {
        self.used = self.used.saturating_add(units);
        match self.limit {
            Some(limit) if self.used > limit => Err(BudgetExceeded { limit }),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}
