use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_REDUCTION_STEPS: u64 = 10_000_000;
pub const DEFAULT_E_MAX: u32 = 3;
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// Tunables shared by every computation. Serialized verbatim into result records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Reduction-step cap for one isolated computation (one verdict, one table row).
    pub max_reduction_steps: u64,
    pub e_max: u32,
    /// Candidate cap for exhaustive socle and subspace enumeration.
    pub enumeration_budget: u64,
    pub seed: u64,
    /// Worker threads for sweeps; 0 means the rayon default.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_reduction_steps: DEFAULT_REDUCTION_STEPS,
            e_max: DEFAULT_E_MAX,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            seed: DEFAULT_SEED,
            threads: 0,
        }
    }
}

impl Config {
    pub fn budget(&self) -> Budget {
        Budget::new(self.max_reduction_steps)
    }
}

/// Reduction-step counter. Shared by reference across one computation;
/// exceeding the limit aborts with `BudgetExceeded`.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_REDUCTION_STEPS)
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    /// A fresh budget with the same limit.
    pub fn fresh(&self) -> Budget {
        Budget::new(self.limit)
    }

    #[inline]
    pub fn charge(&self, steps: u64) -> Result<()> {
        let used = self.used.fetch_add(steps, Ordering::Relaxed).saturating_add(steps);
        if used > self.limit {
            Err(Error::BudgetExceeded {
                used,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}
