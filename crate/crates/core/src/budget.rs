//! Resource limits for exact computations.
//!
//! Exhausting a budget never yields a verdict; callers map
//! [`Error::BudgetExhausted`] to an inconclusive outcome.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable holding the default budget, e.g.
/// `max-degree=40,max-basis=20000,timeout=600`.
pub const BUDGET_ENV: &str = "DEFCERT_BUDGET";

#[derive(Clone, Debug)]
pub struct Budget {
    pub limits: BudgetLimits,
    deadline: Option<Instant>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetLimits {
    /// Largest S-pair degree the Groebner engine may process.
    pub max_degree: Option<i32>,
    /// Largest intermediate basis size.
    pub max_basis: Option<usize>,
    /// Wall-clock cap in seconds, measured from budget creation.
    pub timeout_secs: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(BudgetLimits::default())
    }
}

impl Budget {
    pub fn new(limits: BudgetLimits) -> Self {
        let deadline = limits.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s));
        Budget { limits, deadline }
    }

    pub fn unlimited() -> Self {
        Self::default()
    }

    /// Reads [`BUDGET_ENV`]; unset means unlimited.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => Ok(Budget::new(BudgetLimits::parse(&s)?)),
            Err(_) => Ok(Budget::default()),
        }
    }

    /// Same limits with a fresh deadline.
    pub fn restart(&self) -> Self {
        Budget::new(self.limits)
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExhausted("wall-clock limit reached".into())),
            _ => Ok(()),
        }
    }

    pub fn check_degree(&self, deg: i32) -> Result<()> {
        match self.limits.max_degree {
            Some(m) if deg > m => Err(Error::BudgetExhausted(format!("pair degree {deg} exceeds limit {m}"))),
            _ => Ok(()),
        }
    }

    pub fn check_basis(&self, size: usize) -> Result<()> {
        match self.limits.max_basis {
            Some(m) if size > m => Err(Error::BudgetExhausted(format!("basis size {size} exceeds limit {m}"))),
            _ => Ok(()),
        }
    }
}

impl BudgetLimits {
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = BudgetLimits::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("malformed budget entry `{part}`")))?;
            let bad = || Error::InvalidInput(format!("malformed budget value `{part}`"));
            match k.trim() {
                "max-degree" => out.max_degree = Some(v.trim().parse().map_err(|_| bad())?),
                "max-basis" => out.max_basis = Some(v.trim().parse().map_err(|_| bad())?),
                "timeout" => out.timeout_secs = Some(v.trim().parse().map_err(|_| bad())?),
                _ => return Err(Error::InvalidInput(format!("unknown budget key `{k}`"))),
            }
        }
        Ok(out)
    }
}
