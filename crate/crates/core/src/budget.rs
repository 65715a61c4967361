//! Resource caps for the two expensive kernels: the `|W|`-term symmetrization
//! and the `M^n`-node quadrature.

use crate::error::{Error, Result};

/// Name of the environment variable that overrides both caps.
pub const BUDGET_ENV: &str = "OCTABOSON_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest sector size for exact polynomial construction.
    pub max_n: usize,
    /// Cap on `|W| × (numerator terms)` in one symmetrization.
    pub max_terms: usize,
    /// Cap on quadrature nodes `M^n`.
    pub max_nodes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n: 4,
            max_terms: 50_000_000,
            max_nodes: 1 << 22,
        }
    }
}

impl Budget {
    /// Default caps, with `max_terms` and `max_nodes` replaced by the value of
    /// `OCTABOSON_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => Self::default().with_cap(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn with_cap(self, raw: &str) -> Result<Self> {
        let cap: usize = raw
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV}={raw:?} is not a count")))?;
        Ok(Budget {
            max_terms: cap,
            max_nodes: cap,
            ..self
        })
    }

    pub fn check_terms(&self, terms: usize, what: &str) -> Result<()> {
        if terms > self.max_terms {
            return Err(Error::Budget(format!(
                "{what} needs {terms} terms, cap is {}",
                self.max_terms
            )));
        }
        Ok(())
    }

    pub fn check_nodes(&self, nodes: usize) -> Result<()> {
        if nodes > self.max_nodes {
            return Err(Error::Budget(format!(
                "quadrature needs {nodes} nodes, cap is {}",
                self.max_nodes
            )));
        }
        Ok(())
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Budget(format!(
                "sector size {n} exceeds the construction bound {}",
                self.max_n
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_override() {
        let b = Budget::default().with_cap("1000").unwrap();
        assert_eq!(b.max_nodes, 1000);
        assert!(b.check_nodes(1001).is_err());
        assert!(b.check_terms(1000, "x").is_ok());
        assert!(Budget::default().with_cap("lots").is_err());
    }
}
