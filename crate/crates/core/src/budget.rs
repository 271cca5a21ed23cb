//! Enumeration budgets. Exhaustive searches refuse instances whose state
//! space exceeds the configured budget instead of running forever.

/// Budgets for the exhaustive components. `ZR_BUDGET` (a single integer)
/// overrides all of them.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Candidate centers a radius/verifier search may enumerate.
    pub centers: u64,
    /// Terms a pattern-space enumeration may visit.
    pub terms: u64,
    /// Codeword tuples a tuple enumeration may visit.
    pub tuples: u64,
    /// Columns a generated codebook may materialize.
    pub columns: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            centers: 10_000_000,
            terms: 100_000_000,
            tuples: 10_000_000,
            columns: 1_000_000,
        }
    }
}

impl Budget {
    /// Default budgets, overridden wholesale by `ZR_BUDGET` when set.
    pub fn from_env() -> Self {
        match std::env::var("ZR_BUDGET").ok().and_then(|v| v.parse::<u64>().ok()) {
            Some(b) => Budget { centers: b, terms: b, tuples: b, columns: b },
            None => Budget::default(),
        }
    }
}
