use serde::Deserialize;

/// Resource limits for the enumerating operations.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub max_rank: u32,
    pub max_riemann_depth: u32,
    pub max_trials: u64,
    pub max_sample_depth: u32,
    pub max_levelset_depth: usize,
    pub max_fixedpoint_depth: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_rank: 12,
            max_riemann_depth: 12,
            max_trials: 1_000_000,
            max_sample_depth: 12,
            max_levelset_depth: 4096,
            max_fixedpoint_depth: 10,
        }
    }
}
