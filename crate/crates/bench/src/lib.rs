//! Shared fixtures for the criterion benchmarks.

use alcove_atlas::alcove::HypersimplexSpec;

/// Parameter sets `(r, i, d)` benchmarked by every enumeration strategy.
pub const SPECS: &[(u32, u32, usize)] = &[(2, 2, 3), (3, 2, 4), (2, 3, 5)];

pub fn specs() -> Vec<HypersimplexSpec> {
    SPECS
        .iter()
        .map(|&(r, i, d)| HypersimplexSpec::new(r, i, d).expect("benchmark specs are valid"))
        .collect()
}
