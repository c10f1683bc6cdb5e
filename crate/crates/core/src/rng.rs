//! Minimal seeded generator for reproducible sampling.
//!
//! SplitMix64 with the standard constants.  The byte-identical-report
//! contract pins the exact stream, so the algorithm is spelled out here
//! rather than delegated to an external crate whose stream might shift
//! between versions.

pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in `0..bound` for sampling duty (modulo bias is
    /// irrelevant at desk-scale bounds).
    pub(crate) fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Deterministic per-(group, subgroup) sub-seed derivation used by the
/// survey, so sampling is independent of enumeration order.
pub(crate) fn mix_seed(seed: u64, group_index: usize, subgroup_index: usize) -> u64 {
    let mut s =
        SplitMix64::new(seed ^ ((group_index as u64) << 32).wrapping_add(subgroup_index as u64));
    s.next_u64()
}
