//! SplitMix64 generator and the handful of sampling helpers the simulator needs.
//!
//! The generator and every sampling routine are fixed here (rather than
//! delegated to a general RNG crate) so output streams stay bit-stable for
//! golden files.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Seed for a child stream, derived from a master seed and a path of
    /// coordinates (e.g. agent kind, epsilon index, run index).
    pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
        path.iter()
            .fold(mix64(master.wrapping_add(GOLDEN_GAMMA)), |acc, &c| {
                mix64(acc ^ mix64(c.wrapping_add(GOLDEN_GAMMA)))
            })
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` by multiply-shift. Exact for powers of two,
    /// bias below 2^-60 otherwise for the small `n` used here.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// True with probability `p`.
    #[inline]
    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}
