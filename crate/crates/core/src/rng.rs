//! SplitMix64, the seedable generator behind every randomized routine here.
//!
//! Written out so any implementation can reproduce the exact stream:
//!
//! ```text
//! state <- state + 0x9E3779B97F4A7C15          (wrapping)
//! z <- state
//! z <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9   (wrapping)
//! z <- (z xor (z >> 27)) * 0x94D049BB133111EB   (wrapping)
//! output z xor (z >> 31)
//! ```
//!
//! A uniform float in `[0, 1)` is `(output >> 11) * 2^-53`, and a Bernoulli
//! trial with probability `p` succeeds when that float is `< p`.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Uniform index in `0..n`; `n` must be nonzero.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize
    }
}
