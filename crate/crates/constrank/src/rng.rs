//! Minimal deterministic pseudo-random generator (splitmix64).
//!
//! Every randomized strategy in the crate draws from one of these, seeded
//! from the run configuration, so reports are reproducible bit for bit and
//! independent of platform and thread count.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from the inclusive range [lo, hi].
    pub fn next_in_range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    /// A nonzero integer vector with entries in [-bound, bound].
    pub fn nonzero_vector(&mut self, len: usize, bound: i64) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..len).map(|_| self.next_in_range(-bound, bound)).collect();
            if v.iter().any(|&c| c != 0) {
                return v;
            }
        }
    }
}
