//! Seeded generator behind every partitioning run.
//!
//! The generator is SplitMix64, chosen because it is fully specified by a few
//! lines of 64-bit arithmetic: any implementation that follows
//! [`SplitMix64::next_u64`], [`SplitMix64::below`] and
//! [`SplitMix64::shuffle`] reproduces the same partitions bit for bit.

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `0..bound`.
    ///
    /// Takes the top `b` bits of each output, where `b` is the bit length of
    /// `bound - 1`, and rejects values `>= bound`. `bound == 1` returns 0
    /// without advancing the generator.
    ///
    /// # Panics
    /// If `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        if bound == 1 {
            return 0;
        }
        let bits = 64 - (bound - 1).leading_zeros();
        loop {
            let x = self.next_u64() >> (64 - bits);
            if x < bound {
                return x;
            }
        }
    }

    /// Fisher-Yates shuffle: for `i` from the last index down to 1, swap
    /// element `i` with element `below(i + 1)`.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Picks one of `count` tied candidates. No draw happens when `count == 1`.
    pub fn pick(&mut self, count: usize) -> usize {
        self.below(count as u64) as usize
    }
}
