//! Seeded 64-bit multiplicative congruential generator.
//!
//! `state ← state · 0xd1342543de82ef95 (mod 2^64)` with an odd state; only the
//! high 32 bits of each state are used as output. Reports record the seed so
//! every sampled check can be replayed exactly.

#[derive(Clone, Debug)]
pub struct Mcg {
    seed: u64,
    state: u64,
}

impl Mcg {
    pub const MULTIPLIER: u64 = 0xd134_2543_de82_ef95;

    pub fn new(seed: u64) -> Self {
        let mut g = Mcg {
            seed,
            state: (seed ^ 0x9e37_79b9_7f4a_7c15) | 1,
        };
        // Discard a few outputs so nearby seeds decorrelate.
        for _ in 0..4 {
            g.next_u32();
        }
        g
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER);
        (self.state >> 32) as u32
    }

    pub fn next_u64(&mut self) -> u64 {
        (u64::from(self.next_u32()) << 32) | u64::from(self.next_u32())
    }

    /// Uniform in `0..n` for `0 < n <= 2^32`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0 && n <= 1 << 32);
        (u64::from(self.next_u32()) * n) >> 32
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.next_u32() >> 31 == 1
    }

    /// Independent stream for a sub-task, e.g. one per parallel check.
    pub fn fork(&mut self, index: u64) -> Mcg {
        Mcg::new(self.next_u64() ^ index.wrapping_mul(0x2545_f491_4f6c_dd1d))
    }
}
