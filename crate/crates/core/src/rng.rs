//! Deterministic seedable RNG used everywhere randomness is called for.
//!
//! All random choices in the library flow from a caller-supplied 64-bit
//! seed, so identical seeds reproduce identical runs bit for bit.

/// splitmix64 stream; small, portable and stable across platforms.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        // Modulo bias is irrelevant for our small n.
        self.next_u64() % n
    }

    /// Signed integer in `-height..=height`.
    pub fn int_in(&mut self, height: u64) -> i64 {
        let span = 2 * height + 1;
        self.below(span) as i64 - height as i64
    }

    /// Nonzero signed integer in `-height..=height`.
    pub fn nonzero_int_in(&mut self, height: u64) -> i64 {
        loop {
            let v = self.int_in(height);
            if v != 0 {
                return v;
            }
        }
    }

    /// Derive an independent stream; used to hand sub-tasks their own rng.
    pub fn fork(&mut self, tag: u64) -> Rng {
        Rng::new(self.next_u64() ^ tag.wrapping_mul(0x9e3779b97f4a7c15))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn bounds() {
        let mut r = Rng::new(7);
        for _ in 0..1000 {
            let v = r.int_in(1);
            assert!((-1..=1).contains(&v));
            let w = r.nonzero_int_in(3);
            assert!(w != 0 && (-3..=3).contains(&w));
        }
    }
}
