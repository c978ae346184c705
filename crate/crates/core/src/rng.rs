//! Splittable, counter-based random streams.
//!
//! Every sampling operation in this crate takes an explicit [`RandomStream`].
//! A stream is a pure function of `(key, counter)`, so a given seed fixes
//! every draw bit-for-bit regardless of thread count or call interleaving,
//! and independent sub-streams for parallel work are derived with
//! [`RandomStream::child`] instead of by jumping a shared generator.

use rand::RngCore;

/// SplitMix64 finalizer: a full-avalanche 64-bit mixer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// Counter-based PRNG: output block `i` is `mix64(key + i * GOLDEN)`.
///
/// `child(k)` derives a statistically independent stream by re-keying, so a
/// tree of streams can be laid over replications, lattice tiles and jump
/// sequences deterministically.
#[derive(Debug, Clone)]
pub struct RandomStream {
    key: u64,
    ctr: u64,
}

impl RandomStream {
    pub fn from_seed(seed: u64) -> Self {
        RandomStream {
            key: mix64(seed ^ 0x6a09_e667_f3bc_c909),
            ctr: 0,
        }
    }

    /// Derive sub-stream `index` without advancing `self`.
    pub fn child(&self, index: u64) -> Self {
        RandomStream {
            key: mix64(self.key ^ mix64(index.wrapping_add(GOLDEN))),
            ctr: 0,
        }
    }

    #[inline]
    pub fn next_raw(&mut self) -> u64 {
        let out = mix64(self.key.wrapping_add(self.ctr.wrapping_mul(GOLDEN)));
        self.ctr = self.ctr.wrapping_add(1);
        out
    }

    /// Uniform draw in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_raw() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in the open interval `(0, 1)`.
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_raw() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[lo, hi)`.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal via `rand_distr`'s ziggurat.
    #[inline]
    pub fn normal(&mut self) -> f64 {
        rand_distr::Distribution::sample(&rand_distr::StandardNormal, self)
    }

    /// Standard exponential.
    #[inline]
    pub fn exponential(&mut self) -> f64 {
        rand_distr::Distribution::sample(&rand_distr::Exp1, self)
    }

    /// Poisson draw with mean `lambda >= 0`.
    pub fn poisson(&mut self, lambda: f64) -> u64 {
        if lambda <= 0.0 {
            return 0;
        }
        let d = rand_distr::Poisson::new(lambda).expect("lambda must be finite and positive");
        rand_distr::Distribution::sample(&d, self) as u64
    }

    /// Random sign, +1 or -1 with equal probability.
    #[inline]
    pub fn sign(&mut self) -> f64 {
        if self.next_raw() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl RngCore for RandomStream {
    #[inline]
    fn next_u32(&mut self) -> u32 {
        (self.next_raw() >> 32) as u32
    }

    #[inline]
    fn next_u64(&mut self) -> u64 {
        self.next_raw()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_raw().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
