// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Seeded random streams.
//!
//! Every randomized operation takes a 64-bit seed and draws from
//! `Xoshiro256PlusPlus::seed_from_u64(seed)`. Sharded work derives one
//! stream per shard from `(seed, shard)` with a SplitMix64 finalizer, so
//! results depend only on the seed and the shard layout.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type Rng = Xoshiro256PlusPlus;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Independent stream `index` derived from `seed`.
pub fn stream(seed: u64, index: u64) -> Rng {
    Rng::seed_from_u64(mix(seed ^ mix(index.wrapping_add(0x9E37_79B9_7F4A_7C15))))
}

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform random `k`-subset of `0..n` by partial Fisher-Yates, in draw order.
pub fn sample_subset<R: rand::Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// Calls `f` on each index of `0..len` independently with probability `p`,
/// in increasing order. Jumps by geometric gaps, so the cost is about
/// `p * len` draws.
pub fn for_each_bernoulli<R: rand::Rng + ?Sized>(rng: &mut R, len: usize, p: f64, mut f: impl FnMut(usize)) {
    if p <= 0.0 || len == 0 {
        return;
    }
    if p >= 1.0 {
        (0..len).for_each(f);
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut i = 0usize;
    while i < len {
        let u: f64 = rng.gen();
        let gap = ((1.0 - u).ln() / log_q).floor();
        if gap >= (len - i) as f64 {
            break;
        }
        i += gap as usize;
        f(i);
        i += 1;
    }
}
