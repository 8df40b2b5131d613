//! Seeded random families with bounded matching number.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::family::{k_subsets, Family};
use crate::matching::maximum_matching;

/// Edge inclusion probabilities used by [`random_corpus`].
pub const DENSITIES: [f64; 3] = [0.1, 0.3, 0.5];

/// Includes each `k`-set with probability `q`, then deletes a random edge of
/// a maximum matching until `ν <= s`.
pub fn random_family<R: Rng>(rng: &mut R, n: u32, k: u32, s: u32, q: f64) -> Result<Family> {
    let edges: Vec<_> = k_subsets(n, k).into_iter().filter(|_| rng.gen_bool(q)).collect();
    let mut h = Family::new(n, k, edges)?;
    loop {
        let m = maximum_matching(&h);
        if m.len() <= s as usize {
            return Ok(h);
        }
        let victim = *m.edges().choose(rng).expect("nonempty matching");
        h = h.without_edge(&victim);
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub family: Family,
    pub s: u32,
    pub q: f64,
}

/// `count` families with `k ∈ {2,3}`, `k < n <= 12`, `s ∈ {1,2,3}` and `q`
/// from [`DENSITIES`]. Entry `i` uses ChaCha stream `i` of `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let k = rng.gen_range(2..=3u32);
            let n = rng.gen_range(k + 1..=12);
            let s = rng.gen_range(1..=3u32);
            let q = *DENSITIES.choose(&mut rng).expect("nonempty");
            let family = random_family(&mut rng, n, k, s, q).expect("parameters are in range");
            CorpusEntry { family, s, q }
        })
        .collect()
}
