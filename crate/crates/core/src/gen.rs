//! Seeded random connected networks for property checks and timing runs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Network;

/// Largest arc count in the verification corpus.
pub const CORPUS_MAX_M: usize = 14;

/// Random connected network on `n` nodes with `m` arcs: a random spanning
/// tree plus distinct extra arcs, with arc numbering shuffled. Source is node
/// 1 and sink is node `n`.
///
/// Panics unless `n >= 2` and `n - 1 <= m <= n(n-1)/2`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, m: usize) -> Network {
    assert!(n >= 2, "need at least two nodes");
    assert!(m >= n - 1 && m <= n * (n - 1) / 2, "arc count {m} impossible for {n} nodes");

    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut seen = HashSet::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    for i in 1..n {
        let u = order[rng.gen_range(0..i)];
        let v = order[i];
        seen.insert((u.min(v), u.max(v)));
        pairs.push((u, v));
    }
    if m * 2 > n * (n - 1) / 2 {
        // Dense: sample from the explicit complement.
        let mut rest: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .filter(|p| !seen.contains(p))
            .collect();
        rest.shuffle(rng);
        pairs.extend(rest.into_iter().take(m - pairs.len()));
    } else {
        while pairs.len() < m {
            let u = rng.gen_range(1..=n);
            let v = rng.gen_range(1..=n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    Network::new(n, 1, n, &pairs).expect("generated network is valid")
}

/// One corpus instance: `n` in `[3, 8]`, `m` in `[n - 1, min(14, n(n-1)/2)]`.
pub fn corpus_instance<R: Rng>(rng: &mut R) -> Network {
    let n = rng.gen_range(3..=8);
    let max_m = CORPUS_MAX_M.min(n * (n - 1) / 2);
    let m = rng.gen_range(n - 1..=max_m);
    random_connected(rng, n, m)
}

pub fn corpus(seed: u64, cases: usize) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases).map(|_| corpus_instance(&mut rng)).collect()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
