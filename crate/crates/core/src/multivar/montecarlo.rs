//! How often random exponent data admits the certificate.

use super::prop::prop4_feasible;
use crate::lindioph::Feasibility;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarlo {
    pub n: usize,
    pub d: u64,
    pub samples: usize,
    pub feasible: usize,
    pub unknown: usize,
}

impl MonteCarlo {
    pub fn proportion(&self) -> f64 {
        self.feasible as f64 / self.samples as f64
    }
}

fn chunk_rng(seed: u64, n: usize, d: u64, chunk: usize) -> ChaCha8Rng {
    let mixed = seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ d.wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    let mut rng = ChaCha8Rng::seed_from_u64(mixed);
    rng.set_stream(chunk as u64);
    rng
}

/// Draws three exponent vectors with entries uniform on [0, d] per sample.
/// Samples are split into fixed chunks with their own generators, so the
/// count does not depend on the thread count.
pub fn monte_carlo_prop4(n: usize, d: u64, samples: usize, seed: u64, budget: usize) -> MonteCarlo {
    assert!(n >= 1, "need at least one variable");
    let chunks = samples.div_ceil(CHUNK);
    let (feasible, unknown) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, n, d, c);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut hit = (0usize, 0usize);
            for _ in 0..len {
                let mut draw = || (0..n).map(|_| rng.gen_range(0..=d) as u32).collect::<Vec<u32>>();
                let e = [draw(), draw(), draw()];
                if d == 0 {
                    continue;
                }
                match prop4_feasible(&e, budget) {
                    Feasibility::Feasible => hit.0 += 1,
                    Feasibility::Unknown => hit.1 += 1,
                    Feasibility::Infeasible => {}
                }
            }
            hit
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    MonteCarlo { n, d, samples, feasible, unknown }
}

/// One row per n in `ns`, one column per d in `ds`.
pub fn monte_carlo_matrix(ns: &[usize], ds: &[u64], samples: usize, seed: u64, budget: usize) -> Vec<Vec<MonteCarlo>> {
    ns.iter().map(|&n| ds.iter().map(|&d| monte_carlo_prop4(n, d, samples, seed, budget)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = monte_carlo_prop4(4, 100, 300, 7, 1_000_000);
        let b = monte_carlo_prop4(4, 100, 300, 7, 1_000_000);
        assert_eq!(a, b);
        let c = monte_carlo_prop4(4, 100, 300, 8, 1_000_000);
        assert_eq!(c.samples, 300);
    }

    #[test]
    fn degenerate_degree() {
        assert_eq!(monte_carlo_prop4(3, 0, 50, 1, 1000).feasible, 0);
    }

    #[test]
    fn large_n_is_mostly_feasible() {
        let r = monte_carlo_prop4(10, 100_000, 1000, 7, 1_000_000);
        assert!((r.proportion() - 0.979).abs() <= 0.03, "{r:?}");
    }
}
