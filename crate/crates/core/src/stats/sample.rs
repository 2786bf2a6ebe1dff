use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chain::TpmChain;
use super::histogram::atom_index;

/// Cycles simulated per random stream.
pub const BLOCK_SIZE: usize = 4096;

/// Running sums over one block of consecutive cycles.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockSums {
    pub cycles: u64,
    pub w: f64,
    pub w2: f64,
    pub q_h: f64,
    pub q_h2: f64,
}

impl BlockSums {
    fn mean_w(&self) -> f64 {
        self.w / self.cycles as f64
    }

    fn var_w(&self) -> f64 {
        let m = self.mean_w();
        self.w2 / self.cycles as f64 - m * m
    }
}

/// Monte Carlo realisation of the measured chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub n_cycles: u64,
    pub seed: u64,
    /// Visits of each `(q_h, w_tot)` atom, indexed like the histogram atoms.
    pub counts: [u64; 9],
    pub blocks: Vec<BlockSums>,
}

fn mean_and_se(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, f64::INFINITY);
    }
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

impl SampleSummary {
    fn total(&self) -> BlockSums {
        self.blocks
            .iter()
            .fold(BlockSums::default(), |a, b| BlockSums {
                cycles: a.cycles + b.cycles,
                w: a.w + b.w,
                w2: a.w2 + b.w2,
                q_h: a.q_h + b.q_h,
                q_h2: a.q_h2 + b.q_h2,
            })
    }

    pub fn mean_w(&self) -> f64 {
        self.total().mean_w()
    }

    /// Single-cycle variance of `w_tot`.
    pub fn var_w(&self) -> f64 {
        self.total().var_w()
    }

    pub fn mean_q_h(&self) -> f64 {
        let t = self.total();
        t.q_h / t.cycles as f64
    }

    /// Batch-means standard error of [`Self::mean_w`]; valid when blocks are
    /// much longer than the correlation time of the chain.
    pub fn mean_w_se(&self) -> f64 {
        let full: Vec<_> = self
            .blocks
            .iter()
            .filter(|b| b.cycles == BLOCK_SIZE as u64)
            .collect();
        mean_and_se(full.iter().map(|b| b.mean_w())).1
    }

    /// Batch-means standard error of [`Self::var_w`].
    pub fn var_w_se(&self) -> f64 {
        let full: Vec<_> = self
            .blocks
            .iter()
            .filter(|b| b.cycles == BLOCK_SIZE as u64)
            .collect();
        mean_and_se(full.iter().map(|b| b.var_w())).1
    }

    /// Empirical probability of each atom.
    pub fn frequencies(&self) -> [f64; 9] {
        self.counts.map(|c| c as f64 / self.n_cycles as f64)
    }
}

fn draw(rng: &mut ChaCha8Rng, p_excited: f64) -> usize {
    usize::from(rng.gen::<f64>() < p_excited)
}

/// Random stream for block `block` of run `seed`.
fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `len` consecutive cycles from a stationary initial level, calling
/// `visit(hot, cold, q_h, w_tot)` for each.
fn run_block(
    chain: &TpmChain,
    rng: &mut ChaCha8Rng,
    len: usize,
    mut visit: impl FnMut(i8, i8, f64, f64),
) {
    let mut n = draw(rng, chain.stationary[1]);
    for _ in 0..len {
        let mut p = [n; 5];
        for k in 0..4 {
            p[k + 1] = draw(rng, chain.kernels[k][1][p[k]]);
        }
        let inc = chain.increments(&p);
        visit(
            p[2] as i8 - p[1] as i8,
            p[3] as i8 - p[0] as i8,
            inc.q_h,
            inc.w_tot(),
        );
        n = p[4];
    }
}

/// Samples `n_cycles` measured cycles.
///
/// Cycles are simulated in blocks of [`BLOCK_SIZE`], each with its own
/// ChaCha8 stream derived from `(seed, block)` and its own stationary
/// initial level, so the result does not depend on the thread count.
pub fn sample_trajectories(chain: &TpmChain, n_cycles: u64, seed: u64) -> SampleSummary {
    let n_blocks = n_cycles.div_ceil(BLOCK_SIZE as u64);
    let per_block: Vec<(BlockSums, [u64; 9])> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let len = (n_cycles - b * BLOCK_SIZE as u64).min(BLOCK_SIZE as u64) as usize;
            let mut rng = block_rng(seed, b);
            let mut sums = BlockSums {
                cycles: len as u64,
                ..Default::default()
            };
            let mut counts = [0u64; 9];
            run_block(chain, &mut rng, len, |hot, cold, q, w| {
                counts[atom_index(hot, cold)] += 1;
                sums.w += w;
                sums.w2 += w * w;
                sums.q_h += q;
                sums.q_h2 += q * q;
            });
            (sums, counts)
        })
        .collect();
    let mut counts = [0u64; 9];
    for (_, c) in &per_block {
        for (acc, x) in counts.iter_mut().zip(c) {
            *acc += x;
        }
    }
    SampleSummary {
        n_cycles,
        seed,
        counts,
        blocks: per_block.into_iter().map(|(s, _)| s).collect(),
    }
}

/// Fraction of independent runs of `m` cycles whose totals satisfy
/// `η Q_h + W ≤ 0`, i.e. whose empirical efficiency reaches `η` when `Q_h > 0`.
///
/// The fraction decays as `e^{−m J(η)}` for `η` above the mean efficiency.
pub fn block_event_probability(chain: &TpmChain, eta: f64, m: usize, runs: u64, seed: u64) -> f64 {
    let hits: u64 = (0..runs)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let mut y = 0.0;
            run_block(chain, &mut rng, m, |_, _, q, w| y += eta * q + w);
            u64::from(y <= 1e-9 * chain.quanta[1])
        })
        .sum();
    hits as f64 / runs as f64
}
