//! Deterministic sampling of step functions and valuations.
//!
//! Every sample draws from its own ChaCha stream derived from
//! `(seed, sample index)`, so results do not depend on evaluation order or
//! on the number of worker threads.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::dyadic::Dyadic;
use crate::lattice::{Elem, FiniteResiduatedLattice};
use crate::usc::StepFunction;

/// Random sampling or exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Random,
    Exhaustive,
}

/// How valuations are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerSpec {
    /// Breakpoints are drawn from `{k / 2^grid_exponent}`.
    pub grid_exponent: u32,
    pub sample_count: usize,
    pub seed: u64,
    pub mode: SampleMode,
    /// Exhaustive mode is refused when the number of valuations exceeds this.
    pub exhaustive_cap: usize,
}

impl SamplerSpec {
    pub fn random(grid_exponent: u32, sample_count: usize, seed: u64) -> Self {
        SamplerSpec {
            grid_exponent,
            sample_count,
            seed,
            mode: SampleMode::Random,
            exhaustive_cap: 1_000_000,
        }
    }

    pub fn exhaustive(grid_exponent: u32) -> Self {
        SamplerSpec {
            grid_exponent,
            sample_count: 0,
            seed: 0,
            mode: SampleMode::Exhaustive,
            exhaustive_cap: 1_000_000,
        }
    }
}

/// The RNG for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random strictly increasing chain in `l`, starting at a uniformly chosen
/// element and extended upwards with probability 1/2 at each step.
pub fn random_chain<R: Rng>(l: &FiniteResiduatedLattice, max_len: usize, rng: &mut R) -> Vec<Elem> {
    let mut chain = vec![rng.gen_range(0..l.size())];
    while chain.len() < max_len && rng.gen_bool(0.5) {
        let last = *chain.last().expect("chain is non-empty");
        let above: Vec<Elem> = l.elements().filter(|&y| l.lt(last, y)).collect();
        match above.choose(rng) {
            Some(&y) => chain.push(y),
            None => break,
        }
    }
    chain
}

/// A random step function with breakpoints on the grid `k / 2^grid_exponent`.
pub fn random_step<R: Rng>(
    l: &Arc<FiniteResiduatedLattice>,
    grid_exponent: u32,
    rng: &mut R,
) -> StepFunction {
    let slots = (1usize << grid_exponent).saturating_sub(1);
    let chain = random_chain(l, slots + 1, rng);
    let mut inner: Vec<usize> = (1..=slots).collect();
    inner.shuffle(rng);
    let mut cuts: Vec<usize> = inner.into_iter().take(chain.len() - 1).collect();
    cuts.sort_unstable();
    let mut raw: Vec<(Dyadic, Elem)> = cuts
        .iter()
        .zip(&chain)
        .map(|(&k, &v)| (Dyadic::frac(k as i64, grid_exponent), v))
        .collect();
    raw.push((Dyadic::one(), chain[chain.len() - 1]));
    StepFunction::normalize(l.clone(), raw).expect("sampled data is well-formed")
}

/// All step functions with breakpoints on the grid `k / 2^grid_exponent`,
/// or `None` when there are more than `cap` of them.
pub fn all_steps(
    l: &Arc<FiniteResiduatedLattice>,
    grid_exponent: u32,
    cap: usize,
) -> Option<Vec<StepFunction>> {
    let cells = 1usize << grid_exponent;
    let mut out: Vec<StepFunction> = Vec::new();
    fn extend(
        l: &Arc<FiniteResiduatedLattice>,
        cells: usize,
        grid_exponent: u32,
        values: &mut Vec<Elem>,
        out: &mut Vec<StepFunction>,
        cap: usize,
    ) -> bool {
        if values.len() == cells {
            let raw: Vec<(Dyadic, Elem)> = values
                .iter()
                .enumerate()
                .map(|(i, &v)| (Dyadic::frac(i as i64 + 1, grid_exponent), v))
                .collect();
            out.push(StepFunction::normalize(l.clone(), raw).expect("monotone by construction"));
            return out.len() <= cap;
        }
        for e in l.elements() {
            if values.last().is_none_or(|&p| l.leq(p, e)) {
                values.push(e);
                let ok = extend(l, cells, grid_exponent, values, out, cap);
                values.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut values = Vec::new();
    if extend(l, cells, grid_exponent, &mut values, &mut out, cap) {
        Some(out)
    } else {
        None
    }
}
