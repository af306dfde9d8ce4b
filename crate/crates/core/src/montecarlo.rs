//! Deterministic chunked Monte Carlo.
//!
//! Samples are split into fixed-size chunks; chunk `k` draws from a ChaCha8
//! stream seeded with `seed` on stream `k`. Counts are summed, so results
//! depend only on `(samples, seed)`, never on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Samples per chunk.
pub const CHUNK: u64 = 10_000;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

/// Outcome of one draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Draw {
    /// Outside the region being measured; not counted.
    Outside,
    Miss,
    Hit,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub drawn: u64,
    pub inside: u64,
    pub hits: u64,
}

/// Runs `samples` draws of `f`.
pub fn tally<F>(samples: u64, seed: u64, f: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng) -> Draw + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let len = CHUNK.min(samples - k * CHUNK);
            let mut t = Tally {
                drawn: len,
                ..Tally::default()
            };
            for _ in 0..len {
                match f(&mut rng) {
                    Draw::Outside => {}
                    Draw::Miss => t.inside += 1,
                    Draw::Hit => {
                        t.inside += 1;
                        t.hits += 1;
                    }
                }
            }
            t
        })
        .reduce(Tally::default, |a, b| Tally {
            drawn: a.drawn + b.drawn,
            inside: a.inside + b.inside,
            hits: a.hits + b.hits,
        })
}

/// A binomial proportion estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    /// Half-width of the 99% normal-approximation interval.
    pub half_width: f64,
    pub samples: u64,
    pub seed: u64,
}

impl Estimate {
    /// Hit fraction among draws that landed inside the region.
    pub fn proportion(t: &Tally, seed: u64) -> Self {
        let n = t.inside.max(1) as f64;
        let p = t.hits as f64 / n;
        let se = (p * (1.0 - p) / n).sqrt();
        Self {
            value: p,
            std_error: se,
            half_width: Z99 * se,
            samples: t.inside,
            seed,
        }
    }

    /// Multiplies value and errors by `s` (e.g. a bounding volume).
    pub fn scaled(self, s: f64) -> Self {
        Self {
            value: self.value * s,
            std_error: self.std_error * s,
            half_width: self.half_width * s,
            ..self
        }
    }

    /// `|value − target|` measured in standard errors.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.value - target).abs() / self.std_error
    }
}
