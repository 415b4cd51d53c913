//! Seeded random lattice sets of a prescribed diameter.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rips_morse::{Lattice, LatticePoint, VertexSet, Window};

use crate::error::CliError;

/// Attempts allowed per requested sample before the bounds are declared infeasible.
const ATTEMPTS_PER_SAMPLE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub n: usize,
    pub t: u64,
    pub min_size: usize,
    pub max_size: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Draws `samples` sets inside `window` with diameter exactly `t`.
///
/// Each draw picks a size uniformly in `[min_size, max_size]`, then adds
/// points one at a time, each uniform among the window points within `t`
/// of everything chosen so far. Draws that stall or end below diameter `t`
/// are rejected.
pub fn sample_sets(spec: &SampleSpec, window: &Window) -> Result<Vec<VertexSet<LatticePoint>>, CliError> {
    if spec.min_size == 0 || spec.min_size > spec.max_size {
        return Err(CliError::Usage(format!(
            "need 1 <= min size <= max size, got {}..{}",
            spec.min_size, spec.max_size
        )));
    }
    if window.dim() != spec.n {
        return Err(CliError::Usage(format!("window has dimension {}, expected {}", window.dim(), spec.n)));
    }
    let count = window.point_count().unwrap_or(u64::MAX);
    if count > 1 << 20 {
        return Err(CliError::Usage(format!("window has {count} points, too many to sample from")));
    }
    let lattice = Lattice::new(spec.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let pool: Vec<LatticePoint> = window.points().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.samples);
    let budget = ATTEMPTS_PER_SAMPLE.saturating_mul(spec.samples.max(1));
    let mut attempts = 0;
    while out.len() < spec.samples {
        attempts += 1;
        if attempts > budget {
            return Err(CliError::Usage(format!(
                "no set of diameter {} with {}..={} points found in the window after {budget} draws",
                spec.t, spec.min_size, spec.max_size
            )));
        }
        let size = rng.gen_range(spec.min_size..=spec.max_size);
        if let Some(points) = draw(&pool, spec.t, size, &mut rng) {
            let set = VertexSet::new(&lattice, points).expect("window points are valid");
            if set.diam() == spec.t {
                out.push(set);
            }
        }
    }
    Ok(out)
}

fn draw(pool: &[LatticePoint], t: u64, size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<LatticePoint>> {
    let mut chosen: Vec<&LatticePoint> = vec![pool.choose(rng)?];
    while chosen.len() < size {
        let options: Vec<&LatticePoint> = pool
            .iter()
            .filter(|p| !chosen.contains(p) && chosen.iter().all(|q| l1(p, q) <= t))
            .collect();
        chosen.push(options.choose(rng)?);
    }
    Some(chosen.into_iter().cloned().collect())
}

fn l1(p: &LatticePoint, q: &LatticePoint) -> u64 {
    p.0.iter().zip(&q.0).map(|(a, b)| a.abs_diff(*b)).sum()
}
