//! Derivative-free maximization over angles: a start grid followed by cyclic
//! coordinate pattern search.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::QuantumError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizeOptions {
    pub points_per_axis: usize,
    /// Above this many grid points the grid is replaced by a seeded uniform
    /// sample of this size.
    pub max_grid: usize,
    /// Best grid points refined by pattern search.
    pub starts: usize,
    /// Zero keeps the grid unjittered.
    pub seed: u64,
    pub initial_step: f64,
    pub final_step: f64,
    /// Every coordinate is gridded over `[lo, hi)`.
    pub range: (f64, f64),
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            points_per_axis: 16,
            max_grid: 1 << 16,
            starts: 4,
            seed: 0,
            initial_step: PI / 8.0,
            final_step: 1e-7,
            range: (0.0, 2.0 * PI),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridReport {
    pub points_per_axis: usize,
    pub points: usize,
    /// True when the full grid was too large and a seeded sample was used.
    pub sampled: bool,
    pub starts: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Maximum {
    pub value: f64,
    pub x: Vec<f64>,
    pub evaluations: usize,
    pub grid: GridReport,
}

fn grid(dim: usize, o: &OptimizeOptions) -> (Vec<Vec<f64>>, bool) {
    let (lo, hi) = o.range;
    let step = (hi - lo) / o.points_per_axis as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let full = (o.points_per_axis as f64).powi(dim as i32);
    if full <= o.max_grid as f64 {
        let jitter: Vec<f64> = (0..dim)
            .map(|_| if o.seed == 0 { 0.0 } else { rng.random::<f64>() * step })
            .collect();
        let n = full as usize;
        let pts = (0..n)
            .map(|mut k| {
                (0..dim)
                    .map(|i| {
                        let idx = k % o.points_per_axis;
                        k /= o.points_per_axis;
                        lo + idx as f64 * step + jitter[i]
                    })
                    .collect()
            })
            .collect();
        (pts, false)
    } else {
        let pts = (0..o.max_grid)
            .map(|_| (0..dim).map(|_| rng.random_range(lo..hi)).collect())
            .collect();
        (pts, true)
    }
}

fn pattern_search<F>(f: &F, mut x: Vec<f64>, mut fx: f64, o: &OptimizeOptions) -> Result<(f64, Vec<f64>, usize), QuantumError>
where
    F: Fn(&[f64]) -> Result<f64, QuantumError>,
{
    let mut step = o.initial_step;
    let mut evals = 0;
    while step >= o.final_step {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += dir * step;
                let fy = f(&y)?;
                evals += 1;
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    Ok((fx, x, evals))
}

/// Maximizes `f` over `dim` coordinates. Deterministic for fixed options,
/// whatever the number of worker threads.
pub fn maximize<F>(f: F, dim: usize, o: &OptimizeOptions) -> Result<Maximum, QuantumError>
where
    F: Fn(&[f64]) -> Result<f64, QuantumError> + Sync,
{
    if dim == 0 {
        return Err(QuantumError::NoFreeParameters);
    }
    let (pts, sampled) = grid(dim, o);
    let values: Vec<f64> = pts.par_iter().map(|p| f(p)).collect::<Result<_, _>>()?;
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    order.truncate(o.starts.max(1));
    let runs: Vec<(f64, Vec<f64>, usize)> = order
        .par_iter()
        .map(|&k| pattern_search(&f, pts[k].clone(), values[k], o))
        .collect::<Result<_, _>>()?;
    let evaluations = pts.len() + runs.iter().map(|r| r.2).sum::<usize>();
    let (value, x, _) = runs
        .into_iter()
        .reduce(|best, r| if r.0 > best.0 { r } else { best })
        .unwrap();
    Ok(Maximum {
        value,
        x,
        evaluations,
        grid: GridReport {
            points_per_axis: o.points_per_axis,
            points: pts.len(),
            sampled,
            starts: o.starts.max(1),
            seed: o.seed,
        },
    })
}
