//! Packings of equal disks (spherical caps) on S².
//!
//! A configuration of `n` points packs caps of radius half its minimum
//! pairwise geodesic distance. The density of such a packing is
//! `n·(1 − cos r)/2`, the fraction of the sphere's area covered.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::UnitVec3;
use crate::linalg::{axpy, dist, dot, normalized, sub, Vec3};

/// Hexagonal disk-packing density of the plane, π/√12.
pub const HEX_DENSITY: f64 = 0.906_899_682_117_108_9;

/// Pairs within this distance of the minimum are listed as achieving it.
pub const TIE_TOL: f64 = 1e-9;

/// `n ≥ 1` pairwise distinct points of S².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<UnitVec3>", into = "Vec<UnitVec3>")]
pub struct S2Config {
    points: Vec<UnitVec3>,
}

impl S2Config {
    pub fn new(points: Vec<UnitVec3>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("configuration"));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if dist(points[i].as_array(), points[j].as_array()) <= 1e-12 {
                    return Err(Error::CoincidentPoints(i, j));
                }
            }
        }
        Ok(Self { points })
    }

    /// Normalises every input vector first.
    pub fn from_vectors(vs: &[Vec3]) -> Result<Self> {
        Self::new(
            vs.iter()
                .map(|v| UnitVec3::normalize(*v))
                .collect::<Result<_>>()?,
        )
    }

    pub fn points(&self) -> &[UnitVec3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn summary(&self) -> PackingSummary {
        let radius = packing_radius(self);
        let achieved_pairs = if self.len() < 2 {
            Vec::new()
        } else {
            let dmin = 2.0 * radius;
            let mut pairs = Vec::new();
            for i in 0..self.len() {
                for j in (i + 1)..self.len() {
                    if self.points[i].distance(&self.points[j]) <= dmin + TIE_TOL {
                        pairs.push((i, j));
                    }
                }
            }
            pairs
        };
        PackingSummary {
            n: self.len(),
            radius,
            density: cap_density(self.len(), radius),
            achieved_pairs,
        }
    }
}

impl TryFrom<Vec<UnitVec3>> for S2Config {
    type Error = Error;
    fn try_from(v: Vec<UnitVec3>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<S2Config> for Vec<UnitVec3> {
    fn from(c: S2Config) -> Self {
        c.points
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingSummary {
    pub n: usize,
    /// Cap radius in radians.
    pub radius: f64,
    /// Covered fraction at this configuration's own radius.
    pub density: f64,
    /// Index pairs at minimum distance, lexicographically ordered.
    pub achieved_pairs: Vec<(usize, usize)>,
}

/// Half the minimum pairwise geodesic distance. A single point packs the
/// whole sphere, so `n < 2` yields π.
pub fn packing_radius(c: &S2Config) -> f64 {
    if c.len() < 2 {
        return PI;
    }
    let p = c.points();
    let mut dmin = f64::INFINITY;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            dmin = dmin.min(p[i].distance(&p[j]));
        }
    }
    0.5 * dmin
}

fn cap_density(n: usize, r: f64) -> f64 {
    n as f64 * (1.0 - r.cos()) / 2.0
}

/// Density `n·(1 − cos r)/2` of `n` caps of radius `r`; values above one
/// mean the caps must overlap and are reported as an error.
pub fn packing_density(n: usize, r: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if !(r > 0.0 && r <= PI) {
        return Err(Error::InvalidArgument(format!("cap radius {r} not in (0, π]")));
    }
    let rho = cap_density(n, r);
    if rho > 1.0 + 1e-12 {
        return Err(Error::Overfull { density: rho });
    }
    Ok(rho.min(1.0))
}

/// Optimal cap radius where it is known in closed form.
pub fn known_optimal_radius(n: usize) -> Option<f64> {
    match n {
        1 => Some(PI),
        2 => Some(PI / 2.0),
        3 => Some(PI / 3.0),
        4 => Some(0.5 * (-1.0f64 / 3.0).acos()),
        5 | 6 => Some(PI / 4.0),
        12 => Some(0.5 * 2.0f64.atan()),
        _ => None,
    }
}

/// Density of the best known packing of `n` caps, where known exactly.
pub fn best_known_density(n: usize) -> Option<f64> {
    known_optimal_radius(n).map(|r| cap_density(n, r).min(1.0))
}

/// Soft-min annealing parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximinOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Gradient steps per restart.
    pub iters: usize,
}

impl Default for MaximinOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            restarts: 8,
            iters: 3000,
        }
    }
}

/// Initial soft-min temperature (chord length units).
pub const T0: f64 = 0.5;
/// Geometric cooling factor per temperature stage.
pub const COOLING: f64 = 0.95;
/// Gradient steps taken at each temperature.
const STEPS_PER_STAGE: usize = 10;
/// Temperature floor.
const T_MIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximinResult {
    pub config: S2Config,
    pub summary: PackingSummary,
    /// Restart that produced the configuration.
    pub restart: usize,
    /// False when the final stage was still improving the minimum distance.
    pub converged: bool,
}

/// Maximin placement of `n` points on S², giving a lower bound on the
/// optimal cap radius `r_n`.
///
/// Each restart draws a random start and runs projected gradient ascent on
/// the soft minimum `−t·ln Σ exp(−|pᵢ − pⱼ|/t)` of pairwise chord lengths
/// (chords order pairs exactly as geodesic distances do), renormalising the
/// points after every step. The temperature follows `t_k = T0·0.95^k`,
/// stage `k` lasting a fixed number of steps; step sizes are found by
/// backtracking. The best configuration by true minimum distance is kept.
/// Restarts run in parallel with generator seed `seed ^ restart`; the
/// largest radius wins and ties go to the lower restart index.
pub fn optimize_maximin(n: usize, opts: &MaximinOptions) -> Result<MaximinResult> {
    if n < 2 {
        return Err(Error::InvalidArgument("maximin needs n ≥ 2".into()));
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidArgument("need at least one restart".into()));
    }
    let runs: Vec<(Vec<Vec3>, f64, bool)> = (0..opts.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ r as u64);
            anneal(n, opts.iters, &mut rng)
        })
        .collect();
    let (restart, (points, _, converged)) = runs
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .1 > best.1 .1 { cur } else { best })
        .expect("at least one restart");
    let config = S2Config::from_vectors(&points)?;
    Ok(MaximinResult {
        summary: config.summary(),
        config,
        restart,
        converged,
    })
}

fn min_chord(p: &[Vec3]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            m = m.min(dist(&p[i], &p[j]));
        }
    }
    m
}

/// Soft minimum of pairwise chords and its gradient.
fn soft_min(p: &[Vec3], t: f64, grad: Option<&mut [Vec3]>) -> f64 {
    let n = p.len();
    let mut d = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            d.push(dist(&p[i], &p[j]));
        }
    }
    let dmin = d.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = d.iter().map(|&x| (-(x - dmin) / t).exp()).collect();
    let z: f64 = weights.iter().sum();
    let value = dmin - t * z.ln();
    if let Some(g) = grad {
        g.iter_mut().for_each(|v| *v = [0.0; 3]);
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let w = weights[k] / z / d[k];
                let diff = sub(&p[i], &p[j]);
                g[i] = axpy(&g[i], w, &diff);
                g[j] = axpy(&g[j], -w, &diff);
                k += 1;
            }
        }
    }
    value
}

fn anneal(n: usize, iters: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec3>, f64, bool) {
    let mut p: Vec<Vec3> = (0..n).map(|_| crate::geom::random_unit(rng)).collect();
    let mut grad = vec![[0.0; 3]; n];
    let mut best = (p.clone(), min_chord(&p));
    let mut step: f64 = 0.1;
    let mut last_gain_at = 0;
    for it in 0..iters {
        let t = (T0 * COOLING.powi((it / STEPS_PER_STAGE) as i32)).max(T_MIN);
        let f0 = soft_min(&p, t, Some(&mut grad));
        for (g, x) in grad.iter_mut().zip(&p) {
            *g = axpy(g, -dot(g, x), x);
        }
        step = (step * 1.5).min(0.5);
        let mut moved = false;
        for _ in 0..60 {
            let trial: Vec<Vec3> = p
                .iter()
                .zip(&grad)
                .map(|(x, g)| normalized(&axpy(x, step, g)).unwrap_or(*x))
                .collect();
            if soft_min(&trial, t, None) > f0 {
                p = trial;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            step = 1e-3;
        }
        let m = min_chord(&p);
        if m > best.1 {
            if m > best.1 + 1e-10 {
                last_gain_at = it;
            }
            best = (p.clone(), m);
        }
    }
    // Converged when the last quarter of the run brought no measurable gain.
    let converged = last_gain_at < iters - iters / 4;
    let radius = chord_to_angle(best.1) / 2.0;
    (best.0, radius, converged)
}

fn chord_to_angle(c: f64) -> f64 {
    2.0 * (c / 2.0).min(1.0).asin()
}

/// One row of a density scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub r_hat: f64,
    pub rho_hat: f64,
    pub below_hex: bool,
    pub converged: bool,
}

/// Densities of optimised configurations for `n = 3..=n_max`, checked
/// against the planar hexagonal density. The configurations are lower
/// bounds for the optimum, so a row below π/√12 is evidence for the bound
/// on optimal packings, not a proof of it.
pub fn density_scan(n_max: usize, opts: &MaximinOptions) -> Result<Vec<ScanRow>> {
    if n_max < 3 {
        return Err(Error::InvalidArgument("n_max must be at least 3".into()));
    }
    (3..=n_max)
        .map(|n| {
            let res = optimize_maximin(n, opts)?;
            Ok(ScanRow {
                n,
                r_hat: res.summary.radius,
                rho_hat: res.summary.density,
                below_hex: res.summary.density < HEX_DENSITY,
                converged: res.converged,
            })
        })
        .collect()
}

/// Vertices of a regular octahedron.
pub fn octahedron() -> S2Config {
    S2Config::from_vectors(&[
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ])
    .expect("distinct vertices")
}

/// Vertices of a regular tetrahedron.
pub fn tetrahedron() -> S2Config {
    S2Config::from_vectors(&[
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ])
    .expect("distinct vertices")
}

/// Vertices of a regular icosahedron.
pub fn icosahedron() -> S2Config {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::with_capacity(12);
    for a in [-1.0, 1.0] {
        for b in [-phi, phi] {
            v.push([0.0, a, b]);
            v.push([a, b, 0.0]);
            v.push([b, 0.0, a]);
        }
    }
    S2Config::from_vectors(&v).expect("distinct vertices")
}

/// `n` equally spaced points on the equator.
pub fn equator(n: usize) -> Result<S2Config> {
    S2Config::from_vectors(
        &(0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                [t.cos(), t.sin(), 0.0]
            })
            .collect::<Vec<_>>(),
    )
}

/// Two antipodal points.
pub fn antipodal_pair() -> S2Config {
    S2Config::from_vectors(&[[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]]).expect("distinct")
}
