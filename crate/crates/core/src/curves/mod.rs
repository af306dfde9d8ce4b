//! Discrete closed curves and links in R³ and S³.
//!
//! A curve is an ordered, implicitly closed list of samples. Thickness is
//! the discrete global radius of curvature: the minimum circumradius over
//! all triples of sample points, drawn from any components of the link.

mod io;
mod thickness;

pub use io::{link_from_csv, link_from_json, link_to_csv, link_to_json, LinkDocument};
pub use thickness::{
    euclidean_thickness, euclidean_thickness_brute, ropelength, spherical_thickness,
    spherical_thickness_brute, spherical_triple_radius,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::spherical_distance;
use crate::linalg::{dist, dist_sq, norm, scale, Vec3, Vec4};
use crate::optim::golden_min;

/// Curves with fewer samples are rejected.
pub const MIN_SAMPLES: usize = 8;

/// Samples on S³ may deviate from unit length by this much on input; they
/// are renormalised.
pub const SPHERE_INPUT_TOL: f64 = 1e-9;

/// Two samples closer than this count as the same point.
pub const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    #[serde(rename = "r3")]
    Euclidean,
    #[serde(rename = "s3")]
    Spherical,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Euclidean => "r3",
            Ambient::Spherical => "s3",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Samples {
    Euclidean(Vec<Vec3>),
    Spherical(Vec<Vec4>),
}

/// One closed curve, sampled.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteCurve {
    samples: Samples,
}

fn check_consecutive<const N: usize>(pts: &[[f64; N]]) -> Result<()> {
    if pts.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: pts.len(),
        });
    }
    for i in 0..pts.len() {
        let j = (i + 1) % pts.len();
        if dist(&pts[i], &pts[j]) <= COINCIDENCE_TOL {
            return Err(Error::RepeatedSample(i, j));
        }
    }
    Ok(())
}

impl DiscreteCurve {
    pub fn euclidean(points: Vec<Vec3>) -> Result<Self> {
        if points.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coordinate".into()));
        }
        check_consecutive(&points)?;
        Ok(Self {
            samples: Samples::Euclidean(points),
        })
    }

    /// Samples must lie on S³ within [`SPHERE_INPUT_TOL`]; they are
    /// renormalised exactly.
    pub fn spherical(points: Vec<Vec4>) -> Result<Self> {
        let points = points
            .into_iter()
            .map(|p| {
                let n = norm(&p);
                if (n - 1.0).abs() > SPHERE_INPUT_TOL || !n.is_finite() {
                    Err(Error::NotUnit { norm: n })
                } else {
                    Ok(scale(&p, 1.0 / n))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        check_consecutive(&points)?;
        Ok(Self {
            samples: Samples::Spherical(points),
        })
    }

    /// Samples `f(t)` at `n` equally spaced `t ∈ [0, 2π)`.
    pub fn from_fn_euclidean(n: usize, f: impl Fn(f64) -> Vec3) -> Result<Self> {
        Self::euclidean(param_samples(n).map(f).collect())
    }

    pub fn from_fn_spherical(n: usize, f: impl Fn(f64) -> Vec4) -> Result<Self> {
        Self::spherical(param_samples(n).map(f).collect())
    }

    pub fn ambient(&self) -> Ambient {
        match self.samples {
            Samples::Euclidean(_) => Ambient::Euclidean,
            Samples::Spherical(_) => Ambient::Spherical,
        }
    }

    pub fn len(&self) -> usize {
        match &self.samples {
            Samples::Euclidean(p) => p.len(),
            Samples::Spherical(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn euclidean_points(&self) -> Option<&[Vec3]> {
        match &self.samples {
            Samples::Euclidean(p) => Some(p),
            Samples::Spherical(_) => None,
        }
    }

    pub fn spherical_points(&self) -> Option<&[Vec4]> {
        match &self.samples {
            Samples::Spherical(p) => Some(p),
            Samples::Euclidean(_) => None,
        }
    }

    /// Polygon length; geodesic segment lengths on S³.
    pub fn length(&self) -> f64 {
        match &self.samples {
            Samples::Euclidean(p) => closed_pairs(p).map(|(a, b)| dist(a, b)).sum(),
            Samples::Spherical(p) => closed_pairs(p)
                .map(|(a, b)| spherical_distance(a, b))
                .sum(),
        }
    }

    /// Uniform scaling about the origin (R³ only).
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let p = self.euclidean_points().ok_or(Error::AmbientMismatch {
            expected: "r3",
            got: "s3",
        })?;
        Self::euclidean(p.iter().map(|x| scale(x, s)).collect())
    }
}

fn param_samples(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| std::f64::consts::TAU * k as f64 / n as f64)
}

fn closed_pairs<T>(p: &[T]) -> impl Iterator<Item = (&T, &T)> {
    p.iter().zip(p.iter().cycle().skip(1)).take(p.len())
}

/// A knot or link: one or more disjoint closed curves in the same space.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteLink {
    components: Vec<DiscreteCurve>,
}

impl DiscreteLink {
    pub fn new(components: Vec<DiscreteCurve>) -> Result<Self> {
        let first = components.first().ok_or(Error::Empty("link components"))?;
        let ambient = first.ambient();
        for c in &components[1..] {
            if c.ambient() != ambient {
                return Err(Error::AmbientMismatch {
                    expected: ambient.name(),
                    got: c.ambient().name(),
                });
            }
        }
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                if components_touch(&components[i], &components[j]) {
                    return Err(Error::ComponentsIntersect(i, j));
                }
            }
        }
        Ok(Self { components })
    }

    pub fn knot(curve: DiscreteCurve) -> Self {
        Self {
            components: vec![curve],
        }
    }

    pub fn components(&self) -> &[DiscreteCurve] {
        &self.components
    }

    pub fn ambient(&self) -> Ambient {
        self.components[0].ambient()
    }

    pub fn total_samples(&self) -> usize {
        self.components.iter().map(DiscreteCurve::len).sum()
    }

    pub fn length(&self) -> f64 {
        self.components.iter().map(DiscreteCurve::length).sum()
    }
}

/// A noisy random link with 1 to 3 components and at most `max_samples`
/// samples in total (at least 24). Components are jittered round circles:
/// small circles in R³, great circles pushed off themselves in S³.
pub fn random_link<R: rand::Rng + ?Sized>(
    rng: &mut R,
    ambient: Ambient,
    max_samples: usize,
) -> Result<DiscreteLink> {
    use crate::geom::random_unit;
    use std::f64::consts::TAU;
    let max_samples = max_samples.max(3 * MIN_SAMPLES);
    loop {
        let comps = rng.random_range(1..=3usize);
        let total = rng.random_range(3 * MIN_SAMPLES..=max_samples);
        let per = total / comps;
        let mut curves = Vec::with_capacity(comps);
        for _ in 0..comps {
            let u: Vec4 = random_unit(rng);
            let mut v: Vec4 = random_unit(rng);
            let d = crate::linalg::dot(&u, &v);
            v = crate::linalg::normalized(&crate::linalg::axpy(&v, -d, &u)).unwrap_or(v);
            let radius = rng.random_range(0.5..1.5);
            let center: Vec3 = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
            let pts: Vec<Vec4> = (0..per)
                .map(|k| {
                    let t = TAU * (k as f64 + rng.random_range(-0.3..0.3)) / per as f64;
                    let (s, c) = t.sin_cos();
                    let noise: Vec4 = std::array::from_fn(|_| rng.random_range(-0.15..0.15));
                    std::array::from_fn(|i| c * u[i] + s * v[i] + noise[i])
                })
                .collect();
            let curve = match ambient {
                Ambient::Euclidean => DiscreteCurve::euclidean(
                    pts.iter()
                        .map(|p| std::array::from_fn(|i| center[i] + radius * p[i]))
                        .collect(),
                ),
                Ambient::Spherical => DiscreteCurve::spherical(
                    pts.iter()
                        .map(|p| scale(p, 1.0 / norm(p)))
                        .collect(),
                ),
            };
            match curve {
                Ok(c) => curves.push(c),
                Err(_) => break,
            }
        }
        if curves.len() == comps {
            if let Ok(link) = DiscreteLink::new(curves) {
                return Ok(link);
            }
        }
    }
}

fn components_touch(a: &DiscreteCurve, b: &DiscreteCurve) -> bool {
    fn any_close<const N: usize>(p: &[[f64; N]], q: &[[f64; N]]) -> bool {
        let tol = COINCIDENCE_TOL * COINCIDENCE_TOL;
        p.iter().any(|x| q.iter().any(|y| dist_sq(x, y) <= tol))
    }
    match (&a.samples, &b.samples) {
        (Samples::Euclidean(p), Samples::Euclidean(q)) => any_close(p, q),
        (Samples::Spherical(p), Samples::Spherical(q)) => any_close(p, q),
        _ => false,
    }
}

/// Minimum distance between two curves (geodesic on S³), starting from the
/// closest sample pair and refined over the four adjacent edge pairs
/// (chords in R³, great-circle arcs in S³).
pub fn component_min_distance(a: &DiscreteCurve, b: &DiscreteCurve) -> Result<f64> {
    match (&a.samples, &b.samples) {
        (Samples::Euclidean(p), Samples::Euclidean(q)) => Ok(min_distance_refined(
            p,
            q,
            lerp,
            dist,
        )),
        (Samples::Spherical(p), Samples::Spherical(q)) => Ok(min_distance_refined(
            p,
            q,
            slerp,
            spherical_distance,
        )),
        _ => Err(Error::AmbientMismatch {
            expected: a.ambient().name(),
            got: b.ambient().name(),
        }),
    }
}

fn lerp<const N: usize>(x: &[f64; N], y: &[f64; N], t: f64) -> [f64; N] {
    std::array::from_fn(|i| x[i] + t * (y[i] - x[i]))
}

/// Point at fraction `t` along the minor great-circle arc from `x` to `y`.
fn slerp(x: &Vec4, y: &Vec4, t: f64) -> Vec4 {
    let omega = spherical_distance(x, y);
    if omega < 1e-12 {
        return *x;
    }
    let s = omega.sin();
    let (wa, wb) = (((1.0 - t) * omega).sin() / s, (t * omega).sin() / s);
    std::array::from_fn(|i| wa * x[i] + wb * y[i])
}

fn min_distance_refined<const N: usize>(
    p: &[[f64; N]],
    q: &[[f64; N]],
    interp: impl Fn(&[f64; N], &[f64; N], f64) -> [f64; N],
    metric: impl Fn(&[f64; N], &[f64; N]) -> f64,
) -> f64 {
    let mut best = (f64::INFINITY, 0, 0);
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            let d = dist_sq(x, y);
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    let (i, j) = (best.1, best.2);
    let mut d_best = metric(&p[i], &q[j]);
    let edges = |pts: &[[f64; N]], k: usize| {
        let n = pts.len();
        [((k + n - 1) % n, k), (k, (k + 1) % n)]
    };
    for (pa, pb) in edges(p, i) {
        for (qa, qb) in edges(q, j) {
            let f = |s: f64, t: f64| {
                metric(&interp(&p[pa], &p[pb], s), &interp(&q[qa], &q[qb], t))
            };
            d_best = d_best.min(nested_golden_min(f));
        }
    }
    d_best
}

/// Minimises `f` over `[0,1]²` by nested golden-section search: the outer
/// search runs over `s` on `min_t f(s, t)`.
fn nested_golden_min(f: impl Fn(f64, f64) -> f64) -> f64 {
    const TOL: f64 = 1e-10;
    golden_min(|s| golden_min(|t| f(s, t), 0.0, 1.0, TOL).1, 0.0, 1.0, TOL).1
}
