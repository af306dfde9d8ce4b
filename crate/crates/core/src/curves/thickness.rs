//! Triple-scan thickness.
//!
//! Euclidean thickness is `min circumradius(x, y, z)` over all unordered
//! triples of samples. On S³ the circle through three points has Euclidean
//! radius `ρ ≤ 1` in R⁴ and lies in an affine plane at distance `h` from
//! the origin with `ρ² + h² = 1`; its normal injectivity radius inside S³ is
//! `arcsin ρ`. We evaluate that as `atan2(ρ, h)`, which stays accurate when
//! `ρ` is close to one (great circles) where `arcsin` is ill-conditioned.
//! As two of the points merge the value tends to half their geodesic
//! distance, so strand-to-strand contact is captured too.
//!
//! The reference path enumerates all `C(n, 3)` triples. The pruned path
//! first evaluates the `O(n²)` edge-plus-point triples to get an upper
//! bound `b`, then
//! skips every triple whose longest side exceeds the diameter of a circle
//! with value `b`: any circle through two points is at least half as wide
//! as their distance, so skipped triples cannot beat the bound. Both paths
//! evaluate each triple with the same function in the same argument order,
//! so they agree exactly.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use super::{Ambient, DiscreteLink, COINCIDENCE_TOL};
use crate::error::{Error, Result};
use crate::geom::circumradius_from_parts;
use crate::linalg::{axpy, dist, dot, norm, scale, sub, Vec3, Vec4};

/// Per-triple value and the pruning rule that goes with it.
trait TripleValue<const N: usize>: Sync {
    fn value(&self, a: &[f64; N], b: &[f64; N], c: &[f64; N], lab: f64, lac: f64, lbc: f64)
        -> f64;

    /// Largest side length a triple may have and still improve on `best`.
    fn max_side(&self, best: f64) -> f64;
}

struct Circumradius;

impl TripleValue<3> for Circumradius {
    #[inline]
    fn value(&self, a: &Vec3, b: &Vec3, c: &Vec3, lab: f64, lac: f64, lbc: f64) -> f64 {
        circumradius_from_parts(&sub(b, a), &sub(c, a), lab, lac, lbc)
    }

    fn max_side(&self, best: f64) -> f64 {
        2.0 * best * (1.0 + 1e-9)
    }
}

struct SphericalTube;

impl TripleValue<4> for SphericalTube {
    #[inline]
    fn value(&self, a: &Vec4, b: &Vec4, c: &Vec4, lab: f64, lac: f64, lbc: f64) -> f64 {
        spherical_value(a, b, c, lab, lac, lbc)
    }

    fn max_side(&self, best: f64) -> f64 {
        if best >= FRAC_PI_2 {
            f64::INFINITY
        } else {
            2.0 * best.sin() * (1.0 + 1e-9)
        }
    }
}

#[inline]
fn spherical_value(a: &Vec4, b: &Vec4, c: &Vec4, lab: f64, lac: f64, lbc: f64) -> f64 {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let rho = circumradius_from_parts(&ab, &ac, lab, lac, lbc);
    if !rho.is_finite() {
        return FRAC_PI_2;
    }
    // Distance from the origin to the affine plane a + span(ab, ac).
    let e1 = scale(&ab, 1.0 / lab);
    let w = axpy(&ac, -dot(&ac, &e1), &e1);
    let wn = norm(&w);
    if wn == 0.0 {
        return FRAC_PI_2;
    }
    let e2 = scale(&w, 1.0 / wn);
    let foot = axpy(&axpy(a, -dot(a, &e1), &e1), -dot(a, &e2), &e2);
    rho.atan2(norm(&foot))
}

/// Spherical tube radius of the circle through three points of S³.
pub fn spherical_triple_radius(a: &Vec4, b: &Vec4, c: &Vec4) -> Result<f64> {
    let (lab, lac, lbc) = (dist(a, b), dist(a, c), dist(b, c));
    if lab == 0.0 || lac == 0.0 || lbc == 0.0 {
        return Err(Error::CoincidentPoints(0, 0));
    }
    Ok(spherical_value(a, b, c, lab, lac, lbc))
}

/// Flattened samples of a link with component boundaries.
struct Flat<const N: usize> {
    points: Vec<[f64; N]>,
    /// `(start, len)` for every component
    ranges: Vec<(usize, usize)>,
}

impl<const N: usize> Flat<N> {
    fn new(components: impl Iterator<Item = Vec<[f64; N]>>) -> Self {
        let mut points = Vec::new();
        let mut ranges = Vec::new();
        for c in components {
            ranges.push((points.len(), c.len()));
            points.extend(c);
        }
        Self { points, ranges }
    }

    /// Any two samples of the whole link that coincide.
    fn check_coincident(&self) -> Result<()> {
        let p = &self.points;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                if dist(&p[i], &p[j]) <= COINCIDENCE_TOL {
                    return Err(Error::CoincidentPoints(i, j));
                }
            }
        }
        Ok(())
    }

    fn eval<T: TripleValue<N>>(&self, f: &T, i: usize, j: usize, k: usize) -> f64 {
        let mut t = [i, j, k];
        t.sort_unstable();
        let [i, j, k] = t;
        let (a, b, c) = (&self.points[i], &self.points[j], &self.points[k]);
        f.value(a, b, c, dist(a, b), dist(a, c), dist(b, c))
    }

    /// Every triple made of one polygon edge and any third sample. This
    /// covers the curvature triples and, for strands in contact, the
    /// edge-to-point triples that approach half the strand distance.
    fn seed_bound<T: TripleValue<N>>(&self, f: &T) -> f64 {
        let p = &self.points;
        let edges: Vec<(usize, usize)> = self
            .ranges
            .iter()
            .flat_map(|&(start, len)| (0..len).map(move |k| (start + k, start + (k + 1) % len)))
            .collect();
        edges
            .par_iter()
            .map(|&(i, j)| {
                let mut best = f64::INFINITY;
                for k in 0..p.len() {
                    if k != i && k != j {
                        best = best.min(self.eval(f, i, j, k));
                    }
                }
                best
            })
            .reduce(|| f64::INFINITY, f64::min)
    }

    fn brute<T: TripleValue<N>>(&self, f: &T) -> f64 {
        let p = &self.points;
        let n = p.len();
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut best = f64::INFINITY;
                for j in (i + 1)..n {
                    let lab = dist(&p[i], &p[j]);
                    for k in (j + 1)..n {
                        let v = f.value(&p[i], &p[j], &p[k], lab, dist(&p[i], &p[k]), dist(&p[j], &p[k]));
                        best = best.min(v);
                    }
                }
                best
            })
            .reduce(|| f64::INFINITY, f64::min)
    }

    fn pruned<T: TripleValue<N>>(&self, f: &T) -> f64 {
        let seed = self.seed_bound(f);
        let limit = f.max_side(seed);
        if !limit.is_finite() {
            return seed.min(self.brute(f));
        }
        let p = &self.points;
        let n = p.len();
        let scanned = (0..n)
            .into_par_iter()
            .map(|i| {
                let near: Vec<(usize, f64)> = ((i + 1)..n)
                    .filter_map(|j| {
                        let d = dist(&p[i], &p[j]);
                        (d <= limit).then_some((j, d))
                    })
                    .collect();
                let mut best = f64::INFINITY;
                for (x, &(j, lab)) in near.iter().enumerate() {
                    for &(k, lac) in &near[x + 1..] {
                        let lbc = dist(&p[j], &p[k]);
                        if lbc > limit {
                            continue;
                        }
                        best = best.min(f.value(&p[i], &p[j], &p[k], lab, lac, lbc));
                    }
                }
                best
            })
            .reduce(|| f64::INFINITY, f64::min);
        seed.min(scanned)
    }
}

fn euclidean_flat(link: &DiscreteLink) -> Result<Flat<3>> {
    if link.ambient() != Ambient::Euclidean {
        return Err(Error::AmbientMismatch {
            expected: "r3",
            got: "s3",
        });
    }
    let flat = Flat::new(
        link.components()
            .iter()
            .map(|c| c.euclidean_points().expect("ambient checked").to_vec()),
    );
    flat.check_coincident()?;
    Ok(flat)
}

fn spherical_flat(link: &DiscreteLink) -> Result<Flat<4>> {
    if link.ambient() != Ambient::Spherical {
        return Err(Error::AmbientMismatch {
            expected: "s3",
            got: "r3",
        });
    }
    let flat = Flat::new(
        link.components()
            .iter()
            .map(|c| c.spherical_points().expect("ambient checked").to_vec()),
    );
    flat.check_coincident()?;
    Ok(flat)
}

/// Thickness of a link in R³ (pruned triple scan).
pub fn euclidean_thickness(link: &DiscreteLink) -> Result<f64> {
    Ok(euclidean_flat(link)?.pruned(&Circumradius))
}

/// Thickness of a link in R³ by scanning every triple.
pub fn euclidean_thickness_brute(link: &DiscreteLink) -> Result<f64> {
    Ok(euclidean_flat(link)?.brute(&Circumradius))
}

/// Thickness of a link in S³, in radians; never exceeds π/2.
pub fn spherical_thickness(link: &DiscreteLink) -> Result<f64> {
    Ok(spherical_flat(link)?.pruned(&SphericalTube))
}

pub fn spherical_thickness_brute(link: &DiscreteLink) -> Result<f64> {
    Ok(spherical_flat(link)?.brute(&SphericalTube))
}

/// Total core length divided by thickness.
pub fn ropelength(link: &DiscreteLink) -> Result<f64> {
    let t = euclidean_thickness(link)?;
    Ok(link.length() / t)
}

#[cfg(test)]
mod tests {
    use super::super::DiscreteCurve;
    use super::*;
    use crate::geom::{apply, random_orthogonal};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI, TAU};

    fn circle(n: usize, r: f64, z: f64) -> DiscreteCurve {
        DiscreteCurve::from_fn_euclidean(n, |t| [r * t.cos(), r * t.sin(), z]).unwrap()
    }

    #[test]
    fn unit_circle_has_thickness_one() {
        for n in [8, 13, 64] {
            let l = DiscreteLink::knot(circle(n, 1.0, 0.0));
            assert!((euclidean_thickness(&l).unwrap() - 1.0).abs() < 1e-12);
            assert!((euclidean_thickness_brute(&l).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn coaxial_pair_brute_oracle() {
        // Brute-force oracle: every triple, circumradius written out
        // from the side lengths with Heron's formula.
        let l = DiscreteLink::new(vec![circle(96, 1.0, 0.0), circle(96, 1.0, 2.0)]).unwrap();
        let pts: Vec<Vec3> = l
            .components()
            .iter()
            .flat_map(|c| c.euclidean_points().unwrap().to_vec())
            .collect();
        let mut oracle = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let (a, b, c) = (
                        dist(&pts[i], &pts[j]),
                        dist(&pts[i], &pts[k]),
                        dist(&pts[j], &pts[k]),
                    );
                    let s = (a + b + c) / 2.0;
                    let area2 = s * (s - a) * (s - b) * (s - c);
                    if area2 > 1e-20 {
                        oracle = oracle.min(a * b * c / (4.0 * area2.sqrt()));
                    }
                }
            }
        }
        assert!((oracle - 1.0).abs() < 1e-9);
        assert!((euclidean_thickness(&l).unwrap() - 1.0).abs() < 1e-12);
        let rope = ropelength(&l).unwrap();
        assert!((rope - l.length()).abs() < 1e-12);
        assert!((rope - 4.0 * PI).abs() < 0.01);
    }

    #[test]
    fn ropelength_of_circles_is_scale_free() {
        for s in [0.25, 1.0, 7.0] {
            let l = DiscreteLink::knot(circle(512, s, 0.0));
            // dense sampling: curvature triples are conditioned at ~1e-12
            let t = euclidean_thickness(&l).unwrap();
            assert!((t - s).abs() < 1e-10 * s, "{t} vs {s}");
            assert!((ropelength(&l).unwrap() - TAU).abs() < 1e-3);
        }
    }

    #[test]
    fn spherical_circles() {
        let great = DiscreteCurve::from_fn_spherical(256, |t| [t.cos(), t.sin(), 0.0, 0.0]).unwrap();
        let t = spherical_thickness(&DiscreteLink::knot(great)).unwrap();
        assert!((t - FRAC_PI_2).abs() < 1e-12);

        let h = 3f64.sqrt() / 2.0;
        let small =
            DiscreteCurve::from_fn_spherical(64, |t| [0.5 * t.cos(), 0.5 * t.sin(), h, 0.0]).unwrap();
        let link = DiscreteLink::knot(small);
        let t = spherical_thickness(&link).unwrap();
        assert!((t - FRAC_PI_6).abs() < 1e-6);
        // independent form: arcsin of the smallest circumradius
        let pts = link.components()[0].spherical_points().unwrap();
        let mut rho = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    rho = rho.min(crate::geom::circumradius(&pts[i], &pts[j], &pts[k]).unwrap());
                }
            }
        }
        assert!((rho.min(1.0).asin() - t).abs() < 1e-9);
    }

    #[test]
    fn orthogonal_great_circles_give_quarter_pi() {
        let a = DiscreteCurve::from_fn_spherical(256, |t| [t.cos(), t.sin(), 0.0, 0.0]).unwrap();
        let b = DiscreteCurve::from_fn_spherical(256, |t| [0.0, 0.0, t.cos(), t.sin()]).unwrap();
        let link = DiscreteLink::new(vec![a, b]).unwrap();
        let t = spherical_thickness(&link).unwrap();
        assert!((t - FRAC_PI_4).abs() < 1e-4, "{t}");
        assert!(t >= FRAC_PI_4);
    }

    #[test]
    fn triple_value_matches_arcsin_when_well_conditioned() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let p: [Vec4; 3] = std::array::from_fn(|_| crate::geom::random_unit(&mut rng));
            let rho = crate::geom::circumradius(&p[0], &p[1], &p[2]).unwrap();
            if rho < 0.95 {
                let v = spherical_triple_radius(&p[0], &p[1], &p[2]).unwrap();
                assert!((v - rho.asin()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn coincident_samples_are_reported() {
        // Figure-eight-like curve passing through the origin twice.
        let mut pts: Vec<Vec3> = (0..12)
            .map(|k| {
                let t = TAU * k as f64 / 12.0;
                [t.sin(), (2.0 * t).sin(), 0.1 * t.cos()]
            })
            .collect();
        pts[6] = pts[0];
        let l = DiscreteLink::knot(DiscreteCurve::euclidean(pts).unwrap());
        assert!(matches!(euclidean_thickness(&l), Err(Error::CoincidentPoints(0, 6))));
        assert!(euclidean_thickness_brute(&l).is_err());
    }

    #[test]
    fn wrong_ambient_is_rejected() {
        let l = DiscreteLink::knot(circle(16, 1.0, 0.0));
        assert!(spherical_thickness(&l).is_err());
    }

    #[test]
    fn rigid_motion_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let knot = |t: f64| {
            [
                t.sin() + 2.0 * (2.0 * t).sin(),
                t.cos() - 2.0 * (2.0 * t).cos(),
                -(3.0 * t).sin(),
            ]
        };
        let base = DiscreteLink::knot(DiscreteCurve::from_fn_euclidean(90, knot).unwrap());
        let t0 = euclidean_thickness(&base).unwrap();
        for _ in 0..5 {
            let rot = random_orthogonal::<3, _>(&mut rng);
            let shift: Vec3 = std::array::from_fn(|_| rng.random_range(-10.0..10.0));
            let moved = DiscreteCurve::from_fn_euclidean(90, |t| {
                crate::linalg::add(&apply(&rot, &knot(t)), &shift)
            })
            .unwrap();
            let t1 = euclidean_thickness(&DiscreteLink::knot(moved)).unwrap();
            assert!((t1 - t0).abs() < 1e-9);
        }
    }
}
