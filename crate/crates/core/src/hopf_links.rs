//! Geometric Hopf links and torus knots on Clifford tori.
//!
//! Lifting a point configuration on S² through the Hopf map gives one great
//! circle per point. Hopf projection doubles distances between fibers, and
//! the fibers are Clifford parallel, so two fibers over base points at
//! distance `d` stay exactly `d/2` apart. The tube thickness of the lifted
//! link is half the smallest fiber separation, i.e. `¼·min d = ½·r` where
//! `r` is the cap-packing radius of the base, capped at π/2.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{spherical_thickness, DiscreteCurve, DiscreteLink};
use crate::error::{Error, Result};
use crate::geom::{fiber_distance, hopf_fiber, GreatCircle};
use crate::optim::golden_max;
use crate::s2_packing::{packing_radius, S2Config};

/// Tolerance between the closed form and the sampled triple scan used by
/// [`HopfLink::thickness`] (adequate from 256 samples per fiber).
pub const SAMPLED_TOL: f64 = 2e-3;

/// The Hopf fibers over a configuration, sampled as a spherical link.
#[derive(Clone, Debug)]
pub struct HopfLink {
    base: S2Config,
    fibers: Vec<GreatCircle>,
    link: DiscreteLink,
}

impl HopfLink {
    pub fn base(&self) -> &S2Config {
        &self.base
    }

    pub fn fibers(&self) -> &[GreatCircle] {
        &self.fibers
    }

    pub fn link(&self) -> &DiscreteLink {
        &self.link
    }

    pub fn samples_per_fiber(&self) -> usize {
        self.link.components()[0].len()
    }

    /// Thickness from the base configuration: `min(π/2, ½·packing radius)`.
    pub fn closed_form_thickness(&self) -> f64 {
        (0.5 * packing_radius(&self.base)).min(FRAC_PI_2)
    }

    /// Thickness from the lifted great circles: half the smallest distance
    /// between two fibers, capped at π/2.
    pub fn fiber_separation_thickness(&self) -> f64 {
        let f = &self.fibers;
        let mut d = f64::INFINITY;
        for i in 0..f.len() {
            for j in (i + 1)..f.len() {
                d = d.min(fiber_distance(&f[i], &f[j]));
            }
        }
        (0.5 * d).min(FRAC_PI_2)
    }

    /// All three measurements; errors if the sampled triple scan strays
    /// from the closed form by more than `tol`.
    pub fn thickness(&self, tol: f64) -> Result<HopfThickness> {
        let closed_form = self.closed_form_thickness();
        let sampled = spherical_thickness(&self.link)?;
        if (closed_form - sampled).abs() > tol {
            return Err(Error::Inconsistent {
                closed_form,
                sampled,
            });
        }
        Ok(HopfThickness {
            closed_form,
            fiber_separation: self.fiber_separation_thickness(),
            sampled,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfThickness {
    pub closed_form: f64,
    pub fiber_separation: f64,
    pub sampled: f64,
}

/// One Hopf fiber per base point, each sampled at `samples` points.
pub fn lift_configuration(base: &S2Config, samples: usize) -> Result<HopfLink> {
    let fibers: Vec<GreatCircle> = base.points().iter().map(hopf_fiber).collect();
    let curves = fibers
        .iter()
        .map(|f| DiscreteCurve::spherical(f.sample(samples)))
        .collect::<Result<Vec<_>>>()?;
    Ok(HopfLink {
        base: base.clone(),
        fibers,
        link: DiscreteLink::new(curves)?,
    })
}

/// An (m, 2) torus knot on the Clifford torus with radii `a` and `√(1 − a²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusKnotSpec {
    m: u32,
    aspect: f64,
    samples: usize,
}

impl TorusKnotSpec {
    /// `m` must be odd and at least 3 (even `m` gives a two-component
    /// link); `aspect` must lie in (0, 1).
    pub fn new(m: u32, aspect: f64, samples: usize) -> Result<Self> {
        if m < 3 || m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "m = {m}: need an odd m ≥ 3 for a torus knot"
            )));
        }
        if !(aspect > 0.0 && aspect < 1.0) {
            return Err(Error::InvalidArgument(format!("aspect {aspect} not in (0, 1)")));
        }
        Ok(Self { m, aspect, samples })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn aspect(&self) -> f64 {
        self.aspect
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// Samples `t ↦ (a·e^{imt}, √(1−a²)·e^{2it})` for `t ∈ [0, 2π)`.
pub fn torus_knot_curve(spec: &TorusKnotSpec) -> Result<DiscreteCurve> {
    let a = spec.aspect;
    let b = (1.0 - a * a).sqrt();
    let m = spec.m as f64;
    DiscreteCurve::from_fn_spherical(spec.samples, |t| {
        let (sm, cm) = (m * t).sin_cos();
        let (s2, c2) = (2.0 * t).sin_cos();
        [a * cm, a * sm, b * c2, b * s2]
    })
}

/// Spherical thickness of the torus knot; zero where the sampled curve
/// degenerates (strands meeting).
pub fn torus_knot_thickness(m: u32, aspect: f64, samples: usize) -> Result<f64> {
    let spec = TorusKnotSpec::new(m, aspect, samples)?;
    let curve = match torus_knot_curve(&spec) {
        Ok(c) => c,
        Err(Error::RepeatedSample(..)) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    match spherical_thickness(&DiscreteLink::knot(curve)) {
        Err(Error::CoincidentPoints(..)) => Ok(0.0),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AspectOptimum {
    pub m: u32,
    pub samples: usize,
    pub aspect: f64,
    pub thickness: f64,
    /// `(aspect, thickness)` at every grid point.
    pub sweep: Vec<(f64, f64)>,
}

/// Samples per torus knot in an aspect sweep.
pub const DEFAULT_SWEEP_SAMPLES: usize = 128;
/// Aspect ratios tried before refinement.
pub const DEFAULT_SWEEP_GRID: usize = 512;

/// Grid precision of the golden-section refinement of the aspect ratio.
pub const ASPECT_TOL: f64 = 1e-5;

/// Scans `grid` equally spaced aspect ratios `i/(grid + 1)` and refines the
/// best one by golden-section search between its grid neighbours.
pub fn optimize_aspect(m: u32, samples: usize, grid: usize) -> Result<AspectOptimum> {
    TorusKnotSpec::new(m, 0.5, samples)?;
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be positive".into()));
    }
    let at = |i: usize| i as f64 / (grid + 1) as f64;
    let sweep = (1..=grid)
        .into_par_iter()
        .map(|i| Ok((at(i), torus_knot_thickness(m, at(i), samples)?)))
        .collect::<Result<Vec<_>>>()?;
    let best = sweep
        .iter()
        .enumerate()
        .fold(0, |b, (i, s)| if s.1 > sweep[b].1 { i } else { b });
    let lo = at(best);
    let hi = at(best + 2);
    let f = |a: f64| torus_knot_thickness(m, a, samples).unwrap_or(0.0);
    let (mut aspect, mut thickness) = golden_max(f, lo, hi, ASPECT_TOL);
    if sweep[best].1 > thickness {
        (aspect, thickness) = sweep[best];
    }
    Ok(AspectOptimum {
        m,
        samples,
        aspect,
        thickness,
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::component_min_distance;
    use crate::geom::{hopf_project, UnitVec4};
    use crate::linalg::{dist, norm};
    use crate::s2_packing::{antipodal_pair, equator, octahedron, tetrahedron};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn antipodal_lift_is_standard_hopf_link() {
        let h = lift_configuration(&antipodal_pair(), 256).unwrap();
        let [a, b] = [h.fibers()[0], h.fibers()[1]];
        // the two great circles span orthogonal planes
        for x in [a.u(), a.v()] {
            for y in [b.u(), b.v()] {
                assert!(crate::linalg::dot(x.as_array(), y.as_array()).abs() < 1e-15);
            }
        }
        let t = h.thickness(1e-3).unwrap();
        assert!((t.closed_form - FRAC_PI_4).abs() < 1e-15);
        assert!((t.fiber_separation - FRAC_PI_4).abs() < 1e-12);
        assert!((t.sampled - FRAC_PI_4).abs() < 1e-3);
    }

    #[test]
    fn single_fiber_is_a_great_circle() {
        let base = S2Config::from_vectors(&[[0.3, 0.4, 0.5]]).unwrap();
        let h = lift_configuration(&base, 64).unwrap();
        let t = h.thickness(1e-12).unwrap();
        assert_eq!(t.closed_form, FRAC_PI_2);
        assert!((t.sampled - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn lift_samples_project_to_base() {
        let oct = octahedron();
        let h = lift_configuration(&oct, 32).unwrap();
        assert_eq!(h.link().components().len(), 6);
        for (c, q) in h.link().components().iter().zip(oct.points()) {
            for p in c.spherical_points().unwrap() {
                let img = hopf_project(&UnitVec4::normalize(*p).unwrap());
                assert!(dist(img.as_array(), q.as_array()) < 1e-9);
            }
        }
    }

    #[test]
    fn lifted_fibers_are_half_as_far_apart() {
        let base = tetrahedron();
        let h = lift_configuration(&base, 256).unwrap();
        let comps = h.link().components();
        for i in 0..comps.len() {
            for j in (i + 1)..comps.len() {
                let d = component_min_distance(&comps[i], &comps[j]).unwrap();
                let want = 0.5 * base.points()[i].distance(&base.points()[j]);
                assert!((d - want).abs() < 1e-4, "{d} vs {want}");
            }
        }
    }

    #[test]
    fn closed_form_matches_triple_scan() {
        for base in [antipodal_pair(), equator(3).unwrap(), tetrahedron(), octahedron()] {
            let h = lift_configuration(&base, 256).unwrap();
            let t = h.thickness(SAMPLED_TOL).unwrap();
            assert!((t.fiber_separation - t.closed_form).abs() < 1e-6);
        }
        let t = lift_configuration(&octahedron(), 256)
            .unwrap()
            .thickness(SAMPLED_TOL)
            .unwrap();
        assert!((t.closed_form - FRAC_PI_8).abs() < 1e-15);
    }

    #[test]
    fn inconsistency_is_reported() {
        let h = lift_configuration(&octahedron(), 16).unwrap();
        assert!(matches!(h.thickness(1e-9), Err(Error::Inconsistent { .. })));
    }

    #[test]
    fn torus_knot_validation_and_sphere() {
        assert!(TorusKnotSpec::new(4, 0.5, 64).is_err());
        assert!(TorusKnotSpec::new(1, 0.5, 64).is_err());
        assert!(TorusKnotSpec::new(3, 1.0, 64).is_err());
        let spec = TorusKnotSpec::new(3, 0.5f64.sqrt(), 512).unwrap();
        let c = torus_knot_curve(&spec).unwrap();
        for p in c.spherical_points().unwrap() {
            assert!((norm(p) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn trefoil_length_grows_with_samples() {
        let mut prev = 0.0;
        for n in [32, 64, 128, 256, 512] {
            let spec = TorusKnotSpec::new(3, 0.6, n).unwrap();
            let len = torus_knot_curve(&spec).unwrap().length();
            assert!(len > prev);
            prev = len;
        }
    }

    #[test]
    fn trefoil_thins_out_on_degenerate_tori() {
        // sample counts divisible by the strand count keep strands aligned
        let mid = torus_knot_thickness(3, 0.6, 384).unwrap();
        for a in [0.01, 0.9999] {
            let t = torus_knot_thickness(3, a, 384).unwrap();
            assert!(t < 0.1 * mid, "a={a}: {t} vs {mid}");
        }
    }
}
