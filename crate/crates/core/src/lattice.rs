//! Periodic packings of R³ by solid tubes around round circles.
//!
//! A packing is a lattice (three basis vectors) plus a motif of core
//! circles, all thickened by the same tube radius. A bialy is the solid unit
//! tube around a unit circle; its volume is `2π²` by Pappus' theorem
//! (`2π·R · πr²`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{point_to_circle_distance, Circle3};
use crate::linalg::{det3, dist, dist_sq, inverse3, mat_vec, norm, Mat3, Vec3};
use crate::montecarlo::{tally, Draw, Estimate};

/// Separation at which two tubes count as touching.
pub const CONTACT_TOL: f64 = 1e-6;

/// `c = 2 + √3`, horizontal distance between parallel unit circles one
/// unit apart vertically whose unit tubes touch.
pub const SHIFTED_INTERCORE: f64 = 3.732_050_807_568_877;

/// Coarse grid per circle for [`circle_circle_distance`].
const CC_GRID: usize = 64;
/// Grid cells used as starting points for the projection iteration.
const CC_STARTS: usize = 4;
const CC_MAX_ITERS: usize = 100_000;

/// Minimum distance between two circles in R³.
///
/// A 64×64 grid over both angles picks the four best cells; from each, the
/// iteration alternates exact nearest-point projections onto the other
/// circle until the iterate moves less than 1e−13. The distance never
/// increases along the iteration.
pub fn circle_circle_distance(a: &Circle3, b: &Circle3) -> Result<f64> {
    let pa: Vec<Vec3> = (0..CC_GRID)
        .map(|k| a.point(std::f64::consts::TAU * k as f64 / CC_GRID as f64))
        .collect();
    let pb: Vec<Vec3> = (0..CC_GRID)
        .map(|k| b.point(std::f64::consts::TAU * k as f64 / CC_GRID as f64))
        .collect();
    let mut cells: Vec<(f64, usize)> = Vec::with_capacity(CC_GRID);
    for (i, x) in pa.iter().enumerate() {
        let d = pb.iter().map(|y| dist_sq(x, y)).fold(f64::INFINITY, f64::min);
        cells.push((d, i));
    }
    cells.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut best = f64::INFINITY;
    let mut stalled = false;
    for &(_, i) in cells.iter().take(CC_STARTS) {
        let mut x = pa[i];
        let mut y = b.closest_point(&x);
        let mut converged = false;
        for _ in 0..CC_MAX_ITERS {
            let x_new = a.closest_point(&y);
            let y_new = b.closest_point(&x_new);
            let moved = dist(&x_new, &x) + dist(&y_new, &y);
            x = x_new;
            y = y_new;
            if moved < 1e-13 {
                converged = true;
                break;
            }
        }
        best = best.min(dist(&x, &y));
        stalled |= !converged;
    }
    // A stalled start is only a problem if no other start got as low.
    if stalled && best > 1e-9 {
        return Err(Error::NoConvergence { best });
    }
    Ok(best)
}

/// Solves `circle_circle_distance = 2` for the horizontal center offset of
/// two horizontal unit circles one unit apart vertically, by bisection.
pub fn shifted_intercore_distance() -> Result<f64> {
    let lower = Circle3::horizontal([0.0; 3], 1.0)?;
    let gap = |d: f64| -> Result<f64> {
        let upper = Circle3::horizontal([d, 0.0, 1.0], 1.0)?;
        Ok(circle_circle_distance(&lower, &upper)? - 2.0)
    };
    let (mut lo, mut hi) = (2.0, 4.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Lattice of core circles thickened to tubes of a common radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingSpec {
    /// Lattice basis vectors (rows).
    pub basis: Mat3,
    pub motif: Vec<Circle3>,
    pub tube_radius: f64,
}

impl PackingSpec {
    pub fn new(basis: Mat3, motif: Vec<Circle3>, tube_radius: f64) -> Result<Self> {
        if !(tube_radius >= 0.0 && tube_radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("tube radius {tube_radius}")));
        }
        if det3(&basis).abs() <= 1e-12 {
            return Err(Error::InvalidArgument("basis is degenerate".into()));
        }
        Ok(Self {
            basis,
            motif,
            tube_radius,
        })
    }

    /// Volume of a fundamental domain, `|det basis|`.
    pub fn cell_volume(&self) -> f64 {
        det3(&self.basis).abs()
    }

    pub fn longest_basis_vector(&self) -> f64 {
        self.basis.iter().map(norm).fold(0.0, f64::max)
    }

    /// Farthest any tube reaches from its core's center.
    fn reach(&self) -> f64 {
        self.motif.iter().map(|c| c.radius).fold(0.0, f64::max) + self.tube_radius
    }

    /// `2·(longest basis vector) + 2·reach + 2`; equals `2L + 6` for unit
    /// bialys.
    pub fn default_cutoff(&self) -> f64 {
        2.0 * self.longest_basis_vector() + 2.0 * self.reach() + 2.0
    }

    /// `Σ nᵢ bᵢ`
    pub fn translate(&self, n: [i64; 3]) -> Vec3 {
        let mut t = [0.0; 3];
        for (k, row) in self.basis.iter().enumerate() {
            for i in 0..3 {
                t[i] += n[k] as f64 * row[i];
            }
        }
        t
    }

    /// Real lattice coordinates of `x`.
    fn coords(&self, inv: &Mat3, x: &Vec3) -> Vec3 {
        // x = Bᵀ n, so n = (B⁻¹)ᵀ x
        let t = [
            [inv[0][0], inv[1][0], inv[2][0]],
            [inv[0][1], inv[1][1], inv[2][1]],
            [inv[0][2], inv[1][2], inv[2][2]],
        ];
        mat_vec(&t, x)
    }

    /// Integer ranges covering every translate of norm at most `r`.
    fn translate_bounds(&self, r: f64) -> [i64; 3] {
        let inv = inverse3(&self.basis).expect("basis checked nondegenerate");
        std::array::from_fn(|k| {
            let col = [inv[0][k], inv[1][k], inv[2][k]];
            (r * norm(&col)).ceil() as i64
        })
    }

    fn translates_within(&self, r: f64) -> Vec<[i64; 3]> {
        let [k0, k1, k2] = self.translate_bounds(r);
        let mut out = Vec::new();
        for i in -k0..=k0 {
            for j in -k1..=k1 {
                for k in -k2..=k2 {
                    let n = [i, j, k];
                    if norm(&self.translate(n)) <= r {
                        out.push(n);
                    }
                }
            }
        }
        out
    }

    /// Checks this packing and wraps it as certified.
    pub fn certify(self, cutoff: Option<f64>) -> Result<CertifiedPacking> {
        let report = verify_nonoverlap(&self, cutoff)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Overlap {
                a: v.core_a,
                b: v.core_b,
                translate: v.translate,
                distance: v.distance,
                required: 2.0 * self.tube_radius,
            });
        }
        Ok(CertifiedPacking {
            spec: self,
            report,
        })
    }
}

/// The lattices of bialy packings built from stacked and shifted columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PaperLattice {
    /// Hexagonally packed stacks: `Z(4,0,0) + Z(2,2√3,0) + Z(0,0,2)`.
    Stacked,
    /// Adjacent stacks shifted one unit: `Z(c,c,0) + Z(c,0,1) + Z(0,0,2)`.
    Checkerboard,
    /// Sheared checkerboard: `Z(4,0,0) + Z(2,b,1) + Z(0,0,2)`, `b = √(c²−4)`.
    Sheared,
}

impl PaperLattice {
    pub const ALL: [PaperLattice; 3] = [
        PaperLattice::Stacked,
        PaperLattice::Checkerboard,
        PaperLattice::Sheared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PaperLattice::Stacked => "stacked",
            PaperLattice::Checkerboard => "checkerboard",
            PaperLattice::Sheared => "sheared",
        }
    }
}

impl fmt::Display for PaperLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for PaperLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stacked" => Ok(PaperLattice::Stacked),
            "checkerboard" => Ok(PaperLattice::Checkerboard),
            "sheared" => Ok(PaperLattice::Sheared),
            other => Err(Error::InvalidArgument(format!(
                "unknown lattice {other:?} (stacked, checkerboard, sheared)"
            ))),
        }
    }
}

/// `b = √(c² − 4) = √(3 + 4√3)`
pub fn sheared_offset() -> f64 {
    (SHIFTED_INTERCORE * SHIFTED_INTERCORE - 4.0).sqrt()
}

/// One horizontal unit bialy at the origin in the chosen lattice.
pub fn paper_lattice(id: PaperLattice) -> PackingSpec {
    let c = SHIFTED_INTERCORE;
    let s3 = 3f64.sqrt();
    let basis = match id {
        PaperLattice::Stacked => [[4.0, 0.0, 0.0], [2.0, 2.0 * s3, 0.0], [0.0, 0.0, 2.0]],
        PaperLattice::Checkerboard => [[c, c, 0.0], [c, 0.0, 1.0], [0.0, 0.0, 2.0]],
        PaperLattice::Sheared => [[4.0, 0.0, 0.0], [2.0, sheared_offset(), 1.0], [0.0, 0.0, 2.0]],
    };
    let core = Circle3::horizontal([0.0; 3], 1.0).expect("unit radius");
    PackingSpec::new(basis, vec![core], 1.0).expect("lattice bases are nondegenerate")
}

/// A pair of tubes examined during verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubePair {
    pub core_a: usize,
    pub core_b: usize,
    /// Lattice translate applied to `core_b`.
    pub translate: [i64; 3],
    pub distance: f64,
    /// `distance − 2·tube_radius`
    pub gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonOverlapReport {
    pub cutoff: f64,
    pub pairs_checked: usize,
    pub min_gap: f64,
    /// Pairs whose gap is within [`CONTACT_TOL`] of zero.
    pub contacts: Vec<TubePair>,
    /// Pairs whose tubes overlap by more than [`CONTACT_TOL`].
    pub violations: Vec<TubePair>,
}

impl NonOverlapReport {
    pub fn certified(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every pair formed by a motif core and a translated motif core
/// within `cutoff` (default [`PackingSpec::default_cutoff`]). Each
/// unordered pair is reported once, with the lexicographically positive
/// translate.
pub fn verify_nonoverlap(spec: &PackingSpec, cutoff: Option<f64>) -> Result<NonOverlapReport> {
    let cutoff = cutoff.unwrap_or_else(|| spec.default_cutoff());
    let needed = 2.0 * spec.reach() + spec.longest_basis_vector();
    if cutoff < needed {
        return Err(Error::InvalidArgument(format!(
            "cutoff {cutoff} below the required {needed}"
        )));
    }
    let required = 2.0 * spec.tube_radius;
    let mut report = NonOverlapReport {
        cutoff,
        pairs_checked: 0,
        min_gap: f64::INFINITY,
        contacts: Vec::new(),
        violations: Vec::new(),
    };
    for n in spec.translates_within(cutoff) {
        let t = spec.translate(n);
        for (ia, a) in spec.motif.iter().enumerate() {
            for (ib, b) in spec.motif.iter().enumerate() {
                if (ib, n) <= (ia, [0, 0, 0]) {
                    continue;
                }
                let b = b.translated(&t);
                // |Δcenter| − Ra − Rb bounds the circle distance from below.
                if dist(&a.center, &b.center) - a.radius - b.radius > required + CONTACT_TOL {
                    continue;
                }
                let distance = circle_circle_distance(a, &b)?;
                let gap = distance - required;
                report.pairs_checked += 1;
                report.min_gap = report.min_gap.min(gap);
                let pair = TubePair {
                    core_a: ia,
                    core_b: ib,
                    translate: n,
                    distance,
                    gap,
                };
                if gap < -CONTACT_TOL {
                    report.violations.push(pair);
                } else if gap <= CONTACT_TOL {
                    report.contacts.push(pair);
                }
            }
        }
    }
    Ok(report)
}

/// A packing that passed [`verify_nonoverlap`].
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedPacking {
    spec: PackingSpec,
    report: NonOverlapReport,
}

impl CertifiedPacking {
    pub fn spec(&self) -> &PackingSpec {
        &self.spec
    }

    pub fn report(&self) -> &NonOverlapReport {
        &self.report
    }
}

/// Volume of the solid tube of radius `r` around a circle of radius `big_r`.
pub fn tube_volume(big_r: f64, r: f64) -> f64 {
    2.0 * PI * PI * big_r * r * r
}

/// Tube volume per fundamental-domain volume.
pub fn analytic_density(p: &CertifiedPacking) -> f64 {
    let s = &p.spec;
    let tubes: f64 = s.motif.iter().map(|c| tube_volume(c.radius, s.tube_radius)).sum();
    tubes / s.cell_volume()
}

/// Precomputed cores that can reach the fundamental cell.
struct Coverage<'a> {
    spec: &'a PackingSpec,
    inv: Mat3,
    cores: Vec<Circle3>,
}

impl<'a> Coverage<'a> {
    fn new(spec: &'a PackingSpec) -> Self {
        let inv = inverse3(&spec.basis).expect("nondegenerate basis");
        // Box around the unit cell, grown by the reach of a tube.
        let reach = spec.reach();
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for corner in 0..8u8 {
            let n = [(corner & 1) as i64, ((corner >> 1) & 1) as i64, ((corner >> 2) & 1) as i64];
            let x = spec.translate(n);
            for i in 0..3 {
                lo[i] = lo[i].min(x[i] - reach);
                hi[i] = hi[i].max(x[i] + reach);
            }
        }
        let half_diag = 0.5 * dist(&lo, &hi);
        let mid: Vec3 = std::array::from_fn(|i| 0.5 * (lo[i] + hi[i]));
        let motif_extent = spec
            .motif
            .iter()
            .map(|c| norm(&c.center))
            .fold(0.0, f64::max);
        let mut cores = Vec::new();
        for n in spec.translates_within(norm(&mid) + half_diag + motif_extent) {
            let t = spec.translate(n);
            for c in &spec.motif {
                let c = c.translated(&t);
                let inside = (0..3).all(|i| c.center[i] >= lo[i] && c.center[i] <= hi[i]);
                let near = (0..3)
                    .map(|i| (lo[i] - c.center[i]).max(c.center[i] - hi[i]).max(0.0).powi(2))
                    .sum::<f64>()
                    .sqrt()
                    <= c.radius + reach;
                if inside || near {
                    cores.push(c);
                }
            }
        }
        Self { spec, inv, cores }
    }

    /// Whether a point of the unit cell lies in some tube.
    fn covers_cell_point(&self, x: &Vec3) -> bool {
        let r = self.spec.tube_radius;
        self.cores.iter().any(|c| {
            dist_sq(x, &c.center) <= (c.radius + r) * (c.radius + r)
                && point_to_circle_distance(x, c) <= r
        })
    }

    /// Whether any point of space lies in some tube.
    fn covers(&self, x: &Vec3) -> bool {
        let n = self.spec.coords(&self.inv, x);
        let cell = [n[0].floor() as i64, n[1].floor() as i64, n[2].floor() as i64];
        let t = self.spec.translate(cell);
        self.covers_cell_point(&[x[0] - t[0], x[1] - t[1], x[2] - t[2]])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub analytic: f64,
    pub monte_carlo: Estimate,
}

/// Covered fraction of uniform samples in the fundamental parallelepiped.
pub fn monte_carlo_density(p: &CertifiedPacking, samples: u64, seed: u64) -> Result<DensityReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let cov = Coverage::new(&p.spec);
    let basis = p.spec.basis;
    let t = tally(samples, seed, |rng| {
        let u: [f64; 3] = [rng.random(), rng.random(), rng.random()];
        let x: Vec3 = std::array::from_fn(|i| {
            u[0] * basis[0][i] + u[1] * basis[1][i] + u[2] * basis[2][i]
        });
        if cov.covers_cell_point(&x) {
            Draw::Hit
        } else {
            Draw::Miss
        }
    });
    Ok(DensityReport {
        analytic: analytic_density(p),
        monte_carlo: Estimate::proportion(&t, seed),
    })
}

/// Covered fraction of uniform samples in a ball.
pub fn ball_density(
    p: &CertifiedPacking,
    center: Vec3,
    radius: f64,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::InvalidArgument(format!("ball radius {radius}")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let cov = Coverage::new(&p.spec);
    let t = tally(samples, seed, |rng| {
        let u: Vec3 = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        if u.iter().map(|v| v * v).sum::<f64>() > 1.0 {
            return Draw::Outside;
        }
        let x: Vec3 = std::array::from_fn(|i| center[i] + radius * u[i]);
        if cov.covers(&x) {
            Draw::Hit
        } else {
            Draw::Miss
        }
    });
    Ok(Estimate::proportion(&t, seed))
}

/// Monte Carlo volume of the tube of radius `r` around a horizontal circle
/// of radius `big_r`, sampled in the box `[−(R+r), R+r]² × [−r, r]`.
pub fn tube_volume_mc(big_r: f64, r: f64, samples: u64, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    if r == 0.0 {
        return Ok(Estimate {
            value: 0.0,
            std_error: 0.0,
            half_width: 0.0,
            samples,
            seed,
        });
    }
    let core = Circle3::horizontal([0.0; 3], big_r)?;
    let w = big_r + r;
    let t = tally(samples, seed, |rng| {
        let x = [
            rng.random_range(-w..w),
            rng.random_range(-w..w),
            rng.random_range(-r..r),
        ];
        if point_to_circle_distance(&x, &core) <= r {
            Draw::Hit
        } else {
            Draw::Miss
        }
    });
    let box_volume = (2.0 * w) * (2.0 * w) * (2.0 * r);
    Ok(Estimate::proportion(&t, seed).scaled(box_volume))
}

/// Monte Carlo volume of one bialy; compare with `2π²`.
pub fn bialy_volume_check(samples: u64, seed: u64) -> Result<Estimate> {
    tube_volume_mc(1.0, 1.0, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{random_orthogonal, apply, UnitVec3};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const C: f64 = SHIFTED_INTERCORE;

    #[test]
    fn intercore_constant() {
        assert_eq!(C, 2.0 + 3f64.sqrt());
        assert!(((C - 2.0).powi(2) + 1.0 - 4.0).abs() < 1e-15);
        assert!((4.0 + sheared_offset().powi(2) - C * C).abs() < 1e-14);
    }

    #[test]
    fn circle_distance_examples() {
        let unit = Circle3::horizontal([0.0; 3], 1.0).unwrap();
        let big = Circle3::horizontal([0.0; 3], 3.0).unwrap();
        assert!((circle_circle_distance(&unit, &big).unwrap() - 2.0).abs() < 1e-12);
        let up = Circle3::horizontal([0.0, 0.0, 1.7], 1.0).unwrap();
        assert!((circle_circle_distance(&unit, &up).unwrap() - 1.7).abs() < 1e-12);
        let shifted = Circle3::horizontal([C, 0.0, 1.0], 1.0).unwrap();
        assert!((circle_circle_distance(&unit, &shifted).unwrap() - 2.0).abs() < 1e-8);
        // closed form √((d−2)² + 1)
        for d in [2.5, 3.0, C - 0.01, C + 0.01, 5.0] {
            let s = Circle3::horizontal([d, 0.0, 1.0], 1.0).unwrap();
            let want = ((d - 2.0) * (d - 2.0) + 1.0f64).sqrt();
            assert!((circle_circle_distance(&unit, &s).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn linked_circles_touch() {
        let a = Circle3::horizontal([0.0; 3], 1.0).unwrap();
        // passes through (1,0,0) on `a`
        let b = Circle3::new([0.5, 0.0, 0.0], UnitVec3::new([0.0, 1.0, 0.0]).unwrap(), 0.5).unwrap();
        assert!(circle_circle_distance(&a, &b).unwrap() < 1e-9);
    }

    #[test]
    fn circle_distance_symmetric_and_rigid() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let mk = |rng: &mut ChaCha8Rng| {
                let c: Vec3 = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
                Circle3::new(c, UnitVec3::random(rng), rng.random_range(0.3..2.0)).unwrap()
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let d = circle_circle_distance(&a, &b).unwrap();
            assert!((d - circle_circle_distance(&b, &a).unwrap()).abs() < 1e-9);
            let rot = random_orthogonal::<3, _>(&mut rng);
            let shift: Vec3 = std::array::from_fn(|_| rng.random_range(-5.0..5.0));
            let mv = |c: &Circle3| {
                let n = UnitVec3::normalize(apply(&rot, c.normal.as_array())).unwrap();
                let p = crate::linalg::add(&apply(&rot, &c.center), &shift);
                Circle3::new(p, n, c.radius).unwrap()
            };
            let dm = circle_circle_distance(&mv(&a), &mv(&b)).unwrap();
            assert!((d - dm).abs() < 1e-9, "{d} vs {dm}");
        }
    }

    #[test]
    fn shifted_distance_is_two_plus_root_three() {
        let d = shifted_intercore_distance().unwrap();
        assert!((d - C).abs() < 1e-9, "{d}");
        let unit = Circle3::horizontal([0.0; 3], 1.0).unwrap();
        let at = |d: f64| {
            circle_circle_distance(&unit, &Circle3::horizontal([d, 0.0, 1.0], 1.0).unwrap()).unwrap()
        };
        assert!(at(C - 0.01) < 2.0);
        assert!(at(C + 0.01) > 2.0);
    }

    #[test]
    fn cell_volumes() {
        let v = |id| paper_lattice(id).cell_volume();
        assert!((v(PaperLattice::Stacked) - 16.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((v(PaperLattice::Checkerboard) - 2.0 * C * C).abs() < 1e-12);
        assert!((v(PaperLattice::Sheared) - 8.0 * sheared_offset()).abs() < 1e-12);
    }

    #[test]
    fn stacked_contacts() {
        let r = verify_nonoverlap(&paper_lattice(PaperLattice::Stacked), None).unwrap();
        assert!(r.certified());
        let mut t: Vec<[i64; 3]> = r.contacts.iter().map(|c| c.translate).collect();
        t.sort();
        assert_eq!(t, vec![[0, 0, 1], [0, 1, 0], [1, -1, 0], [1, 0, 0]]);
        assert!(r.min_gap.abs() < 1e-8);
    }

    #[test]
    fn checkerboard_and_sheared_contacts() {
        for id in [PaperLattice::Checkerboard, PaperLattice::Sheared] {
            let r = verify_nonoverlap(&paper_lattice(id), None).unwrap();
            assert!(r.certified(), "{id}");
            assert!(r.min_gap.abs() < 1e-8, "{id}: {}", r.min_gap);
            assert!(r.contacts.iter().any(|c| c.translate == [0, 1, 0]), "{id}");
            for c in &r.contacts {
                assert!(c.gap.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn overlap_is_rejected() {
        let mut spec = paper_lattice(PaperLattice::Stacked);
        spec.basis[0] = [3.5, 0.0, 0.0];
        let r = verify_nonoverlap(&spec, None).unwrap();
        assert!(r.violations.iter().any(|v| v.translate == [1, 0, 0]));
        let err = spec.certify(None).unwrap_err();
        assert!(matches!(err, Error::Overlap { .. }), "{err}");
        let spec = paper_lattice(PaperLattice::Stacked);
        assert!(verify_nonoverlap(&spec, Some(3.0)).is_err());
    }

    #[test]
    fn analytic_densities() {
        let d = |id| analytic_density(&paper_lattice(id).certify(None).unwrap());
        let two_pi2 = 2.0 * PI * PI;
        assert!((d(PaperLattice::Stacked) - two_pi2 / (16.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!((d(PaperLattice::Stacked) - 0.7122).abs() < 1e-4);
        assert!((d(PaperLattice::Sheared) - 0.7830).abs() < 1e-4);
        assert!((d(PaperLattice::Checkerboard) - two_pi2 / (2.0 * C * C)).abs() < 1e-15);
        assert!(d(PaperLattice::Checkerboard) < d(PaperLattice::Stacked));
        assert!(d(PaperLattice::Stacked) < d(PaperLattice::Sheared));
    }

    #[test]
    fn empty_motif_covers_nothing() {
        let spec = PackingSpec::new(paper_lattice(PaperLattice::Stacked).basis, vec![], 1.0).unwrap();
        let p = spec.certify(None).unwrap();
        assert_eq!(analytic_density(&p), 0.0);
        let r = monte_carlo_density(&p, 1000, 1).unwrap();
        assert_eq!(r.monte_carlo.value, 0.0);
    }

    #[test]
    fn small_balls() {
        let p = paper_lattice(PaperLattice::Stacked).certify(None).unwrap();
        let inside = ball_density(&p, [1.0, 0.0, 0.0], 0.2, 20_000, 3).unwrap();
        assert_eq!(inside.value, 1.0);
        // centroid of a triangle of columns is 2/√3·2 ≈ 2.31 from each axis
        let gap = ball_density(&p, [2.0, 2.0 / 3f64.sqrt(), 0.0], 0.2, 20_000, 3).unwrap();
        assert_eq!(gap.value, 0.0);
        // same hole one period over
        let gap = ball_density(&p, [6.0, 2.0 / 3f64.sqrt(), 8.0], 0.2, 20_000, 3).unwrap();
        assert_eq!(gap.value, 0.0);
        assert!(ball_density(&p, [0.0; 3], 0.0, 10, 1).is_err());
    }

    #[test]
    fn tube_volume_scaling() {
        assert_eq!(tube_volume_mc(1.0, 0.0, 100, 1).unwrap().value, 0.0);
        let v1 = tube_volume_mc(1.0, 1.0, 400_000, 5).unwrap();
        let v2 = tube_volume_mc(2.0, 2.0, 400_000, 6).unwrap();
        let se = (v2.std_error.powi(2) + (8.0 * v1.std_error).powi(2)).sqrt();
        assert!((v2.value - 8.0 * v1.value).abs() < 4.0 * se);
        assert!(v1.z_score(tube_volume(1.0, 1.0)) < 4.0);
    }
}
