//! Packings of revolution.
//!
//! Unit disks are packed hexagonally in the half-plane `{(z, ρ) : ρ ≥ 0}`,
//! with the first row tangent to the axis `ρ = 0`, and the half-plane is
//! revolved about that axis. Each disk sweeps out a solid unit tube around
//! a horizontal circle of radius `ρ` (its center height), and each Voronoi
//! cell sweeps out the region that tube owns. Pappus' theorem gives both
//! volumes from areas and centroid heights.
//!
//! Row `k` has centers at height `1 + (k−1)√3` and axial positions
//! `z ≡ k−1 (mod 2)`, so one axial period of length 2 holds one disk per
//! row.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{point_to_circle_distance, Circle3};
use crate::montecarlo::{tally, Draw, Estimate};
use crate::s2_packing::HEX_DENSITY;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Height of the disk centers in `row` (1-based).
pub fn disk_center_height(row: usize) -> f64 {
    1.0 + (row as f64 - 1.0) * SQRT3
}

/// The half-plane Voronoi cell of one disk, coordinates `[z, ρ]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RevolvedCell {
    pub row: usize,
    /// Counterclockwise vertices.
    pub region: Vec<[f64; 2]>,
    pub disk_center_height: f64,
}

impl RevolvedCell {
    /// Cell of the disk centered at `z = 0` in `row`.
    pub fn new(row: usize) -> Result<Self> {
        if row == 0 {
            return Err(Error::InvalidArgument("rows are numbered from 1".into()));
        }
        let h = disk_center_height(row);
        let t = 1.0 / SQRT3;
        let region = if row == 1 {
            // Axis below, neighbours at z = ±2, row-2 disks at z = ±1.
            vec![[-1.0, 0.0], [1.0, 0.0], [1.0, h + t], [0.0, h + 2.0 * t], [-1.0, h + t]]
        } else {
            vec![
                [0.0, h - 2.0 * t],
                [1.0, h - t],
                [1.0, h + t],
                [0.0, h + 2.0 * t],
                [-1.0, h + t],
                [-1.0, h - t],
            ]
        };
        Ok(Self {
            row,
            region,
            disk_center_height: h,
        })
    }

    /// `(area, ∫ρ dA)` by the shoelace formula.
    pub fn area_and_moment(&self) -> (f64, f64) {
        let n = self.region.len();
        let (mut area, mut moment) = (0.0, 0.0);
        for i in 0..n {
            let [z0, r0] = self.region[i];
            let [z1, r1] = self.region[(i + 1) % n];
            let cross = z0 * r1 - z1 * r0;
            area += cross;
            moment += cross * (r0 + r1);
        }
        (0.5 * area, moment / 6.0)
    }

    pub fn centroid_height(&self) -> f64 {
        let (a, m) = self.area_and_moment();
        m / a
    }

    /// Volume swept by the cell, `2π·ȳ·A`.
    pub fn volume(&self) -> f64 {
        2.0 * PI * self.area_and_moment().1
    }

    /// Volume of the unit tube, `2π²·R`.
    pub fn tube_volume(&self) -> f64 {
        2.0 * PI * PI * self.disk_center_height
    }
}

/// Row-1 cell area `2 + √3` and moment, from the rectangle
/// `[−1,1] × [0, 1+1/√3]` plus the triangle above it.
fn first_row_area_and_moment() -> (f64, f64) {
    let s = 1.0 / SQRT3;
    let rect_h = 1.0 + s;
    let rect = (2.0 * rect_h, rect_h * rect_h);
    let tri_area = s;
    let tri = (tri_area, tri_area * (rect_h + s / 3.0));
    (rect.0 + tri.0, rect.1 + tri.1)
}

/// Tube volume over cell volume for one row.
///
/// Rows beyond the first give `π/√12` exactly, since their hexagonal cells
/// have their centroid at the disk center.
pub fn cell_density(row: usize) -> Result<f64> {
    match row {
        0 => Err(Error::InvalidArgument("rows are numbered from 1".into())),
        // 2π²·1 / (2π·moment)
        1 => Ok(PI / first_row_area_and_moment().1),
        _ => Ok(HEX_DENSITY),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub row: usize,
    pub cell_density: f64,
    /// Tube volume over cell volume for rows `1..=row`.
    pub cumulative: f64,
}

pub fn revolved_density_profile(rows: usize) -> Result<Vec<ProfileRow>> {
    if rows == 0 {
        return Err(Error::InvalidArgument("need at least one row".into()));
    }
    let (mut tubes, mut cells) = (0.0, 0.0);
    (1..=rows)
        .map(|row| {
            let cell = RevolvedCell::new(row)?;
            tubes += cell.tube_volume();
            cells += if row == 1 {
                2.0 * PI * first_row_area_and_moment().1
            } else {
                2.0 * PI * cell.disk_center_height * 2.0 * SQRT3
            };
            Ok(ProfileRow {
                row,
                cell_density: cell_density(row)?,
                cumulative: tubes / cells,
            })
        })
        .collect()
}

/// Row and axial position of the disk center nearest to `(z, ρ)`.
fn nearest_center(z: f64, rho: f64) -> (usize, f64, f64) {
    let guess = ((rho - 1.0) / SQRT3).round().max(0.0) as usize + 1;
    let mut best = (0, 0.0, f64::INFINITY);
    for row in guess.saturating_sub(1).max(1)..=guess + 1 {
        let off = ((row - 1) % 2) as f64;
        let zc = 2.0 * ((z - off) / 2.0).round() + off;
        let d = (z - zc).hypot(rho - disk_center_height(row));
        if d < best.2 {
            best = (row, zc, d);
        }
    }
    best
}

/// Uniform sampler over one axial period of the solid of revolution of the
/// first `rows` rows. Calls `f(row, zc, x)` for points inside it.
fn sample_rows<F>(rows: usize, samples: u64, seed: u64, f: F) -> Result<Estimate>
where
    F: Fn(usize, f64, [f64; 3]) -> bool + Sync,
{
    if rows == 0 {
        return Err(Error::InvalidArgument("need at least one row".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let top = disk_center_height(rows) + 2.0 / SQRT3;
    let t = tally(samples, seed, |rng| {
        let x = [
            rng.random_range(-top..top),
            rng.random_range(-top..top),
            rng.random_range(-1.0..1.0),
        ];
        let (row, zc, _) = nearest_center(x[2], x[0].hypot(x[1]));
        if row > rows {
            Draw::Outside
        } else if f(row, zc, x) {
            Draw::Hit
        } else {
            Draw::Miss
        }
    });
    Ok(Estimate::proportion(&t, seed))
}

/// Monte Carlo covered fraction of the region swept by the first `rows`
/// cells; compare with the profile's cumulative density.
pub fn revolved_mc_check(rows: usize, samples: u64, seed: u64) -> Result<Estimate> {
    sample_rows(rows, samples, seed, |row, zc, x| {
        let core = Circle3::horizontal([0.0, 0.0, zc], disk_center_height(row))
            .expect("positive radius");
        point_to_circle_distance(&x, &core) <= 1.0
    })
}

/// Monte Carlo volume swept by the cell of `row`, for comparison with
/// [`RevolvedCell::volume`].
pub fn revolved_cell_volume_mc(row: usize, samples: u64, seed: u64) -> Result<Estimate> {
    if row == 0 {
        return Err(Error::InvalidArgument("rows are numbered from 1".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let top = disk_center_height(row) + 2.0 / SQRT3;
    let t = tally(samples, seed, |rng| {
        let x: [f64; 3] = [
            rng.random_range(-top..top),
            rng.random_range(-top..top),
            rng.random_range(-1.0..1.0),
        ];
        if nearest_center(x[2], x[0].hypot(x[1])).0 == row {
            Draw::Hit
        } else {
            Draw::Miss
        }
    });
    Ok(Estimate::proportion(&t, seed).scaled(8.0 * top * top))
}
