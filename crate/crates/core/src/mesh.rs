//! Triangle meshes of tube surfaces, written as Wavefront OBJ.

use std::collections::HashSet;
use std::f64::consts::{PI, TAU};
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curves::{euclidean_thickness, DiscreteCurve, DiscreteLink};
use crate::error::{Error, Result};
use crate::geom::{point_to_circle_distance, random_unit, Circle3};
use crate::lattice::CertifiedPacking;
use crate::linalg::{any_orthogonal, axpy, cross, dot, normalized, scale, sub, Vec3, Vec4};

/// Default number of vertices around a tube.
pub const DEFAULT_SIDES: usize = 32;
/// Default number of rings along a circle.
pub const DEFAULT_SEGMENTS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    /// `V − E + F`
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = HashSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }
}

/// Surface of radius `radius` around a closed polyline, with `sides`
/// vertices per ring.
///
/// Ring frames come from parallel transport along the curve; the twist left
/// over after one loop is spread evenly so the last ring lines up with the
/// first.
pub fn tube_mesh(points: &[Vec3], radius: f64, sides: usize) -> Result<Mesh> {
    let n = points.len();
    if n < 3 || sides < 3 {
        return Err(Error::InvalidArgument(format!(
            "tube needs at least 3 rings and 3 sides (got {n}, {sides})"
        )));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::BadRadius(radius));
    }
    let tangents: Vec<Vec3> = (0..n)
        .map(|i| {
            let d = sub(&points[(i + 1) % n], &points[(i + n - 1) % n]);
            normalized(&d).ok_or(Error::CoincidentPoints((i + n - 1) % n, (i + 1) % n))
        })
        .collect::<Result<_>>()?;
    let transport = |nrm: &Vec3, t: &Vec3| normalized(&axpy(nrm, -dot(nrm, t), t));
    let mut normals = Vec::with_capacity(n);
    let mut nrm = any_orthogonal(&tangents[0]);
    normals.push(nrm);
    for t in &tangents[1..] {
        nrm = transport(&nrm, t).unwrap_or_else(|| any_orthogonal(t));
        normals.push(nrm);
    }
    let t0 = &tangents[0];
    let back = transport(&nrm, t0).unwrap_or(normals[0]);
    let twist = dot(&cross(&normals[0], &back), t0).atan2(dot(&normals[0], &back));

    let mut mesh = Mesh::default();
    for i in 0..n {
        let t = &tangents[i];
        let (c, s) = (-twist * i as f64 / n as f64).sin_cos();
        let (s, c) = (c, s);
        let b0 = cross(t, &normals[i]);
        let nrm = axpy(&scale(&normals[i], c), s, &b0);
        let bin = cross(t, &nrm);
        for j in 0..sides {
            let (sj, cj) = (TAU * j as f64 / sides as f64).sin_cos();
            let off = axpy(&scale(&nrm, radius * cj), radius * sj, &bin);
            mesh.vertices.push(axpy(&points[i], 1.0, &off));
        }
    }
    for i in 0..n {
        let i2 = (i + 1) % n;
        for j in 0..sides {
            let j2 = (j + 1) % sides;
            let (a, b, c, d) = (i * sides + j, i2 * sides + j, i2 * sides + j2, i * sides + j2);
            mesh.triangles.push([a, b, c]);
            mesh.triangles.push([a, c, d]);
        }
    }
    Ok(mesh)
}

/// Adds points so each closed polyline has at least `target` vertices,
/// subdividing every edge equally.
pub fn refine_closed(points: &[Vec3], target: usize) -> Vec<Vec3> {
    let n = points.len();
    let k = target.div_ceil(n.max(1)).max(1);
    let mut out = Vec::with_capacity(n * k);
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        for s in 0..k {
            let f = s as f64 / k as f64;
            out.push(std::array::from_fn(|d| a[d] + f * (b[d] - a[d])));
        }
    }
    out
}

pub fn torus_mesh(core: &Circle3, tube_radius: f64, segments: usize, sides: usize) -> Result<Mesh> {
    let pts: Vec<Vec3> = (0..segments)
        .map(|k| core.point(TAU * k as f64 / segments as f64))
        .collect();
    tube_mesh(&pts, tube_radius, sides)
}

/// One torus per motif core over translates `n ∈ {0..block}³`.
pub fn packing_meshes(
    p: &CertifiedPacking,
    block: usize,
    segments: usize,
    sides: usize,
) -> Result<(Vec<Circle3>, Vec<Mesh>)> {
    let spec = p.spec();
    let mut cores = Vec::new();
    let b = block as i64;
    for i in 0..b {
        for j in 0..b {
            for k in 0..b {
                let t = spec.translate([i, j, k]);
                cores.extend(spec.motif.iter().map(|c| c.translated(&t)));
            }
        }
    }
    let meshes = cores
        .iter()
        .map(|c| torus_mesh(c, spec.tube_radius, segments, sides))
        .collect::<Result<_>>()?;
    Ok((cores, meshes))
}

/// Largest depth by which a vertex of one torus sits inside another's solid
/// tube; positive means interpenetration.
pub fn max_vertex_penetration(cores: &[Circle3], meshes: &[Mesh], tube_radius: f64) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for (i, m) in meshes.iter().enumerate() {
        for (j, c) in cores.iter().enumerate() {
            if i == j {
                continue;
            }
            for v in &m.vertices {
                worst = worst.max(tube_radius - point_to_circle_distance(v, c));
            }
        }
    }
    worst
}

/// Writes one OBJ object per mesh.
pub fn write_obj<W: Write>(mut w: W, meshes: &[Mesh], names: &[String]) -> Result<()> {
    let mut base = 1;
    for (k, m) in meshes.iter().enumerate() {
        match names.get(k) {
            Some(name) => writeln!(w, "o {name}")?,
            None => writeln!(w, "o tube{k}")?,
        }
        for v in &m.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
        for t in &m.triangles {
            writeln!(w, "f {} {} {}", t[0] + base, t[1] + base, t[2] + base)?;
        }
        base += m.vertices.len();
    }
    Ok(())
}

/// Stereographic projection from `pole`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stereographic {
    pole: Vec4,
    frame: [Vec4; 3],
}

impl Stereographic {
    pub fn new(pole: Vec4) -> Result<Self> {
        let pole = normalized(&pole).ok_or(Error::InvalidArgument("zero pole".into()))?;
        let mut frame: Vec<Vec4> = Vec::with_capacity(3);
        for e in 0..4 {
            let mut v = [0.0; 4];
            v[e] = 1.0;
            v = axpy(&v, -dot(&v, &pole), &pole);
            for f in &frame {
                v = axpy(&v, -dot(&v, f), f);
            }
            if let Some(u) = normalized(&v).filter(|_| dot(&v, &v) > 1e-6) {
                frame.push(u);
            }
            if frame.len() == 3 {
                break;
            }
        }
        Ok(Self {
            pole,
            frame: [frame[0], frame[1], frame[2]],
        })
    }

    /// Pole farthest from every sample among a fixed set of candidates.
    pub fn avoiding(link: &DiscreteLink) -> Result<Self> {
        let pts: Vec<&Vec4> = link
            .components()
            .iter()
            .flat_map(|c| c.spherical_points().unwrap_or(&[]))
            .collect();
        if pts.is_empty() {
            return Err(Error::AmbientMismatch {
                expected: "s3",
                got: link.ambient().name(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x57e4e0);
        let clearance = |p: &Vec4| {
            pts.iter()
                .map(|x| crate::linalg::dist(p, x))
                .fold(f64::INFINITY, f64::min)
        };
        let mut best = ([0.0, 0.0, 0.0, 1.0], f64::NEG_INFINITY);
        for _ in 0..512 {
            let p: Vec4 = random_unit(&mut rng);
            let c = clearance(&p);
            if c > best.1 {
                best = (p, c);
            }
        }
        Self::new(best.0)
    }

    pub fn pole(&self) -> &Vec4 {
        &self.pole
    }

    pub fn project(&self, x: &Vec4) -> Vec3 {
        let h = 1.0 - dot(x, &self.pole);
        std::array::from_fn(|k| dot(x, &self.frame[k]) / h)
    }

    pub fn project_link(&self, link: &DiscreteLink) -> Result<DiscreteLink> {
        let comps = link
            .components()
            .iter()
            .map(|c| {
                let pts = c.spherical_points().ok_or(Error::AmbientMismatch {
                    expected: "s3",
                    got: c.ambient().name(),
                })?;
                DiscreteCurve::euclidean(pts.iter().map(|x| self.project(x)).collect())
            })
            .collect::<Result<_>>()?;
        DiscreteLink::new(comps)
    }
}

/// Tube meshes around every component of a link. Spherical links are
/// projected stereographically first. Without `radius`, tubes get the
/// Euclidean thickness for R³ links and half of it for projected ones.
pub fn link_meshes(link: &DiscreteLink, radius: Option<f64>, segments: usize, sides: usize) -> Result<Vec<Mesh>> {
    let (link, factor) = match link.ambient() {
        crate::curves::Ambient::Euclidean => (link.clone(), 1.0),
        crate::curves::Ambient::Spherical => {
            (Stereographic::avoiding(link)?.project_link(link)?, 0.5)
        }
    };
    let radius = match radius {
        Some(r) => r,
        None => factor * euclidean_thickness(&link)?,
    };
    link.components()
        .iter()
        .map(|c| {
            let pts = refine_closed(c.euclidean_points().expect("projected to R³"), segments);
            tube_mesh(&pts, radius, sides)
        })
        .collect()
}

/// Gauss linking number of two closed polylines, summing exact solid
/// angles over segment pairs.
pub fn linking_number(a: &[Vec3], b: &[Vec3]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (p1, p2) = (&a[i], &a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (p3, p4) = (&b[j], &b[(j + 1) % b.len()]);
            let r13 = sub(p3, p1);
            let r14 = sub(p4, p1);
            let r23 = sub(p3, p2);
            let r24 = sub(p4, p2);
            let ns = [cross(&r13, &r14), cross(&r14, &r24), cross(&r24, &r23), cross(&r23, &r13)];
            let Some(ns) = ns.iter().map(normalized).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let omega: f64 = (0..4)
                .map(|k| dot(&ns[k], &ns[(k + 1) % 4]).clamp(-1.0, 1.0).asin())
                .sum();
            let triple = dot(&cross(&sub(p4, p3), &sub(p2, p1)), &r13);
            if triple == 0.0 {
                continue;
            }
            total += triple.signum() * omega;
        }
    }
    total / (4.0 * PI)
}
