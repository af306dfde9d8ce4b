//! Exact-formula primitives on R³, R⁴, S² and S³: geodesic distance,
//! circumradius of three points, the Hopf map and its fibers, and the
//! distance from a point to a round circle.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    any_orthogonal, axpy, cross, dist, dist_sq, dot, norm, normalized, scale, sub, wedge_norm_sq,
    Vec3, Vec4,
};

/// Tolerance on `|x| = 1` accepted when constructing unit vectors.
pub const UNIT_TOL: f64 = 1e-12;

/// Triangles with area below this fraction of the squared longest side are
/// treated as collinear.
pub const COLLINEAR_REL_AREA: f64 = 1e-12;

/// A point of S².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct UnitVec3(Vec3);

/// A point of S³.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct UnitVec4(Vec4);

macro_rules! unit_vec_impl {
    ($ty:ident, $n:literal) => {
        impl $ty {
            /// Accepts `v` only if it is unit length within [`UNIT_TOL`].
            pub fn new(v: [f64; $n]) -> Result<Self> {
                let n = norm(&v);
                if (n - 1.0).abs() > UNIT_TOL || !n.is_finite() {
                    return Err(Error::NotUnit { norm: n });
                }
                Ok(Self(v))
            }

            /// Projects a nonzero vector onto the unit sphere.
            pub fn normalize(v: [f64; $n]) -> Result<Self> {
                normalized(&v)
                    .map(Self)
                    .ok_or(Error::NotUnit { norm: norm(&v) })
            }

            pub fn as_array(&self) -> &[f64; $n] {
                &self.0
            }

            pub fn into_array(self) -> [f64; $n] {
                self.0
            }

            pub fn neg(&self) -> Self {
                Self(scale(&self.0, -1.0))
            }

            /// Geodesic distance to `other`.
            pub fn distance(&self, other: &Self) -> f64 {
                spherical_distance(&self.0, &other.0)
            }

            /// Uniformly distributed random point.
            pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Self(random_unit(rng))
            }
        }

        impl TryFrom<[f64; $n]> for $ty {
            type Error = Error;
            fn try_from(v: [f64; $n]) -> Result<Self> {
                Self::new(v)
            }
        }

        impl From<$ty> for [f64; $n] {
            fn from(v: $ty) -> Self {
                v.0
            }
        }
    };
}

unit_vec_impl!(UnitVec3, 3);
unit_vec_impl!(UnitVec4, 4);

/// Geodesic distance between two points of a unit sphere, in `[0, π]`.
///
/// Equal to `arccos⟨p, q⟩` but evaluated as `2·atan2(|p − q|, |p + q|)`,
/// which keeps full precision for nearly equal and nearly antipodal inputs.
pub fn spherical_distance<const N: usize>(p: &[f64; N], q: &[f64; N]) -> f64 {
    let mut d = 0.0;
    let mut s = 0.0;
    for i in 0..N {
        d += (p[i] - q[i]) * (p[i] - q[i]);
        s += (p[i] + q[i]) * (p[i] + q[i]);
    }
    (2.0 * d.sqrt().atan2(s.sqrt())).clamp(0.0, PI)
}

/// Circumradius of the triangle `a, b, c` in any dimension.
///
/// Returns `f64::INFINITY` for (numerically) collinear triples and an error
/// when two of the points coincide.
pub fn circumradius<const N: usize>(a: &[f64; N], b: &[f64; N], c: &[f64; N]) -> Result<f64> {
    let ab = sub(b, a);
    let ac = sub(c, a);
    let bc = sub(c, b);
    let lab = norm(&ab);
    let lac = norm(&ac);
    let lbc = norm(&bc);
    if lab == 0.0 {
        return Err(Error::CoincidentPoints(0, 1));
    }
    if lac == 0.0 {
        return Err(Error::CoincidentPoints(0, 2));
    }
    if lbc == 0.0 {
        return Err(Error::CoincidentPoints(1, 2));
    }
    Ok(circumradius_from_parts(&ab, &ac, lab, lac, lbc))
}

/// Circumradius given two edge vectors from a common vertex and the three
/// side lengths. Callers guarantee nonzero sides.
#[inline]
pub(crate) fn circumradius_from_parts<const N: usize>(
    ab: &[f64; N],
    ac: &[f64; N],
    lab: f64,
    lac: f64,
    lbc: f64,
) -> f64 {
    // |ab ∧ ac| is twice the triangle area.
    let twice_area = wedge_norm_sq(ab, ac).sqrt();
    let longest = lab.max(lac).max(lbc);
    if 0.5 * twice_area < COLLINEAR_REL_AREA * longest * longest {
        return f64::INFINITY;
    }
    lab * lac * lbc / (2.0 * twice_area)
}

/// Hopf projection S³ → S², reading `p` as the complex pair
/// `(z₁, z₂) = (p₀ + i p₁, p₂ + i p₃)`.
pub fn hopf_project(p: &UnitVec4) -> UnitVec3 {
    UnitVec3(hopf_map(p.as_array()))
}

pub(crate) fn hopf_map(p: &Vec4) -> Vec3 {
    let [a, b, c, d] = *p;
    // z₁·conj(z₂) = (a + ib)(c − id)
    let re = a * c + b * d;
    let im = b * c - a * d;
    [a * a + b * b - c * c - d * d, 2.0 * re, 2.0 * im]
}

/// A great circle of S³, `γ(t) = u·cos t + v·sin t` with `u ⟂ v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreatCircle {
    u: UnitVec4,
    v: UnitVec4,
}

impl GreatCircle {
    pub fn new(u: UnitVec4, v: UnitVec4) -> Result<Self> {
        let inner = dot(u.as_array(), v.as_array());
        if inner.abs() > UNIT_TOL {
            return Err(Error::NotOrthogonal { inner });
        }
        Ok(Self { u, v })
    }

    pub fn u(&self) -> &UnitVec4 {
        &self.u
    }

    pub fn v(&self) -> &UnitVec4 {
        &self.v
    }

    pub fn point(&self, t: f64) -> Vec4 {
        let (s, c) = t.sin_cos();
        axpy(&scale(self.u.as_array(), c), s, self.v.as_array())
    }

    /// `n` equally spaced samples starting at `t = 0`.
    pub fn sample(&self, n: usize) -> Vec<Vec4> {
        (0..n)
            .map(|k| self.point(TAU * k as f64 / n as f64))
            .collect()
    }

    /// Nearest point of the circle to `x`, or `None` when `x` is orthogonal
    /// to the circle's plane (every point is then at distance π/2).
    pub fn closest_point(&self, x: &Vec4) -> Option<Vec4> {
        let cu = dot(x, self.u.as_array());
        let cv = dot(x, self.v.as_array());
        let r = cu.hypot(cv);
        if r < 1e-300 {
            return None;
        }
        Some(axpy(
            &scale(self.u.as_array(), cu / r),
            cv / r,
            self.v.as_array(),
        ))
    }
}

/// The Hopf fiber over `q`: every point of it projects to `q`.
///
/// The fiber through `(z₁, z₂)` is `{(e^{it}z₁, e^{it}z₂)}`, so `v = i·u`.
pub fn hopf_fiber(q: &UnitVec3) -> GreatCircle {
    let [q0, q1, q2] = *q.as_array();
    // z₁ z̄₂ = (q1 + i q2)/2, |z₁|² = (1 + q0)/2, |z₂|² = (1 − q0)/2
    let (z1, z2) = if q0 >= 0.0 {
        let r1 = ((1.0 + q0) / 2.0).sqrt();
        // z₂ = conj(w)/z₁ with z₁ real
        ((r1, 0.0), (q1 / (2.0 * r1), -q2 / (2.0 * r1)))
    } else {
        let r2 = ((1.0 - q0) / 2.0).sqrt();
        // z₁ = w / z̄₂ with z₂ real
        ((q1 / (2.0 * r2), q2 / (2.0 * r2)), (r2, 0.0))
    };
    let u = [z1.0, z1.1, z2.0, z2.1];
    let v = [-z1.1, z1.0, -z2.1, z2.0];
    // Renormalise to absorb rounding in the square roots.
    let u = normalized(&u).expect("fiber frame is nonzero");
    let v = normalized(&v).expect("fiber frame is nonzero");
    GreatCircle {
        u: UnitVec4(u),
        v: UnitVec4(v),
    }
}

/// Geodesic distance between two great circles of S³.
///
/// Coarse 64×64 grid over both parameters, then alternating nearest-point
/// projection from the best cell until the iterates move less than 1e−12.
pub fn fiber_distance(a: &GreatCircle, b: &GreatCircle) -> f64 {
    const GRID: usize = 64;
    let pa = a.sample(GRID);
    let pb = b.sample(GRID);
    let mut best = (f64::INFINITY, 0, 0);
    for (i, x) in pa.iter().enumerate() {
        for (j, y) in pb.iter().enumerate() {
            let d = dist_sq(x, y);
            if d < best.0 {
                best = (d, i, j);
            }
        }
    }
    let mut x = pa[best.1];
    let mut d = spherical_distance(&x, &pb[best.2]);
    for _ in 0..200 {
        let Some(y) = b.closest_point(&x) else {
            return FRAC_PI_2;
        };
        let Some(x_new) = a.closest_point(&y) else {
            return FRAC_PI_2;
        };
        let d_new = spherical_distance(&x_new, &y);
        let moved = dist(&x_new, &x);
        x = x_new;
        d = d.min(d_new);
        if moved < 1e-12 {
            break;
        }
    }
    d
}

/// A round circle in R³.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle3 {
    pub center: Vec3,
    pub normal: UnitVec3,
    pub radius: f64,
}

impl Circle3 {
    pub fn new(center: Vec3, normal: UnitVec3, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::BadRadius(radius));
        }
        Ok(Self {
            center,
            normal,
            radius,
        })
    }

    /// Circle in a horizontal plane (normal +z).
    pub fn horizontal(center: Vec3, radius: f64) -> Result<Self> {
        Self::new(center, UnitVec3([0.0, 0.0, 1.0]), radius)
    }

    /// Orthonormal in-plane frame `(e₁, e₂)` with `e₁ × e₂ = normal`.
    pub fn frame(&self) -> (Vec3, Vec3) {
        let n = self.normal.as_array();
        let e1 = any_orthogonal(n);
        let e2 = cross(n, &e1);
        (e1, e2)
    }

    pub fn point(&self, theta: f64) -> Vec3 {
        let (e1, e2) = self.frame();
        let (s, c) = theta.sin_cos();
        let mut p = self.center;
        for i in 0..3 {
            p[i] += self.radius * (c * e1[i] + s * e2[i]);
        }
        p
    }

    pub fn translated(&self, t: &Vec3) -> Self {
        Self {
            center: crate::linalg::add(&self.center, t),
            ..*self
        }
    }

    /// Splits `x − center` into axial height and in-plane radial vector.
    fn decompose(&self, x: &Vec3) -> (f64, Vec3) {
        let w = sub(x, &self.center);
        let n = self.normal.as_array();
        let h = dot(&w, n);
        (h, axpy(&w, -h, n))
    }

    /// Nearest point of the circle to `x`. On the axis every point is
    /// nearest; the point at angle zero is returned.
    pub fn closest_point(&self, x: &Vec3) -> Vec3 {
        let (_, radial) = self.decompose(x);
        let dir = normalized(&radial).unwrap_or_else(|| self.frame().0);
        axpy(&self.center, self.radius, &dir)
    }
}

/// Exact distance from `x` to the circle `c`.
pub fn point_to_circle_distance(x: &Vec3, c: &Circle3) -> f64 {
    let (h, radial) = c.decompose(x);
    let rho = norm(&radial);
    // rho = 0 reduces to sqrt(radius² + h²)
    (rho - c.radius).hypot(h)
}

/// Uniform random point on the unit sphere in R^N (rejection from the cube).
pub fn random_unit<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n2 = dot(&v, &v);
        if n2 > 1e-6 && n2 <= 1.0 {
            return scale(&v, 1.0 / n2.sqrt());
        }
    }
}

/// Random orthogonal matrix (rows orthonormal) by Gram–Schmidt.
pub fn random_orthogonal<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [[f64; N]; N] {
    let mut rows = [[0.0; N]; N];
    let mut k = 0;
    while k < N {
        let mut v: [f64; N] = random_unit(rng);
        for r in rows.iter().take(k) {
            let c = dot(&v, r);
            v = axpy(&v, -c, r);
        }
        if let Some(v) = normalized(&v) {
            if norm(&v) > 0.5 {
                rows[k] = v;
                k += 1;
            }
        }
    }
    rows
}

/// Applies a row-major matrix to a vector.
pub fn apply<const N: usize>(m: &[[f64; N]; N], v: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| dot(&m[i], v))
}
