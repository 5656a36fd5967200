//! Marked polygons in the complex plane and the geometric predicates used
//! throughout the crate.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{self, SpectralCoefficients};

/// An oriented, marked n-gon `(z_1, ..., z_n)`, `n >= 3`.
///
/// No simplicity, convexity or nondegeneracy is imposed: star polygons,
/// multiply traced polygons and polygons with repeated vertices are all
/// valid values. Vertex order is never normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson {
    n: usize,
    vertices: Vec<[f64; 2]>,
}

impl TryFrom<PolygonJson> for Polygon {
    type Error = Error;

    fn try_from(raw: PolygonJson) -> Result<Self> {
        if raw.n != raw.vertices.len() {
            return Err(Error::InvalidArgument(format!(
                "declared n = {} but {} vertices given",
                raw.n,
                raw.vertices.len()
            )));
        }
        Polygon::new(
            raw.vertices
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<Polygon> for PolygonJson {
    fn from(p: Polygon) -> Self {
        PolygonJson {
            n: p.n(),
            vertices: p.vertices.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// Which way a shifted copy of a polygon is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Same,
    Reversed,
}

/// `P = scale_ell * Q^{(shift_k)}` (same orientation) or
/// `P = scale_ell * Qbar^{(shift_k)}` (reversed), up to translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityWitness {
    pub shift_k: usize,
    pub orientation: Orientation,
    pub scale_ell: Complex64,
}

impl SimilarityWitness {
    /// The polygon `scale_ell * shift(Q)`.
    pub fn apply(&self, q: &Polygon) -> Result<Polygon> {
        let shifted = match self.orientation {
            Orientation::Same => q.cyclic_shift(self.shift_k)?,
            Orientation::Reversed => q.reversed_shift(self.shift_k)?,
        };
        Ok(&shifted * self.scale_ell)
    }
}

/// Degenerate features of a polygon. All indices are 1-based; side `i` joins
/// `z_i` to `z_{i+1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub zero_side_indices: Vec<usize>,
    /// Vertices where the boundary goes straight on (interior angle π).
    pub pi_angle_indices: Vec<usize>,
    /// Vertices where the boundary folds back on itself (interior angle 2π).
    pub two_pi_angle_indices: Vec<usize>,
    /// Sides whose endpoints are bitwise identical.
    pub coincident_consecutive: Vec<usize>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.zero_side_indices.is_empty()
            && self.pi_angle_indices.is_empty()
            && self.two_pi_angle_indices.is_empty()
            && self.coincident_consecutive.is_empty()
    }
}

#[inline]
pub(crate) fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segment_distance(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> f64 {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    let proper = ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
    if proper {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        Ok(Polygon { vertices })
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| Complex64::new(x, y)).collect())
    }

    /// The polygon with every vertex at `c`.
    pub fn constant(n: usize, c: Complex64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Vertex `z_i`, 1-based and taken modulo `n`.
    pub fn vertex(&self, i: usize) -> Complex64 {
        let n = self.n();
        self.vertices[(i + n - 1) % n]
    }

    pub fn into_vertices(self) -> Vec<Complex64> {
        self.vertices
    }

    pub fn map(&self, f: impl FnMut(&Complex64) -> Complex64) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(f).collect(),
        }
    }

    pub fn translate(&self, c: Complex64) -> Polygon {
        self.map(|z| z + c)
    }

    /// Largest vertex modulus.
    pub fn max_modulus(&self) -> f64 {
        self.vertices.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest vertex-wise distance to `other`.
    pub fn max_distance(&self, other: &Polygon) -> f64 {
        assert_eq!(self.n(), other.n(), "vertex counts differ");
        self.vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max((v[i] - v[j]).norm());
            }
        }
        best
    }

    /// Shoelace signed area; positive for counterclockwise traversal.
    pub fn signed_area(&self) -> f64 {
        let n = self.n();
        let c = self.centroid();
        (0..n)
            .map(|i| cross(self.vertices[i] - c, self.vertices[(i + 1) % n] - c))
            .sum::<f64>()
            / 2.0
    }

    pub fn centroid(&self) -> Complex64 {
        self.vertices.iter().sum::<Complex64>() / self.n() as f64
    }

    /// Translate so the centroid sits at the origin.
    pub fn center(&self) -> Polygon {
        let c = self.centroid();
        if c == Complex64::new(0.0, 0.0) {
            return self.clone();
        }
        self.translate(-c)
    }

    /// `Q^{(k)} = (w_k, w_{k+1}, ..., w_{k-1})` for `1 <= k <= n`.
    pub fn cyclic_shift(&self, k: usize) -> Result<Polygon> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        Ok(Polygon {
            vertices: (0..n).map(|m| self.vertices[(k - 1 + m) % n]).collect(),
        })
    }

    /// `Qbar^{(k)} = (w_k, w_{k-1}, ..., w_{k+1})` for `1 <= k <= n`.
    pub fn reversed_shift(&self, k: usize) -> Result<Polygon> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
        Ok(Polygon {
            vertices: (0..n).map(|m| self.vertices[(k - 1 + n - m) % n]).collect(),
        })
    }

    /// Zero sides and straight or folded angles. `tol` bounds side lengths
    /// (absolute) and turning angles (radians). Angles are only inspected at
    /// vertices whose two sides are both longer than `tol`.
    pub fn degeneracy(&self, tol: f64) -> DegeneracyReport {
        let n = self.n();
        let v = &self.vertices;
        let side = |i: usize| v[(i + 1) % n] - v[i];
        let mut report = DegeneracyReport::default();
        for i in 0..n {
            if side(i).norm() <= tol {
                report.zero_side_indices.push(i + 1);
            }
            if v[i] == v[(i + 1) % n] {
                report.coincident_consecutive.push(i + 1);
            }
        }
        for i in 0..n {
            let incoming = side((i + n - 1) % n);
            let outgoing = side(i);
            if incoming.norm() <= tol || outgoing.norm() <= tol {
                continue;
            }
            let turn = (outgoing / incoming).arg().abs();
            if turn <= tol {
                report.pi_angle_indices.push(i + 1);
            } else if std::f64::consts::PI - turn <= tol {
                report.two_pi_angle_indices.push(i + 1);
            }
        }
        report
    }

    /// No two non-adjacent sides meet and no vertex touches a side it does
    /// not belong to. Distances are compared against `tol * diameter`.
    pub fn is_simple(&self, tol: f64) -> bool {
        let n = self.n();
        let v = &self.vertices;
        let eps = tol * self.diameter();
        if self.diameter() == 0.0 {
            return false;
        }
        let (a, b) = (|i: usize| v[i], |i: usize| v[(i + 1) % n]);
        for (i, &vi) in v.iter().enumerate() {
            // vertex i is incident to sides i-1 and i
            for e in 0..n {
                if e == i || (e + 1) % n == i {
                    continue;
                }
                if point_segment_distance(vi, a(e), b(e)) <= eps {
                    return false;
                }
            }
        }
        for e in 0..n {
            for f in e + 1..n {
                let adjacent = f == e + 1 || (e == 0 && f == n - 1);
                if adjacent {
                    continue;
                }
                if segment_distance(a(e), b(e), a(f), b(f)) <= eps {
                    return false;
                }
            }
        }
        true
    }

    /// Strictly convex in either orientation: every turn has the same sign,
    /// with `|sin(turning angle)| > tol`, and the polygon is simple.
    pub fn is_convex(&self, tol: f64) -> bool {
        let n = self.n();
        let v = &self.vertices;
        let mut sign = 0.0f64;
        for i in 0..n {
            let incoming = v[i] - v[(i + n - 1) % n];
            let outgoing = v[(i + 1) % n] - v[i];
            let scale = incoming.norm() * outgoing.norm();
            if scale == 0.0 {
                return false;
            }
            let s = cross(incoming, outgoing) / scale;
            if s.abs() <= tol {
                return false;
            }
            if sign == 0.0 {
                sign = s.signum();
            } else if s.signum() != sign {
                return false;
            }
        }
        self.is_simple(tol)
    }

    /// Eigenbasis coefficients; see [`spectral::decompose`].
    pub fn spectrum(&self) -> SpectralCoefficients {
        spectral::decompose(self)
    }
}

impl Mul<Complex64> for &Polygon {
    type Output = Polygon;

    fn mul(self, ell: Complex64) -> Polygon {
        self.map(|z| z * ell)
    }
}

impl Mul<f64> for &Polygon {
    type Output = Polygon;

    fn mul(self, t: f64) -> Polygon {
        self.map(|z| z * t)
    }
}

/// Vertex-wise sum. Panics if the vertex counts differ.
impl Add for &Polygon {
    type Output = Polygon;

    fn add(self, other: &Polygon) -> Polygon {
        assert_eq!(self.n(), other.n(), "vertex counts differ");
        Polygon {
            vertices: self
                .vertices
                .iter()
                .zip(&other.vertices)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Vertex-wise difference. Panics if the vertex counts differ.
impl Sub for &Polygon {
    type Output = Polygon;

    fn sub(self, other: &Polygon) -> Polygon {
        assert_eq!(self.n(), other.n(), "vertex counts differ");
        Polygon {
            vertices: self
                .vertices
                .iter()
                .zip(&other.vertices)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Scale `ell` with `b_i = ell * a_i` for `i = 1..n-1`, if the residual is
/// within `tol` relative to the coefficient scale.
pub(crate) fn proportional(b: &[Complex64], a: &[Complex64], tol: f64) -> Option<Complex64> {
    let (pivot, a_max) = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i, c.norm()))
        .fold(
            (0, 0.0),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
    if a_max == 0.0 {
        return None;
    }
    let ell = b[pivot] / a[pivot];
    let b_max = b.iter().skip(1).map(|c| c.norm()).fold(0.0, f64::max);
    let scale = b_max.max(ell.norm() * a_max);
    if scale == 0.0 || ell.norm() == 0.0 {
        return None;
    }
    let residual = b
        .iter()
        .zip(a)
        .skip(1)
        .map(|(bi, ai)| (bi - ell * ai).norm())
        .fold(0.0, f64::max);
    (residual <= tol * scale).then_some(ell)
}

fn check_pair(p: &Polygon, q: &Polygon) -> Result<(SpectralCoefficients, SpectralCoefficients)> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch(p.n(), q.n()));
    }
    let a = spectral::decompose(q);
    if a.is_point() {
        return Err(Error::PointPolygon);
    }
    Ok((spectral::decompose(p), a))
}

/// The nonzero scale `ell` with `P = ell * Q` on the shape coefficients
/// `1..n-1` (translation is ignored), if one exists within relative `tol`.
pub fn star_similar(p: &Polygon, q: &Polygon, tol: f64) -> Result<Option<Complex64>> {
    let (b, a) = check_pair(p, q)?;
    if b.is_point() {
        return Ok(None);
    }
    Ok(proportional(b.coeffs(), a.coeffs(), tol))
}

/// Searches all `2n` shifts of `Q` in both orientations, smallest `k` first
/// and same orientation before reversed, for one `*`-similar to `P`.
pub fn similar(p: &Polygon, q: &Polygon, tol: f64) -> Result<Option<SimilarityWitness>> {
    let (b, a) = check_pair(p, q)?;
    if b.is_point() {
        return Ok(None);
    }
    for k in 1..=q.n() {
        for orientation in [Orientation::Same, Orientation::Reversed] {
            let shifted = match orientation {
                Orientation::Same => a.shifted(k),
                Orientation::Reversed => a.reversed(k),
            };
            if let Some(scale_ell) = proportional(b.coeffs(), shifted.coeffs(), tol) {
                return Ok(Some(SimilarityWitness {
                    shift_k: k,
                    orientation,
                    scale_ell,
                }));
            }
        }
    }
    Ok(None)
}
