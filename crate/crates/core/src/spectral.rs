//! Eigenpolygon basis of the developing map and the projective shape space.
//!
//! With `q = exp(2πi/n)` the eigenpolygons are `X_i = (1, q^i, ..., q^{(n-1)i})`
//! and every polygon is `z_k = Σ_i a_i q^{(k-1)i}`. The coefficients are
//! recovered by the plain DFT `a_i = (1/n) Σ_k z_k q^{-(k-1)i}`, evaluated
//! directly in O(n²).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygon::Polygon;

/// Relative size below which the shape coefficients `a_1..a_{n-1}` are
/// indistinguishable from round-off on the centroid term.
const POINT_RTOL: f64 = 1e-13;

/// `q^m` for `q = exp(2πi/n)`. Quarter turns come out exact.
pub fn root_of_unity(n: usize, m: i64) -> Complex64 {
    let n_i = n as i64;
    let r = m.rem_euclid(n_i);
    if (4 * r) % n_i == 0 {
        return match 4 * r / n_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

/// `q^x = exp(2πi x / n)` for a real exponent, e.g. `q^{j(k+3/2)}`.
pub fn q_pow(n: usize, x: f64) -> Complex64 {
    if x.fract() == 0.0 {
        return root_of_unity(n, x as i64);
    }
    let r = x.rem_euclid(n as f64);
    Complex64::from_polar(1.0, 2.0 * PI * r / n as f64)
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(())
}

fn roots(n: usize) -> Vec<Complex64> {
    (0..n as i64).map(|m| root_of_unity(n, m)).collect()
}

/// Eigenpolygon `X_i`, `0 <= i < n`.
pub fn basis_vector(n: usize, i: usize) -> Result<Polygon> {
    check_index(n, i)?;
    let q = roots(n);
    Polygon::new((0..n).map(|k| q[(k * i) % n]).collect())
}

/// Eigenvalue `(1 + q^i)/2` of the developing map on `X_i`.
pub fn eigenvalue(n: usize, i: usize) -> Result<Complex64> {
    check_index(n, i)?;
    Ok((Complex64::new(1.0, 0.0) + root_of_unity(n, i as i64)) / 2.0)
}

/// Coefficients `a_0..a_{n-1}` of a polygon in the eigenbasis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoeffJson", into = "CoeffJson")]
pub struct SpectralCoefficients {
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    n: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<CoeffJson> for SpectralCoefficients {
    type Error = Error;

    fn try_from(raw: CoeffJson) -> Result<Self> {
        if raw.n != raw.coeffs.len() {
            return Err(Error::InvalidArgument(format!(
                "declared n = {} but {} coefficients given",
                raw.n,
                raw.coeffs.len()
            )));
        }
        SpectralCoefficients::new(
            raw.coeffs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<SpectralCoefficients> for CoeffJson {
    fn from(c: SpectralCoefficients) -> Self {
        CoeffJson {
            n: c.n(),
            coeffs: c.coeffs.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl SpectralCoefficients {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::TooFewVertices(coeffs.len()));
        }
        Ok(SpectralCoefficients { coeffs })
    }

    /// All-zero coefficients for `n` vertices.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Largest `|a_i|` over the shape indices `1..n-1`.
    pub fn shape_norm_max(&self) -> f64 {
        self.coeffs[1..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of `(a_1, ..., a_{n-1})`.
    pub fn shape_norm(&self) -> f64 {
        self.coeffs[1..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// True when the polygon is a single point: every shape coefficient is
    /// zero, or round-off relative to the centroid coefficient.
    pub fn is_point(&self) -> bool {
        let shape = self.shape_norm_max();
        shape == 0.0 || shape <= POINT_RTOL * self.coeffs[0].norm()
    }

    /// Indices `i >= 1` with `|a_i| > rtol * max_{i>=1} |a_i|`.
    pub fn support(&self, rtol: f64) -> Vec<usize> {
        let max = self.shape_norm_max();
        (1..self.n())
            .filter(|&i| self.coeffs[i].norm() > rtol * max)
            .collect()
    }

    /// Coefficients of `Q^{(k)}`: `a_i q^{i(k-1)}`.
    pub fn shifted(&self, k: usize) -> SpectralCoefficients {
        let n = self.n();
        SpectralCoefficients {
            coeffs: (0..n)
                .map(|i| self.coeffs[i] * root_of_unity(n, (i * (k + n - 1)) as i64))
                .collect(),
        }
    }

    /// Coefficients of `Qbar^{(k)} = (w_k, w_{k-1}, ...)`: `a_{n-i} q^{-i(k-1)}`.
    ///
    /// The same vector equals `a_{n-i} q^{i(k'+1)}` with `k' ≡ -k (mod n)`.
    pub fn reversed(&self, k: usize) -> SpectralCoefficients {
        let n = self.n();
        SpectralCoefficients {
            coeffs: (0..n)
                .map(|i| self.coeffs[(n - i) % n] * root_of_unity(n, -((i * (k + n - 1)) as i64)))
                .collect(),
        }
    }
}

/// `a_i = (1/n) Σ_k z_k q^{-(k-1)i}`.
pub fn decompose(p: &Polygon) -> SpectralCoefficients {
    let n = p.n();
    let q = roots(n);
    let z = p.vertices();
    let inv_n = 1.0 / n as f64;
    let coeffs = (0..n)
        .map(|i| {
            z.iter()
                .enumerate()
                .map(|(k, zk)| zk * q[(n - (k * i) % n) % n])
                .sum::<Complex64>()
                * inv_n
        })
        .collect();
    SpectralCoefficients { coeffs }
}

/// `z_k = Σ_i a_i q^{(k-1)i}`.
pub fn reconstruct(c: &SpectralCoefficients) -> Polygon {
    let n = c.n();
    let q = roots(n);
    let vertices = (0..n)
        .map(|k| {
            c.coeffs
                .iter()
                .enumerate()
                .map(|(i, ai)| ai * q[(k * i) % n])
                .sum::<Complex64>()
        })
        .collect();
    Polygon::new(vertices).expect("coefficient vectors have n >= 3")
}

/// A `*`-similarity class of centered polygons: the unit-norm shape vector
/// `(a_1, ..., a_{n-1})` with its pivot (first coefficient of maximal
/// modulus) rotated onto the positive real axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectiveClass {
    n: usize,
    coeffs: Vec<Complex64>,
}

/// Magnitudes within this relative gap of the maximum count as tied when
/// choosing the pivot, so scaling a polygon cannot move the pivot.
const PIVOT_TIE: f64 = 1e-9;

impl ProjectiveClass {
    /// Normalize a shape vector `(a_1, ..., a_{n-1})`.
    pub fn from_shape(shape: &[Complex64]) -> Result<Self> {
        let n = shape.len() + 1;
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let max = shape.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max == 0.0 || !max.is_finite() {
            return Err(Error::PointPolygon);
        }
        let pivot = shape
            .iter()
            .position(|c| c.norm() >= max * (1.0 - PIVOT_TIE))
            .expect("maximum is attained");
        // rescale first so tiny or huge inputs do not under/overflow
        let scaled: Vec<Complex64> = shape.iter().map(|c| c / max).collect();
        let norm = scaled.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let phase = scaled[pivot].conj() / scaled[pivot].norm();
        let mut coeffs: Vec<Complex64> = scaled.iter().map(|c| c * phase / norm).collect();
        coeffs[pivot].im = 0.0;
        Ok(ProjectiveClass { n, coeffs })
    }

    /// Class of the shape coefficients of a full coefficient vector.
    pub fn from_coefficients(c: &SpectralCoefficients) -> Result<Self> {
        if c.is_point() {
            return Err(Error::PointPolygon);
        }
        Self::from_shape(&c.coeffs()[1..])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Unit-norm shape vector; entry `i - 1` is the coefficient of `X_i`.
    #[inline]
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Index `i` (1-based, i.e. of `X_i`) of the phase pivot.
    pub fn pivot(&self) -> usize {
        let max = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs
            .iter()
            .position(|c| c.norm() >= max * (1.0 - PIVOT_TIE))
            .expect("nonempty")
            + 1
    }

    /// Centered unit-norm representative polygon.
    pub fn representative(&self) -> Polygon {
        let mut full = vec![Complex64::new(0.0, 0.0)];
        full.extend_from_slice(&self.coeffs);
        reconstruct(&SpectralCoefficients { coeffs: full })
    }
}

/// Class of `center(P)` in the quotient by nonzero complex scaling.
pub fn project_class(p: &Polygon) -> Result<ProjectiveClass> {
    ProjectiveClass::from_coefficients(&decompose(p))
}

/// `inf ‖a - e^{iθ} b‖` over unit representatives, i.e. `sqrt(2 - 2|<a,b>|)`.
///
/// Evaluated as the norm of the phase-aligned difference so that small
/// distances keep full relative precision.
pub fn class_distance(a: &ProjectiveClass, b: &ProjectiveClass) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::SizeMismatch(a.n, b.n));
    }
    let inner: Complex64 = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x * y.conj())
        .sum();
    let phase = if inner.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        inner / inner.norm()
    };
    Ok(a.coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| (x - y * phase).norm_sqr())
        .sum::<f64>()
        .sqrt())
}
