//! Iterating the developing map.
//!
//! On centered polygons `μ^m` contracts to the origin, so the interesting
//! orbit is the one of `μ̂` on shape classes. That orbit is advanced in
//! eigen-coordinates (multiply `a_i` by `(1+q^i)/2`, renormalize) every
//! step; the raw polygon orbit is kept alongside for inspection.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::is_affinely_regular;
use crate::dedal::develop;
use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::sampling;
use crate::spectral::{self, class_distance, ProjectiveClass};
use crate::DEFAULT_TOL;

/// Relative coefficient size below which a mode counts as absent.
const MODE_RTOL: f64 = 1e-12;

/// Distances this small are round-off, not decay.
const NOISE_FLOOR: f64 = 1e-13;

/// Convex iterates required after the first convex one.
pub const CONVEX_WINDOW: usize = 10;

#[derive(Debug, Clone, Serialize)]
pub struct IterationTrace {
    /// `μ^m(Q)` for `m = 0..=steps`.
    pub polygons: Vec<Polygon>,
    /// `μ̂^m([Q])`; `None` when `Q` (hence every iterate) is a point.
    pub classes: Vec<Option<ProjectiveClass>>,
    pub steps: usize,
}

/// Centered spectrum with modes below `MODE_RTOL` of the largest set to
/// zero. Round-off in an absent mode would otherwise grow under
/// renormalization whenever that mode contracts more slowly.
/// A point polygon comes back as all zeros.
fn significant_spectrum(q: &Polygon) -> spectral::SpectralCoefficients {
    let mut coeffs = spectral::decompose(q);
    let point = coeffs.is_point();
    let a = coeffs.coeffs_mut();
    if point {
        a.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        return coeffs;
    }
    a[0] = Complex64::new(0.0, 0.0);
    let r = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    a.iter_mut()
        .filter(|z| z.norm() <= MODE_RTOL * r)
        .for_each(|z| *z = Complex64::new(0.0, 0.0));
    coeffs
}

/// Raw orbit by repeated [`develop`], class orbit by per-step renormalized
/// eigen-coordinates of the significant modes.
pub fn iterate(q: &Polygon, m: usize) -> IterationTrace {
    let n = q.n();
    let mut polygons = Vec::with_capacity(m + 1);
    polygons.push(q.clone());
    for step in 0..m {
        polygons.push(develop(&polygons[step]));
    }

    let eig: Vec<Complex64> = (1..n)
        .map(|i| spectral::eigenvalue(n, i).expect("index in range"))
        .collect();
    let mut classes = Vec::with_capacity(m + 1);
    let mut current = ProjectiveClass::from_coefficients(&significant_spectrum(q)).ok();
    classes.push(current.clone());
    for _ in 0..m {
        current = current.and_then(|c| {
            let next: Vec<Complex64> = c.coeffs().iter().zip(&eig).map(|(a, l)| a * l).collect();
            ProjectiveClass::from_shape(&next).ok()
        });
        classes.push(current.clone());
    }
    IterationTrace {
        polygons,
        classes,
        steps: m,
    }
}

/// `j = min(i, n-i)` over the significant spectral indices of `center(Q)`:
/// the index with `Q` in `B_j \ B_{j+1}`.
pub fn attractor_index(q: &Polygon, tol: f64) -> Result<usize> {
    let n = q.n();
    let a = spectral::decompose(q);
    if a.is_point() {
        return Err(Error::PointPolygon);
    }
    let j = a
        .support(tol)
        .into_iter()
        .map(|i| i.min(n - i))
        .min()
        .expect("nonempty support");
    if 2 * j == n {
        return Err(Error::NoAttractor);
    }
    Ok(j)
}

/// Distance from a class to the nearest point of `Â_j`, the class of its
/// `{j, n-j}` truncation. `sqrt(2)` if that truncation vanishes.
pub fn distance_to_affine_class(c: &ProjectiveClass, j: usize) -> f64 {
    let n = c.n();
    let truncated: Vec<Complex64> = c
        .coeffs()
        .iter()
        .enumerate()
        .map(|(idx, a)| {
            let i = idx + 1;
            if i == j || i == n - j {
                *a
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    match ProjectiveClass::from_shape(&truncated) {
        Ok(target) => class_distance(c, &target).expect("same n"),
        Err(_) => 2f64.sqrt(),
    }
}

/// Distance to the union of all `Â_j`, `1 <= j <= ceil(n/2) - 1`.
pub fn distance_to_attractor(c: &ProjectiveClass) -> f64 {
    let n = c.n();
    (1..n.div_ceil(2))
        .map(|j| distance_to_affine_class(c, j))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Serialize)]
pub struct AttractorReport {
    pub j: usize,
    /// `max |(1+q^i)/(1+q^j)|` over present middle modes; 0 if none.
    pub predicted_rate: f64,
    pub fitted_rate: f64,
    /// `dist(μ̂^m[Q], Â_j)` for `m = 0..=steps`. The rate is fitted on the
    /// second half of the leading run above `1e-13`.
    pub distances: Vec<f64>,
}

/// Contraction rate towards `Â_j` and the measured decay of the distance.
pub fn decay_report(q: &Polygon, m: usize) -> Result<AttractorReport> {
    if m < 10 {
        return Err(Error::InvalidArgument(format!(
            "decay report needs at least 10 steps, got {m}"
        )));
    }
    let n = q.n();
    let j = attractor_index(q, MODE_RTOL)?;
    let a = spectral::decompose(q);
    let lead = Complex64::new(1.0, 0.0) + spectral::root_of_unity(n, j as i64);
    let predicted_rate = a
        .support(MODE_RTOL)
        .into_iter()
        .filter(|&i| j < i && i < n - j && 2 * i != n)
        .map(|i| ((Complex64::new(1.0, 0.0) + spectral::root_of_unity(n, i as i64)) / lead).norm())
        .fold(0.0, f64::max);

    let trace = iterate(q, m);
    let distances: Vec<f64> = trace
        .classes
        .iter()
        .map(|c| {
            c.as_ref()
                .map_or(f64::NAN, |c| distance_to_affine_class(c, j))
        })
        .collect();
    // late half of the stretch before the distance sinks into round-off
    let usable = distances
        .iter()
        .position(|&d| d.is_nan() || d <= NOISE_FLOOR)
        .unwrap_or(distances.len());
    let fitted_rate = if predicted_rate == 0.0 {
        0.0
    } else {
        fit_rate(&distances[usable / 2..usable])
    };
    Ok(AttractorReport {
        j,
        predicted_rate,
        fitted_rate,
        distances,
    })
}

/// `exp(slope)` of the least-squares line through `log d_m`, skipping
/// zero or non-finite entries.
pub fn fit_rate(distances: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = distances
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_finite() && **d > 0.0)
        .map(|(m, d)| (m as f64, d.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (sxy / sxx).exp()
}

/// `((1+q^j)/2)^n = (-1)^j cos^n(πj/n)`, the scale with `μ^n = scale * Id`
/// on `A_j`. Real, and symmetric under `j -> n - j`.
pub fn mu_n_scalar(n: usize, j: usize) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    if j == 0 || j >= n || 2 * j == n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    let jj = j.min(n - j);
    let cos = (std::f64::consts::PI * jj as f64 / n as f64).cos();
    let sign = if jj.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Complex64::new(sign * cos.powi(n as i32), 0.0))
}

/// Checks `μ̂^n [Q] = [Q]` and `μ^n(Q) = mu_n_scalar(n, j) Q` on the
/// centered polygon, both within `tol` (the latter relative to its size).
pub fn verify_n_periodicity(q: &Polygon, tol: f64) -> Result<bool> {
    let n = q.n();
    let Some(j) = is_affinely_regular(q, tol)? else {
        return Err(Error::NotAffinelyRegular);
    };
    let centered = q.center();
    let mut image = centered.clone();
    for _ in 0..n {
        image = develop(&image);
    }
    let dist = class_distance(
        &spectral::project_class(&image)?,
        &spectral::project_class(&centered)?,
    )?;
    let expect = &centered * mu_n_scalar(n, j)?;
    let err = image.max_distance(&expect) / centered.max_modulus();
    Ok(dist <= tol && err <= tol)
}

/// Convexity along a normalized orbit `μ^0(Q), ..., μ^{max_m + CONVEX_WINDOW}(Q)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexificationScan {
    /// First `m <= max_m` with a convex iterate.
    pub first_convex: Option<usize>,
    /// Smallest `M <= max_m` with `μ^M .. μ^{M+CONVEX_WINDOW}` all convex.
    pub index: Option<usize>,
    /// Non-convex iterates after `first_convex`.
    pub violations: Vec<usize>,
}

/// Convexity is similarity invariant, so the orbit is advanced on the
/// significant centered spectrum, rescaled to unit size each step, and
/// reconstructed only to test convexity.
pub fn convexification_scan(q: &Polygon, max_m: usize, tol: f64) -> ConvexificationScan {
    let n = q.n();
    let eig: Vec<Complex64> = (0..n)
        .map(|i| {
            if i == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                spectral::eigenvalue(n, i).expect("index in range")
            }
        })
        .collect();
    let normalize = |a: &mut [Complex64]| {
        let r = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if r > 0.0 {
            a.iter_mut().for_each(|z| *z /= r);
        }
    };
    let mut coeffs = significant_spectrum(q);
    normalize(coeffs.coeffs_mut());
    let mut flags = Vec::with_capacity(max_m + CONVEX_WINDOW + 1);
    for m in 0..=max_m + CONVEX_WINDOW {
        flags.push(spectral::reconstruct(&coeffs).is_convex(tol));
        // nothing convex by max_m: no need to look further
        if m == max_m && !flags.iter().any(|&f| f) {
            break;
        }
        let a = coeffs.coeffs_mut();
        a.iter_mut().zip(&eig).for_each(|(z, l)| *z *= l);
        normalize(a);
    }
    let first_convex = flags.iter().position(|&f| f).filter(|&m| m <= max_m);
    let violations = match first_convex {
        Some(f) => (f..flags.len()).filter(|&m| !flags[m]).collect(),
        None => Vec::new(),
    };
    let index = (0..=max_m.min(flags.len().saturating_sub(CONVEX_WINDOW + 1)))
        .find(|&start| flags[start..=start + CONVEX_WINDOW].iter().all(|&f| f));
    ConvexificationScan {
        first_convex,
        index,
        violations,
    }
}

/// Smallest `M <= max_m` from which the orbit is convex (0 for convex input).
pub fn convexification_index(q: &Polygon, max_m: usize) -> Option<usize> {
    convexification_scan(q, max_m, DEFAULT_TOL).index
}

/// Ensemble statistics of convexification for random polygons.
#[derive(Debug, Clone, Serialize)]
pub struct BgsReport {
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_m: usize,
    pub converged: usize,
    pub fraction_converged: f64,
    pub absorption_violations: usize,
    /// Convexification index -> number of samples.
    pub histogram: BTreeMap<usize, usize>,
}

/// Runs `samples` trials: trial `t` draws `n` vertices uniformly from the
/// unit square with [`sampling::trial_rng`]`(seed, t)`, centers them and
/// scans the orbit. Trials run in parallel; results are merged by index.
pub fn bgs_experiment(n: usize, samples: usize, seed: u64, max_m: usize) -> Result<BgsReport> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let scans: Vec<ConvexificationScan> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = sampling::trial_rng(seed, t as u64);
            let p = sampling::unit_square_polygon(&mut rng, n).center();
            convexification_scan(&p, max_m, DEFAULT_TOL)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    let mut absorption_violations = 0;
    for scan in &scans {
        if let Some(m) = scan.index {
            *histogram.entry(m).or_insert(0) += 1;
        }
        absorption_violations += scan.violations.len();
    }
    let converged = histogram.values().sum();
    Ok(BgsReport {
        n,
        samples,
        seed,
        max_m,
        converged,
        fraction_converged: if samples == 0 {
            0.0
        } else {
            converged as f64 / samples as f64
        },
        absorption_violations,
        histogram,
    })
}
