//! Regular and affinely regular polygons, and which polygons are similar to
//! their own dedal polygon.
//!
//! A polygon is regular when its centered spectrum is supported on a single
//! index `j` (`j != n/2`), affinely regular when the support lies in
//! `{j, n-j}`. Support is decided relative to the largest shape
//! coefficient, so every test here is scale invariant.

use num_complex::Complex64;
use serde::Serialize;

use crate::dedal::dedal;
use crate::error::{Error, Result};
use crate::polygon::{star_similar, Orientation, Polygon, SimilarityWitness};
use crate::spectral::{self, q_pow, root_of_unity, SpectralCoefficients};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularityResult {
    /// `center(P) = ell * X_j`.
    Regular {
        j: usize,
        ell: Complex64,
    },
    /// Support in `{j, n-j}`, `j` folded into `1..=(n-1)/2`.
    AffinelyRegular {
        j: usize,
    },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Position of a polygon in the list of polygons similar to their dedal
/// polygon. `j` is folded into `1..=(n-1)/2` except for `EvenRegular`,
/// which keeps the exact eigenvector index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Thm1Class {
    OddAffinelyRegular {
        j: usize,
    },
    EvenRegular {
        j: usize,
    },
    /// `n | j(2k - 1)`, `k != n/2`.
    EvenCaseIi {
        j: usize,
        k: usize,
    },
    /// `b_j / b_{n-j} = ±q^{j(k + 3/2)}`.
    EvenCaseIii {
        j: usize,
        k: usize,
        sign: Sign,
    },
    NotInList,
}

impl Thm1Class {
    pub fn in_list(&self) -> bool {
        !matches!(self, Thm1Class::NotInList)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Thm1Class::OddAffinelyRegular { .. } => "odd_affinely_regular",
            Thm1Class::EvenRegular { .. } => "even_regular",
            Thm1Class::EvenCaseIi { .. } => "even_case_ii",
            Thm1Class::EvenCaseIii { .. } => "even_case_iii",
            Thm1Class::NotInList => "not_in_list",
        }
    }
}

fn shape(p: &Polygon) -> Result<SpectralCoefficients> {
    let b = spectral::decompose(p);
    if b.is_point() {
        return Err(Error::PointPolygon);
    }
    Ok(b)
}

/// `(j, ell)` with `center(P) = ell * X_j`, if the spectrum has a single
/// significant index `j != n/2`.
pub fn is_regular(p: &Polygon, tol: f64) -> Result<Option<(usize, Complex64)>> {
    let b = shape(p)?;
    let n = p.n();
    Ok(match b.support(tol).as_slice() {
        [j] if 2 * j != n => Some((*j, b.coeffs()[*j])),
        _ => None,
    })
}

/// Folded `j` with spectral support in `{j, n-j}`, `j != n/2`.
pub fn is_affinely_regular(p: &Polygon, tol: f64) -> Result<Option<usize>> {
    let b = shape(p)?;
    let n = p.n();
    let support = b.support(tol);
    let j = support[0].min(n - support[0]);
    if 2 * j == n {
        return Ok(None);
    }
    Ok(support.iter().all(|&i| i == j || i == n - j).then_some(j))
}

pub fn regularity(p: &Polygon, tol: f64) -> Result<RegularityResult> {
    if let Some((j, ell)) = is_regular(p, tol)? {
        return Ok(RegularityResult::Regular { j, ell });
    }
    Ok(match is_affinely_regular(p, tol)? {
        Some(j) => RegularityResult::AffinelyRegular { j },
        None => RegularityResult::None,
    })
}

/// Whether `P` is `*`-similar to its canonical dedal polygon. False when no
/// dedal polygon exists or `P` is a point.
pub fn thm0_verify(p: &Polygon, tol: f64) -> bool {
    match dedal(p, tol) {
        Ok(q) => matches!(star_similar(p, &q, tol), Ok(Some(_))),
        Err(_) => false,
    }
}

pub fn thm1_class(p: &Polygon, tol: f64) -> Result<Thm1Class> {
    let n = p.n();
    let b = shape(p)?;
    if n % 2 == 1 {
        return Ok(match is_affinely_regular(p, tol)? {
            Some(j) => Thm1Class::OddAffinelyRegular { j },
            None => Thm1Class::NotInList,
        });
    }
    if let Some((j, _)) = is_regular(p, tol)? {
        return Ok(Thm1Class::EvenRegular { j });
    }
    let Some(j) = is_affinely_regular(p, tol)? else {
        return Ok(Thm1Class::NotInList);
    };
    let (bj, bnj) = (b.coeffs()[j], b.coeffs()[n - j]);
    let scale = bj.norm().max(bnj.norm());
    for k in 1..=n {
        if 2 * k != n && (j * (2 * k - 1)) % n == 0 {
            return Ok(Thm1Class::EvenCaseIi { j, k });
        }
        let rotor = q_pow(n, j as f64 * (k as f64 + 1.5));
        for sign in [Sign::Plus, Sign::Minus] {
            if (bj - rotor * bnj * sign.value()).norm() <= tol * scale {
                return Ok(Thm1Class::EvenCaseIii { j, k, sign });
            }
        }
    }
    Ok(Thm1Class::NotInList)
}

/// The shift, orientation and scale that carry the dedal polygon onto `P`,
/// as predicted from the class alone, checked against `dedal(P)`.
///
/// Predictions per class:
/// * odd: `P = ell Q^{((n+3)/2)}`, `ell = (1+q^j) / (2 q^{j(n+1)/2})`;
/// * even regular: `P = ell Q`, `ell = (1+q^j)/2`;
/// * case ii: `P = ell Q^{(k+1)}`, `ell = (1+q^j) / (2 q^{kj})`;
/// * case iii: `P = ell Qbar^{(n-k)}`, `ell = ±(q^{j/2} + q^{-j/2})/2` real.
///
/// For case iii the vertex-level reversed shift is `n - k` (mod `n`): the
/// coefficient form `a_{n-i} q^{i(k+1)}` is that of `(w_{-k}, w_{-k-1}, ...)`.
pub fn similarity_witness(p: &Polygon, tol: f64) -> Result<SimilarityWitness> {
    let n = p.n();
    let one = Complex64::new(1.0, 0.0);
    let wrap = |k: usize| (k + n - 1) % n + 1;
    let witness = match thm1_class(p, tol)? {
        Thm1Class::NotInList => return Err(Error::NotInList),
        Thm1Class::OddAffinelyRegular { j } => SimilarityWitness {
            shift_k: (n + 3) / 2,
            orientation: Orientation::Same,
            scale_ell: (one + root_of_unity(n, j as i64))
                / (root_of_unity(n, (j * (n + 1) / 2) as i64) * 2.0),
        },
        Thm1Class::EvenRegular { j } => SimilarityWitness {
            shift_k: 1,
            orientation: Orientation::Same,
            scale_ell: spectral::eigenvalue(n, j)?,
        },
        Thm1Class::EvenCaseIi { j, k } => SimilarityWitness {
            shift_k: wrap(k + 1),
            orientation: Orientation::Same,
            scale_ell: (one + root_of_unity(n, j as i64))
                / (root_of_unity(n, (k * j) as i64) * 2.0),
        },
        Thm1Class::EvenCaseIii { j, k, sign } => {
            let half = q_pow(n, j as f64 / 2.0);
            let ell = sign.value() * (half + half.conj()).re / 2.0;
            SimilarityWitness {
                shift_k: wrap(n - k % n),
                orientation: Orientation::Reversed,
                scale_ell: Complex64::new(ell, 0.0),
            }
        }
    };
    let residual = witness_residual(p, &witness, tol)?;
    if residual > tol {
        return Err(Error::WitnessVerification { residual });
    }
    Ok(witness)
}

/// `max |center(P) - center(witness(dedal(P)))| / max |center(P)|`.
pub fn witness_residual(p: &Polygon, witness: &SimilarityWitness, tol: f64) -> Result<f64> {
    let q = dedal(p, tol)?;
    let predicted = witness.apply(&q)?.center();
    let target = p.center();
    Ok(target.max_distance(&predicted) / target.max_modulus())
}
