//! The developing map `μ(w)_i = (w_i + w_{i+1})/2` and its preimages.
//!
//! For odd `n` the map is invertible. For even `n` its kernel is spanned by
//! `X_{n/2} = (1, -1, ..., 1, -1)` and its range is the hyperplane where the
//! alternating vertex sum vanishes; the preimages of a polygon in the range
//! form the line `Q_0 + s X_{n/2}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::Polygon;
use crate::spectral::{self, SpectralCoefficients};

/// Midpoint polygon `z_i = (w_i + w_{i+1})/2`, indices mod `n`.
pub fn develop(q: &Polygon) -> Polygon {
    let w = q.vertices();
    let n = w.len();
    Polygon::new((0..n).map(|i| (w[i] + w[(i + 1) % n]) * 0.5).collect())
        .expect("same vertex count")
}

/// The unique dedal polygon for odd `n`:
/// `w_i = z_i - z_{i+1} + z_{i+2} - ... + z_{i-1}`.
pub fn dedal_odd(p: &Polygon) -> Result<Polygon> {
    let n = p.n();
    if n.is_multiple_of(2) {
        return Err(Error::Parity { expected: "odd", n });
    }
    let z = p.vertices();
    let w = (0..n)
        .map(|i| {
            (0..n)
                .map(|m| {
                    let zm = z[(i + m) % n];
                    if m % 2 == 0 {
                        zm
                    } else {
                        -zm
                    }
                })
                .sum::<Complex64>()
        })
        .collect();
    Polygon::new(w)
}

/// Alternating sum `z_1 - z_2 + z_3 - ... - z_n` (even `n`).
pub fn existence_defect(p: &Polygon) -> Result<Complex64> {
    let n = p.n();
    if n % 2 == 1 {
        return Err(Error::Parity {
            expected: "even",
            n,
        });
    }
    Ok(p.vertices().chunks(2).map(|pair| pair[0] - pair[1]).sum())
}

/// Largest defect accepted as zero: `tol * (1 + max |z_i|)`.
pub fn existence_threshold(p: &Polygon, tol: f64) -> f64 {
    tol * (1.0 + p.max_modulus())
}

/// Kernel direction `X_{n/2} = (1, -1, ..., 1, -1)`.
pub fn kernel_vector(n: usize) -> Result<Polygon> {
    if n % 2 == 1 {
        return Err(Error::Parity {
            expected: "even",
            n,
        });
    }
    Polygon::new(
        (0..n)
            .map(|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect(),
    )
}

/// All dedal polygons of an even-`n` polygon: `Q_0 + s X_{n/2}`, where `Q_0`
/// has no `X_{n/2}` component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DedalFamily {
    base_q0: Polygon,
    kernel: Polygon,
}

impl DedalFamily {
    pub fn n(&self) -> usize {
        self.base_q0.n()
    }

    pub fn base(&self) -> &Polygon {
        &self.base_q0
    }

    pub fn kernel(&self) -> &Polygon {
        &self.kernel
    }

    /// `Q_0 + s X_{n/2}`.
    pub fn member(&self, s: Complex64) -> Polygon {
        &self.base_q0 + &(&self.kernel * s)
    }

    /// The member whose `i`-th vertex (1-based) is `w`.
    pub fn through_vertex(&self, i: usize, w: Complex64) -> Result<Polygon> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Ok(self.member(self.parameter_for(i, w)))
    }

    /// The `s` with `(Q_0 + s X_{n/2})_i = w`: `s = (w - w_i^0)(-1)^{i-1}`.
    pub fn parameter_for(&self, i: usize, w: Complex64) -> Complex64 {
        let d = w - self.base_q0.vertex(i);
        if i % 2 == 1 {
            d
        } else {
            -d
        }
    }
}

/// Dedal family of an even-`n` polygon, or [`Error::NoDedal`] when the
/// alternating sum exceeds [`existence_threshold`].
///
/// `Q_0` is built in the eigenbasis: `a_i = 2 b_i / (1 + q^i)` for
/// `i != n/2` and `a_{n/2} = 0`.
pub fn dedal_even(p: &Polygon, tol: f64) -> Result<DedalFamily> {
    let n = p.n();
    let defect = existence_defect(p)?;
    if defect.norm() > existence_threshold(p, tol) {
        return Err(Error::NoDedal { defect });
    }
    let b = spectral::decompose(p);
    let half = n / 2;
    let a: Vec<Complex64> = b
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, bi)| {
            if i == half {
                Complex64::new(0.0, 0.0)
            } else {
                bi / spectral::eigenvalue(n, i).expect("index in range")
            }
        })
        .collect();
    let base_q0 = spectral::reconstruct(&SpectralCoefficients::new(a)?);
    Ok(DedalFamily {
        base_q0,
        kernel: kernel_vector(n)?,
    })
}

/// The canonical dedal polygon: the unique one for odd `n`, `Q_0` for even.
pub fn dedal(p: &Polygon, tol: f64) -> Result<Polygon> {
    if p.n() % 2 == 1 {
        dedal_odd(p)
    } else {
        Ok(dedal_even(p, tol)?.base_q0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{basis_vector, eigenvalue};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(pts: &[(f64, f64)]) -> Polygon {
        Polygon::from_xy(pts).unwrap()
    }

    fn square() -> Polygon {
        poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn develop_examples() {
        let q = poly(&[(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]);
        assert_eq!(develop(&q), poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]));
        for n in 3..9 {
            for j in 0..n {
                let x = basis_vector(n, j).unwrap();
                let expect = &x * eigenvalue(n, j).unwrap();
                assert!(develop(&x).max_distance(&expect) < 1e-14);
            }
        }
        let k = Polygon::constant(6, c(2.0, -7.0)).unwrap();
        assert_eq!(develop(&k), k);
    }

    #[test]
    fn dedal_odd_examples() {
        let p = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(
            dedal_odd(&p).unwrap(),
            poly(&[(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)])
        );

        let ell = c(0.7, -1.3);
        let p = &basis_vector(5, 1).unwrap() * ell;
        let expect = &basis_vector(5, 1).unwrap() * (ell / eigenvalue(5, 1).unwrap());
        assert!(dedal_odd(&p).unwrap().max_distance(&expect) < 1e-13);

        assert_eq!(
            dedal_odd(&square()),
            Err(Error::Parity {
                expected: "odd",
                n: 4
            })
        );
    }

    #[test]
    fn defect_examples() {
        assert_eq!(existence_defect(&square()).unwrap(), c(0.0, 0.0));
        let p = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 2.0)]);
        assert_eq!(existence_defect(&p).unwrap(), c(0.0, -1.0));
        let any = poly(&[
            (0.3, 0.1),
            (2.0, -1.0),
            (0.5, 0.5),
            (-1.0, 2.0),
            (0.0, 0.7),
            (0.9, 0.9),
        ]);
        assert!(existence_defect(&develop(&any)).unwrap().norm() < 1e-15);
        assert!(existence_defect(&poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])).is_err());
    }

    #[test]
    fn dedal_even_examples() {
        let fam = dedal_even(&square(), 1e-9).unwrap();
        assert!(develop(fam.base()).max_distance(&square()) < 1e-10);
        let a = spectral::decompose(fam.base());
        assert!(a.coeffs()[2].norm() < 1e-15);

        let bad = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 2.0)]);
        assert_eq!(
            dedal_even(&bad, 1e-9),
            Err(Error::NoDedal {
                defect: c(0.0, -1.0)
            })
        );

        let ell = c(-0.4, 2.0);
        let p = &basis_vector(4, 1).unwrap() * ell;
        let expect = &basis_vector(4, 1).unwrap() * (ell * 2.0 / (c(1.0, 0.0) + c(0.0, 1.0)));
        assert!(dedal_even(&p, 1e-9).unwrap().base().max_distance(&expect) < 1e-14);
    }

    #[test]
    fn family_examples() {
        let fam = dedal_even(&square(), 1e-9).unwrap();
        assert_eq!(&fam.member(c(0.0, 0.0)), fam.base());
        let image = develop(&fam.member(c(0.0, 0.0)));
        for s in [c(1.0, 0.0), c(0.0, 1.0), c(2.0, -3.0)] {
            let m = fam.member(s);
            assert!(develop(&m).max_distance(&image) < 1e-15);
            let diff = &m - fam.base();
            assert!(diff.max_distance(&(fam.kernel() * s)) < 1e-15);
        }
    }

    #[test]
    fn through_vertex_examples() {
        let fam = dedal_even(&square(), 1e-9).unwrap();
        for i in 1..=4 {
            let w0 = fam.base().vertex(i);
            assert_eq!(&fam.through_vertex(i, w0).unwrap(), fam.base());
            let w = c(3.5, -1.25);
            let m = fam.through_vertex(i, w).unwrap();
            assert!((m.vertex(i) - w).norm() < 1e-12);
        }
        // same member from two indices iff the parameters agree
        let m = fam.member(c(0.5, 0.5));
        let (w1, w2) = (m.vertex(1), m.vertex(2));
        assert_eq!(fam.parameter_for(1, w1), fam.parameter_for(2, w2));
        assert_eq!(
            fam.through_vertex(1, w1).unwrap(),
            fam.through_vertex(2, w2).unwrap()
        );
        assert_ne!(fam.parameter_for(1, w1), fam.parameter_for(2, w2 + 1.0));
        assert!(fam.through_vertex(5, w1).is_err());
        assert!(fam.through_vertex(0, w1).is_err());
    }

    #[test]
    fn kernel_is_annihilated_exactly() {
        for n in (4..=16).step_by(2) {
            let k = kernel_vector(n).unwrap();
            assert_eq!(develop(&k), Polygon::constant(n, c(0.0, 0.0)).unwrap());
        }
    }

    #[test]
    fn unified_entry_point() {
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(
            dedal(&tri, 1e-9).unwrap(),
            poly(&[(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)])
        );
        assert_eq!(
            &dedal(&square(), 1e-9).unwrap(),
            dedal_even(&square(), 1e-9).unwrap().base()
        );
        let bad = poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 2.0)]);
        assert!(matches!(dedal(&bad, 1e-9), Err(Error::NoDedal { .. })));
    }
}
