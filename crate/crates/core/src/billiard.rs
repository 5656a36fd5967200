//! The outer (dual) billiard map of a polygonal table.
//!
//! A point `z` outside the table is reflected in its support vertex: the
//! hull vertex `v` such that, looking from `z`, the whole table lies on one
//! fixed side of the ray `z -> v`. With [`Convention::Ccw`] the table lies
//! to the left of that ray and orbits circulate counterclockwise.
//!
//! The map only sees the convex hull of the table. It is undefined on the
//! lines extending hull sides; such points are reported, never resolved.

use num_complex::Complex64;
use serde::Serialize;

use crate::dedal::dedal;
use crate::error::{Error, Result};
use crate::polygon::{cross, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// Table strictly left of the ray from `z` through the support vertex.
    #[default]
    Ccw,
    /// Table strictly right of that ray.
    Cw,
}

impl Convention {
    /// The convention under which orbits circulate the same way as `p`.
    pub fn matching(p: &Polygon) -> Self {
        if p.signed_area() >= 0.0 {
            Convention::Ccw
        } else {
            Convention::Cw
        }
    }
}

/// Indices (0-based, into `p`) of the extreme points of the convex hull of
/// `p`, counterclockwise. Collinear boundary points are dropped; among
/// duplicate points the first occurrence is kept.
pub fn convex_hull(p: &Polygon) -> Vec<usize> {
    let v = p.vertices();
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| {
        v[a].re
            .total_cmp(&v[b].re)
            .then(v[a].im.total_cmp(&v[b].im))
            .then(a.cmp(&b))
    });
    idx.dedup_by(|a, b| v[*a] == v[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2 {
                let a = v[hull[hull.len() - 2]];
                let b = v[hull[hull.len() - 1]];
                if cross(b - a, v[i] - a) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// A table with its hull precomputed.
#[derive(Debug, Clone)]
pub struct Table {
    polygon: Polygon,
    hull: Vec<usize>,
    diameter: f64,
}

impl Table {
    pub fn new(p: &Polygon) -> Result<Self> {
        let hull = convex_hull(p);
        if hull.len() < 3 {
            return Err(Error::DegenerateTable);
        }
        Ok(Table {
            polygon: p.clone(),
            hull,
            diameter: p.diameter(),
        })
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    /// Hull vertex indices, 1-based, counterclockwise.
    pub fn hull_indices(&self) -> Vec<usize> {
        self.hull.iter().map(|i| i + 1).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    fn hull_point(&self, k: usize) -> Complex64 {
        self.polygon.vertices()[self.hull[k % self.hull.len()]]
    }

    /// 1-based table index of the support vertex of `z`.
    ///
    /// Errors with [`Error::InsideHull`] when `z` is inside or within
    /// `tol * diameter` of the hull, and with [`Error::Singular`] when `z`
    /// is within that distance of a line extending a hull side. The side
    /// is reported by the 1-based index of its counterclockwise start vertex.
    pub fn support_vertex(&self, z: Complex64, tol: f64, convention: Convention) -> Result<usize> {
        let h = self.hull.len();
        let eps = tol * self.diameter;
        // signed distance of z to each hull side line, negative = outside
        let side: Vec<f64> = (0..h)
            .map(|k| {
                let a = self.hull_point(k);
                let e = self.hull_point(k + 1) - a;
                cross(e, z - a) / e.norm()
            })
            .collect();
        if side.iter().all(|&s| s >= -eps) {
            return Err(Error::InsideHull);
        }
        if let Some(k) = side.iter().position(|s| s.abs() <= eps) {
            return Err(Error::Singular {
                side: self.hull[k] + 1,
            });
        }
        let visible = |k: usize| side[k % h] < 0.0;
        let k = (0..h)
            .find(|&k| match convention {
                // end of the visible chain: side k-1 visible, side k not
                Convention::Ccw => visible(k + h - 1) && !visible(k),
                // start of the visible chain: side k visible, side k-1 not
                Convention::Cw => visible(k) && !visible(k + h - 1),
            })
            .expect("an outside point sees a proper chain of sides");
        Ok(self.hull[k] + 1)
    }

    /// `T z = 2 v - z`.
    pub fn dual_map(&self, z: Complex64, tol: f64, convention: Convention) -> Result<Complex64> {
        let v = self.support_vertex(z, tol, convention)?;
        Ok(self.polygon.vertex(v) * 2.0 - z)
    }
}

/// See [`Table::support_vertex`]; counterclockwise convention.
pub fn support_vertex(p: &Polygon, z: Complex64, tol: f64) -> Result<usize> {
    Table::new(p)?.support_vertex(z, tol, Convention::Ccw)
}

pub fn dual_map(p: &Polygon, z: Complex64, tol: f64) -> Result<Complex64> {
    Table::new(p)?.dual_map(z, tol, Convention::Ccw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Termination {
    StepCap,
    /// `points[step]` lies on the extension of hull side `side`.
    SingularHit {
        step: usize,
        side: usize,
    },
    /// The last point returned to `points[start]`, `period` steps later.
    PeriodDetected {
        period: usize,
        start: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitTrace {
    pub points: Vec<Complex64>,
    /// `support[k]` is the 1-based vertex used to map `points[k]` to `points[k+1]`.
    pub support: Vec<usize>,
    pub termination: Termination,
    pub table: Polygon,
}

/// Iterates the map at most `steps` times from `z`, stopping at a singular
/// point or when a point comes back within `tol * diameter` of an earlier one.
pub fn orbit(p: &Polygon, z: Complex64, steps: usize, tol: f64) -> Result<OrbitTrace> {
    orbit_with(p, z, steps, tol, Convention::Ccw)
}

pub fn orbit_with(
    p: &Polygon,
    z: Complex64,
    steps: usize,
    tol: f64,
    convention: Convention,
) -> Result<OrbitTrace> {
    let table = Table::new(p)?;
    let eps = tol * table.diameter();
    let mut points = vec![z];
    let mut support = Vec::new();
    let mut termination = Termination::StepCap;
    for step in 0..steps {
        let current = points[step];
        let v = match table.support_vertex(current, tol, convention) {
            Ok(v) => v,
            Err(Error::Singular { side }) => {
                termination = Termination::SingularHit { step, side };
                break;
            }
            Err(e) => return Err(e),
        };
        let next = p.vertex(v) * 2.0 - current;
        support.push(v);
        points.push(next);
        if let Some(start) = points[..=step]
            .iter()
            .position(|w| (w - next).norm() <= eps)
        {
            termination = Termination::PeriodDetected {
                period: step + 1 - start,
                start,
            };
            break;
        }
    }
    Ok(OrbitTrace {
        points,
        support,
        termination,
        table: p.clone(),
    })
}

/// Whether `Q` is a Fagnano orbit of `P`: `Q` is a dedal polygon of `P`
/// (`z_i = (w_i + w_{i+1})/2` within `tol * (1 + max |z|)`) and the map
/// itself sends every `w_i` through vertex `z_i`. The convention follows the
/// orientation of `P`, since such an orbit turns the same way as the table.
pub fn verify_fagnano(p: &Polygon, q: &Polygon, tol: f64) -> bool {
    verify_fagnano_with(p, q, tol, Convention::matching(p))
}

pub fn verify_fagnano_with(p: &Polygon, q: &Polygon, tol: f64, convention: Convention) -> bool {
    let n = p.n();
    if q.n() != n {
        return false;
    }
    let bound = tol * (1.0 + p.max_modulus());
    let midpoints_ok =
        (1..=n).all(|i| (p.vertex(i) - (q.vertex(i) + q.vertex(i + 1)) * 0.5).norm() <= bound);
    if !midpoints_ok {
        return false;
    }
    let Ok(table) = Table::new(p) else {
        return false;
    };
    (1..=n).all(|i| table.support_vertex(q.vertex(i), tol, convention) == Ok(i))
}

/// The canonical dedal polygon of `P` if it is a Fagnano orbit. For even `n`
/// only `Q_0` is tried.
pub fn find_fagnano(p: &Polygon, tol: f64) -> Option<Polygon> {
    let q = dedal(p, tol).ok()?;
    verify_fagnano(p, &q, tol).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::basis_vector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Polygon {
        Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    #[test]
    fn hull_drops_interior_and_collinear_points() {
        let p = Polygon::from_xy(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (0.5, 0.5),
            (2.0, 2.0),
            (0.0, 2.0),
        ])
        .unwrap();
        assert_eq!(convex_hull(&p), vec![0, 2, 4, 5]);
        let flat = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        assert!(matches!(Table::new(&flat), Err(Error::DegenerateTable)));
    }

    #[test]
    fn support_vertex_examples() {
        assert_eq!(support_vertex(&square(), c(2.0, 0.5), 1e-9).unwrap(), 3);
        assert_eq!(support_vertex(&square(), c(0.5, 2.0), 1e-9).unwrap(), 4);
        assert_eq!(
            support_vertex(&square(), c(2.0, 0.0), 1e-9),
            Err(Error::Singular { side: 1 })
        );
        assert_eq!(
            support_vertex(&square(), c(0.5, 0.5), 1e-9),
            Err(Error::InsideHull)
        );
        assert_eq!(
            support_vertex(&square(), c(1.0, 0.5), 1e-9),
            Err(Error::InsideHull)
        );
        let table = Table::new(&square()).unwrap();
        assert_eq!(
            table
                .support_vertex(c(2.0, 0.5), 1e-9, Convention::Cw)
                .unwrap(),
            2
        );
    }

    #[test]
    fn dual_map_examples() {
        assert_eq!(dual_map(&square(), c(2.0, 0.5), 1e-9).unwrap(), c(0.0, 1.5));
        let z = c(-1.3, 2.2);
        let v = square().vertex(support_vertex(&square(), z, 1e-9).unwrap());
        let tz = dual_map(&square(), z, 1e-9).unwrap();
        assert_eq!((z + tz) * 0.5, v);
        let d = c(1.0, -0.5);
        let w = c(1.0, 1.0) + d;
        assert_eq!(support_vertex(&square(), w, 1e-9).unwrap(), 3);
        assert_eq!(dual_map(&square(), w, 1e-9).unwrap(), c(1.0, 1.0) - d);
    }

    #[test]
    fn orbit_examples() {
        let tr = orbit(&square(), c(2.3, 0.4), 16, 1e-9).unwrap();
        match tr.termination {
            Termination::PeriodDetected { period, start } => {
                assert_eq!(start, 0);
                assert!(period <= 16);
                assert!((tr.points[period] - tr.points[0]).norm() < 1e-9);
            }
            other => panic!("expected a period, got {other:?}"),
        }
        for (k, pair) in tr.points.windows(2).enumerate() {
            assert_eq!((pair[0] + pair[1]) * 0.5, square().vertex(tr.support[k]));
        }

        let tr = orbit(&square(), c(2.0, 0.0), 16, 1e-9).unwrap();
        assert_eq!(
            tr.termination,
            Termination::SingularHit { step: 0, side: 1 }
        );
        assert_eq!(tr.points.len(), 1);

        // 2 + 0.5i maps onto the extension of the left side
        let tr = orbit(&square(), c(2.0, 0.5), 16, 1e-9).unwrap();
        assert_eq!(
            tr.termination,
            Termination::SingularHit { step: 1, side: 4 }
        );

        assert!(orbit(&square(), c(0.5, 0.5), 4, 1e-9).is_err());
    }

    #[test]
    fn fagnano_triangle() {
        let p = Polygon::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]).unwrap();
        let q = Polygon::from_xy(&[(-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]).unwrap();
        assert!(verify_fagnano(&p, &q, 1e-9));
        assert_eq!(find_fagnano(&p, 1e-9), Some(q.clone()));
        // clockwise copy of the same configuration
        let pr = p.reversed_shift(1).unwrap();
        let qr = dedal(&pr, 1e-9).unwrap();
        assert!(verify_fagnano(&pr, &qr, 1e-9));
        assert!(!verify_fagnano_with(&pr, &qr, 1e-9, Convention::Ccw));
    }

    #[test]
    fn fagnano_fails_for_reflex_dedal_pentagon() {
        let q = Polygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (2.0, 3.0), (0.0, 4.0)])
            .unwrap();
        let p = crate::dedal::develop(&q);
        assert!(p.is_convex(1e-9));
        assert!(!q.is_convex(1e-9));
        assert!(!verify_fagnano(&p, &q, 1e-9));
        assert_eq!(find_fagnano(&p, 1e-9), None);
    }

    #[test]
    fn fagnano_regular_pentagon() {
        let p = &basis_vector(5, 1).unwrap() * c(1.2, 0.3);
        let q = find_fagnano(&p, 1e-9).unwrap();
        assert!(q.is_convex(1e-9));
        assert!(crate::dedal::develop(&q).max_distance(&p) < 1e-12);
    }

    #[test]
    fn fagnano_rejects_interior_vertex() {
        // a dedal square whose first vertex sits at the table's center
        let fam = crate::dedal::dedal_even(&square(), 1e-9).unwrap();
        let q = fam.through_vertex(1, c(0.5, 0.5)).unwrap();
        assert!(crate::dedal::develop(&q).max_distance(&square()) < 1e-12);
        assert!(!verify_fagnano(&square(), &q, 1e-9));
    }
}
