mod common;

use common::{c, det, develop_matrix, x};
use dedal::sampling::{random_polygon, random_scale, trial_rng};
use dedal::spectral::{class_distance, decompose, project_class, reconstruct, root_of_unity};
use dedal::{Complex64, Polygon};
use proptest::prelude::*;
use rand::Rng;

fn polygon(min_n: usize, max_n: usize) -> impl Strategy<Value = Polygon> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), min_n..=max_n)
        .prop_map(|pts| Polygon::from_xy(&pts).unwrap())
}

#[test]
fn basis_is_orthogonal() {
    for n in 3..=16 {
        for i in 0..n {
            for k in 0..n {
                let (a, b) = (x(n, i), x(n, k));
                let hermitian: Complex64 = a
                    .vertices()
                    .iter()
                    .zip(b.vertices())
                    .map(|(u, v)| u * v.conj())
                    .sum();
                let expect = if i == k { n as f64 } else { 0.0 };
                assert!(
                    (hermitian - expect).norm() <= 1e-12,
                    "n = {n}, i = {i}, k = {k}"
                );
            }
        }
        if n % 2 == 0 {
            let half = x(n, n / 2);
            for i in (0..n).filter(|&i| 2 * i != n) {
                let bilinear: Complex64 = x(n, i)
                    .vertices()
                    .iter()
                    .zip(half.vertices())
                    .map(|(u, v)| u * v)
                    .sum();
                assert!(bilinear.norm() <= 1e-12, "n = {n}, i = {i}");
            }
        }
    }
}

#[test]
fn characteristic_polynomial_matches_determinant() {
    let mut rng = trial_rng(9, 0);
    for n in 3..=10 {
        let m = develop_matrix(n);
        for _ in 0..20 {
            let s = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let shifted: Vec<Vec<Complex64>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|k| if r == k { m[r][k] - s } else { m[r][k] })
                        .collect()
                })
                .collect();
            let got = det(shifted);
            let one = c(1.0, 0.0);
            let expect = (one - s * 2.0).powu(n as u32) - (-one).powu(n as u32);
            let expect = expect / c(2.0, 0.0).powu(n as u32);
            assert!(
                (got - expect).norm() <= 1e-9 * (1.0 + expect.norm()),
                "n = {n}, x = {s}"
            );
        }
    }
}

#[test]
fn projective_class_ignores_scale() {
    let mut rng = trial_rng(10, 0);
    for t in 0..1000 {
        let n = 3 + t % 10;
        let p = random_polygon(&mut rng, n);
        let s = random_scale(&mut rng);
        let d = class_distance(
            &project_class(&p).unwrap(),
            &project_class(&(&p * s)).unwrap(),
        )
        .unwrap();
        assert!(d < 1e-10);
    }
}

#[test]
fn class_distance_is_a_metric() {
    let mut rng = trial_rng(11, 0);
    for t in 0..1000 {
        let n = 3 + t % 8;
        let [a, b, cc] = [0, 1, 2].map(|_| project_class(&random_polygon(&mut rng, n)).unwrap());
        let ab = class_distance(&a, &b).unwrap();
        let ba = class_distance(&b, &a).unwrap();
        let bc = class_distance(&b, &cc).unwrap();
        let ac = class_distance(&a, &cc).unwrap();
        assert!(ab >= 0.0 && (ab - ba).abs() <= 1e-12);
        assert!(ac <= ab + bc + 1e-12);
        assert!(class_distance(&a, &a).unwrap() <= 1e-12);
        assert!(ab > 1e-6);
    }
}

proptest! {
    #[test]
    fn decompose_round_trips(p in polygon(3, 32)) {
        let back = reconstruct(&decompose(&p));
        prop_assert!(back.max_distance(&p) <= 1e-9);
        let a = decompose(&p);
        let again = decompose(&reconstruct(&a));
        let err = a.coeffs().iter().zip(again.coeffs()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-9);
    }

    #[test]
    fn shift_acts_diagonally(p in polygon(3, 12), k in 1usize..40) {
        let n = p.n();
        let k = k % n + 1;
        let a = decompose(&p);
        let shifted = decompose(&p.cyclic_shift(k).unwrap());
        let reversed = decompose(&p.reversed_shift(k).unwrap());
        // vertex form (w_k, w_{k-1}, ...) is the coefficient form with k' = n - k
        let kr = n - k;
        for i in 0..n {
            let fwd = a.coeffs()[i] * root_of_unity(n, (i * (k - 1)) as i64);
            let back = a.coeffs()[(n - i) % n] * root_of_unity(n, (i * (kr + 1)) as i64);
            prop_assert!((shifted.coeffs()[i] - fwd).norm() <= 1e-9);
            prop_assert!((reversed.coeffs()[i] - back).norm() <= 1e-9);
        }
        prop_assert!(a.shifted(k).coeffs().iter().zip(shifted.coeffs()).all(|(u, v)| (u - v).norm() <= 1e-9));
        prop_assert!(a.reversed(k).coeffs().iter().zip(reversed.coeffs()).all(|(u, v)| (u - v).norm() <= 1e-9));
    }

    #[test]
    fn distance_zero_only_within_a_class(p in polygon(3, 10), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let s = c(re, im);
        prop_assume!(s.norm() > 0.1);
        let a = project_class(&p).unwrap();
        prop_assert!(class_distance(&a, &project_class(&(&p * s)).unwrap()).unwrap() < 1e-9);
        let other = p.cyclic_shift(2).unwrap();
        let b = project_class(&other).unwrap();
        let d = class_distance(&a, &b).unwrap();
        let same = dedal::polygon::star_similar(&other, &p, 1e-7).unwrap().is_some();
        prop_assert_eq!(d < 1e-9, same);
    }
}
