#![allow(dead_code)]

use dedal::classify::Sign;
use dedal::sampling::{random_affinely_regular, random_regular, random_scale};
use dedal::spectral::{basis_vector, q_pow};
use dedal::{Complex64, Polygon};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn x(n: usize, i: usize) -> Polygon {
    basis_vector(n, i).unwrap()
}

pub fn combo(n: usize, terms: &[(usize, Complex64)]) -> Polygon {
    terms.iter().fold(
        Polygon::constant(n, c(0.0, 0.0)).unwrap(),
        |acc, &(i, a)| &acc + &(&x(n, i) * a),
    )
}

/// Gaussian elimination with partial pivoting.
pub fn det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut acc = c(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return c(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            acc = -acc;
        }
        acc *= m[col][col];
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let f = row[col] / pivot_row[col];
            for (r, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *r -= f * p;
            }
        }
    }
    acc
}

/// Column `k` is the developing map applied to the `k`-th unit polygon.
pub fn develop_matrix(n: usize) -> Vec<Vec<Complex64>> {
    let mut m = vec![vec![c(0.0, 0.0); n]; n];
    for k in 0..n {
        let mut e = vec![c(0.0, 0.0); n];
        e[k] = c(1.0, 0.0);
        let image = dedal::dedal::develop(&Polygon::new(e).unwrap());
        for (row, z) in image.vertices().iter().enumerate() {
            m[row][k] = *z;
        }
    }
    m
}

/// Even-n indices `j` (folded) for which some `k != n/2` has `n | j(2k-1)`.
pub fn case_ii_indices(n: usize) -> Vec<usize> {
    (1..n.div_ceil(2))
        .filter(|&j| (1..=n).any(|k| 2 * k != n && (j * (2 * k - 1)) % n == 0))
        .collect()
}

/// Every kind of polygon that is similar to its own dedal polygon, for
/// one `n`, with a short tag naming the kind.
pub fn in_list_samples<R: Rng>(
    rng: &mut R,
    n: usize,
    per_kind: usize,
) -> Vec<(&'static str, Polygon)> {
    let mut out = Vec::new();
    for _ in 0..per_kind {
        if n % 2 == 1 {
            for j in 1..=(n - 1) / 2 {
                out.push(("odd", random_affinely_regular(rng, n, j)));
            }
            continue;
        }
        for j in (1..n).filter(|&j| 2 * j != n) {
            out.push(("even_regular", random_regular(rng, n, j)));
        }
        for j in case_ii_indices(n) {
            out.push(("case_ii", random_affinely_regular(rng, n, j)));
        }
        for j in 1..n / 2 {
            let k = rng.gen_range(1..=n);
            let sign = if rng.gen::<bool>() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let bnj = random_scale(rng);
            let bj = q_pow(n, j as f64 * (k as f64 + 1.5)) * bnj * sign.value();
            out.push((
                "case_iii",
                combo(n, &[(j, bj), (n - j, bnj)]).translate(random_scale(rng)),
            ));
        }
    }
    out
}
