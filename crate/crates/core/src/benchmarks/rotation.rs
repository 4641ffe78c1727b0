use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Random orthogonal `dim x dim` matrix (row-major), deterministic per seed.
///
/// A standard-normal matrix is filled row by row and its columns are
/// orthonormalized with two passes of modified Gram-Schmidt. This is the Q
/// factor of the QR decomposition with a positive diagonal in R.
pub fn random_orthogonal(dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<Vec<f64>> = (0..dim)
        .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    // columns of `a`
    let mut cols: Vec<Vec<f64>> = (0..dim).map(|j| (0..dim).map(|i| a[i][j]).collect()).collect();
    for k in 0..dim {
        for _pass in 0..2 {
            for p in 0..k {
                let proj = dot(&cols[p], &cols[k]);
                let (done, rest) = cols.split_at_mut(k);
                for (v, q) in rest[0].iter_mut().zip(&done[p]) {
                    *v -= proj * q;
                }
            }
        }
        let norm = dot(&cols[k], &cols[k]).sqrt();
        for v in cols[k].iter_mut() {
            *v /= norm;
        }
    }
    (0..dim).map(|i| (0..dim).map(|j| cols[j][i]).collect()).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `max |(Q^T Q - I)_ij|`.
pub fn orthogonality_error(q: &[Vec<f64>]) -> f64 {
    let n = q.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let g: f64 = (0..n).map(|k| q[k][i] * q[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    worst
}

pub fn mat_vec(q: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    q.iter().map(|row| dot(row, x)).collect()
}
