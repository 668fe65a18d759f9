//! Dense symmetric eigensolver by cyclic Jacobi rotations.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Stop once the off-diagonal Frobenius norm falls below this fraction of
/// the full Frobenius norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Row-major dense symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Wraps row-major data, which must be square and symmetric to within
    /// `1e-12` of its largest entry.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {n}x{n} matrix",
                data.len()
            )));
        }
        let m = Self { n, data };
        let scale = m.data.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if m.asymmetry() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidArgument("matrix is not symmetric".into()));
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Replaces the matrix by `(A + A^T) / 2`.
    pub fn symmetrize(&mut self) {
        for i in 0..self.n {
            for j in 0..i {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                self.set(i, j, v);
                self.set(j, i, v);
            }
        }
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self.get(i, j).powi(2);
                }
            }
        }
        acc.sqrt()
    }

    fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`; present when requested.
    pub vectors: Option<Vec<Vec<f64>>>,
    pub sweeps: usize,
}

/// All eigenvalues (and optionally eigenvectors) of a symmetric matrix.
pub fn jacobi_eigen(mut a: SymmetricMatrix, want_vectors: bool) -> Result<Eigen> {
    let n = a.n;
    let mut v = want_vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    });

    let frob = a.frobenius_norm();
    let mut sweeps = 0;
    while a.off_diagonal_norm() > OFF_DIAGONAL_TOLERANCE * frob {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.data[k * n + p];
                    let akq = a.data[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a.data[k * n + p] = new_p;
                    a.data[p * n + k] = new_p;
                    a.data[k * n + q] = new_q;
                    a.data[q * n + k] = new_q;
                }
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = v.map(|v| {
        order
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect()
    });
    Ok(Eigen {
        values,
        vectors,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let mut m = SymmetricMatrix::zeros(3);
        m.set(0, 0, 3.0);
        m.set(1, 1, -1.0);
        m.set(2, 2, 2.0);
        let e = jacobi_eigen(m, false).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0, 3.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymmetricMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = jacobi_eigen(m, false).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn reconstructs_random_matrices() {
        for (n, seed) in [(5, 1), (12, 2), (30, 3)] {
            let m = random_symmetric(n, seed);
            let e = jacobi_eigen(m.clone(), true).unwrap();
            let vecs = e.vectors.as_ref().unwrap();
            for (lambda, x) in e.values.iter().zip(vecs) {
                for i in 0..n {
                    let ax: f64 = (0..n).map(|j| m.get(i, j) * x[j]).sum();
                    assert!((ax - lambda * x[i]).abs() < 1e-10);
                }
            }
            // trace is preserved
            let tr: f64 = (0..n).map(|i| m.get(i, i)).sum();
            assert!((tr - e.values.iter().sum::<f64>()).abs() < 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn circulant_laplacian_spectrum() {
        // 1D periodic second difference: eigenvalues 2 - 2 cos(2 pi k / n).
        let n = 16;
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, 2.0);
            m.set(i, (i + 1) % n, -1.0);
            m.set((i + 1) % n, i, -1.0);
        }
        let e = jacobi_eigen(m, false).unwrap();
        let mut want: Vec<f64> = (0..n)
            .map(|k| 2.0 - 2.0 * (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in e.values.iter().zip(&want) {
            assert!((g - w).abs() < 1e-12, "{g} vs {w}");
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        assert!(SymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(SymmetricMatrix::from_row_major(2, vec![1.0, 2.0, 2.0]).is_err());
    }

    #[test]
    fn zero_matrix() {
        let e = jacobi_eigen(SymmetricMatrix::zeros(4), false).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
    }
}
