//! Dense complex matrices of desk size and a Jacobi eigensolver for the
//! Hermitian products that arise from period matrices. Matrices here are a
//! handful of rows wide, so simplicity and determinism beat sophistication.

use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        CMatrix { rows: r, cols: c, data: rows.iter().flatten().copied().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> CMatrix {
        assert!(k <= self.rows && k <= self.cols);
        let mut m = CMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j));
            }
        }
        m
    }

    /// Conjugate transpose times self: the Hermitian Gram matrix.
    pub fn gram(&self) -> CMatrix {
        let mut g = CMatrix::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in 0..self.cols {
                let mut s = Complex64::ZERO;
                for k in 0..self.rows {
                    s += self.get(k, i).conj() * self.get(k, j);
                }
                g.set(i, j, s);
            }
        }
        g
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

pub(crate) fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn vec_dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues ascending with matching eigenvector
/// columns (`a = V diag(l) V^H`). Deterministic sweep order.
pub(crate) fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let g = apq.norm();
                if g <= 1e-300 {
                    continue;
                }
                let phi = apq / g;
                let app = m.get(p, p).re;
                let aqq = m.get(q, q).re;
                // Zeroing A'[p][q] requires t^2 - 2 tau t - 1 = 0; take the
                // smaller root for stability.
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Unitary U: identity except U[p][p]=c, U[p][q]=-s phi,
                // U[q][p]=s conj(phi), U[q][q]=c; apply m <- U^H m U.
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, mkp * c + mkq * s * phi.conj());
                    m.set(k, q, -mkp * s * phi + mkq * c);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, mpk * c + mqk * s * phi);
                    m.set(q, k, -mpk * s * phi.conj() + mqk * c);
                }
                // Re-hermitize the touched pair against drift.
                let d_pp = Complex64::new(m.get(p, p).re, 0.0);
                let d_qq = Complex64::new(m.get(q, q).re, 0.0);
                m.set(p, p, d_pp);
                m.set(q, q, d_qq);
                let avg = 0.5 * (m.get(p, q) + m.get(q, p).conj());
                m.set(p, q, avg);
                m.set(q, p, avg.conj());

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * c + vkq * s * phi.conj());
                    v.set(k, q, -vkp * s * phi + vkq * c);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let eigvals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigvecs = CMatrix::zeros(n, n);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..n {
            eigvecs.set(i, new_j, v.get(i, old_j));
        }
    }
    (eigvals, eigvecs)
}

/// Singular values of `m` (descending) and the right singular vectors, via
/// the Hermitian eigenproblem of the Gram matrix.
pub(crate) fn singular_values(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let (eigvals, eigvecs) = hermitian_eigen(&m.gram());
    let n = eigvals.len();
    let mut svals: Vec<f64> = eigvals.iter().map(|&l| l.max(0.0).sqrt()).collect();
    svals.reverse();
    let mut right = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            right.set(i, j, eigvecs.get(i, n - 1 - j));
        }
    }
    (svals, right)
}
