use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default PSD tolerance relative to the largest matrix entry.
pub const PSD_TOL: f64 = 1e-9;

/// Hermitian matrix stored dense; entries\[i\]\[k\] = conj(entries\[k\]\[i\])
/// holds exactly by construction.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Build from a generator for the upper triangle (i <= k); the lower
    /// triangle is mirrored so Hermitian symmetry is exact.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in i..n {
                let v = if i == k {
                    Complex64::new(f(i, k).re, 0.0)
                } else {
                    f(i, k)
                };
                entries[i * n + k] = v;
                entries[k * n + i] = v.conj();
            }
        }
        HermitianMatrix { n, entries }
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::InvalidInput("matrix must be square".into()));
            }
        }
        for i in 0..n {
            for k in 0..n {
                if (rows[i][k] - rows[k][i].conj()).norm()
                    > 1e-12 * (1.0 + rows[i][k].norm())
                {
                    return Err(Error::InvalidInput(
                        "matrix is not Hermitian".into(),
                    ));
                }
            }
        }
        Ok(Self::from_fn(n, |i, k| rows[i][k]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize) -> Complex64 {
        self.entries[i * self.n + k]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues in ascending order. The Hermitian matrix M = X + jY is
    /// embedded as the real symmetric [[X, -Y], [Y, X]] (eigenvalues doubled)
    /// and solved by cyclic Jacobi rotations.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let (vals, _) = self.eigen_real_embedding(false);
        // each eigenvalue appears twice in the embedding
        vals.into_iter().step_by(2).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self
            .eigenvalues()
            .first()
            .expect("matrix dimension must be >= 1")
    }

    /// Minimum eigenvalue together with a corresponding complex eigenvector.
    pub fn min_eigenpair(&self) -> (f64, Vec<Complex64>) {
        let n = self.n;
        let (vals, vecs) = self.eigen_real_embedding(true);
        let vecs = vecs.expect("eigenvectors requested");
        let lam = vals[0];
        let col = &vecs[0];
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(col[i], col[n + i]))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for c in v.iter_mut() {
                *c /= norm;
            }
        }
        (lam, v)
    }

    fn eigen_real_embedding(&self, want_vectors: bool) -> (Vec<f64>, Option<Vec<Vec<f64>>>) {
        let n = self.n;
        let m = 2 * n;
        let mut a = vec![0.0_f64; m * m];
        for i in 0..n {
            for k in 0..n {
                let e = self.get(i, k);
                a[i * m + k] = e.re;
                a[i * m + (n + k)] = -e.im;
                a[(n + i) * m + k] = e.im;
                a[(n + i) * m + (n + k)] = e.re;
            }
        }
        let mut v = if want_vectors {
            let mut id = vec![0.0_f64; m * m];
            for i in 0..m {
                id[i * m + i] = 1.0;
            }
            Some(id)
        } else {
            None
        };
        jacobi_sweeps(&mut a, m, v.as_deref_mut());

        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| a[i * m + i].partial_cmp(&a[j * m + j]).unwrap());
        let vals: Vec<f64> = order.iter().map(|&i| a[i * m + i]).collect();
        let vecs = v.map(|v| {
            order
                .iter()
                .map(|&c| (0..m).map(|r| v[r * m + c]).collect())
                .collect()
        });
        (vals, vecs)
    }
}

/// Cyclic Jacobi eigenvalue sweeps on a dense symmetric matrix.
fn jacobi_sweeps(a: &mut [f64], n: usize, mut v: Option<&mut [f64]>) {
    let scale: f64 = (0..n).map(|i| a[i * n + i].abs()).fold(0.0, f64::max).max(
        (0..n * n).map(|k| a[k].abs()).fold(0.0, f64::max),
    );
    if scale == 0.0 {
        return;
    }
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                if let Some(v) = v.as_deref_mut() {
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
}

/// PSD test: true iff the minimum eigenvalue is >= -tol * max|entry|.
pub fn is_psd(m: &HermitianMatrix, tol: f64) -> bool {
    let scale = m.max_abs_entry();
    if scale == 0.0 {
        return true;
    }
    m.min_eigenvalue() >= -tol * scale
}
