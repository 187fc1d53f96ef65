//! Dense Pfaffians of real skew-symmetric matrices.
//!
//! The production path is Parlett–Reid tridiagonalization by congruence
//! with partial pivoting: unit lower-triangular congruences preserve the
//! Pfaffian, each row/column swap flips its sign, and the Pfaffian of the
//! resulting skew tridiagonal matrix is the product of its superdiagonal
//! entries. `Pf(A)² = det(A)` is kept as a regression identity in tests.

use crate::error::{Error, Result};

/// Square skew-symmetric matrix, enforced on ingest.
#[derive(Debug, Clone)]
pub struct SkewMatrix {
    pub n: usize,
    a: Vec<f64>,
}

impl SkewMatrix {
    /// Build from a row-major array, symmetrizing by (A - Aᵀ)/2.
    pub fn from_rows(n: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries, got {}",
                n * n,
                rows.len()
            )));
        }
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = 0.5 * (rows[i * n + j] - rows[j * n + i]);
            }
        }
        Ok(SkewMatrix { n, a })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }
}

/// Pfaffian by Parlett–Reid elimination with partial pivoting.
pub fn pfaffian(m: &SkewMatrix) -> Result<f64> {
    if m.n % 2 != 0 {
        return Err(Error::OddDimension(m.n));
    }
    let n = m.n;
    if n == 0 {
        return Ok(1.0);
    }
    let mut a = m.a.clone();
    let mut pf = 1.0f64;
    let idx = |i: usize, j: usize| i * n + j;
    for k in (0..n - 1).step_by(2) {
        // pivot: largest |A[i][k]| for i > k
        let mut p = k + 1;
        let mut best = a[idx(k + 1, k)].abs();
        for i in k + 2..n {
            let v = a[idx(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best < 1e-300 {
            // column k couples to nothing: the matrix is singular
            return Ok(0.0);
        }
        if p != k + 1 {
            // swap rows and columns p <-> k+1; each swap flips the sign once,
            // a simultaneous row+column swap flips it once in total
            for j in 0..n {
                a.swap(idx(k + 1, j), idx(p, j));
            }
            for i in 0..n {
                a.swap(idx(i, k + 1), idx(i, p));
            }
            pf = -pf;
        }
        let pivot = a[idx(k + 1, k)];
        pf *= a[idx(k, k + 1)];
        for i in k + 2..n {
            let mu = a[idx(i, k)] / pivot;
            if mu != 0.0 {
                // A <- E A Eᵀ with E = I - mu e_i e_{k+1}ᵀ (det 1)
                for j in 0..n {
                    a[idx(i, j)] -= mu * a[idx(k + 1, j)];
                }
                for r in 0..n {
                    a[idx(r, i)] -= mu * a[idx(r, k + 1)];
                }
            }
        }
    }
    Ok(pf)
}

/// Pfaffian by direct expansion along the first row; exponential cost,
/// used only for small matrices (oracle in the Fredholm series and tests).
pub fn pfaffian_expand(m: &SkewMatrix) -> Result<f64> {
    if m.n % 2 != 0 {
        return Err(Error::OddDimension(m.n));
    }
    fn go(n: usize, rows: &[usize], a: &SkewMatrix) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let i = rows[0];
        let mut total = 0.0;
        let mut sign = 1.0;
        for &j in rows.iter().skip(1) {
            let rest: Vec<usize> = rows[1..]
                .iter()
                .filter(|&&r| r != j)
                .copied()
                .collect();
            total += sign * a.get(i, j) * go(n - 2, &rest, a);
            sign = -sign;
        }
        total
    }
    let rows: Vec<usize> = (0..m.n).collect();
    Ok(go(m.n, &rows, m))
}
