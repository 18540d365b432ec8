//! Small dense linear algebra: just enough for the matrices this crate
//! actually meets.
//!
//! Everything here is sized for excitation-sector Hamiltonians (dimension at
//! most 4) and atom-field density matrices (dimension `2 * (N + 3)` for a
//! Fock cutoff `N`, i.e. a few tens at most), so a cyclic Jacobi eigensolver
//! beats pulling in a full LAPACK binding. Matrices are stored row-major in
//! flat `Vec`s.

use num_complex::Complex64 as C64;

/// Maximum number of Jacobi sweeps before giving up. Quadratic convergence
/// means well-conditioned matrices of the sizes used here finish in under
/// ten sweeps; the cap only guards against pathological input.
const MAX_SWEEPS: usize = 64;

/// A real symmetric matrix, stored row-major.
///
/// Only the construction helpers enforce nothing; callers are expected to
/// fill both triangles consistently (`set_sym` does this for you).
#[derive(Debug, Clone, PartialEq)]
pub struct RealSymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealSymMatrix {
    /// A `dim x dim` zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Set both `(i, j)` and `(j, i)` to `value`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    /// The flat row-major storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest entry magnitude; zero for an empty matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `H c` for a complex vector `c`.
    pub fn mul_complex_vec(&self, c: &[C64]) -> Vec<C64> {
        assert_eq!(c.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j) * c[j])
                    .sum::<C64>()
            })
            .collect()
    }
}

/// Eigendecomposition of a real symmetric matrix.
///
/// `values` are sorted ascending. `vectors` holds the orthonormal
/// eigenvectors contiguously: `vectors[j * dim .. (j + 1) * dim]` is the
/// eigenvector belonging to `values[j]`.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub dim: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEig {
    /// The eigenvector belonging to `values[j]`.
    pub fn vector(&self, j: usize) -> &[f64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with an orthonormal set
/// of eigenvectors; the reconstruction `V diag(w) V^T` reproduces the input
/// to near machine precision for the matrix sizes used in this crate.
pub fn eigh(m: &RealSymMatrix) -> SymEig {
    let n = m.dim;
    let mut a = m.data.clone();
    // V starts as the identity and accumulates the rotations.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    if n > 1 {
        let scale = frobenius(&a).max(1.0);
        let target = 1e-14 * scale;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a, n) <= target {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    // Classic stable choice of the rotation angle: the root
                    // of t^2 + 2 t theta - 1 = 0 with |t| <= 1.
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + (theta * theta + 1.0).sqrt())
                    } else {
                        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;

                    // A <- J^T A J with the rotation acting on rows/columns
                    // p and q (J_pp = J_qq = c, J_pq = s, J_qp = -s).
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

    // Sort ascending, permuting the eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&j| a[j * n + j]).collect();
    let mut vectors = vec![0.0; n * n];
    for (slot, &j) in order.iter().enumerate() {
        for k in 0..n {
            vectors[slot * n + k] = v[k * n + j];
        }
    }
    SymEig {
        dim: n,
        values,
        vectors,
    }
}

fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// A dense complex square matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, value: C64) {
        self.data[i * self.dim + j] += value;
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * c`.
    pub fn mul_vec(&self, c: &[C64]) -> Vec<C64> {
        assert_eq!(c.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * c[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest entrywise deviation from the own conjugate transpose.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// Eigenvalues of a complex Hermitian matrix via its real embedding.
///
/// The Hermitian `H = R + iS` (with `R` symmetric and `S` antisymmetric)
/// embeds as the real symmetric `[[R, -S], [S, R]]`, whose spectrum is the
/// spectrum of `H` with every eigenvalue doubled. The returned vector has
/// length `2 * dim`, sorted ascending, **with each eigenvalue of the input
/// appearing twice**; callers summing over the spectrum must halve the
/// result.
pub fn hermitian_eigenvalues_doubled(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut emb = RealSymMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            emb.data[i * 2 * n + j] = z.re;
            emb.data[i * 2 * n + (j + n)] = -z.im;
            emb.data[(i + n) * 2 * n + j] = z.im;
            emb.data[(i + n) * 2 * n + (j + n)] = z.re;
        }
    }
    eigh(&emb).values
}
