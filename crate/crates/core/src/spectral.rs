//! Spectral decomposition of real symmetric matrices into distinct
//! eigenvalues and orthogonal projectors, with functional calculus and
//! eigenvalue supports.
//!
//! A decomposition `M = Σ λ_i E_i` carries the distinct eigenvalues in
//! descending order together with their projectors, so polynomials of `M`
//! reduce to scalar evaluations: `p(M) = Σ p(λ_i) E_i`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Tolerated asymmetry of the input matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Default gap threshold for merging numerically equal eigenvalues.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Default threshold on the projector column norm for support membership.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-9;

/// Distinct eigenvalues (descending) with their orthogonal projectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<DMatrix<f64>>,
    multiplicities: Vec<usize>,
    dim: usize,
}

/// Decompose a symmetric matrix, merging eigenvalues whose consecutive
/// gaps are at most `cluster_tol` into a single distinct eigenvalue whose
/// projector sums the corresponding rank-1 projectors.
pub fn decompose(matrix: &DMatrix<f64>, cluster_tol: f64) -> Result<SpectralDecomposition> {
    let (rows, cols) = matrix.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let max_dev = (matrix - matrix.transpose())
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if max_dev > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { max_dev });
    }

    let (values, vectors) = jacobi_eigen(matrix);
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap());

    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut multiplicities = Vec::new();
    let mut cluster: Vec<usize> = Vec::new();
    let mut flush = |cluster: &mut Vec<usize>| {
        if cluster.is_empty() {
            return;
        }
        let mean = cluster.iter().map(|&k| values[k]).sum::<f64>() / cluster.len() as f64;
        let mut projector = DMatrix::zeros(rows, rows);
        for &k in cluster.iter() {
            let v = vectors.column(k);
            projector += v * v.transpose();
        }
        eigenvalues.push(mean);
        projectors.push(projector);
        multiplicities.push(cluster.len());
        cluster.clear();
    };
    for &k in &order {
        if let Some(&last) = cluster.last() {
            if values[last] - values[k] > cluster_tol {
                flush(&mut cluster);
            }
        }
        cluster.push(k);
    }
    flush(&mut cluster);

    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
        multiplicities,
        dim: rows,
    })
}

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi
/// rotations: returns (eigenvalues, orthonormal eigenvector columns) with
/// `M = V diag(λ) Vᵀ`.
///
/// Jacobi is the method of choice at desk scale: quadratically convergent,
/// unconditionally stable, and it keeps degenerate eigenspaces orthogonal
/// to machine precision.
fn jacobi_eigen(matrix: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = matrix.nrows();
    let mut a = matrix.clone();
    let mut vectors = DMatrix::<f64>::identity(n, n);
    let scale = matrix.iter().fold(0.0f64, |acc, &v| acc + v * v).sqrt();
    let threshold = (scale * 1e-15).max(f64::MIN_POSITIVE);

    for _sweep in 0..64 {
        let off_norm = {
            let mut sum = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    sum += a[(p, q)] * a[(p, q)];
                }
            }
            (2.0 * sum).sqrt()
        };
        if off_norm <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.abs() <= threshold / (n as f64) {
                    continue;
                }
                // Rotation angle zeroing a[p, q]; smaller-root tangent for
                // stability.
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let tangent = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cosine = 1.0 / (tangent * tangent + 1.0).sqrt();
                let sine = tangent * cosine;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = cosine * akp - sine * akq;
                    a[(k, q)] = sine * akp + cosine * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = cosine * apk - sine * aqk;
                    a[(q, k)] = sine * apk + cosine * aqk;
                }
                for k in 0..n {
                    let vkp = vectors[(k, p)];
                    let vkq = vectors[(k, q)];
                    vectors[(k, p)] = cosine * vkp - sine * vkq;
                    vectors[(k, q)] = sine * vkp + cosine * vkq;
                }
            }
        }
    }
    let values = (0..n).map(|k| a[(k, k)]).collect();
    (values, vectors)
}

impl SpectralDecomposition {
    /// Assemble a decomposition from known eigenvalues (descending) and
    /// projectors, bypassing the numeric eigensolver. Used by closed-form
    /// constructions.
    pub fn from_parts(
        eigenvalues: Vec<f64>,
        projectors: Vec<DMatrix<f64>>,
    ) -> SpectralDecomposition {
        assert_eq!(eigenvalues.len(), projectors.len());
        assert!(
            !projectors.is_empty(),
            "decomposition needs at least one eigenvalue"
        );
        assert!(
            eigenvalues.windows(2).all(|w| w[0] > w[1]),
            "eigenvalues must be strictly descending"
        );
        let dim = projectors[0].nrows();
        let multiplicities = projectors
            .iter()
            .map(|e| {
                assert_eq!(e.shape(), (dim, dim));
                e.trace().round() as usize
            })
            .collect();
        SpectralDecomposition {
            eigenvalues,
            projectors,
            multiplicities,
            dim,
        }
    }

    /// Distinct eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[DMatrix<f64>] {
        &self.projectors
    }

    pub fn projector(&self, i: usize) -> &DMatrix<f64> {
        &self.projectors[i]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn distinct_count(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Functional calculus: `p(M) = Σ p(λ_i) E_i`.
    pub fn poly_apply(&self, p: impl Fn(f64) -> f64) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for (value, projector) in self.eigenvalues.iter().zip(&self.projectors) {
            out += projector * p(*value);
        }
        out
    }

    /// Functional calculus for a polynomial given by coefficients
    /// `c_0 + c_1 x + c_2 x² + ...`.
    pub fn poly_apply_coeffs(&self, coeffs: &[f64]) -> DMatrix<f64> {
        self.poly_apply(|x| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c))
    }

    /// `Σ λ_i E_i`, which reproduces the decomposed matrix.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        self.poly_apply(|x| x)
    }

    /// Single matrix entry of `p(M)` without forming the whole matrix.
    pub fn poly_entry(&self, row: usize, col: usize, p: impl Fn(f64) -> f64) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .map(|(value, projector)| p(*value) * projector[(row, col)])
            .sum()
    }

    /// The eigenvalue support of the unit vector `e_x`: eigenvalues whose
    /// projector does not annihilate it, i.e. `‖E_i e_x‖ > tol`.
    ///
    /// Since the projectors are symmetric idempotents, `‖E_i e_x‖²` is the
    /// diagonal entry `E_i[x, x]`, so no products are formed.
    pub fn support(&self, x: usize, tol: f64) -> Result<Vec<f64>> {
        Ok(self
            .support_indices(x, tol)?
            .into_iter()
            .map(|i| self.eigenvalues[i])
            .collect())
    }

    /// Indices (into `eigenvalues()`) of the support of `e_x`.
    pub fn support_indices(&self, x: usize, tol: f64) -> Result<Vec<usize>> {
        if x >= self.dim {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.dim,
            });
        }
        Ok((0..self.projectors.len())
            .filter(|&i| self.projectors[i][(x, x)].max(0.0).sqrt() > tol)
            .collect())
    }
}
