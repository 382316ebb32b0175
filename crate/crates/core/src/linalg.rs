//! Small dense complex matrices: hermitian diagonalization and the
//! symmetric (Löwdin) orthonormalization factors.
//!
//! The matrices that arise here are N x N with N = number of electrons
//! (a handful), plus moderate dense problems in the test oracles, so a
//! cyclic Jacobi eigensolver is accurate and entirely sufficient.

use crate::error::{CoreError, Result};
use crate::scalar::{c_one, c_re, c_zero, Scalar, C};

/// Maximum admissible overlap condition number before an orbital set is
/// declared degenerate.
const MAX_OVERLAP_COND: f64 = 1e12;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrixC<T: Scalar> {
    dim: usize,
    data: Vec<C<T>>,
}

impl<T: Scalar> SquareMatrixC<T> {
    /// Zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![c_zero(); dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = c_one();
        }
        m
    }

    /// Builds entry-wise from a closure over (row, col).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Matrix dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == c_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Entry-wise `self + scale * rhs`.
    pub fn add_scaled(&self, scale: C<T>, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Self::from_fn(self.dim, |i, j| self[(i, j)] + scale * rhs[(i, j)])
    }

    /// Hermitian part `(m + m^H)/2`. Exact to round-off.
    pub fn hermitian_part(&self) -> Self {
        let half = c_re(T::lit(0.5));
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Antihermitian part `(m - m^H)/2`. Exact to round-off.
    pub fn antihermitian_part(&self) -> Self {
        let half = c_re(T::lit(0.5));
        Self::from_fn(self.dim, |i, j| (self[(i, j)] - self[(j, i)].conj()) * half)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> T {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// Largest deviation from hermiticity, `max |m - m^H|`.
    pub fn hermiticity_error(&self) -> T {
        let mut dev = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Largest deviation of `self^H * self` from the identity.
    pub fn unitarity_error(&self) -> T {
        let g = self.adjoint().mul(self);
        let mut dev = T::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let target = if i == j { c_one() } else { c_zero() };
                dev = dev.max((g[(i, j)] - target).norm());
            }
        }
        dev
    }

    /// Hermitian eigendecomposition by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and the unitary matrix whose
    /// columns are the eigenvectors, so `m = V diag(e) V^H`. Each column's
    /// phase is fixed so its largest-magnitude component is real positive,
    /// which keeps results reproducible across runs.
    ///
    /// The input must be hermitian to `hermiticity_tol`; anything worse is
    /// reported as a symmetry violation.
    pub fn eigh(&self, hermiticity_tol: T) -> Result<(Vec<T>, SquareMatrixC<T>)> {
        let dev = self.hermiticity_error();
        if dev > hermiticity_tol {
            return Err(CoreError::NonHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
                tolerance: hermiticity_tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        let n = self.dim;
        let mut a = self.hermitian_part();
        let mut v = Self::identity(n);
        let scale = a.fro_norm().max(T::lit(1e-300));
        let stop = scale * T::eps() * T::lit(0.5);

        for _sweep in 0..60 {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off + a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let beta = a[(p, q)];
                    let babs = beta.norm();
                    if babs <= stop * T::lit(1e-2) / T::from_usize(n * n).unwrap() {
                        continue;
                    }
                    let alpha = a[(p, p)].re;
                    let gamma = a[(q, q)].re;
                    let w = beta / c_re(babs);
                    let tau = (gamma - alpha) / (babs + babs);
                    let sgn = if tau < T::zero() { -T::one() } else { T::one() };
                    let t = sgn / (tau.abs() + (T::one() + tau * tau).sqrt());
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    let cs = c_re(c);
                    let sw = c_re(s) * w;
                    let swc = c_re(s) * w.conj();
                    // columns: B = A * J
                    for r in 0..n {
                        let arp = a[(r, p)];
                        let arq = a[(r, q)];
                        a[(r, p)] = arp * cs - arq * swc;
                        a[(r, q)] = arp * sw + arq * cs;
                    }
                    // rows: A' = J^H * B
                    for r in 0..n {
                        let apr = a[(p, r)];
                        let aqr = a[(q, r)];
                        a[(p, r)] = apr * cs - aqr * sw;
                        a[(q, r)] = apr * swc + aqr * cs;
                    }
                    // accumulate eigenvectors: V = V * J
                    for r in 0..n {
                        let vrp = v[(r, p)];
                        let vrq = v[(r, q)];
                        v[(r, p)] = vrp * cs - vrq * swc;
                        v[(r, q)] = vrp * sw + vrq * cs;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[(i, i)]
                .re
                .partial_cmp(&a[(j, j)].re)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        let eigenvalues: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();
        let mut vectors = Self::zeros(n);
        for (new_col, &old_col) in order.iter().enumerate() {
            // phase convention: largest component real positive
            let mut best = 0usize;
            let mut best_mag = T::zero();
            for r in 0..n {
                let mag = v[(r, old_col)].norm();
                if mag > best_mag {
                    best_mag = mag;
                    best = r;
                }
            }
            let pivot = v[(best, old_col)];
            let phase = if best_mag > T::zero() {
                pivot.conj() / c_re(best_mag)
            } else {
                c_one()
            };
            for r in 0..n {
                vectors[(r, new_col)] = v[(r, old_col)] * phase;
            }
        }
        Ok((eigenvalues, vectors))
    }

    /// Inverse square root of a hermitian positive-definite matrix.
    ///
    /// This is the Löwdin factor `S^{-1/2}`; fails with a degenerate-set
    /// error when the condition number exceeds 1e12.
    pub fn inverse_sqrt(&self, hermiticity_tol: T) -> Result<SquareMatrixC<T>> {
        let (vals, vecs) = self.eigh(hermiticity_tol)?;
        let max = vals.iter().fold(T::zero(), |a, &b| a.max(b));
        let min = vals.iter().fold(max, |a, &b| a.min(b));
        let cond = if min > T::zero() {
            (max / min).to_f64().unwrap_or(f64::INFINITY)
        } else {
            f64::INFINITY
        };
        if !(cond < MAX_OVERLAP_COND) {
            return Err(CoreError::DegenerateSet { cond });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = c_zero();
                for k in 0..n {
                    let w = c_re(T::one() / vals[k].sqrt());
                    acc = acc + vecs[(i, k)] * w * vecs[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Closest unitary matrix in the least-squares sense: `A (A^H A)^{-1/2}`.
    pub fn polar_unitary(&self) -> Result<SquareMatrixC<T>> {
        let s = self.adjoint().mul(self);
        let factor = s.inverse_sqrt(s.fro_norm() * T::lit(1e-12) + T::lit(1e-300))?;
        Ok(self.mul(&factor))
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for SquareMatrixC<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for SquareMatrixC<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.dim + j]
    }
}

/// Unitary coefficient matrix linking two orbital sets.
///
/// Entry `(alpha, i)` is the coefficient of localizing orbital `alpha` in
/// propagating orbital `i`.
#[derive(Clone, Debug)]
pub struct UnitaryMap<T: Scalar> {
    matrix: SquareMatrixC<T>,
}

impl<T: Scalar> UnitaryMap<T> {
    /// Identity map.
    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: SquareMatrixC::identity(dim),
        }
    }

    /// Wraps a matrix after checking unitarity to 1e-8.
    pub fn new(matrix: SquareMatrixC<T>) -> Result<Self> {
        let dev = matrix.unitarity_error();
        if dev > T::lit(1e-8) {
            return Err(CoreError::Domain(format!(
                "coefficient matrix is not unitary: deviation {:e}",
                dev.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self { matrix })
    }

    /// Re-unitarizes a near-unitary matrix by its polar factor.
    pub fn from_polar(matrix: &SquareMatrixC<T>) -> Result<Self> {
        Ok(Self {
            matrix: matrix.polar_unitary()?,
        })
    }

    /// The underlying coefficient matrix.
    #[inline]
    pub fn matrix(&self) -> &SquareMatrixC<T> {
        &self.matrix
    }

    /// Map dimension.
    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `max |V^H V - I|`.
    pub fn unitarity_error(&self) -> T {
        self.matrix.unitarity_error()
    }

    /// Adjoint map.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    type M = SquareMatrixC<f64>;

    fn c(re: f64, im: f64) -> C<f64> {
        C::new(re, im)
    }

    #[test]
    fn diagonal_matrix_eigenvalues_sorted() {
        let mut m = M::zeros(2);
        m[(0, 0)] = c(2.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        let (vals, vecs) = m.eigh(1e-8).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 2.0, epsilon = 1e-14);
        // eigenvectors form a permutation
        assert_abs_diff_eq!(vecs[(1, 0)].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vecs[(0, 1)].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let mut m = M::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(1.0, 0.0);
        let (vals, _) = m.eigh(1e-8).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-13);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        // fixed pseudo-random hermitian 5x5
        let n = 5;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rnd = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        };
        let mut m = M::zeros(n);
        for i in 0..n {
            for j in i..n {
                let z = if i == j {
                    c(rnd(), 0.0)
                } else {
                    c(rnd(), rnd())
                };
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let (vals, vecs) = m.eigh(1e-8).unwrap();
        assert!(vecs.unitarity_error() < 1e-10);
        // reconstruction ||V e V^H - m|| < 1e-10
        let mut rec = M::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = c(0.0, 0.0);
                for k in 0..n {
                    acc += vecs[(i, k)] * c_re(vals[k]) * vecs[(j, k)].conj();
                }
                rec[(i, j)] = acc;
            }
        }
        let diff = rec.add_scaled(c(-1.0, 0.0), &m);
        assert!(diff.max_abs() < 1e-10);
        // ascending
        for k in 1..n {
            assert!(vals[k] >= vals[k - 1]);
        }
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let mut m = M::zeros(2);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 0)] = c(0.5, 0.0);
        assert!(matches!(m.eigh(1e-8), Err(CoreError::NonHermitian { .. })));
    }

    #[test]
    fn hermitian_split_is_exact() {
        let m = M::from_fn(3, |i, j| c((i + 2 * j) as f64, (i as f64) - (j as f64)));
        let h = m.hermitian_part();
        let k = m.antihermitian_part();
        let sum = h.add_scaled(c(1.0, 0.0), &k);
        let diff = sum.add_scaled(c(-1.0, 0.0), &m);
        assert_eq!(diff.max_abs(), 0.0);
        assert!(h.hermiticity_error() < 1e-15);
        let kh = k.adjoint().add_scaled(c(1.0, 0.0), &k);
        assert!(kh.max_abs() < 1e-15);
    }

    #[test]
    fn inverse_sqrt_degenerate_rejected() {
        // rank-deficient overlap
        let mut s = M::zeros(2);
        s[(0, 0)] = c(1.0, 0.0);
        s[(0, 1)] = c(1.0, 0.0);
        s[(1, 0)] = c(1.0, 0.0);
        s[(1, 1)] = c(1.0, 0.0);
        assert!(matches!(
            s.inverse_sqrt(1e-8),
            Err(CoreError::DegenerateSet { .. })
        ));
    }

    #[test]
    fn polar_factor_is_unitary_and_close() {
        let mut m = M::identity(3);
        m[(0, 1)] = c(0.05, -0.02);
        m[(2, 0)] = c(-0.03, 0.01);
        let u = m.polar_unitary().unwrap();
        assert!(u.unitarity_error() < 1e-12);
        let diff = u.add_scaled(c(-1.0, 0.0), &m);
        assert!(diff.max_abs() < 0.1);
    }
}
