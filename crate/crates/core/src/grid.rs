//! Uniform 1D grid with spectral derivatives.
//!
//! The grid is periodic: derivatives and the kinetic operator are evaluated
//! by fast Fourier transform, so `n_points` must be a power of two. Boxes
//! are chosen large enough that bound densities decay below 1e-10 at the
//! edges, which makes the periodic images irrelevant for bound-state work.
//! All quantities are in Hartree atomic units (lengths in bohr).

use crate::error::{CoreError, Result};
use crate::scalar::{c_re, c_zero, Scalar, C};
use rustfft::{Fft, FftPlanner};
use std::fmt;
use std::sync::Arc;

/// Uniform spatial mesh with precomputed spectral metadata.
///
/// Holds the FFT plans for the grid size and for the zero-padded (2n) size
/// used by aperiodic convolutions, the coordinates, and the wave numbers of
/// the kinetic operator.
#[derive(Clone)]
pub struct Grid1D<T: Scalar> {
    n: usize,
    dx: T,
    origin: T,
    x: Vec<T>,
    wave_numbers: Vec<T>,
    fwd: Arc<dyn Fft<T>>,
    inv: Arc<dyn Fft<T>>,
    pad_fwd: Arc<dyn Fft<T>>,
    pad_inv: Arc<dyn Fft<T>>,
}

impl<T: Scalar> fmt::Debug for Grid1D<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid1D")
            .field("n", &self.n)
            .field("dx", &self.dx)
            .field("origin", &self.origin)
            .finish()
    }
}

impl<T: Scalar> Grid1D<T> {
    /// Builds a grid of `n` points with spacing `dx`, symmetric about x = 0.
    pub fn new(n: usize, dx: T) -> Result<Self> {
        let half = T::lit(0.5);
        let origin = -T::from_usize(n - 1).unwrap() * dx * half;
        Self::with_origin(n, dx, origin)
    }

    /// Builds a grid with an explicit leftmost coordinate.
    pub fn with_origin(n: usize, dx: T, origin: T) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(CoreError::Domain(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if !(dx > T::zero()) || !dx.is_finite() {
            return Err(CoreError::Domain("grid spacing must be positive".into()));
        }
        let x: Vec<T> = (0..n)
            .map(|j| origin + T::from_usize(j).unwrap() * dx)
            .collect();
        // FFT layout: non-negative frequencies first, then negative.
        let two_pi = T::PI() + T::PI();
        let dk = two_pi / (T::from_usize(n).unwrap() * dx);
        let wave_numbers: Vec<T> = (0..n)
            .map(|j| {
                let m = if j <= n / 2 {
                    T::from_usize(j).unwrap()
                } else {
                    -T::from_usize(n - j).unwrap()
                };
                m * dk
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            dx,
            origin,
            x,
            wave_numbers,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
            pad_fwd: planner.plan_fft_forward(2 * n),
            pad_inv: planner.plan_fft_inverse(2 * n),
        })
    }

    /// Number of grid points.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// True when the grid is empty (never, by construction).
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Grid spacing in bohr.
    #[inline]
    pub fn spacing(&self) -> T {
        self.dx
    }

    /// Leftmost coordinate.
    #[inline]
    pub fn origin(&self) -> T {
        self.origin
    }

    /// Coordinates of all points.
    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.x
    }

    /// Spectral frequencies in FFT layout.
    #[inline]
    pub fn wave_numbers(&self) -> &[T] {
        &self.wave_numbers
    }

    /// Box length `n * dx`.
    #[inline]
    pub fn box_length(&self) -> T {
        T::from_usize(self.n).unwrap() * self.dx
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(CoreError::DimensionMismatch {
                expected: self.n,
                got: len,
            });
        }
        Ok(())
    }

    /// Discrete inner product `sum_k conj(a_k) b_k dx`.
    ///
    /// Conjugate-symmetric: `inner(a, b) = conj(inner(b, a))`.
    pub fn inner(&self, a: &[C<T>], b: &[C<T>]) -> Result<C<T>> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let mut acc = c_zero::<T>();
        for (&av, &bv) in a.iter().zip(b) {
            acc = acc + av.conj() * bv;
        }
        Ok(acc * c_re(self.dx))
    }

    /// Squared L2 norm with the grid weight.
    pub fn norm_sq(&self, a: &[C<T>]) -> T {
        let mut acc = T::zero();
        for &av in a {
            acc = acc + av.norm_sqr();
        }
        acc * self.dx
    }

    /// L2 norm with the grid weight.
    pub fn norm(&self, a: &[C<T>]) -> T {
        self.norm_sq(a).sqrt()
    }

    /// Trapezoid-free quadrature of a real field: `sum_k f_k dx`.
    pub fn integrate(&self, f: &[T]) -> T {
        let mut acc = T::zero();
        for &v in f {
            acc = acc + v;
        }
        acc * self.dx
    }

    /// Forward FFT in place (unnormalized).
    #[inline]
    pub fn fft_forward(&self, buf: &mut [C<T>]) {
        self.fwd.process(buf);
    }

    /// Inverse FFT in place, including the 1/n normalization.
    pub fn fft_inverse(&self, buf: &mut [C<T>]) {
        self.inv.process(buf);
        let scale = c_re(T::one() / T::from_usize(self.n).unwrap());
        for v in buf.iter_mut() {
            *v = *v * scale;
        }
    }

    /// Forward FFT of length 2n for padded convolutions.
    #[inline]
    pub(crate) fn fft_forward_padded(&self, buf: &mut [C<T>]) {
        self.pad_fwd.process(buf);
    }

    /// Inverse FFT of length 2n, normalized.
    pub(crate) fn fft_inverse_padded(&self, buf: &mut [C<T>]) {
        self.pad_inv.process(buf);
        let scale = c_re(T::one() / T::from_usize(2 * self.n).unwrap());
        for v in buf.iter_mut() {
            *v = *v * scale;
        }
    }

    /// Applies a real multiplier in k-space: `f <- IFFT(mult .* FFT(f))`.
    fn apply_spectral_multiplier(&self, buf: &mut [C<T>], mult: impl Fn(usize, T) -> C<T>) {
        self.fwd.process(buf);
        for (j, v) in buf.iter_mut().enumerate() {
            *v = *v * mult(j, self.wave_numbers[j]);
        }
        self.fft_inverse(buf);
    }

    /// Kinetic operator `-(1/2) d^2/dx^2` applied spectrally, in place.
    pub fn kinetic_in_place(&self, buf: &mut [C<T>]) -> Result<()> {
        self.check_len(buf.len())?;
        let half = T::lit(0.5);
        self.apply_spectral_multiplier(buf, |_, k| c_re(k * k * half));
        Ok(())
    }

    /// Kinetic operator on a fresh copy.
    pub fn kinetic(&self, field: &[C<T>]) -> Result<Vec<C<T>>> {
        let mut out = field.to_vec();
        self.kinetic_in_place(&mut out)?;
        Ok(out)
    }

    /// Inverse shifted kinetic `(T + e_damp)^{-1}`, the damped-gradient
    /// preconditioner, applied spectrally in place.
    pub fn inverse_kinetic_shifted_in_place(&self, e_damp: T, buf: &mut [C<T>]) -> Result<()> {
        self.check_len(buf.len())?;
        if !(e_damp > T::zero()) {
            return Err(CoreError::Domain("damping energy must be positive".into()));
        }
        let half = T::lit(0.5);
        self.apply_spectral_multiplier(buf, |_, k| c_re(T::one() / (k * k * half + e_damp)));
        Ok(())
    }

    /// First spectral derivative of a complex field, in place.
    ///
    /// The Nyquist mode is zeroed: it carries no usable sign information
    /// for an odd-order derivative on an even-length grid.
    pub fn derivative_in_place(&self, buf: &mut [C<T>]) -> Result<()> {
        self.check_len(buf.len())?;
        let nyquist = self.n / 2;
        self.apply_spectral_multiplier(buf, |j, k| {
            if j == nyquist {
                c_zero()
            } else {
                C::new(T::zero(), k)
            }
        });
        Ok(())
    }

    /// First spectral derivative of a real field.
    pub fn derivative_real(&self, field: &[T]) -> Result<Vec<T>> {
        self.check_len(field.len())?;
        let mut buf: Vec<C<T>> = field.iter().map(|&v| c_re(v)).collect();
        self.derivative_in_place(&mut buf)?;
        Ok(buf.into_iter().map(|v| v.re).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn gaussian(g: &Grid1D<f64>, sigma: f64) -> Vec<C<f64>> {
        let norm = 1.0 / (std::f64::consts::PI * sigma * sigma).powf(0.25);
        g.coords()
            .iter()
            .map(|&x| c_re(norm * (-x * x / (2.0 * sigma * sigma)).exp()))
            .collect()
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid1D::<f64>::new(7, 0.1).is_err());
        assert!(Grid1D::<f64>::new(96, 0.1).is_err());
        assert!(Grid1D::<f64>::new(64, -0.1).is_err());
        assert!(Grid1D::<f64>::new(64, 0.1).is_ok());
    }

    #[test]
    fn grid_symmetric_about_zero() {
        let g = Grid1D::<f64>::new(64, 0.25).unwrap();
        let x = g.coords();
        assert_abs_diff_eq!(x[0] + x[63], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(g.box_length(), 16.0, epsilon = 1e-14);
    }

    #[test]
    fn normalized_gaussian_has_unit_norm() {
        let g = Grid1D::<f64>::new(256, 0.2).unwrap();
        let psi = gaussian(&g, 1.3);
        let ip = g.inner(&psi, &psi).unwrap();
        assert_abs_diff_eq!(ip.re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ip.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn even_odd_orthogonal() {
        let g = Grid1D::<f64>::new(128, 0.2).unwrap();
        let even: Vec<C<f64>> = g.coords().iter().map(|&x| c_re((-x * x).exp())).collect();
        let odd: Vec<C<f64>> = g
            .coords()
            .iter()
            .map(|&x| c_re(x * (-x * x).exp()))
            .collect();
        let ip = g.inner(&even, &odd).unwrap();
        assert!(ip.norm() < 1e-12);
    }

    #[test]
    fn inner_product_matches_direct_sum() {
        // random-ish deterministic fields on n = 64
        let g = Grid1D::<f64>::new(64, 0.17).unwrap();
        let a: Vec<C<f64>> = (0..64)
            .map(|j| C::new((j as f64 * 0.37).sin(), (j as f64 * 0.11).cos()))
            .collect();
        let b: Vec<C<f64>> = (0..64)
            .map(|j| C::new((j as f64 * 0.23).cos(), (j as f64 * 0.59).sin()))
            .collect();
        let mut direct = C::new(0.0, 0.0);
        for j in 0..64 {
            direct += a[j].conj() * b[j];
        }
        direct *= 0.17;
        let ip = g.inner(&a, &b).unwrap();
        assert!((ip - direct).norm() < 1e-13);
        let flipped = g.inner(&b, &a).unwrap();
        assert!((ip - flipped.conj()).norm() < 1e-13);
    }

    #[test]
    fn kinetic_plane_wave_eigenvalue() {
        let g = Grid1D::<f64>::new(128, 0.25).unwrap();
        // commensurate wave number: 6 full periods in the box
        let k = 2.0 * std::f64::consts::PI * 6.0 / g.box_length();
        let psi: Vec<C<f64>> = g
            .coords()
            .iter()
            .map(|&x| C::new(0.0, k * x).exp())
            .collect();
        let tpsi = g.kinetic(&psi).unwrap();
        let expect = 0.5 * k * k;
        for (t, p) in tpsi.iter().zip(&psi) {
            assert!((t - p * c_re(expect)).norm() < 1e-10);
        }
    }

    #[test]
    fn kinetic_of_constant_is_zero() {
        let g = Grid1D::<f64>::new(64, 0.3).unwrap();
        let psi = vec![C::new(0.7, -0.2); 64];
        let tpsi = g.kinetic(&psi).unwrap();
        for t in tpsi {
            assert!(t.norm() < 1e-13);
        }
    }

    #[test]
    fn kinetic_matches_finite_differences_on_gaussian() {
        // 4th-order central differences as an independent oracle
        let g = Grid1D::<f64>::new(256, 0.2).unwrap();
        let psi = gaussian(&g, 1.0);
        let tpsi = g.kinetic(&psi).unwrap();
        let n = g.len();
        let h2 = g.spacing() * g.spacing();
        for j in 0..n {
            let f = |off: i64| psi[((j as i64 + off).rem_euclid(n as i64)) as usize].re;
            let d2 = (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h2);
            assert_abs_diff_eq!(tpsi[j].re, -0.5 * d2, epsilon = 1e-6);
        }
    }

    #[test]
    fn preconditioner_inverts_shifted_kinetic() {
        let g = Grid1D::<f64>::new(128, 0.2).unwrap();
        let psi = gaussian(&g, 0.9);
        let mut work = g.kinetic(&psi).unwrap();
        for (w, p) in work.iter_mut().zip(&psi) {
            *w += p * c_re(1.7);
        }
        g.inverse_kinetic_shifted_in_place(1.7, &mut work).unwrap();
        for (w, p) in work.iter().zip(&psi) {
            assert!((w - p).norm() < 1e-12);
        }
    }

    #[test]
    fn spectral_derivative_of_sine() {
        let g = Grid1D::<f64>::new(128, 0.1).unwrap();
        let k = 2.0 * std::f64::consts::PI * 3.0 / g.box_length();
        let f: Vec<f64> = g.coords().iter().map(|&x| (k * x).sin()).collect();
        let df = g.derivative_real(&f).unwrap();
        for (j, &x) in g.coords().iter().enumerate() {
            assert_abs_diff_eq!(df[j], k * (k * x).cos(), epsilon = 1e-10);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = Grid1D::<f64>::new(64, 0.2).unwrap();
        let a = vec![c_zero::<f64>(); 32];
        assert!(matches!(
            g.inner(&a, &a),
            Err(CoreError::DimensionMismatch { .. })
        ));
    }
}
