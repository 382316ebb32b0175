//! The 1D soft-Coulomb model: interactions, ionic potential, Hartree
//! field and the per-run model context.

use crate::error::{CoreError, Result};
use crate::exchange::ExchangeTable;
use crate::grid::Grid1D;
use crate::scalar::{c_re, c_zero, Scalar, C};

/// Constants of the 1D model, Hartree atomic units throughout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams<T: Scalar> {
    /// Electron-electron softening, bohr^2.
    pub a: T,
    /// Electron-ion softening, bohr^2.
    pub b: T,
    /// Inter-ionic distance, bohr.
    pub r_ion: T,
    /// Well asymmetry in [0, 1]; 0.5 with `r_ion = 0` is the atomic case.
    pub z: T,
    /// Electron count N (one orbital per electron, all same spin).
    pub n_electrons: usize,
    /// Degeneracy entering the exchange functional; 1 in all scenarios.
    pub gamma: T,
}

impl<T: Scalar> ModelParams<T> {
    /// Atom/molecule constructor with `gamma = 1`.
    pub fn new(a: T, b: T, r_ion: T, z: T, n_electrons: usize) -> Self {
        Self {
            a,
            b,
            r_ion,
            z,
            n_electrons,
            gamma: T::one(),
        }
    }

    /// Validates every parameter against its admissible range.
    pub fn validate(&self) -> Result<()> {
        if !(self.a > T::zero()) {
            return Err(CoreError::Domain("model.a must be > 0".into()));
        }
        if !(self.b > T::zero()) {
            return Err(CoreError::Domain("model.b must be > 0".into()));
        }
        if !(self.r_ion >= T::zero()) {
            return Err(CoreError::Domain("model.R must be >= 0".into()));
        }
        if !(self.z >= T::zero() && self.z <= T::one()) {
            return Err(CoreError::Domain("model.z must lie in [0, 1]".into()));
        }
        if self.n_electrons < 1 {
            return Err(CoreError::Domain("model.n_electrons must be >= 1".into()));
        }
        if !(self.gamma >= T::one()) {
            return Err(CoreError::Domain("model.gamma must be >= 1".into()));
        }
        Ok(())
    }
}

/// Smoothed electron-electron interaction `1/sqrt((x-x')^2 + a)`.
///
/// Symmetric in its arguments, peaked at `1/sqrt(a)`, Coulombic at large
/// separation.
#[inline]
pub fn soft_coulomb<T: Scalar>(x: T, xp: T, a: T) -> T {
    let d = x - xp;
    T::one() / (d * d + a).sqrt()
}

/// Two-well ionic background
/// `-N z / sqrt((x-R/2)^2+b) - N(1-z) / sqrt((x+R/2)^2+b)`.
pub fn ionic_potential<T: Scalar>(grid: &Grid1D<T>, p: &ModelParams<T>) -> Result<Vec<T>> {
    p.validate()?;
    let n = T::from_usize(p.n_electrons).unwrap();
    let half_r = p.r_ion * T::lit(0.5);
    Ok(grid
        .coords()
        .iter()
        .map(|&x| {
            let right = x - half_r;
            let left = x + half_r;
            -n * p.z / (right * right + p.b).sqrt()
                - n * (T::one() - p.z) / (left * left + p.b).sqrt()
        })
        .collect())
}

/// Ion-ion repulsion constant `N^2 z (1-z) / sqrt(R^2 + b)`.
///
/// Mirrors the electron-ion softening; purely an additive constant for
/// fixed ions, included so total energies are complete.
pub fn ion_ion_energy<T: Scalar>(p: &ModelParams<T>) -> T {
    let n = T::from_usize(p.n_electrons).unwrap();
    n * n * p.z * (T::one() - p.z) / (p.r_ion * p.r_ion + p.b).sqrt()
}

/// Hartree potential by direct `O(n^2)` summation:
/// `U_H(x_j) = sum_l v(x_j, x_l) rho_l dx`.
pub fn hartree_direct<T: Scalar>(grid: &Grid1D<T>, rho: &[T], a: T) -> Result<Vec<T>> {
    if rho.len() != grid.len() {
        return Err(CoreError::DimensionMismatch {
            expected: grid.len(),
            got: rho.len(),
        });
    }
    let x = grid.coords();
    let dx = grid.spacing();
    Ok((0..grid.len())
        .map(|j| {
            let mut acc = T::zero();
            for (l, &r) in rho.iter().enumerate() {
                acc = acc + soft_coulomb(x[j], x[l], a) * r;
            }
            acc * dx
        })
        .collect())
}

/// Precomputed soft-Coulomb convolution kernel, zero-padded to twice the
/// grid so the convolution never wraps periodically.
#[derive(Clone, Debug)]
pub struct HartreeKernel<T: Scalar> {
    a: T,
    /// FFT of the padded kernel samples `v(m dx) dx`.
    kernel_fft: Vec<C<T>>,
}

impl<T: Scalar> HartreeKernel<T> {
    /// Samples and transforms the kernel for a grid and softening.
    pub fn new(grid: &Grid1D<T>, a: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(CoreError::Domain("softening a must be positive".into()));
        }
        let n = grid.len();
        let dx = grid.spacing();
        let mut kernel = vec![c_zero::<T>(); 2 * n];
        for m in 0..n {
            let sep = dx * T::from_usize(m).unwrap();
            let v = c_re(T::one() / (sep * sep + a).sqrt() * dx);
            kernel[m] = v;
            if m > 0 {
                kernel[2 * n - m] = v;
            }
        }
        grid.fft_forward_padded(&mut kernel);
        Ok(Self { a, kernel_fft: kernel })
    }

    /// Softening the kernel was sampled with.
    #[inline]
    pub fn softening(&self) -> T {
        self.a
    }

    /// Convolution with a complex source field.
    pub fn convolve_complex(&self, grid: &Grid1D<T>, src: &[C<T>]) -> Result<Vec<C<T>>> {
        let n = grid.len();
        if src.len() != n {
            return Err(CoreError::DimensionMismatch {
                expected: n,
                got: src.len(),
            });
        }
        let mut buf = vec![c_zero::<T>(); 2 * n];
        buf[..n].copy_from_slice(src);
        grid.fft_forward_padded(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_fft) {
            *b = *b * *k;
        }
        grid.fft_inverse_padded(&mut buf);
        buf.truncate(n);
        Ok(buf)
    }

    /// Hartree potential of a real density, spectral path.
    pub fn hartree(&self, grid: &Grid1D<T>, rho: &[T]) -> Result<Vec<T>> {
        let src: Vec<C<T>> = rho.iter().map(|&r| c_re(r)).collect();
        let out = self.convolve_complex(grid, &src)?;
        Ok(out.into_iter().map(|v| v.re).collect())
    }
}

/// Immutable per-run context: grid, parameters, external potential,
/// Hartree kernel and exchange table.
#[derive(Clone, Debug)]
pub struct Model1D<T: Scalar> {
    grid: Grid1D<T>,
    params: ModelParams<T>,
    u_ext: Vec<T>,
    kernel: HartreeKernel<T>,
    exchange: ExchangeTable<T>,
}

impl<T: Scalar> Model1D<T> {
    /// Standard context: ionic external potential from the parameters.
    pub fn new(grid: Grid1D<T>, params: ModelParams<T>) -> Result<Self> {
        let u_ext = ionic_potential(&grid, &params)?;
        Self::with_external(grid, params, u_ext)
    }

    /// Context with an explicit external potential (free-particle and
    /// custom-field setups).
    pub fn with_external(grid: Grid1D<T>, params: ModelParams<T>, u_ext: Vec<T>) -> Result<Self> {
        params.validate()?;
        if u_ext.len() != grid.len() {
            return Err(CoreError::DimensionMismatch {
                expected: grid.len(),
                got: u_ext.len(),
            });
        }
        let kernel = HartreeKernel::new(&grid, params.a)?;
        // table spans four times the densest packing the model reaches
        let n = T::from_usize(params.n_electrons).unwrap();
        let rho_max = (n / params.b.sqrt()).max(T::one()) * T::lit(4.0);
        let exchange = ExchangeTable::new(params.a, params.gamma, rho_max)?;
        Ok(Self {
            grid,
            params,
            u_ext,
            kernel,
            exchange,
        })
    }

    /// The grid.
    #[inline]
    pub fn grid(&self) -> &Grid1D<T> {
        &self.grid
    }

    /// Model constants.
    #[inline]
    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    /// Static external potential.
    #[inline]
    pub fn external_potential(&self) -> &[T] {
        &self.u_ext
    }

    /// Soft-Coulomb convolution kernel.
    #[inline]
    pub fn hartree_kernel(&self) -> &HartreeKernel<T> {
        &self.kernel
    }

    /// Exchange functional table.
    #[inline]
    pub fn exchange(&self) -> &ExchangeTable<T> {
        &self.exchange
    }

    /// Hartree potential of a density on this model's grid.
    pub fn hartree(&self, rho: &[T]) -> Result<Vec<T>> {
        self.kernel.hartree(&self.grid, rho)
    }

    /// Exchange potential field of a density.
    pub fn exchange_potential_field(&self, rho: &[T]) -> Vec<T> {
        rho.iter().map(|&r| self.exchange.potential(r)).collect()
    }

    /// Full LDA mean field `U_H + U_x` of a density.
    pub fn lda_potential_field(&self, rho: &[T]) -> Result<Vec<T>> {
        let mut u = self.hartree(rho)?;
        for (uv, &r) in u.iter_mut().zip(rho) {
            *uv = *uv + self.exchange.potential(r);
        }
        Ok(u)
    }

    /// Hartree energy `(1/2) int U_H rho`.
    pub fn hartree_energy(&self, rho: &[T]) -> Result<T> {
        let u = self.hartree(rho)?;
        let mut acc = T::zero();
        for (&uv, &r) in u.iter().zip(rho) {
            acc = acc + uv * r;
        }
        Ok(acc * self.grid.spacing() * T::lit(0.5))
    }

    /// Exchange energy `int rho eps_x(rho)`.
    pub fn exchange_energy(&self, rho: &[T]) -> T {
        let mut acc = T::zero();
        for &r in rho {
            acc = acc + self.exchange.energy_density(r.max(T::zero()));
        }
        acc * self.grid.spacing()
    }

    /// LDA energy functional `E_H + E_x` of a density.
    pub fn lda_energy(&self, rho: &[T]) -> Result<T> {
        Ok(self.hartree_energy(rho)? + self.exchange_energy(rho))
    }
}
