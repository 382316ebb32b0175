//! Complex single-particle orbitals and occupied-set bookkeeping.

use crate::error::{CoreError, Result};
use crate::grid::Grid1D;
use crate::linalg::SquareMatrixC;
use crate::scalar::{c_re, c_zero, Scalar, C};

/// One complex wavefunction on the grid, units bohr^(-1/2).
#[derive(Clone, Debug, PartialEq)]
pub struct Orbital<T: Scalar> {
    values: Vec<C<T>>,
}

impl<T: Scalar> Orbital<T> {
    /// Wraps raw amplitudes.
    pub fn new(values: Vec<C<T>>) -> Self {
        Self { values }
    }

    /// Zero orbital of `n` points.
    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![c_zero(); n],
        }
    }

    /// Number of grid points.
    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when the orbital holds no points.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Amplitudes.
    #[inline]
    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    /// Mutable amplitudes.
    #[inline]
    pub fn values_mut(&mut self) -> &mut [C<T>] {
        &mut self.values
    }

    /// Consumes the orbital, returning its amplitudes.
    pub fn into_values(self) -> Vec<C<T>> {
        self.values
    }

    /// Verifies that every amplitude is finite.
    pub fn check_finite(&self) -> Result<()> {
        for v in &self.values {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(CoreError::Domain("non-finite orbital amplitude".into()));
            }
        }
        Ok(())
    }

    /// `self <- self + scale * other`.
    pub fn add_scaled(&mut self, scale: C<T>, other: &Orbital<T>) {
        for (a, b) in self.values.iter_mut().zip(other.values.iter()) {
            *a = *a + scale * *b;
        }
    }

    /// `self <- scale * self`.
    pub fn scale(&mut self, scale: C<T>) {
        for a in self.values.iter_mut() {
            *a = *a * scale;
        }
    }

    /// Per-point density `|psi|^2`.
    pub fn density(&self) -> Vec<T> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }
}

/// Real non-negative density field, units bohr^(-1).
#[derive(Clone, Debug)]
pub struct DensityField<T: Scalar> {
    values: Vec<T>,
}

impl<T: Scalar> DensityField<T> {
    /// Wraps density values, rejecting anything below -1e-12.
    pub fn new(values: Vec<T>) -> Result<Self> {
        let floor = -T::lit(1e-12);
        for &v in &values {
            if !(v >= floor) {
                return Err(CoreError::Domain(format!(
                    "negative density value {:e}",
                    v.to_f64().unwrap_or(f64::NAN)
                )));
            }
        }
        Ok(Self { values })
    }

    /// Density values.
    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Number of grid points.
    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when empty.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Integrated electron number.
    pub fn total(&self, grid: &Grid1D<T>) -> T {
        grid.integrate(&self.values)
    }
}

/// Ordered set of N occupied orbitals (N electrons, one per orbital).
#[derive(Clone, Debug)]
pub struct OrbitalSet<T: Scalar> {
    orbitals: Vec<Orbital<T>>,
}

impl<T: Scalar> OrbitalSet<T> {
    /// Builds a set from orbitals of equal length.
    pub fn new(orbitals: Vec<Orbital<T>>) -> Result<Self> {
        if let Some(first) = orbitals.first() {
            let n = first.len();
            for o in &orbitals {
                if o.len() != n {
                    return Err(CoreError::DimensionMismatch {
                        expected: n,
                        got: o.len(),
                    });
                }
            }
        }
        Ok(Self { orbitals })
    }

    /// Number of occupied orbitals (= electrons).
    #[inline]
    pub fn n_orbitals(&self) -> usize {
        self.orbitals.len()
    }

    /// Orbitals in order.
    #[inline]
    pub fn orbitals(&self) -> &[Orbital<T>] {
        &self.orbitals
    }

    /// Mutable access.
    #[inline]
    pub fn orbitals_mut(&mut self) -> &mut [Orbital<T>] {
        &mut self.orbitals
    }

    /// Single orbital by index.
    pub fn orbital(&self, index: usize) -> Result<&Orbital<T>> {
        self.orbitals.get(index).ok_or(CoreError::IndexOutOfRange {
            index,
            len: self.orbitals.len(),
        })
    }

    /// Gram matrix `G_ij = (phi_i | phi_j)`.
    pub fn gram(&self, grid: &Grid1D<T>) -> Result<SquareMatrixC<T>> {
        let n = self.orbitals.len();
        let mut g = SquareMatrixC::zeros(n);
        for i in 0..n {
            for j in i..n {
                let ip = grid.inner(self.orbitals[i].values(), self.orbitals[j].values())?;
                g[(i, j)] = ip;
                if i != j {
                    g[(j, i)] = ip.conj();
                }
            }
        }
        Ok(g)
    }

    /// `max_ij |G_ij - delta_ij|`.
    pub fn orthonormality_error(&self, grid: &Grid1D<T>) -> Result<T> {
        let g = self.gram(grid)?;
        let n = g.dim();
        let mut dev = T::zero();
        for i in 0..n {
            for j in 0..n {
                let target = if i == j {
                    C::new(T::one(), T::zero())
                } else {
                    c_zero()
                };
                dev = dev.max((g[(i, j)] - target).norm());
            }
        }
        Ok(dev)
    }

    /// Symmetric (Löwdin) orthonormalization.
    ///
    /// Returns the closest orthonormal set spanning the same subspace,
    /// `psi'_a = sum_b psi_b [S^{-1/2}]_{ba}`. Fails when the overlap is
    /// numerically singular.
    pub fn lowdin_orthonormalize(&self, grid: &Grid1D<T>) -> Result<OrbitalSet<T>> {
        if self.orbitals.is_empty() {
            return Ok(self.clone());
        }
        let s = self.gram(grid)?;
        let factor = s.inverse_sqrt(T::lit(1e-8))?;
        Ok(self.rotate(&factor))
    }

    /// Linear recombination: `out_j = sum_b in_b M_bj`.
    pub fn rotate(&self, m: &SquareMatrixC<T>) -> OrbitalSet<T> {
        let n = self.orbitals.len();
        assert_eq!(m.dim(), n, "rotation dimension mismatch");
        let npts = self.orbitals.first().map_or(0, Orbital::len);
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = Orbital::zeros(npts);
            for (b, orb) in self.orbitals.iter().enumerate() {
                acc.add_scaled(m[(b, j)], orb);
            }
            out.push(acc);
        }
        OrbitalSet { orbitals: out }
    }

    /// Total density `sum_a |psi_a|^2`.
    pub fn density(&self, _grid: &Grid1D<T>) -> DensityField<T> {
        let npts = self.orbitals.first().map_or(0, Orbital::len);
        let mut rho = vec![T::zero(); npts];
        for o in &self.orbitals {
            for (r, v) in rho.iter_mut().zip(o.values()) {
                *r = *r + v.norm_sqr();
            }
        }
        DensityField { values: rho }
    }

    /// Removes the component of `o` inside the occupied span:
    /// `o - sum_b psi_b (psi_b | o)`. Idempotent for orthonormal sets.
    pub fn project_out(&self, o: &Orbital<T>, grid: &Grid1D<T>) -> Result<Orbital<T>> {
        let mut out = o.clone();
        for b in &self.orbitals {
            let coeff = grid.inner(b.values(), o.values())?;
            out.add_scaled(-coeff, b);
        }
        Ok(out)
    }

    /// First and second position moments `((psi|x|psi), (psi|x^2|psi))`
    /// of each orbital, unnormalized brackets.
    pub fn position_moments(&self, grid: &Grid1D<T>) -> Vec<(T, T)> {
        let x = grid.coords();
        self.orbitals
            .iter()
            .map(|o| {
                let mut m1 = T::zero();
                let mut m2 = T::zero();
                for (&xi, v) in x.iter().zip(o.values()) {
                    let d = v.norm_sqr();
                    m1 = m1 + xi * d;
                    m2 = m2 + xi * xi * d;
                }
                (m1 * grid.spacing(), m2 * grid.spacing())
            })
            .collect()
    }

    /// Sum of spatial variances over the set.
    pub fn total_variance(&self, grid: &Grid1D<T>) -> T {
        self.position_moments(grid)
            .iter()
            .map(|&(m1, m2)| m2 - m1 * m1)
            .fold(T::zero(), |a, b| a + b)
    }

    /// Multiplies every orbital by a common real field (mask application).
    pub fn apply_real_field(&mut self, field: &[T]) {
        for o in &mut self.orbitals {
            for (v, &f) in o.values_mut().iter_mut().zip(field) {
                *v = *v * c_re(f);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid() -> Grid1D<f64> {
        Grid1D::new(128, 0.25).unwrap()
    }

    fn gaussian(g: &Grid1D<f64>, x0: f64, sigma: f64) -> Orbital<f64> {
        let norm = 1.0 / (std::f64::consts::PI * sigma * sigma).powf(0.25);
        Orbital::new(
            g.coords()
                .iter()
                .map(|&x| c_re(norm * (-(x - x0) * (x - x0) / (2.0 * sigma * sigma)).exp()))
                .collect(),
        )
    }

    #[test]
    fn lowdin_leaves_orthonormal_set_unchanged() {
        let g = grid();
        let a = gaussian(&g, -6.0, 0.8);
        let b = gaussian(&g, 6.0, 0.8);
        // overlap below round-off at this separation
        let set = OrbitalSet::new(vec![a.clone(), b.clone()]).unwrap();
        let out = set.lowdin_orthonormalize(&g).unwrap();
        for (orig, new) in set.orbitals().iter().zip(out.orbitals()) {
            for (x, y) in orig.values().iter().zip(new.values()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn lowdin_rejects_identical_orbitals() {
        let g = grid();
        let a = gaussian(&g, 0.0, 1.0);
        let set = OrbitalSet::new(vec![a.clone(), a]).unwrap();
        assert!(matches!(
            set.lowdin_orthonormalize(&g),
            Err(CoreError::DegenerateSet { .. })
        ));
    }

    #[test]
    fn lowdin_orthonormalizes_and_preserves_subspace() {
        let g = grid();
        let a = gaussian(&g, -0.7, 1.0);
        let b = gaussian(&g, 0.7, 1.0);
        let set = OrbitalSet::new(vec![a, b]).unwrap();
        let out = set.lowdin_orthonormalize(&g).unwrap();
        assert!(out.orthonormality_error(&g).unwrap() < 1e-12);

        // subspace projector comparison: P = sum |psi)(psi| after Löwdin of an
        // already orthonormalized basis must match the Gram-Schmidt projector
        let n = g.len();
        let projector = |s: &OrbitalSet<f64>| -> Vec<C<f64>> {
            let mut p = vec![c_zero::<f64>(); n * n];
            for o in s.orbitals() {
                for i in 0..n {
                    for j in 0..n {
                        p[i * n + j] += o.values()[i] * o.values()[j].conj();
                    }
                }
            }
            p
        };
        // Gram-Schmidt oracle
        let mut gs: Vec<Orbital<f64>> = Vec::new();
        for o in set.orbitals() {
            let mut v = o.clone();
            for prev in &gs {
                let c = g.inner(prev.values(), v.values()).unwrap();
                v.add_scaled(-c, prev);
            }
            let nrm = g.norm(v.values());
            v.scale(c_re(1.0 / nrm));
            gs.push(v);
        }
        let gs_set = OrbitalSet::new(gs).unwrap();
        let p1 = projector(&out);
        let p2 = projector(&gs_set);
        let max_dev = p1
            .iter()
            .zip(&p2)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f64, f64::max);
        assert!(max_dev < 1e-10, "projector deviation {max_dev:e}");
    }

    #[test]
    fn lowdin_idempotent() {
        let g = grid();
        let set = OrbitalSet::new(vec![gaussian(&g, -0.5, 1.1), gaussian(&g, 0.5, 0.9)]).unwrap();
        let once = set.lowdin_orthonormalize(&g).unwrap();
        let twice = once.lowdin_orthonormalize(&g).unwrap();
        for (a, b) in once.orbitals().iter().zip(twice.orbitals()) {
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_annihilates_span_members() {
        let g = grid();
        let set = OrbitalSet::new(vec![gaussian(&g, -0.5, 1.1), gaussian(&g, 0.5, 0.9)])
            .unwrap()
            .lowdin_orthonormalize(&g)
            .unwrap();
        let mut combo = Orbital::zeros(g.len());
        combo.add_scaled(C::new(0.3, 0.4), &set.orbitals()[0]);
        combo.add_scaled(C::new(-0.1, 0.9), &set.orbitals()[1]);
        let out = set.project_out(&combo, &g).unwrap();
        assert!(g.norm(out.values()) < 1e-12);

        // projecting twice equals projecting once
        let odd = Orbital::new(
            g.coords()
                .iter()
                .map(|&x| c_re(x * (-x * x / 2.0).exp()))
                .collect(),
        );
        let projected = set.project_out(&odd, &g).unwrap();
        let twice = set.project_out(&projected, &g).unwrap();
        for (x, y) in projected.values().iter().zip(twice.values()) {
            assert!((x - y).norm() < 1e-12, "projector not idempotent");
        }
    }

    #[test]
    fn density_is_nonnegative_and_counts_electrons() {
        let g = grid();
        let set = OrbitalSet::new(vec![gaussian(&g, -0.5, 1.1), gaussian(&g, 0.5, 0.9)])
            .unwrap()
            .lowdin_orthonormalize(&g)
            .unwrap();
        let rho = set.density(&g);
        assert!(rho.values().iter().all(|&v| v >= 0.0));
        assert_abs_diff_eq!(rho.total(&g), 2.0, epsilon = 1e-10);
    }

    #[test]
    fn density_field_rejects_negative_values() {
        assert!(DensityField::new(vec![0.0, -1.0e-6]).is_err());
        assert!(DensityField::new(vec![0.0, -1.0e-13, 2.0]).is_ok());
    }
}
