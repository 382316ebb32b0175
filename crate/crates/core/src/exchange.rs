//! Exchange-only LDA functional of the 1D soft-Coulomb gas.
//!
//! The exchange potential of the model is
//!
//! ```text
//! U_x(rho) = -(1/pi) * int_0^inf  sin(2 pi rho y / gamma) / (y sqrt(y^2 + a)) dy
//! ```
//!
//! and the exchange energy density `rho eps_x(rho)` is the corresponding
//! antiderivative in `rho`. Substituting `y = sqrt(a) sinh(u)` collapses
//! both improper oscillatory integrals to integrals of the modified Bessel
//! function `K0`:
//!
//! ```text
//! U_x(rho)         = -Phi0(z) / (pi sqrt(a)),         z = 2 pi rho sqrt(a) / gamma
//! rho eps_x(rho)   = -gamma (z Phi0(z) - 1 + z K1(z)) / (2 pi^2 a)
//! Phi0(z)          = int_0^z K0(s) ds
//! ```
//!
//! The closed form feeds a dense interpolation table used per grid point
//! per time step. The original oscillatory quadrature stays available as
//! an independent reference route; the two are compared in the test
//! suites and by the `oracle` CLI subcommand.

use crate::error::{CoreError, Result};
use crate::quad::{adaptive, oscillatory_tail};
use crate::scalar::Scalar;

const EULER_GAMMA: f64 = 0.577215664901532861;

/// Series/asymptotic crossover for the Bessel evaluations.
const BESSEL_SPLIT: f64 = 6.0;

/// Modified Bessel function of the second kind, order zero.
pub fn bessel_k0<T: Scalar>(z: T) -> T {
    assert!(z > T::zero(), "bessel_k0 needs z > 0");
    if z < T::lit(BESSEL_SPLIT) {
        // ascending series
        let q = z * z * T::lit(0.25);
        let lead = -( (z * T::lit(0.5)).ln() + T::lit(EULER_GAMMA) );
        let mut term = T::one(); // (z^2/4)^k / (k!)^2
        let mut harmonic = T::zero();
        let mut i0 = T::one();
        let mut sum_h = T::zero();
        for k in 1..200 {
            let kf = T::from_usize(k).unwrap();
            term = term * q / (kf * kf);
            harmonic = harmonic + T::one() / kf;
            i0 = i0 + term;
            sum_h = sum_h + harmonic * term;
            if term * harmonic < T::eps() * (i0.abs() + T::one()) {
                break;
            }
        }
        lead * i0 + sum_h
    } else {
        bessel_k_asymptotic(z, T::zero())
    }
}

/// Modified Bessel function of the second kind, order one.
pub fn bessel_k1<T: Scalar>(z: T) -> T {
    assert!(z > T::zero(), "bessel_k1 needs z > 0");
    if z < T::lit(BESSEL_SPLIT) {
        let q = z * z * T::lit(0.25);
        let half_z = z * T::lit(0.5);
        // I1(z) = (z/2) sum_k (z^2/4)^k / (k! (k+1)!)
        // correction sum uses psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma_E
        let mut u = T::one(); // (z^2/4)^k / (k! (k+1)!)
        let mut hk = T::zero();
        let mut hk1 = T::one();
        let mut i1 = T::one();
        let mut corr = hk + hk1 - T::lit(2.0 * EULER_GAMMA);
        for k in 1..200 {
            let kf = T::from_usize(k).unwrap();
            u = u * q / (kf * (kf + T::one()));
            hk = hk + T::one() / kf;
            hk1 = hk1 + T::one() / (kf + T::one());
            i1 = i1 + u;
            let c = hk + hk1 - T::lit(2.0 * EULER_GAMMA);
            corr = corr + c * u;
            if u * (c.abs() + T::one()) < T::eps() * (i1.abs() + T::one()) {
                break;
            }
        }
        T::one() / z + half_z.ln() * (half_z * i1) - half_z * T::lit(0.5) * corr
    } else {
        bessel_k_asymptotic(z, T::lit(4.0))
    }
}

/// Large-argument expansion `K_nu(z) ~ sqrt(pi/2z) e^{-z} sum_k t_k`,
/// `mu = 4 nu^2`, truncated at the smallest term.
fn bessel_k_asymptotic<T: Scalar>(z: T, mu: T) -> T {
    let mut term = T::one();
    let mut sum = T::one();
    let mut prev = T::infinity();
    for k in 1..40 {
        let kf = T::from_usize(k).unwrap();
        let odd = kf + kf - T::one();
        term = term * (mu - odd * odd) / (T::lit(8.0) * z * kf);
        if term.abs() >= prev {
            break;
        }
        prev = term.abs();
        sum = sum + term;
        if term.abs() < T::eps() * sum.abs() {
            break;
        }
    }
    (T::PI() / (z + z)).sqrt() * (-z).exp() * sum
}

/// `Phi0(z) = int_0^z K0(s) ds`, saturating at pi/2.
pub fn k0_integral<T: Scalar>(z: T) -> T {
    if z <= T::zero() {
        return T::zero();
    }
    if z < T::lit(BESSEL_SPLIT) {
        // term-by-term integration of the K0 series
        let q = z * z * T::lit(0.25);
        let log_half_z = (z * T::lit(0.5)).ln();
        let mut base = z; // z^{2k+1} / (4^k (k!)^2)
        let mut harmonic = T::zero();
        let mut acc = T::zero();
        for k in 0..200 {
            let kf = T::from_usize(k).unwrap();
            if k > 0 {
                base = base * q / (kf * kf);
                harmonic = harmonic + T::one() / kf;
            }
            let m = T::from_usize(2 * k + 1).unwrap();
            let coeff = harmonic - T::lit(EULER_GAMMA) - log_half_z + T::one() / m;
            let term = base * coeff / m;
            acc = acc + term;
            if base * (coeff.abs() + T::one()) / m < T::eps() * (acc.abs() + T::one()) {
                break;
            }
        }
        acc
    } else {
        // Phi0(inf) = pi/2 minus a rapidly decaying remainder
        let cutoff = z + T::lit(45.0);
        let tail = adaptive(&mut |s: T| bessel_k0(s), z, cutoff, T::lit(1e-16));
        T::FRAC_PI_2() - tail
    }
}

/// Closed-form exchange potential `U_x(rho)` in hartree.
///
/// Monotone decreasing in the density, zero at zero density, saturating
/// at `-1/(2 sqrt(a))`.
pub fn potential_exact<T: Scalar>(rho: T, a: T, gamma: T) -> T {
    if rho <= T::zero() {
        return T::zero();
    }
    let z = T::lit(2.0) * T::PI() * rho * a.sqrt() / gamma;
    -k0_integral(z) / (T::PI() * a.sqrt())
}

/// Closed-form exchange energy density `rho eps_x(rho)` in hartree/bohr.
pub fn energy_density_exact<T: Scalar>(rho: T, a: T, gamma: T) -> T {
    if rho <= T::zero() {
        return T::zero();
    }
    let z = T::lit(2.0) * T::PI() * rho * a.sqrt() / gamma;
    let phi1 = T::one() - z * bessel_k1(z);
    -gamma / (T::lit(2.0) * T::PI() * T::PI() * a) * (z * k0_integral(z) - phi1)
}

/// Exchange potential by direct quadrature of the defining oscillatory
/// integral: adaptive panels per half oscillation plus an accelerated
/// alternating tail. Reference route for the closed form and the table.
pub fn potential_quadrature<T: Scalar>(rho: T, a: T, gamma: T, abs_tol: T) -> T {
    if rho <= T::zero() {
        return T::zero();
    }
    let c = T::lit(2.0) * T::PI() * rho / gamma;
    let mut f = |y: T| {
        if y == T::zero() {
            c / a.sqrt()
        } else {
            (c * y).sin() / (y * (y * y + a).sqrt())
        }
    };
    let half_period = T::PI() / c;
    // sum directly until the envelope varies slowly, then accelerate
    let n_direct = {
        let needed = (T::lit(6.0) * a.sqrt() / half_period)
            .ceil()
            .to_usize()
            .unwrap_or(8);
        needed.max(8)
    };
    let integral = oscillatory_tail(&mut f, T::zero(), half_period, n_direct, abs_tol);
    -integral / T::PI()
}

/// Exchange energy density by direct quadrature.
///
/// The non-oscillatory part of the tail integrates in closed form; only
/// the cosine part needs the accelerated alternating sum.
pub fn energy_density_quadrature<T: Scalar>(rho: T, a: T, gamma: T, abs_tol: T) -> T {
    if rho <= T::zero() {
        return T::zero();
    }
    let c = T::lit(2.0) * T::PI() * rho / gamma;
    let envelope = |y: T| T::one() / (y * y * (y * y + a).sqrt());
    let mut f = |y: T| {
        if y == T::zero() {
            c * c / (T::lit(2.0) * a.sqrt())
        } else {
            (T::one() - (c * y).cos()) * envelope(y)
        }
    };
    let half_period = T::PI() / c;
    // head up to a zero of cos(cy) past the envelope knee
    let min_edge = T::lit(8.0) * a.sqrt().max(T::one());
    let m = (min_edge * c / T::PI() - T::lit(0.5))
        .ceil()
        .to_f64()
        .unwrap()
        .max(1.0);
    let edge = (T::lit(m) + T::lit(0.5)) * half_period;
    let head = adaptive(&mut f, T::zero(), edge, abs_tol * T::lit(0.1));
    // int_edge^inf dy / (y^2 sqrt(y^2+a)) = (sqrt(edge^2+a)/edge - 1)/a
    let tail_smooth = ((edge * edge + a).sqrt() / edge - T::one()) / a;
    let mut osc = |y: T| (c * y).cos() * envelope(y);
    let tail_osc = oscillatory_tail(&mut osc, edge, half_period, 2, abs_tol);
    let j = head + tail_smooth - tail_osc;
    -gamma / (T::lit(2.0) * T::PI() * T::PI()) * j
}

/// Number of table nodes.
const TABLE_SIZE: usize = 4096;
/// Cells below this index are evaluated directly (the potential slope is
/// logarithmically singular at zero density, where cubic interpolation
/// would lose accuracy).
const DIRECT_CELLS: usize = 64;

/// Dense interpolation table for the exchange potential and energy
/// density, built once per model and immutable afterwards.
///
/// Cubic Hermite interpolation with exact nodal derivatives
/// (`dU_x/drho = -2 K0(z)/gamma`, `d(rho eps_x)/drho = U_x`) keeps the
/// interpolation error below 1e-9 against direct quadrature.
#[derive(Clone, Debug)]
pub struct ExchangeTable<T: Scalar> {
    a: T,
    gamma: T,
    rho_max: T,
    step: T,
    rho_direct: T,
    ux: Vec<T>,
    dux: Vec<T>,
    pe: Vec<T>,
}

impl<T: Scalar> ExchangeTable<T> {
    /// Builds the table on `[0, rho_max]`.
    ///
    /// `rho_max` should be at least four times the largest density the
    /// grid will carry; densities beyond it fall back to the closed form.
    pub fn new(a: T, gamma: T, rho_max: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(CoreError::Domain("softening a must be positive".into()));
        }
        if !(gamma >= T::one()) {
            return Err(CoreError::Domain("degeneracy gamma must be >= 1".into()));
        }
        if !(rho_max > T::zero()) {
            return Err(CoreError::Domain("table density range must be positive".into()));
        }
        let step = rho_max / T::from_usize(TABLE_SIZE - 1).unwrap();
        let mut ux = Vec::with_capacity(TABLE_SIZE);
        let mut dux = Vec::with_capacity(TABLE_SIZE);
        let mut pe = Vec::with_capacity(TABLE_SIZE);
        let two = T::lit(2.0);
        for j in 0..TABLE_SIZE {
            let rho = step * T::from_usize(j).unwrap();
            ux.push(potential_exact(rho, a, gamma));
            pe.push(energy_density_exact(rho, a, gamma));
            let slope = if j == 0 {
                T::zero() // unused: the direct region covers the origin
            } else {
                let z = two * T::PI() * rho * a.sqrt() / gamma;
                -two * bessel_k0(z) / gamma
            };
            dux.push(slope);
        }
        Ok(Self {
            a,
            gamma,
            rho_max,
            step,
            rho_direct: step * T::from_usize(DIRECT_CELLS).unwrap(),
            ux,
            dux,
            pe,
        })
    }

    /// Electron-electron softening the table was built for.
    #[inline]
    pub fn softening(&self) -> T {
        self.a
    }

    /// Degeneracy parameter.
    #[inline]
    pub fn degeneracy(&self) -> T {
        self.gamma
    }

    #[inline]
    fn cell(&self, rho: T) -> (usize, T) {
        let s = rho / self.step;
        let j = s.floor().to_usize().unwrap_or(0).min(TABLE_SIZE - 2);
        let t = s - T::from_usize(j).unwrap();
        (j, t)
    }

    fn hermite(&self, value: &[T], slope: &[T], rho: T) -> T {
        let (j, t) = self.cell(rho);
        let h = self.step;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = T::lit(2.0) * t3 - T::lit(3.0) * t2 + T::one();
        let h10 = t3 - T::lit(2.0) * t2 + t;
        let h01 = -(T::lit(2.0) * t3) + T::lit(3.0) * t2;
        let h11 = t3 - t2;
        h00 * value[j] + h10 * h * slope[j] + h01 * value[j + 1] + h11 * h * slope[j + 1]
    }

    /// Exchange potential at a density value, clamping round-off
    /// negatives to zero.
    pub fn potential(&self, rho: T) -> T {
        if rho <= T::zero() {
            return T::zero();
        }
        if rho < self.rho_direct || rho >= self.rho_max {
            return potential_exact(rho, self.a, self.gamma);
        }
        self.hermite(&self.ux, &self.dux, rho)
    }

    /// Exchange energy density `rho eps_x` at a density value.
    pub fn energy_density(&self, rho: T) -> T {
        if rho <= T::zero() {
            return T::zero();
        }
        if rho < self.rho_direct || rho >= self.rho_max {
            return energy_density_exact(rho, self.a, self.gamma);
        }
        // the energy slope is exactly the potential
        self.hermite(&self.pe, &self.ux, rho)
    }
}

/// Exchange potential at one density value with domain checking.
///
/// Round-off negatives (above -1e-12) clamp to zero; anything more
/// negative is a domain error.
pub fn lda_exchange_potential<T: Scalar>(rho: T, a: T, gamma: T) -> Result<T> {
    if rho < -T::lit(1e-12) {
        return Err(CoreError::Domain(format!(
            "negative density {:e} passed to exchange potential",
            rho.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(potential_exact(rho.max(T::zero()), a, gamma))
}
