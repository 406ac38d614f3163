//! The sinc-kernel eigenproblem behind joint position–momentum bin
//! statistics.
//!
//! For one position bin of width `Δx` and one momentum bin of width `Δp`
//! (both centered at the origin), the largest probability of landing in both
//! bins at once is `¼(1 + μ_max)²`, where `μ²_max` is the top eigenvalue of
//! the integral operator on `[-1/2, 1/2]` with kernel
//! `sin(sπ(ξ-ξ'))/(π(ξ-ξ'))` and `s = Δx·Δp / 2πħ`. The operator is a
//! compressed product of projections, so its spectrum lies in `[0, 1]` and
//! sums to `s`. As `s → 0` exactly one eigenvalue survives, `μ²_max → s`, and
//! the joint probability drops to 25%.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;
use crate::real::Real;

/// Bin widths and the phase-space parameter they induce.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceParams<T: Real> {
    delta_x: T,
    delta_p: T,
    hbar: T,
}

impl<T: Real> PhaseSpaceParams<T> {
    pub fn new(delta_x: T, delta_p: T, hbar: T) -> Result<Self> {
        for v in [delta_x, delta_p, hbar] {
            if v <= T::zero() {
                return Err(Error::NonPositivePhaseSpace(v.approx_f64()));
            }
        }
        Ok(Self {
            delta_x,
            delta_p,
            hbar,
        })
    }

    /// Symmetric bins realizing a given `s`, with `ħ = 1`.
    pub fn from_s(s: T) -> Result<Self> {
        if s <= T::zero() {
            return Err(Error::NonPositivePhaseSpace(s.approx_f64()));
        }
        let width = (T::two_pi() * s).sqrt();
        Self::new(width, width, T::one())
    }

    /// `s = Δx·Δp / 2πħ`, the bin area in units of Planck cells.
    pub fn s(&self) -> T {
        self.delta_x * self.delta_p / (T::two_pi() * self.hbar)
    }

    pub fn delta_x(&self) -> T {
        self.delta_x
    }

    pub fn delta_p(&self) -> T {
        self.delta_p
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }
}

fn sinc<T: Real>(z: T) -> T {
    let cutoff: T = nalgebra::convert(1e-4);
    if z.abs() < cutoff {
        let z2 = z * z;
        let six: T = nalgebra::convert(6.0);
        let hundred_twenty: T = nalgebra::convert(120.0);
        T::one() - z2 / six + z2 * z2 / hundred_twenty
    } else {
        z.sin() / z
    }
}

/// Kernel `sin(sπ(ξ-ξ'))/(π(ξ-ξ'))`, continued by its limit `s` on the
/// diagonal.
pub fn sinc_kernel<T: Real>(s: T, xi: T, xi_prime: T) -> T {
    s * sinc(s * T::pi() * (xi - xi_prime))
}

/// Discrete spectrum of the sinc-kernel operator at one value of `s`.
#[derive(Debug, Clone)]
pub struct KernelSpectrum<T: Real> {
    s: T,
    quad_order: usize,
    eigenvalues: Vec<T>,
    nodes: Vec<T>,
    leading_eigenfunction: Vec<T>,
}

impl<T: Real> KernelSpectrum<T> {
    pub fn s(&self) -> T {
        self.s
    }

    pub fn quad_order(&self) -> usize {
        self.quad_order
    }

    /// Eigenvalues `μ²` in descending order, clipped to `[0, 1]`.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn max_eigenvalue(&self) -> T {
        self.eigenvalues[0]
    }

    /// Quadrature nodes on `[-1/2, 1/2]` where the eigenfunction is sampled.
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// Leading eigenfunction samples, scaled to peak magnitude 1 with
    /// nonnegative mean.
    pub fn leading_eigenfunction(&self) -> &[T] {
        &self.leading_eigenfunction
    }
}

/// Solves the kernel eigenproblem by Nyström discretization.
///
/// Gauss–Legendre nodes and weights on `[-1/2, 1/2]` turn the integral
/// operator into the matrix `K(ξ_i, ξ_j)√(w_i w_j)`, which is symmetric, so
/// the discrete eigenvalues are real and the decomposition is exactly
/// self-adjoint in finite precision.
pub fn solve_spectrum<T: Real>(
    params: &PhaseSpaceParams<T>,
    quad_order: usize,
) -> Result<KernelSpectrum<T>> {
    if quad_order < 16 {
        return Err(Error::QuadratureOrder(quad_order));
    }
    let s = params.s();
    let half: T = nalgebra::convert(0.5);
    let (nodes, weights) = gauss_legendre_on(quad_order, -half, half);
    let root_w: Vec<T> = weights.iter().map(|&w| w.sqrt()).collect();
    let matrix = DMatrix::from_fn(quad_order, quad_order, |i, j| {
        sinc_kernel(s, nodes[i], nodes[j]) * root_w[i] * root_w[j]
    });
    let eig = matrix
        .try_symmetric_eigen(T::default_epsilon(), 100_000)
        .ok_or(Error::EigenFailure)?;

    let mut order: Vec<usize> = (0..quad_order).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    debug_assert!(eig.eigenvalues[order[0]] <= T::one() + T::EPS_PSD);
    debug_assert!(*eig.eigenvalues.as_slice().last().unwrap() >= -T::EPS_PSD);
    let eigenvalues: Vec<T> = order
        .iter()
        .map(|&k| eig.eigenvalues[k].max(T::zero()).min(T::one()))
        .collect();

    // Undo the √w scaling to recover eigenfunction samples at the nodes.
    let lead = eig.eigenvectors.column(order[0]);
    let mut samples: Vec<T> = lead
        .iter()
        .zip(&root_w)
        .map(|(&v, &rw)| v / rw)
        .collect();
    let mean = samples.iter().fold(T::zero(), |a, &b| a + b);
    if mean < T::zero() {
        for v in &mut samples {
            *v = -*v;
        }
    }
    let peak = samples
        .iter()
        .map(|v| v.abs())
        .fold(T::zero(), |a, b| a.max(b));
    if peak > T::zero() {
        for v in &mut samples {
            *v /= peak;
        }
    }

    Ok(KernelSpectrum {
        s,
        quad_order,
        eigenvalues,
        nodes,
        leading_eigenfunction: samples,
    })
}

/// Largest joint probability of one position and one momentum bin,
/// `¼(1 + μ_max)²`.
///
/// Strictly below 1 for finite bins, though once `s ≳ 10` the gap drops
/// under double-precision resolution and the value rounds to 1.
pub fn leading_joint_probability<T: Real>(
    params: &PhaseSpaceParams<T>,
    quad_order: usize,
) -> Result<T> {
    let spectrum = solve_spectrum(params, quad_order)?;
    let mu = spectrum.max_eigenvalue().sqrt();
    let quarter: T = nalgebra::convert(0.25);
    Ok(quarter * (T::one() + mu) * (T::one() + mu))
}

/// Small-`s` closed form `(1 + 2√s)/4` of the leading joint probability.
pub fn small_s_asymptote<T: Real>(s: T) -> T {
    debug_assert!(s > T::zero());
    let quarter: T = nalgebra::convert(0.25);
    (T::one() + (s.sqrt() + s.sqrt())) * quarter
}

/// Position-space profile of the bin-optimal state in the small-`s` limit:
/// a box of width `Δx` plus the sinc ridge `√(Δp/4πħ)·sinc(xΔp/2ħ)`.
///
/// The closed form is the `s → 0` limit; treat it as meaningful for
/// `s ≲ 0.05`.
pub fn limit_wavefunction_position<T: Real>(x: T, params: &PhaseSpaceParams<T>) -> T {
    wavefunction_profile(x, params.delta_x, params.delta_p, params.hbar)
}

/// Momentum-space profile of the same state; the two are exchanged by
/// `Δx ↔ Δp`, and are Fourier transforms of each other.
pub fn limit_wavefunction_momentum<T: Real>(p: T, params: &PhaseSpaceParams<T>) -> T {
    wavefunction_profile(p, params.delta_p, params.delta_x, params.hbar)
}

fn wavefunction_profile<T: Real>(coord: T, own_width: T, dual_width: T, hbar: T) -> T {
    let two: T = nalgebra::convert(2.0);
    let four: T = nalgebra::convert(4.0);
    // unit step with θ(0) = 1
    let box_part = if own_width * own_width - four * coord * coord >= T::zero() {
        T::one() / (two * own_width).sqrt()
    } else {
        T::zero()
    };
    let ridge = (dual_width / (four * T::pi() * hbar)).sqrt();
    box_part + ridge * sinc(coord * dual_width / (two * hbar))
}
