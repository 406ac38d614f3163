//! Seeded random states and measurements for property testing and demos.

use nalgebra::{Complex, DMatrix, DVector};
use nalgebra::ComplexField;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::quantum::{herm_eigen, ComplexMatrix, DensityMatrix, Measurement};
use crate::real::Real;

fn standard_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = StandardNormal.sample(rng);
    T::from_f64(x).unwrap()
}

fn ginibre<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix<T> {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex::new(standard_normal(rng), standard_normal(rng))
    })
}

/// A Haar-random unit vector in `ℂ^dim`.
pub fn haar_state<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DVector<Complex<T>> {
    loop {
        let v = DVector::from_fn(dim, |_, _| {
            Complex::new(standard_normal(rng), standard_normal(rng))
        });
        let norm_sq: T = v.iter().map(|z: &Complex<T>| z.modulus_squared()).fold(T::zero(), |a, b| a + b);
        if norm_sq > nalgebra::convert(1e-12) {
            let scale = Complex::new(T::one() / norm_sq.sqrt(), T::zero());
            return v.map(|z| z * scale);
        }
    }
}

/// A Haar-random pure state.
pub fn random_pure<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix<T> {
    DensityMatrix::from_pure(&haar_state(dim, rng)).expect("unit vector")
}

/// A random full-rank mixed state `AA†/tr(AA†)` with Ginibre `A`
/// (Hilbert–Schmidt ensemble), so the eigenvectors are Haar distributed.
pub fn random_density<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix<T> {
    let a = ginibre::<T, R>(dim, dim, rng);
    let m = &a * a.adjoint();
    let trace: T = (0..dim).map(|i| m[(i, i)].re).fold(T::zero(), |x, y| x + y);
    let normalized = m.map(|z| z / Complex::new(trace, T::zero()));
    DensityMatrix::new(normalized).expect("Wishart matrix is a state")
}

/// A random rank-1 POVM with `outcomes ≥ dim` elements.
///
/// Draws Haar-random vectors `v_i`, then applies `S^{-1/2}` with
/// `S = Σ v_i v_i†` to each, which enforces completeness while keeping every
/// element rank-1.
pub fn random_rank1_povm<T: Real, R: Rng + ?Sized>(
    dim: usize,
    outcomes: usize,
    rng: &mut R,
) -> Result<Measurement<T>> {
    assert!(outcomes >= dim, "need at least dim outcomes for completeness");
    let vectors: Vec<_> = (0..outcomes).map(|_| haar_state::<T, R>(dim, rng)).collect();
    let mut total = ComplexMatrix::<T>::zeros(dim, dim);
    for v in &vectors {
        total += v * v.adjoint();
    }
    let (values, basis) = herm_eigen(&total)?;
    let inv_root = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        values
            .iter()
            .map(|&v| Complex::new(T::one() / v.max(T::EPS_PSD).sqrt(), T::zero())),
    ));
    let whitener = &basis * inv_root * basis.adjoint();
    let elements: Vec<_> = vectors
        .iter()
        .map(|v| {
            let w = &whitener * v;
            &w * w.adjoint()
        })
        .collect();
    Measurement::new("random_rank1", elements)
}
