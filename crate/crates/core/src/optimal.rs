//! The least uncertain rank-1 measurement of a state.
//!
//! For any rank-1 generalized measurement the outcome vector is majorized by
//! the spectrum of the measured state, and projecting onto the state's
//! eigenbasis (ordered by descending eigenvalue) attains that bound exactly.
//! The Shannon entropy of the saturating measurement is the von Neumann
//! entropy, making it the infimum over all rank-1 measurement entropies.

use crate::error::{Error, Result};
use crate::majorization::{compare, shannon_entropy, MajorizationOrder, ProbVec};
use crate::quantum::{herm_eigen, DensityMatrix, Measurement};
use crate::real::Real;

/// Eigenvalues of a density matrix in descending order, as a probability
/// vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T: Real> {
    values: ProbVec<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn values(&self) -> &ProbVec<T> {
        &self.values
    }
}

/// Eigenvalues of `rho`, clipped to `[0, 1]`, sorted descending and
/// renormalized to unit sum.
pub fn spectrum_descending<T: Real>(rho: &DensityMatrix<T>) -> Result<Spectrum<T>> {
    let (values, _) = herm_eigen(rho.matrix())?;
    let clipped: Vec<T> = values
        .into_iter()
        .map(|v| v.max(T::zero()).min(T::one()))
        .collect();
    let total = clipped.iter().fold(T::zero(), |a, &b| a + b);
    let values = ProbVec::new(clipped.into_iter().map(|v| v / total).collect())?;
    Ok(Spectrum { values })
}

/// The rank-1 projective measurement onto the eigenbasis of `rho`, outcomes
/// ordered by descending eigenvalue. Its Born distribution reproduces the
/// spectrum of `rho`.
pub fn least_uncertain_measurement<T: Real>(rho: &DensityMatrix<T>) -> Result<Measurement<T>> {
    let (_, vectors) = herm_eigen(rho.matrix())?;
    let projectors: Vec<_> = vectors
        .column_iter()
        .map(|v| {
            let col = v.into_owned();
            &col * col.adjoint()
        })
        .collect();
    Measurement::with_operators("eigenbasis", projectors.clone(), projectors)
}

/// Checks the spectral majorization bound for a rank-1 measurement:
/// `born_probabilities(m, rho) ≺ spectrum(rho)`.
///
/// The measurement must be rank-1; anything else is reported as a
/// precondition violation rather than compared.
pub fn verify_spectral_bound<T: Real>(
    rho: &DensityMatrix<T>,
    m: &Measurement<T>,
) -> Result<MajorizationOrder> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: rho.dim(),
        });
    }
    for (index, element) in m.elements().iter().enumerate() {
        let (values, _) = herm_eigen(element.matrix())?;
        if values.len() > 1 && values[1] > T::EPS_PSD {
            return Err(Error::NotRankOne {
                index,
                second_eigenvalue: values[1].approx_f64(),
            });
        }
    }
    let born = crate::quantum::born_probabilities(m, rho)?;
    Ok(compare(&born, spectrum_descending(rho)?.values()))
}

/// Von Neumann entropy `S(ρ) = H(λ(ρ))` in nats.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    Ok(shannon_entropy(
        spectrum_descending(rho)?.values().entries(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{bloch_to_density, born_probabilities, ComplexMatrix};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::{Complex, ComplexField, DVector};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn diag(entries: &[f64]) -> DensityMatrix<f64> {
        DensityMatrix::new(ComplexMatrix::from_diagonal(&DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&x| c(x, 0.0)),
        )))
        .unwrap()
    }

    #[test]
    fn spectrum_examples() {
        let pure = bloch_to_density([0.6, 0.0, 0.8]).unwrap();
        let s = spectrum_descending(&pure).unwrap();
        assert_abs_diff_eq!(s.values().entries()[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.values().entries()[1], 0.0, epsilon = 1e-12);

        let s = spectrum_descending(&diag(&[0.3, 0.7])).unwrap();
        assert_abs_diff_eq!(s.values().entries()[0], 0.7, epsilon = 1e-14);
        assert_abs_diff_eq!(s.values().entries()[1], 0.3, epsilon = 1e-14);

        let s = spectrum_descending(&DensityMatrix::<f64>::maximally_mixed(5)).unwrap();
        for &v in s.values().entries() {
            assert_abs_diff_eq!(v, 0.2, epsilon = 1e-14);
        }
    }

    #[test]
    fn eigenbasis_measurement_reproduces_spectrum() {
        let rho = diag(&[0.7, 0.3]);
        let m = least_uncertain_measurement(&rho).unwrap();
        let p = born_probabilities(&m, &rho).unwrap();
        assert_abs_diff_eq!(p.entries()[0], 0.7, epsilon = 1e-13);
        assert_abs_diff_eq!(p.entries()[1], 0.3, epsilon = 1e-13);
    }

    #[test]
    fn pure_state_measurement_is_certain() {
        let rho = bloch_to_density([0.0, 1.0, 0.0]).unwrap();
        let m = least_uncertain_measurement(&rho).unwrap();
        let p = born_probabilities(&m, &rho).unwrap();
        assert_abs_diff_eq!(p.entries()[0], 1.0, epsilon = 1e-12);
        // first projector is the state itself
        assert!((m.element(0).matrix() - rho.matrix())
            .iter()
            .all(|z| z.modulus() < 1e-12));
    }

    #[test]
    fn random_mixed_state_probabilities_equal_eigenvalues() {
        // fixed non-diagonal 3x3 state: eigenvalues worked out by the solver,
        // cross-checked through the Born rule
        let m = ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.5, 0.0),
                c(0.1, 0.05),
                c(0.0, -0.1),
                c(0.1, -0.05),
                c(0.3, 0.0),
                c(0.02, 0.0),
                c(0.0, 0.1),
                c(0.02, 0.0),
                c(0.2, 0.0),
            ],
        );
        let rho = DensityMatrix::new(m).unwrap();
        let meas = least_uncertain_measurement(&rho).unwrap();
        let p = born_probabilities(&meas, &rho).unwrap();
        let s = spectrum_descending(&rho).unwrap();
        for (a, b) in p.entries().iter().zip(s.values().entries()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_bound_examples() {
        let rho = diag(&[0.7, 0.3]);
        let best = least_uncertain_measurement(&rho).unwrap();
        assert_eq!(
            verify_spectral_bound(&rho, &best).unwrap(),
            MajorizationOrder::Equivalent
        );

        // a rank-1 basis misaligned with a pure state sits strictly below
        let psi = bloch_to_density([1.0, 0.0, 0.0]).unwrap();
        let z_basis = least_uncertain_measurement(&diag(&[0.9, 0.1])).unwrap();
        assert_eq!(
            verify_spectral_bound(&psi, &z_basis).unwrap(),
            MajorizationOrder::StrictlyBelow
        );

        // a rank-2 element is a precondition violation
        let id = Measurement::new("coarse", vec![ComplexMatrix::<f64>::identity(2, 2)]).unwrap();
        assert!(matches!(
            verify_spectral_bound(&diag(&[0.5, 0.5]), &id),
            Err(Error::NotRankOne { .. })
        ));
    }

    #[test]
    fn entropy_examples() {
        let pure = bloch_to_density([0.0, 0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(
            von_neumann_entropy(&DensityMatrix::<f64>::maximally_mixed(2)).unwrap(),
            2.0_f64.ln(),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            von_neumann_entropy(&diag(&[0.7, 0.3])).unwrap(),
            -(0.7_f64.ln() * 0.7 + 0.3_f64.ln() * 0.3),
            epsilon = 1e-12
        );
        assert_relative_eq!(
            von_neumann_entropy(&diag(&[0.7, 0.3])).unwrap(),
            0.6108643020548935,
            epsilon = 1e-12
        );
    }
}
