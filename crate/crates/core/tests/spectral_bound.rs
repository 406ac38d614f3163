//! Random-pair checks of the spectral majorization bound: the outcome vector
//! of any rank-1 measurement is majorized by the measured state's spectrum,
//! with equality for the eigenbasis measurement.

use majorant::optimal::{
    least_uncertain_measurement, spectrum_descending, verify_spectral_bound, von_neumann_entropy,
};
use majorant::quantum::born_probabilities;
use majorant::random::{random_density, random_rank1_povm};
use majorant::{shannon_entropy, tsallis_entropy, MajorizationOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_pairs_never_violate_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..200 {
        let dim = rng.random_range(2..=4usize);
        let outcomes = rng.random_range(dim..=dim + 3);
        let rho = random_density::<f64, _>(dim, &mut rng);
        let povm = random_rank1_povm::<f64, _>(dim, outcomes, &mut rng).unwrap();
        let order = verify_spectral_bound(&rho, &povm).unwrap();
        assert!(
            order == MajorizationOrder::StrictlyBelow || order == MajorizationOrder::Equivalent,
            "spectral bound violated: {order:?}"
        );
    }
}

#[test]
fn eigenbasis_measurement_saturates_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
    for _ in 0..100 {
        let dim = rng.random_range(2..=4usize);
        let rho = random_density::<f64, _>(dim, &mut rng);
        let best = least_uncertain_measurement(&rho).unwrap();
        assert_eq!(
            verify_spectral_bound(&rho, &best).unwrap(),
            MajorizationOrder::Equivalent
        );
        // and the distribution equals the spectrum entrywise
        let born = born_probabilities(&best, &rho).unwrap();
        let spectrum = spectrum_descending(&rho).unwrap();
        for (p, s) in born.entries().iter().zip(spectrum.values().entries()) {
            assert!((p - s).abs() <= 1e-10);
        }
    }
}

#[test]
fn entropy_chain_holds_with_equality_at_the_eigenbasis() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for _ in 0..150 {
        let dim = rng.random_range(2..=4usize);
        let outcomes = rng.random_range(dim..=dim + 2);
        let rho = random_density::<f64, _>(dim, &mut rng);
        let s = von_neumann_entropy(&rho).unwrap();

        let povm = random_rank1_povm::<f64, _>(dim, outcomes, &mut rng).unwrap();
        let h = shannon_entropy(born_probabilities(&povm, &rho).unwrap().entries());
        assert!(s <= h + 1e-9, "S(ρ)={s} exceeds H={h}");

        let best = least_uncertain_measurement(&rho).unwrap();
        let h_best = shannon_entropy(born_probabilities(&best, &rho).unwrap().entries());
        assert!((s - h_best).abs() <= 1e-9);
    }
}

#[test]
fn quasi_entropic_extension_to_tsallis() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACE);
    for _ in 0..150 {
        let dim = rng.random_range(2..=4usize);
        let outcomes = rng.random_range(dim..=dim + 2);
        let rho = random_density::<f64, _>(dim, &mut rng);
        let povm = random_rank1_povm::<f64, _>(dim, outcomes, &mut rng).unwrap();
        let born = born_probabilities(&povm, &rho).unwrap();
        let spectrum = spectrum_descending(&rho).unwrap();
        for q in [0.5, 2.0] {
            let f_spectrum = tsallis_entropy(spectrum.values().entries(), q);
            let f_born = tsallis_entropy(born.entries(), q);
            assert!(
                f_spectrum <= f_born + 1e-9,
                "q={q}: T(λ)={f_spectrum} vs T(P)={f_born}"
            );
        }
    }
}
