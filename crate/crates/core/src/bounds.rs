//! State-independent uncertainty bounds for measurement sets.
//!
//! For measurements `X, Y, …, Z` the outer product of their outcome vectors,
//! maximized over all states one prefix at a time, yields an envelope whose
//! flattened difference majorizes the joint distribution of *every* state:
//! the measurement set's irreducible uncertainty. The bound collapses to the
//! point mass exactly when the measurement elements share an eigenstate,
//! which [`has_common_eigenstate`] detects directly. Applying any symmetric
//! concave functional to the bound turns it into a scalar uncertainty bound
//! of the familiar entropic kind.
//!
//! The top-`j` sums are optimized by projected gradient ascent on a sphere
//! (pure states live on the unit sphere of `ℂ^d`; mixed states are reached
//! through `ρ = AA†/tr AA†` with `A` on the unit Frobenius sphere), with
//! multistart restarts, a dedicated 2°-resolution Bloch grid for qubits, and
//! deterministic seeding throughout. Pure-state optimality for `j ≥ 2` is not
//! assumed: both spaces are searched and the better value wins, with the
//! winning space recorded per component.

use nalgebra::{Complex, ComplexField, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorization::{flatten, PrefixEnvelope, ProbVec};
use crate::quantum::{herm_eigen, joint_distribution, ComplexMatrix, DensityMatrix, Measurement};
use crate::real::Real;

/// Knobs for the multistart state-space searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig<T: Real> {
    /// Independent random restarts per component and search space.
    pub restarts: usize,
    /// Iteration cap for a single ascent.
    pub max_iterations: usize,
    /// An ascent stops once its step length falls below this.
    pub step_tolerance: T,
    /// Seed for all randomness; equal seeds give identical results.
    pub seed: u64,
    /// Restrict every search to pure states.
    pub pure_only: bool,
}

impl<T: Real> Default for SearchConfig<T> {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iterations: 200,
            step_tolerance: nalgebra::convert(1e-10),
            seed: 42,
            pure_only: false,
        }
    }
}

impl<T: Real> SearchConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::BadConfig("restarts must be at least 1".into()));
        }
        if self.step_tolerance <= T::zero() {
            return Err(Error::BadConfig("step_tolerance must be positive".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::BadConfig("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Which parametrization produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchSpace {
    Pure,
    Mixed,
}

/// A state attaining one envelope component.
#[derive(Debug, Clone)]
pub struct Witness<T: Real> {
    /// 1-based component index `j`.
    pub component: usize,
    /// The attained top-`j` sum.
    pub value: T,
    pub state: DensityMatrix<T>,
    pub space: SearchSpace,
}

/// Envelope, flattened bound and per-component witnesses.
#[derive(Debug, Clone)]
pub struct BoundResult<T: Real> {
    pub envelope: PrefixEnvelope<T>,
    pub bound: ProbVec<T>,
    pub witnesses: Vec<Witness<T>>,
}

// ---------------------------------------------------------------------------
// Objective evaluation
// ---------------------------------------------------------------------------

fn quadratic_form<T: Real>(e: &ComplexMatrix<T>, psi: &[Complex<T>]) -> T {
    let d = psi.len();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..d {
        let mut row = Complex::new(T::zero(), T::zero());
        for k in 0..d {
            row += e[(i, k)] * psi[k];
        }
        acc += psi[i].conj() * row;
    }
    acc.re
}

fn top_j_sum<T: Real>(probs: &mut [T], j: usize) -> T {
    probs.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    probs[..j].iter().fold(T::zero(), |a, &b| a + b)
}

/// Joint outcome products for a buffer of per-measurement Born vectors.
fn joint_from_born<T: Real>(born: &[Vec<T>]) -> Vec<T> {
    let mut acc = vec![T::one()];
    for b in born {
        let mut next = Vec::with_capacity(acc.len() * b.len());
        for &x in &acc {
            for &y in b {
                next.push(x * y);
            }
        }
        acc = next;
    }
    acc
}

/// Top-`j` sum of the joint distribution of the pure state with raw
/// parameters `x` (interleaved re/im amplitudes; scale-invariant).
fn pure_top_j<T: Real>(ms: &[Measurement<T>], x: &[T], j: usize) -> T {
    let d = x.len() / 2;
    let psi: Vec<Complex<T>> = (0..d).map(|k| Complex::new(x[2 * k], x[2 * k + 1])).collect();
    let norm_sq = psi.iter().map(|z| z.modulus_squared()).fold(T::zero(), |a, b| a + b);
    if norm_sq <= T::default_epsilon() {
        return T::zero();
    }
    let born: Vec<Vec<T>> = ms
        .iter()
        .map(|m| {
            m.elements()
                .iter()
                .map(|e| (quadratic_form(e.matrix(), &psi) / norm_sq).max(T::zero()))
                .collect()
        })
        .collect();
    let mut joint = joint_from_born(&born);
    top_j_sum(&mut joint, j).min(T::one())
}

/// Same objective over mixed states `ρ = AA†/tr AA†`, `A` given columnwise
/// (scale-invariant as well). Uses `tr(E AA†) = Σ_c a_c† E a_c`.
fn mixed_top_j<T: Real>(ms: &[Measurement<T>], x: &[T], j: usize) -> T {
    let d = ms[0].dim();
    debug_assert_eq!(x.len(), 2 * d * d);
    let columns: Vec<Vec<Complex<T>>> = (0..d)
        .map(|c| {
            (0..d)
                .map(|r| {
                    let k = 2 * (c * d + r);
                    Complex::new(x[k], x[k + 1])
                })
                .collect()
        })
        .collect();
    let trace: T = columns
        .iter()
        .flat_map(|col| col.iter())
        .map(|z| z.modulus_squared())
        .fold(T::zero(), |a, b| a + b);
    if trace <= T::default_epsilon() {
        return T::zero();
    }
    let born: Vec<Vec<T>> = ms
        .iter()
        .map(|m| {
            m.elements()
                .iter()
                .map(|e| {
                    let mut p = T::zero();
                    for col in &columns {
                        p += quadratic_form(e.matrix(), col);
                    }
                    (p / trace).max(T::zero())
                })
                .collect()
        })
        .collect();
    let mut joint = joint_from_born(&born);
    top_j_sum(&mut joint, j).min(T::one())
}

fn state_from_pure_params<T: Real>(x: &[T]) -> Result<DensityMatrix<T>> {
    let d = x.len() / 2;
    let psi = DVector::from_iterator(d, (0..d).map(|k| Complex::new(x[2 * k], x[2 * k + 1])));
    DensityMatrix::from_pure(&psi)
}

fn state_from_mixed_params<T: Real>(x: &[T], dim: usize) -> Result<DensityMatrix<T>> {
    let a = DMatrix::from_fn(dim, dim, |r, c| {
        let k = 2 * (c * dim + r);
        Complex::new(x[k], x[k + 1])
    });
    let m = &a * a.adjoint();
    let trace: T = (0..dim).map(|i| m[(i, i)].re).fold(T::zero(), |s, v| s + v);
    DensityMatrix::new(m.map(|z| z / Complex::new(trace, T::zero())))
}

// ---------------------------------------------------------------------------
// Projected gradient ascent on the unit sphere
// ---------------------------------------------------------------------------

struct Ascent<T> {
    value: T,
    position: Vec<T>,
    converged: bool,
}

fn normalize<T: Real>(x: &mut [T]) {
    let norm = x.iter().map(|&v| v * v).fold(T::zero(), |a, b| a + b).sqrt();
    if norm > T::zero() {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

fn ascend_on_sphere<T: Real>(
    f: &dyn Fn(&[T]) -> T,
    start: &[T],
    max_iterations: usize,
    step_tolerance: T,
) -> Ascent<T> {
    let mut x = start.to_vec();
    normalize(&mut x);
    let mut value = f(&x);
    let h: T = nalgebra::convert(1e-6);
    let grow: T = nalgebra::convert(1.5);
    let half: T = nalgebra::convert(0.5);
    let mut step: T = nalgebra::convert(0.1);
    let mut gradient = vec![T::zero(); x.len()];
    let mut probe = x.clone();

    for _ in 0..max_iterations {
        // central differences; the objective is scale-invariant, so the
        // projection below recovers the spherical gradient
        for i in 0..x.len() {
            probe.copy_from_slice(&x);
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            gradient[i] = (up - down) / (h + h);
        }
        let radial = x
            .iter()
            .zip(&gradient)
            .map(|(&a, &b)| a * b)
            .fold(T::zero(), |a, b| a + b);
        for (g, &xi) in gradient.iter_mut().zip(&x) {
            *g -= radial * xi;
        }
        let magnitude = gradient
            .iter()
            .map(|&g| g * g)
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        if magnitude < nalgebra::convert(1e-12) {
            return Ascent {
                value,
                position: x,
                converged: true,
            };
        }
        loop {
            let mut candidate: Vec<T> = x
                .iter()
                .zip(&gradient)
                .map(|(&xi, &g)| xi + step * g / magnitude)
                .collect();
            normalize(&mut candidate);
            let candidate_value = f(&candidate);
            if candidate_value > value {
                x = candidate;
                value = candidate_value;
                step = (step * grow).min(half);
                break;
            }
            step *= half;
            if step < step_tolerance {
                return Ascent {
                    value,
                    position: x,
                    converged: true,
                };
            }
        }
    }
    Ascent {
        value,
        position: x,
        converged: false,
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn search_rng(seed: u64, j: usize, space: SearchSpace) -> ChaCha8Rng {
    let tag = match space {
        SearchSpace::Pure => 1u64,
        SearchSpace::Mixed => 2u64,
    };
    ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(j as u64) ^ tag.rotate_left(17)))
}

fn random_direction<T: Real>(len: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut x: Vec<T> = (0..len)
        .map(|_| {
            let v: f64 = rng.sample(rand_distr::StandardNormal);
            T::from_f64(v).unwrap()
        })
        .collect();
    normalize(&mut x);
    x
}

/// Pure-state starts for a qubit on a 2°-resolution Bloch grid; the best grid
/// point seeds a local refinement.
fn bloch_grid_best<T: Real>(f: &dyn Fn(&[T]) -> T) -> Vec<T> {
    let mut best = vec![T::one(), T::zero(), T::zero(), T::zero()];
    let mut best_value = f(&best);
    let step = 2usize;
    for theta_deg in (0..=180).step_by(step) {
        let theta = T::from_usize(theta_deg).unwrap() * T::pi() / nalgebra::convert(180.0);
        let half_theta = theta * nalgebra::convert::<f64, T>(0.5);
        for phi_deg in (0..360).step_by(step) {
            let phi = T::from_usize(phi_deg).unwrap() * T::pi() / nalgebra::convert(180.0);
            let x = [
                half_theta.cos(),
                T::zero(),
                half_theta.sin() * phi.cos(),
                half_theta.sin() * phi.sin(),
            ];
            let value = f(&x);
            if value > best_value {
                best_value = value;
                best = x.to_vec();
            }
        }
    }
    best
}

struct SpaceSearch<T: Real> {
    value: T,
    params: Vec<T>,
    converged: bool,
}

fn search_space<T: Real>(
    ms: &[Measurement<T>],
    j: usize,
    cfg: &SearchConfig<T>,
    space: SearchSpace,
    maximize: bool,
) -> SpaceSearch<T> {
    let d = ms[0].dim();
    let sign = if maximize { T::one() } else { -T::one() };
    let objective: Objective<T> = match space {
        SearchSpace::Pure => Box::new(move |x: &[T]| sign * pure_top_j(ms, x, j)),
        SearchSpace::Mixed => Box::new(move |x: &[T]| sign * mixed_top_j(ms, x, j)),
    };
    let len = match space {
        SearchSpace::Pure => 2 * d,
        SearchSpace::Mixed => 2 * d * d,
    };

    let mut starts: Vec<Vec<T>> = Vec::with_capacity(cfg.restarts + d + 1);
    match space {
        SearchSpace::Pure => {
            if d == 2 {
                starts.push(bloch_grid_best(objective.as_ref()));
            }
            // basis states are natural extremum candidates
            for k in 0..d {
                let mut e = vec![T::zero(); len];
                e[2 * k] = T::one();
                starts.push(e);
            }
        }
        SearchSpace::Mixed => {
            // the maximally mixed state, as A = I
            let mut identity = vec![T::zero(); len];
            for k in 0..d {
                identity[2 * (k * d + k)] = T::one();
            }
            starts.push(identity);
        }
    }
    let mut rng = search_rng(cfg.seed, j, space);
    for _ in 0..cfg.restarts {
        starts.push(random_direction(len, &mut rng));
    }

    let mut best: Option<(T, Vec<T>)> = None;
    let mut any_converged = false;
    for start in starts {
        let ascent = ascend_on_sphere(
            objective.as_ref(),
            &start,
            cfg.max_iterations,
            cfg.step_tolerance,
        );
        any_converged |= ascent.converged;
        let replace = match &best {
            None => true,
            Some((value, _)) => ascent.value > *value,
        };
        if replace {
            best = Some((ascent.value, ascent.position));
        }
    }
    let (value, params) = best.expect("at least one start");
    SpaceSearch {
        value: value * sign,
        params,
        converged: any_converged,
    }
}

fn search_extremum<T: Real>(
    ms: &[Measurement<T>],
    j: usize,
    cfg: &SearchConfig<T>,
    maximize: bool,
) -> Result<Witness<T>> {
    let pure = search_space(ms, j, cfg, SearchSpace::Pure, maximize);
    let mixed = if cfg.pure_only {
        None
    } else {
        Some(search_space(ms, j, cfg, SearchSpace::Mixed, maximize))
    };

    // the mixed space must win by more than optimizer noise to be credited
    let margin: T = nalgebra::convert(1e-9);
    let mixed_wins = mixed.as_ref().is_some_and(|m| {
        if maximize {
            m.value > pure.value + margin
        } else {
            m.value < pure.value - margin
        }
    });
    let converged = pure.converged || mixed.as_ref().is_some_and(|m| m.converged);
    let (value, params, space) = if mixed_wins {
        let m = mixed.unwrap();
        (m.value, m.params, SearchSpace::Mixed)
    } else {
        (pure.value, pure.params, SearchSpace::Pure)
    };
    if !converged {
        return Err(Error::SearchFailure {
            best: value.approx_f64(),
        });
    }
    let state = match space {
        SearchSpace::Pure => state_from_pure_params(&params)?,
        SearchSpace::Mixed => state_from_mixed_params(&params, ms[0].dim())?,
    };
    Ok(Witness {
        component: j,
        value,
        state,
        space,
    })
}

fn check_measurement_set<T: Real>(ms: &[Measurement<T>]) -> Result<usize> {
    if ms.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = ms[0].dim();
    for m in ms {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: m.dim(),
            });
        }
    }
    Ok(ms.iter().map(Measurement::outcome_count).product())
}

/// Maximum over states of the sum of the `j` largest joint probabilities,
/// with the attaining state.
pub fn mu_sup_component<T: Real>(
    ms: &[Measurement<T>],
    j: usize,
    cfg: &SearchConfig<T>,
) -> Result<Witness<T>> {
    cfg.validate()?;
    let dim = check_measurement_set(ms)?;
    if j < 1 || j > dim {
        return Err(Error::ComponentIndex { j, dim });
    }
    search_extremum(ms, j, cfg, true)
}

fn assemble_envelope<T: Real>(values: &[T]) -> Result<PrefixEnvelope<T>> {
    let mut partial_sums = Vec::with_capacity(values.len() + 1);
    partial_sums.push(T::zero());
    let mut running = T::zero();
    for &v in values {
        running = running.max(v).min(T::one());
        partial_sums.push(running);
    }
    PrefixEnvelope::new(partial_sums)
}

/// The state-independent majorization bound of a measurement set: maximized
/// prefix sums, differenced and flattened into a descending vector that
/// majorizes the joint distribution of every state.
pub fn supremum_bound<T: Real>(
    ms: &[Measurement<T>],
    cfg: &SearchConfig<T>,
) -> Result<BoundResult<T>> {
    cfg.validate()?;
    let dim = check_measurement_set(ms)?;
    let mut witnesses = Vec::with_capacity(dim);
    for j in 1..=dim {
        witnesses.push(search_extremum(ms, j, cfg, true)?);
    }
    let envelope = assemble_envelope(&witnesses.iter().map(|w| w.value).collect::<Vec<_>>())?;
    let bound = ProbVec::new(flatten(&envelope.increments())?)?;
    Ok(BoundResult {
        envelope,
        bound,
        witnesses,
    })
}

/// The dual construction: minimized prefix sums. The differenced lower
/// envelope is already descending, so no flattening is applied. With
/// `cfg.pure_only` the minimization runs over pure states only.
pub fn infimum_bound<T: Real>(
    ms: &[Measurement<T>],
    cfg: &SearchConfig<T>,
) -> Result<BoundResult<T>> {
    cfg.validate()?;
    let dim = check_measurement_set(ms)?;
    let mut witnesses = Vec::with_capacity(dim);
    for j in 1..=dim {
        witnesses.push(search_extremum(ms, j, cfg, false)?);
    }
    let envelope = assemble_envelope(&witnesses.iter().map(|w| w.value).collect::<Vec<_>>())?;
    let bound = ProbVec::new(envelope.increments())?;
    Ok(BoundResult {
        envelope,
        bound,
        witnesses,
    })
}

// ---------------------------------------------------------------------------
// Quasi-entropic measures
// ---------------------------------------------------------------------------

type ComponentFn<T> = Box<dyn Fn(T) -> T + Send + Sync>;
type VectorFn<T> = Box<dyn Fn(&[T]) -> T + Send + Sync>;
type Objective<'a, T> = Box<dyn Fn(&[T]) -> T + 'a>;

enum MeasureKind<T> {
    /// `F(v) = Σ f(v_i)` for a concave single-variable `f`.
    Component(ComponentFn<T>),
    /// A whole-vector symmetric concave functional.
    Vector(VectorFn<T>),
}

/// A symmetric concave uncertainty functional on probability vectors.
///
/// Custom constructors spot-check concavity on random chords and reject
/// functions that fail; the Shannon and Tsallis families are built in.
pub struct ConcaveMeasure<T: Real> {
    name: String,
    kind: MeasureKind<T>,
}

impl<T: Real> ConcaveMeasure<T> {
    /// Shannon entropy in nats, via `f(x) = −x ln x`.
    pub fn shannon() -> Self {
        Self {
            name: "shannon".into(),
            kind: MeasureKind::Component(Box::new(|x: T| {
                if x > T::zero() {
                    -x * x.ln()
                } else {
                    T::zero()
                }
            })),
        }
    }

    /// Tsallis entropy of order `q > 0`, `q ≠ 1`, via
    /// `f(x) = (x − x^q)/(q − 1)`.
    pub fn tsallis(q: T) -> Result<Self> {
        if q <= T::zero() || q == T::one() {
            return Err(Error::BadConfig(
                "Tsallis order must be positive and different from 1".into(),
            ));
        }
        let name = format!("tsallis-{}", q.approx_f64());
        Ok(Self {
            name,
            kind: MeasureKind::Component(Box::new(move |x: T| {
                if x > T::zero() {
                    (x - x.powf(q)) / (q - T::one())
                } else {
                    T::zero()
                }
            })),
        })
    }

    /// Wraps a user-supplied concave single-variable function after a
    /// spot-check of concavity on random chords in `(0, 1)`.
    pub fn from_component_fn(
        name: impl Into<String>,
        f: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Result<Self> {
        let tolerance: T = nalgebra::convert(1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0C0A);
        for _ in 0..256 {
            let a: T = T::from_f64(rng.random::<f64>().max(1e-6)).unwrap();
            let b: T = T::from_f64(rng.random::<f64>().max(1e-6)).unwrap();
            let lambda: T = T::from_f64(rng.random::<f64>()).unwrap();
            let mid = lambda * a + (T::one() - lambda) * b;
            let chord = lambda * f(a) + (T::one() - lambda) * f(b);
            let defect = chord - f(mid);
            if defect > tolerance {
                return Err(Error::NotConcave {
                    defect: defect.approx_f64(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            kind: MeasureKind::Component(Box::new(f)),
        })
    }

    /// Wraps a whole-vector functional after a spot-check of concavity along
    /// random chords of the probability simplex.
    pub fn from_vector_fn(
        name: impl Into<String>,
        f: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Result<Self> {
        let tolerance: T = nalgebra::convert(1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(0xFACADE);
        for dim in [2usize, 4, 8] {
            for _ in 0..64 {
                let a = random_simplex_point::<T>(dim, &mut rng);
                let b = random_simplex_point::<T>(dim, &mut rng);
                let lambda: T = T::from_f64(rng.random::<f64>()).unwrap();
                let mid: Vec<T> = a
                    .iter()
                    .zip(&b)
                    .map(|(&x, &y)| lambda * x + (T::one() - lambda) * y)
                    .collect();
                let chord = lambda * f(&a) + (T::one() - lambda) * f(&b);
                let defect = chord - f(&mid);
                if defect > tolerance {
                    return Err(Error::NotConcave {
                        defect: defect.approx_f64(),
                    });
                }
            }
        }
        Ok(Self {
            name: name.into(),
            kind: MeasureKind::Vector(Box::new(f)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(&self, v: &ProbVec<T>) -> T {
        self.evaluate_entries(v.entries())
    }

    fn evaluate_entries(&self, entries: &[T]) -> T {
        match &self.kind {
            MeasureKind::Component(f) => entries.iter().map(|&x| f(x)).fold(T::zero(), |a, b| a + b),
            MeasureKind::Vector(f) => f(entries),
        }
    }
}

fn random_simplex_point<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut v: Vec<T> = (0..dim)
        .map(|_| {
            let u: f64 = rng.random::<f64>().max(1e-12);
            T::from_f64(-u.ln()).unwrap()
        })
        .collect();
    let total = v.iter().fold(T::zero(), |a, &b| a + b);
    for x in &mut v {
        *x /= total;
    }
    v
}

/// Uncertainty of a state for a measurement set under `F`, normalized so a
/// certain outcome scores zero: `F(joint) − F(point mass)`.
pub fn quasi_entropic_uncertainty<T: Real>(
    measure: &ConcaveMeasure<T>,
    ms: &[Measurement<T>],
    rho: &DensityMatrix<T>,
) -> Result<T> {
    let joint = joint_distribution(ms, rho)?;
    let baseline = measure.evaluate(&ProbVec::point_mass(joint.len()));
    Ok(measure.evaluate(&joint) - baseline)
}

/// State-independent scalar bound under `F`: evaluating `F` on the
/// majorization bound lower-bounds [`quasi_entropic_uncertainty`] for every
/// state.
pub fn entropic_lower_bound<T: Real>(
    measure: &ConcaveMeasure<T>,
    ms: &[Measurement<T>],
    cfg: &SearchConfig<T>,
) -> Result<T> {
    let bound = supremum_bound(ms, cfg)?;
    let baseline = measure.evaluate(&ProbVec::point_mass(bound.bound.len()));
    Ok(measure.evaluate(&bound.bound) - baseline)
}

// ---------------------------------------------------------------------------
// Common-eigenstate detection
// ---------------------------------------------------------------------------

/// Searches for a unit vector that is an eigenvalue-1 eigenstate of one
/// element per measurement; exactly when such a state exists, the supremum
/// bound degenerates to the point mass.
///
/// Every combination of one element per measurement is examined (their count
/// grows as the product of outcome counts), intersecting the eigenvalue-1
/// eigenspaces through the top eigenvalue of the averaged projectors.
pub fn has_common_eigenstate<T: Real>(
    ms: &[Measurement<T>],
    tol: T,
) -> Result<Option<DensityMatrix<T>>> {
    check_measurement_set(ms)?;
    let dim = ms[0].dim();

    // Projectors onto each element's eigenvalue-1 eigenspace, or None when
    // the element has no eigenvalue within tol of 1.
    let mut unit_projectors: Vec<Vec<Option<ComplexMatrix<T>>>> = Vec::with_capacity(ms.len());
    for m in ms {
        let mut per_element = Vec::with_capacity(m.outcome_count());
        for e in m.elements() {
            let (values, vectors) = herm_eigen(e.matrix())?;
            let mut projector = ComplexMatrix::<T>::zeros(dim, dim);
            let mut rank = 0;
            for (k, &v) in values.iter().enumerate() {
                if v >= T::one() - tol {
                    let col = vectors.column(k).into_owned();
                    projector += &col * col.adjoint();
                    rank += 1;
                }
            }
            per_element.push((rank > 0).then_some(projector));
        }
        if per_element.iter().all(Option::is_none) {
            return Ok(None);
        }
        unit_projectors.push(per_element);
    }

    let n = T::from_usize(ms.len()).unwrap();
    let mut combo = vec![0usize; ms.len()];
    'combos: loop {
        if combo
            .iter()
            .enumerate()
            .all(|(m, &alpha)| unit_projectors[m][alpha].is_some())
        {
            let mut averaged = ComplexMatrix::<T>::zeros(dim, dim);
            for (m, &alpha) in combo.iter().enumerate() {
                averaged += unit_projectors[m][alpha].as_ref().unwrap();
            }
            averaged = averaged.map(|z| z / Complex::new(n, T::zero()));
            let (values, vectors) = herm_eigen(&averaged)?;
            if values[0] >= T::one() - tol {
                let candidate = vectors.column(0).into_owned();
                let ok = combo.iter().enumerate().all(|(m, &alpha)| {
                    let e = ms[m].element(alpha).matrix();
                    let psi: Vec<Complex<T>> = candidate.iter().copied().collect();
                    quadratic_form(e, &psi) >= T::one() - tol
                });
                if ok {
                    return Ok(Some(DensityMatrix::from_pure(&candidate)?));
                }
            }
        }
        // next combination, first measurement fastest
        for m in 0..combo.len() {
            combo[m] += 1;
            if combo[m] < ms[m].outcome_count() {
                continue 'combos;
            }
            combo[m] = 0;
        }
        break;
    }
    Ok(None)
}

impl<T: Real + Serialize> Serialize for Witness<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Witness", 4)?;
        s.serialize_field("j", &self.component)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("space", &self.space)?;
        match self.state.bloch_vector() {
            Some(bloch) => s.serialize_field("bloch", &bloch)?,
            None => s.serialize_field("state", &self.state)?,
        }
        s.end()
    }
}

impl<T: Real + Serialize> Serialize for BoundResult<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BoundResult", 3)?;
        s.serialize_field("envelope", self.envelope.partial_sums())?;
        s.serialize_field("bound", &self.bound)?;
        s.serialize_field("witnesses", &self.witnesses)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{spin_component_measurement, SpinAxis};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use nalgebra::DVector;

    fn xy() -> Vec<Measurement<f64>> {
        vec![
            spin_component_measurement(SpinAxis::X),
            spin_component_measurement(SpinAxis::Y),
        ]
    }

    #[test]
    fn common_eigenstate_examples() {
        let sx = spin_component_measurement::<f64>(SpinAxis::X);
        let repeated = vec![sx.clone(), sx.clone()];
        let witness = has_common_eigenstate(&repeated, 1e-8).unwrap().unwrap();
        // |+⟩ up to phase
        let bloch = witness.bloch_vector().unwrap();
        assert_abs_diff_eq!(bloch[0].abs(), 1.0, epsilon = 1e-9);

        assert!(has_common_eigenstate(&xy(), 1e-8).unwrap().is_none());

        // diagonal pair sharing e1
        let sz = spin_component_measurement::<f64>(SpinAxis::Z);
        let diag3 = Measurement::new(
            "diag3",
            vec![
                ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
                    Complex::new(1.0, 0.0),
                    Complex::new(0.0, 0.0),
                ])),
                ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
                    Complex::new(0.0, 0.0),
                    Complex::new(0.5, 0.0),
                ])),
                ComplexMatrix::from_diagonal(&DVector::from_vec(vec![
                    Complex::new(0.0, 0.0),
                    Complex::new(0.5, 0.0),
                ])),
            ],
        )
        .unwrap();
        let witness = has_common_eigenstate(&[sz, diag3], 1e-8).unwrap().unwrap();
        assert_abs_diff_eq!(witness.matrix()[(0, 0)].re, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn quasi_entropic_examples() {
        let shannon = ConcaveMeasure::shannon();
        let sx = vec![spin_component_measurement::<f64>(SpinAxis::X)];
        let eigenstate = crate::quantum::bloch_to_density([1.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(
            quasi_entropic_uncertainty(&shannon, &sx, &eigenstate).unwrap(),
            0.0,
            epsilon = 1e-12
        );

        let unpolarized = DensityMatrix::maximally_mixed(2);
        assert_relative_eq!(
            quasi_entropic_uncertainty(&shannon, &xy(), &unpolarized).unwrap(),
            4.0_f64.ln(),
            epsilon = 1e-12
        );

        let c = 1.0 / 2.0_f64.sqrt();
        let leaning = crate::quantum::bloch_to_density([c, c, 0.0]).unwrap();
        assert_relative_eq!(
            quasi_entropic_uncertainty(&shannon, &xy(), &leaning).unwrap(),
            0.832991061399375,
            epsilon = 1e-9
        );
    }

    #[test]
    fn concavity_spot_check_rejects_convex_functions() {
        assert!(ConcaveMeasure::from_component_fn("square", |x: f64| x * x).is_err());
        assert!(ConcaveMeasure::from_component_fn("sqrt", |x: f64| x.sqrt()).is_ok());
        assert!(ConcaveMeasure::from_vector_fn("max", |v: &[f64]| {
            v.iter().cloned().fold(0.0, f64::max)
        })
        .is_err());
        // min is concave
        assert!(ConcaveMeasure::from_vector_fn("min", |v: &[f64]| {
            v.iter().cloned().fold(1.0, f64::min)
        })
        .is_ok());
        assert!(ConcaveMeasure::<f64>::tsallis(1.0).is_err());
        assert!(ConcaveMeasure::<f64>::tsallis(-0.5).is_err());
    }

    #[test]
    fn witness_serialization_switches_on_dimension() {
        let cfg = SearchConfig {
            restarts: 4,
            ..SearchConfig::default()
        };
        let qubit = supremum_bound(&xy(), &cfg).unwrap();
        let w = serde_json::to_value(&qubit.witnesses[0]).unwrap();
        assert!(w["bloch"].is_array());
        assert_eq!(w["j"], 1);

        // a qutrit basis measurement: witnesses carry the full state
        let basis3 = Measurement::new(
            "qutrit_basis",
            (0..3)
                .map(|k| {
                    let mut e = ComplexMatrix::<f64>::zeros(3, 3);
                    e[(k, k)] = Complex::new(1.0, 0.0);
                    e
                })
                .collect(),
        )
        .unwrap();
        let qutrit = supremum_bound(&[basis3], &cfg).unwrap();
        assert!((qutrit.bound.entries()[0] - 1.0).abs() < 1e-9);
        let w = serde_json::to_value(&qutrit.witnesses[0]).unwrap();
        assert!(w["bloch"].is_null());
        assert_eq!(w["state"]["dim"], 3);
    }

    #[test]
    fn search_works_in_single_precision() {
        let ms: Vec<Measurement<f32>> = vec![
            spin_component_measurement(SpinAxis::X),
            spin_component_measurement(SpinAxis::Y),
        ];
        let cfg = SearchConfig::<f32> {
            restarts: 8,
            ..SearchConfig::default()
        };
        let result = supremum_bound(&ms, &cfg).unwrap();
        assert!((result.bound.entries()[0] - 0.728_553_4).abs() < 1e-3);
        assert!((result.bound.entries()[1] - 0.271_446_6).abs() < 1e-3);
    }

    #[test]
    fn config_validation() {
        let cfg = SearchConfig::<f64> {
            restarts: 0,
            ..SearchConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig::<f64> {
            step_tolerance: 0.0,
            ..SearchConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig::<f64>::default();
        assert!(matches!(
            mu_sup_component(&xy(), 0, &cfg),
            Err(Error::ComponentIndex { .. })
        ));
        assert!(matches!(
            mu_sup_component(&xy(), 5, &cfg),
            Err(Error::ComponentIndex { .. })
        ));
    }
}
