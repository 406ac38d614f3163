//! Finite-dimensional quantum states and generalized measurements.
//!
//! States are density matrices (Hermitian, positive semidefinite, unit
//! trace); measurements are ordered lists of POVM elements summing to the
//! identity. Outcome statistics follow the Born rule `p_α = tr(E_α ρ)`, and
//! several measurements on identically prepared states combine through the
//! outer product of their outcome vectors.

use nalgebra::{Complex, ComplexField, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{outer_product, ProbVec};
use crate::real::Real;

/// Dense complex matrix storage used for operators and states.
pub type ComplexMatrix<T> = DMatrix<Complex<T>>;

/// Axis label for the spin-1/2 component measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

impl SpinAxis {
    fn label(self) -> &'static str {
        match self {
            SpinAxis::X => "sigma_x",
            SpinAxis::Y => "sigma_y",
            SpinAxis::Z => "sigma_z",
        }
    }
}

/// The Pauli matrix along `axis`.
pub fn pauli<T: Real>(axis: SpinAxis) -> ComplexMatrix<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    match axis {
        SpinAxis::X => DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        SpinAxis::Y => DMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        SpinAxis::Z => DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    }
}

/// Largest entrywise deviation from Hermitian symmetry, `max |A_ij − Ā_ji|`.
pub fn hermiticity_defect<T: Real>(m: &ComplexMatrix<T>) -> T {
    let mut defect = T::zero();
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            defect = defect.max((m[(i, j)] - m[(j, i)].conj()).modulus());
        }
    }
    defect
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order and deterministically phase-fixed eigenvectors.
///
/// Each eigenvector is rotated so its first significant component is real and
/// positive; within a numerically degenerate eigenvalue block the vectors are
/// ordered lexicographically, so repeated runs agree even when the backend
/// returns the block in a different basis order.
pub fn herm_eigen<T: Real>(m: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let eig = m
        .clone()
        .try_symmetric_eigen(T::default_epsilon(), 100_000)
        .ok_or(Error::EigenFailure)?;
    let dim = m.nrows();
    let mut vectors = eig.eigenvectors;
    let threshold: T = nalgebra::convert(1e-8);
    for mut col in vectors.column_iter_mut() {
        let lead = col.iter().find(|z| z.modulus() > threshold).copied();
        if let Some(z) = lead {
            let phase = z / Complex::new(z.modulus(), T::zero());
            for entry in col.iter_mut() {
                *entry /= phase;
            }
        }
    }
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    // Within a numerically degenerate run, fall back to a lexicographic
    // ordering of the (phase-fixed) eigenvectors. Runs are found first so
    // the sort comparators stay total orders.
    let degeneracy_tol: T = nalgebra::convert(1e-10);
    let lexicographic = |&a: &usize, &b: &usize| {
        for k in 0..dim {
            let (za, zb) = (vectors[(k, a)], vectors[(k, b)]);
            match za.re.partial_cmp(&zb.re).unwrap() {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
            match za.im.partial_cmp(&zb.im).unwrap() {
                std::cmp::Ordering::Equal => {}
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    };
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim
            && (eig.eigenvalues[order[end - 1]] - eig.eigenvalues[order[end]]).abs()
                <= degeneracy_tol
        {
            end += 1;
        }
        if end - start > 1 {
            order[start..end].sort_by(lexicographic);
        }
        start = end;
    }
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let sorted = ComplexMatrix::from_columns(
        &order.iter().map(|&k| vectors.column(k).into_owned()).collect::<Vec<_>>(),
    );
    Ok((values, sorted))
}

/// Positive-semidefinite square root of a Hermitian matrix; small negative
/// eigenvalues are clamped to zero.
pub fn psd_sqrt<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let (values, vectors) = herm_eigen(m)?;
    let roots = DMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values
            .iter()
            .map(|&v| Complex::new(v.max(T::zero()).sqrt(), T::zero())),
    ));
    Ok(&vectors * roots * vectors.adjoint())
}

fn real_trace<T: Real>(m: &ComplexMatrix<T>) -> T {
    (0..m.nrows()).map(|i| m[(i, i)].re).fold(T::zero(), |a, b| a + b)
}

fn trace_product<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Complex<T> {
    let mut tr = Complex::new(T::zero(), T::zero());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            tr += a[(i, j)] * b[(j, i)];
        }
    }
    tr
}

/// A density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
}

/// Validation report produced by [`validate_state`].
#[derive(Debug, Clone, Copy)]
pub struct StateDiagnostics<T: Real> {
    pub hermiticity_defect: T,
    pub min_eigenvalue: T,
    pub trace_defect: T,
    pub accepted: bool,
}

/// Reports the Hermiticity defect, minimum eigenvalue and trace defect of a
/// candidate state, accepting it iff all are within tolerance.
pub fn validate_state<T: Real>(matrix: &ComplexMatrix<T>) -> Result<StateDiagnostics<T>> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare {
            rows: matrix.nrows(),
            cols: matrix.ncols(),
        });
    }
    let hermiticity = hermiticity_defect(matrix);
    let symmetrized = (matrix + matrix.adjoint()).scale(nalgebra::convert(0.5));
    let (values, _) = herm_eigen(&symmetrized)?;
    let min_eigenvalue = values.last().copied().unwrap_or_else(T::zero);
    let trace_defect = (real_trace(matrix) - T::one()).abs();
    Ok(StateDiagnostics {
        hermiticity_defect: hermiticity,
        min_eigenvalue,
        trace_defect,
        accepted: hermiticity <= T::EPS_HERM
            && min_eigenvalue >= -T::EPS_PSD
            && trace_defect <= T::EPS_SUM,
    })
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let diagnostics = validate_state(&matrix)?;
        if diagnostics.hermiticity_defect > T::EPS_HERM {
            return Err(Error::NotHermitian {
                defect: diagnostics.hermiticity_defect.approx_f64(),
            });
        }
        if diagnostics.min_eigenvalue < -T::EPS_PSD {
            return Err(Error::NotPsd {
                min_eigenvalue: diagnostics.min_eigenvalue.approx_f64(),
            });
        }
        if diagnostics.trace_defect > T::EPS_SUM {
            return Err(Error::BadTrace {
                trace: real_trace(&matrix).approx_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: ComplexMatrix<T>) -> Self {
        debug_assert!(matrix.is_square());
        Self { matrix }
    }

    /// The pure state `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &DVector<Complex<T>>) -> Result<Self> {
        let norm_sq = psi.iter().map(|z| z.modulus_squared()).fold(T::zero(), |a, b| a + b);
        if norm_sq <= T::EPS_PROB {
            return Err(Error::VanishingOutcome {
                probability: norm_sq.approx_f64(),
            });
        }
        let outer = psi * psi.adjoint();
        Ok(Self::new_unchecked(outer.map(|z| z / Complex::new(norm_sq, T::zero()))))
    }

    /// `I/d`, the state with no information at all.
    pub fn maximally_mixed(dim: usize) -> Self {
        assert!(dim >= 1);
        let p = T::one() / T::from_usize(dim).unwrap();
        Self::new_unchecked(ComplexMatrix::from_diagonal_element(
            dim,
            dim,
            Complex::new(p, T::zero()),
        ))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// The polarization vector `(tr ρσ_x, tr ρσ_y, tr ρσ_z)`; only defined on
    /// qubits.
    pub fn bloch_vector(&self) -> Option<[T; 3]> {
        if self.dim() != 2 {
            return None;
        }
        Some([
            trace_product(&pauli::<T>(SpinAxis::X), &self.matrix).re,
            trace_product(&pauli::<T>(SpinAxis::Y), &self.matrix).re,
            trace_product(&pauli::<T>(SpinAxis::Z), &self.matrix).re,
        ])
    }
}

/// Builds the qubit state `(1 + p·σ)/2` from a polarization vector.
pub fn bloch_to_density<T: Real>(p: [T; 3]) -> Result<DensityMatrix<T>> {
    let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if norm > T::one() + T::EPS_PSD {
        return Err(Error::BlochNormExceedsOne {
            norm: norm.approx_f64(),
        });
    }
    let half = nalgebra::convert::<f64, T>(0.5);
    let mut m = ComplexMatrix::identity(2, 2);
    m += pauli::<T>(SpinAxis::X).map(|z| z * Complex::new(p[0], T::zero()));
    m += pauli::<T>(SpinAxis::Y).map(|z| z * Complex::new(p[1], T::zero()));
    m += pauli::<T>(SpinAxis::Z).map(|z| z * Complex::new(p[2], T::zero()));
    Ok(DensityMatrix::new_unchecked(m.map(|z| z * Complex::new(half, T::zero()))))
}

/// One POVM element: Hermitian, positive semidefinite, operator norm ≤ 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmElement<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> PovmElement<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let defect = hermiticity_defect(&matrix);
        if defect > T::EPS_HERM {
            return Err(Error::NotHermitian {
                defect: defect.approx_f64(),
            });
        }
        let (values, _) = herm_eigen(&matrix)?;
        let min = values.last().copied().unwrap_or_else(T::zero);
        let max = values.first().copied().unwrap_or_else(T::zero);
        if min < -T::EPS_PSD {
            return Err(Error::NotPsd {
                min_eigenvalue: min.approx_f64(),
            });
        }
        if max > T::one() + T::EPS_PSD {
            return Err(Error::NormExceedsOne {
                norm: max.approx_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// A measurement operator `M`, with `M†M` the paired POVM element.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOperator<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> MeasurementOperator<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// `M†M`, the element this operator realizes.
    pub fn element_matrix(&self) -> ComplexMatrix<T> {
        self.matrix.adjoint() * &self.matrix
    }
}

/// An ordered POVM: elements summing to the identity, optionally paired with
/// the measurement operators needed for post-measurement states.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement<T: Real> {
    label: String,
    elements: Vec<PovmElement<T>>,
    operators: Option<Vec<MeasurementOperator<T>>>,
}

impl<T: Real> Measurement<T> {
    pub fn new(label: impl Into<String>, elements: Vec<ComplexMatrix<T>>) -> Result<Self> {
        Self::build(label.into(), elements, None)
    }

    /// As [`Measurement::new`], but also stores one operator per element and
    /// checks `M†_α M_α = E_α`.
    pub fn with_operators(
        label: impl Into<String>,
        elements: Vec<ComplexMatrix<T>>,
        operators: Vec<ComplexMatrix<T>>,
    ) -> Result<Self> {
        Self::build(label.into(), elements, Some(operators))
    }

    fn build(
        label: String,
        elements: Vec<ComplexMatrix<T>>,
        operators: Option<Vec<ComplexMatrix<T>>>,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        let dim = elements[0].nrows();
        let mut validated = Vec::with_capacity(elements.len());
        let mut total = ComplexMatrix::<T>::zeros(dim, dim);
        for e in elements {
            if e.nrows() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.nrows(),
                });
            }
            total += &e;
            validated.push(PovmElement::new(e)?);
        }
        let identity = ComplexMatrix::<T>::identity(dim, dim);
        let defect = (total - identity)
            .iter()
            .map(|z| z.modulus())
            .fold(T::zero(), |a, b| a.max(b));
        if defect > T::EPS_SUM {
            return Err(Error::IncompleteMeasurement {
                defect: defect.approx_f64(),
            });
        }
        let operators = match operators {
            None => None,
            Some(ops) => {
                if ops.len() != validated.len() {
                    return Err(Error::DimensionMismatch {
                        left: validated.len(),
                        right: ops.len(),
                    });
                }
                let mut out = Vec::with_capacity(ops.len());
                for (index, m) in ops.into_iter().enumerate() {
                    let op = MeasurementOperator::new(m)?;
                    let defect = (op.element_matrix() - validated[index].matrix())
                        .iter()
                        .map(|z| z.modulus())
                        .fold(T::zero(), |a, b| a.max(b));
                    if defect > T::EPS_SUM {
                        return Err(Error::OperatorElementMismatch {
                            index,
                            defect: defect.approx_f64(),
                        });
                    }
                    out.push(op);
                }
                Some(out)
            }
        };
        Ok(Self {
            label,
            elements: validated,
            operators,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn outcome_count(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PovmElement<T>] {
        &self.elements
    }

    pub fn element(&self, alpha: usize) -> &PovmElement<T> {
        &self.elements[alpha]
    }

    /// The operator for outcome `alpha`: the stored one if provided,
    /// otherwise the canonical PSD square root `E^{1/2}`.
    pub fn operator(&self, alpha: usize) -> Result<MeasurementOperator<T>> {
        if let Some(ops) = &self.operators {
            return Ok(ops[alpha].clone());
        }
        Ok(MeasurementOperator {
            matrix: psd_sqrt(self.elements[alpha].matrix())?,
        })
    }

    pub fn has_operators(&self) -> bool {
        self.operators.is_some()
    }
}

/// The two-outcome projective measurement of a spin component,
/// `{(1 ± σ_axis)/2}`.
pub fn spin_component_measurement<T: Real>(axis: SpinAxis) -> Measurement<T> {
    let half = Complex::new(nalgebra::convert::<f64, T>(0.5), T::zero());
    let identity = ComplexMatrix::<T>::identity(2, 2);
    let sigma = pauli::<T>(axis);
    let plus = (&identity + &sigma).map(|z| z * half);
    let minus = (&identity - &sigma).map(|z| z * half);
    // projectors are their own measurement operators
    Measurement::with_operators(
        axis.label(),
        vec![plus.clone(), minus.clone()],
        vec![plus, minus],
    )
    .expect("spin component measurement is a valid POVM")
}

/// Born-rule outcome distribution `p_α = Re tr(E_α ρ)`; negative rounding
/// noise within [`Real::EPS_PSD`] is clamped to zero.
pub fn born_probabilities<T: Real>(
    m: &Measurement<T>,
    rho: &DensityMatrix<T>,
) -> Result<ProbVec<T>> {
    if m.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: rho.dim(),
        });
    }
    let entries = m
        .elements
        .iter()
        .map(|e| {
            let p = trace_product(e.matrix(), rho.matrix()).re;
            if p < T::zero() && p >= -T::EPS_PSD {
                T::zero()
            } else {
                p
            }
        })
        .collect();
    ProbVec::new(entries)
}

/// Joint outcome distribution of several measurements on identically
/// prepared states: the outer product of the individual Born vectors, first
/// measurement slowest.
pub fn joint_distribution<T: Real>(
    ms: &[Measurement<T>],
    rho: &DensityMatrix<T>,
) -> Result<ProbVec<T>> {
    if ms.is_empty() {
        return Err(Error::EmptySet);
    }
    let vecs = ms
        .iter()
        .map(|m| born_probabilities(m, rho))
        .collect::<Result<Vec<_>>>()?;
    outer_product(&vecs)
}

/// Conditional state after observing the outcome of `op`:
/// `MρM† / tr(M†M ρ)`. Fails when the outcome probability vanishes.
pub fn post_measurement_state<T: Real>(
    op: &MeasurementOperator<T>,
    rho: &DensityMatrix<T>,
) -> Result<DensityMatrix<T>> {
    if op.matrix.nrows() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: op.matrix.nrows(),
            right: rho.dim(),
        });
    }
    let probability = trace_product(&op.element_matrix(), rho.matrix()).re;
    if probability <= T::EPS_PROB {
        return Err(Error::VanishingOutcome {
            probability: probability.approx_f64(),
        });
    }
    let updated = (&op.matrix * rho.matrix() * op.matrix.adjoint())
        .map(|z| z / Complex::new(probability, T::zero()));
    DensityMatrix::new(updated)
}

// ---------------------------------------------------------------------------
// JSON wire format: complex entries as [re, im] pairs.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct MatrixRepr<T> {
    dim: usize,
    entries: Vec<Vec<[T; 2]>>,
}

fn matrix_to_repr<T: Real>(m: &ComplexMatrix<T>) -> MatrixRepr<T> {
    MatrixRepr {
        dim: m.nrows(),
        entries: (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect(),
    }
}

fn repr_to_matrix<T: Real>(repr: &MatrixRepr<T>) -> Result<ComplexMatrix<T>> {
    if repr.entries.len() != repr.dim || repr.entries.iter().any(|row| row.len() != repr.dim) {
        return Err(Error::NotSquare {
            rows: repr.entries.len(),
            cols: repr.entries.first().map_or(0, Vec::len),
        });
    }
    Ok(ComplexMatrix::from_fn(repr.dim, repr.dim, |i, j| {
        Complex::new(repr.entries[i][j][0], repr.entries[i][j][1])
    }))
}

impl<T: Real + Serialize> Serialize for PovmElement<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_repr(&self.matrix).serialize(serializer)
    }
}

impl<T: Real + Serialize> Serialize for DensityMatrix<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        matrix_to_repr(&self.matrix).serialize(serializer)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for DensityMatrix<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<T>::deserialize(deserializer)?;
        let matrix = repr_to_matrix(&repr).map_err(serde::de::Error::custom)?;
        DensityMatrix::new(matrix).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MeasurementRepr<T> {
    label: String,
    elements: Vec<MatrixRepr<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    operators: Option<Vec<MatrixRepr<T>>>,
}

impl<T: Real + Serialize> Serialize for Measurement<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MeasurementRepr {
            label: self.label.clone(),
            elements: self.elements.iter().map(|e| matrix_to_repr(e.matrix())).collect(),
            operators: self
                .operators
                .as_ref()
                .map(|ops| ops.iter().map(|o| matrix_to_repr(o.matrix())).collect()),
        }
        .serialize(serializer)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for Measurement<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MeasurementRepr::<T>::deserialize(deserializer)?;
        let elements = repr
            .elements
            .iter()
            .map(repr_to_matrix)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let built = match repr.operators {
            None => Measurement::new(repr.label, elements),
            Some(ops) => {
                let operators = ops
                    .iter()
                    .map(repr_to_matrix)
                    .collect::<Result<Vec<_>>>()
                    .map_err(serde::de::Error::custom)?;
                Measurement::with_operators(repr.label, elements, operators)
            }
        };
        built.map_err(serde::de::Error::custom)
    }
}
