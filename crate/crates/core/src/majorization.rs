//! The majorization partial order on probability vectors, together with the
//! lattice-style infimum/supremum construction.
//!
//! A vector `a` is majorized by `b` (written `a ≺ b`) when every prefix sum of
//! the descending rearrangement of `a` is bounded by the corresponding prefix
//! sum for `b`; vectors of different lengths are padded with trailing zeros.
//! Under this order the uniform vector sits at the bottom and the point mass
//! `(1, 0, …, 0)` at the top, so `≺` ranks vectors from "more disordered" to
//! "more concentrated".
//!
//! The infimum of a set is obtained by differencing the pointwise minimum of
//! the prefix-sum curves; that difference sequence is automatically
//! nonincreasing. The supremum takes the pointwise maximum instead, and the
//! resulting increments may fail to be descending, which is repaired by
//! [`flatten`] (pool-adjacent-violators averaging) without giving up the
//! upper-bound property.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// Outcome of comparing two probability vectors under majorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MajorizationOrder {
    /// `a ≺ b` and the sorted vectors differ.
    StrictlyBelow,
    /// `b ≺ a` and the sorted vectors differ.
    StrictlyAbove,
    /// The descending rearrangements agree.
    Equivalent,
    /// Prefix-sum inequalities point both ways.
    Incomparable,
}

/// A finite probability vector: nonnegative entries summing to one.
///
/// Entries whose magnitude is below [`Real::EPS_PROB`] are snapped to zero at
/// construction; entries more negative than that are rejected, as is any
/// vector whose sum strays from 1 by more than [`Real::EPS_SUM`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec<T: Real> {
    entries: Vec<T>,
}

impl<T: Real> ProbVec<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        let mut sum = T::zero();
        for (index, &value) in entries.iter().enumerate() {
            if !value.approx_f64().is_finite() {
                return Err(Error::NonFiniteEntry { index });
            }
            if value < -T::EPS_PROB {
                return Err(Error::NegativeEntry {
                    index,
                    value: value.approx_f64(),
                });
            }
            sum += value;
        }
        if (sum - T::one()).abs() > T::EPS_SUM {
            return Err(Error::NotNormalized {
                sum: sum.approx_f64(),
            });
        }
        let entries = entries
            .into_iter()
            .map(|e| if e.abs() < T::EPS_PROB { T::zero() } else { e })
            .collect();
        Ok(Self { entries })
    }

    /// The deterministic vector `(1, 0, …, 0)` of the given length.
    pub fn point_mass(len: usize) -> Self {
        assert!(len >= 1);
        let mut entries = vec![T::zero(); len];
        entries[0] = T::one();
        Self { entries }
    }

    /// The uniform vector `(1/n, …, 1/n)`.
    pub fn uniform(len: usize) -> Self {
        assert!(len >= 1);
        let p = T::one() / T::from_usize(len).unwrap();
        Self {
            entries: vec![p; len],
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The descending rearrangement `v↓`.
    pub fn sorted_descending(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite entries"));
        Self { entries }
    }

    /// Prefix sums of the descending rearrangement, padded with trailing
    /// zeros to length `len`. Index 0 holds the largest entry's sum.
    fn prefix_sums(&self, len: usize) -> Vec<T> {
        let sorted = self.sorted_descending();
        let mut sums = Vec::with_capacity(len);
        let mut acc = T::zero();
        for j in 0..len {
            acc += sorted.entries.get(j).copied().unwrap_or_else(T::zero);
            sums.push(acc);
        }
        sums
    }
}

impl<T: Real + Serialize> Serialize for ProbVec<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de, T: Real + Deserialize<'de>> Deserialize<'de> for ProbVec<T> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<T>::deserialize(deserializer)?;
        ProbVec::new(entries).map_err(serde::de::Error::custom)
    }
}

/// Cumulative prefix-sum curve of a (virtual) descending vector, with a
/// leading zero: `[0, μ_1, …, μ_d]`. Must be nondecreasing and end at 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixEnvelope<T: Real> {
    partial_sums: Vec<T>,
}

impl<T: Real> PrefixEnvelope<T> {
    /// Wraps raw partial sums `[0, μ_1, …, μ_d]`, checking monotonicity and
    /// the final value.
    pub fn new(partial_sums: Vec<T>) -> Result<Self> {
        if partial_sums.len() < 2 || partial_sums[0] != T::zero() {
            return Err(Error::NotMonotone { index: 0 });
        }
        for i in 1..partial_sums.len() {
            if partial_sums[i] < partial_sums[i - 1] - T::EPS_PREFIX {
                return Err(Error::NotMonotone { index: i });
            }
        }
        let last = *partial_sums.last().unwrap();
        if (last - T::one()).abs() > T::EPS_SUM {
            return Err(Error::NotNormalized {
                sum: last.approx_f64(),
            });
        }
        Ok(Self { partial_sums })
    }

    /// Pointwise minimum of the prefix-sum curves of a set of vectors.
    pub fn lower(vs: &[ProbVec<T>]) -> Result<Self> {
        Self::envelope(vs, |a, b| a.min(b))
    }

    /// Pointwise maximum of the prefix-sum curves of a set of vectors.
    pub fn upper(vs: &[ProbVec<T>]) -> Result<Self> {
        Self::envelope(vs, |a, b| a.max(b))
    }

    fn envelope(vs: &[ProbVec<T>], pick: impl Fn(T, T) -> T) -> Result<Self> {
        let d = vs.iter().map(ProbVec::len).max().ok_or(Error::EmptySet)?;
        let mut acc = vs[0].prefix_sums(d);
        for v in &vs[1..] {
            for (a, b) in acc.iter_mut().zip(v.prefix_sums(d)) {
                *a = pick(*a, b);
            }
        }
        let mut partial_sums = Vec::with_capacity(d + 1);
        partial_sums.push(T::zero());
        partial_sums.extend(acc);
        Self::new(partial_sums)
    }

    /// The difference sequence `μ_i - μ_{i-1}`, clamping away rounding noise.
    pub fn increments(&self) -> Vec<T> {
        self.partial_sums
            .windows(2)
            .map(|w| (w[1] - w[0]).max(T::zero()))
            .collect()
    }

    /// Partial sums including the leading zero.
    pub fn partial_sums(&self) -> &[T] {
        &self.partial_sums
    }

    /// Number of vector components the curve describes.
    pub fn dim(&self) -> usize {
        self.partial_sums.len() - 1
    }
}

/// Compares `a` and `b` under majorization, padding the shorter vector with
/// trailing zeros. Prefix sums equal within [`Real::EPS_PREFIX`] count as
/// equal in both directions.
pub fn compare<T: Real>(a: &ProbVec<T>, b: &ProbVec<T>) -> MajorizationOrder {
    let d = a.len().max(b.len());
    let pa = a.prefix_sums(d);
    let pb = b.prefix_sums(d);
    let mut a_le_b = true;
    let mut b_le_a = true;
    let mut all_equal = true;
    for (&x, &y) in pa.iter().zip(&pb) {
        if (x - y).abs() > T::EPS_PREFIX {
            all_equal = false;
            if x > y {
                a_le_b = false;
            } else {
                b_le_a = false;
            }
        }
    }
    if all_equal {
        MajorizationOrder::Equivalent
    } else if a_le_b {
        MajorizationOrder::StrictlyBelow
    } else if b_le_a {
        MajorizationOrder::StrictlyAbove
    } else {
        MajorizationOrder::Incomparable
    }
}

/// Whether `v` is strictly majorized by the point mass, i.e. carries any
/// uncertainty at all.
pub fn is_uncertain<T: Real>(v: &ProbVec<T>) -> bool {
    compare(v, &ProbVec::point_mass(v.len())) == MajorizationOrder::StrictlyBelow
}

/// Outer product of a list of probability vectors.
///
/// The entry layout is lexicographic with the first factor slowest, so the
/// result for `[a, b]` is `(a_1 b_1, a_1 b_2, …, a_2 b_1, …)`.
pub fn outer_product<T: Real>(vs: &[ProbVec<T>]) -> Result<ProbVec<T>> {
    if vs.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut acc = vec![T::one()];
    for v in vs {
        let mut next = Vec::with_capacity(acc.len() * v.len());
        for &x in &acc {
            for &y in v.entries() {
                next.push(x * y);
            }
        }
        acc = next;
    }
    ProbVec::new(acc)
}

/// Greatest lower bound of a set of probability vectors: majorized by every
/// member, and majorizing anything else with that property. The difference of
/// the lower prefix envelope is already descending, so no repair is needed.
pub fn infimum<T: Real>(vs: &[ProbVec<T>]) -> Result<ProbVec<T>> {
    let increments = PrefixEnvelope::lower(vs)?.increments();
    debug_assert!(increments.windows(2).all(|w| w[0] >= w[1] - T::EPS_PREFIX));
    ProbVec::new(increments)
}

/// Least upper bound of a set of probability vectors: the flattened
/// difference of the upper prefix envelope.
pub fn supremum<T: Real>(vs: &[ProbVec<T>]) -> Result<ProbVec<T>> {
    let increments = PrefixEnvelope::upper(vs)?.increments();
    ProbVec::new(flatten(&increments)?)
}

/// Repairs an increment sequence into a nonincreasing one with the same sum
/// by averaging maximal ascending runs (pool-adjacent-violators).
///
/// This is the order-independent fixpoint of repeatedly replacing an
/// ascending adjacent pair by its mean, and it can only raise prefix sums, so
/// an upper envelope stays an upper bound after the repair.
pub fn flatten<T: Real>(increments: &[T]) -> Result<Vec<T>> {
    for (index, &value) in increments.iter().enumerate() {
        if value < -T::EPS_PROB {
            return Err(Error::NegativeIncrement {
                index,
                value: value.approx_f64(),
            });
        }
    }
    // Blocks of merged entries as (sum, count); block means must descend.
    let mut blocks: Vec<(T, usize)> = Vec::with_capacity(increments.len());
    for &raw in increments {
        let mut sum = raw.max(T::zero());
        let mut count = 1usize;
        while let Some(&(prev_sum, prev_count)) = blocks.last() {
            let prev_mean = prev_sum / T::from_usize(prev_count).unwrap();
            let mean = sum / T::from_usize(count).unwrap();
            if mean > prev_mean {
                blocks.pop();
                sum += prev_sum;
                count += prev_count;
            } else {
                break;
            }
        }
        blocks.push((sum, count));
    }
    let mut out = Vec::with_capacity(increments.len());
    for (sum, count) in blocks {
        let mean = sum / T::from_usize(count).unwrap();
        out.extend(std::iter::repeat_n(mean, count));
    }
    Ok(out)
}

/// Shannon entropy `−Σ x ln x` in nats, with `0 ln 0 = 0`.
pub fn shannon_entropy<T: Real>(entries: &[T]) -> T {
    entries
        .iter()
        .filter(|&&x| x > T::zero())
        .map(|&x| -x * x.ln())
        .fold(T::zero(), |a, b| a + b)
}

/// Tsallis entropy `(1 − Σ x^q) / (q − 1)` for `q > 0`, `q ≠ 1`.
pub fn tsallis_entropy<T: Real>(entries: &[T], q: T) -> T {
    debug_assert!(q > T::zero() && q != T::one());
    let moment = entries
        .iter()
        .filter(|&&x| x > T::zero())
        .map(|&x| x.powf(q))
        .fold(T::zero(), |a, b| a + b);
    (T::one() - moment) / (q - T::one())
}
