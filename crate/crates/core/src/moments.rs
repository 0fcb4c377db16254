//! Moment sequences `s_0, s_1, …` of `φ(λ) = -Σ s_j / λ^(j+1)`, their
//! Hankel determinants and normal indices.

use crate::error::{Error, Result};
use crate::linalg::bareiss_det;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence<T> {
    coeffs: Vec<T>,
    scale: T,
    normalized: bool,
    certified: usize,
}

impl<T: Scalar> MomentSequence<T> {
    /// Raw (unnormalized) data; every entry is certified.
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InsufficientMoments { needed: 1, available: 0 });
        }
        if coeffs.iter().any(|c| !c.approx().is_finite() && !T::EXACT) {
            return Err(Error::Parse("non-finite moment".into()));
        }
        let certified = coeffs.len();
        Ok(MomentSequence {
            coeffs,
            scale: T::one(),
            normalized: false,
            certified,
        })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| T::from_int(v)).collect()).expect("nonempty")
    }

    /// Marks only the first `certified` entries as trustworthy.
    pub fn with_certified(mut self, certified: usize) -> Self {
        self.certified = certified.min(self.coeffs.len());
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Normalization factor applied to the raw input (1 if never normalized).
    pub fn scale(&self) -> &T {
        &self.scale
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Number of leading coefficients known to be exact.
    pub fn certified(&self) -> usize {
        self.certified
    }

    /// Largest entry modulus, the reference scale of the float zero test.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.approx().abs()).fold(0.0, f64::max)
    }

    /// Index of the first entry that is nonzero (relative to the max-norm
    /// in the float ring).
    pub fn first_nonzero(&self) -> Option<usize> {
        let scale = self.max_norm();
        self.coeffs.iter().position(|c| !c.is_negligible(scale))
    }
}

/// `det(s_{i+k})_{i,k<n}`. The empty determinant (`n = 0`) is 1.
pub fn hankel_det<T: Scalar>(s: &MomentSequence<T>, n: usize) -> Result<T> {
    let m = hankel_window(s.coeffs(), n)?;
    Ok(bareiss_det(m))
}

fn hankel_window<T: Scalar>(s: &[T], n: usize) -> Result<Vec<Vec<T>>> {
    if n > 0 && 2 * n - 1 > s.len() {
        return Err(Error::InsufficientMoments {
            needed: 2 * n - 1,
            available: s.len(),
        });
    }
    Ok((0..n).map(|i| s[i..i + n].to_vec()).collect())
}

/// Zero test on a Hankel determinant. The float ring rescales the window to
/// unit max-norm first.
fn hankel_vanishes<T: Scalar>(s: &[T], n: usize) -> Result<bool> {
    let mut m = hankel_window(s, n)?;
    if !T::EXACT {
        let norm = m.iter().flatten().map(|c| c.approx().abs()).fold(0.0, f64::max);
        if norm == 0.0 {
            return Ok(true);
        }
        let inv = T::from_f64(1.0 / norm).expect("finite scale");
        for c in m.iter_mut().flatten() {
            *c = c.clone() * inv.clone();
        }
    }
    Ok(bareiss_det(m).is_negligible(1.0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalIndexList {
    pub indices: Vec<usize>,
    pub certified_up_to: usize,
}

/// All `n ≤ n_max` with nonvanishing `n × n` Hankel determinant.
pub fn normal_indices<T: Scalar>(s: &MomentSequence<T>, n_max: usize) -> Result<NormalIndexList> {
    if n_max > 0 && 2 * n_max - 1 > s.len() {
        return Err(Error::InsufficientMoments {
            needed: 2 * n_max - 1,
            available: s.len(),
        });
    }
    let mut indices = Vec::new();
    for n in 1..=n_max {
        if !hankel_vanishes(s.coeffs(), n)? {
            indices.push(n);
        }
    }
    Ok(NormalIndexList {
        indices,
        certified_up_to: n_max,
    })
}

/// Divides by the modulus of the first nonzero entry, so that entry becomes
/// ±1. The accumulated factor is kept in `scale`.
pub fn normalize<T: Scalar>(s: &MomentSequence<T>) -> Result<MomentSequence<T>> {
    let i = s.first_nonzero().ok_or(Error::AllZero)?;
    let c = s.coeffs[i].abs();
    let mut coeffs: Vec<T> = s.coeffs.iter().map(|x| x.clone() / c.clone()).collect();
    // make the pivot exact in the float ring as well
    coeffs[i] = if s.coeffs[i].is_negative() { -T::one() } else { T::one() };
    if !T::EXACT {
        for x in coeffs.iter_mut().take(i) {
            *x = T::zero();
        }
    }
    Ok(MomentSequence {
        coeffs,
        scale: s.scale.clone() * c,
        normalized: true,
        certified: s.certified,
    })
}
