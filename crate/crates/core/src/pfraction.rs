//! P-fraction expansion of a moment series
//!
//! `φ(λ) = -ε_0 / (p_0(λ) - ε_0 ε_1 b_0² / (p_1(λ) - ε_1 ε_2 b_1² / (p_2(λ) - …)))`
//!
//! with monic `p_j`, and the inverse map back to moments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{normalize, MomentSequence};
use crate::poly::Polynomial;
use crate::scalar::{Scalar, Sign};
use crate::series::reciprocal;

/// Default bound on block degrees.
pub const DEFAULT_DEGREE_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct PFractionTerm<T> {
    pub epsilon: Sign,
    /// `b_j²`; `None` when the data end before the coupling is determined
    /// (or the expansion terminated at this term).
    pub b_squared: Option<T>,
    pub p: Polynomial<T>,
}

impl<T: Scalar> PFractionTerm<T> {
    pub fn new(epsilon: Sign, b_squared: Option<T>, p: Polynomial<T>) -> Result<Self> {
        if !p.is_monic() || p.degree() == Some(0) {
            return Err(Error::NotMonic);
        }
        if let Some(b2) = &b_squared {
            if !b2.is_positive() {
                return Err(Error::Parse(format!("b_squared must be positive, got {}", b2.render())));
            }
        }
        Ok(PFractionTerm { epsilon, b_squared, p })
    }

    /// Block degree `k_j`.
    pub fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    pub fn to_f64(&self) -> PFractionTerm<f64> {
        PFractionTerm {
            epsilon: self.epsilon,
            b_squared: self.b_squared.as_ref().map(|b| b.approx()),
            p: self.p.to_f64(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Stopped at the requested number of terms.
    Open,
    /// The remainder vanished with enough depth to certify it.
    Terminated,
    /// The moment data ran out.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PFraction<T> {
    pub terms: Vec<PFractionTerm<T>>,
    pub status: Status,
    pub degree_cap: usize,
}

impl<T: Scalar> PFraction<T> {
    pub fn new(terms: Vec<PFractionTerm<T>>, status: Status, degree_cap: usize) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPFraction);
        }
        if let Some(t) = terms.iter().find(|t| t.degree() > degree_cap) {
            return Err(Error::DegreeCapExceeded {
                degree: t.degree(),
                cap: degree_cap,
            });
        }
        if let Some(j) = terms[..terms.len() - 1].iter().position(|t| t.b_squared.is_none()) {
            return Err(Error::MissingCoupling(j));
        }
        Ok(PFraction { terms, status, degree_cap })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Block degrees `k_j`.
    pub fn block_degrees(&self) -> Vec<usize> {
        self.terms.iter().map(PFractionTerm::degree).collect()
    }

    /// Partial sums `n_0 = 0, n_1 = k_0, …, n_J`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut n = vec![0];
        for t in &self.terms {
            n.push(n.last().unwrap() + t.degree());
        }
        n
    }

    /// The normal indices `n_1, …, n_J` of the underlying moment sequence.
    pub fn normal_indices(&self) -> Vec<usize> {
        self.offsets()[1..].to_vec()
    }

    /// Number of leading moments determined by the terms (`None`: all of
    /// them, the fraction is finite).
    pub fn certified_moments(&self) -> Option<usize> {
        match self.status {
            Status::Terminated => None,
            _ => Some(2 * self.offsets().last().unwrap()),
        }
    }

    pub fn to_f64(&self) -> PFraction<f64> {
        PFraction {
            terms: self.terms.iter().map(PFractionTerm::to_f64).collect(),
            status: self.status,
            degree_cap: self.degree_cap,
        }
    }

    /// Repeats the first `period` terms cyclically to `count` terms.
    pub fn periodic_extension(&self, period: usize, count: usize) -> Result<Self> {
        if period == 0 || period > self.terms.len() {
            return Err(Error::NotEnoughTerms {
                needed: period.max(1),
                available: self.terms.len(),
            });
        }
        if let Some(j) = self.terms[..period].iter().position(|t| t.b_squared.is_none()) {
            return Err(Error::MissingCoupling(j));
        }
        let terms = (0..count).map(|i| self.terms[i % period].clone()).collect();
        Ok(PFraction {
            terms,
            status: Status::Open,
            degree_cap: self.degree_cap,
        })
    }
}

/// What is left after one expansion step.
#[derive(Clone, Debug, PartialEq)]
pub enum Remainder<T> {
    /// Normalized moments of the next function `φ_1`.
    Tail(MomentSequence<T>),
    /// The remainder vanished through the known `depth`.
    Vanished { depth: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<T> {
    pub term: PFractionTerm<T>,
    pub remainder: Remainder<T>,
}

/// One step of the expansion: `-1/φ = ε p(λ) + b² φ_1(λ)`.
///
/// The first nonzero moment sits at index `k - 1`; the step consumes `2k`
/// moments of depth.
pub fn expand_step<T: Scalar>(tail: &MomentSequence<T>) -> Result<Step<T>> {
    let s = tail.coeffs();
    let depth = s.len();
    let first = tail.first_nonzero().ok_or(Error::AllZero)?;
    let k = first + 1;
    if depth < 2 * k {
        return Err(Error::InsufficientMoments {
            needed: 2 * k,
            available: depth,
        });
    }
    let lead = &s[first];
    let epsilon = Sign::of(lead);
    // φ = -x^k U(x) with U = (s_{k-1}, s_k, …); -1/φ = x^{-k} / U(x)
    let u = &s[first..];
    let r = reciprocal(u, u.len());
    let mut p = vec![T::zero(); k + 1];
    for (i, ri) in r.iter().take(k + 1).enumerate() {
        p[k - i] = epsilon.apply(ri.clone());
    }
    p[k] = T::one();
    let p = Polynomial::from_coeffs(p);
    // b² φ_1 = Σ_j r_{k+1+j} x^{j+1}, i.e. b² s^{(1)}_j = -r_{k+1+j}
    let rest: Vec<T> = r[k + 1..].iter().map(|c| -c.clone()).collect();
    let scale = r.iter().map(|c| c.approx().abs()).fold(0.0, f64::max);
    let remainder_depth = depth - 2 * k;
    debug_assert_eq!(rest.len(), remainder_depth);
    match rest.iter().position(|c| !c.is_negligible(scale)) {
        None => Ok(Step {
            term: PFractionTerm { epsilon, b_squared: None, p },
            remainder: Remainder::Vanished { depth: remainder_depth },
        }),
        Some(i) => {
            let mut rest = rest;
            if !T::EXACT {
                for c in rest.iter_mut().take(i) {
                    *c = T::zero();
                }
            }
            let b2 = rest[i].abs();
            let next = MomentSequence::new(rest)?;
            let next = normalize(&next)?;
            Ok(Step {
                term: PFractionTerm {
                    epsilon,
                    b_squared: Some(b2),
                    p,
                },
                remainder: Remainder::Tail(next),
            })
        }
    }
}

/// Full expansion. Stops after `max_terms` terms (`Open`), when the moment
/// depth cannot certify another block (`Exhausted`), or when the remainder
/// vanishes with depth at least 2 (`Terminated`).
pub fn expand<T: Scalar>(s: &MomentSequence<T>, max_terms: usize, degree_cap: usize) -> Result<PFraction<T>> {
    if max_terms == 0 {
        return Err(Error::EmptyPFraction);
    }
    let mut tail = normalize(s)?;
    let mut terms = Vec::new();
    let status = loop {
        if terms.len() >= max_terms {
            break Status::Open;
        }
        let Some(first) = tail.first_nonzero() else {
            // unreachable: tails are normalized, so they carry a ±1
            break Status::Exhausted;
        };
        let k = first + 1;
        if k > degree_cap {
            return Err(Error::DegreeCapExceeded { degree: k, cap: degree_cap });
        }
        if tail.len() < 2 * k {
            break Status::Exhausted;
        }
        let step = expand_step(&tail)?;
        terms.push(step.term);
        match step.remainder {
            Remainder::Tail(next) => tail = next,
            Remainder::Vanished { depth } if depth >= 2 => break Status::Terminated,
            Remainder::Vanished { .. } => break Status::Exhausted,
        }
    };
    if terms.is_empty() {
        return Err(Error::InsufficientMoments {
            needed: 2 * (tail.first_nonzero().unwrap_or(0) + 1),
            available: tail.len(),
        });
    }
    Ok(PFraction { terms, status, degree_cap })
}

/// Laurent coefficients of the finite composition
/// `f_j = -ε_j / (p_j + ε_j b_j² f_{j+1})`, `f_J = 0`, returned as moments
/// `s_i = -[λ^{-(i+1)}] f_0`. Coefficients beyond `pf.certified_moments()`
/// are marked uncertified.
pub fn to_moments<T: Scalar>(pf: &PFraction<T>, count: usize) -> Result<MomentSequence<T>> {
    if pf.terms.is_empty() {
        return Err(Error::EmptyPFraction);
    }
    if count == 0 {
        return Err(Error::InsufficientMoments { needed: 1, available: 0 });
    }
    let n = count + 1;
    // series of f_{j+1} in x = 1/λ, n coefficients
    let mut f: Vec<T> = vec![T::zero(); n];
    for (j, term) in pf.terms.iter().enumerate().rev() {
        let k = term.degree();
        // p(λ) = x^{-k} P~(x), P~(x) = Σ_i c_{k-i} x^i
        let mut den: Vec<T> = (0..n).map(|i| if i <= k { term.p.coeff(k - i) } else { T::zero() }).collect();
        let is_last = j + 1 == pf.terms.len();
        if !is_last {
            let b2 = term.b_squared.clone().ok_or(Error::MissingCoupling(j))?;
            let c = term.epsilon.apply(b2);
            for i in 0..n.saturating_sub(k) {
                den[i + k] = den[i + k].clone() + c.clone() * f[i].clone();
            }
        }
        let inv = reciprocal(&den, n);
        let mut next = vec![T::zero(); n];
        for i in 0..n.saturating_sub(k) {
            next[i + k] = term.epsilon.apply(-inv[i].clone());
        }
        f = next;
    }
    let coeffs: Vec<T> = (0..count).map(|i| -f[i + 1].clone()).collect();
    let certified = pf.certified_moments().map_or(count, |c| c.min(count));
    Ok(MomentSequence::new(coeffs)?.with_certified(certified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type Q = Rational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn catalan_moments(count: usize) -> MomentSequence<Q> {
        // s_{2i} = C_i, s_odd = 0
        let mut c = vec![1i64];
        for i in 0..count / 2 + 1 {
            let next = c[i] * 2 * (2 * i as i64 + 1) / (i as i64 + 2);
            c.push(next);
        }
        MomentSequence::from_ints(&(0..count).map(|i| if i % 2 == 0 { c[i / 2] } else { 0 }).collect::<Vec<_>>())
    }

    /// Moments of `-1/(λ² + m(λ))` with `m` the Catalan generating function,
    /// by an independent series composition in `x = 1/λ`.
    fn degenerate_composite(count: usize) -> MomentSequence<Q> {
        let cat = catalan_moments(count + 2);
        // m(λ) = -Σ C x^{i+1}; λ² + m = x^{-2} (1 + x² m)
        let mut d = vec![q(0); count + 1];
        d[0] = q(1);
        for i in 0..count + 1 {
            if i + 3 <= count {
                d[i + 3] = d[i + 3].clone() - cat.coeffs()[i].clone();
            }
        }
        let inv = reciprocal(&d, count + 1);
        // -1/(λ²+m) = -x² inv(x) so s_i = [x^{i+1}] x² inv = inv[i-1]
        let s: Vec<Q> = (0..count).map(|i| if i == 0 { q(0) } else { inv[i - 1].clone() }).collect();
        MomentSequence::new(s).unwrap()
    }

    fn term(eps: i64, b2: Option<i64>, p: &[i64]) -> PFractionTerm<Q> {
        PFractionTerm::new(Sign::of(&q(eps)), b2.map(q), Polynomial::from_ints(p)).unwrap()
    }

    #[test]
    fn composite_prefix() {
        let s = degenerate_composite(16);
        let expected = [0, 1, 0, 0, 1, 0, 1, 1, 2, 2, 6, 5, 17, 15, 51, 46];
        assert_eq!(s.coeffs(), MomentSequence::<Q>::from_ints(&expected).coeffs());
    }

    #[test]
    fn catalan_step() {
        let step = expand_step(&catalan_moments(10)).unwrap();
        assert_eq!(step.term, term(1, Some(1), &[0, 1]));
        match step.remainder {
            Remainder::Tail(t) => assert_eq!(t.coeffs(), catalan_moments(8).coeffs()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_step_leaves_catalan() {
        let step = expand_step(&degenerate_composite(12)).unwrap();
        assert_eq!(step.term, term(1, Some(1), &[0, 0, 1]));
        match step.remainder {
            Remainder::Tail(t) => assert_eq!(t.coeffs(), catalan_moments(8).coeffs()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rational_function_step() {
        let s = MomentSequence::<Q>::from_ints(&[0, 1, 0, 1, 0, 1]);
        let step = expand_step(&s).unwrap();
        assert_eq!(step.term, term(1, None, &[-1, 0, 1]));
        assert_eq!(step.remainder, Remainder::Vanished { depth: 2 });
        assert_eq!(expand_step(&MomentSequence::<Q>::from_ints(&[0, 0])), Err(Error::AllZero));
        assert_eq!(
            expand_step(&MomentSequence::<Q>::from_ints(&[0, 1, 0])),
            Err(Error::InsufficientMoments { needed: 4, available: 3 })
        );
    }

    #[test]
    fn expand_examples() {
        let pf = expand(&catalan_moments(20), 4, 8).unwrap();
        assert_eq!(pf.terms, vec![term(1, Some(1), &[0, 1]); 4]);
        assert_eq!(pf.status, Status::Open);

        let pf = expand(&degenerate_composite(12), 2, 8).unwrap();
        assert_eq!(pf.terms, vec![term(1, Some(1), &[0, 0, 1]), term(1, Some(1), &[0, 1])]);

        let pf = expand(&MomentSequence::<Q>::from_ints(&[0, 1, 0, 1, 0, 1]), 10, 8).unwrap();
        assert_eq!(pf.terms, vec![term(1, None, &[-1, 0, 1])]);
        assert_eq!(pf.status, Status::Terminated);

        let pf = expand(&catalan_moments(10), 10, 8).unwrap();
        assert_eq!(pf.len(), 5);
        assert_eq!(pf.status, Status::Exhausted);
        assert!(pf.terms[4].b_squared.is_none());

        assert_eq!(
            expand(&MomentSequence::<Q>::from_ints(&[0, 0, 0, 1, 0, 0, 0, 0]), 3, 2),
            Err(Error::DegreeCapExceeded { degree: 4, cap: 2 })
        );
        assert_eq!(expand(&MomentSequence::<Q>::from_ints(&[0, 0, 0]), 3, 8), Err(Error::AllZero));
    }

    #[test]
    fn negative_sign_and_scaling() {
        // φ = -(-2)/(λ - 1): s = -2 (1, 1, 1, …), normalized to -1
        let s = MomentSequence::<Q>::from_ints(&[-2, -2, -2, -2]);
        let pf = expand(&s, 4, 8).unwrap();
        assert_eq!(pf.terms, vec![term(-1, None, &[-1, 1])]);
        assert_eq!(pf.status, Status::Terminated);
    }

    #[test]
    fn normal_indices_from_expansion() {
        let pf = expand(&degenerate_composite(14), 10, 8).unwrap();
        assert_eq!(pf.block_degrees()[..2], [2, 1]);
        let s = degenerate_composite(14);
        let idx = crate::moments::normal_indices(&s, 7).unwrap().indices;
        let expected: Vec<usize> = pf.normal_indices().into_iter().filter(|&n| n <= 7).collect();
        assert_eq!(idx, expected);
    }

    #[test]
    fn to_moments_examples() {
        let pf = PFraction::new(vec![term(1, Some(1), &[0, 1]); 3], Status::Open, 8).unwrap();
        let s = to_moments(&pf, 5).unwrap();
        assert_eq!(s.coeffs(), MomentSequence::<Q>::from_ints(&[1, 0, 1, 0, 2]).coeffs());
        assert_eq!(s.certified(), 5);
        let s = to_moments(&pf, 9).unwrap();
        assert_eq!(s.certified(), 6);

        let pf = PFraction::new(vec![term(1, None, &[-1, 0, 1])], Status::Terminated, 8).unwrap();
        let s = to_moments(&pf, 6).unwrap();
        assert_eq!(s.coeffs(), MomentSequence::<Q>::from_ints(&[0, 1, 0, 1, 0, 1]).coeffs());
        assert_eq!(s.certified(), 6);
    }

    #[test]
    fn float_expansion_matches_exact() {
        let exact = expand(&degenerate_composite(16), 10, 8).unwrap();
        let floats: Vec<f64> = degenerate_composite(16).coeffs().iter().map(|c| c.approx()).collect();
        let approx = expand(&MomentSequence::new(floats).unwrap(), 10, 8).unwrap();
        assert_eq!(exact.block_degrees(), approx.block_degrees());
        for (a, b) in exact.terms.iter().zip(&approx.terms) {
            assert_eq!(a.epsilon, b.epsilon);
            for i in 0..=a.degree() {
                assert!((a.p.coeff(i).approx() - b.p.coeff(i)).abs() < 1e-9);
            }
        }
    }

    fn random_pf() -> impl Strategy<Value = PFraction<Q>> {
        let term = (prop::bool::ANY, 1i64..=8, 1usize..=3, prop::collection::vec(-3i64..=3, 3));
        prop::collection::vec(term, 1..5).prop_map(|ts| {
            let terms = ts
                .into_iter()
                .map(|(neg, b4, k, c)| {
                    let mut p: Vec<Q> = c[..k].iter().map(|&x| q(x)).collect();
                    p.push(q(1));
                    PFractionTerm {
                        epsilon: if neg { Sign::Minus } else { Sign::Plus },
                        b_squared: Some(Q::new(b4.into(), 4.into())),
                        p: Polynomial::from_coeffs(p),
                    }
                })
                .collect();
            PFraction {
                terms,
                status: Status::Open,
                degree_cap: 8,
            }
        })
    }

    proptest! {
        #[test]
        fn round_trip_through_moments(pf in random_pf()) {
            let n = pf.offsets()[pf.len()];
            let s = to_moments(&pf, 2 * n).unwrap();
            let back = expand(&s, pf.len(), 8).unwrap();
            prop_assert_eq!(back.len(), pf.len());
            for (j, (a, b)) in back.terms.iter().zip(&pf.terms).enumerate() {
                prop_assert_eq!(a.epsilon, b.epsilon);
                prop_assert_eq!(&a.p, &b.p);
                if j + 1 < pf.len() {
                    prop_assert_eq!(&a.b_squared, &b.b_squared);
                }
            }
            // and the moments come back from the expansion
            let again = to_moments(&back, 2 * n).unwrap();
            prop_assert_eq!(again.coeffs(), s.coeffs());
        }
    }
}
