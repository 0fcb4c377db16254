//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use gjacobi::moments::normalize;
use gjacobi::{MomentSequence, PFraction, PFractionTerm, Polynomial, Rational, Scalar, Sign, Status};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn catalan_moments(count: usize) -> MomentSequence<Q> {
    let mut s = vec![Q::zero(); count];
    let mut cat = Q::one();
    for (i, slot) in s.iter_mut().enumerate().step_by(2) {
        *slot = cat.clone();
        let n = i as i64 / 2;
        cat *= q(2 * (2 * n + 1), n + 2);
    }
    MomentSequence::new(s).unwrap()
}

fn repeated(term: PFractionTerm<Q>, len: usize) -> PFraction<Q> {
    PFraction::new(vec![term; len], Status::Open, 8).unwrap()
}

/// `ε = 1`, `p = λ`, `b² = 1`.
pub fn catalan_pfraction(len: usize) -> PFraction<Q> {
    repeated(PFractionTerm::new(Sign::Plus, Some(Q::one()), Polynomial::from_ints(&[0, 1])).unwrap(), len)
}

/// `ε = 1`, `p = λ²`, `b² = 1/4`.
pub fn quartic_pfraction(len: usize) -> PFraction<Q> {
    repeated(PFractionTerm::new(Sign::Plus, Some(q(1, 4)), Polynomial::from_ints(&[0, 0, 1])).unwrap(), len)
}

pub const B2_CHOICES: [(i64, i64); 9] = [(1, 4), (1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1), (4, 1)];

pub fn random_monic(rng: &mut ChaCha8Rng, degree: usize, coeff: i64) -> Polynomial<Q> {
    let mut p: Vec<i64> = (0..degree).map(|_| rng.gen_range(-coeff..=coeff)).collect();
    p.push(1);
    Polynomial::from_ints(&p)
}

/// Random P-fraction with `k_j ≤ max_k` and `b²` drawn from [`B2_CHOICES`].
/// The last coupling is left unknown when `last_b2` is false.
pub fn random_pfraction(rng: &mut ChaCha8Rng, len: usize, max_k: usize, last_b2: bool) -> PFraction<Q> {
    let terms = (0..len)
        .map(|j| {
            let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let (n, d) = B2_CHOICES[rng.gen_range(0..B2_CHOICES.len())];
            let b2 = (j + 1 < len || last_b2).then(|| q(n, d));
            let k = rng.gen_range(1..=max_k);
            PFractionTerm::new(eps, b2, random_monic(rng, k, 3)).unwrap()
        })
        .collect();
    PFraction::new(terms, Status::Open, 8).unwrap()
}

/// Small integer moments; entries in `-1..=1` make degenerate blocks common.
pub fn random_moments(rng: &mut ChaCha8Rng, len: usize) -> MomentSequence<Q> {
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-1..=1)).collect();
        if v.iter().any(|x| *x != 0) {
            return MomentSequence::from_ints(&v);
        }
    }
}

/// Solves `a x = rhs` by fraction-free (Bareiss) elimination with row
/// pivoting, then back substitution. `None` if `a` is singular.
pub fn bareiss_solve(mut a: Vec<Vec<Q>>, rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = a.len();
    for (row, r) in a.iter_mut().zip(rhs) {
        row.push(r);
    }
    let mut prev = Q::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = Q::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![Q::zero(); n];
    for i in (0..n).rev() {
        let tail = (i + 1..n).fold(Q::zero(), |acc, j| acc + &a[i][j] * &x[j]);
        x[i] = (&a[i][n] - tail) / &a[i][i];
    }
    Some(x)
}

/// `[n/n]` approximant `A/B` of `φ = −Σ s_i λ^{-i-1}` (normalized moments)
/// from the Hankel system, with `B` monic. `None` when `H_n` is singular.
pub fn hankel_pade(s: &MomentSequence<Q>, n: usize) -> Option<(Polynomial<Q>, Polynomial<Q>)> {
    let s = normalize(s).ok()?;
    let s = s.coeffs();
    if s.len() < 2 * n {
        return None;
    }
    let h: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|m| s[i + m].clone()).collect()).collect();
    let rhs: Vec<Q> = (0..n).map(|i| -s[n + i].clone()).collect();
    let mut beta = bareiss_solve(h, rhs)?;
    beta.push(Q::one());
    let a: Vec<Q> = (0..n).map(|d| -(d + 1..=n).fold(Q::zero(), |acc, m| acc + &beta[m] * &s[m - d - 1])).collect();
    Some((Polynomial::from_coeffs(a), Polynomial::from_coeffs(beta)))
}

/// Points spaced `step` apart on `[−1,1] ∪ [−i,i]`.
pub fn cross(step: f64) -> Vec<Complex64> {
    let n = (2.0 / step).round() as usize;
    (0..=n)
        .flat_map(|i| {
            let t = -1.0 + 2.0 * i as f64 / n as f64;
            [c(t, 0.0), c(0.0, t)]
        })
        .collect()
}

fn directed(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    directed(a, b).max(directed(b, a))
}

pub fn is_reduced(num: &Polynomial<Q>, den: &Polynomial<Q>) -> bool {
    gjacobi::poly::gcd_resultant(num, den).gcd.is_constant() || num.is_zero()
}

pub fn approx(x: &Q) -> f64 {
    x.approx()
}
