//! Diagonal Padé approximants `−Q̂_j / P̂_j` of `φ(λ) = −Σ s_i / λ^{i+1}`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::MomentSequence;
use crate::poly::Polynomial;
use crate::polyrec::OrthoSequences;
use crate::scalar::Scalar;
use crate::series::divide;

/// Relative size below which a denominator value counts as a pole.
const POLE_TOL: f64 = 1e-13;

/// `[n_j/n_j]` approximant, kept as polynomials in `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeApproximant<T> {
    pub numerator: Polynomial<T>,
    pub denominator: Polynomial<T>,
    pub j: usize,
    pub n: usize,
    /// `k_j = deg p_j`, when the term after the approximant is known.
    pub k: Option<usize>,
}

pub fn diagonal<T: Scalar>(seqs: &OrthoSequences<T>, j: usize) -> Result<PadeApproximant<T>> {
    if j == 0 || j > seqs.j_max() {
        return Err(Error::OutOfRange { index: j, limit: seqs.j_max() });
    }
    Ok(PadeApproximant {
        numerator: -seqs.q_hat(j)?.clone(),
        denominator: seqs.p_hat(j)?.clone(),
        j,
        n: seqs.n(j),
        k: seqs.pf().terms.get(j).map(|t| t.degree()),
    })
}

impl<T: Scalar> PadeApproximant<T> {
    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval_c64(lambda);
        if den.norm() <= POLE_TOL * self.denominator.eval_scale(lambda) {
            return Err(Error::PoleAtLambda);
        }
        Ok(self.numerator.eval_c64(lambda) / den)
    }

    /// The first `count` coefficients `t_i` of the expansion
    /// `−Σ t_i / λ^{i+1}`.
    pub fn moment_series(&self, count: usize) -> Vec<T> {
        let n = self.n;
        let den: Vec<T> = (0..=n).map(|i| self.denominator.coeff(n - i)).collect();
        let num: Vec<T> = (0..n).map(|i| -self.numerator.coeff(n - 1 - i)).collect();
        divide(&num, &den, count)
    }

    /// Number of leading moments reproduced, minus one: the largest `i`
    /// with `t_0..=t_i` equal to `s_0..=s_i`, or `None` if `s_0` differs.
    /// Requires `2n_j + k_j` moments (`2n_j` if `k_j` is unknown).
    pub fn match_order(&self, s: &MomentSequence<T>) -> Result<Option<usize>> {
        let needed = 2 * self.n + self.k.unwrap_or(0);
        if s.len() < needed {
            return Err(Error::InsufficientMoments { needed, available: s.len() });
        }
        let t = self.moment_series(s.len());
        let first_bad = t.iter().zip(s.coeffs()).position(|(a, b)| {
            if T::EXACT {
                a != b
            } else {
                !(a.clone() - b.clone()).is_negligible(s.max_norm())
            }
        });
        Ok(match first_bad {
            Some(0) => None,
            Some(i) => Some(i - 1),
            None => Some(s.len() - 1),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Same function as the `[n_j/n_j]` approximant.
    Coincides,
    NotExist,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCell {
    pub l: usize,
    pub m: usize,
    pub verdict: Verdict,
}

/// Classifies `[L/M]` for `L ≤ l_max`, `M ≤ m_max` around a diagonal entry
/// with order `n` followed by a block of size `k`:
/// coincides for `L, M ≥ n`, `L + M ≤ 2n + k − 1`;
/// does not exist for `L, M ≤ n + k − 1`, `L + M ≥ 2n + k`.
pub fn block_table(n: usize, k: usize, l_max: usize, m_max: usize) -> Vec<BlockCell> {
    let mut out = Vec::with_capacity((l_max + 1) * (m_max + 1));
    for l in 0..=l_max {
        for m in 0..=m_max {
            let verdict = if l >= n && m >= n && l + m < 2 * n + k {
                Verdict::Coincides
            } else if l < n + k && m < n + k && l + m >= 2 * n + k {
                Verdict::NotExist
            } else {
                Verdict::Outside
            };
            out.push(BlockCell { l, m, verdict });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub j: usize,
    pub n: usize,
    /// `None` when `λ` is a pole of this approximant.
    pub value: Option<Complex64>,
    pub abs_error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRun {
    pub rows: Vec<ConvergenceRow>,
    /// `exp` of the least-squares slope of `ln |error|` against `n_j` over
    /// the last half of the rows.
    pub ratio: Option<f64>,
}

/// Errors of the diagonal approximants at `λ` against `reference(λ)`.
pub fn convergence_run<T, F>(seqs: &OrthoSequences<T>, lambda: Complex64, j_list: &[usize], reference: F) -> Result<ConvergenceRun>
where
    T: Scalar,
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let target = reference(lambda);
    let rows = j_list
        .par_iter()
        .map(|&j| {
            let appr = diagonal(seqs, j)?;
            let value = match appr.eval(lambda) {
                Ok(v) => Some(v),
                Err(Error::PoleAtLambda) => None,
                Err(e) => return Err(e),
            };
            Ok(ConvergenceRow {
                j,
                n: appr.n,
                value,
                abs_error: value.map(|v| (v - target).norm()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ratio = fit_ratio(&rows[rows.len() / 2..]);
    Ok(ConvergenceRun { rows, ratio })
}

fn fit_ratio(rows: &[ConvergenceRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.abs_error.filter(|e| *e > 0.0).map(|e| (r.n as f64, e.ln())))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some((sxy / sxx).exp())
}

/// `m(λ) = (−λ + λ√(1 − 4/λ²))/2`, the branch that behaves like `−1/λ` at
/// infinity: the Weyl function of the free tridiagonal matrix.
pub fn catalan_weyl(lambda: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    (-lambda + lambda * (one - 4.0 / (lambda * lambda)).sqrt()) / 2.0
}
