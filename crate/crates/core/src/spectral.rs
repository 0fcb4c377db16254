//! Weyl solutions, point-spectrum tests and numerical resolvent
//! certificates.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gjmatrix::GJMatrix;
use crate::pfraction::PFraction;
use crate::polyrec::{couplings, normalized_values, OrthoSequences};
use crate::scalar::Scalar;

/// Default growth threshold of [`point_spectrum_test`].
pub const DEFAULT_GROWTH_THRESHOLD: f64 = 0.05;

/// `W_j = Q_j(λ) + m P_j(λ)` for `j ≤ depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeylData {
    pub lambda: Complex64,
    pub m_value: Complex64,
    pub depth: usize,
    pub w: Vec<Complex64>,
    /// Largest relative residual of the three-term recurrence.
    pub recurrence_residual: f64,
}

pub fn weyl_solution<T: Scalar>(seqs: &OrthoSequences<T>, lambda: Complex64, m_value: Complex64, depth: usize) -> Result<WeylData> {
    if depth > seqs.j_max() {
        return Err(Error::OutOfRange {
            index: depth,
            limit: seqs.j_max(),
        });
    }
    let pq = normalized_values(seqs.pf(), lambda, depth)?;
    let w: Vec<Complex64> = pq.iter().map(|(p, q)| q + m_value * p).collect();
    let size: Vec<f64> = pq.iter().map(|(p, q)| q.norm() + m_value.norm() * p.norm()).collect();
    let recurrence_residual = recurrence_residual(seqs.pf(), lambda, &w, &size)?;
    Ok(WeylData {
        lambda,
        m_value,
        depth,
        w,
        recurrence_residual,
    })
}

/// `max_j |ε_{j-1}ε_j b_{j-1} w_{j-1} − p_j(λ) w_j + b_j w_{j+1}|`, each
/// relative to the same combination of `size_j ≥ |w_j|` (the magnitudes of
/// the summands `w` was formed from).
fn recurrence_residual<T: Scalar>(pf: &PFraction<T>, lambda: Complex64, w: &[Complex64], size: &[f64]) -> Result<f64> {
    if w.len() < 3 {
        return Ok(0.0);
    }
    let b = couplings(pf, w.len() - 1)?;
    let worst = (1..w.len() - 1)
        .map(|j| {
            let sign = (pf.terms[j - 1].epsilon * pf.terms[j].epsilon).as_f64();
            let pj = pf.terms[j].p.eval_c64(lambda);
            let sum = sign * b[j - 1] * w[j - 1] - pj * w[j] + b[j] * w[j + 1];
            let scale = b[j - 1] * size[j - 1] + pj.norm() * size[j] + b[j] * size[j + 1];
            if scale == 0.0 {
                0.0
            } else {
                sum.norm() / scale
            }
        })
        .fold(0.0, f64::max);
    Ok(worst)
}

/// The Weyl solution `W_0..=W_depth` computed by backward recursion from
/// depth `J' = min(4·depth, available)`, which keeps the subdominant
/// solution accurate. `m_value` enters through the correction
/// `(m_value − m_{J'}) P_j` when it differs from the truncated value
/// `m_{J'}` produced by the recursion.
pub fn stable_weyl<T: Scalar>(pf: &PFraction<T>, lambda: Complex64, m_value: Complex64, depth: usize) -> Result<Vec<Complex64>> {
    let pq = normalized_values(pf, lambda, depth)?;
    let coupled = pf.terms.iter().take_while(|t| t.b_squared.is_some()).count();
    let deep = (4 * depth).min(coupled.saturating_sub(1));
    if deep <= depth {
        return Ok(pq.iter().map(|(p, q)| q + m_value * p).collect());
    }
    let b = couplings(pf, deep + 1)?;
    let mut v = vec![Complex64::new(0.0, 0.0); deep + 2];
    v[deep] = Complex64::new(1.0, 0.0);
    for j in (1..=deep).rev() {
        let sign = (pf.terms[j - 1].epsilon * pf.terms[j].epsilon).as_f64();
        v[j - 1] = (pf.terms[j].p.eval_c64(lambda) * v[j] - b[j] * v[j + 1]) / (sign * b[j - 1]);
        if v[j - 1].norm() > 1e100 {
            v.iter_mut().for_each(|x| *x *= 1e-100);
        }
    }
    let t0 = &pf.terms[0];
    let denom = b[0] * v[1] - t0.p.eval_c64(lambda) * v[0];
    if denom.norm() == 0.0 || !denom.is_finite() {
        return Err(Error::PoleAtLambda);
    }
    let c = t0.epsilon.as_f64() / denom;
    let m_deep = c * v[0];
    let shift = m_value - m_deep;
    let agree = shift.norm() <= 1e-10 * m_value.norm().max(1.0);
    Ok((0..=depth)
        .map(|j| {
            let w = c * v[j];
            if agree {
                w
            } else {
                w + shift * pq[j].0
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSpectrumVerdict {
    Divergent,
    BoundedSoFar,
}

/// `Σ |P_j(λ)|²` is declared divergent when every step over the last
/// `depth/2` indices grows `|P_j|²` by more than `1 + threshold`.
pub fn point_spectrum_test<T: Scalar>(seqs: &OrthoSequences<T>, lambda: Complex64, depth: usize, threshold: f64) -> Result<PointSpectrumVerdict> {
    if depth < 2 {
        return Err(Error::TruncationTooShallow { needed: 2, available: depth });
    }
    if depth > seqs.j_max() {
        return Err(Error::OutOfRange {
            index: depth,
            limit: seqs.j_max(),
        });
    }
    let p2: Vec<f64> = normalized_values(seqs.pf(), lambda, depth)?.iter().map(|(p, _)| p.norm_sqr()).collect();
    let grows = (depth - depth / 2..depth).all(|j| p2[j + 1] > (1.0 + threshold) * p2[j]);
    Ok(if grows {
        PointSpectrumVerdict::Divergent
    } else {
        PointSpectrumVerdict::BoundedSoFar
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    CertifiedDecay,
    Inconclusive,
    Violated,
}

/// Envelope `|P_i(λ) W_j(λ)| ≤ C q^{n_j − n_i}` over `i ≤ j ≤ depth`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "complex_pair")]
    pub lambda: Complex64,
    #[serde(rename = "C")]
    pub c: f64,
    pub q: f64,
    pub max_residual: f64,
    pub verdict: CertificateVerdict,
    /// `max_{depth/2 ≤ j ≤ depth} |P_j(λ)|^{1/j}`.
    pub limsup_root: f64,
}

fn complex_pair<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

const CERTIFY_MAX_Q: f64 = 0.95;
const CERTIFY_MIN_GROWTH: f64 = 1.02;

pub fn resolvent_certificate<T: Scalar>(seqs: &OrthoSequences<T>, lambda: Complex64, m_value: Complex64, depth: usize) -> Result<Certificate> {
    if depth < 4 {
        return Err(Error::TruncationTooShallow { needed: 4, available: depth });
    }
    if depth > seqs.j_max() {
        return Err(Error::OutOfRange {
            index: depth,
            limit: seqs.j_max(),
        });
    }
    let pf = seqs.pf();
    let p: Vec<f64> = normalized_values(pf, lambda, depth)?.iter().map(|(p, _)| p.norm()).collect();
    let w: Vec<f64> = stable_weyl(pf, lambda, m_value, depth)?.iter().map(|w| w.norm()).collect();
    let n = pf.offsets();
    let a = |i: usize, j: usize| p[i] * w[j];

    let early = 2 * depth / 3;
    let c0 = (0..=early).flat_map(|j| (0..=j).map(move |i| (i, j))).map(|(i, j)| a(i, j)).fold(0.0, f64::max);
    let pairs = || (0..=depth).flat_map(|j| (0..=j).map(move |i| (i, j)));
    let q = pairs()
        .filter(|&(i, j)| n[j] > n[i])
        .map(|(i, j)| (a(i, j) / c0).powf(1.0 / (n[j] - n[i]) as f64))
        .fold(0.0, f64::max);
    let max_residual = pairs().map(|(i, j)| a(i, j) - c0 * q.powi((n[j] - n[i]) as i32)).fold(0.0, f64::max);
    let persistent = (depth - depth / 3..=depth).all(|j| (0..=j).any(|i| a(i, j) > c0));
    let limsup_root = (depth / 2..=depth).filter(|&j| j > 0).map(|j| p[j].powf(1.0 / j as f64)).fold(0.0, f64::max);
    let verdict = if persistent {
        CertificateVerdict::Violated
    } else if q < CERTIFY_MAX_Q && limsup_root > CERTIFY_MIN_GROWTH {
        CertificateVerdict::CertifiedDecay
    } else {
        CertificateVerdict::Inconclusive
    };
    Ok(Certificate {
        lambda,
        c: c0,
        q,
        max_residual,
        verdict,
        limsup_root,
    })
}

/// A column of `(H − λ)^{-1}` built from polynomial data, with its
/// residuals on a finite truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventColumn {
    pub x: Vec<Complex64>,
    /// `‖(H − λ)x − e_{j,k}‖` over all rows but those of the last block.
    pub residual: f64,
    /// The same norm over every row of the truncation.
    pub boundary_residual: f64,
}

/// `x(j,k) = e_{j,k−1} + λ e_{j,k−2} + … + λ^{k−1} e_{j,0} + λ^k x(j,0)` with
/// `x(j,0) = −P_j ξ_{[0,j]} + Q_j π_{[0,j]} + P_j (ξ + m π)`, where `π`, `ξ`
/// are `G^{-1}` applied to the stacked vectors `(λ^i P_l)`, `(λ^i Q_l)` and
/// `ξ + m π` to `(λ^i W_l)`. Evaluated on blocks `0..trunc`.
#[allow(clippy::too_many_arguments)]
pub fn formal_resolvent_column<T: Scalar>(
    seqs: &OrthoSequences<T>,
    gj: &GJMatrix<T>,
    lambda: Complex64,
    m_value: Complex64,
    j: usize,
    k: usize,
    trunc: usize,
) -> Result<ResolventColumn> {
    let pf = seqs.pf();
    if j >= gj.block_count() || k >= gj.blocks()[j].degree() {
        return Err(Error::BadIndex { block: j, offset: k });
    }
    if trunc < j + 2 {
        return Err(Error::TruncationTooShallow {
            needed: j + 2,
            available: trunc,
        });
    }
    if trunc > gj.block_count() {
        return Err(Error::TruncationTooShallow {
            needed: trunc,
            available: gj.block_count(),
        });
    }
    let offsets = gj.offsets();
    let dim = offsets[trunc];
    let pq = normalized_values(pf, lambda, trunc - 1)?;
    let w = stable_weyl(pf, lambda, m_value, trunc - 1)?;
    let g_inv = gj.float_gram_inverse(trunc - 1)?;

    let stack = |value: &dyn Fn(usize) -> Complex64, upto: usize| -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for l in 0..upto {
            let mut pow = Complex64::new(1.0, 0.0);
            for slot in &mut v[offsets[l]..offsets[l + 1]] {
                *slot = pow * value(l);
                pow *= lambda;
            }
        }
        cmatvec(&g_inv, &v)
    };
    let pi_j = stack(&|l| pq[l].0, j + 1);
    let xi_j = stack(&|l| pq[l].1, j + 1);
    let weyl = stack(&|l| w[l], trunc);
    let (pj, qj) = pq[j];
    let base: Vec<Complex64> = (0..dim).map(|r| -pj * xi_j[r] + qj * pi_j[r] + pj * weyl[r]).collect();

    let mut x: Vec<Complex64> = base.iter().map(|v| v * lambda.powu(k as u32)).collect();
    let o = offsets[j];
    for i in 0..k {
        x[o + k - 1 - i] += lambda.powu(i as u32);
    }

    let h = gj.float_matrix(0, trunc - 1)?;
    let mut r: Vec<Complex64> = (0..dim)
        .map(|row| h[row].iter().zip(&x).map(|(a, v)| v * *a).sum::<Complex64>() - lambda * x[row])
        .collect();
    r[o + k] -= 1.0;
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(ResolventColumn {
        residual: norm(&r[..offsets[trunc - 1]]),
        boundary_residual: norm(&r),
        x,
    })
}

fn cmatvec(a: &[Vec<f64>], x: &[Complex64]) -> Vec<Complex64> {
    a.iter().map(|row| row.iter().zip(x).map(|(a, v)| v * *a).sum()).collect()
}
