//! Generalized Jacobi matrices.
//!
//! Block `j` of `H` is the companion matrix `C_{p_j}` (ones on the
//! subdiagonal, `-p_j` coefficients in the last column). Consecutive blocks
//! are coupled by `b_j` at the top-right corner of the lower block `B_j` and
//! `ε_j ε_{j+1} b_j` at the top-right corner of the upper block `B̃_j`, so
//! `H` is upper Hessenberg. The indefinite metric is `[x, y] = (Gx, y)` with
//! `G = diag(ε_j E_{p_j}^{-1})`.
//!
//! Exact computations use the diagonally similar matrix `H' = D H D^{-1}`,
//! `D = diag(1/(b_0 ⋯ b_{j-1}))` on block `j`, whose couplings are `1` and
//! `ε_j ε_{j+1} b_j²`; its metric is `G'_j = ε_j E_{p_j}^{-1} Π_{i<j} b_i²`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_max_eigenvalue, hessenberg_charpoly, hessenberg_det_at, matvec, zeros, Matrix};
use crate::moments::MomentSequence;
use crate::pfraction::{PFraction, PFractionTerm, Status};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::series::reciprocal;

/// Companion matrix of a monic polynomial with its symmetrizer.
#[derive(Clone, Debug, PartialEq)]
pub struct CompanionBlock<T> {
    pub p: Polynomial<T>,
    /// `C_p`.
    pub c: Matrix<T>,
    /// `E_p`, with `(E_p)_{ij} = p_{i+j+1}` (zero past the leading 1).
    pub e: Matrix<T>,
}

pub fn companion<T: Scalar>(p: &Polynomial<T>) -> Result<CompanionBlock<T>> {
    let k = match p.degree() {
        Some(k) if k >= 1 && p.is_monic() => k,
        _ => return Err(Error::NotMonic),
    };
    let mut c = zeros(k, k);
    for i in 0..k {
        if i + 1 < k {
            c[i + 1][i] = T::one();
        }
        c[i][k - 1] = -p.coeff(i);
    }
    let e = (0..k).map(|i| (0..k).map(|j| p.coeff(i + j + 1)).collect()).collect();
    Ok(CompanionBlock { p: p.clone(), c, e })
}

impl<T: Scalar> CompanionBlock<T> {
    pub fn degree(&self) -> usize {
        self.c.len()
    }

    /// `E_p^{-1}`. `E_p J` is upper triangular Toeplitz with symbol
    /// `Σ_d p_{k-d} x^d`, so the inverse comes from one series reciprocal:
    /// `(E_p^{-1})_{ij} = r_{i+j+1-k}` for `i + j ≥ k - 1`.
    pub fn e_inverse(&self) -> Matrix<T> {
        let k = self.degree();
        let symbol: Vec<T> = (0..k).map(|d| self.p.coeff(k - d)).collect();
        let r = reciprocal(&symbol, k);
        (0..k)
            .map(|i| (0..k).map(|j| if i + j + 1 >= k { r[i + j + 1 - k].clone() } else { T::zero() }).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GJMatrix<T> {
    terms: Vec<PFractionTerm<T>>,
    blocks: Vec<CompanionBlock<T>>,
    offsets: Vec<usize>,
    degree_cap: usize,
    finite: bool,
}

/// Block matrix of a P-fraction.
pub fn assemble<T: Scalar>(pf: &PFraction<T>) -> Result<GJMatrix<T>> {
    if pf.terms.is_empty() {
        return Err(Error::EmptyPFraction);
    }
    if let Some(t) = pf.terms.iter().find(|t| t.degree() > pf.degree_cap) {
        return Err(Error::DegreeCapExceeded {
            degree: t.degree(),
            cap: pf.degree_cap,
        });
    }
    if let Some(j) = pf.terms[..pf.len() - 1].iter().position(|t| t.b_squared.is_none()) {
        return Err(Error::MissingCoupling(j));
    }
    let blocks = pf.terms.iter().map(|t| companion(&t.p)).collect::<Result<Vec<_>>>()?;
    Ok(GJMatrix {
        terms: pf.terms.clone(),
        blocks,
        offsets: pf.offsets(),
        degree_cap: pf.degree_cap,
        finite: pf.status == Status::Terminated,
    })
}

/// Which form of the matrix to materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Form {
    /// `H'` and `G'`: rational entries only.
    Scaled,
    /// `H` and `G` with the positive square roots `b_j`.
    True,
}

impl<T: Scalar> GJMatrix<T> {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[CompanionBlock<T>] {
        &self.blocks
    }

    pub fn terms(&self) -> &[PFractionTerm<T>] {
        &self.terms
    }

    /// Offsets `n_0 = 0, …, n_J`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// True when the P-fraction terminated, so the matrix is the whole
    /// operator rather than a truncation.
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    fn check_range(&self, lo: usize, hi: usize) -> Result<()> {
        if lo > hi || hi >= self.block_count() {
            return Err(Error::BadRange {
                lo,
                hi,
                blocks: self.block_count(),
            });
        }
        Ok(())
    }

    fn b2(&self, j: usize) -> Result<T> {
        self.terms[j].b_squared.clone().ok_or(Error::MissingCoupling(j))
    }

    fn build(&self, lo: usize, hi: usize, form: Form) -> Result<(Matrix<T>, Matrix<T>)> {
        self.check_range(lo, hi)?;
        let base = self.offsets[lo];
        let n = self.offsets[hi + 1] - base;
        let mut h = zeros(n, n);
        let mut g = zeros(n, n);
        let sqrt = |x: &T| T::from_f64(x.approx().sqrt()).expect("finite coupling");
        let mut beta2 = T::one();
        for j in 0..lo {
            beta2 = beta2 * self.b2(j)?;
        }
        for j in lo..=hi {
            let o = self.offsets[j] - base;
            let block = &self.blocks[j];
            let k = block.degree();
            let e_inv = block.e_inverse();
            let eps = self.terms[j].epsilon;
            for r in 0..k {
                for c in 0..k {
                    h[o + r][o + c] = block.c[r][c].clone();
                    let gv = eps.apply(e_inv[r][c].clone());
                    g[o + r][o + c] = match form {
                        Form::Scaled => gv * beta2.clone(),
                        Form::True => gv,
                    };
                }
            }
            if j < hi {
                let b2 = self.b2(j)?;
                let o1 = self.offsets[j + 1] - base;
                let o2 = self.offsets[j + 2] - base;
                let sign = eps * self.terms[j + 1].epsilon;
                let (lower, upper) = match form {
                    Form::Scaled => (T::one(), sign.apply(b2.clone())),
                    Form::True => (sqrt(&b2), sign.apply(sqrt(&b2))),
                };
                h[o1][o1 - 1] = lower;
                h[o][o2 - 1] = upper;
                beta2 = beta2 * b2;
            }
        }
        Ok((h, g))
    }

    /// `H'_{[lo,hi]}` (exact entries).
    pub fn scaled_matrix(&self, lo: usize, hi: usize) -> Result<Matrix<T>> {
        Ok(self.build(lo, hi, Form::Scaled)?.0)
    }

    /// `G'_{[lo,hi]}` matching [`Self::scaled_matrix`].
    pub fn scaled_gram(&self, lo: usize, hi: usize) -> Result<Matrix<T>> {
        Ok(self.build(lo, hi, Form::Scaled)?.1)
    }

    /// `H_{[lo,hi]}` with float entries.
    pub fn float_matrix(&self, lo: usize, hi: usize) -> Result<Matrix<f64>> {
        let (h, _) = self.build(lo, hi, Form::True)?;
        Ok(to_f64(&h))
    }

    /// `G_{[lo,hi]}` with float entries.
    pub fn float_gram(&self, lo: usize, hi: usize) -> Result<Matrix<f64>> {
        let (_, g) = self.build(lo, hi, Form::True)?;
        Ok(to_f64(&g))
    }

    /// `G_{[0,hi]}^{-1} = diag(ε_j E_{p_j})` with float entries.
    pub fn float_gram_inverse(&self, hi: usize) -> Result<Matrix<f64>> {
        self.check_range(0, hi)?;
        let n = self.offsets[hi + 1];
        let mut out = vec![vec![0.0; n]; n];
        for j in 0..=hi {
            let o = self.offsets[j];
            let eps = self.terms[j].epsilon.as_f64();
            for (r, row) in self.blocks[j].e.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    out[o + r][o + c] = eps * v.approx();
                }
            }
        }
        Ok(out)
    }

    /// `|[Hx, y] - [x, Hy]|` on the truncation to the first `trunc` blocks.
    /// `x` and `y` must vanish on the last block of the truncation. Exact
    /// rings use `(H', G')`, the float ring uses `(H, G)`.
    pub fn symmetry_defect(&self, trunc: usize, x: &[T], y: &[T]) -> Result<T> {
        if trunc == 0 {
            return Err(Error::BadRange {
                lo: 0,
                hi: 0,
                blocks: self.block_count(),
            });
        }
        let form = if T::EXACT { Form::Scaled } else { Form::True };
        let (h, g) = self.build(0, trunc - 1, form)?;
        let n = h.len();
        let inner = self.offsets[trunc - 1];
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::OutOfRange { index: v.len(), limit: n });
            }
            if v[inner..].iter().any(|c| !c.is_zero()) {
                return Err(Error::SupportTooWide);
            }
        }
        let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (u, v)| acc + u.clone() * v.clone());
        let hx = matvec(&h, x);
        let hy = matvec(&h, y);
        let lhs = dot(&matvec(&g, &hx), y);
        let rhs = dot(&matvec(&g, x), &hy);
        Ok((lhs - rhs).abs())
    }

    /// Exact `det(λ - H_{[lo,hi]})`.
    pub fn truncation_charpoly(&self, lo: usize, hi: usize) -> Result<Polynomial<T>> {
        let h = self.scaled_matrix(lo, hi)?;
        Ok(hessenberg_charpoly(&h))
    }

    /// `m_{[lo,hi]}(λ) = -ε_lo det(λ - H_{[lo+1,hi]}) / det(λ - H_{[lo,hi]})`.
    pub fn m_range(&self, lo: usize, hi: usize, lambda: Complex64) -> Result<Complex64> {
        let den = hessenberg_det_at(&to_f64(&self.scaled_matrix(lo, hi)?), lambda);
        if den.vanishes() {
            return Err(Error::PoleAtLambda);
        }
        let eps = self.terms[lo].epsilon.as_f64();
        if lo == hi {
            return Ok(-eps / den.to_complex());
        }
        let num = hessenberg_det_at(&to_f64(&self.scaled_matrix(lo + 1, hi)?), lambda);
        let m = -eps * num.ratio(&den);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::PoleAtLambda)
        }
    }

    /// `m_{[0,j]}(λ) = [(H_{[0,j]} - λ)^{-1} e, e]`.
    pub fn m_truncation(&self, j: usize, lambda: Complex64) -> Result<Complex64> {
        self.m_range(0, j, lambda)
    }

    /// `|m_{[0,j]} + ε_0 / (p_0(λ) + ε_0 b_0² m_{[1,j]})|`.
    pub fn riccati_defect(&self, j: usize, lambda: Complex64) -> Result<f64> {
        if j == 0 {
            return Err(Error::BadRange {
                lo: 1,
                hi: 0,
                blocks: self.block_count(),
            });
        }
        let m0 = self.m_range(0, j, lambda)?;
        let m1 = self.m_range(1, j, lambda)?;
        let t = &self.terms[0];
        let eps = t.epsilon.as_f64();
        let b2 = self.b2(0)?.approx();
        let rhs = eps / (t.p.eval_c64(lambda) + eps * b2 * m1);
        Ok((m0 + rhs).norm())
    }

    /// `s_i = [H^i e, e]` for `i < count`, exact. A truncation with `n_J`
    /// rows determines the moments below `2 n_J`; a finite matrix determines
    /// all of them.
    pub fn moments_from_matrix(&self, count: usize) -> Result<MomentSequence<T>> {
        let last = self.block_count() - 1;
        let n = self.offsets[last + 1];
        if !self.finite && count > 2 * n {
            return Err(Error::TruncationTooShallow {
                needed: count,
                available: 2 * n,
            });
        }
        let (h, g) = self.build(0, last, Form::Scaled)?;
        let half = count.div_ceil(2);
        let mut powers = Vec::with_capacity(half + 1);
        let mut x = vec![T::zero(); n];
        x[0] = T::one();
        powers.push(x);
        for a in 1..=half {
            let next = matvec(&h, &powers[a - 1]);
            powers.push(next);
        }
        let gx: Vec<Vec<T>> = powers.iter().map(|v| matvec(&g, v)).collect();
        let coeffs = (0..count)
            .map(|i| {
                let (a, b) = (i - i / 2, i / 2);
                gx[a].iter().zip(&powers[b]).fold(T::zero(), |acc, (u, v)| acc + u.clone() * v.clone())
            })
            .collect();
        MomentSequence::new(coeffs)
    }

    /// Supporting half-planes of the numerical range of `H_{[0, trunc-1]}`
    /// (plain inner product) on `angles` equally spaced directions.
    pub fn numerical_range_bound(&self, trunc: usize, angles: usize) -> Result<NumericalRange> {
        if trunc == 0 || angles < 4 {
            return Err(Error::BadRange {
                lo: trunc,
                hi: angles,
                blocks: self.block_count(),
            });
        }
        let h = self.float_matrix(0, trunc - 1)?;
        Ok(NumericalRange::of_matrix(&h, angles))
    }
}

fn to_f64<T: Scalar>(m: &Matrix<T>) -> Matrix<f64> {
    m.iter().map(|row| row.iter().map(|v| v.approx()).collect()).collect()
}

/// Outer polygon of a numerical range: for direction `θ_k = 2πk/K` the
/// half-plane `Re(e^{-iθ_k} z) ≤ h_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericalRange {
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    /// Intersections of consecutive supporting lines, counterclockwise.
    pub vertices: Vec<Complex64>,
}

impl NumericalRange {
    /// `h(θ) = λ_max((e^{-iθ} A + e^{iθ} Aᵀ)/2)` for a real matrix `A`.
    pub fn of_matrix(a: &Matrix<f64>, angles: usize) -> Self {
        let n = a.len();
        let sym: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| 0.5 * (a[i][j] + a[j][i])).collect()).collect();
        let skew: Matrix<f64> = (0..n).map(|i| (0..n).map(|j| 0.5 * (a[i][j] - a[j][i])).collect()).collect();
        let thetas: Vec<f64> = (0..angles).map(|k| 2.0 * std::f64::consts::PI * k as f64 / angles as f64).collect();
        let support: Vec<f64> = thetas
            .par_iter()
            .map(|&t| {
                let (s, c) = t.sin_cos();
                let re: Matrix<f64> = sym.iter().map(|row| row.iter().map(|v| c * v).collect()).collect();
                let im: Matrix<f64> = skew.iter().map(|row| row.iter().map(|v| -s * v).collect()).collect();
                hermitian_max_eigenvalue(&re, &im)
            })
            .collect();
        let vertices = (0..angles)
            .map(|k| {
                let k1 = (k + 1) % angles;
                let (s0, c0) = thetas[k].sin_cos();
                let (s1, c1) = thetas[k1].sin_cos();
                let det = c0 * s1 - s0 * c1;
                let x = (support[k] * s1 - s0 * support[k1]) / det;
                let y = (c0 * support[k1] - support[k] * c1) / det;
                Complex64::new(x, y)
            })
            .collect();
        NumericalRange {
            angles: thetas,
            support,
            vertices,
        }
    }

    /// Support value in the direction of the positive real axis.
    pub fn max_real(&self) -> f64 {
        self.support[0]
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.angles.iter().zip(&self.support).all(|(t, h)| {
            let (s, c) = t.sin_cos();
            z.re * c + z.im * s <= h + tol
        })
    }

    /// Containment of polygons built on the same angle grid, compared
    /// through their support values.
    pub fn is_within(&self, other: &NumericalRange, tol: f64) -> bool {
        self.support.len() == other.support.len() && self.support.iter().zip(&other.support).all(|(a, b)| *a <= b + tol)
    }
}
