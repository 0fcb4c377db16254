//! Associated polynomials of a P-fraction, transfer matrices and the
//! Liouville–Ostrogradsky identity.
//!
//! Exact work happens in the monic-scaled sequences
//! `û_{j+1} = p_j û_j - ε_{j-1} ε_j b_{j-1}² û_{j-1}` with `P̂_0 = 1`,
//! `P̂_1 = p_0`, `Q̂_0 = 0`, `Q̂_1 = ε_0`. The normalized polynomials are
//! `P_j = P̂_j / (b_0 ⋯ b_{j-1})` and likewise for `Q_j`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pfraction::PFraction;
use crate::poly::{gcd_resultant, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct OrthoSequences<T> {
    pf: PFraction<T>,
    p_hat: Vec<Polynomial<T>>,
    q_hat: Vec<Polynomial<T>>,
    b2_products: Vec<T>,
}

/// Runs the monic-scaled recurrence up to `P̂_{j_max}`, `Q̂_{j_max}`.
pub fn generate<T: Scalar>(pf: &PFraction<T>, j_max: usize) -> Result<OrthoSequences<T>> {
    if pf.len() < j_max {
        return Err(Error::NotEnoughTerms {
            needed: j_max,
            available: pf.len(),
        });
    }
    let terms = &pf.terms;
    let mut p_hat = vec![Polynomial::one()];
    let mut q_hat = vec![Polynomial::zero()];
    if j_max >= 1 {
        p_hat.push(terms[0].p.clone());
        q_hat.push(Polynomial::constant(terms[0].epsilon.to_scalar()));
    }
    for j in 1..j_max {
        let b2 = terms[j - 1].b_squared.clone().ok_or(Error::MissingCoupling(j - 1))?;
        let c = (terms[j - 1].epsilon * terms[j].epsilon).apply(b2);
        let step = |u: &[Polynomial<T>]| &(&terms[j].p * &u[j]) - &u[j - 1].scale(&c);
        let np = step(&p_hat);
        let nq = step(&q_hat);
        p_hat.push(np);
        q_hat.push(nq);
    }
    let mut b2_products = vec![T::one()];
    for (i, t) in terms.iter().enumerate().take(j_max) {
        match &t.b_squared {
            Some(b2) => b2_products.push(b2_products[i].clone() * b2.clone()),
            None => break,
        }
    }
    Ok(OrthoSequences {
        pf: pf.clone(),
        p_hat,
        q_hat,
        b2_products,
    })
}

impl<T: Scalar> OrthoSequences<T> {
    pub fn pf(&self) -> &PFraction<T> {
        &self.pf
    }

    /// Largest generated index.
    pub fn j_max(&self) -> usize {
        self.p_hat.len() - 1
    }

    pub fn p_hat(&self, j: usize) -> Result<&Polynomial<T>> {
        self.p_hat.get(j).ok_or(Error::OutOfRange { index: j, limit: self.j_max() })
    }

    pub fn q_hat(&self, j: usize) -> Result<&Polynomial<T>> {
        self.q_hat.get(j).ok_or(Error::OutOfRange { index: j, limit: self.j_max() })
    }

    /// `Π_{i<j} b_i²`.
    pub fn b2_product(&self, j: usize) -> Result<&T> {
        if j > self.j_max() {
            return Err(Error::OutOfRange { index: j, limit: self.j_max() });
        }
        self.b2_products.get(j).ok_or_else(|| Error::MissingCoupling(j - 1))
    }

    /// Offsets `n_j`.
    pub fn n(&self, j: usize) -> usize {
        self.pf.terms.iter().take(j).map(|t| t.degree()).sum()
    }

    /// `(P_j(λ), Q_j(λ))` in the normalized scaling.
    pub fn eval_normalized(&self, j: usize, lambda: Complex64) -> Result<(Complex64, Complex64)> {
        if j > self.j_max() {
            return Err(Error::OutOfRange { index: j, limit: self.j_max() });
        }
        let v = normalized_values(&self.pf, lambda, j)?;
        Ok(v[j])
    }

    /// Exact residual `ε_j (Q̂_{j+1} P̂_j - Q̂_j P̂_{j+1}) - Π_{i<j} b_i²`.
    pub fn lo_residual(&self, j: usize) -> Result<Polynomial<T>> {
        let pj = self.p_hat(j)?;
        let pj1 = self.p_hat(j + 1)?;
        let qj = self.q_hat(j)?;
        let qj1 = self.q_hat(j + 1)?;
        let wr = &(qj1 * pj) - &(qj * pj1);
        let lhs = wr.signed(self.pf.terms[j].epsilon);
        Ok(&lhs - &Polynomial::constant(self.b2_product(j)?.clone()))
    }
}

/// Normalized `(P_i(λ), Q_i(λ))` for `i ≤ j`, from the float recurrence
/// `b_i u_{i+1} = p_i u_i - ε_{i-1} ε_i b_{i-1} u_{i-1}`.
///
/// Only the P-fraction data are used, so `j` may exceed the generated range
/// of any [`OrthoSequences`]; it is limited by the available terms.
pub fn normalized_values<T: Scalar>(pf: &PFraction<T>, lambda: Complex64, j: usize) -> Result<Vec<(Complex64, Complex64)>> {
    if j > pf.len() {
        return Err(Error::NotEnoughTerms {
            needed: j,
            available: pf.len(),
        });
    }
    let b = couplings(pf, j)?;
    let mut out = Vec::with_capacity(j + 1);
    out.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    if j == 0 {
        return Ok(out);
    }
    let t0 = &pf.terms[0];
    let p0 = t0.p.eval_c64(lambda);
    out.push((p0 / b[0], Complex64::new(t0.epsilon.as_f64() / b[0], 0.0)));
    for i in 1..j {
        let t = &pf.terms[i];
        let pi = t.p.eval_c64(lambda);
        let c = (pf.terms[i - 1].epsilon * t.epsilon).as_f64() * b[i - 1];
        let (p_prev, q_prev) = out[i - 1];
        let (p_cur, q_cur) = out[i];
        out.push(((pi * p_cur - p_prev * c) / b[i], (pi * q_cur - q_prev * c) / b[i]));
    }
    Ok(out)
}

/// `b_0, …, b_{j-1}` as positive floats.
pub fn couplings<T: Scalar>(pf: &PFraction<T>, j: usize) -> Result<Vec<f64>> {
    (0..j)
        .map(|i| {
            pf.terms
                .get(i)
                .ok_or(Error::NotEnoughTerms {
                    needed: j,
                    available: pf.len(),
                })?
                .b_squared
                .as_ref()
                .map(|b2| b2.approx().sqrt())
                .ok_or(Error::MissingCoupling(i))
        })
        .collect()
}

/// `|ε_j b_j (Q_{j+1}(λ) P_j(λ) - Q_j(λ) P_{j+1}(λ)) - 1|` in complex double
/// precision.
pub fn lo_defect<T: Scalar>(seqs: &OrthoSequences<T>, j: usize, lambda: Complex64) -> Result<f64> {
    if j + 1 > seqs.j_max() {
        return Err(Error::OutOfRange {
            index: j + 1,
            limit: seqs.j_max(),
        });
    }
    let v = normalized_values(&seqs.pf, lambda, j + 1)?;
    let b = couplings(&seqs.pf, j + 1)?;
    let (pj, qj) = v[j];
    let (pj1, qj1) = v[j + 1];
    let w = (qj1 * pj - qj * pj1) * (seqs.pf.terms[j].epsilon.as_f64() * b[j]);
    Ok((w - 1.0).norm())
}

/// 2×2 matrix of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferMatrix<T>(pub [[Polynomial<T>; 2]; 2]);

impl<T: Scalar> TransferMatrix<T> {
    pub fn identity() -> Self {
        TransferMatrix([[Polynomial::one(), Polynomial::zero()], [Polynomial::zero(), Polynomial::one()]])
    }

    pub fn det(&self) -> Polynomial<T> {
        let m = &self.0;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn trace(&self) -> Polynomial<T> {
        &self.0[0][0] + &self.0[1][1]
    }

    pub fn eval_c64(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        let m = &self.0;
        [[m[0][0].eval_c64(z), m[0][1].eval_c64(z)], [m[1][0].eval_c64(z), m[1][1].eval_c64(z)]]
    }
}

impl<T: Scalar> Mul for &TransferMatrix<T> {
    type Output = TransferMatrix<T>;
    fn mul(self, rhs: &TransferMatrix<T>) -> TransferMatrix<T> {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        TransferMatrix([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

/// `𝒲_j = [[0, -ε_j/b_j], [ε_j b_j, p_j/b_j]]` with float coefficients.
pub fn transfer_matrix<T: Scalar>(pf: &PFraction<T>, j: usize) -> Result<TransferMatrix<f64>> {
    let t = pf.terms.get(j).ok_or(Error::NotEnoughTerms {
        needed: j + 1,
        available: pf.len(),
    })?;
    let b = t.b_squared.as_ref().ok_or(Error::MissingCoupling(j))?.approx().sqrt();
    let e = t.epsilon.as_f64();
    Ok(TransferMatrix([
        [Polynomial::zero(), Polynomial::constant(-e / b)],
        [Polynomial::constant(e * b), t.p.to_f64().scale(&(1.0 / b))],
    ]))
}

/// `𝒲_{[0,j]} = 𝒲_0 ⋯ 𝒲_j` with float coefficients.
pub fn transfer_product<T: Scalar>(pf: &PFraction<T>, j: usize) -> Result<TransferMatrix<f64>> {
    let mut acc = TransferMatrix::identity();
    for i in 0..=j {
        acc = &acc * &transfer_matrix(pf, i)?;
    }
    Ok(acc)
}

/// Exact product of the scaled matrices `b_i 𝒲_i = [[0, -ε_i], [ε_i b_i², p_i]]`
/// for `i ≤ j`, together with `Π_{i≤j} b_i²`. The product equals
/// `[[-ε_j b_j² Q̂_j, -Q̂_{j+1}], [ε_j b_j² P̂_j, P̂_{j+1}]]` and its
/// determinant is the returned product.
pub fn scaled_transfer_product<T: Scalar>(pf: &PFraction<T>, j: usize) -> Result<(TransferMatrix<T>, T)> {
    let mut acc = TransferMatrix::identity();
    let mut beta2 = T::one();
    for i in 0..=j {
        let t = pf.terms.get(i).ok_or(Error::NotEnoughTerms {
            needed: j + 1,
            available: pf.len(),
        })?;
        let b2 = t.b_squared.clone().ok_or(Error::MissingCoupling(i))?;
        let e: T = t.epsilon.to_scalar();
        let w = TransferMatrix([
            [Polynomial::zero(), Polynomial::constant(-e.clone())],
            [Polynomial::constant(e * b2.clone()), t.p.clone()],
        ]);
        acc = &acc * &w;
        beta2 = beta2 * b2;
    }
    Ok((acc, beta2))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoprimalityClause<T> {
    pub gcd: Polynomial<T>,
    pub resultant: T,
}

impl<T: Scalar> CoprimalityClause<T> {
    pub fn holds(&self) -> bool {
        self.gcd.is_constant()
    }
}

/// Pairwise gcds `(P̂_j, P̂_{j+1})`, `(Q̂_j, Q̂_{j+1})`, `(P̂_j, Q̂_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoprimalityReport<T> {
    pub j: usize,
    pub clauses: [CoprimalityClause<T>; 3],
}

impl<T: Scalar> CoprimalityReport<T> {
    pub fn all_coprime(&self) -> bool {
        self.clauses.iter().all(CoprimalityClause::holds)
    }
}

pub fn coprimality_check<T: Scalar>(seqs: &OrthoSequences<T>, j: usize) -> Result<CoprimalityReport<T>> {
    if j == 0 {
        return Err(Error::OutOfRange { index: 0, limit: seqs.j_max() });
    }
    let clause = |a: &Polynomial<T>, b: &Polynomial<T>| {
        let g = gcd_resultant(a, b);
        CoprimalityClause {
            gcd: g.gcd,
            resultant: g.resultant,
        }
    };
    let (pj, pj1) = (seqs.p_hat(j)?, seqs.p_hat(j + 1)?);
    let (qj, qj1) = (seqs.q_hat(j)?, seqs.q_hat(j + 1)?);
    Ok(CoprimalityReport {
        j,
        clauses: [clause(pj, pj1), clause(qj, qj1), clause(pj, qj)],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfraction::{PFractionTerm, Status};
    use crate::scalar::{Rational, Sign};
    use proptest::prelude::*;

    type Q = Rational;

    fn catalan(n: usize) -> PFraction<Q> {
        let t = PFractionTerm::new(Sign::Plus, Some(Q::from_int(1)), Polynomial::from_ints(&[0, 1])).unwrap();
        PFraction::new(vec![t; n], Status::Open, 8).unwrap()
    }

    fn example64(n: usize) -> PFraction<Q> {
        let b2 = Q::new(1.into(), 4.into());
        let t = PFractionTerm::new(Sign::Plus, Some(b2), Polynomial::from_ints(&[0, 0, 1])).unwrap();
        PFraction::new(vec![t; n], Status::Open, 8).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn catalan_polynomials() {
        let s = generate(&catalan(4), 3).unwrap();
        assert_eq!(s.p_hat(2).unwrap(), &Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(s.p_hat(3).unwrap(), &Polynomial::from_ints(&[0, -2, 0, 1]));
        assert_eq!(s.q_hat(2).unwrap(), &Polynomial::from_ints(&[0, 1]));
        let (p, q) = s.eval_normalized(2, c(3.0, 0.0)).unwrap();
        assert!((p - 8.0).norm() < 1e-14 && (q - 3.0).norm() < 1e-14);
        assert_eq!(s.eval_normalized(0, c(0.3, 2.0)).unwrap(), (c(1.0, 0.0), c(0.0, 0.0)));
        assert!(s.eval_normalized(4, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn example64_values() {
        let s = generate(&example64(3), 2).unwrap();
        assert_eq!(s.p_hat(1).unwrap(), &Polynomial::from_ints(&[0, 0, 1]));
        let (p, q) = s.eval_normalized(1, c(1.0, 0.0)).unwrap();
        assert!((p - 2.0).norm() < 1e-15 && (q - 2.0).norm() < 1e-15);
        assert!(lo_defect(&s, 0, c(0.0, 1.0)).unwrap() < 1e-14);
    }

    #[test]
    fn lo_identity_trivial_start() {
        let s = generate(&catalan(2), 2).unwrap();
        assert!(s.lo_residual(0).unwrap().is_zero());
        assert!(lo_defect(&s, 1, c(3.0, 0.0)).unwrap() < 1e-14);
    }

    #[test]
    fn catalan_float_defect_at_three() {
        let s = generate(&catalan(12), 11).unwrap();
        assert!(lo_defect(&s, 10, c(3.0, 0.0)).unwrap() <= 1e-10);
    }

    #[test]
    fn transfer_matrices() {
        let w = transfer_product(&catalan(1), 0).unwrap();
        assert_eq!(
            w,
            TransferMatrix([
                [Polynomial::zero(), Polynomial::from_ints(&[-1])],
                [Polynomial::from_ints(&[1]), Polynomial::from_ints(&[0, 1])],
            ])
        );
        let w = transfer_product(&example64(1), 0).unwrap();
        assert_eq!(w.0[0][1], Polynomial::constant(-2.0));
        assert_eq!(w.0[1][0], Polynomial::constant(0.5));
        assert_eq!(w.0[1][1], Polynomial::from_coeffs(vec![0.0, 0.0, 2.0]));
    }

    #[test]
    fn coprimality_examples() {
        let s = generate(&catalan(4), 3).unwrap();
        let r = coprimality_check(&s, 2).unwrap();
        assert_eq!(r.clauses[0].gcd, Polynomial::one());
        assert!(r.all_coprime());
        let r = coprimality_check(&s, 1).unwrap();
        assert!(r.clauses[2].holds());
        assert!(coprimality_check(&s, 0).is_err());
    }

    fn random_pf(len: usize) -> impl Strategy<Value = PFraction<Q>> {
        let term = (prop::bool::ANY, 1i64..=16, 1usize..=3, prop::collection::vec(-3i64..=3, 3));
        prop::collection::vec(term, len).prop_map(|ts| {
            let terms = ts
                .into_iter()
                .map(|(neg, b4, k, c)| {
                    let mut p: Vec<Q> = c[..k].iter().map(|&x| Q::from_int(x)).collect();
                    p.push(Q::from_int(1));
                    PFractionTerm::new(
                        if neg { Sign::Minus } else { Sign::Plus },
                        Some(Q::new(b4.into(), 4.into())),
                        Polynomial::from_coeffs(p),
                    )
                    .unwrap()
                })
                .collect();
            PFraction::new(terms, Status::Open, 8).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn structure_of_generated_sequences(pf in random_pf(7)) {
            let s = generate(&pf, 7).unwrap();
            for j in 0..7 {
                prop_assert!(s.lo_residual(j).unwrap().is_zero());
            }
            for j in 0..=7 {
                prop_assert!(s.p_hat(j).unwrap().is_monic());
                prop_assert_eq!(s.p_hat(j).unwrap().degree(), Some(s.n(j)));
            }
            for j in 1..=7 {
                prop_assert_eq!(s.q_hat(j).unwrap().degree(), Some(s.n(j) - s.n(1)));
            }
            for j in 1..7 {
                prop_assert!(coprimality_check(&s, j).unwrap().all_coprime());
            }
        }

        #[test]
        fn transfer_products(pf in random_pf(6), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let s = generate(&pf, 6).unwrap();
            for j in 0..5 {
                let (w, beta2) = scaled_transfer_product(&pf, j).unwrap();
                prop_assert_eq!(w.det(), Polynomial::constant(beta2));
                prop_assert_eq!(&w.0[0][1], &-s.q_hat(j + 1).unwrap());
                prop_assert_eq!(&w.0[1][1], s.p_hat(j + 1).unwrap());

                let wf = transfer_product(&pf, j).unwrap();
                let det = wf.det();
                prop_assert!((det.coeff(0) - 1.0).abs() < 1e-10);
                prop_assert!(det.coeffs().iter().skip(1).all(|c| c.abs() < 1e-10 * det.max_norm().max(1.0)));
                let z = Complex64::new(re, im);
                let m = wf.eval_c64(z);
                let (p1, q1) = s.eval_normalized(j + 1, z).unwrap();
                let scale = 1.0 + p1.norm() + q1.norm();
                prop_assert!((m[0][1] + q1).norm() <= 1e-10 * scale);
                prop_assert!((m[1][1] - p1).norm() <= 1e-10 * scale);
            }
        }
    }
}
