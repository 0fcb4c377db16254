//! Dense univariate polynomials over a [`Scalar`] ring.
//!
//! Coefficients are stored low-to-high. The representation is canonical: the
//! zero polynomial has no coefficients and otherwise the last coefficient is
//! nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::scalar::{Scalar, Sign};

/// Below this length multiplication is schoolbook.
pub const KARATSUBA_THRESHOLD: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate λ.
    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn signed(self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self,
            Sign::Minus => -self,
        }
    }

    /// Multiplies by λ^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation in complex double precision.
    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * z + c.approx())
    }

    /// `Σ |c_i| |z|^i`, the natural magnitude scale for an evaluation at `z`.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.approx().abs())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).unwrap())
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| c.approx()).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.approx().abs()).fold(0.0, f64::max)
    }

    /// Euclidean division over a field: `self = q * d + r`, `deg r < deg d`.
    ///
    /// # Panics
    /// If `d` is the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        let Some(rd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if rd < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); rd - dd + 1];
        for k in (0..=rd - dd).rev() {
            let c = r[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * di.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self = q d + r`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return Self::zero();
        };
        if sd < dd {
            return self.clone();
        }
        let lc = d.coeffs[dd].clone();
        let mut e = sd - dd + 1;
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let s = Polynomial::monomial(r.coeffs[rd].clone(), rd - dd);
            r = &r.scale(&lc) - &(&s * d);
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }
}

/// Schoolbook below [`KARATSUBA_THRESHOLD`], Karatsuba above.
pub fn mul_slices<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let mut z1 = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    for (i, c) in z0.iter().enumerate() {
        z1[i] = z1[i].clone() - c.clone();
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] = z1[i].clone() - c.clone();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] = out[i].clone() + c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] = out[i + m].clone() + c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        out[i + 2 * m] = out[i + 2 * m].clone() + c;
    }
    out
}

fn schoolbook<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn add_slices<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.clone() + y.clone(),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => T::zero(),
        })
        .collect()
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        Polynomial::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        Polynomial::from_coeffs(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Add for Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Polynomial<T>) -> Polynomial<T> {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c.clone()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag.render())?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

/// Greatest common divisor (monic) and resultant of two polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GcdResultant<T> {
    pub gcd: Polynomial<T>,
    pub resultant: T,
}

/// Subresultant polynomial remainder sequence. Returns the monic gcd and the
/// resultant `Res(a, b)`.
pub fn gcd_resultant<T: Scalar>(a: &Polynomial<T>, b: &Polynomial<T>) -> GcdResultant<T> {
    if a.is_zero() || b.is_zero() {
        let gcd = if a.is_zero() { b.monic() } else { a.monic() };
        return GcdResultant { gcd, resultant: T::zero() };
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign = T::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == Some(0) {
        let res = num_traits::pow(b.coeffs[0].clone(), a.degree().unwrap());
        return GcdResultant {
            gcd: Polynomial::one(),
            resultant: sign * res,
        };
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return GcdResultant {
                gcd: b.monic(),
                resultant: T::zero(),
            };
        }
        let divisor = g.clone() * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.scale(&(T::one() / divisor));
        g = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let res = num_traits::pow(b.coeffs[0].clone(), da) / num_traits::pow(h, da - 1);
            return GcdResultant {
                gcd: Polynomial::one(),
                resultant: sign * res,
            };
        }
    }
}
