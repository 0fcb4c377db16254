//! Small dense linear algebra: fraction-free determinants, Hessenberg
//! characteristic polynomials and a cyclic Jacobi eigensolver.

use num_complex::Complex64;
use num_traits::One;

use crate::poly::Polynomial;
use crate::scalar::Scalar;

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Scalar>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out: Matrix<T> = zeros(n, cols);
    for i in 0..n {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

pub fn matvec<T: Scalar>(a: &Matrix<T>, x: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(r, _)| !r.is_zero())
                .fold(T::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination. Exact rings pivot on
/// the first nonzero entry; the float ring uses partial pivoting.
pub fn bareiss_det<T: Scalar>(mut m: Matrix<T>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let pivot = if T::EXACT {
            (k..n).find(|&r| !m[r][k].is_zero())
        } else {
            (k..n)
                .max_by(|&a, &b| m[a][k].abs().partial_cmp(&m[b][k].abs()).unwrap())
                .filter(|&r| !m[r][k].is_zero())
        };
        let Some(p) = pivot else {
            return T::zero();
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone()) / prev.clone();
                m[i][j] = v;
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Characteristic polynomial `det(λ - A)` of an upper Hessenberg matrix,
/// by the division-free recurrence along the columns:
///
/// `d_m = (λ - a_mm) d_{m-1} - Σ_{i<m} a_im (a_{i+1,i} ⋯ a_{m,m-1}) d_{i-1}`.
pub fn hessenberg_charpoly<T: Scalar>(a: &Matrix<T>) -> Polynomial<T> {
    let n = a.len();
    let mut d: Vec<Polynomial<T>> = Vec::with_capacity(n + 1);
    d.push(Polynomial::one());
    for m in 0..n {
        let lin = Polynomial::from_coeffs(vec![-a[m][m].clone(), T::one()]);
        let mut next = &lin * &d[m];
        // Walk the column upward accumulating the subdiagonal product.
        let mut sub = T::one();
        for i in (0..m).rev() {
            sub = sub * a[i + 1][i].clone();
            if sub.is_zero() {
                break;
            }
            if a[i][m].is_zero() {
                continue;
            }
            next = &next - &d[i].scale(&(a[i][m].clone() * sub.clone()));
        }
        d.push(next);
    }
    d.pop().unwrap()
}

/// Value of `det(λ - A)` as `value * 2^exponent`. `bound * 2^exponent` is
/// the sum of the moduli of the terms combined in the last recurrence step,
/// the scale against which cancellation to zero is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledDet {
    pub value: Complex64,
    pub bound: f64,
    pub exponent: i64,
}

impl ScaledDet {
    /// True when the determinant is indistinguishable from zero.
    pub fn vanishes(&self) -> bool {
        self.value.norm() <= 1e-13 * self.bound
    }

    /// `self / other` as a complex number.
    pub fn ratio(&self, other: &ScaledDet) -> Complex64 {
        self.value / other.value * ((self.exponent - other.exponent) as f64).exp2()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.value * (self.exponent as f64).exp2()
    }
}

/// `det(λ - A)` for an upper Hessenberg float matrix at a complex point,
/// with running rescaling to stay inside the float range.
pub fn hessenberg_det_at(a: &Matrix<f64>, lambda: Complex64) -> ScaledDet {
    let n = a.len();
    let mut d: Vec<Complex64> = Vec::with_capacity(n + 1);
    d.push(Complex64::one());
    let mut bound = 1.0;
    let mut exponent: i64 = 0;
    for m in 0..n {
        let first = (lambda - a[m][m]) * d[m];
        let mut next = first;
        bound = first.norm();
        let mut sub = 1.0;
        for i in (0..m).rev() {
            sub *= a[i + 1][i];
            if sub == 0.0 {
                break;
            }
            if a[i][m] != 0.0 {
                let term = d[i] * (a[i][m] * sub);
                next -= term;
                bound += term.norm();
            }
        }
        d.push(next);
        let size = next.norm().max(bound);
        if size > 1e150 || (size < 1e-150 && size > 0.0) {
            let e = size.log2().round() as i64;
            let factor = (-e as f64).exp2();
            for v in d.iter_mut() {
                *v *= factor;
            }
            bound *= factor;
            exponent += e;
        }
    }
    ScaledDet { value: d[n], bound, exponent }
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order.
pub fn symmetric_eigenvalues(mut a: Matrix<f64>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (rp, rq) = (row[p], row[q]);
                    row[p] = c * rp - s * rq;
                    row[q] = s * rp + c * rq;
                }
                let (row_p, row_q) = (a[p].clone(), a[q].clone());
                for (k, (vp, vq)) in row_p.into_iter().zip(row_q).enumerate() {
                    a[p][k] = c * vp - s * vq;
                    a[q][k] = s * vp + c * vq;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Largest eigenvalue of the complex Hermitian matrix `re + i im`, via the
/// real symmetric embedding `[[re, -im], [im, re]]`.
pub fn hermitian_max_eigenvalue(re: &Matrix<f64>, im: &Matrix<f64>) -> f64 {
    let n = re.len();
    let mut big = vec![vec![0.0; 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            big[i][j] = re[i][j];
            big[i + n][j + n] = re[i][j];
            big[i][j + n] = -im[i][j];
            big[i + n][j] = im[i][j];
        }
    }
    symmetric_eigenvalues(big).last().copied().unwrap_or(0.0)
}
