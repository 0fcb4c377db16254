//! Truncated power series in `x = 1/λ`, stored low-to-high.

use crate::scalar::Scalar;

/// Product of two series truncated to `n` coefficients.
pub fn mul_trunc<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Reciprocal `1/a` to `n` coefficients by Newton iteration
/// `r ← r (2 - a r)`, doubling the precision each round.
///
/// # Panics
/// If `a[0]` is zero.
pub fn reciprocal<T: Scalar>(a: &[T], n: usize) -> Vec<T> {
    assert!(a.first().is_some_and(|c| !c.is_zero()), "series reciprocal needs a[0] != 0");
    if n == 0 {
        return Vec::new();
    }
    let mut r = vec![T::one() / a[0].clone()];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let ar = mul_trunc(&a[..a.len().min(prec)], &r, prec);
        let mut corr: Vec<T> = ar.into_iter().map(|c| -c).collect();
        corr[0] = corr[0].clone() + T::from_int(2);
        r = mul_trunc(&r, &corr, prec);
    }
    r
}

/// Quotient `a / b` to `n` coefficients by long division (`b[0] != 0`).
pub fn divide<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    assert!(b.first().is_some_and(|c| !c.is_zero()), "series division needs b[0] != 0");
    let mut out: Vec<T> = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = a.get(i).cloned().unwrap_or_else(T::zero);
        for (j, bj) in b.iter().enumerate().skip(1).take(i) {
            acc = acc - bj.clone() * out[i - j].clone();
        }
        out.push(acc / b[0].clone());
    }
    out
}
