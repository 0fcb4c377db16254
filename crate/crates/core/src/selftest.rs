//! Quick end-to-end checks on small known cases, used by `gjacobi selftest`.

use num_complex::Complex64;

use crate::gjmatrix::assemble;
use crate::moments::MomentSequence;
use crate::pade::{catalan_weyl, diagonal};
use crate::periodic::{monodromy, Label, PeriodicGJM};
use crate::pfraction::{expand, to_moments, PFraction, PFractionTerm, Status};
use crate::poly::Polynomial;
use crate::polyrec::generate;
use crate::scalar::{Rational, Scalar, Sign};

fn catalan_moments(count: usize) -> MomentSequence<Rational> {
    let mut c = vec![Rational::from_int(0); count];
    let mut cat = Rational::from_int(1);
    for (i, slot) in c.iter_mut().enumerate().step_by(2) {
        *slot = cat.clone();
        let n = i as i64 / 2;
        cat = cat * Rational::from_int(2 * (2 * n + 1)) / Rational::from_int(n + 2);
    }
    MomentSequence::new(c).expect("nonempty")
}

fn check_catalan_expansion() -> bool {
    let Ok(pf) = expand(&catalan_moments(16), 8, 8) else { return false };
    let x = Polynomial::from_ints(&[0, 1]);
    pf.len() == 8
        && pf
            .terms
            .iter()
            .all(|t| t.epsilon == Sign::Plus && t.p == x && t.b_squared.as_ref().is_none_or(|b| *b == Rational::from_int(1)))
}

fn check_round_trip() -> bool {
    let s = MomentSequence::<Rational>::from_ints(&[0, 1, 0, 0, 1, 0, 1, 1, 2, 2, 6, 5]);
    let Ok(pf) = expand(&s, 64, 8) else { return false };
    let certified = 2 * pf.offsets().last().copied().unwrap_or(0);
    match to_moments(&pf, certified) {
        Ok(back) => back.coeffs() == &s.coeffs()[..certified],
        Err(_) => false,
    }
}

fn check_liouville_ostrogradsky() -> bool {
    let terms = vec![
        PFractionTerm::new(Sign::Plus, Some(Rational::new(1.into(), 2.into())), Polynomial::from_ints(&[1, 0, 1])),
        PFractionTerm::new(Sign::Minus, Some(Rational::from_int(3)), Polynomial::from_ints(&[-2, 1])),
        PFractionTerm::new(Sign::Plus, Some(Rational::from_int(2)), Polynomial::from_ints(&[0, 1, 0, 1])),
        PFractionTerm::new(Sign::Minus, None, Polynomial::from_ints(&[5, 1])),
    ];
    let Ok(terms) = terms.into_iter().collect::<crate::Result<Vec<_>>>() else {
        return false;
    };
    let Ok(pf) = PFraction::new(terms, Status::Open, 8) else { return false };
    let Ok(seqs) = generate(&pf, 4) else { return false };
    (0..3).all(|j| seqs.lo_residual(j).is_ok_and(|r| r.is_zero()))
}

fn check_pade_value() -> bool {
    let Ok(pf) = expand(&catalan_moments(12), 6, 8) else { return false };
    let Ok(seqs) = generate(&pf, 2) else { return false };
    let l = Complex64::new(3.0, 0.0);
    let Ok(value) = diagonal(&seqs, 2).and_then(|a| a.eval(l)) else {
        return false;
    };
    (value + 0.375).norm() < 1e-15 && ((value - catalan_weyl(l)).norm() - 6.966e-3).abs() < 1e-4
}

fn check_truncated_m() -> bool {
    let Ok(pf) = expand(&catalan_moments(12), 6, 8) else { return false };
    let Ok(gj) = assemble(&pf) else { return false };
    gj.m_truncation(1, Complex64::new(3.0, 0.0)).is_ok_and(|m| (m + 0.375).norm() < 1e-15)
}

fn check_periodic_example() -> bool {
    let term = PFractionTerm::new(Sign::Plus, Some(Rational::new(1.into(), 4.into())), Polynomial::from_ints(&[0, 0, 1]));
    let Ok(pg) = term.and_then(|t| PeriodicGJM::new(vec![t], 8)) else {
        return false;
    };
    let Ok(mono) = monodromy(&pg) else { return false };
    mono.trace == Polynomial::from_coeffs(vec![0.0, 0.0, 2.0])
        && mono.classify(Complex64::new(0.5, 0.0), 1e-9) == Label::E
        && mono.classify(Complex64::new(1.0, 1.0), 1e-9) == Label::Resolvent
}

/// Named checks with their outcomes.
pub fn run() -> Vec<(&'static str, bool)> {
    vec![
        ("catalan expansion", check_catalan_expansion()),
        ("moment round trip", check_round_trip()),
        ("liouville-ostrogradsky identity", check_liouville_ostrogradsky()),
        ("pade value at 3", check_pade_value()),
        ("truncated m-function", check_truncated_m()),
        ("periodic example", check_periodic_example()),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_checks_pass() {
        for (name, ok) in super::run() {
            assert!(ok, "{name}");
        }
    }
}
