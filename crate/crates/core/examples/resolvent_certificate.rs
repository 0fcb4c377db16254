//! Resolvent-point certificates for the Catalan P-fraction: decay of
//! `|P_i W_j|` is certified at λ = 3 but not on the spectrum at λ = 0.5.
//!
//! cargo run --example resolvent_certificate

use gjacobi::pade::catalan_weyl;
use gjacobi::polyrec::generate;
use gjacobi::spectral::{point_spectrum_test, resolvent_certificate, DEFAULT_GROWTH_THRESHOLD};
use gjacobi::{PFraction, PFractionTerm, Polynomial, Rational, Scalar, Sign, Status};
use num_complex::Complex64;

fn main() -> gjacobi::Result<()> {
    let term = PFractionTerm::new(Sign::Plus, Some(Rational::from_int(1)), Polynomial::from_ints(&[0, 1]))?;
    let pf = PFraction::new(vec![term; 161], Status::Open, 8)?;
    let seqs = generate(&pf, 41)?;
    for lambda in [Complex64::new(3.0, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, 1.0)] {
        let cert = resolvent_certificate(&seqs, lambda, catalan_weyl(lambda), 40)?;
        let growth = point_spectrum_test(&seqs, lambda, 40, DEFAULT_GROWTH_THRESHOLD)?;
        println!(
            "λ = {lambda}: {:?}, C = {:.3}, q = {:.4}, limsup |P_j|^(1/j) = {:.4}, P_j growth: {growth:?}",
            cert.verdict, cert.c, cert.q, cert.limsup_root
        );
    }
    Ok(())
}
