//! Outer polygons of the numerical ranges of growing Catalan truncations.
//! The real-axis support of the `n × n` truncation is `2cos(π/(n+1))`.
//!
//! cargo run --example numerical_range

use gjacobi::gjmatrix::assemble;
use gjacobi::{PFraction, PFractionTerm, Polynomial, Rational, Scalar, Sign, Status};

fn main() -> gjacobi::Result<()> {
    let term = PFractionTerm::new(Sign::Plus, Some(Rational::from_int(1)), Polynomial::from_ints(&[0, 1]))?;
    let gj = assemble(&PFraction::new(vec![term; 16], Status::Open, 8)?)?;
    let mut previous = None;
    for n in 1..=12 {
        let range = gj.numerical_range_bound(n, 64)?;
        let exact = 2.0 * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
        let nested = previous.as_ref().is_none_or(|p: &gjacobi::gjmatrix::NumericalRange| p.is_within(&range, 1e-9));
        println!(
            "n = {n:>2}: support {:.12} (2cos(π/(n+1)) = {exact:.12}), contains previous: {nested}",
            range.max_real()
        );
        previous = Some(range);
    }
    Ok(())
}
