//! Moments to P-fraction to matrix and back: the moments `[Hⁱe, e]` of the
//! assembled matrix reproduce the input exactly.
//!
//! cargo run --example moments_roundtrip

use gjacobi::gjmatrix::assemble;
use gjacobi::io::{parse_moments, render_moments};
use gjacobi::pfraction::{expand, to_moments};
use gjacobi::Rational;

fn main() -> gjacobi::Result<()> {
    let s = parse_moments::<Rational>(include_str!("../data/degenerate.json"))?;
    let pf = expand(&s, 64, 8)?;
    let certified = pf.certified_moments().unwrap_or(s.len());
    let from_matrix = assemble(&pf)?.moments_from_matrix(certified)?;
    let from_fraction = to_moments(&pf, certified)?;
    print!("input:          {}", render_moments(&s));
    print!("from matrix:    {}", render_moments(&from_matrix));
    print!("from P-fraction {}", render_moments(&from_fraction));
    println!(
        "certified {certified} of {}; identical: {}",
        s.len(),
        from_matrix.coeffs() == &s.coeffs()[..certified]
    );
    Ok(())
}
