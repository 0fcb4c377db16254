//! Expands the Catalan moment sequence into a P-fraction and prints it.
//!
//! cargo run --example expand_catalan

use gjacobi::io::{parse_moments, render_pfraction};
use gjacobi::pfraction::expand;
use gjacobi::Rational;

fn main() -> gjacobi::Result<()> {
    let s = parse_moments::<Rational>(include_str!("../data/catalan.json"))?;
    let pf = expand(&s, 6, 8)?;
    print!("{}", render_pfraction(&pf));
    println!("normal indices: {:?}", pf.normal_indices());
    Ok(())
}
