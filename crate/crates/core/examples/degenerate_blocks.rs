//! A moment sequence whose Hankel determinants vanish in places: the
//! expansion produces a degree-2 block followed by linear ones.
//!
//! cargo run --example degenerate_blocks

use gjacobi::io::parse_moments;
use gjacobi::moments::{hankel_det, normal_indices};
use gjacobi::pfraction::expand;
use gjacobi::Rational;

fn main() -> gjacobi::Result<()> {
    let s = parse_moments::<Rational>(include_str!("../data/degenerate.json"))?;
    for n in 1..=5 {
        println!("det H_{n} = {}", hankel_det(&s, n)?);
    }
    println!("normal indices from Hankel determinants: {:?}", normal_indices(&s, 8)?);
    let pf = expand(&s, 64, 8)?;
    println!("normal indices from the expansion:      {:?}", pf.normal_indices());
    for (j, t) in pf.terms.iter().take(4).enumerate() {
        let b2 = t.b_squared.as_ref().map_or("?".to_string(), |b| b.to_string());
        println!(
            "term {j}: epsilon {:+}, b^2 {b2}, p {:?}",
            t.epsilon.as_i8(),
            t.p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
