//! Band spectrum of the 1-periodic matrix with `p = λ²`, `b² = 1/4`: the
//! monodromy trace is `2λ²`, so the bands form the cross `[−1, 1] ∪ [−i, i]`.
//!
//! cargo run --release --example periodic_spectrum

use gjacobi::io::parse_pfraction;
use gjacobi::periodic::{monodromy, scan, Label, PeriodicGJM};
use gjacobi::Rational;

fn main() -> gjacobi::Result<()> {
    let pf = parse_pfraction::<Rational>(include_str!("../data/example64.json"))?;
    let pg = PeriodicGJM::from_pfraction(&pf, 1)?;
    let mono = monodromy(&pg)?;
    println!("trace coefficients: {:?}", mono.trace.coeffs());
    let result = scan(&mono, "-2,2,-2,2".parse()?, 40, 40, 1e-3, 0);
    for row in result.points.chunks(result.nx + 1).rev() {
        let line: String = row
            .iter()
            .map(|p| match p.label {
                Label::E => '#',
                Label::Ep => '*',
                Label::Resolvent => '.',
            })
            .collect();
        println!("{line}");
    }
    println!(
        "E: {}, E_p: {}, resolvent: {}",
        result.count(Label::E),
        result.count(Label::Ep),
        result.count(Label::Resolvent)
    );
    Ok(())
}
