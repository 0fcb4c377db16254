//! Diagonal Padé approximants of the Catalan generating function at λ = 3
//! and their geometric convergence to the Weyl function.
//!
//! cargo run --example pade_convergence

use gjacobi::io::parse_moments;
use gjacobi::pade::{catalan_weyl, convergence_run};
use gjacobi::pfraction::expand;
use gjacobi::polyrec::generate;
use gjacobi::Rational;
use num_complex::Complex64;

fn main() -> gjacobi::Result<()> {
    let s = parse_moments::<Rational>(include_str!("../data/catalan.json"))?;
    let pf = expand(&s, 16, 8)?;
    let seqs = generate(&pf, 15)?;
    let lambda = Complex64::new(3.0, 0.0);
    let run = convergence_run(&seqs, lambda, &(1..=12).collect::<Vec<_>>(), catalan_weyl)?;
    println!("{:>3} {:>4} {:>22} {:>12}", "j", "n_j", "value", "error");
    for row in &run.rows {
        let value = row.value.map_or("pole".to_string(), |v| format!("{:.15}", v.re));
        let err = row.abs_error.map_or(String::new(), |e| format!("{e:.3e}"));
        println!("{:>3} {:>4} {value:>22} {err:>12}", row.j, row.n);
    }
    println!(
        "fitted ratio {:.5}, expected ((3 - √5)/2)² = {:.5}",
        run.ratio.unwrap_or(f64::NAN),
        ((3.0 - 5f64.sqrt()) / 2.0).powi(2)
    );
    Ok(())
}
