//! Assembles the generalized Jacobi matrix of a small P-fraction with mixed
//! signs and checks that it is self-adjoint for the indefinite metric `G`.
//!
//! cargo run --example krein_matrix

use gjacobi::gjmatrix::assemble;
use gjacobi::polyrec::generate;
use gjacobi::{PFraction, PFractionTerm, Polynomial, Rational, Scalar, Sign, Status};

fn show(name: &str, m: &[Vec<Rational>]) {
    println!("{name}:");
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>6}", v.to_string())).collect();
        println!("  {}", cells.join(" "));
    }
}

fn main() -> gjacobi::Result<()> {
    let half = Rational::new(1.into(), 2.into());
    let terms = vec![
        PFractionTerm::new(Sign::Plus, Some(Rational::from_int(2)), Polynomial::from_ints(&[1, 0, 1]))?,
        PFractionTerm::new(Sign::Minus, Some(half), Polynomial::from_ints(&[-1, 1]))?,
        PFractionTerm::new(Sign::Plus, None, Polynomial::from_ints(&[0, 2, 0, 1]))?,
    ];
    let pf = PFraction::new(terms, Status::Open, 8)?;
    let gj = assemble(&pf)?;
    show("H (scaled)", &gj.scaled_matrix(0, 2)?);
    show("G (scaled)", &gj.scaled_gram(0, 2)?);

    // vectors supported on the first two blocks
    let (inner, n) = (gj.offsets()[2] as i64, gj.offsets()[3] as i64);
    let x: Vec<Rational> = (0..n).map(|i| Rational::from_int(if i < inner { i - 2 } else { 0 })).collect();
    let y: Vec<Rational> = (0..n).map(|i| Rational::from_int(if i < inner { i * i - 3 } else { 0 })).collect();
    println!("[Hx, y] - [x, Hy] = {}", gj.symmetry_defect(3, &x, &y)?);

    let seqs = generate(&pf, 3)?;
    println!(
        "det(λ - H) = {:?}",
        gj.truncation_charpoly(0, 2)?.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    println!("P_3         = {:?}", seqs.p_hat(3)?.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(())
}
