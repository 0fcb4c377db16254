//! Moment sequences, P-fractions and generalized Jacobi matrices.
//!
//! The pipeline runs from a finite moment sequence to its P-fraction
//! ([`pfraction::expand`]), the associated polynomials ([`polyrec`]), the
//! block-tridiagonal matrix with its indefinite metric ([`gjmatrix`]),
//! diagonal Padé approximants ([`pade`]), resolvent certificates
//! ([`spectral`]) and the spectrum of periodic matrices ([`periodic`]).

pub mod cli;
pub mod error;
pub mod gjmatrix;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod pade;
pub mod periodic;
pub mod pfraction;
pub mod poly;
pub mod polyrec;
pub mod roots;
pub mod scalar;
pub mod selftest;
pub mod series;
pub mod spectral;

pub use error::{Error, Result};
pub use moments::MomentSequence;
pub use pfraction::{PFraction, PFractionTerm, Status};
pub use poly::Polynomial;
pub use scalar::{Rational, Scalar, Sign};
