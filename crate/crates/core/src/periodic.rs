//! Spectra of periodic generalized Jacobi matrices through the monodromy
//! matrix `T = 𝒲_0 ⋯ 𝒲_{s-1}`.
//!
//! With `t = tr T` and multipliers `w² − t w + 1 = 0`, the spectrum is
//! `E ∪ E_p`: `E` is where `t(λ) ∈ [−2, 2]`, `E_p` the roots of `P_{s-1}`
//! with `|b_{s-1} Q_{s-1}(λ)| > |P_s(λ)|`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pfraction::{PFraction, PFractionTerm};
use crate::poly::Polynomial;
use crate::polyrec::{scaled_transfer_product, transfer_product, OrthoSequences, TransferMatrix};
use crate::roots::{aberth, AberthOptions};
use crate::scalar::Scalar;

/// One period of coefficients, repeated indefinitely.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicGJM<T> {
    terms: Vec<PFractionTerm<T>>,
    degree_cap: usize,
}

impl<T: Scalar> PeriodicGJM<T> {
    pub fn new(terms: Vec<PFractionTerm<T>>, degree_cap: usize) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPFraction);
        }
        if let Some(j) = terms.iter().position(|t| t.b_squared.is_none()) {
            return Err(Error::MissingCoupling(j));
        }
        Ok(PeriodicGJM { terms, degree_cap })
    }

    /// Reads the period from a P-fraction whose length is a multiple of
    /// `period` and whose terms repeat with that period. A coupling missing
    /// in one repetition (typically the last term of an expansion) is taken
    /// from another.
    pub fn from_pfraction(pf: &PFraction<T>, period: usize) -> Result<Self> {
        let mismatch = Error::PeriodMismatch { period, terms: pf.len() };
        if period == 0 || !pf.len().is_multiple_of(period) {
            return Err(mismatch);
        }
        let mut terms = pf.terms[..period].to_vec();
        for (i, t) in pf.terms.iter().enumerate() {
            let base = &mut terms[i % period];
            if t.epsilon != base.epsilon || t.p != base.p {
                return Err(mismatch);
            }
            match (&base.b_squared, &t.b_squared) {
                (Some(a), Some(b)) if a != b => return Err(mismatch),
                (None, Some(b)) => base.b_squared = Some(b.clone()),
                _ => {}
            }
        }
        Self::new(terms, pf.degree_cap)
    }

    pub fn period(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[PFractionTerm<T>] {
        &self.terms
    }

    /// The first `count` terms of the infinite fraction.
    pub fn to_pfraction(&self, count: usize) -> Result<PFraction<T>> {
        PFraction::new(self.terms.clone(), crate::pfraction::Status::Open, self.degree_cap)?.periodic_extension(self.period(), count.max(1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Monodromy<T> {
    /// `T(λ)` with float coefficients.
    pub t: TransferMatrix<f64>,
    pub trace: Polynomial<f64>,
    /// `b_0 ⋯ b_{s-1} · t(λ) = P̂_s − ε_{s-1} b_{s-1}² Q̂_{s-1}`, exact.
    pub scaled_trace: Polynomial<T>,
    /// `Π_{i<s} b_i²`, the exact determinant of the scaled product.
    pub beta2: T,
    /// `P̂_{s-1}`, whose roots carry the point spectrum.
    pub p_hat_prev: Polynomial<T>,
    /// Largest coefficient of `det T − 1`.
    pub det_defect: f64,
}

pub fn monodromy<T: Scalar>(pg: &PeriodicGJM<T>) -> Result<Monodromy<T>> {
    let s = pg.period();
    let pf = pg.to_pfraction(s)?;
    let t = transfer_product(&pf, s - 1)?;
    let (scaled, beta2) = scaled_transfer_product(&pf, s - 1)?;
    debug_assert_eq!(scaled.det(), Polynomial::constant(beta2.clone()));
    let det_defect = (&t.det() - &Polynomial::one()).max_norm();
    let trace = t.trace();
    let seqs = crate::polyrec::generate(&pf, s - 1)?;
    Ok(Monodromy {
        trace,
        scaled_trace: scaled.trace(),
        beta2,
        p_hat_prev: seqs.p_hat(s - 1)?.clone(),
        det_defect,
        t,
    })
}

/// Floquet multipliers ordered `|w_1| ≥ |w_2|`, with `w_2 = 1/w_1`.
pub fn multipliers(trace: Complex64) -> (Complex64, Complex64) {
    let disc = (trace * trace - 4.0).sqrt();
    let w1 = if (trace + disc).norm() >= (trace - disc).norm() {
        (trace + disc) / 2.0
    } else {
        (trace - disc) / 2.0
    };
    (w1, 1.0 / w1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    #[serde(rename = "resolvent")]
    Resolvent,
    #[serde(rename = "E")]
    E,
    #[serde(rename = "E_p")]
    Ep,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Resolvent => "resolvent",
            Label::E => "E",
            Label::Ep => "E_p",
        }
    }
}

impl<T: Scalar> Monodromy<T> {
    pub fn trace_at(&self, lambda: Complex64) -> Complex64 {
        self.trace.eval_c64(lambda)
    }

    pub fn multipliers_at(&self, lambda: Complex64) -> (Complex64, Complex64) {
        multipliers(self.trace_at(lambda))
    }

    pub fn classify(&self, lambda: Complex64, tol: f64) -> Label {
        let p_prev = self.p_hat_prev.eval_c64(lambda);
        if p_prev.norm() <= tol * self.p_hat_prev.eval_scale(lambda) {
            let m = self.t.eval_c64(lambda);
            // m[0][0] = −ε b_{s-1} Q_{s-1}, m[1][1] = P_s
            if m[0][0].norm() > m[1][1].norm() + tol {
                return Label::Ep;
            }
        }
        let t = self.trace_at(lambda);
        if t.im.abs() <= tol && t.re.abs() <= 2.0 + tol {
            Label::E
        } else {
            Label::Resolvent
        }
    }
}

/// Axis-parallel rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    /// `"xmin,xmax,ymin,ymax"`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| Error::Parse(format!("region {s:?}: {e}"))))
            .collect::<Result<_>>()?;
        match v[..] {
            [re_min, re_max, im_min, im_max] if re_min < re_max && im_min < im_max => Ok(Region {
                re_min,
                re_max,
                im_min,
                im_max,
            }),
            _ => Err(Error::Parse(format!("region {s:?}: expected xmin,xmax,ymin,ymax with min < max"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub re: f64,
    pub im: f64,
    pub label: Label,
    pub trace_re: f64,
    pub trace_im: f64,
    pub w1_abs: f64,
    pub w2_abs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumScan {
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    pub tol: f64,
    /// `(nx + 1) × (ny + 1)` points, row by row from `im_min`.
    pub points: Vec<ScanPoint>,
    /// Roots of `P̂_{s-1}` in the region that pass the point-spectrum test.
    pub ep_roots: Vec<Complex64>,
    /// False if the root finder stopped before converging.
    pub roots_converged: bool,
}

impl SpectrumScan {
    pub fn count(&self, label: Label) -> usize {
        self.points.iter().filter(|p| p.label == label).count()
    }
}

/// Classifies the grid with `nx × ny` cells (corners included) and
/// separately locates the point spectrum from the roots of `P̂_{s-1}`.
pub fn scan<T: Scalar>(mono: &Monodromy<T>, region: Region, nx: usize, ny: usize, tol: f64, seed: u64) -> SpectrumScan {
    let (nx, ny) = (nx.max(1), ny.max(1));
    let dx = (region.re_max - region.re_min) / nx as f64;
    let dy = (region.im_max - region.im_min) / ny as f64;
    let points = (0..=ny)
        .into_par_iter()
        .flat_map_iter(|iy| {
            let im = region.im_min + dy * iy as f64;
            (0..=nx).map(move |ix| {
                let z = Complex64::new(region.re_min + dx * ix as f64, im);
                let t = mono.trace_at(z);
                let (w1, w2) = multipliers(t);
                ScanPoint {
                    re: z.re,
                    im: z.im,
                    label: mono.classify(z, tol),
                    trace_re: t.re,
                    trace_im: t.im,
                    w1_abs: w1.norm(),
                    w2_abs: w2.norm(),
                }
            })
        })
        .collect();
    let roots = aberth(&mono.p_hat_prev.to_f64(), &AberthOptions { seed, ..Default::default() });
    let ep_roots = roots
        .roots
        .iter()
        .copied()
        .filter(|z| region.contains(*z) && mono.classify(*z, tol) == Label::Ep)
        .collect();
    SpectrumScan {
        region,
        nx,
        ny,
        tol,
        points,
        ep_roots,
        roots_converged: roots.converged,
    }
}

/// Trace `t = P_s − ε_{s-1} b_{s-1} Q_{s-1}` from the normalized recurrence
/// values, an independent route to `tr T(λ)`.
pub fn trace_from_recurrence<T: Scalar>(seqs: &OrthoSequences<T>, s: usize, lambda: Complex64) -> Result<Complex64> {
    let v = crate::polyrec::normalized_values(seqs.pf(), lambda, s)?;
    let b = crate::polyrec::couplings(seqs.pf(), s)?;
    let eps = seqs.pf().terms[s - 1].epsilon.as_f64();
    Ok(v[s].0 - eps * b[s - 1] * v[s - 1].1)
}
