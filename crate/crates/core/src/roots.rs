//! All roots of a polynomial by Aberth–Ehrlich simultaneous iteration.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AberthOptions {
    /// Relative step size at which a root counts as converged.
    pub tol: f64,
    pub max_iter: usize,
    /// Restarts from perturbed positions after a stagnated run.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        AberthOptions {
            tol: 1e-12,
            max_iter: 200,
            restarts: 3,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Roots {
    pub roots: Vec<Complex64>,
    pub converged: bool,
    pub iterations: usize,
}

pub fn aberth(p: &Polynomial<f64>, opts: &AberthOptions) -> Roots {
    let Some(n) = p.degree() else {
        return Roots {
            roots: Vec::new(),
            converged: true,
            iterations: 0,
        };
    };
    if n == 0 {
        return Roots {
            roots: Vec::new(),
            converged: true,
            iterations: 0,
        };
    }
    let lead = p.coeff(n);
    let monic: Vec<f64> = p.coeffs().iter().map(|c| c / lead).collect();
    let dp = Polynomial::from_coeffs(monic.clone()).derivative();
    let monic = Polynomial::from_coeffs(monic);
    // Fujiwara bound on the root moduli.
    let radius = (0..n)
        .map(|i| {
            let c = monic.coeff(i).abs();
            if i == 0 {
                (c / 2.0).powf(1.0 / n as f64)
            } else {
                c.powf(1.0 / (n - i) as f64)
            }
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if radius > 0.0 { radius } else { 1.0 };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, offset + std::f64::consts::TAU * k as f64 / n as f64))
        .collect();
    let mut total = 0;
    for attempt in 0..=opts.restarts {
        if attempt > 0 {
            for zi in z.iter_mut() {
                let jitter = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                *zi += jitter * 1e-3 * zi.norm().max(1e-3);
            }
        }
        for _ in 0..opts.max_iter {
            total += 1;
            let mut done = true;
            for i in 0..n {
                let f = monic.eval_c64(z[i]);
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let ratio = f / dp.eval_c64(z[i]);
                let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
                let step = ratio / (1.0 - ratio * repulsion);
                if !step.is_finite() {
                    done = false;
                    continue;
                }
                z[i] -= step;
                if step.norm() > opts.tol * z[i].norm().max(1.0) {
                    done = false;
                }
            }
            if done {
                return Roots {
                    roots: z,
                    converged: true,
                    iterations: total,
                };
            }
        }
    }
    Roots {
        roots: z,
        converged: false,
        iterations: total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn quadratic_and_cubic() {
        let r = aberth(&Polynomial::from_coeffs(vec![-1.0, 0.0, 1.0]), &AberthOptions::default());
        assert!(r.converged);
        let r = sorted(r.roots);
        assert!((r[0] + 1.0).norm() < 1e-12 && (r[1] - 1.0).norm() < 1e-12);
        // x^3 + 1
        let r = aberth(&Polynomial::from_coeffs(vec![1.0, 0.0, 0.0, 1.0]), &AberthOptions::default());
        for z in r.roots {
            assert!((z.powu(3) + 1.0).norm() < 1e-12);
        }
        assert!(aberth(&Polynomial::from_coeffs(vec![3.0]), &AberthOptions::default()).roots.is_empty());
    }

    #[test]
    fn seeded_runs_repeat() {
        let p = Polynomial::from_coeffs(vec![2.0, -3.0, 0.5, 1.0, 1.0]);
        let opts = AberthOptions { seed: 7, ..Default::default() };
        assert_eq!(aberth(&p, &opts), aberth(&p, &opts));
    }

    proptest! {
        #[test]
        fn recovers_prescribed_roots(rs in prop::collection::vec(-3.0f64..3.0, 1..7)) {
            let mut rs = rs;
            rs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assume!(rs.windows(2).all(|w| w[1] - w[0] > 0.05));
            let p = rs.iter().fold(Polynomial::from_coeffs(vec![1.0]), |acc, r| &acc * &Polynomial::from_coeffs(vec![-r, 1.0]));
            let found = sorted(aberth(&p, &AberthOptions::default()).roots);
            for (z, r) in found.iter().zip(&rs) {
                prop_assert!((z - r).norm() < 1e-8, "{:?} vs {:?}", found, rs);
            }
        }
    }
}
