//! Shared corpus generation for the integration suites.
//!
//! Symbols are built in factored form with a seeded generator, so every run
//! sees the same corpus and classifications are exact by construction.

// Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toeplitz_core::symbol::{Factored, RationalFn};
use toeplitz_core::Tolerances;

pub const CORPUS_SEED: u64 = 0x70EB_117D;

/// One random root: radius from the three bands (inside 0.3..0.8, exactly on
/// the circle, outside 1.25..3), uniform angle.
fn random_root(rng: &mut ChaCha8Rng) -> Complex64 {
    let band = rng.gen_range(0u8..3);
    let radius = match band {
        0 => rng.gen_range(0.3..0.8),
        1 => 1.0,
        _ => rng.gen_range(1.25..3.0),
    };
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(radius, angle)
}

/// Root multiset of total multiplicity `degree`, pairwise separated by at
/// least `sep` (an occasional double root consumes two units of degree).
fn random_roots(rng: &mut ChaCha8Rng, degree: usize, sep: f64) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let mut left = degree;
    'outer: while left > 0 {
        let z = random_root(rng);
        for &(w, _) in &out {
            if (z - w).norm() < sep {
                continue 'outer;
            }
        }
        let mult = if left >= 2 && rng.gen_bool(0.2) { 2 } else { 1 };
        out.push((z, mult));
        left -= mult;
    }
    out
}

fn min_cross_distance(a: &[(Complex64, usize)], b: &[(Complex64, usize)]) -> f64 {
    let mut best = f64::INFINITY;
    for &(x, _) in a {
        for &(y, _) in b {
            best = best.min((x - y).norm());
        }
    }
    best
}

/// The deterministic 50-symbol corpus: numerator and denominator degrees up
/// to 6, roots from the three radius bands, coprime by a 1e-3 separation.
pub fn corpus(tol: &Tolerances<f64>) -> Vec<RationalFn<f64>> {
    corpus_sized(tol, 50)
}

pub fn corpus_sized(tol: &Tolerances<f64>, count: usize) -> Vec<RationalFn<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ds = rng.gen_range(0usize..=6);
        let dq = rng.gen_range(0usize..=6);
        if ds + dq == 0 {
            continue;
        }
        let s_roots = random_roots(&mut rng, ds, 1e-2);
        let q_roots = random_roots(&mut rng, dq, 1e-2);
        if min_cross_distance(&s_roots, &q_roots) < 1e-3 {
            continue;
        }
        let leading = Complex64::new(rng.gen_range(0.5..2.0), rng.gen_range(-0.5..0.5));
        let f = RationalFn::from_factored(
            Factored::new(s_roots, leading),
            Factored::new(q_roots, one),
            tol,
        )
        .expect("corpus symbol");
        out.push(f);
    }
    out
}

/// A random argument for the operator: polynomial part plus poles strictly
/// outside the closed disc.
pub fn random_analytic_arg(rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) -> RationalFn<f64> {
    use toeplitz_core::poly::Poly;
    let deg = rng.gen_range(0usize..=4);
    let coeffs: Vec<(f64, f64)> = (0..=deg)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let num = Poly::from_complex_pairs(&coeffs);
    let n_poles = rng.gen_range(0usize..=2);
    let mut poles = Vec::new();
    'next: while poles.len() < n_poles {
        let r = rng.gen_range(1.25..3.0);
        let a = rng.gen_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(r, a);
        for &(w, _) in &poles {
            let d: Complex64 = z - w;
            if d.norm() < 1e-2 {
                continue 'next;
            }
        }
        poles.push((z, 1usize));
    }
    let den = toeplitz_core::poly::from_roots(&poles, Complex64::new(1.0, 0.0));
    if num.is_zero() {
        return RationalFn::one();
    }
    RationalFn::new(num, den, tol).expect("analytic argument")
}
