//! Root finding, multiplicity clustering and the unit-circle trichotomy.
//!
//! The analysis downstream consumes integer data: how many zeros lie inside
//! the open disc, on the circle, outside the closed disc, with
//! multiplicities. This module converts floating-point root iterates into
//! that combinatorial data through two declared tolerances: `delta_cluster`
//! (multiplicity detection) and `circle_tol` (circle membership).
//!
//! Roots are found with the Aberth-Ehrlich simultaneous iteration,
//! initialized on a perturbed circle inside the Cauchy bound. Multiple roots
//! emerge as tight iterate clusters and are merged into a single root,
//! re-centered at the cluster mean. For roots of multiplicity above two given
//! in coefficient form, the cluster spread can exceed the default
//! `delta_cluster`; callers with such inputs should supply factored input
//! (which bypasses the finder entirely) or widen `--tol-cluster`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::{from_roots, Poly};
use crate::scalar::{real, Scalar};
use crate::tol::Tolerances;

/// A root multiset: pairs of (location, multiplicity), sorted by real then
/// imaginary part.
pub type RootSet<T> = Vec<(Complex<T>, usize)>;

/// Roots of a polynomial split by position relative to the unit circle.
#[derive(Clone, Debug)]
pub struct ClassifiedRoots<T: Scalar> {
    /// Roots with `|z| < 1 - circle_tolerance`.
    pub inside: RootSet<T>,
    /// Roots with `||z| - 1| <= circle_tolerance`.
    pub on_circle: RootSet<T>,
    /// Roots with `|z| > 1 + circle_tolerance`.
    pub outside: RootSet<T>,
    /// Half-width of the band used for the trichotomy.
    pub circle_tolerance: T,
}

impl<T: Scalar> ClassifiedRoots<T> {
    pub fn inside_mult(&self) -> usize {
        self.inside.iter().map(|&(_, m)| m).sum()
    }

    pub fn on_circle_mult(&self) -> usize {
        self.on_circle.iter().map(|&(_, m)| m).sum()
    }

    pub fn outside_mult(&self) -> usize {
        self.outside.iter().map(|&(_, m)| m).sum()
    }

    pub fn total_mult(&self) -> usize {
        self.inside_mult() + self.on_circle_mult() + self.outside_mult()
    }

    /// Largest multiplicity among the on-circle clusters (0 if none).
    pub fn max_on_circle_order(&self) -> usize {
        self.on_circle.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }
}

fn sort_roots<T: Scalar>(roots: &mut RootSet<T>) {
    roots.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("root coordinates are finite")
    });
}

/// Merge points within `delta` of each other (single linkage, transitive)
/// into clusters; each cluster becomes one root centered at the arithmetic
/// mean of its members, with multiplicity the total weight.
#[allow(clippy::needless_range_loop)]
pub(crate) fn cluster_points<T: Scalar>(points: &[(Complex<T>, usize)], delta: T) -> RootSet<T> {
    // Zero-weight entries (possible in hand-written factored input) carry
    // no root.
    let points: Vec<(Complex<T>, usize)> =
        points.iter().copied().filter(|&(_, m)| m > 0).collect();
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (points[i].0 - points[j].0).norm() <= delta {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: Vec<(Complex<T>, usize)> = Vec::new();
    let mut repr_to_cluster: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        let w = T::from_usize(points[i].1).unwrap();
        match repr_to_cluster[r] {
            Some(c) => {
                clusters[c].0 += points[i].0 * w;
                clusters[c].1 += points[i].1;
            }
            None => {
                repr_to_cluster[r] = Some(clusters.len());
                clusters.push((points[i].0 * w, points[i].1));
            }
        }
    }
    for c in clusters.iter_mut() {
        c.0 /= T::from_usize(c.1).unwrap();
    }
    sort_roots(&mut clusters);
    clusters
}

/// Aberth-Ehrlich iteration on a polynomial with nonzero constant term.
/// Returns one iterate per root (no clustering).
fn aberth<T: Scalar>(p: &Poly<T>, tol: &Tolerances<T>) -> Result<Vec<Complex<T>>> {
    let n = p.degree().expect("aberth needs nonzero polynomial");
    debug_assert!(n >= 1);
    let coeffs = p.coeffs();
    let lead = coeffs[n];
    let norm = p.norm_inf();

    // Cauchy upper bound for |roots|.
    let mut cauchy = T::zero();
    for c in coeffs.iter().take(n) {
        cauchy = cauchy.max((c / lead).norm());
    }
    let r_upper = T::one() + cauchy;
    // Geometric-mean style initial radius.
    let r0 = if coeffs[0].norm() > T::zero() {
        (coeffs[0] / lead)
            .norm()
            .powf(T::one() / T::from_usize(n).unwrap())
            .max(r_upper * real(1e-3))
            .min(r_upper)
    } else {
        r_upper * real(0.5)
    };

    // Perturbed circle: irrational angle offset plus a small deterministic
    // radial stagger to break symmetric stalls.
    let golden = real::<T>(0.618_033_988_749_894_9);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let kf = T::from_usize(k).unwrap();
            let theta = T::TAU() * kf / T::from_usize(n).unwrap() + real(0.39996);
            let stagger = T::one() + real::<T>(0.05) * ((kf * golden).fract());
            Complex::from_polar(r0 * stagger, theta)
        })
        .collect();

    let deriv = p.derivative();
    let n_i32 = n as i32;
    // Majorant of the evaluation rounding error at |z|.
    let abs_coeffs: Vec<T> = coeffs.iter().map(|c| c.norm()).collect();
    let noise_floor = |zn: T| -> T {
        let mut acc = T::zero();
        for a in abs_coeffs.iter().rev() {
            acc = acc * zn + *a;
        }
        acc * T::epsilon() * T::from_usize(4 * n).unwrap()
    };

    // Iterate to the evaluation noise floor, so multiple roots contract into
    // clusters tight enough for the merge radius; the declared tau_root
    // bound is only the final acceptance check.
    for _iter in 0..tol.max_iters {
        let mut all_done = true;
        for k in 0..n {
            let pv = p.eval(z[k]);
            if pv.norm() <= noise_floor(z[k].norm()) {
                continue;
            }
            let dv = deriv.eval(z[k]);
            let ratio = if dv.norm() > T::zero() {
                pv / dv
            } else {
                // Derivative vanished at the iterate: nudge and retry.
                all_done = false;
                z[k] += Complex::new(tol.tau_root + T::epsilon(), T::epsilon());
                continue;
            };
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > T::zero() {
                        sum += d.inv();
                    } else {
                        z[k] += Complex::new(T::epsilon().sqrt(), T::epsilon().sqrt());
                    }
                }
            }
            let denom = Complex::new(T::one(), T::zero()) - ratio * sum;
            let w = if denom.norm() > T::zero() { ratio / denom } else { ratio };
            z[k] -= w;
            if w.norm() > T::epsilon() * (T::one() + z[k].norm()) {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }
    // Acceptance: every iterate meets the declared residual bound.
    let accepted = (0..n).all(|k| {
        let bound = tol.tau_root * norm * T::one().max(z[k].norm()).powi(n_i32);
        p.eval(z[k]).norm() <= bound.max(noise_floor(z[k].norm()))
    });
    if accepted {
        Ok(z)
    } else {
        Err(Error::NoConvergence {
            max_iters: tol.max_iters,
        })
    }
}

/// All roots of `p` with multiplicities.
///
/// Each returned root `t` satisfies
/// `|p(t)| <= tau_root * ||p||_inf * max(1, |t|)^deg(p)`; iterates within
/// `delta_cluster` of each other are merged and re-centered at their mean.
pub fn find_roots<T: Scalar>(p: &Poly<T>, tol: &Tolerances<T>) -> Result<RootSet<T>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::Precondition("cannot find roots of the zero polynomial".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Exact zeros at the origin are stripped structurally.
    let zero_c = Complex::new(T::zero(), T::zero());
    let k0 = p
        .coeffs()
        .iter()
        .take_while(|c| **c == zero_c)
        .count()
        .min(deg);
    let reduced = Poly::new(p.coeffs()[k0..].to_vec());

    let mut iterates: Vec<(Complex<T>, usize)> = Vec::with_capacity(deg);
    for _ in 0..k0 {
        iterates.push((zero_c, 1));
    }
    if reduced.degree() == Some(0) {
        // Only origin roots.
    } else {
        let scaled = reduced.scale(Complex::new(reduced.norm_inf().recip(), T::zero()));
        for z in aberth(&scaled, tol)? {
            iterates.push((z, 1));
        }
    }
    let mut clusters = cluster_points(&iterates, tol.delta_cluster);
    // The cluster mean of an order-m root carries the iterate spread of
    // order eps^(1/m); a Newton polish on the (m-1)-th derivative recovers
    // the center to machine precision. A polish that drifts out of the
    // cluster radius is discarded.
    for c in clusters.iter_mut() {
        c.0 = polish_center(p, c.0, c.1, tol);
    }
    clusters.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite")
    });
    debug_assert_eq!(clusters.iter().map(|&(_, m)| m).sum::<usize>(), deg);
    Ok(clusters)
}

fn polish_center<T: Scalar>(
    p: &Poly<T>,
    start: Complex<T>,
    mult: usize,
    tol: &Tolerances<T>,
) -> Complex<T> {
    let mut q = p.clone();
    for _ in 1..mult {
        q = q.derivative();
    }
    let dq = q.derivative();
    if dq.is_zero() {
        return start;
    }
    let mut z = start;
    for _ in 0..4 {
        let dv = dq.eval(z);
        if dv.norm() == T::zero() {
            break;
        }
        let step = q.eval(z) / dv;
        let next = z - step;
        if (next - start).norm() > tol.delta_cluster {
            return start;
        }
        z = next;
        if step.norm() <= T::epsilon() * (T::one() + z.norm()) {
            break;
        }
    }
    z
}

/// Trichotomy of an explicit root multiset. This is the path taken by
/// factored inputs, which never touch the numeric finder.
pub fn classify_clusters<T: Scalar>(roots: &[(Complex<T>, usize)], circle_tol: T) -> ClassifiedRoots<T> {
    let mut out = ClassifiedRoots {
        inside: Vec::new(),
        on_circle: Vec::new(),
        outside: Vec::new(),
        circle_tolerance: circle_tol,
    };
    for &(z, m) in roots {
        let r = z.norm();
        if (r - T::one()).abs() <= circle_tol {
            out.on_circle.push((z, m));
        } else if r < T::one() {
            out.inside.push((z, m));
        } else {
            out.outside.push((z, m));
        }
    }
    sort_roots(&mut out.inside);
    sort_roots(&mut out.on_circle);
    sort_roots(&mut out.outside);
    out
}

/// Find and classify the roots of `p` relative to the unit circle.
pub fn classify<T: Scalar>(p: &Poly<T>, tol: &Tolerances<T>) -> Result<ClassifiedRoots<T>> {
    let roots = find_roots(p, tol)?;
    Ok(classify_clusters(&roots, tol.circle_tol))
}

/// Monic inside/on/outside factors and the leading constant:
/// `p = leading * p_minus * p_zero * p_plus`.
#[derive(Clone, Debug)]
pub struct SplitFactors<T: Scalar> {
    pub p_minus: Poly<T>,
    pub p_zero: Poly<T>,
    pub p_plus: Poly<T>,
    pub leading: Complex<T>,
}

/// Split `p` into monic factors carrying the inside / on-circle / outside
/// roots.
pub fn split_factors<T: Scalar>(p: &Poly<T>, tol: &Tolerances<T>) -> Result<SplitFactors<T>> {
    let leading = p
        .leading()
        .ok_or_else(|| Error::Precondition("cannot split the zero polynomial".into()))?;
    let cls = classify(p, tol)?;
    let one = Complex::new(T::one(), T::zero());
    Ok(SplitFactors {
        p_minus: from_roots(&cls.inside, one),
        p_zero: from_roots(&cls.on_circle, one),
        p_plus: from_roots(&cls.outside, one),
        leading,
    })
}

/// True iff no root cluster of `a` lies within `delta_cluster` of a root
/// cluster of `b`.
pub fn are_coprime<T: Scalar>(a: &Poly<T>, b: &Poly<T>, tol: &Tolerances<T>) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Precondition(
            "coprimality is defined for nonzero polynomials".into(),
        ));
    }
    let ra = find_roots(a, tol)?;
    let rb = find_roots(b, tol)?;
    for &(x, _) in &ra {
        for &(y, _) in &rb {
            if (x - y).norm() <= tol.delta_cluster {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances<f64> {
        Tolerances::standard()
    }

    #[test]
    fn perfect_square_merges() {
        let p = Poly::<f64>::from_real(&[1.0, -2.0, 1.0]);
        let roots = find_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 2);
        assert!((roots[0].0 - c(1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn plus_minus_one() {
        let p = Poly::<f64>::from_real(&[-1.0, 0.0, 1.0]);
        let roots = find_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((roots[1].0 - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn half_and_two() {
        // (z-0.5)(z-2) = z^2 - 2.5 z + 1
        let p = Poly::<f64>::from_real(&[1.0, -2.5, 1.0]);
        let roots = find_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].0 - c(0.5, 0.0)).norm() < 1e-10);
        assert!((roots[1].0 - c(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn origin_roots_are_exact() {
        // z^2 (z - 0.5)
        let p = Poly::<f64>::from_real(&[0.0, 0.0, -0.5, 1.0]);
        let roots = find_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], (c(0.0, 0.0), 2));
        assert!((roots[1].0 - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn classify_pole_on_circle() {
        let p = Poly::<f64>::from_real(&[-1.0, 1.0]);
        let cls = classify(&p, &tol()).unwrap();
        assert!(cls.inside.is_empty());
        assert!(cls.outside.is_empty());
        assert_eq!(cls.on_circle.len(), 1);
        assert_eq!(cls.on_circle[0].1, 1);
    }

    #[test]
    fn classify_split_bands() {
        let p = Poly::<f64>::from_real(&[1.0, -2.5, 1.0]);
        let cls = classify(&p, &tol()).unwrap();
        assert_eq!(cls.inside.len(), 1);
        assert_eq!(cls.outside.len(), 1);
        assert!(cls.on_circle.is_empty());
        assert_eq!(cls.total_mult(), 2);
    }

    #[test]
    fn classify_constant_empty() {
        let p = Poly::<f64>::from_real(&[5.0]);
        let cls = classify(&p, &tol()).unwrap();
        assert_eq!(cls.total_mult(), 0);
    }

    #[test]
    fn split_double_circle_root() {
        let p = Poly::<f64>::from_real(&[1.0, -2.0, 1.0]);
        let sf = split_factors(&p, &tol()).unwrap();
        assert!(sf.p_minus.approx_eq(&Poly::one(), &tol()));
        assert!(sf.p_plus.approx_eq(&Poly::one(), &tol()));
        assert_eq!(sf.p_zero.degree(), Some(2));
        assert!((sf.leading - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn split_mixed() {
        let p = Poly::<f64>::from_real(&[1.0, -2.5, 1.0]);
        let sf = split_factors(&p, &tol()).unwrap();
        assert!(sf.p_minus.approx_eq(&Poly::from_real(&[-0.5, 1.0]), &tol()));
        assert!(sf.p_plus.approx_eq(&Poly::from_real(&[-2.0, 1.0]), &tol()));
        assert!(sf.p_zero.approx_eq(&Poly::one(), &tol()));
    }

    #[test]
    fn split_constant() {
        let p = Poly::<f64>::from_real(&[5.0]);
        let sf = split_factors(&p, &tol()).unwrap();
        assert!(sf.p_minus.approx_eq(&Poly::one(), &tol()));
        assert!(sf.p_zero.approx_eq(&Poly::one(), &tol()));
        assert!(sf.p_plus.approx_eq(&Poly::one(), &tol()));
        assert!((sf.leading - c(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn coprime_basic() {
        let t = tol();
        let a = Poly::<f64>::from_real(&[-1.0, 1.0]);
        let b = Poly::from_real(&[1.0, 1.0]);
        assert!(are_coprime(&a, &b, &t).unwrap());
        let c2 = Poly::from_real(&[1.0, -2.0, 1.0]);
        assert!(!are_coprime(&c2, &a, &t).unwrap());
    }

    #[test]
    fn coprime_cluster_merge() {
        let t = tol();
        let a = Poly::<f64>::from_real(&[-0.5, 1.0]);
        let b = Poly::from_real(&[-0.5000000001, 1.0]);
        assert!(!are_coprime(&a, &b, &t).unwrap());
    }

    #[test]
    fn rotation_equivariance() {
        // Classifying p(z/alpha) for |alpha|=1 rotates the trichotomy.
        let t = tol();
        let p = Poly::<f64>::from_complex_pairs(&[(1.0, 0.0), (-2.5, 0.0), (1.0, 0.0)]);
        let alpha = Complex64::from_polar(1.0, 0.7);
        // p(z/alpha) has coefficients c_k / alpha^k.
        let rotated = Poly::new(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c / alpha.powu(k as u32))
                .collect(),
        );
        let cls = classify(&rotated, &t).unwrap();
        assert_eq!(cls.inside.len(), 1);
        assert_eq!(cls.outside.len(), 1);
        assert!((cls.inside[0].0 - alpha * 0.5).norm() < 1e-9);
        assert!((cls.outside[0].0 - alpha * 2.0).norm() < 1e-9);
    }

    #[test]
    fn no_convergence_with_tiny_budget() {
        let mut t = tol();
        t.max_iters = 1;
        let p = Poly::<f64>::from_real(&[7.0, -3.0, 2.0, 0.0, 1.0, 5.0, 1.0]);
        assert!(matches!(
            find_roots(&p, &t),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn wilkinson_like_degree_twelve() {
        let roots: Vec<(Complex64, usize)> = (1..=12)
            .map(|k| (c(k as f64 / 6.0, 0.0), 1))
            .collect();
        let p = from_roots(&roots, c(1.0, 0.0));
        let found = find_roots(&p, &tol()).unwrap();
        assert_eq!(found.len(), 12);
        for (got, want) in found.iter().zip(roots.iter()) {
            assert!((got.0 - want.0).norm() < 1e-6, "{} vs {}", got.0, want.0);
        }
    }
}
