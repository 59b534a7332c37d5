//! Fredholm analysis of the Toeplitz-like operator: index, kernel basis,
//! range description, division with remainder in the Hardy space, and the
//! inverse when it exists.
//!
//! The analysis rests on the zero/pole censuses: the operator is Fredholm
//! exactly when the symbol has no zeros on the unit circle, and then
//!
//! ```text
//! index = #{poles in the closed disc} - #{zeros in the open disc}
//! ```
//!
//! with multiplicities. A Fredholm operator here is always injective or
//! surjective, so `dim ker = max(0, index)` and `codim ran = max(0, -index)`;
//! the kernel basis below certifies the kernel dimension through a second,
//! independent construction.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::factor::{factorize, WHFactorization};
use crate::poly::{bezout, from_roots, hermite_interpolate, Poly};
use crate::roots::{classify, ClassifiedRoots};
use crate::scalar::{real, Scalar};
use crate::symbol::{apply_toeplitz, RationalFn};
use crate::tol::Tolerances;

/// Outcome of the Fredholm analysis of one symbol.
#[derive(Clone, Debug)]
pub struct FredholmReport<T: Scalar> {
    /// True iff the symbol has no zeros on the circle band.
    pub is_fredholm: bool,
    /// Fredholm index; absent when not Fredholm.
    pub index: Option<i64>,
    /// Kernel dimension; absent when not Fredholm.
    pub dim_kernel: Option<usize>,
    /// Range codimension; absent when not Fredholm.
    pub codim_range: Option<usize>,
    /// Fredholm with index zero.
    pub invertible: bool,
    /// Census of the symbol's zeros.
    pub zero_census: ClassifiedRoots<T>,
    /// Census of the symbol's poles.
    pub pole_census: ClassifiedRoots<T>,
    /// Zeros in the open disc minus poles in the open disc.
    pub kappa: i64,
}

/// Analyze a nonzero symbol.
pub fn analyze<T: Scalar>(omega: &RationalFn<T>, tol: &Tolerances<T>) -> Result<FredholmReport<T>> {
    if omega.is_zero() {
        return Err(Error::Precondition("cannot analyze the zero symbol".into()));
    }
    let zero_census = omega.zero_census(tol.circle_tol);
    let pole_census = omega.pole_census(tol.circle_tol);
    let kappa = zero_census.inside_mult() as i64 - pole_census.inside_mult() as i64;
    let is_fredholm = zero_census.on_circle.is_empty();
    let (index, dim_kernel, codim_range, invertible) = if is_fredholm {
        let poles_closed = (pole_census.inside_mult() + pole_census.on_circle_mult()) as i64;
        let zeros_open = zero_census.inside_mult() as i64;
        let index = poles_closed - zeros_open;
        (
            Some(index),
            Some(index.max(0) as usize),
            Some((-index).max(0) as usize),
            index == 0,
        )
    } else {
        (None, None, None, false)
    };
    Ok(FredholmReport {
        is_fredholm,
        index,
        dim_kernel,
        codim_range,
        invertible,
        zero_census,
        pole_census,
        kappa,
    })
}

/// A basis of the operator's kernel, as rational functions analytic on the
/// closed disc.
///
/// For a symbol with all poles on the circle the basis is
/// `z^j / s_plus` for `j < deg(q) - deg(s_minus) - deg(s_zero)`, which also
/// covers circle zeros (they count into `s_zero`). For a general symbol the
/// operator must be Fredholm; the factorization reduces the kernel to that
/// of the middle factor, pulled back through the invertible outside factor.
pub fn kernel_basis<T: Scalar>(
    omega: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<Vec<RationalFn<T>>> {
    if omega.is_zero() {
        return Err(Error::Precondition("kernel of the zero symbol".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    if omega.is_circle_symbol(tol.circle_tol) {
        let zeros = omega.zero_census(tol.circle_tol);
        let dq = omega.den().degree().expect("den nonzero") as i64;
        let reach = dq - (zeros.inside_mult() + zeros.on_circle_mult()) as i64;
        if reach <= 0 {
            return Ok(Vec::new());
        }
        let s_plus = from_roots(&zeros.outside, one);
        let s_plus_roots = zeros.outside.clone();
        let origin = Complex::new(T::zero(), T::zero());
        let mut basis = Vec::with_capacity(reach as usize);
        for j in 0..reach as usize {
            let num_roots = if j > 0 { vec![(origin, j)] } else { Vec::new() };
            let g = RationalFn::from_parts_unchecked(
                Poly::monomial(j),
                num_roots,
                s_plus.clone(),
                s_plus_roots.clone(),
            );
            basis.push(g);
        }
        return Ok(basis);
    }
    let report = analyze(omega, tol)?;
    if !report.is_fredholm {
        return Err(Error::NotSupported(
            "kernel basis for a non-Fredholm symbol with poles off the circle".into(),
        ));
    }
    let wh = factorize(omega, tol)?;
    let q0 = wh.omega0.den().clone();
    let dq0 = q0.degree().unwrap_or(0) as i64;
    let kappa = wh.kappa;
    let mut middle_kernel: Vec<Poly<T>> = Vec::new();
    if kappa >= 0 {
        for j in 0..(dq0 - kappa).max(0) as usize {
            middle_kernel.push(Poly::monomial(j));
        }
    } else {
        for j in 0..dq0 as usize {
            middle_kernel.push(Poly::monomial(j));
        }
        for i in 0..(-kappa) as usize {
            middle_kernel.push(&q0 * &Poly::monomial(i));
        }
    }
    let inv_plus = wh.omega_plus.inv()?;
    let mut basis = Vec::with_capacity(middle_kernel.len());
    for h in middle_kernel {
        basis.push(inv_plus.mul_poly(&h, tol)?);
    }
    Ok(basis)
}

/// Description of the operator's range for a circle symbol: the range is
/// `s_minus * H^p` plus the span of `tilde_p_basis`, and `complement_basis`
/// spans a complement of the range in the whole space.
#[derive(Clone, Debug)]
pub struct RangeDescriptor<T: Scalar> {
    /// Monic polynomial carrying the symbol's zeros inside the disc.
    pub s_minus: Poly<T>,
    /// Basis of the polynomial summand of the range.
    pub tilde_p_basis: Vec<Poly<T>>,
    /// Basis of a complement of the range (monomials), empty when the
    /// operator is surjective.
    pub complement_basis: Vec<Poly<T>>,
}

/// Nullspace of a small complex matrix (rows of length `ncols`) by Gaussian
/// elimination with partial pivoting; vectors with a pivot below the
/// threshold count as free.
#[allow(clippy::needless_range_loop)]
fn nullspace<T: Scalar>(
    mut rows: Vec<Vec<Complex<T>>>,
    ncols: usize,
    threshold: T,
) -> Vec<Vec<Complex<T>>> {
    let nrows = rows.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let mut best = r;
        let mut best_norm = T::zero();
        for i in r..nrows {
            let n = rows[i][col].norm();
            if n > best_norm {
                best_norm = n;
                best = i;
            }
        }
        if best_norm <= threshold {
            continue;
        }
        rows.swap(r, best);
        let piv = rows[r][col];
        for j in col..ncols {
            rows[r][j] /= piv;
        }
        for i in 0..nrows {
            if i != r {
                let f = rows[i][col];
                if f.norm() > T::zero() {
                    for j in col..ncols {
                        let upd = f * rows[r][j];
                        rows[i][j] -= upd;
                    }
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    let zero = Complex::new(T::zero(), T::zero());
    for col in 0..ncols {
        if pivot_cols.contains(&col) {
            continue;
        }
        let mut v = vec![zero; ncols];
        v[col] = Complex::new(T::one(), T::zero());
        for (pi, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[pi][col];
        }
        basis.push(v);
    }
    // Gram-Schmidt on the coefficient vectors.
    let mut ortho: Vec<Vec<Complex<T>>> = Vec::new();
    for mut v in basis {
        for u in &ortho {
            let mut dot = zero;
            let mut nrm = T::zero();
            for (a, b) in u.iter().zip(v.iter()) {
                dot += a.conj() * *b;
                nrm += a.norm_sqr();
            }
            let coef = dot / Complex::new(nrm, T::zero());
            for (a, b) in u.iter().zip(v.iter_mut()) {
                *b -= coef * *a;
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        if norm > threshold {
            for c in v.iter_mut() {
                *c /= Complex::new(norm, T::zero());
            }
            ortho.push(v);
        }
    }
    ortho
}

/// Compute the range description of a Fredholm circle symbol.
///
/// A polynomial `r` of degree below `deg(s_minus)` belongs to the polynomial
/// summand iff `r*q = r1*s_minus + r2` is solvable with both `r1`, `r2` of
/// degree below `deg(q)`; equivalently, iff the Euclidean remainder of `r*q`
/// modulo `s_minus` has degree below `deg(q)`. For
/// `deg(s_minus) <= deg(q)` that is automatic; otherwise the admissible `r`
/// form the nullspace of the high-coefficient map.
#[allow(clippy::needless_range_loop)]
pub fn range_descriptor<T: Scalar>(
    omega: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RangeDescriptor<T>> {
    if omega.is_zero() {
        return Err(Error::Precondition("range of the zero symbol".into()));
    }
    if !omega.is_circle_symbol(tol.circle_tol) {
        return Err(Error::NotSupported(
            "range description needs all poles on the circle".into(),
        ));
    }
    let zeros = omega.zero_census(tol.circle_tol);
    if !zeros.on_circle.is_empty() {
        return Err(Error::NotSupported(
            "range description needs a Fredholm symbol (no circle zeros)".into(),
        ));
    }
    let one = Complex::new(T::one(), T::zero());
    let s_minus = from_roots(&zeros.inside, one);
    let dsm = s_minus.degree().unwrap_or(0);
    let dq = omega.den().degree().expect("den nonzero");
    let q = omega.den();

    let complement_basis: Vec<Poly<T>> = if dsm > dq {
        (0..dsm - dq).map(Poly::monomial).collect()
    } else {
        Vec::new()
    };

    let tilde_p_basis: Vec<Poly<T>> = if dsm == 0 {
        Vec::new()
    } else if dsm <= dq {
        (0..dsm).map(Poly::monomial).collect()
    } else {
        // Rows: coefficients deg(q)..deg(s_minus)-1 of rem(z^j * q, s_minus).
        let mut rows = vec![vec![Complex::new(T::zero(), T::zero()); dsm]; dsm - dq];
        let mut scale = T::zero();
        for j in 0..dsm {
            let rq = &Poly::monomial(j) * q;
            let rem = rq.divrem(&s_minus)?.remainder;
            scale = scale.max(rq.norm_inf());
            for i in dq..dsm {
                rows[i - dq][j] = rem.coeff(i);
            }
        }
        let threshold = tol.tau_res * (T::one() + scale);
        nullspace(rows, dsm, threshold)
            .into_iter()
            .map(Poly::new)
            .collect()
    };

    Ok(RangeDescriptor {
        s_minus,
        tilde_p_basis,
        complement_basis,
    })
}

/// Division with remainder in the Hardy space: `h = s*g + r` with `g`
/// analytic on the closed disc and `deg(r) < deg(s_minus)`.
///
/// The remainder is the Hermite interpolant of `h` at the inside roots of
/// `s` (with multiplicities); it exists and is unique exactly when `s` has
/// no roots on the circle.
pub fn hp_divide<T: Scalar>(
    h: &RationalFn<T>,
    s: &Poly<T>,
    tol: &Tolerances<T>,
) -> Result<(RationalFn<T>, Poly<T>)> {
    let lead = s.leading().ok_or(Error::DivisionByZeroPoly)?;
    if !h.is_analytic_on_closed_disc(tol.circle_tol) {
        return Err(Error::NotInDomain(
            "dividend has a pole in the closed unit disc".into(),
        ));
    }
    if s.degree() == Some(0) {
        return Ok((h.scale(lead.inv()), Poly::zero()));
    }
    let cls = classify(s, tol)?;
    if !cls.on_circle.is_empty() {
        return Err(Error::CircleRoot);
    }

    // Hermite data of h at the inside roots.
    let mut nodes = Vec::with_capacity(cls.inside.len());
    for &(alpha, m) in &cls.inside {
        let tn = h.num().taylor_at(alpha, m);
        let td = h.den().taylor_at(alpha, m);
        let mut series = vec![Complex::new(T::zero(), T::zero()); m];
        for k in 0..m {
            let mut acc = tn[k];
            for i in 1..=k {
                acc -= td[i] * series[k - i];
            }
            series[k] = acc / td[0];
        }
        let mut fact = T::one();
        let mut derivs = Vec::with_capacity(m);
        for (k, &u) in series.iter().enumerate() {
            if k > 0 {
                fact *= T::from_usize(k).unwrap();
            }
            derivs.push(u * Complex::new(fact, T::zero()));
        }
        nodes.push((alpha, derivs));
    }
    let r = if nodes.is_empty() {
        Poly::zero()
    } else {
        hermite_interpolate(&nodes, tol)?
    };

    // g = (h - r)/s; the inside factor divides out exactly by construction.
    let one = Complex::new(T::one(), T::zero());
    let s_minus = from_roots(&cls.inside, one);
    let s_plus = from_roots(&cls.outside, one);
    let r_den = &r * h.den();
    let w_scale = h.num().norm_inf().max(r_den.norm_inf());
    let w = &Poly::trimmed_with_floor(
        (h.num() - &r_den).coeffs().to_vec(),
        tol.tau_coeff * w_scale,
    )
    .scale(lead.inv());
    let w_reduced = if s_minus.degree() == Some(0) {
        w.clone()
    } else {
        w.div_exact(&s_minus, tol).map_err(|_| {
            Error::SingularSystem("interpolated remainder does not clear the inside roots".into())
        })?
    };
    let mut den_roots = h.den_roots().clone();
    den_roots.extend_from_slice(&cls.outside);
    let den = h.den() * &s_plus;
    let g = RationalFn::over_factored_den(w_reduced, den, den_roots, tol)?;
    Ok((g, r))
}

/// Apply the right-inverse chain built from a factorization: the inverse of
/// the inside factor, then the inverse of the middle factor realized as
/// "multiply by the circle denominator, drop the first `kappa` Taylor
/// coefficients" (for `kappa < 0` the drop becomes multiplication by
/// `z^|kappa|`), then the inverse of the outside factor. For an invertible
/// symbol this is the two-sided inverse.
pub fn apply_right_inverse_factored<T: Scalar>(
    wh: &WHFactorization<T>,
    h: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RationalFn<T>> {
    let c0 = wh.omega0.num();
    if c0.degree() != Some(0) {
        return Err(Error::NotSupported(
            "right inverse requires a symbol without circle zeros".into(),
        ));
    }
    let c0_inv = c0.coeff(0).inv();
    let f1 = apply_toeplitz(&wh.omega_minus.inv()?, h, tol)?.result;
    let q0 = RationalFn::from_parts_unchecked(
        wh.omega0.den().clone(),
        wh.omega0.den_roots().clone(),
        Poly::one(),
        Vec::new(),
    );
    let f2 = if wh.kappa >= 0 {
        f1.mul(&q0, tol)?
            .backward_shift_n(wh.kappa as usize, tol)?
            .scale(c0_inv)
    } else {
        f1.mul(&q0, tol)?
            .mul(&RationalFn::monomial((-wh.kappa) as usize), tol)?
            .scale(c0_inv)
    };
    Ok(apply_toeplitz(&wh.omega_plus.inv()?, &f2, tol)?.result)
}

/// Right inverse of a Fredholm operator with nonnegative index, applied to
/// `h`. For index zero this is the inverse.
pub fn apply_right_inverse<T: Scalar>(
    omega: &RationalFn<T>,
    h: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RationalFn<T>> {
    let report = analyze(omega, tol)?;
    if !report.is_fredholm {
        return Err(Error::NotSupported("symbol is not Fredholm".into()));
    }
    if report.index.unwrap_or(-1) < 0 {
        return Err(Error::NotSupported(
            "negative index: the operator is not surjective".into(),
        ));
    }
    if !h.is_analytic_on_closed_disc(tol.circle_tol) {
        return Err(Error::NotInDomain(
            "argument has a pole in the closed unit disc".into(),
        ));
    }
    let wh = factorize(omega, tol)?;
    apply_right_inverse_factored(&wh, h, tol)
}

/// Apply the inverse operator to `h`. Requires an invertible symbol
/// (Fredholm of index zero) and `h` analytic on the closed disc.
pub fn apply_inverse<T: Scalar>(
    omega: &RationalFn<T>,
    h: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RationalFn<T>> {
    let report = analyze(omega, tol)?;
    if !report.invertible {
        return Err(Error::NotInvertible);
    }
    if !h.is_analytic_on_closed_disc(tol.circle_tol) {
        return Err(Error::NotInDomain(
            "argument has a pole in the closed unit disc".into(),
        ));
    }
    let wh = factorize(omega, tol)?;
    apply_right_inverse_factored(&wh, h, tol)
}

/// Verify the invariance identity behind the domain analysis: for coprime
/// `q` and `s_plus` (roots outside the closed disc) and `deg(r) < deg(q)`,
/// the function `r/s_plus` decomposes as `q*h + r'` with `h` analytic on the
/// closed disc and `deg(r') < deg(q)`, built through the extended Euclidean
/// identity.
pub fn bezout_invariance_check<T: Scalar>(
    q: &Poly<T>,
    s_plus: &Poly<T>,
    r: &Poly<T>,
    tol: &Tolerances<T>,
) -> Result<bool> {
    if q.is_zero() || s_plus.is_zero() {
        return Err(Error::Precondition("q and s_plus must be nonzero".into()));
    }
    if !(r.degree() < q.degree()) {
        return Err(Error::Precondition("need deg(r) < deg(q)".into()));
    }
    let cls = classify(s_plus, tol)?;
    if !(cls.inside.is_empty() && cls.on_circle.is_empty()) {
        return Err(Error::Precondition(
            "s_plus must have all roots outside the closed disc".into(),
        ));
    }
    if r.is_zero() {
        return Ok(true);
    }
    let (a, b) = bezout(q, s_plus, tol)?;
    // r/s_plus = q * (r a)/s_plus + r b, then split r b = q u + r2.
    let rb = r * &b;
    let dr = rb.divrem(q)?;
    let (u, r2) = (dr.quotient, dr.remainder);
    let h_num = &(r * &a) + &(&u * s_plus);
    let h = RationalFn::new(h_num, s_plus.clone(), tol)?;
    if !h.is_analytic_on_closed_disc(tol.circle_tol) {
        return Ok(false);
    }
    let lhs = h
        .mul_poly(q, tol)?
        .add(&RationalFn::from_poly(&r2, tol)?, tol)?;
    let rhs = RationalFn::new(r.clone(), s_plus.clone(), tol)?;
    Ok(lhs.approx_eq(&rhs, tol) && r2.degree() < q.degree())
}

/// Estimate the index by sampling the winding of the symbol on a circle just
/// outside the unit circle. Diagnostic cross-check; requires a Fredholm
/// symbol.
pub fn winding_index_estimate<T: Scalar>(
    omega: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<i64> {
    let report = analyze(omega, tol)?;
    if !report.is_fredholm {
        return Err(Error::NotSupported(
            "winding estimate needs a Fredholm symbol".into(),
        ));
    }
    // Radius strictly between the circle band and the nearest outside root.
    let mut nearest = real::<T>(1.5);
    for &(z, _) in report
        .zero_census
        .outside
        .iter()
        .chain(report.pole_census.outside.iter())
    {
        nearest = nearest.min(z.norm());
    }
    let radius = (T::one() + nearest) * real(0.5);

    let mut n = 512usize;
    loop {
        let mut total = T::zero();
        let mut prev = omega.eval(Complex::from_polar(radius, T::zero())).arg();
        let mut max_step = T::zero();
        for k in 1..=n {
            let theta = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
            let cur = omega.eval(Complex::from_polar(radius, theta)).arg();
            let mut d = cur - prev;
            while d > T::PI() {
                d -= T::TAU();
            }
            while d < -T::PI() {
                d += T::TAU();
            }
            max_step = max_step.max(d.abs());
            total += d;
            prev = cur;
        }
        if max_step < T::FRAC_PI_2() {
            let winding = (total / T::TAU()).round();
            return Ok(-winding.to_f64().unwrap_or(0.0) as i64);
        }
        n *= 2;
        if n > 1 << 16 {
            return Err(Error::Precondition(
                "winding sampling did not stabilize".into(),
            ));
        }
    }
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

    fn rf(num: &[f64], den: &[f64]) -> RationalFn<f64> {
        RationalFn::new(Poly::from_real(num), Poly::from_real(den), &tol()).unwrap()
    }

    fn kernel_residual(omega: &RationalFn<f64>, g: &RationalFn<f64>) -> f64 {
        let app = apply_toeplitz(omega, g, &tol()).unwrap();
        if app.result.is_zero() {
            0.0
        } else {
            app.result.num().norm_inf()
        }
    }

    #[test]
    fn analyze_simple_circle_pole() {
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert!(rep.is_fredholm);
        assert_eq!(rep.index, Some(1));
        assert_eq!(rep.dim_kernel, Some(1));
        assert_eq!(rep.codim_range, Some(0));
        assert!(!rep.invertible);
    }

    #[test]
    fn analyze_invertible() {
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert!(rep.is_fredholm);
        assert_eq!(rep.index, Some(0));
        assert!(rep.invertible);
    }

    #[test]
    fn analyze_circle_zero_not_fredholm() {
        let omega = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert!(!rep.is_fredholm);
        assert_eq!(rep.index, None);
        assert_eq!(rep.dim_kernel, None);
        assert!(!rep.invertible);
        assert_eq!(rep.kappa, 0);
    }

    #[test]
    fn kernel_constant_for_simple_pole() {
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        let basis = kernel_basis(&omega, &tol()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].approx_eq(&RationalFn::one(), &tol()));
        assert!(kernel_residual(&omega, &basis[0]) < 1e-10);
    }

    #[test]
    fn kernel_outside_zero() {
        let omega = rf(&[-2.0, 1.0], &[-1.0, 1.0]);
        let basis = kernel_basis(&omega, &tol()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].approx_eq(&rf(&[1.0], &[-2.0, 1.0]), &tol()));
        assert!(kernel_residual(&omega, &basis[0]) < 1e-10);
    }

    #[test]
    fn kernel_empty_when_invertible() {
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        assert!(kernel_basis(&omega, &tol()).unwrap().is_empty());
    }

    #[test]
    fn kernel_for_circle_zero_symbol() {
        // (z+1)/(z-1)^2 is not Fredholm but has all poles on the circle.
        let omega = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        let basis = kernel_basis(&omega, &tol()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0].approx_eq(&RationalFn::one(), &tol()));
        assert!(kernel_residual(&omega, &basis[0]) < 1e-10);
    }

    #[test]
    fn kernel_mixed_kappa_negative() {
        // 1/((z-0.5)(z-1)): kappa = -1, index = 2, kernel dim 2.
        let omega = rf(&[1.0], &[0.5, -1.5, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert_eq!(rep.index, Some(2));
        let basis = kernel_basis(&omega, &tol()).unwrap();
        assert_eq!(basis.len(), 2);
        for g in &basis {
            assert!(kernel_residual(&omega, g) < 1e-9);
        }
    }

    #[test]
    fn kernel_empty_with_circle_zero_and_pole() {
        // (z+1)/(z-1): zero and pole both on the circle. Not Fredholm, but
        // the circle-symbol kernel formula applies and gives dimension 0.
        let omega = rf(&[1.0, 1.0], &[-1.0, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert!(!rep.is_fredholm);
        assert!(kernel_basis(&omega, &tol()).unwrap().is_empty());
    }

    #[test]
    fn kernel_dimension_three_higher_order_pole() {
        // (z^2+2)/((z-1)^2 (z+1)): zeros outside, three circle poles.
        let t = tol();
        let num = Poly::from_real(&[2.0, 0.0, 1.0]);
        let den = &Poly::from_real(&[1.0, -2.0, 1.0]) * &Poly::from_real(&[1.0, 1.0]);
        let omega = RationalFn::new(num, den, &t).unwrap();
        let rep = analyze(&omega, &t).unwrap();
        assert_eq!(rep.index, Some(3));
        assert_eq!(rep.dim_kernel, Some(3));
        let basis = kernel_basis(&omega, &t).unwrap();
        assert_eq!(basis.len(), 3);
        for g in &basis {
            assert!(kernel_residual(&omega, g) < 1e-9);
        }
    }

    #[test]
    fn invertible_with_conjugate_circle_poles() {
        // (z-0.3)(z+0.4)/(z^2+1): two inside zeros balance the two circle
        // poles at +/- i.
        let t = tol();
        let num = &Poly::from_real(&[-0.3, 1.0]) * &Poly::from_real(&[0.4, 1.0]);
        let omega = RationalFn::new(num, Poly::from_real(&[1.0, 0.0, 1.0]), &t).unwrap();
        let rep = analyze(&omega, &t).unwrap();
        assert!(rep.invertible);
        assert_eq!(rep.kappa, 2);
        for n in 0..=5 {
            let h = RationalFn::monomial(n);
            let g = apply_inverse(&omega, &h, &t).unwrap();
            let back = apply_toeplitz(&omega, &g, &t).unwrap().result;
            assert!(back.approx_eq(&h, &t), "n={n}");
        }
    }

    #[test]
    fn kernel_unsupported_mixed_circle_zero() {
        // zero on circle and a pole off circle
        let omega = rf(&[-1.0, 1.0], &[-0.5, 1.0]);
        assert!(matches!(
            kernel_basis(&omega, &tol()),
            Err(Error::NotSupported(_))
        ));
    }

    #[test]
    fn range_invertible_case() {
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        let rd = range_descriptor(&omega, &tol()).unwrap();
        assert!(rd.s_minus.approx_eq(&Poly::from_real(&[-0.5, 1.0]), &tol()));
        assert!(rd.complement_basis.is_empty());
        assert_eq!(rd.tilde_p_basis.len(), 1);
    }

    #[test]
    fn range_codimension_one() {
        // (z-0.4)(z-0.6)/(z-1): deg s_minus 2, deg q 1 -> codim 1.
        let omega = rf(&[0.24, -1.0, 1.0], &[-1.0, 1.0]);
        let rep = analyze(&omega, &tol()).unwrap();
        assert_eq!(rep.index, Some(-1));
        assert_eq!(rep.codim_range, Some(1));
        let rd = range_descriptor(&omega, &tol()).unwrap();
        assert_eq!(rd.complement_basis.len(), 1);
        assert!(rd.complement_basis[0].approx_eq(&Poly::one(), &tol()));
        // dim tilde basis = min(deg s_minus, deg q) = 1
        assert_eq!(rd.tilde_p_basis.len(), 1);
        // Certify the defining relation r*q = r1*s_minus + r2.
        for r in &rd.tilde_p_basis {
            let rq = r * omega.den();
            let dr = rq.divrem(&rd.s_minus).unwrap();
            assert!(dr.quotient.degree() < omega.den().degree());
            assert!(dr.remainder.degree() < omega.den().degree());
        }
    }

    #[test]
    fn range_surjective_outside_zero() {
        let omega = rf(&[-2.0, 1.0], &[-1.0, 1.0]);
        let rd = range_descriptor(&omega, &tol()).unwrap();
        assert!(rd.s_minus.approx_eq(&Poly::one(), &tol()));
        assert!(rd.complement_basis.is_empty());
        assert!(rd.tilde_p_basis.is_empty());
    }

    #[test]
    fn hp_divide_example() {
        // h = 1/(z-2), s = z - 0.5: r = -2/3, g = (2/3)/(z-2).
        let h = rf(&[1.0], &[-2.0, 1.0]);
        let s = Poly::from_real(&[-0.5, 1.0]);
        let (g, r) = hp_divide(&h, &s, &tol()).unwrap();
        assert!(r.approx_eq(&Poly::from_real(&[-2.0 / 3.0]), &tol()));
        assert!(g.approx_eq(&rf(&[2.0 / 3.0], &[-2.0, 1.0]), &tol()));
        // h = s*g + r
        let back = g
            .mul_poly(&s, &tol())
            .unwrap()
            .add(&RationalFn::from_poly(&r, &tol()).unwrap(), &tol())
            .unwrap();
        assert!(back.approx_eq(&h, &tol()));
    }

    #[test]
    fn hp_divide_constant_divisor() {
        let h = rf(&[1.0, 2.0], &[-3.0, 1.0]);
        let s = Poly::from_real(&[4.0]);
        let (g, r) = hp_divide(&h, &s, &tol()).unwrap();
        assert!(r.is_zero());
        assert!(g.approx_eq(&h.scale(c(0.25, 0.0)), &tol()));
    }

    #[test]
    fn hp_divide_outside_root() {
        let h = RationalFn::monomial(2);
        let s = Poly::from_real(&[-2.0, 1.0]);
        let (g, r) = hp_divide(&h, &s, &tol()).unwrap();
        assert!(r.is_zero());
        assert!(g.is_analytic_on_closed_disc(tol().circle_tol));
        assert!(g.approx_eq(&rf(&[0.0, 0.0, 1.0], &[-2.0, 1.0]), &tol()));
    }

    #[test]
    fn hp_divide_circle_root_rejected() {
        let h = RationalFn::monomial(1);
        let s = Poly::from_real(&[-1.0, 1.0]);
        assert!(matches!(
            hp_divide(&h, &s, &tol()),
            Err(Error::CircleRoot)
        ));
    }

    #[test]
    fn apply_inverse_examples() {
        let t = tol();
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        let g1 = apply_inverse(&omega, &RationalFn::one(), &t).unwrap();
        assert!(g1.approx_eq(&RationalFn::one(), &t));
        let g2 = apply_inverse(&omega, &RationalFn::monomial(1), &t).unwrap();
        assert!(g2.approx_eq(
            &RationalFn::from_poly(&Poly::from_real(&[-0.5, 1.0]), &t).unwrap(),
            &t
        ));
        let g3 = apply_inverse(&omega, &RationalFn::zero(), &t).unwrap();
        assert!(g3.is_zero());
    }

    #[test]
    fn apply_inverse_round_trip() {
        let t = tol();
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        for n in 0..=6 {
            let h = RationalFn::monomial(n);
            let g = apply_inverse(&omega, &h, &t).unwrap();
            let back = apply_toeplitz(&omega, &g, &t).unwrap().result;
            assert!(back.approx_eq(&h, &t), "n={n}");
        }
    }

    #[test]
    fn right_inverse_with_inside_pole() {
        use crate::factor::factorize;
        // 1/((z-0.5)(z-1)): kappa = -1 but index = 2, so a right inverse
        // exists through the multiplication form of the middle factor.
        let t = tol();
        let omega = rf(&[1.0], &[0.5, -1.5, 1.0]);
        let wh = factorize(&omega, &t).unwrap();
        assert_eq!(wh.kappa, -1);
        for n in 0..=5 {
            let h = RationalFn::monomial(n);
            let g = apply_right_inverse_factored(&wh, &h, &t).unwrap();
            let back = apply_toeplitz(&omega, &g, &t).unwrap().result;
            assert!(back.approx_eq(&h, &t), "n={n}");
        }
    }

    #[test]
    fn apply_inverse_rejects_non_invertible() {
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        assert!(matches!(
            apply_inverse(&omega, &RationalFn::one(), &tol()),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn bezout_invariance_examples() {
        let t = tol();
        let q = Poly::from_real(&[-1.0, 1.0]);
        let sp = Poly::from_real(&[-2.0, 1.0]);
        assert!(bezout_invariance_check(&q, &sp, &Poly::one(), &t).unwrap());

        let q2 = Poly::from_real(&[1.0, -2.0, 1.0]);
        let sp2 = Poly::from_real(&[-3.0, 1.0]);
        assert!(bezout_invariance_check(&q2, &sp2, &Poly::monomial(1), &t).unwrap());

        let shared = Poly::from_real(&[-1.0, 1.0]);
        assert!(matches!(
            bezout_invariance_check(&shared, &shared, &Poly::one(), &t),
            Err(Error::NotCoprime { .. }) | Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn winding_matches_index() {
        let t = tol();
        for omega in [
            rf(&[1.0], &[-1.0, 1.0]),
            rf(&[-0.5, 1.0], &[-1.0, 1.0]),
            rf(&[-2.0, 1.0], &[-1.0, 1.0]),
            rf(&[1.0], &[0.5, -1.5, 1.0]),
        ] {
            let rep = analyze(&omega, &t).unwrap();
            let est = winding_index_estimate(&omega, &t).unwrap();
            assert_eq!(Some(est), rep.index);
        }
    }

    #[test]
    fn dichotomy_on_examples() {
        let t = tol();
        for omega in [
            rf(&[1.0], &[-1.0, 1.0]),
            rf(&[-0.5, 1.0], &[-1.0, 1.0]),
            rf(&[-2.0, 1.0], &[-1.0, 1.0]),
            rf(&[0.24, -1.0, 1.0], &[-1.0, 1.0]),
        ] {
            let rep = analyze(&omega, &t).unwrap();
            let dk = rep.dim_kernel.unwrap();
            let cr = rep.codim_range.unwrap();
            assert!(dk == 0 || cr == 0);
            assert_eq!(rep.index.unwrap(), dk as i64 - cr as i64);
        }
    }
}
