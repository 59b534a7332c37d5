//! Matrix representation of the operator with respect to the monomial basis.
//!
//! The matrix is Toeplitz: entry `(m, n)` equals `a_{m-n}` for a coefficient
//! sequence determined by the symbol. The shipped coefficients come from the
//! operator oracle (one application to a high monomial), while
//! [`symbol_coefficients_closed_form`] rebuilds them from the partial
//! fraction decomposition: binomial column formulas for poles inside or on
//! the circle, Taylor expansion for poles outside. The two routes validate
//! each other; the closed form is the cross-check, not the source of truth.
//!
//! For a symbol whose circle poles have maximal order `M`, the
//! upper-triangular coefficients grow like `j^(M-1)` while the
//! lower-triangular ones are square-summable; [`growth_check`] fits both
//! statements over a finite window.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fredholm::{analyze, apply_right_inverse_factored};
use crate::factor::factorize;
use crate::poly::{DivRem, Poly};
use crate::scalar::{real, Scalar};
use crate::symbol::{apply_toeplitz, partial_fractions, RationalFn};
use crate::tol::Tolerances;

/// Largest integer exactly representable in the significand of an `f64`.
const BINOMIAL_CAP: f64 = 4.503_599_627_370_496e15; // 2^52

/// Binomial coefficient in floating point, multiplicative form.
fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 1..=k {
        acc = acc * (n - k + i) as f64 / i as f64;
    }
    acc.round()
}

/// The explicit Euclidean division of `z^N` by `(z-1)^m` for `m < N`:
/// quotient coefficients are binomials, the remainder is
/// `1 + sum_{j=1}^{m-1} C(N,j) (z-1)^j`, and the identity
/// `z^N = (z-1)^m * quotient + remainder` is exact.
pub fn binomial_division<T: Scalar>(n_exp: usize, m: usize) -> Result<DivRem<T>> {
    if m == 0 || m >= n_exp {
        return Err(Error::Precondition(format!(
            "need 0 < m < N, got m={m}, N={n_exp}"
        )));
    }
    if binomial(n_exp, m.min(n_exp - m)) > BINOMIAL_CAP || binomial(n_exp - 1, m - 1) > BINOMIAL_CAP
    {
        return Err(Error::Precondition(
            "binomial coefficients exceed the exact integer range of f64".into(),
        ));
    }
    // Quotient: coefficient of z^t is C(N-t-1, m-1) for t = 0..=N-m.
    let mut quot = Vec::with_capacity(n_exp - m + 1);
    for t in 0..=(n_exp - m) {
        quot.push(Complex::new(real::<T>(binomial(n_exp - t - 1, m - 1)), T::zero()));
    }
    // Remainder: 1 + sum_{j=1}^{m-1} C(N, j) (z-1)^j.
    let mut rem = Poly::<T>::one();
    let shifted = Poly::<T>::from_real(&[-1.0, 1.0]);
    let mut power = Poly::<T>::one();
    for j in 1..m {
        power = &power * &shifted;
        rem = &rem + &power.scale(Complex::new(real::<T>(binomial(n_exp, j)), T::zero()));
    }
    Ok(DivRem {
        quotient: Poly::new(quot),
        remainder: rem,
    })
}

/// Toeplitz coefficient sequence of a symbol over the window `-K..=K`.
#[derive(Clone, Debug)]
pub struct SymbolCoefficients<T: Scalar> {
    /// `a[window + k]` is the coefficient `a_k`.
    a: Vec<Complex<T>>,
    window: usize,
    /// Largest order among the symbol's circle poles (0 if none).
    max_circle_pole_order: usize,
}

impl<T: Scalar> SymbolCoefficients<T> {
    /// The coefficient `a_k`; zero outside the window.
    pub fn coeff(&self, k: i64) -> Complex<T> {
        let idx = self.window as i64 + k;
        if idx < 0 || idx >= self.a.len() as i64 {
            Complex::new(T::zero(), T::zero())
        } else {
            self.a[idx as usize]
        }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn max_circle_pole_order(&self) -> usize {
        self.max_circle_pole_order
    }
}

/// Taylor coefficient at index `idx` of a sum of a polynomial and
/// outside-disc pole terms (`|pole| > 1`), expanded term by term:
/// `c/(z-p)^l` contributes `c * (-1)^l * C(idx+l-1, l-1) * p^(-l-idx)`.
fn analytic_taylor_coeff<T: Scalar>(
    poly_part: &Poly<T>,
    terms: &[crate::symbol::PoleTerm<T>],
    idx: usize,
) -> Complex<T> {
    let mut acc = poly_part.coeff(idx);
    for t in terms {
        let p_inv = t.pole.inv();
        for (k_idx, &c) in t.coefficients.iter().enumerate() {
            let l = k_idx + 1;
            if c.norm() == T::zero() {
                continue;
            }
            let sign = if l % 2 == 0 { T::one() } else { -T::one() };
            let b = Complex::new(real::<T>(binomial(idx + l - 1, l - 1)) * sign, T::zero());
            acc += c * b * p_inv.powu((l + idx) as u32);
        }
    }
    acc
}

/// Taylor coefficients (rows `0..count`) of the operator applied to `z^n`,
/// i.e. one column of the matrix representation.
///
/// The symbol is split into its closed-disc part (poles inside or on the
/// circle), which is applied as an operator, and its analytic part (poles
/// outside, plus the polynomial part), which acts by multiplication and is
/// expanded term by term. Reading the coefficients off the recombined
/// rational result instead would cancel catastrophically once `n` is large
/// and an outside pole's powers have grown past the target precision.
pub fn column_coefficients<T: Scalar>(
    omega: &RationalFn<T>,
    n: usize,
    count: usize,
    tol: &Tolerances<T>,
) -> Result<Vec<Complex<T>>> {
    if omega.is_zero() {
        return Err(Error::Precondition("column of the zero symbol".into()));
    }
    let pf = partial_fractions(omega, tol)?;
    let band = tol.circle_tol;
    let bounded_terms: Vec<_> = pf
        .terms
        .iter()
        .filter(|t| t.pole.norm() <= T::one() + band)
        .cloned()
        .collect();
    let outside_terms: Vec<_> = pf
        .terms
        .iter()
        .filter(|t| t.pole.norm() > T::one() + band)
        .cloned()
        .collect();

    let bounded_column: Poly<T> = if bounded_terms.is_empty() {
        Poly::zero()
    } else {
        let bounded = crate::symbol::PartialFractions {
            poly_part: Poly::zero(),
            terms: bounded_terms,
        }
        .recombine(tol)?;
        let applied = apply_toeplitz(&bounded, &RationalFn::monomial(n), tol)?.result;
        applied.as_poly().cloned().ok_or_else(|| {
            Error::Precondition("closed-disc part did not project to a polynomial".into())
        })?
    };

    let mut col = Vec::with_capacity(count);
    for m in 0..count {
        let mut v = bounded_column.coeff(m);
        if m >= n {
            v += analytic_taylor_coeff(&pf.poly_part, &outside_terms, m - n);
        }
        col.push(v);
    }
    Ok(col)
}

/// Toeplitz coefficients from the operator oracle: one application to
/// `z^K` determines `a_k` for `|k| <= K` as Taylor coefficients of the
/// result column.
pub fn symbol_coefficients<T: Scalar>(
    omega: &RationalFn<T>,
    window: usize,
    tol: &Tolerances<T>,
) -> Result<SymbolCoefficients<T>> {
    if omega.is_zero() {
        return Err(Error::Precondition("coefficients of the zero symbol".into()));
    }
    if window == 0 {
        return Err(Error::Precondition("window must be at least 1".into()));
    }
    let a = column_coefficients(omega, window, 2 * window + 1, tol)?;
    let census = omega.pole_census(tol.circle_tol);
    Ok(SymbolCoefficients {
        a,
        window,
        max_circle_pole_order: census.max_on_circle_order(),
    })
}

/// Toeplitz coefficients from the partial fraction decomposition.
///
/// Each strictly proper term `c/(z-p)^l` with `|p| <= 1` contributes
/// `a_{-j} += c * C(j-1, l-1) * p^(j-l)` for `j >= l`; a term with `|p| > 1`
/// contributes its Taylor coefficients
/// `a_i += c * (-1)^l * C(i+l-1, l-1) * p^(-l-i)`; the polynomial part
/// contributes its coefficients on and below the diagonal.
pub fn symbol_coefficients_closed_form<T: Scalar>(
    omega: &RationalFn<T>,
    window: usize,
    tol: &Tolerances<T>,
) -> Result<SymbolCoefficients<T>> {
    if omega.is_zero() {
        return Err(Error::Precondition("coefficients of the zero symbol".into()));
    }
    if window == 0 {
        return Err(Error::Precondition("window must be at least 1".into()));
    }
    let pf = partial_fractions(omega, tol)?;
    let max_order = pf.terms.iter().map(|t| t.order).max().unwrap_or(0);
    if binomial(window + max_order, max_order) > BINOMIAL_CAP {
        return Err(Error::Precondition(
            "window too large for exact binomial coefficients".into(),
        ));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut a = vec![zero; 2 * window + 1];
    for k in 0..=window.min(pf.poly_part.degree().unwrap_or(0)) {
        if !pf.poly_part.is_zero() {
            a[window + k] += pf.poly_part.coeff(k);
        }
    }
    for term in &pf.terms {
        let p = term.pole;
        let inside_or_on = p.norm() <= T::one() + tol.circle_tol;
        for (k_idx, &c) in term.coefficients.iter().enumerate() {
            let l = k_idx + 1;
            if c.norm() == T::zero() {
                continue;
            }
            if inside_or_on {
                for j in l..=window {
                    let b = Complex::new(real::<T>(binomial(j - 1, l - 1)), T::zero());
                    let contrib = c * b * p.powu((j - l) as u32);
                    a[window - j] += contrib;
                }
            } else {
                let sign = if l % 2 == 0 { T::one() } else { -T::one() };
                let p_inv = p.inv();
                for i in 0..=window {
                    let b = Complex::new(real::<T>(binomial(i + l - 1, l - 1)), T::zero());
                    let contrib = c * b * p_inv.powu((l + i) as u32) * Complex::new(sign, T::zero());
                    a[window + i] += contrib;
                }
            }
        }
    }
    let census = omega.pole_census(tol.circle_tol);
    Ok(SymbolCoefficients {
        a,
        window,
        max_circle_pole_order: census.max_on_circle_order(),
    })
}

/// Finite section of the Toeplitz matrix representation.
#[derive(Clone, Debug)]
pub struct TruncatedMatrix<T: Scalar> {
    entries: Vec<Vec<Complex<T>>>,
    size: usize,
}

impl<T: Scalar> TruncatedMatrix<T> {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Complex<T>>] {
        &self.entries
    }
}

/// The `N x N` section `[a_{m-n}]` of the matrix representation.
pub fn truncated_matrix<T: Scalar>(
    omega: &RationalFn<T>,
    size: usize,
    tol: &Tolerances<T>,
) -> Result<TruncatedMatrix<T>> {
    if size == 0 {
        return Err(Error::Precondition("matrix size must be at least 1".into()));
    }
    let sc = symbol_coefficients(omega, size, tol)?;
    let entries = (0..size)
        .map(|m| {
            (0..size)
                .map(|n| sc.coeff(m as i64 - n as i64))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(TruncatedMatrix { entries, size })
}

/// Growth diagnostics of a coefficient sequence.
#[derive(Clone, Debug)]
pub struct GrowthCheck<T> {
    /// Fitted constant: `max_j |a_{-j}| / j^(M-1)` over the window.
    pub bound_constant: T,
    /// True when the ratio sequence shows no growth trend beyond `j^(M-1)`
    /// (log-log slope over the last half of the window below 0.1).
    pub exponent_ok: bool,
    /// `sum_{j>=0} |a_j|^2` over the window.
    pub l2_tail: T,
}

/// Fit the polynomial growth bound of the upper-triangular coefficients and
/// the square-summability of the lower-triangular ones. Windows of at least
/// 16 give the trend test room to mean anything.
pub fn growth_check<T: Scalar>(coeffs: &SymbolCoefficients<T>) -> GrowthCheck<T> {
    let window = coeffs.window();
    let m_order = coeffs.max_circle_pole_order() as i32;
    let mut bound = T::zero();
    let mut pts: Vec<(T, T)> = Vec::new();
    for j in 1..=window {
        let mag = coeffs.coeff(-(j as i64)).norm();
        let jf = T::from_usize(j).unwrap();
        let ratio = mag / jf.powi(m_order - 1);
        bound = bound.max(ratio);
        if j >= window / 2 && ratio > real::<T>(1e-300) {
            pts.push((jf.ln(), ratio.ln()));
        }
    }
    let exponent_ok = if pts.len() < 2 {
        true
    } else {
        // Least-squares slope of ln(ratio) against ln(j).
        let n = T::from_usize(pts.len()).unwrap();
        let sx = pts.iter().fold(T::zero(), |a, p| a + p.0);
        let sy = pts.iter().fold(T::zero(), |a, p| a + p.1);
        let sxx = pts.iter().fold(T::zero(), |a, p| a + p.0 * p.0);
        let sxy = pts.iter().fold(T::zero(), |a, p| a + p.0 * p.1);
        let denom = n * sxx - sx * sx;
        if denom.abs() <= T::epsilon() {
            true
        } else {
            let slope = (n * sxy - sx * sy) / denom;
            slope < real(0.1)
        }
    };
    let mut l2 = T::zero();
    for j in 0..=window {
        l2 += coeffs.coeff(j as i64).norm_sqr();
    }
    GrowthCheck {
        bound_constant: bound,
        exponent_ok,
        l2_tail: l2,
    }
}

/// Build the truncated one-sided inverse from right-inverse columns and
/// measure `||[T] [T^r] - I||` on the upper-left block.
///
/// The columns are the exact rational right-inverse images of the monomials,
/// and the product column is evaluated through the operator oracle, i.e.
/// with full inner sums; the block restriction `size - d` with
/// `d = deg(q) + deg(s) + |kappa|` keeps the statement meaningful for the
/// finite section read off the returned residual.
pub fn inverse_matrix_check<T: Scalar>(
    omega: &RationalFn<T>,
    size: usize,
    tol: &Tolerances<T>,
) -> Result<T> {
    let report = analyze(omega, tol)?;
    if !report.is_fredholm {
        return Err(Error::NotSupported(
            "inverse sections need a Fredholm symbol".into(),
        ));
    }
    if report.index.unwrap_or(-1) < 0 {
        return Err(Error::NotSupported(
            "negative index: no right inverse exists".into(),
        ));
    }
    if size < 4 {
        return Err(Error::Precondition("need size >= 4".into()));
    }
    let ds = omega.num().degree().unwrap_or(0);
    let dq = omega.den().degree().unwrap_or(0);
    let d = ds + dq + report.kappa.unsigned_abs() as usize;
    if size <= d {
        return Err(Error::Precondition(format!(
            "size {size} is within the bandwidth margin {d}"
        )));
    }
    let block = size - d;
    let wh = factorize(omega, tol)?;
    let mut residual = T::zero();
    for j in 0..block {
        let g = apply_right_inverse_factored(&wh, &RationalFn::monomial(j), tol)?;
        let col = apply_toeplitz(omega, &g, tol)?.result.taylor(block)?;
        for (i, &v) in col.iter().enumerate() {
            let want = if i == j { T::one() } else { T::zero() };
            residual = residual.max((v - Complex::new(want, T::zero())).norm());
        }
    }
    Ok(residual)
}
