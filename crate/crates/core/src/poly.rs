//! Complex polynomial arithmetic with explicit tolerances.
//!
//! Coefficients are stored in ascending degree: `coeffs[k]` multiplies `z^k`.
//! The zero polynomial is canonically the empty coefficient list, and
//! [`Poly::degree`] returns `None` for it, so degree guards like
//! `deg(r) < deg(q)` can be written directly with `Option<usize>` ordering
//! (`None` sorts below every `Some`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};
use crate::tol::{Tolerances, TAU_COEFF_DEFAULT};

/// Dense complex polynomial in canonical form (no trailing zeros).
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Scalar> {
    coeffs: Vec<Complex<T>>,
}

/// Quotient and remainder of a Euclidean division.
#[derive(Clone, Debug, PartialEq)]
pub struct DivRem<T: Scalar> {
    pub quotient: Poly<T>,
    pub remainder: Poly<T>,
}

impl<T: Scalar> Poly<T> {
    /// Build from ascending coefficients, trimming trailing coefficients that
    /// are relatively below the default coefficient tolerance.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self::trimmed_with_floor(coeffs, T::zero())
    }

    /// Build from ascending coefficients, trimming trailing coefficients
    /// below `max(floor, tau_coeff * max |c_i|)`.
    pub(crate) fn trimmed_with_floor(mut coeffs: Vec<Complex<T>>, floor: T) -> Self {
        let max = coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a.max(b));
        let cut = floor.max(real::<T>(TAU_COEFF_DEFAULT) * max);
        while let Some(last) = coeffs.last() {
            if last.norm() <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        Poly { coeffs }
    }

    /// Re-canonicalize with an explicit coefficient tolerance.
    pub fn canonicalized(&self, tol: &Tolerances<T>) -> Self {
        let max = self.norm_inf();
        Self::trimmed_with_floor(self.coeffs.clone(), tol.tau_coeff * max)
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Poly::constant(Complex::new(T::one(), T::zero()))
    }

    /// A constant polynomial.
    pub fn constant(c: Complex<T>) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); k + 1];
        coeffs[k] = Complex::new(T::one(), T::zero());
        Poly { coeffs }
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&x| Complex::new(real(x), T::zero()))
                .collect(),
        )
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_complex_pairs(coeffs: &[(f64, f64)]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&(re, im)| Complex::new(real(re), real(im)))
                .collect(),
        )
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as a count: 0 for the zero polynomial, else `deg + 1` terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<Complex<T>> {
        self.coeffs.last().copied()
    }

    /// Max norm of the coefficient vector.
    pub fn norm_inf(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Complex::new(T::from_usize(k).unwrap(), T::zero()))
            .collect();
        Poly::new(coeffs)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: Complex<T>) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic rescale; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(l.inv()),
        }
    }

    /// Multiply by `z^k`.
    pub fn shifted_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Divide by `z^k`, checking that the low-order coefficients vanish
    /// relative to `scale`.
    pub(crate) fn shifted_down(&self, k: usize, scale: T, tol: &Tolerances<T>) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let cut = tol.tau_res * (T::one() + scale);
        for i in 0..k.min(self.coeffs.len()) {
            if self.coeffs[i].norm() > cut {
                return Err(Error::Precondition(format!(
                    "polynomial is not divisible by z^{k}: coefficient {i} has norm {:e}",
                    self.coeffs[i].norm()
                )));
            }
        }
        if self.coeffs.len() <= k {
            return Ok(Poly::zero());
        }
        Ok(Poly::new(self.coeffs[k..].to_vec()))
    }

    /// Euclidean division by `s`: `self = quotient * s + remainder` with
    /// `deg(remainder) < deg(s)`, via synthetic long division.
    pub fn divrem(&self, s: &Poly<T>) -> Result<DivRem<T>> {
        let m = s.degree().ok_or(Error::DivisionByZeroPoly)?;
        let n = match self.degree() {
            None => {
                return Ok(DivRem {
                    quotient: Poly::zero(),
                    remainder: Poly::zero(),
                })
            }
            Some(n) => n,
        };
        if n < m {
            return Ok(DivRem {
                quotient: Poly::zero(),
                remainder: self.clone(),
            });
        }
        let lead = s.coeffs[m];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex::new(T::zero(), T::zero()); n - m + 1];
        for k in (m..=n).rev() {
            let c = rem[k] / lead;
            quot[k - m] = c;
            for i in 0..m {
                let update = c * s.coeffs[i];
                rem[k - m + i] -= update;
            }
            rem[k] = Complex::new(T::zero(), T::zero());
        }
        rem.truncate(m);
        let floor = real::<T>(TAU_COEFF_DEFAULT) * self.norm_inf();
        Ok(DivRem {
            quotient: Poly::new(quot),
            remainder: Poly::trimmed_with_floor(rem, floor),
        })
    }

    /// Exact division: divides and checks the remainder is negligible
    /// relative to `self`.
    pub(crate) fn div_exact(&self, s: &Poly<T>, tol: &Tolerances<T>) -> Result<Poly<T>> {
        let dr = self.divrem(s)?;
        let cut = tol.tau_res * (T::one() + self.norm_inf());
        if dr.remainder.norm_inf() > cut {
            return Err(Error::Precondition(format!(
                "division is not exact: remainder norm {:e}",
                dr.remainder.norm_inf()
            )));
        }
        Ok(dr.quotient)
    }

    /// First `count` Taylor coefficients around `center`, i.e.
    /// `p(z) = sum_k t_k (z - center)^k`, by repeated synthetic division.
    pub fn taylor_at(&self, center: Complex<T>, count: usize) -> Vec<Complex<T>> {
        let mut out = Vec::with_capacity(count);
        let mut work = self.coeffs.clone();
        for _ in 0..count {
            if work.is_empty() {
                out.push(Complex::new(T::zero(), T::zero()));
                continue;
            }
            // Synthetic division of `work` by (z - center): remainder is the
            // value, the quotient replaces `work`.
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in (0..work.len()).rev() {
                let v = work[k] + acc * center;
                work[k] = acc;
                acc = v;
            }
            out.push(acc);
            work.pop();
        }
        out
    }

    /// Approximate comparison relative to the larger of the two norms.
    pub fn approx_eq(&self, other: &Poly<T>, tol: &Tolerances<T>) -> bool {
        let diff = self - other;
        let scale = T::one() + self.norm_inf().max(other.norm_inf());
        diff.norm_inf() <= tol.tau_res * scale
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out =
            vec![Complex::new(T::zero(), T::zero()); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == T::zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == T::zero() {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
            }
            match k {
                0 => {}
                1 => write!(f, "*z")?,
                _ => write!(f, "*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic product of `(z - t)^m` factors scaled by `leading`.
pub fn from_roots<T: Scalar>(roots: &[(Complex<T>, usize)], leading: Complex<T>) -> Poly<T> {
    let mut p = Poly::constant(leading);
    for &(t, m) in roots {
        let factor = Poly::new(vec![-t, Complex::new(T::one(), T::zero())]);
        for _ in 0..m {
            p = &p * &factor;
        }
    }
    p
}

/// Extended Euclidean identity for coprime `a`, `b`: returns `(u, v)` with
/// `a*u + b*v = 1`, `deg(u) < deg(b)` and `deg(v) < deg(a)`.
///
/// Each remainder in the chain is rescaled to monic to bound coefficient
/// growth. Near-common roots surface as an identity residual above
/// `tau_res`, reported as [`Error::NotCoprime`].
pub fn bezout<T: Scalar>(a: &Poly<T>, b: &Poly<T>, tol: &Tolerances<T>) -> Result<(Poly<T>, Poly<T>)> {
    let da = a.degree().ok_or_else(|| {
        Error::Precondition("bezout requires nonzero polynomials".to_string())
    })?;
    let db = b.degree().ok_or_else(|| {
        Error::Precondition("bezout requires nonzero polynomials".to_string())
    })?;
    if da == 0 {
        return Ok((Poly::constant(a.coeff(0).inv()), Poly::zero()));
    }
    if db == 0 {
        return Ok((Poly::zero(), Poly::constant(b.coeff(0).inv())));
    }

    // Invariant: a*u_i + b*v_i = r_i, with r_i kept monic.
    let mut r0 = a.clone();
    let mut u0 = Poly::one();
    let mut v0 = Poly::zero();
    let mut r1 = b.clone();
    let mut u1 = Poly::zero();
    let mut v1 = Poly::one();

    loop {
        match r1.degree() {
            None => {
                // True common factor of positive degree.
                return Err(Error::NotCoprime {
                    residual: r0.norm_inf().to_f64().unwrap_or(f64::INFINITY),
                });
            }
            Some(0) => break,
            Some(_) => {}
        }
        let dr = r0.divrem(&r1)?;
        let mut r2 = dr.remainder;
        let mut u2 = &u0 - &(&dr.quotient * &u1);
        let mut v2 = &v0 - &(&dr.quotient * &v1);
        if let Some(l) = r2.leading() {
            let inv = l.inv();
            r2 = r2.scale(inv);
            u2 = u2.scale(inv);
            v2 = v2.scale(inv);
        }
        r0 = std::mem::replace(&mut r1, r2);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }

    let c = r1.coeff(0).inv();
    let u_raw = u1.scale(c);

    // Reduce u modulo b, then recover v by exact division so the identity
    // a*u + b*v = 1 is preserved.
    let u = u_raw.divrem(b)?.remainder;
    let one = Poly::one();
    let t = &one - &(a * &u);
    let dv = t.divrem(b)?;
    let v = dv.quotient;

    let lhs = &(a * &u) + &(b * &v);
    let diff = &lhs - &one;
    let scale = T::one() + (a * &u).norm_inf().max((b * &v).norm_inf());
    let residual = diff.norm_inf();
    if residual > tol.tau_res * scale {
        return Err(Error::NotCoprime {
            residual: (residual / scale).to_f64().unwrap_or(f64::INFINITY),
        });
    }
    Ok((u, v))
}

/// Hermite interpolation: the unique polynomial of degree `< n` matching the
/// prescribed value and derivative data, where `n` is the total number of
/// conditions.
///
/// Each node is `(point, [f(point), f'(point), ..., f^(m-1)(point)])`.
/// Implemented with the confluent Newton divided-difference table.
pub fn hermite_interpolate<T: Scalar>(
    nodes: &[(Complex<T>, Vec<Complex<T>>)],
    _tol: &Tolerances<T>,
) -> Result<Poly<T>> {
    let n: usize = nodes.iter().map(|(_, vs)| vs.len()).sum();
    if n == 0 {
        return Ok(Poly::zero());
    }
    for (_, vs) in nodes {
        if vs.is_empty() {
            return Err(Error::Precondition(
                "every interpolation node needs at least a value".to_string(),
            ));
        }
    }
    // Reject coincident nodes listed separately: the confluent table would
    // divide by (x_i - x_j) ~ 0.
    let node_scale = nodes
        .iter()
        .map(|(z, _)| z.norm())
        .fold(T::one(), |a, b| a.max(b));
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            let d = (nodes[i].0 - nodes[j].0).norm();
            if d <= T::epsilon() * real::<T>(100.0) * node_scale {
                return Err(Error::SingularSystem(format!(
                    "nodes {i} and {j} coincide"
                )));
            }
        }
    }

    // Expanded point list with node identity for confluence decisions.
    let mut xs: Vec<(usize, Complex<T>)> = Vec::with_capacity(n);
    for (id, (z, vs)) in nodes.iter().enumerate() {
        for _ in 0..vs.len() {
            xs.push((id, *z));
        }
    }
    let mut fact = vec![T::one(); n];
    for k in 1..n {
        fact[k] = fact[k - 1] * T::from_usize(k).unwrap();
    }

    // dd[k][i] = f[x_i, ..., x_{i+k}]
    let mut dd: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    dd.push(xs.iter().map(|&(id, _)| nodes[id].1[0]).collect());
    for k in 1..n {
        let mut row = Vec::with_capacity(n - k);
        for i in 0..(n - k) {
            let (id_lo, x_lo) = xs[i];
            let (id_hi, x_hi) = xs[i + k];
            let v = if id_lo == id_hi {
                nodes[id_lo].1[k] / fact[k]
            } else {
                (dd[k - 1][i + 1] - dd[k - 1][i]) / (x_hi - x_lo)
            };
            row.push(v);
        }
        dd.push(row);
    }

    // Newton form accumulation.
    let mut p = Poly::zero();
    let mut basis = Poly::one();
    for k in 0..n {
        p = &p + &basis.scale(dd[k][0]);
        if k + 1 < n {
            let factor = Poly::new(vec![-xs[k].1, Complex::new(T::one(), T::zero())]);
            basis = &basis * &factor;
        }
    }
    Ok(p)
}
