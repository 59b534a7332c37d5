//! Rational symbols and the exact action of the Toeplitz-like operator.
//!
//! A symbol is a quotient `num/den` of coprime complex polynomials with monic
//! denominator. Alongside the coefficient form, every [`RationalFn`] carries
//! the root multisets of numerator and denominator, so products never
//! re-solve for roots and classifications stay consistent across a whole
//! computation.
//!
//! The operator acts on rational functions analytic on the closed unit disc.
//! Multiplying the symbol by the argument and splitting into partial
//! fractions sorts the poles into three classes:
//!
//! * poles outside the closed disc and the polynomial part are analytic and
//!   survive the Riesz projection,
//! * strictly proper terms with poles inside the disc have only negative
//!   Fourier modes on the circle, so the projection annihilates them,
//! * terms with poles on the circle form the strictly proper defect that the
//!   operator definition subtracts before projecting.
//!
//! This module is the independent oracle that the factorization, kernel,
//! inverse and matrix modules are validated against.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::{from_roots, Poly};
use crate::roots::{classify_clusters, cluster_points, find_roots, ClassifiedRoots, RootSet};
use crate::scalar::Scalar;
use crate::tol::Tolerances;

/// A polynomial in factored form: roots with multiplicities plus a leading
/// constant. This is the exact input form that bypasses numeric root
/// finding.
#[derive(Clone, Debug)]
pub struct Factored<T: Scalar> {
    pub roots: RootSet<T>,
    pub leading: Complex<T>,
}

impl<T: Scalar> Factored<T> {
    pub fn new(roots: RootSet<T>, leading: Complex<T>) -> Self {
        Factored { roots, leading }
    }

    /// Expand to coefficient form.
    pub fn to_poly(&self) -> Poly<T> {
        from_roots(&self.roots, self.leading)
    }

    /// Factor a coefficient-form polynomial by finding its roots.
    pub fn of_poly(p: &Poly<T>, tol: &Tolerances<T>) -> Result<Self> {
        let leading = p
            .leading()
            .ok_or_else(|| Error::Precondition("cannot factor the zero polynomial".into()))?;
        Ok(Factored {
            roots: find_roots(p, tol)?,
            leading,
        })
    }
}

/// Quotient of two coprime polynomials; denominator monic. The zero function
/// is `0/1`.
#[derive(Clone, Debug)]
pub struct RationalFn<T: Scalar> {
    num: Poly<T>,
    den: Poly<T>,
    num_roots: RootSet<T>,
    den_roots: RootSet<T>,
}

/// Remove common root clusters (multiplicity-wise) from the two multisets.
/// Returns true if anything cancelled.
fn cancel_common<T: Scalar>(
    num_roots: &mut RootSet<T>,
    den_roots: &mut RootSet<T>,
    delta: T,
) -> bool {
    let mut cancelled = false;
    for d in den_roots.iter_mut() {
        if d.1 == 0 {
            continue;
        }
        // Closest numerator cluster within the merge radius.
        let mut best: Option<(usize, T)> = None;
        for (i, n) in num_roots.iter().enumerate() {
            if n.1 == 0 {
                continue;
            }
            let dist = (n.0 - d.0).norm();
            if dist <= delta {
                match best {
                    Some((_, bd)) if bd <= dist => {}
                    _ => best = Some((i, dist)),
                }
            }
        }
        if let Some((i, _)) = best {
            let k = num_roots[i].1.min(d.1);
            num_roots[i].1 -= k;
            d.1 -= k;
            cancelled = true;
        }
    }
    num_roots.retain(|&(_, m)| m > 0);
    den_roots.retain(|&(_, m)| m > 0);
    cancelled
}

impl<T: Scalar> RationalFn<T> {
    /// The zero function.
    pub fn zero() -> Self {
        RationalFn {
            num: Poly::zero(),
            den: Poly::one(),
            num_roots: Vec::new(),
            den_roots: Vec::new(),
        }
    }

    /// The constant function `1`.
    pub fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }

    /// A constant function.
    pub fn constant(c: Complex<T>) -> Self {
        if c.norm() == T::zero() {
            return Self::zero();
        }
        RationalFn {
            num: Poly::constant(c),
            den: Poly::one(),
            num_roots: Vec::new(),
            den_roots: Vec::new(),
        }
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        if n == 0 {
            return Self::one();
        }
        RationalFn {
            num: Poly::monomial(n),
            den: Poly::one(),
            num_roots: vec![(Complex::new(T::zero(), T::zero()), n)],
            den_roots: Vec::new(),
        }
    }

    /// Normalize a quotient of coefficient-form polynomials: cancel common
    /// root clusters, make the denominator monic, rescale the numerator.
    pub fn new(num: Poly<T>, den: Poly<T>, tol: &Tolerances<T>) -> Result<Self> {
        let den_lead = den.leading().ok_or(Error::DivisionByZeroPoly)?;
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let num_fac = Factored::of_poly(&num, tol)?;
        let den_fac = Factored {
            roots: find_roots(&den, tol)?,
            leading: den_lead,
        };
        Self::assemble(num_fac, den_fac, Some((num, den)), tol)
    }

    /// Build from factored numerator and denominator without any numeric
    /// root finding. Common clusters cancel exactly.
    pub fn from_factored(num: Factored<T>, den: Factored<T>, tol: &Tolerances<T>) -> Result<Self> {
        if den.leading.norm() == T::zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.leading.norm() == T::zero() {
            return Ok(Self::zero());
        }
        Self::assemble(num, den, None, tol)
    }

    /// A polynomial viewed as a rational function.
    pub fn from_poly(p: &Poly<T>, tol: &Tolerances<T>) -> Result<Self> {
        if p.is_zero() {
            return Ok(Self::zero());
        }
        Ok(RationalFn {
            num: p.clone(),
            den: Poly::one(),
            num_roots: find_roots(p, tol)?,
            den_roots: Vec::new(),
        })
    }

    /// Internal constructor: cancels clusters, fixes the monic normalization
    /// and keeps coefficient forms when no cancellation happened (`coeff`
    /// carries the original polynomials in that case).
    fn assemble(
        num_fac: Factored<T>,
        den_fac: Factored<T>,
        coeff: Option<(Poly<T>, Poly<T>)>,
        tol: &Tolerances<T>,
    ) -> Result<Self> {
        // Merge duplicate clusters within each multiset first, so a root
        // reachable along two paths (e.g. an explicit origin power next to
        // an origin root) becomes a single cluster with summed multiplicity.
        let mut nr = cluster_points(&num_fac.roots, tol.delta_cluster);
        let mut dr = cluster_points(&den_fac.roots, tol.delta_cluster);
        let cancelled = cancel_common(&mut nr, &mut dr, tol.delta_cluster);
        let lead = num_fac.leading / den_fac.leading;
        if !cancelled {
            if let Some((num, den)) = coeff {
                let inv = den_fac.leading.inv();
                return Ok(RationalFn {
                    num: num.scale(inv),
                    den: den.scale(inv),
                    num_roots: nr,
                    den_roots: dr,
                });
            }
        }
        Ok(RationalFn {
            num: from_roots(&nr, lead),
            den: from_roots(&dr, Complex::new(T::one(), T::zero())),
            num_roots: nr,
            den_roots: dr,
        })
    }

    /// Internal: build from fully known parts. The caller guarantees the
    /// invariants (monic denominator, coprimality, root data matching the
    /// polynomials).
    pub(crate) fn from_parts_unchecked(
        num: Poly<T>,
        num_roots: RootSet<T>,
        den: Poly<T>,
        den_roots: RootSet<T>,
    ) -> Self {
        RationalFn {
            num,
            den,
            num_roots,
            den_roots,
        }
    }

    /// Constructor for a numerator in coefficient form over a known factored
    /// monic denominator (no common clusters assumed; they are cancelled if
    /// present).
    pub(crate) fn over_factored_den(
        num: Poly<T>,
        den: Poly<T>,
        den_roots: RootSet<T>,
        tol: &Tolerances<T>,
    ) -> Result<Self> {
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let num_fac = Factored::of_poly(&num, tol)?;
        let den_fac = Factored {
            roots: den_roots,
            leading: Complex::new(T::one(), T::zero()),
        };
        Self::assemble(num_fac, den_fac, Some((num, den)), tol)
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn num_roots(&self) -> &RootSet<T> {
        &self.num_roots
    }

    pub fn den_roots(&self) -> &RootSet<T> {
        &self.den_roots
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True if the denominator is constant.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The numerator as a polynomial, if the function is one.
    pub fn as_poly(&self) -> Option<&Poly<T>> {
        if self.is_polynomial() || self.is_zero() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Classification of the zeros relative to the unit circle.
    pub fn zero_census(&self, circle_tol: T) -> ClassifiedRoots<T> {
        classify_clusters(&self.num_roots, circle_tol)
    }

    /// Classification of the poles relative to the unit circle.
    pub fn pole_census(&self, circle_tol: T) -> ClassifiedRoots<T> {
        classify_clusters(&self.den_roots, circle_tol)
    }

    /// All poles on the circle band (vacuously true for polynomials).
    pub fn is_circle_symbol(&self, circle_tol: T) -> bool {
        let c = self.pole_census(circle_tol);
        c.inside.is_empty() && c.outside.is_empty()
    }

    /// Strictly proper: numerator degree below denominator degree.
    pub fn is_strictly_proper(&self) -> bool {
        self.num.degree() < self.den.degree()
    }

    /// Analytic on the closed unit disc: every pole lies strictly outside
    /// the band around the circle.
    pub fn is_analytic_on_closed_disc(&self, circle_tol: T) -> bool {
        self.den_roots
            .iter()
            .all(|&(z, _)| z.norm() > T::one() + circle_tol)
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        RationalFn {
            num: self.num.scale(Complex::new(-T::one(), T::zero())),
            den: self.den.clone(),
            num_roots: self.num_roots.clone(),
            den_roots: self.den_roots.clone(),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        if c.norm() == T::zero() || self.is_zero() {
            return Self::zero();
        }
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
            num_roots: self.num_roots.clone(),
            den_roots: self.den_roots.clone(),
        }
    }

    /// Reciprocal. Swaps zeros and poles.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let num_lead = self.num.leading().expect("nonzero");
        let inv = num_lead.inv();
        Ok(RationalFn {
            num: self.den.scale(inv),
            den: self.num.scale(inv),
            num_roots: self.den_roots.clone(),
            den_roots: self.num_roots.clone(),
        })
    }

    /// Product; root multisets merge, common clusters cancel.
    pub fn mul(&self, other: &Self, tol: &Tolerances<T>) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut num_points = self.num_roots.clone();
        num_points.extend_from_slice(&other.num_roots);
        let mut den_points = self.den_roots.clone();
        den_points.extend_from_slice(&other.den_roots);
        let num_fac = Factored {
            roots: cluster_points(&num_points, tol.delta_cluster),
            leading: self.num.leading().unwrap() * other.num.leading().unwrap(),
        };
        let den_fac = Factored {
            roots: cluster_points(&den_points, tol.delta_cluster),
            leading: Complex::new(T::one(), T::zero()),
        };
        let coeff = (&self.num * &other.num, &self.den * &other.den);
        Self::assemble(num_fac, den_fac, Some(coeff), tol)
    }

    /// Product with a polynomial.
    pub fn mul_poly(&self, p: &Poly<T>, tol: &Tolerances<T>) -> Result<Self> {
        self.mul(&Self::from_poly(p, tol)?, tol)
    }

    /// Sum. Denominators combine by cluster-wise least common multiple.
    pub fn add(&self, other: &Self, tol: &Tolerances<T>) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // lcm of the two denominator multisets, matching clusters by radius.
        let mut lcm: RootSet<T> = self.den_roots.clone();
        for &(z, m) in &other.den_roots {
            match lcm
                .iter_mut()
                .find(|(w, _)| (*w - z).norm() <= tol.delta_cluster)
            {
                Some(entry) => entry.1 = entry.1.max(m),
                None => lcm.push((z, m)),
            }
        }
        let multiplier = |own: &RootSet<T>| -> RootSet<T> {
            // lcm minus own cluster multiplicities.
            let mut diff = Vec::new();
            for &(z, m) in &lcm {
                let used = own
                    .iter()
                    .find(|(w, _)| (*w - z).norm() <= tol.delta_cluster)
                    .map(|&(_, k)| k)
                    .unwrap_or(0);
                if m > used {
                    diff.push((z, m - used));
                }
            }
            diff
        };
        let one = Complex::new(T::one(), T::zero());
        let ma = from_roots(&multiplier(&self.den_roots), one);
        let mb = from_roots(&multiplier(&other.den_roots), one);
        let pa = &self.num * &ma;
        let pb = &other.num * &mb;
        let magnitude = pa.norm_inf().max(pb.norm_inf());
        let num = Poly::trimmed_with_floor(
            (&pa + &pb).coeffs().to_vec(),
            tol.tau_coeff * magnitude,
        );
        let mut lcm_sorted = lcm;
        lcm_sorted.sort_by(|a, b| {
            (a.0.re, a.0.im)
                .partial_cmp(&(b.0.re, b.0.im))
                .expect("finite")
        });
        let den = from_roots(&lcm_sorted, one);
        Self::over_factored_den(num, den, lcm_sorted, tol)
    }

    pub fn sub(&self, other: &Self, tol: &Tolerances<T>) -> Result<Self> {
        self.add(&other.neg(), tol)
    }

    /// Residual of the cross-multiplied difference, relative to scale.
    pub fn residual_to(&self, other: &Self) -> T {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        let diff = &lhs - &rhs;
        let scale = T::one() + lhs.norm_inf().max(rhs.norm_inf());
        diff.norm_inf() / scale
    }

    /// Equality as rational functions, within `tau_res`.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerances<T>) -> bool {
        self.residual_to(other) <= tol.tau_res
    }

    /// First `count` Taylor coefficients at the origin. Requires the
    /// denominator not to vanish at 0.
    pub fn taylor(&self, count: usize) -> Result<Vec<Complex<T>>> {
        let d0 = self.den.coeff(0);
        if d0.norm() <= T::epsilon() * self.den.norm_inf() {
            return Err(Error::Precondition(
                "Taylor expansion at a pole at the origin".into(),
            ));
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); count];
        for k in 0..count {
            let mut acc = self.num.coeff(k);
            for i in 1..=k {
                acc -= self.den.coeff(i) * out[k - i];
            }
            out[k] = acc / d0;
        }
        Ok(out)
    }

    /// The polynomial truncation of the Taylor series at the origin.
    pub fn taylor_poly(&self, count: usize) -> Result<Poly<T>> {
        Ok(Poly::new(self.taylor(count)?))
    }

    /// Backward shift `f -> (f - f(0)) / z`, the adjoint-free realization of
    /// the symbol `z^{-1}` on functions analytic at the origin.
    pub fn backward_shift(&self, tol: &Tolerances<T>) -> Result<Self> {
        self.backward_shift_n(1, tol)
    }

    /// `n`-fold backward shift: drops the first `n` Taylor coefficients and
    /// divides by `z^n`.
    pub fn backward_shift_n(&self, n: usize, tol: &Tolerances<T>) -> Result<Self> {
        if n == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let head = self.taylor_poly(n)?;
        let head_prod = &head * &self.den;
        let scale = self.num.norm_inf().max(head_prod.norm_inf());
        let reduced = Poly::trimmed_with_floor(
            (&self.num - &head_prod).coeffs().to_vec(),
            tol.tau_coeff * scale,
        );
        let shifted = reduced.shifted_down(n, scale, tol)?;
        Self::over_factored_den(shifted, self.den.clone(), self.den_roots.clone(), tol)
    }
}

impl<T: Scalar> fmt::Display for RationalFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() || self.is_zero() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Normalize a quotient of polynomials into a reduced rational function.
pub fn normalize<T: Scalar>(num: Poly<T>, den: Poly<T>, tol: &Tolerances<T>) -> Result<RationalFn<T>> {
    RationalFn::new(num, den, tol)
}

/// One pole of a partial fraction decomposition, with the coefficients of
/// `1/(z-pole)^k` for `k = 1..=order` (so `coefficients[order-1]` is the top
/// coefficient, which is nonzero).
#[derive(Clone, Debug)]
pub struct PoleTerm<T: Scalar> {
    pub pole: Complex<T>,
    pub order: usize,
    pub coefficients: Vec<Complex<T>>,
}

/// A rational function written as polynomial part plus elementary fractions.
#[derive(Clone, Debug)]
pub struct PartialFractions<T: Scalar> {
    pub poly_part: Poly<T>,
    pub terms: Vec<PoleTerm<T>>,
}

impl<T: Scalar> PartialFractions<T> {
    /// No polynomial part and no terms.
    pub fn is_zero(&self) -> bool {
        self.poly_part.is_zero() && self.terms.is_empty()
    }

    fn empty() -> Self {
        PartialFractions {
            poly_part: Poly::zero(),
            terms: Vec::new(),
        }
    }

    /// Keep only terms whose pole satisfies the predicate; drops the
    /// polynomial part.
    fn filter_terms(&self, pred: impl Fn(Complex<T>) -> bool) -> Self {
        PartialFractions {
            poly_part: Poly::zero(),
            terms: self
                .terms
                .iter()
                .filter(|t| pred(t.pole))
                .cloned()
                .collect(),
        }
    }

    /// Recombine into a single rational function over the product of the
    /// pole factors.
    pub fn recombine(&self, tol: &Tolerances<T>) -> Result<RationalFn<T>> {
        let one = Complex::new(T::one(), T::zero());
        let den_roots: RootSet<T> = self
            .terms
            .iter()
            .map(|t| (t.pole, t.order))
            .collect();
        let den = from_roots(&den_roots, one);
        let mut num = &self.poly_part * &den;
        // Cancellation floor: trailing coefficients below the intermediate
        // magnitude are arithmetic noise, not genuine degree.
        let mut magnitude = num.norm_inf();
        for (i, t) in self.terms.iter().enumerate() {
            // Product of the other pole factors.
            let mut others: RootSet<T> = Vec::new();
            for (j, s) in self.terms.iter().enumerate() {
                if j != i {
                    others.push((s.pole, s.order));
                }
            }
            let base = from_roots(&others, one);
            for (k_idx, &c) in t.coefficients.iter().enumerate() {
                let k = k_idx + 1;
                if c.norm() == T::zero() {
                    continue;
                }
                let partial = from_roots(&[(t.pole, t.order - k)], one);
                let piece = (&base * &partial).scale(c);
                magnitude = magnitude.max(piece.norm_inf());
                num = &num + &piece;
            }
        }
        let num = Poly::trimmed_with_floor(num.coeffs().to_vec(), tol.tau_coeff * magnitude);
        RationalFn::over_factored_den(num, den, den_roots, tol)
    }

    /// Total number of poles counted with order.
    pub fn pole_mult(&self) -> usize {
        self.terms.iter().map(|t| t.order).sum()
    }
}

/// Partial fraction decomposition `f = poly_part + sum c_{a,k}/(z-a)^k`.
///
/// The polynomial part is the Euclidean quotient of `num` by `den`; the
/// coefficients at each pole come from the local Taylor expansion of the
/// strictly proper remainder.
pub fn partial_fractions<T: Scalar>(
    f: &RationalFn<T>,
    _tol: &Tolerances<T>,
) -> Result<PartialFractions<T>> {
    if f.is_zero() {
        return Ok(PartialFractions::empty());
    }
    let dr = f.num().divrem(f.den())?;
    let poly_part = dr.quotient;
    let rem = dr.remainder;
    let mut terms = Vec::new();
    if !rem.is_zero() {
        let one = Complex::new(T::one(), T::zero());
        for (i, &(pole, order)) in f.den_roots().iter().enumerate() {
            // q_a = den / (z - a)^order, expanded from the other clusters.
            let mut others: RootSet<T> = Vec::new();
            for (j, &(p, m)) in f.den_roots().iter().enumerate() {
                if j != i {
                    others.push((p, m));
                }
            }
            let q_a = from_roots(&others, one);
            let t_rem = rem.taylor_at(pole, order);
            let t_qa = q_a.taylor_at(pole, order);
            // Local series of rem/q_a around the pole.
            let mut u = vec![Complex::new(T::zero(), T::zero()); order];
            for k in 0..order {
                let mut acc = t_rem[k];
                for i2 in 1..=k {
                    acc -= t_qa[i2] * u[k - i2];
                }
                u[k] = acc / t_qa[0];
            }
            // c_{a, order - j} = u[j]
            let mut coefficients = vec![Complex::new(T::zero(), T::zero()); order];
            for (j, &uj) in u.iter().enumerate() {
                coefficients[order - 1 - j] = uj;
            }
            terms.push(PoleTerm {
                pole,
                order,
                coefficients,
            });
        }
    }
    Ok(PartialFractions { poly_part, terms })
}

/// The unique decomposition of a symbol into a strictly proper part with all
/// poles on the circle and a part with no poles on the circle.
#[derive(Clone, Debug)]
pub struct SymbolSplit<T: Scalar> {
    /// Strictly proper, all poles on the circle band.
    pub omega0: RationalFn<T>,
    /// No poles on the circle band (polynomial part included here).
    pub omega1: RationalFn<T>,
}

/// Split a symbol into its circle-pole part and its off-circle part.
pub fn split_circle_poles<T: Scalar>(
    f: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<SymbolSplit<T>> {
    let pf = partial_fractions(f, tol)?;
    let band = tol.circle_tol;
    let on = pf.filter_terms(|p| (p.norm() - T::one()).abs() <= band);
    let mut off = pf.filter_terms(|p| (p.norm() - T::one()).abs() > band);
    off.poly_part = pf.poly_part.clone();
    Ok(SymbolSplit {
        omega0: on.recombine(tol)?,
        omega1: off.recombine(tol)?,
    })
}

/// Result of the symbolic Riesz projection of a rational function.
#[derive(Clone, Debug)]
pub struct RieszProjection<T: Scalar> {
    /// Polynomial part plus outside-disc pole terms: analytic on the closed
    /// disc, survives the projection.
    pub analytic: RationalFn<T>,
    /// Strictly proper terms with poles inside the disc: annihilated.
    pub anti: PartialFractions<T>,
    /// Terms with poles on the circle: the strictly proper defect.
    pub defect: PartialFractions<T>,
}

/// Symbolic Riesz projection: split a rational function into its analytic
/// part, its annihilated anti-analytic part, and its circle-pole defect.
pub fn riesz_project<T: Scalar>(
    f: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RieszProjection<T>> {
    let pf = partial_fractions(f, tol)?;
    let band = tol.circle_tol;
    let anti = pf.filter_terms(|p| p.norm() < T::one() - band);
    let defect = pf.filter_terms(|p| (p.norm() - T::one()).abs() <= band);
    let mut outside = pf.filter_terms(|p| p.norm() > T::one() + band);
    outside.poly_part = pf.poly_part.clone();
    Ok(RieszProjection {
        analytic: outside.recombine(tol)?,
        anti,
        defect,
    })
}

/// The value of the Toeplitz-like operator on a rational argument.
#[derive(Clone, Debug)]
pub struct ToeplitzApplication<T: Scalar> {
    /// The operator value: analytic on the closed disc.
    pub result: RationalFn<T>,
    /// The strictly proper circle-pole defect subtracted by the definition.
    pub rho: PartialFractions<T>,
    /// The inside-disc part annihilated by the projection.
    pub dropped: PartialFractions<T>,
}

/// Apply the Toeplitz-like operator with symbol `omega` to `g`.
///
/// `g` must be analytic on the closed unit disc (its poles strictly outside
/// the circle band); that is the rational-function incarnation of membership
/// in the operator's domain. The product `omega * g` is normalized once, so
/// zero/pole cancellations happen before the projection.
pub fn apply_toeplitz<T: Scalar>(
    omega: &RationalFn<T>,
    g: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<ToeplitzApplication<T>> {
    if !g.is_analytic_on_closed_disc(tol.circle_tol) {
        return Err(Error::NotInDomain(
            "argument has a pole in the closed unit disc".into(),
        ));
    }
    let product = omega.mul(g, tol)?;
    let proj = riesz_project(&product, tol)?;
    Ok(ToeplitzApplication {
        result: proj.analytic,
        rho: proj.defect,
        dropped: proj.anti,
    })
}

/// Verify the shift-conjugation identity: applying the operator to `z*g` and
/// backward-shifting the result reproduces the operator value at `g`.
pub fn shift_conjugation_check<T: Scalar>(
    omega: &RationalFn<T>,
    g: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<bool> {
    let direct = apply_toeplitz(omega, g, tol)?.result;
    let zg = g.mul(&RationalFn::monomial(1), tol)?;
    let lifted = apply_toeplitz(omega, &zg, tol)?.result;
    let shifted = lifted.backward_shift(tol)?;
    Ok(shifted.approx_eq(&direct, tol))
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

    #[test]
    fn normalize_cancels_shared_root() {
        let f = rf(&[-1.0, 0.0, 1.0], &[-1.0, 1.0]);
        assert!(f.is_polynomial());
        assert!(f.num().approx_eq(&Poly::from_real(&[1.0, 1.0]), &tol()));
    }

    #[test]
    fn normalize_monic_rescale() {
        let f = rf(&[1.0], &[-2.0, 2.0]);
        assert!(f.den().approx_eq(&Poly::from_real(&[-1.0, 1.0]), &tol()));
        assert!(f.num().approx_eq(&Poly::from_real(&[0.5]), &tol()));
    }

    #[test]
    fn normalize_reduced_stays_put() {
        let f = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        assert!(f.num().approx_eq(&Poly::from_real(&[1.0, 1.0]), &tol()));
        assert!(f
            .den()
            .approx_eq(&Poly::from_real(&[1.0, -2.0, 1.0]), &tol()));
    }

    #[test]
    fn partial_fractions_double_pole() {
        // (z+1)/(z-1)^2 = 1/(z-1) + 2/(z-1)^2
        let f = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        let pf = partial_fractions(&f, &tol()).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 1);
        let t = &pf.terms[0];
        assert_eq!(t.order, 2);
        assert!((t.coefficients[0] - c(1.0, 0.0)).norm() < 1e-9);
        assert!((t.coefficients[1] - c(2.0, 0.0)).norm() < 1e-9);
        assert!(pf.recombine(&tol()).unwrap().approx_eq(&f, &tol()));
    }

    #[test]
    fn partial_fractions_with_poly_part() {
        // (z^2+1)/(z-1) = (z+1) + 2/(z-1)
        let f = rf(&[1.0, 0.0, 1.0], &[-1.0, 1.0]);
        let pf = partial_fractions(&f, &tol()).unwrap();
        assert!(pf.poly_part.approx_eq(&Poly::from_real(&[1.0, 1.0]), &tol()));
        assert_eq!(pf.terms.len(), 1);
        assert!((pf.terms[0].coefficients[0] - c(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn partial_fractions_elementary() {
        let f = rf(&[1.0], &[-1.0, 1.0]);
        let pf = partial_fractions(&f, &tol()).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 1);
        assert!((pf.terms[0].coefficients[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn split_two_poles() {
        // 1/((z-1)(z-2)) = -1/(z-1) + 1/(z-2)
        let f = rf(&[1.0], &[2.0, -3.0, 1.0]);
        let split = split_circle_poles(&f, &tol()).unwrap();
        let want0 = rf(&[-1.0], &[-1.0, 1.0]);
        let want1 = rf(&[1.0], &[-2.0, 1.0]);
        assert!(split.omega0.approx_eq(&want0, &tol()));
        assert!(split.omega1.approx_eq(&want1, &tol()));
    }

    #[test]
    fn split_pure_circle() {
        let f = rf(&[1.0], &[-1.0, 1.0]);
        let split = split_circle_poles(&f, &tol()).unwrap();
        assert!(split.omega0.approx_eq(&f, &tol()));
        assert!(split.omega1.is_zero());
    }

    #[test]
    fn split_no_circle_poles() {
        let f = rf(&[-0.5, 1.0], &[-2.0, 1.0]);
        let split = split_circle_poles(&f, &tol()).unwrap();
        assert!(split.omega0.is_zero());
        assert!(split.omega1.approx_eq(&f, &tol()));
    }

    #[test]
    fn riesz_inside_pole_dropped() {
        let f = rf(&[1.0], &[-0.5, 1.0]);
        let proj = riesz_project(&f, &tol()).unwrap();
        assert!(proj.analytic.is_zero());
        assert!(proj.defect.is_zero());
        assert_eq!(proj.anti.pole_mult(), 1);
    }

    #[test]
    fn riesz_outside_pole_kept() {
        let f = rf(&[1.0], &[-2.0, 1.0]);
        let proj = riesz_project(&f, &tol()).unwrap();
        assert!(proj.analytic.approx_eq(&f, &tol()));
        assert!(proj.anti.is_zero());
        assert!(proj.defect.is_zero());
    }

    #[test]
    fn riesz_mixed() {
        // (z^2+1)/(z-1): analytic part z+1, defect 2/(z-1)
        let f = rf(&[1.0, 0.0, 1.0], &[-1.0, 1.0]);
        let proj = riesz_project(&f, &tol()).unwrap();
        let want = RationalFn::from_poly(&Poly::from_real(&[1.0, 1.0]), &tol()).unwrap();
        assert!(proj.analytic.approx_eq(&want, &tol()));
        assert!(proj.anti.is_zero());
        assert_eq!(proj.defect.pole_mult(), 1);
        assert!((proj.defect.terms[0].coefficients[0] - c(2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn riesz_idempotent_on_analytic() {
        let f = rf(&[1.0, 2.0, 0.5], &[-2.0, 1.0]);
        let proj = riesz_project(&f, &tol()).unwrap();
        assert!(proj.analytic.approx_eq(&f, &tol()));
        let again = riesz_project(&proj.analytic, &tol()).unwrap();
        assert!(again.analytic.approx_eq(&f, &tol()));
        assert!(again.anti.is_zero() && again.defect.is_zero());
    }

    #[test]
    fn apply_geometric_sum() {
        // symbol 1/(z-1) on z^3 gives 1 + z + z^2
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        let g = RationalFn::monomial(3);
        let app = apply_toeplitz(&omega, &g, &tol()).unwrap();
        let want = RationalFn::from_poly(&Poly::from_real(&[1.0, 1.0, 1.0]), &tol()).unwrap();
        assert!(app.result.approx_eq(&want, &tol()));
        assert_eq!(app.rho.pole_mult(), 1);
    }

    #[test]
    fn apply_zero_argument() {
        let omega = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        let app = apply_toeplitz(&omega, &RationalFn::zero(), &tol()).unwrap();
        assert!(app.result.is_zero());
    }

    #[test]
    fn apply_double_pole_column() {
        // symbol (z+1)/(z-1)^2 on z^2 gives z + 3
        let omega = rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]);
        let g = RationalFn::monomial(2);
        let app = apply_toeplitz(&omega, &g, &tol()).unwrap();
        let want = RationalFn::from_poly(&Poly::from_real(&[3.0, 1.0]), &tol()).unwrap();
        assert!(app.result.approx_eq(&want, &tol()));
    }

    #[test]
    fn apply_with_pole_at_origin() {
        // (z-2)/z is a bounded symbol with its pole at the origin:
        // T z^n = z^n - 2 z^(n-1) for n >= 1, and T 1 = 1.
        let t = tol();
        let omega = rf(&[-2.0, 1.0], &[0.0, 1.0]);
        let at0 = apply_toeplitz(&omega, &RationalFn::one(), &t).unwrap();
        assert!(at0.result.approx_eq(&RationalFn::one(), &t));
        assert_eq!(at0.dropped.pole_mult(), 1);
        for n in 1..=4usize {
            let app = apply_toeplitz(&omega, &RationalFn::monomial(n), &t).unwrap();
            let mut want = vec![0.0; n + 1];
            want[n] = 1.0;
            want[n - 1] = -2.0;
            let want = RationalFn::from_poly(&Poly::from_real(&want), &t).unwrap();
            assert!(app.result.approx_eq(&want, &t), "n={n}");
        }
    }

    #[test]
    fn apply_rejects_inside_pole() {
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        let g = rf(&[1.0], &[-0.5, 1.0]);
        assert!(matches!(
            apply_toeplitz(&omega, &g, &tol()),
            Err(Error::NotInDomain(_))
        ));
    }

    #[test]
    fn apply_linearity() {
        let t = tol();
        let omega = rf(&[-0.3, 1.0], &[1.0, -2.0, 1.0]);
        let g1 = RationalFn::monomial(2);
        let g2 = rf(&[1.0, 1.0], &[-3.0, 1.0]);
        let a = c(2.0, 1.0);
        let b = c(-0.5, 0.25);
        let combo = g1.scale(a).add(&g2.scale(b), &t).unwrap();
        let lhs = apply_toeplitz(&omega, &combo, &t).unwrap().result;
        let rhs = apply_toeplitz(&omega, &g1, &t)
            .unwrap()
            .result
            .scale(a)
            .add(&apply_toeplitz(&omega, &g2, &t).unwrap().result.scale(b), &t)
            .unwrap();
        assert!(lhs.approx_eq(&rhs, &t));
    }

    #[test]
    fn shift_conjugation_examples() {
        let t = tol();
        let cases: Vec<(RationalFn<f64>, RationalFn<f64>)> = vec![
            (rf(&[1.0], &[-1.0, 1.0]), RationalFn::monomial(2)),
            (rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]), RationalFn::one()),
            (rf(&[-0.5, 1.0], &[-1.0, 1.0]), RationalFn::monomial(1)),
        ];
        for (omega, g) in cases {
            assert!(shift_conjugation_check(&omega, &g, &t).unwrap());
        }
    }

    #[test]
    fn backward_shift_drops_constant() {
        let f = rf(&[3.0, 2.0, 1.0], &[1.0]);
        let s = f.backward_shift(&tol()).unwrap();
        assert!(s
            .num()
            .approx_eq(&Poly::from_real(&[2.0, 1.0]), &tol()));
    }

    #[test]
    fn taylor_of_outside_pole() {
        // 1/(z-2) = -1/2 - z/4 - z^2/8 - ...
        let f = rf(&[1.0], &[-2.0, 1.0]);
        let t = f.taylor(4).unwrap();
        for (k, &v) in t.iter().enumerate() {
            let want = -(0.5_f64.powi(k as i32 + 1));
            assert!((v - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn domain_defect_is_strictly_proper_over_den() {
        // For a circle symbol and polynomial argument, the defect is r/q
        // with deg(r) < deg(q).
        let t = tol();
        let omega = rf(&[2.0, 3.0, 1.0], &[1.0, -2.0, 1.0]); // (z+1)(z+2)/(z-1)^2
        let g = RationalFn::monomial(5);
        let app = apply_toeplitz(&omega, &g, &t).unwrap();
        let rho = app.rho.recombine(&t).unwrap();
        assert!(rho.num().degree() < omega.den().degree());
        // omega * g = result + rho + dropped
        let total = app
            .result
            .add(&rho, &t)
            .unwrap()
            .add(&app.dropped.recombine(&t).unwrap(), &t)
            .unwrap();
        assert!(total.approx_eq(&omega.mul(&g, &t).unwrap(), &t));
    }
}
