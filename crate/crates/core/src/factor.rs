//! Wiener-Hopf-like factorization of a rational symbol.
//!
//! Every nonzero rational symbol splits as
//! `omega = omega_minus * z^kappa * omega0 * omega_plus` where
//!
//! * `omega_minus` has all zeros and poles inside the open disc and value 1
//!   at infinity,
//! * `omega0` carries exactly the circle zeros and poles (monic over monic),
//! * `omega_plus` has all zeros and poles outside the closed disc and
//!   absorbs the global multiplicative constant,
//! * `kappa` is the number of zeros minus the number of poles in the open
//!   disc, with multiplicities.
//!
//! The factors are built directly from the root censuses, never re-solved,
//! so the three-way split is a partition by construction. The operator
//! factorizes accordingly, with the middle factor applied through the
//! commutation identity when `kappa < 0` (a negative power of `z` is never
//! materialized as a rational function, since `1/z^k` has a pole inside the
//! disc and would corrupt the projection bookkeeping).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{real, Scalar};
use crate::symbol::{apply_toeplitz, Factored, RationalFn};
use crate::tol::Tolerances;

/// The factorization `omega = omega_minus * z^kappa * omega0 * omega_plus`.
#[derive(Clone, Debug)]
pub struct WHFactorization<T: Scalar> {
    /// Zeros and poles inside the open disc only; value 1 at infinity.
    pub omega_minus: RationalFn<T>,
    /// Zeros in the open disc minus poles in the open disc.
    pub kappa: i64,
    /// Monic-over-monic factor carrying all circle zeros and poles.
    pub omega0: RationalFn<T>,
    /// Zeros and poles outside the closed disc; carries the constant.
    pub omega_plus: RationalFn<T>,
}

/// Zeros of `omega` in the open disc minus poles of `omega` in the open
/// disc, multiplicities counted.
pub fn kappa_of<T: Scalar>(omega: &RationalFn<T>, tol: &Tolerances<T>) -> Result<i64> {
    if omega.is_zero() {
        return Err(Error::Precondition("kappa of the zero symbol".into()));
    }
    let zeros = omega.zero_census(tol.circle_tol);
    let poles = omega.pole_census(tol.circle_tol);
    Ok(zeros.inside_mult() as i64 - poles.inside_mult() as i64)
}

/// Factorize a nonzero rational symbol.
///
/// Normalization: the inside factors are monic, `omega_minus` is arranged to
/// have value 1 at infinity by dividing out `z^kappa`, the circle factor is
/// monic over monic, and the leftover constant rides on `omega_plus`. Under
/// this pinning the factorization is unique, so outputs are comparable
/// across runs.
pub fn factorize<T: Scalar>(
    omega: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<WHFactorization<T>> {
    if omega.is_zero() {
        return Err(Error::Precondition("cannot factorize the zero symbol".into()));
    }
    let zeros = omega.zero_census(tol.circle_tol);
    let poles = omega.pole_census(tol.circle_tol);
    let kappa = zeros.inside_mult() as i64 - poles.inside_mult() as i64;
    let one = Complex::new(T::one(), T::zero());
    let origin = Complex::new(T::zero(), T::zero());

    // omega_minus = s_minus / (z^kappa * q_minus); for negative kappa the
    // power moves to the numerator. Common origin factors cancel in the
    // constructor.
    let mut minus_num = zeros.inside.clone();
    let mut minus_den = poles.inside.clone();
    if kappa >= 0 {
        if kappa > 0 {
            minus_den.push((origin, kappa as usize));
        }
    } else {
        minus_num.push((origin, (-kappa) as usize));
    }
    let omega_minus = RationalFn::from_factored(
        Factored::new(minus_num, one),
        Factored::new(minus_den, one),
        tol,
    )?;

    let omega0 = RationalFn::from_factored(
        Factored::new(zeros.on_circle.clone(), one),
        Factored::new(poles.on_circle.clone(), one),
        tol,
    )?;

    let constant = omega.num().leading().expect("nonzero symbol");
    let omega_plus = RationalFn::from_factored(
        Factored::new(zeros.outside.clone(), constant),
        Factored::new(poles.outside.clone(), one),
        tol,
    )?;

    Ok(WHFactorization {
        omega_minus,
        kappa,
        omega0,
        omega_plus,
    })
}

impl<T: Scalar> WHFactorization<T> {
    /// Evaluate the product `omega_minus * z^kappa * omega0 * omega_plus`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let zk = if self.kappa >= 0 {
            z.powu(self.kappa as u32)
        } else {
            z.powu((-self.kappa) as u32).inv()
        };
        self.omega_minus.eval(z) * zk * self.omega0.eval(z) * self.omega_plus.eval(z)
    }

    /// Maximum relative reconstruction error over `n_points` deterministic
    /// sample points in the annuli `0.1 < ||z| - 1| < 0.5`, skipping points
    /// too close to zeros or poles.
    pub fn reconstruction_residual(&self, omega: &RationalFn<T>, n_points: usize) -> T {
        let golden = real::<T>(0.618_033_988_749_894_9);
        let mut worst = T::zero();
        let mut used = 0usize;
        let mut k = 0usize;
        while used < n_points && k < n_points * 4 {
            let kf = T::from_usize(k).unwrap();
            k += 1;
            let theta = T::TAU() * (kf * golden).fract();
            let band = (kf * golden * golden).fract();
            let radius = if k.is_multiple_of(2) {
                real::<T>(1.1) + real::<T>(0.4) * band
            } else {
                real::<T>(0.5) + real::<T>(0.4) * band
            };
            let z = Complex::from_polar(radius, theta);
            let den_val = omega.den().eval(z).norm();
            if den_val < real::<T>(1e-6) {
                continue;
            }
            let want = omega.eval(z);
            let got = self.eval(z);
            let err = (want - got).norm() / (T::one() + want.norm());
            worst = worst.max(err);
            used += 1;
        }
        worst
    }
}

/// Apply the factored operator composition: first the outside factor, then
/// the middle factor `z^kappa * omega0`, then the inside factor.
///
/// For `kappa >= 0` the middle symbol is the rational function
/// `z^kappa * omega0`; for `kappa < 0` it acts as `omega0` followed by
/// `|kappa|` backward shifts.
pub fn apply_factored<T: Scalar>(
    wh: &WHFactorization<T>,
    g: &RationalFn<T>,
    tol: &Tolerances<T>,
) -> Result<RationalFn<T>> {
    let t1 = apply_toeplitz(&wh.omega_plus, g, tol)?.result;
    let t2 = if wh.kappa >= 0 {
        let middle = RationalFn::monomial(wh.kappa as usize).mul(&wh.omega0, tol)?;
        apply_toeplitz(&middle, &t1, tol)?.result
    } else {
        let after = apply_toeplitz(&wh.omega0, &t1, tol)?.result;
        after.backward_shift_n((-wh.kappa) as usize, tol)?
    };
    Ok(apply_toeplitz(&wh.omega_minus, &t2, tol)?.result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn tol() -> Tolerances<f64> {
        Tolerances::standard()
    }

    fn rf(num: &[f64], den: &[f64]) -> RationalFn<f64> {
        RationalFn::new(Poly::from_real(num), Poly::from_real(den), &tol()).unwrap()
    }

    #[test]
    fn factor_mixed_symbol() {
        // (z-0.5)/(z-1): kappa 1, minus (z-0.5)/z, circle 1/(z-1), plus 1.
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        let wh = factorize(&omega, &tol()).unwrap();
        assert_eq!(wh.kappa, 1);
        assert!(wh.omega_minus.approx_eq(&rf(&[-0.5, 1.0], &[0.0, 1.0]), &tol()));
        assert!(wh.omega0.approx_eq(&rf(&[1.0], &[-1.0, 1.0]), &tol()));
        assert!(wh.omega_plus.approx_eq(&RationalFn::one(), &tol()));
        assert!(wh.reconstruction_residual(&omega, 64) < 1e-10);
    }

    #[test]
    fn factor_pure_circle() {
        let omega = rf(&[1.0], &[-1.0, 1.0]);
        let wh = factorize(&omega, &tol()).unwrap();
        assert_eq!(wh.kappa, 0);
        assert!(wh.omega_minus.approx_eq(&RationalFn::one(), &tol()));
        assert!(wh.omega0.approx_eq(&omega, &tol()));
        assert!(wh.omega_plus.approx_eq(&RationalFn::one(), &tol()));
    }

    #[test]
    fn factor_outside_zero() {
        let omega = rf(&[-2.0, 1.0], &[-1.0, 1.0]);
        let wh = factorize(&omega, &tol()).unwrap();
        assert_eq!(wh.kappa, 0);
        assert!(wh.omega_minus.approx_eq(&RationalFn::one(), &tol()));
        assert!(wh.omega0.approx_eq(&rf(&[1.0], &[-1.0, 1.0]), &tol()));
        assert!(wh
            .omega_plus
            .approx_eq(&rf(&[-2.0, 1.0], &[1.0]), &tol()));
        assert!(wh.reconstruction_residual(&omega, 64) < 1e-10);
    }

    #[test]
    fn kappa_examples() {
        let t = tol();
        assert_eq!(kappa_of(&rf(&[-0.5, 1.0], &[-1.0, 1.0]), &t).unwrap(), 1);
        assert_eq!(
            kappa_of(&rf(&[1.0, 1.0], &[1.0, -2.0, 1.0]), &t).unwrap(),
            0
        );
        // z^2/(z-0.5): two zeros at the origin, one pole inside.
        assert_eq!(
            kappa_of(&rf(&[0.0, 0.0, 1.0], &[-0.5, 1.0]), &t).unwrap(),
            1
        );
    }

    #[test]
    fn origin_cancellation_in_minus_factor() {
        let omega = rf(&[0.0, 0.0, 1.0], &[-0.5, 1.0]);
        let wh = factorize(&omega, &tol()).unwrap();
        assert_eq!(wh.kappa, 1);
        // s_minus/(z * q_minus) = z^2/(z (z-0.5)) = z/(z-0.5)
        assert!(wh.omega_minus.approx_eq(&rf(&[0.0, 1.0], &[-0.5, 1.0]), &tol()));
        assert!(wh.reconstruction_residual(&omega, 64) < 1e-10);
    }

    #[test]
    fn value_one_at_infinity() {
        let omega = rf(&[0.06, -0.5, 1.0], &[-1.5, 0.5, 1.0]);
        let wh = factorize(&omega, &tol()).unwrap();
        // num and den of omega_minus have equal degree and leading ratio 1.
        assert_eq!(
            wh.omega_minus.num().degree(),
            wh.omega_minus.den().degree()
        );
        let big = Complex::new(1e9_f64, 0.0);
        assert!((wh.omega_minus.eval(big) - Complex::new(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn uniqueness_up_to_constant() {
        let t = tol();
        let omega = rf(&[-0.5, 1.0], &[-1.0, 1.0]);
        let scaled = omega.scale(Complex::new(-2.5, 1.5));
        let a = factorize(&omega, &t).unwrap();
        let b = factorize(&scaled, &t).unwrap();
        assert_eq!(a.kappa, b.kappa);
        assert!(a.omega_minus.approx_eq(&b.omega_minus, &t));
        assert!(a.omega0.approx_eq(&b.omega0, &t));
        assert!(b
            .omega_plus
            .approx_eq(&a.omega_plus.scale(Complex::new(-2.5, 1.5)), &t));
    }

    #[test]
    fn operator_identity_on_monomials() {
        let t = tol();
        // Mixed symbol with inside pole (kappa < 0 path):
        // 1/((z-0.5)(z-1)) has kappa = -1.
        let omega = rf(&[1.0], &[0.5, -1.5, 1.0]);
        let wh = factorize(&omega, &t).unwrap();
        assert_eq!(wh.kappa, -1);
        for n in 0..=6 {
            let g = RationalFn::monomial(n);
            let direct = apply_toeplitz(&omega, &g, &t).unwrap().result;
            let composed = apply_factored(&wh, &g, &t).unwrap();
            assert!(
                composed.approx_eq(&direct, &t),
                "composition mismatch at n={n}: {} vs {}",
                composed,
                direct
            );
        }
    }

    #[test]
    fn zero_symbol_rejected() {
        assert!(matches!(
            factorize(&RationalFn::<f64>::zero(), &tol()),
            Err(Error::Precondition(_))
        ));
    }
}
