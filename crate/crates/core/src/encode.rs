//! JSON encodings of the public types.
//!
//! Complex numbers serialize as `[re, im]` pairs. A polynomial is either a
//! coefficient list (`{"coeffs": [[re,im], ...]}`, ascending degree) or a
//! factored form (`{"roots": [[[re,im], mult], ...], "leading": [re,im]}`);
//! both forms are accepted anywhere a polynomial is an input. Factored
//! inputs bypass numeric root finding entirely, so classifications made from
//! them are exact.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fredholm::FredholmReport;
use crate::matrixrep::{GrowthCheck, SymbolCoefficients, TruncatedMatrix};
use crate::poly::Poly;
use crate::roots::ClassifiedRoots;
use crate::scalar::{real, Scalar};
use crate::symbol::{Factored, PartialFractions, RationalFn, ToeplitzApplication};
use crate::tol::Tolerances;

/// `[re, im]`.
pub type ComplexPair = [f64; 2];

fn to_pair<T: Scalar>(c: Complex<T>) -> ComplexPair {
    [
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    ]
}

fn from_pair<T: Scalar>(p: ComplexPair) -> Complex<T> {
    Complex::new(real(p[0]), real(p[1]))
}

/// Polynomial input/output: coefficient or factored form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyJson {
    Coeffs {
        coeffs: Vec<ComplexPair>,
    },
    Factored {
        roots: Vec<(ComplexPair, usize)>,
        leading: ComplexPair,
    },
}

impl PolyJson {
    /// Expand to coefficient form.
    pub fn to_poly<T: Scalar>(&self) -> Poly<T> {
        match self {
            PolyJson::Coeffs { coeffs } => {
                Poly::new(coeffs.iter().map(|&p| from_pair(p)).collect())
            }
            PolyJson::Factored { roots, leading } => {
                let rs: Vec<(Complex<T>, usize)> =
                    roots.iter().map(|&(p, m)| (from_pair(p), m)).collect();
                crate::poly::from_roots(&rs, from_pair(*leading))
            }
        }
    }

    /// Factored form: exact for factored input, via root finding otherwise.
    pub fn to_factored<T: Scalar>(&self, tol: &Tolerances<T>) -> Result<Factored<T>> {
        match self {
            PolyJson::Coeffs { .. } => Factored::of_poly(&self.to_poly(), tol),
            PolyJson::Factored { roots, leading } => Ok(Factored::new(
                roots.iter().map(|&(p, m)| (from_pair(p), m)).collect(),
                from_pair(*leading),
            )),
        }
    }

    pub fn from_poly<T: Scalar>(p: &Poly<T>) -> Self {
        PolyJson::Coeffs {
            coeffs: p.coeffs().iter().map(|&c| to_pair(c)).collect(),
        }
    }
}

/// Symbol input/output: a quotient of two polynomials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl SymbolJson {
    pub fn to_rational<T: Scalar>(&self, tol: &Tolerances<T>) -> Result<RationalFn<T>> {
        let num = self.num.to_factored(tol)?;
        let den = self.den.to_factored(tol)?;
        RationalFn::from_factored(num, den, tol)
    }

    pub fn from_rational<T: Scalar>(f: &RationalFn<T>) -> Self {
        SymbolJson {
            num: PolyJson::from_poly(f.num()),
            den: PolyJson::from_poly(f.den()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Precondition(format!("invalid symbol JSON: {e}")))
    }
}

/// Root census in JSON form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusJson {
    pub inside: Vec<(ComplexPair, usize)>,
    pub on_circle: Vec<(ComplexPair, usize)>,
    pub outside: Vec<(ComplexPair, usize)>,
    pub circle_tolerance: f64,
}

impl CensusJson {
    pub fn from_census<T: Scalar>(c: &ClassifiedRoots<T>) -> Self {
        let conv = |v: &[(Complex<T>, usize)]| -> Vec<(ComplexPair, usize)> {
            v.iter().map(|&(z, m)| (to_pair(z), m)).collect()
        };
        CensusJson {
            inside: conv(&c.inside),
            on_circle: conv(&c.on_circle),
            outside: conv(&c.outside),
            circle_tolerance: c.circle_tolerance.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Fredholm report in the wire schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub fredholm: bool,
    pub index: Option<i64>,
    pub dim_kernel: Option<usize>,
    pub codim_range: Option<usize>,
    pub invertible: bool,
    pub zeros: CensusJson,
    pub poles: CensusJson,
    pub kappa: i64,
}

impl ReportJson {
    pub fn from_report<T: Scalar>(r: &FredholmReport<T>) -> Self {
        ReportJson {
            fredholm: r.is_fredholm,
            index: r.index,
            dim_kernel: r.dim_kernel,
            codim_range: r.codim_range,
            invertible: r.invertible,
            zeros: CensusJson::from_census(&r.zero_census),
            poles: CensusJson::from_census(&r.pole_census),
            kappa: r.kappa,
        }
    }
}

/// Factorization output: four factors, the winding power and the
/// reconstruction residual at the sample points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub omega_minus: SymbolJson,
    pub kappa: i64,
    pub omega0: SymbolJson,
    pub omega_plus: SymbolJson,
    pub reconstruction_residual: f64,
}

/// Kernel basis output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelJson {
    pub dimension: usize,
    pub basis: Vec<SymbolJson>,
}

/// Partial fraction data in JSON form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartialFractionsJson {
    pub poly_part: Vec<ComplexPair>,
    pub terms: Vec<PoleTermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PoleTermJson {
    pub pole: ComplexPair,
    pub order: usize,
    pub coefficients: Vec<ComplexPair>,
}

impl PartialFractionsJson {
    pub fn from_partial_fractions<T: Scalar>(pf: &PartialFractions<T>) -> Self {
        PartialFractionsJson {
            poly_part: pf.poly_part.coeffs().iter().map(|&c| to_pair(c)).collect(),
            terms: pf
                .terms
                .iter()
                .map(|t| PoleTermJson {
                    pole: to_pair(t.pole),
                    order: t.order,
                    coefficients: t.coefficients.iter().map(|&c| to_pair(c)).collect(),
                })
                .collect(),
        }
    }
}

/// Operator application output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApplyJson {
    pub result: SymbolJson,
    pub rho: PartialFractionsJson,
    pub dropped: PartialFractionsJson,
}

impl ApplyJson {
    pub fn from_application<T: Scalar>(app: &ToeplitzApplication<T>) -> Self {
        ApplyJson {
            result: SymbolJson::from_rational(&app.result),
            rho: PartialFractionsJson::from_partial_fractions(&app.rho),
            dropped: PartialFractionsJson::from_partial_fractions(&app.dropped),
        }
    }
}

/// Matrix section output, with optional growth diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Vec<ComplexPair>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthJson>,
}

impl MatrixJson {
    pub fn from_matrix<T: Scalar>(m: &TruncatedMatrix<T>) -> Self {
        MatrixJson {
            size: m.size(),
            entries: m
                .rows()
                .iter()
                .map(|row| row.iter().map(|&c| to_pair(c)).collect())
                .collect(),
            growth: None,
        }
    }
}

/// Growth diagnostics output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthJson {
    pub window: usize,
    pub max_circle_pole_order: usize,
    pub bound_constant: f64,
    pub exponent_ok: bool,
    pub l2_tail: f64,
}

impl GrowthJson {
    pub fn from_growth<T: Scalar>(sc: &SymbolCoefficients<T>, g: &GrowthCheck<T>) -> Self {
        GrowthJson {
            window: sc.window(),
            max_circle_pole_order: sc.max_circle_pole_order(),
            bound_constant: g.bound_constant.to_f64().unwrap_or(f64::NAN),
            exponent_ok: g.exponent_ok,
            l2_tail: g.l2_tail.to_f64().unwrap_or(f64::NAN),
        }
    }
}
