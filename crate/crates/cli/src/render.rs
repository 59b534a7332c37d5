//! Text and CSV renderings of the analysis results.

use std::fmt::Write;

use toeplitz_core::encode::GrowthJson;
use toeplitz_core::factor::WHFactorization;
use toeplitz_core::fredholm::FredholmReport;
use toeplitz_core::matrixrep::TruncatedMatrix;
use toeplitz_core::roots::ClassifiedRoots;
use toeplitz_core::symbol::{RationalFn, ToeplitzApplication};

use crate::fmt_complex;

fn census_line(out: &mut String, label: &str, census: &ClassifiedRoots<f64>) {
    let fmt_side = |v: &[(toeplitz_core::C64, usize)]| -> String {
        if v.is_empty() {
            "-".to_string()
        } else {
            v.iter()
                .map(|(z, m)| format!("{}(x{m})", fmt_complex(z.re, z.im)))
                .collect::<Vec<_>>()
                .join(", ")
        }
    };
    let _ = writeln!(
        out,
        "{label}: inside [{}], on circle [{}], outside [{}]",
        fmt_side(&census.inside),
        fmt_side(&census.on_circle),
        fmt_side(&census.outside)
    );
}

pub fn report_text(report: &FredholmReport<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fredholm: {}", report.is_fredholm);
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    let optu = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    let _ = writeln!(out, "index: {}", opt(report.index));
    let _ = writeln!(out, "dim kernel: {}", optu(report.dim_kernel));
    let _ = writeln!(out, "codim range: {}", optu(report.codim_range));
    let _ = writeln!(out, "invertible: {}", report.invertible);
    let _ = writeln!(out, "kappa: {}", report.kappa);
    census_line(&mut out, "zeros", &report.zero_census);
    census_line(&mut out, "poles", &report.pole_census);
    out
}

pub fn factor_text(wh: &WHFactorization<f64>, residual: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "omega_minus: {}", wh.omega_minus);
    let _ = writeln!(out, "kappa: {}", wh.kappa);
    let _ = writeln!(out, "omega0: {}", wh.omega0);
    let _ = writeln!(out, "omega_plus: {}", wh.omega_plus);
    let _ = writeln!(out, "reconstruction residual: {residual:e}");
    out
}

pub fn kernel_text(basis: &[RationalFn<f64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dimension: {}", basis.len());
    for (i, g) in basis.iter().enumerate() {
        let _ = writeln!(out, "basis[{i}]: {g}");
    }
    out
}

fn growth_text(g: &GrowthJson) -> String {
    format!(
        "growth: window {}, max circle pole order {}, bound constant {:e}, exponent ok {}, l2 tail {}\n",
        g.window, g.max_circle_pole_order, g.bound_constant, g.exponent_ok, g.l2_tail
    )
}

pub fn matrix_text(m: &TruncatedMatrix<f64>, growth: Option<&GrowthJson>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line = row
            .iter()
            .map(|z| fmt_complex(z.re, z.im))
            .collect::<Vec<_>>()
            .join("\t");
        let _ = writeln!(out, "{line}");
    }
    if let Some(g) = growth {
        out.push_str(&growth_text(g));
    }
    out
}

pub fn matrix_csv(m: &TruncatedMatrix<f64>, growth: Option<&GrowthJson>) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line = row
            .iter()
            .map(|z| fmt_complex(z.re, z.im))
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(out, "{line}");
    }
    if let Some(g) = growth {
        let _ = writeln!(
            out,
            "growth,window={},max_order={},bound={:e},exponent_ok={},l2_tail={}",
            g.window, g.max_circle_pole_order, g.bound_constant, g.exponent_ok, g.l2_tail
        );
    }
    out
}

pub fn apply_text(app: &ToeplitzApplication<f64>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "result: {}", app.result);
    let _ = writeln!(
        out,
        "defect poles: {}",
        app.rho
            .terms
            .iter()
            .map(|t| format!("{}(x{})", fmt_complex(t.pole.re, t.pole.im), t.order))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "dropped poles: {}",
        app.dropped
            .terms
            .iter()
            .map(|t| format!("{}(x{})", fmt_complex(t.pole.re, t.pole.im), t.order))
            .collect::<Vec<_>>()
            .join(", ")
    );
    out
}
