//! JSON input and output formats.
//!
//! Spinor files hold `{"components": [[re, im], ×4]}`, an array of such
//! objects, or `{"spinors": [...]}`. Matrix files hold a 4×4 array of arrays.
//! Numbers may be JSON numbers or strings (`"3/7"`, `"-0.25"`); strings are
//! read exactly on the exact backend.

use std::path::Path;

use num_complex::Complex;
use qcliff_core::form::Matrix4;
use qcliff_core::quantum::{DualityRecord, QuantumCovariants};
use qcliff_core::covariants::{fierz_residuals, ComplexCovariants, Covariants, FierzResiduals};
use qcliff_core::{ColumnSpinor, Exact, Real};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

impl Number {
    /// Converts on the backend `R`. On the exact backend, JSON floats keep
    /// their binary value and strings are parsed as decimals or fractions.
    pub fn to_real<R: Real>(&self) -> Result<R> {
        match self {
            Number::Float(x) => R::from_f64(*x).ok_or_else(|| CliError::Number(x.to_string())),
            Number::Text(s) => parse_real(s),
        }
    }
}

fn parse_real<R: Real>(s: &str) -> Result<R> {
    let bad = || CliError::Number(s.to_string());
    let t = s.trim();
    if !R::EXACT {
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            return R::from_f64(n / d).ok_or_else(bad);
        }
        return R::from_f64(t.parse().map_err(|_| bad())?).ok_or_else(bad);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    let (sign, digits) = match num.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, num.strip_prefix('+').unwrap_or(num)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mantissa: i64 = if all.is_empty() { 0 } else { all.parse().map_err(|_| bad())? };
    let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let q = R::ratio(sign * mantissa, scale);
    Ok(q * R::ratio(1, den))
}

#[derive(Clone, Debug, Deserialize)]
pub struct SpinorJson {
    pub components: [[Number; 2]; 4],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum SpinorFile {
    Wrapped { spinors: Vec<SpinorJson> },
    Many(Vec<SpinorJson>),
    One(SpinorJson),
}

impl SpinorJson {
    pub fn to_column<R: Real>(&self) -> Result<ColumnSpinor<R>> {
        let mut out: Vec<Complex<R>> = Vec::with_capacity(4);
        for [re, im] in &self.components {
            out.push(Complex::new(re.to_real()?, im.to_real()?));
        }
        let arr: [Complex<R>; 4] = out.try_into().map_err(|_| CliError::Config("four components expected".into()))?;
        Ok(ColumnSpinor::new(arr))
    }
}

pub fn parse_spinors<R: Real>(text: &str, context: &str) -> Result<Vec<ColumnSpinor<R>>> {
    let file: SpinorFile = serde_json::from_str(text).map_err(|e| CliError::json(context, e))?;
    let list = match file {
        SpinorFile::Wrapped { spinors } | SpinorFile::Many(spinors) => spinors,
        SpinorFile::One(s) => vec![s],
    };
    list.iter().map(SpinorJson::to_column).collect()
}

pub fn parse_matrix<R: Real>(text: &str, context: &str) -> Result<Matrix4<R>> {
    let rows: [[Number; 4]; 4] = serde_json::from_str(text).map_err(|e| CliError::json(context, e))?;
    let mut m: Matrix4<R> = std::array::from_fn(|_| std::array::from_fn(|_| R::zero()));
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            m[i][j] = x.to_real()?;
        }
    }
    Ok(m)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Per-spinor classification report.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyRecord {
    pub index: usize,
    pub sigma: f64,
    #[serde(rename = "J")]
    pub j: [f64; 4],
    #[serde(rename = "S")]
    pub s: [f64; 6],
    #[serde(rename = "K")]
    pub k: [f64; 4],
    pub omega: f64,
    /// Class label, or `"unclassifiable"`.
    pub class: Value,
    pub fierz_residuals: [f64; 4],
    pub marginal: bool,
}

impl ClassifyRecord {
    pub fn new<R: Real>(index: usize, c: &Covariants<R>, class: Option<u8>, tol: f64) -> Self {
        let f = c.to_f64();
        let res: FierzResiduals = fierz_residuals(c);
        ClassifyRecord {
            index,
            sigma: f.sigma,
            j: f.j,
            s: f.s,
            k: f.k,
            omega: f.omega,
            class: class.map_or(Value::from("unclassifiable"), Value::from),
            fierz_residuals: res.as_array(),
            marginal: c.to_complex().is_marginal(tol),
        }
    }
}

/// Complex covariants as `[re, im]` pairs.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub sigma: [f64; 2],
    #[serde(rename = "J")]
    pub j: [[f64; 2]; 4],
    #[serde(rename = "S")]
    pub s: [[f64; 2]; 6],
    #[serde(rename = "K")]
    pub k: [[f64; 2]; 4],
    pub omega: [f64; 2],
}

fn pair<R: Real>(z: &Complex<R>) -> [f64; 2] {
    [z.re.to_f64(), z.im.to_f64()]
}

impl<R: Real> From<&ComplexCovariants<R>> for ComplexReport {
    fn from(c: &ComplexCovariants<R>) -> Self {
        ComplexReport {
            sigma: pair(&c.sigma),
            j: std::array::from_fn(|m| pair(&c.j[m])),
            s: std::array::from_fn(|m| pair(&c.s[m])),
            k: std::array::from_fn(|m| pair(&c.k[m])),
            omega: pair(&c.omega),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub admissible: bool,
    pub marginal: bool,
    pub conditions: Vec<&'static str>,
    pub sigma_a: [f64; 2],
    pub omega_a: [f64; 2],
}

impl From<&DualityRecord> for DualityReport {
    fn from(r: &DualityRecord) -> Self {
        DualityReport {
            admissible: r.admissible,
            marginal: r.marginal,
            conditions: r.conditions.clone(),
            sigma_a: [r.sigma_a.0, r.sigma_a.1],
            omega_a: [r.omega_a.0, r.omega_a.1],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BClassifyRecord {
    pub index: usize,
    pub class: Value,
    pub b_class: Value,
    pub b_covariants: ComplexReport,
    pub classical_part: ComplexReport,
    pub a_part: ComplexReport,
    /// Largest imaginary part of the B-covariants.
    pub max_imag: f64,
    pub duality: Option<DualityReport>,
}

impl BClassifyRecord {
    pub fn new<R: Real>(
        index: usize,
        q: &QuantumCovariants<R>,
        class: Option<u8>,
        b_class: Option<u8>,
        duality: Option<DualityReport>,
    ) -> Self {
        let label = |c: Option<u8>, suffix: &str| {
            c.map_or(Value::from("unclassifiable"), |n| Value::from(format!("{n}{suffix}")))
        };
        BClassifyRecord {
            index,
            class: label(class, ""),
            b_class: label(b_class, "_B"),
            b_covariants: (&q.total).into(),
            classical_part: (&q.classical).into(),
            a_part: (&q.a_part).into(),
            max_imag: q.max_imag(),
            duality,
        }
    }
}

/// Exact rationals used by tests and by `--backend exact` inputs.
pub fn exact(s: &str) -> Result<Exact> {
    parse_real(s)
}
