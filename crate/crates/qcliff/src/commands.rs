//! The four subcommands. Each returns its report text and whether the run had
//! a hard failure (which maps to a nonzero exit code).

use qcliff_core::covariants::{compute_covariants_with, CovariantOperators};
use qcliff_core::quantum::{b_classify, duality, QuantumContext};
use qcliff_core::{classify, decompose, AntisymmetricForm, BilinearForm, ColumnSpinor, Error as CoreError, Exact, Real, Spacetime};
use serde::Serialize;

use crate::config::{ASource, Backend, Command, Format, RunConfig};
use crate::duality::{scan, ScanConfig};
use crate::error::{CliError, Result};
use crate::io::{parse_matrix, parse_spinors, read_text, BClassifyRecord, ClassifyRecord, DualityReport};
use crate::sampling::{random_a, rng_for};
use crate::suites::{all_suites, run as run_suite, SuiteOptions};

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub text: String,
    pub failed: bool,
}

pub fn execute(cfg: &RunConfig) -> Result<Output> {
    match (&cfg.command, cfg.backend) {
        (Command::Classify, Backend::Float) => cmd_classify::<f64>(cfg),
        (Command::Classify, Backend::Exact) => cmd_classify::<Exact>(cfg),
        (Command::Bclassify, Backend::Float) => cmd_bclassify::<f64>(cfg),
        (Command::Bclassify, Backend::Exact) => cmd_bclassify::<Exact>(cfg),
        (Command::Verify { suites }, _) => cmd_verify(cfg, suites),
        (Command::DualityTable, _) => cmd_duality_table(cfg),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn load_spinors<R: Real>(cfg: &RunConfig) -> Result<Vec<ColumnSpinor<R>>> {
    if cfg.inputs.is_empty() {
        return Err(CliError::Config("no --input given".into()));
    }
    let mut out = Vec::new();
    for path in &cfg.inputs {
        out.extend(parse_spinors(&read_text(path)?, &path.display().to_string())?);
    }
    Ok(out)
}

/// The deforming form selected by the configuration.
pub fn load_a<R: Real>(cfg: &RunConfig) -> Result<AntisymmetricForm<R>> {
    match &cfg.a_source {
        ASource::Zero => Ok(AntisymmetricForm::zero()),
        ASource::AFile(p) => Ok(AntisymmetricForm::new(parse_matrix(&read_text(p)?, &p.display().to_string())?)?),
        ASource::BFile(p) => {
            let form = decompose(&parse_matrix::<R>(&read_text(p)?, &p.display().to_string())?);
            for i in 0..4 {
                for j in 0..4 {
                    let eta = match (i == j, i) {
                        (false, _) => R::zero(),
                        (true, 0) => R::one(),
                        (true, _) => -R::one(),
                    };
                    if !R::negligible(&(form.g.entry(i, j) - eta), &R::one(), cfg.tol) {
                        return Err(CliError::Config(format!(
                            "{}: symmetric part of B must be diag(1, -1, -1, -1)",
                            p.display()
                        )));
                    }
                }
            }
            Ok(form.a)
        }
        ASource::Random { magnitude } => {
            let a = random_a(&mut rng_for(cfg.seed, u64::MAX), *magnitude);
            let upper = a.upper().map(|x| R::from_f64(x).expect("finite draw"));
            Ok(AntisymmetricForm::from_upper(upper))
        }
    }
}

fn cmd_classify<R: Real>(cfg: &RunConfig) -> Result<Output> {
    let spinors = load_spinors::<R>(cfg)?;
    let st = Spacetime::<R>::new();
    let ops = CovariantOperators::new(&st);
    let mut records = Vec::with_capacity(spinors.len());
    let mut failed = false;
    for (i, c) in spinors.iter().enumerate() {
        let cov = compute_covariants_with(&ops, c)?;
        let class = match classify(&cov, cfg.tol) {
            Ok(l) => Some(l.label()),
            Err(CoreError::Unclassifiable(_)) => {
                failed = true;
                None
            }
            Err(e) => return Err(e.into()),
        };
        records.push(ClassifyRecord::new(i, &cov, class, cfg.tol));
    }
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&records),
        Format::Csv => {
            let mut s = String::from("index,class,sigma,omega,J0,J1,J2,J3,S01,S02,S03,S12,S13,S23,K0,K1,K2,K3,fierz_max,marginal\n");
            for r in &records {
                let class = r.class.as_u64().map_or("unclassifiable".to_string(), |n| n.to_string());
                let nums: Vec<String> = [r.sigma, r.omega]
                    .iter()
                    .chain(&r.j)
                    .chain(&r.s)
                    .chain(&r.k)
                    .map(|x| format!("{x:e}"))
                    .collect();
                let fmax = r.fierz_residuals.iter().fold(0.0f64, |a, &b| a.max(b));
                s.push_str(&format!("{},{},{},{fmax:e},{}\n", r.index, class, nums.join(","), r.marginal));
            }
            s
        }
    };
    Ok(Output { text, failed })
}

#[derive(Serialize)]
struct BReport {
    /// `A_{01}, A_{02}, A_{03}, A_{12}, A_{13}, A_{23}`
    a: [f64; 6],
    tol: f64,
    records: Vec<BClassifyRecord>,
}

fn cmd_bclassify<R: Real>(cfg: &RunConfig) -> Result<Output> {
    let spinors = load_spinors::<R>(cfg)?;
    let a = load_a::<R>(cfg)?;
    let ctx = QuantumContext::new(a.clone());
    let ops = ctx.flat().matrix_operators();
    let mut records = Vec::with_capacity(spinors.len());
    let mut failed = false;
    for (i, c) in spinors.iter().enumerate() {
        let q = ctx.compute(c)?;
        let class = classify(&compute_covariants_with(ops, c)?, cfg.tol).ok().map(|l| l.label());
        let b_class = b_classify(&q, cfg.tol).ok().map(|l| l.label());
        let dual = match duality(&ctx, c, cfg.tol) {
            Ok(rec) => Some(DualityReport::from(&rec)),
            Err(CoreError::Inadmissible(rec)) => {
                failed = true;
                Some(DualityReport::from(&*rec))
            }
            Err(_) => None,
        };
        failed |= class.is_none() || b_class.is_none();
        records.push(BClassifyRecord::new(i, &q, class, b_class, dual));
    }
    let report = BReport { a: a.upper().map(|x| x.to_f64()), tol: cfg.tol, records };
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = String::from("index,class,b_class,admissible,marginal,sigma_B_re,sigma_B_im,omega_B_re,omega_B_im\n");
            for r in &report.records {
                let plain = |v: &serde_json::Value| v.as_str().map_or(v.to_string(), str::to_string);
                let (adm, marg) = r.duality.as_ref().map_or((false, false), |d| (d.admissible, d.marginal));
                s.push_str(&format!(
                    "{},{},{},{adm},{marg},{:e},{:e},{:e},{:e}\n",
                    r.index,
                    plain(&r.class),
                    plain(&r.b_class),
                    r.b_covariants.sigma[0],
                    r.b_covariants.sigma[1],
                    r.b_covariants.omega[0],
                    r.b_covariants.omega[1]
                ));
            }
            s
        }
    };
    Ok(Output { text, failed })
}

fn suite_options(cfg: &RunConfig) -> SuiteOptions {
    let magnitude = match cfg.a_source {
        ASource::Random { magnitude } => magnitude,
        _ => 1.0,
    };
    SuiteOptions { seed: cfg.seed, tol: cfg.tol, samples: cfg.samples, magnitude }
}

fn cmd_verify(cfg: &RunConfig, names: &[String]) -> Result<Output> {
    let opts = suite_options(cfg);
    let expanded: Vec<String> = if names.iter().any(|n| n == "all") {
        all_suites().into_iter().map(String::from).collect()
    } else {
        names.to_vec()
    };
    let reports = expanded.iter().map(|n| run_suite(n, &opts)).collect::<Result<Vec<_>>>()?;
    let failed = reports.iter().any(|r| !r.passed);
    let text = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut s = String::from("suite,property,passed,checked,informational\n");
            for r in &reports {
                for p in &r.properties {
                    s.push_str(&format!("{},\"{}\",{},{},{}\n", r.suite, p.name, p.passed, p.checked, p.informational));
                }
            }
            s
        }
    };
    Ok(Output { text, failed })
}

fn cmd_duality_table(cfg: &RunConfig) -> Result<Output> {
    if cfg.backend == Backend::Exact {
        return Err(CliError::Config("duality-table runs on the float backend only".into()));
    }
    let magnitude = match cfg.a_source {
        ASource::Random { magnitude } => magnitude,
        ASource::Zero => 1.0,
        _ => return Err(CliError::Config("duality-table draws A per sample; use --a-random".into())),
    };
    let summary = scan(&ScanConfig { samples: cfg.samples.unwrap_or(10_000), seed: cfg.seed, magnitude, tol: cfg.tol });
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => summary.to_csv(),
        Format::Json => to_json(&summary),
    };
    Ok(Output { text, failed: !summary.violations.is_empty() })
}
