//! Seeded scan of (spinor, A) samples against the admissible class pairs.

use std::sync::Arc;

use qcliff_core::quantum::{duality, FlatPipeline, QuantumContext};
use qcliff_core::{AntisymmetricForm, Error as CoreError};
use rayon::prelude::*;
use serde::Serialize;

use crate::sampling::{random_a, random_representative, rng_for};
use crate::singular::find_singular_b;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanConfig {
    pub samples: u64,
    pub seed: u64,
    /// Scale of the random `A` (0 keeps `A = 0`).
    pub magnitude: f64,
    pub tol: f64,
}

/// How the spinor of a sample is produced. Samples cycle through the seven
/// kinds so every classical class (and the singular-B construction) is hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    Class(u8),
    /// Column solving `σ_B = ω_B = 0` for the sample's `A`.
    SingularB,
}

impl SampleKind {
    pub fn of_index(i: u64, a_is_zero: bool) -> Self {
        match i % 7 {
            6 if !a_is_zero => SampleKind::SingularB,
            6 => SampleKind::Class(1),
            k => SampleKind::Class(k as u8 + 1),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub index: u64,
    pub kind: SampleKind,
    pub classical: u8,
    pub quantum: u8,
    pub conditions: Vec<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularBOutcome {
    pub index: u64,
    pub classical: u8,
    pub quantum: u8,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub samples: u64,
    pub seed: u64,
    pub magnitude: f64,
    pub tol: f64,
    /// `counts[b - 1][c - 1]`: B-class `b` (rows) against classical class `c`.
    pub counts: [[u64; 6]; 6],
    pub marginal: u64,
    pub unclassifiable: u64,
    pub violations: Vec<Violation>,
    /// Singular-B constructions (classical and B labels of each).
    pub singular_b: Vec<SingularBOutcome>,
    /// Singular-B constructions where the solver did not converge.
    pub singular_b_failed: u64,
    /// Largest imaginary part seen among the B-covariants.
    pub max_imag: f64,
}

enum Outcome {
    Counted { classical: u8, quantum: u8, kind: SampleKind, max_imag: f64 },
    Marginal,
    Unclassifiable,
    Violation(Violation),
    SolverFailed,
}

fn run_sample(cfg: &ScanConfig, flat: &Arc<FlatPipeline<f64>>, i: u64) -> Outcome {
    let mut rng = rng_for(cfg.seed, i);
    let a = if cfg.magnitude == 0.0 { AntisymmetricForm::zero() } else { random_a(&mut rng, cfg.magnitude) };
    let ctx = QuantumContext::with_flat(a, flat.clone());
    let kind = SampleKind::of_index(i, ctx.a().is_zero());
    let psi = match kind {
        SampleKind::Class(label) => random_representative(&mut rng, flat.spacetime(), label),
        SampleKind::SingularB => match find_singular_b(&ctx, &mut rng, 8) {
            Some(c) => c,
            None => return Outcome::SolverFailed,
        },
    };
    match duality(&ctx, &psi, cfg.tol) {
        Ok(rec) if rec.marginal => Outcome::Marginal,
        Ok(rec) => Outcome::Counted {
            classical: rec.classical.label(),
            quantum: rec.quantum.label(),
            kind,
            max_imag: rec.max_imag,
        },
        Err(CoreError::Inadmissible(rec)) => Outcome::Violation(Violation {
            index: i,
            kind,
            classical: rec.classical.label(),
            quantum: rec.quantum.label(),
            conditions: rec.conditions.clone(),
        }),
        Err(_) => Outcome::Unclassifiable,
    }
}

/// Worker count from `QCLIFF_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("QCLIFF_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs `f` on a pool capped by `QCLIFF_THREADS` (or rayon's default).
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match thread_cap().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Per-sample results are collected in index order, so the summary does not
/// depend on scheduling.
pub fn scan(cfg: &ScanConfig) -> ScanSummary {
    let flat = Arc::new(FlatPipeline::new());
    let outcomes: Vec<Outcome> =
        with_pool(|| (0..cfg.samples).into_par_iter().map(|i| run_sample(cfg, &flat, i)).collect());
    let mut s = ScanSummary { samples: cfg.samples, seed: cfg.seed, magnitude: cfg.magnitude, tol: cfg.tol, ..Default::default() };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Counted { classical, quantum, kind, max_imag } => {
                s.counts[quantum as usize - 1][classical as usize - 1] += 1;
                s.max_imag = s.max_imag.max(max_imag);
                if kind == SampleKind::SingularB {
                    s.singular_b.push(SingularBOutcome { index: i as u64, classical, quantum });
                }
            }
            Outcome::Marginal => s.marginal += 1,
            Outcome::Unclassifiable => s.unclassifiable += 1,
            Outcome::Violation(v) => s.violations.push(v),
            Outcome::SolverFailed => s.singular_b_failed += 1,
        }
    }
    s
}

impl ScanSummary {
    /// Counts as CSV: one row per B-class, one column per classical class.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("b_class,1,2,3,4,5,6\n");
        for (b, row) in self.counts.iter().enumerate() {
            out.push_str(&format!("{}_B", b + 1));
            for n in row {
                out.push_str(&format!(",{n}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn off_diagonal(&self) -> u64 {
        let mut n = 0;
        for (b, row) in self.counts.iter().enumerate() {
            for (c, &k) in row.iter().enumerate() {
                if b != c {
                    n += k;
                }
            }
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_magnitude_is_diagonal() {
        let s = scan(&ScanConfig { samples: 70, seed: 1, magnitude: 0.0, tol: 1e-9 });
        assert_eq!(s.off_diagonal(), 0);
        assert!(s.violations.is_empty());
        assert_eq!(s.counts.iter().flatten().sum::<u64>() + s.marginal, 70);
    }

    #[test]
    fn deterministic() {
        let cfg = ScanConfig { samples: 28, seed: 5, magnitude: 1.0, tol: 1e-9 };
        assert_eq!(scan(&cfg).to_csv(), scan(&cfg).to_csv());
    }
}
