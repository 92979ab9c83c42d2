//! Bivector exponentials and the conjugated basis `e_μ^B = exp(A/2) e_μ exp(−A/2)`.

use crate::blade::DIM;
use crate::engine::CliffordEngine;
use crate::error::{Error, Result};
use crate::form::{AntisymmetricForm, BilinearForm, SymmetricForm, UPPER_PAIRS};
use crate::multivector::Multivector;
use crate::scalar::{real, Real};

/// How to sum a power series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesControl {
    /// Stop once a term's largest coefficient drops below `cutoff`; fail after
    /// `max_terms`.
    Converge { cutoff: f64, max_terms: usize },
    /// Sum exactly the terms of degree `0..=n` (for the exact backend).
    Order(usize),
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl::Converge { cutoff: 1e-15, max_terms: 64 }
    }
}

/// `Σ_{μ<ν} A_{μν} e^μ ∧ e^ν` with `e^μ = g^{μν} e_ν`.
pub fn form_bivector<R: Real>(a: &AntisymmetricForm<R>, g: &SymmetricForm<R>) -> Result<Multivector<R>> {
    let inv = g.inverse()?;
    let up = |mu: usize| {
        let comps: [R; DIM] = core::array::from_fn(|nu| inv[mu][nu].clone());
        Multivector::vector(comps)
    };
    let mut out = Multivector::zero();
    for (m, n) in UPPER_PAIRS {
        let c = a.entry(m, n);
        if !c.is_zero() {
            out += &up(m).wedge(&up(n)).scale_real(&c);
        }
    }
    Ok(out)
}

/// `exp(x)` under the engine's product.
pub fn exp_series<R: Real>(
    x: &Multivector<R>,
    engine: &CliffordEngine<R>,
    control: SeriesControl,
) -> Result<Multivector<R>> {
    let mut sum = Multivector::one();
    let mut term = Multivector::one();
    let (cutoff, max_terms, fixed) = match control {
        SeriesControl::Converge { cutoff, max_terms } => (cutoff, max_terms, false),
        SeriesControl::Order(n) => (0.0, n, true),
    };
    for k in 1..=max_terms {
        term = engine.product(&term, x).scale(&real(R::ratio(1, k as i64)));
        if term.is_zero() {
            return Ok(sum);
        }
        sum += &term;
        if !fixed && term.max_abs_f64() < cutoff {
            return Ok(sum);
        }
    }
    if fixed {
        Ok(sum)
    } else {
        Err(Error::SeriesDiverged { terms: max_terms })
    }
}

/// The four generators conjugated by `exp(A/2)`, computed in `Cl(V, g)`.
/// Conjugation is an automorphism, so the images obey the same
/// anticommutation relations as the `e_μ`.
pub fn bivector_exp_conjugate_basis<R: Real>(
    a: &AntisymmetricForm<R>,
    g: &SymmetricForm<R>,
    control: SeriesControl,
) -> Result<[Multivector<R>; DIM]> {
    let engine = CliffordEngine::symmetric(g.clone());
    let half = form_bivector(a, g)?.scale_real(&R::half());
    let fwd = exp_series(&half, &engine, control)?;
    let back = exp_series(&-half, &engine, control)?;
    let mut out: [Multivector<R>; DIM] = Default::default();
    for (mu, slot) in out.iter_mut().enumerate() {
        let e = Multivector::basis(mu)?;
        *slot = engine.product_of(&[&fwd, &e, &back]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::minkowski;
    use crate::scalar::Exact;
    use num_traits::{One, Zero};

    fn small_a() -> AntisymmetricForm<f64> {
        AntisymmetricForm::from_upper([0.3, -0.2, 0.45, 0.1, -0.5, 0.25])
    }

    #[test]
    fn zero_form_gives_identity() {
        let basis = bivector_exp_conjugate_basis(&AntisymmetricForm::<Exact>::zero(), &minkowski(), SeriesControl::Order(6)).unwrap();
        for (mu, b) in basis.iter().enumerate() {
            assert_eq!(b, &Multivector::basis(mu).unwrap());
        }
    }

    #[test]
    fn conjugated_basis_is_clifford() {
        let g = minkowski::<f64>();
        let basis = bivector_exp_conjugate_basis(&small_a(), &g, SeriesControl::default()).unwrap();
        let eng = CliffordEngine::minkowski();
        for m in 0..4 {
            for n in 0..4 {
                let ac = eng.product(&basis[m], &basis[n]) + eng.product(&basis[n], &basis[m]);
                let expected = Multivector::scalar(real(2.0 * g.entry(m, n)));
                assert!((ac - expected).max_abs_f64() < 1e-9);
            }
        }
        assert!((&basis[0] - &Multivector::basis(0).unwrap()).max_abs_f64() > 1e-3);
    }

    #[test]
    fn inverse_pair() {
        let g = minkowski::<f64>();
        let eng = CliffordEngine::minkowski();
        let x = form_bivector(&small_a(), &g).unwrap().scale_real(&0.5);
        let p = eng.product(
            &exp_series(&x, &eng, SeriesControl::default()).unwrap(),
            &exp_series(&-x.clone(), &eng, SeriesControl::default()).unwrap(),
        );
        assert!((p - Multivector::one()).max_abs_f64() < 1e-12);
    }

    #[test]
    fn divergence_is_reported() {
        let eng = CliffordEngine::<f64>::minkowski();
        let big = Multivector::basis(0).unwrap().scale_real(&50.0);
        let r = exp_series(&big, &eng, SeriesControl::Converge { cutoff: 1e-15, max_terms: 10 });
        assert!(matches!(r, Err(Error::SeriesDiverged { terms: 10 })));
    }

    #[test]
    fn index_raising() {
        let a = AntisymmetricForm::<Exact>::from_upper([Exact::one(), Exact::zero(), Exact::zero(), Exact::zero(), Exact::zero(), Exact::zero()]);
        // e^0 = e_0, e^1 = −e_1
        let b = form_bivector(&a, &minkowski()).unwrap();
        let e01 = Multivector::<Exact>::basis(0).unwrap().wedge(&Multivector::basis(1).unwrap());
        assert_eq!(b, -e01);
    }
}
