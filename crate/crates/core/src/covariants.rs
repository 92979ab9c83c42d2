//! Bilinear covariants, Fierz identities, aggregates and the Lounesto classes.
//!
//! Index conventions: `J_μ`, `K_μ`, `S_{μν}` carry lower indices. As
//! multivectors they are expanded on the reciprocal basis `θ^μ = η^{μμ} e_μ`,
//! and the bivector of `S` is `Σ_{μ<ν} 2 S_{μν} θ^μ ∧ θ^ν` (the full double
//! sum over both orderings). With these conventions
//! `Z = σ + J + ιS + ιKγ0123 + ωγ0123` equals `4ψψ̄` in the Dirac representation.

use core::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::UPPER_PAIRS;
use crate::matrix::{sandwich, CMat4};
use crate::multivector::Multivector;
use crate::scalar::{cmag, imag_unit, int, real, Real};
use crate::spinor::{ColumnSpinor, Spacetime};

/// Covariants with possibly complex values (the deformed covariants are
/// complex in general).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexCovariants<R: Real> {
    pub sigma: Complex<R>,
    pub j: [Complex<R>; 4],
    /// `S_{μν}` for `μ < ν`, in the order `01, 02, 03, 12, 13, 23`.
    pub s: [Complex<R>; 6],
    pub k: [Complex<R>; 4],
    pub omega: Complex<R>,
}

/// The five real bilinear covariants `(σ, J, S, K, ω)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Covariants<R: Real> {
    pub sigma: R,
    pub j: [R; 4],
    pub s: [R; 6],
    pub k: [R; 4],
    pub omega: R,
}

impl<R: Real> ComplexCovariants<R> {
    pub fn zero() -> Self {
        ComplexCovariants {
            sigma: Complex::zero(),
            j: core::array::from_fn(|_| Complex::zero()),
            s: core::array::from_fn(|_| Complex::zero()),
            k: core::array::from_fn(|_| Complex::zero()),
            omega: Complex::zero(),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = &Complex<R>> {
        core::iter::once(&self.sigma)
            .chain(self.j.iter())
            .chain(self.s.iter())
            .chain(self.k.iter())
            .chain(core::iter::once(&self.omega))
    }

    /// Largest imaginary part over all components.
    pub fn max_imag(&self) -> f64 {
        self.values().map(|c| c.im.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn real_part(&self) -> Covariants<R> {
        Covariants {
            sigma: self.sigma.re.clone(),
            j: core::array::from_fn(|i| self.j[i].re.clone()),
            s: core::array::from_fn(|i| self.s[i].re.clone()),
            k: core::array::from_fn(|i| self.k[i].re.clone()),
            omega: self.omega.re.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexCovariants {
            sigma: self.sigma.clone() - o.sigma.clone(),
            j: core::array::from_fn(|i| self.j[i].clone() - o.j[i].clone()),
            s: core::array::from_fn(|i| self.s[i].clone() - o.s[i].clone()),
            k: core::array::from_fn(|i| self.k[i].clone() - o.k[i].clone()),
            omega: self.omega.clone() - o.omega.clone(),
        }
    }

    /// `max(1, max_i |c_i|)` with `|·| = max(|re|, |im|)`.
    pub fn scale(&self) -> R {
        self.values().map(cmag).fold(R::one(), R::max_of)
    }

    pub fn zero_pattern(&self, tol: f64) -> ZeroPattern {
        let scale = self.scale();
        let z = |c: &Complex<R>| R::negligible(&cmag(c), &scale, tol);
        ZeroPattern {
            sigma: z(&self.sigma),
            omega: z(&self.omega),
            j: self.j.iter().all(z),
            s: self.s.iter().all(z),
            k: self.k.iter().all(z),
        }
    }

    /// Whether any component lies in the band `(tol·scale/10, 10·tol·scale]`
    /// around the zero threshold. Exact zeros are never marginal, and nothing
    /// is marginal on the exact backend.
    pub fn is_marginal(&self, tol: f64) -> bool {
        if R::EXACT {
            return false;
        }
        let scale = self.scale().to_f64().max(1.0);
        self.values().any(|c| {
            let m = cmag(c).to_f64();
            m > tol * scale / 10.0 && m <= 10.0 * tol * scale
        })
    }

    pub fn from_real(c: &Covariants<R>) -> Self {
        ComplexCovariants {
            sigma: real(c.sigma.clone()),
            j: core::array::from_fn(|i| real(c.j[i].clone())),
            s: core::array::from_fn(|i| real(c.s[i].clone())),
            k: core::array::from_fn(|i| real(c.k[i].clone())),
            omega: real(c.omega.clone()),
        }
    }
}

impl<R: Real> Covariants<R> {
    pub fn zero() -> Self {
        ComplexCovariants::zero().real_part()
    }

    pub fn values(&self) -> impl Iterator<Item = &R> {
        core::iter::once(&self.sigma)
            .chain(self.j.iter())
            .chain(self.s.iter())
            .chain(self.k.iter())
            .chain(core::iter::once(&self.omega))
    }

    pub fn scale(&self) -> R {
        self.values().map(|x| x.abs()).fold(R::one(), R::max_of)
    }

    pub fn to_complex(&self) -> ComplexCovariants<R> {
        ComplexCovariants::from_real(self)
    }

    pub fn to_f64(&self) -> Covariants<f64> {
        Covariants {
            sigma: self.sigma.to_f64(),
            j: core::array::from_fn(|i| self.j[i].to_f64()),
            s: core::array::from_fn(|i| self.s[i].to_f64()),
            k: core::array::from_fn(|i| self.k[i].to_f64()),
            omega: self.omega.to_f64(),
        }
    }
}

/// Which covariants vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroPattern {
    pub sigma: bool,
    pub omega: bool,
    pub j: bool,
    pub s: bool,
    pub k: bool,
}

impl ZeroPattern {
    /// Label 1–6 from the zero pattern.
    pub fn label(&self) -> Result<u8> {
        if self.j {
            return Err(Error::Unclassifiable("current J vanishes (zero spinor)"));
        }
        let regular = match (self.sigma, self.omega) {
            (false, false) => Some(1),
            (false, true) => Some(2),
            (true, false) => Some(3),
            (true, true) => None,
        };
        if let Some(l) = regular {
            if self.s || self.k {
                return Err(Error::Unclassifiable("regular pattern with vanishing S or K"));
            }
            return Ok(l);
        }
        match (self.s, self.k) {
            (false, false) => Ok(4),
            (false, true) => Ok(5),
            (true, false) => Ok(6),
            (true, true) => Err(Error::Unclassifiable("singular pattern with S = K = 0")),
        }
    }
}

/// One of the six disjoint spinor classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LounestoClass(u8);

impl LounestoClass {
    pub fn new(label: u8) -> Option<Self> {
        (1..=6).contains(&label).then_some(LounestoClass(label))
    }

    pub fn label(self) -> u8 {
        self.0
    }

    /// Classes 1–3 (σ or ω nonzero).
    pub fn is_regular(self) -> bool {
        self.0 <= 3
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            1..=3 => "Dirac",
            4 => "flag-dipole",
            5 => "flagpole",
            _ => "dipole",
        }
    }
}

impl fmt::Display for LounestoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_finite<R: Real>(psi: &ColumnSpinor<R>) -> Result<()> {
    let ok = psi
        .components
        .iter()
        .all(|c| c.re.to_f64().is_finite() && c.im.to_f64().is_finite());
    if ok {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// The sixteen sandwich matrices `γ0 Γ` for `Γ ∈ {1, γ_μ, ½ιγ_μγ_ν, ιγ0123γ_μ, −γ0123}`.
#[derive(Clone, Debug)]
pub struct CovariantOperators<R: Real> {
    sigma: CMat4<R>,
    j: [CMat4<R>; 4],
    s: [CMat4<R>; 6],
    k: [CMat4<R>; 4],
    omega: CMat4<R>,
}

impl<R: Real> CovariantOperators<R> {
    pub fn new(st: &Spacetime<R>) -> Self {
        let g0 = st.gamma(0).clone();
        let i = imag_unit::<R>();
        let g5 = st.dirac_blade(Blade::PSEUDOSCALAR).clone();
        let pre = |m: &CMat4<R>| &g0 * m;
        CovariantOperators {
            sigma: g0.clone(),
            j: core::array::from_fn(|m| pre(st.gamma(m))),
            s: core::array::from_fn(|p| {
                let (m, n) = UPPER_PAIRS[p];
                pre(&(st.gamma(m) * st.gamma(n)).scale(&(i.clone() * real(R::half()))))
            }),
            k: core::array::from_fn(|m| pre(&(&g5 * st.gamma(m)).scale(&i))),
            omega: pre(&g5.scale(&int(-1))),
        }
    }

    pub fn evaluate(&self, psi: &[Complex<R>; 4]) -> ComplexCovariants<R> {
        let ev = |m: &CMat4<R>| sandwich(psi, m, psi);
        ComplexCovariants {
            sigma: ev(&self.sigma),
            j: core::array::from_fn(|m| ev(&self.j[m])),
            s: core::array::from_fn(|m| ev(&self.s[m])),
            k: core::array::from_fn(|m| ev(&self.k[m])),
            omega: ev(&self.omega),
        }
    }
}

/// Covariants of a column spinor in the Dirac representation.
pub fn compute_covariants<R: Real>(psi: &ColumnSpinor<R>) -> Result<Covariants<R>> {
    let st = Spacetime::new();
    compute_covariants_with(&CovariantOperators::new(&st), psi)
}

pub fn compute_covariants_with<R: Real>(ops: &CovariantOperators<R>, psi: &ColumnSpinor<R>) -> Result<Covariants<R>> {
    check_finite(psi)?;
    Ok(ops.evaluate(&psi.components).real_part())
}

fn minkowski_dot<R: Real>(a: &[R; 4], b: &[R; 4]) -> R {
    a[0].clone() * b[0].clone() - a[1].clone() * b[1].clone() - a[2].clone() * b[2].clone()
        - a[3].clone() * b[3].clone()
}

/// `Σ v_μ θ^μ`
pub fn covector<R: Real>(v: &[Complex<R>; 4]) -> Multivector<R> {
    Multivector::from_terms((0..4).map(|m| {
        let c = if m == 0 { v[m].clone() } else { -v[m].clone() };
        (Blade::from_mask(1 << m), c)
    }))
}

/// `Σ_{μ<ν} 2 S_{μν} θ^μ ∧ θ^ν`
pub fn bivector<R: Real>(s: &[Complex<R>; 6]) -> Multivector<R> {
    Multivector::from_terms(UPPER_PAIRS.iter().zip(s).map(|(&(m, n), c)| {
        // η^{mm} η^{nn} is −1 exactly when one index is 0
        let c = c.clone() * int(2);
        (Blade::from_mask((1 << m) | (1 << n)), if m == 0 { -c } else { c })
    }))
}

/// Residuals of the four Fierz identities.
#[derive(Clone, Debug, PartialEq)]
pub struct FierzResiduals {
    /// `‖(ω + σγ0123) S − K ∧ J‖`
    pub product: f64,
    /// `|J² − (σ² + ω²)|`
    pub j_norm: f64,
    /// `|J² + K²|`
    pub k_norm: f64,
    /// `|K·J|`
    pub orthogonality: f64,
    /// `max(1, ‖c‖∞)²`, the natural scale of the identities.
    pub scale: f64,
}

impl FierzResiduals {
    pub fn max(&self) -> f64 {
        self.product.max(self.j_norm).max(self.k_norm).max(self.orthogonality)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.product, self.j_norm, self.k_norm, self.orthogonality]
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol * self.scale
    }
}

pub fn fierz_residuals<R: Real>(c: &Covariants<R>) -> FierzResiduals {
    let st = Spacetime::<R>::new();
    fierz_residuals_with(&st, c)
}

pub fn fierz_residuals_with<R: Real>(st: &Spacetime<R>, c: &Covariants<R>) -> FierzResiduals {
    let cc = c.to_complex();
    let lhs = st.product(
        &(Multivector::scalar(cc.omega.clone()) + Multivector::term(Blade::PSEUDOSCALAR, cc.sigma.clone())),
        &bivector(&cc.s),
    );
    let rhs = covector(&cc.k).wedge(&covector(&cc.j));
    let j2 = minkowski_dot(&c.j, &c.j);
    let k2 = minkowski_dot(&c.k, &c.k);
    let so = c.sigma.clone() * c.sigma.clone() + c.omega.clone() * c.omega.clone();
    let s = c.scale().to_f64();
    FierzResiduals {
        product: (lhs - rhs).max_abs_f64(),
        j_norm: (j2.clone() - so).to_f64().abs(),
        k_norm: (j2 + k2).to_f64().abs(),
        orthogonality: minkowski_dot(&c.k, &c.j).to_f64().abs(),
        scale: s * s,
    }
}

/// `Z = σ + J + ιS + ιKγ0123 + ωγ0123`
pub fn aggregate<R: Real>(c: &Covariants<R>) -> Multivector<R> {
    aggregate_complex(&c.to_complex())
}

pub fn aggregate_complex<R: Real>(c: &ComplexCovariants<R>) -> Multivector<R> {
    let mut k_e5 = Multivector::zero();
    for (b, coef) in covector(&c.k).terms() {
        k_e5 += &vector_times_pseudoscalar(b, coef);
    }
    let i = imag_unit::<R>();
    Multivector::scalar(c.sigma.clone())
        + covector(&c.j)
        + bivector(&c.s).scale(&i)
        + k_e5.scale(&i)
        + Multivector::term(Blade::PSEUDOSCALAR, c.omega.clone())
}

/// `c e_μ · e0123` in Cl(1,3).
fn vector_times_pseudoscalar<R: Real>(b: Blade, c: &Complex<R>) -> Multivector<R> {
    let mu = b.lowest().unwrap_or(0);
    let rest = Blade::PSEUDOSCALAR.without(mu);
    // e_μ e0123 = e_μ (±e_μ ∧ rest) = ±η_μμ rest, with ± the sign of moving e_μ to the front
    let front = b.wedge_sign(rest) as i64; // e_μ ∧ rest = front · e0123
    let eta = if mu == 0 { 1 } else { -1 };
    Multivector::term(rest, c.clone() * int(front * eta))
}

/// `4ψψ̄` as a multivector.
pub fn spinor_aggregate<R: Real>(st: &Spacetime<R>, psi: &ColumnSpinor<R>) -> Multivector<R> {
    let g0 = st.gamma(0);
    let bar: [Complex<R>; 4] = core::array::from_fn(|j| {
        (0..4).fold(Complex::zero(), |acc, k| acc + psi.components[k].conj() * g0.0[k][j].clone())
    });
    let m = CMat4::from_fn(|i, j| psi.components[i].clone() * bar[j].clone() * int(4));
    st.dirac_inverse(&m)
}

/// Boomerang test `γ0 Z† γ0 = Z` in the Dirac representation; returns the
/// residual `‖γ0 Z† γ0 − Z‖∞`.
pub fn boomerang_residual<R: Real>(st: &Spacetime<R>, z: &Multivector<R>) -> f64 {
    let m = st.dirac(z);
    let g0 = st.gamma(0);
    let t = &(g0 * &m.dagger()) * g0;
    (&t - &m).max_abs_f64()
}

pub fn is_boomerang<R: Real>(st: &Spacetime<R>, z: &Multivector<R>, tol: f64) -> (bool, f64) {
    let r = boomerang_residual(st, z);
    let ok = if R::EXACT { r == 0.0 } else { r <= tol * z.max_abs_f64().max(1.0) };
    (ok, r)
}

/// Residuals of `Z² = 4σZ`, `Zγ_μZ = 4J_μZ`, `Zγ_μγ_νZ = −4ι(2S_{μν})Z`,
/// `Zγ0123γ_μZ = −4ιK_μZ` and `Zγ0123Z = −4ωZ` (maxima over indices).
pub fn singular_identities_residuals<R: Real>(st: &Spacetime<R>, z: &Multivector<R>, c: &Covariants<R>) -> [f64; 5] {
    let cc = c.to_complex();
    let p = |x: &Multivector<R>, y: &Multivector<R>| st.product(x, y);
    let i = imag_unit::<R>();
    let e = |m: usize| Multivector::<R>::blade(Blade::from_mask(1 << m));
    let e5 = Multivector::<R>::pseudoscalar();
    let zz = p(z, z);
    let r0 = (&zz - &z.scale(&(cc.sigma.clone() * int(4)))).max_abs_f64();
    let r1 = (0..4)
        .map(|m| (p(&p(z, &e(m)), z) - z.scale(&(cc.j[m].clone() * int(4)))).max_abs_f64())
        .fold(0.0, f64::max);
    let r2 = UPPER_PAIRS
        .iter()
        .enumerate()
        .map(|(k, &(m, n))| {
            let lhs = p(&p(&p(z, &e(m)), &e(n)), z);
            (lhs + z.scale(&(cc.s[k].clone() * i.clone() * int(8)))).max_abs_f64()
        })
        .fold(0.0, f64::max);
    let r3 = (0..4)
        .map(|m| {
            let lhs = p(&p(&p(z, &e5), &e(m)), z);
            (lhs + z.scale(&(cc.k[m].clone() * i.clone() * int(4)))).max_abs_f64()
        })
        .fold(0.0, f64::max);
    let r4 = (p(&p(z, &e5), z) + z.scale(&(cc.omega.clone() * int(4)))).max_abs_f64();
    [r0, r1, r2, r3, r4]
}

/// Lounesto class by zero pattern; tolerance is scale-aware on the floating
/// backend and ignored on the exact one.
pub fn classify<R: Real>(c: &Covariants<R>, tol: f64) -> Result<LounestoClass> {
    let label = c.to_complex().zero_pattern(tol).label()?;
    Ok(LounestoClass(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn col(c: [(i64, i64); 4]) -> ColumnSpinor<Exact> {
        ColumnSpinor::new(core::array::from_fn(|i| Complex::new(Exact::from_i64(c[i].0), Exact::from_i64(c[i].1))))
    }

    #[test]
    fn simple_spinors() {
        let c = compute_covariants(&col([(0, 0); 4])).unwrap();
        assert_eq!(c, Covariants::zero());
        let c = compute_covariants(&col([(1, 0), (0, 0), (0, 0), (0, 0)])).unwrap();
        assert_eq!(c.sigma, Exact::from_i64(1));
        assert_eq!(c.j[0], Exact::from_i64(1));
        assert_eq!(classify(&c, 1e-9).unwrap().label(), 2);
        let w = compute_covariants(&col([(1, 0), (0, 0), (1, 0), (0, 0)])).unwrap();
        assert!(w.sigma.is_zero() && w.omega.is_zero() && w.s.iter().all(Zero::is_zero));
        assert!(w.k.iter().any(|x| !x.is_zero()));
        assert_eq!(classify(&w, 1e-9).unwrap().label(), 6);
        assert_eq!(classify(&compute_covariants(&col([(1, 0), (0, 0), (0, 1), (0, 0)])).unwrap(), 0.0).unwrap().label(), 3);
        assert_eq!(classify(&compute_covariants(&col([(1, 0), (1, 0), (1, 0), (-1, 0)])).unwrap(), 0.0).unwrap().label(), 5);
        assert_eq!(classify(&compute_covariants(&col([(1, 0), (2, 0), (1, 0), (-2, 0)])).unwrap(), 0.0).unwrap().label(), 4);
        assert!(matches!(classify(&Covariants::<Exact>::zero(), 1e-9), Err(Error::Unclassifiable(_))));
    }

    #[test]
    fn aggregate_is_four_psi_psibar() {
        let st = Spacetime::<Exact>::new();
        for c in [[(1, 2), (-3, 1), (0, 1), (2, -2)], [(1, 0), (0, 0), (1, 0), (0, 0)], [(1, 0), (0, 0), (0, 0), (0, 0)]] {
            let psi = col(c);
            let cov = compute_covariants(&psi).unwrap();
            let z = aggregate(&cov);
            assert_eq!(z, spinor_aggregate(&st, &psi));
            assert_eq!(boomerang_residual(&st, &z), 0.0);
            assert_eq!(singular_identities_residuals(&st, &z, &cov), [0.0; 5]);
            let f = fierz_residuals_with(&st, &cov);
            assert_eq!(f.max(), 0.0, "{f:?}");
        }
    }

    #[test]
    fn aggregate_examples() {
        let mut c = Covariants::<Exact>::zero();
        c.sigma = Exact::from_i64(1);
        assert_eq!(aggregate(&c), Multivector::one());
        let mut c = Covariants::<Exact>::zero();
        c.omega = Exact::from_i64(1);
        assert_eq!(aggregate(&c), Multivector::pseudoscalar());
        let st = Spacetime::<Exact>::new();
        let iz = Multivector::basis(0).unwrap().scale(&imag_unit());
        assert!(!is_boomerang(&st, &iz, 1e-9).0);
    }

    #[test]
    fn perturbed_covariants_violate_fierz() {
        let mut c = compute_covariants(&col([(1, 2), (-3, 1), (0, 1), (2, -2)])).unwrap();
        c.j[0] = c.j[0].clone() + Exact::from_i64(1);
        assert!(fierz_residuals(&c).j_norm > 0.0);
        assert_eq!(fierz_residuals(&Covariants::<Exact>::zero()).max(), 0.0);
    }

    #[test]
    fn non_finite_rejected() {
        let psi = ColumnSpinor::<f64>::new([Complex::new(f64::NAN, 0.0), Complex::zero(), Complex::zero(), Complex::zero()]);
        assert!(matches!(compute_covariants(&psi), Err(Error::NonFinite)));
    }

    #[test]
    fn marginal_band() {
        let mut c = ComplexCovariants::<f64>::zero();
        c.j[0] = Complex::new(1.0, 0.0);
        assert!(!c.is_marginal(1e-9));
        c.sigma = Complex::new(5e-9, 0.0);
        assert!(c.is_marginal(1e-9));
        c.sigma = Complex::new(1e-12, 0.0);
        assert!(!c.is_marginal(1e-9));
    }
}
