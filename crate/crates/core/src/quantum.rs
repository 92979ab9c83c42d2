//! Spinors of the deformed algebra `Cl(V, B)`, `B = η + A`: the idempotent
//! `f_B`, the split `ψ_B = ψ + ψ(A)`, the B-covariants and their classes, and
//! the correspondence with the classical Lounesto classes.
//!
//! B-covariants are computed without a matrix representation. For
//! `Γ ∈ {1, γ_μ, ½ιγ_μ∘γ_ν, ιγ0∘γ1∘γ2∘γ3∘γ_μ, −γ0∘γ1∘γ2∘γ3}` (all products
//! `∘_B`) the value is `4⟨γ0 ∘ Ψ̃* ∘ Γ ∘ Ψ⟩₀` with `Ψ = ψ_B ∘ f_B`, where `~`
//! is reversion in the undotted basis, `*` conjugates coefficients and `⟨⟩₀`
//! takes the undotted scalar part. For `A = 0` this is exactly `ψ̄Γψ` in the
//! Dirac representation. The classical part of each B-covariant is the same
//! evaluation at `A = 0`; the A-part is the difference.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::blade::{levi_civita, Blade};
use crate::covariants::{classify, ComplexCovariants, CovariantOperators, LounestoClass};
use crate::deformation::QuantumClifford;
use crate::engine::CliffordEngine;
use crate::error::{Error, Result};
use crate::form::{AntisymmetricForm, BilinearForm, UPPER_PAIRS};
use crate::matrix::CMat4;
use crate::multivector::Multivector;
use crate::scalar::{imag_unit, int, real, to_c64, Real};
use crate::spinor::{idempotent_f_complex, ColumnSpinor, Spacetime};

/// `f_B = f + f(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BIdempotent<R: Real> {
    pub f_b: Multivector<R>,
    pub f: Multivector<R>,
    pub f_a: Multivector<R>,
}

/// `f_B = ¼(1 + γ0) ∘_B (1 + ι γ1 ∘_B γ2)`, computed with the engine.
pub fn idempotent_f_b<R: Real>(engine: &CliffordEngine<R>) -> BIdempotent<R> {
    let e = |i: u8| Multivector::<R>::blade(Blade::from_mask(1 << i));
    let left = Multivector::one() + e(0);
    let right = Multivector::one() + engine.product(&e(1), &e(2)).scale(&imag_unit());
    let f_b = engine.product(&left, &right).scale_real(&R::ratio(1, 4));
    let f = idempotent_f_complex();
    let f_a = &f_b - &f;
    BIdempotent { f_b, f, f_a }
}

/// Closed form `f(A) = (ι/4)(A12 + A12 γ0 + A20 γ1 + A01 γ2)`.
pub fn f_a_closed_form<R: Real>(a: &AntisymmetricForm<R>) -> Multivector<R> {
    let iq = Complex::new(R::zero(), R::ratio(1, 4));
    let c = |i, j| iq.clone() * real(a.entry(i, j));
    Multivector::from_terms([
        (Blade::SCALAR, c(1, 2)),
        (Blade::from_mask(0b0001), c(1, 2)),
        (Blade::from_mask(0b0010), c(2, 0)),
        (Blade::from_mask(0b0100), c(0, 1)),
    ])
}

/// `ψ(A)` from the coefficients `h_S` of `ψ = Σ h_S e_S` (one coefficient per
/// canonical blade; Minkowski metric assumed, so `e_S` is also the ordered
/// g-product of its vectors):
///
/// - scalar: `Σ_{μ<ν} h^{μν} A_{μν} + p·Pf(A)`
/// - vector: `Σ_{μ<ν<ρ} h^{μνρ} (A_{μν} e_ρ + A_{ρμ} e_ν + A_{νρ} e_μ)`
/// - bivector: `p Σ_{ρ<σ} (½ Σ_{μν} ε^{μνρσ} A_{μν}) e_ρ ∧ e_σ`
pub fn psi_a_part<R: Real>(coeffs: &Multivector<R>, a: &AntisymmetricForm<R>) -> Multivector<R> {
    let mut out = Multivector::zero();
    let ar = |i: usize, j: usize| real::<R>(a.entry(i, j));
    for (b, h) in coeffs.terms() {
        let idx: Vec<usize> = b.indices().collect();
        match idx.as_slice() {
            [m, n] => out.add_term(Blade::SCALAR, h.clone() * ar(*m, *n)),
            [m, n, r] => {
                let v = |i: usize| Blade::from_mask(1 << i);
                out.add_term(v(*r), h.clone() * ar(*m, *n));
                out.add_term(v(*n), h.clone() * ar(*r, *m));
                out.add_term(v(*m), h.clone() * ar(*n, *r));
            }
            [_, _, _, _] => {
                out.add_term(Blade::SCALAR, h.clone() * real(a.pfaffian()));
                for (r, s) in UPPER_PAIRS {
                    let mut dual = R::zero();
                    for (m, n) in UPPER_PAIRS {
                        let eps = levi_civita(m, n, r, s).expect("indices < 4");
                        if eps != 0 {
                            dual = dual + R::from_i64(eps as i64) * a.entry(m, n);
                        }
                    }
                    out.add_term(Blade::from_mask((1 << r) | (1 << s)), h.clone() * real(dual));
                }
            }
            _ => {}
        }
    }
    out
}

/// `Σ h_S e_{s1} ∘_B … ∘_B e_{sk}`, the B-element with the given coefficients,
/// assembled directly with the engine.
pub fn b_monomial_element<R: Real>(coeffs: &Multivector<R>, engine: &CliffordEngine<R>) -> Multivector<R> {
    let mut out = Multivector::zero();
    for (b, h) in coeffs.terms() {
        let idx: Vec<usize> = b.indices().collect();
        out += &engine.monomial(&idx).scale(h);
    }
    out
}

/// `ψ_B = ψ + ψ(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BSpinor<R: Real> {
    pub psi: Multivector<R>,
    pub psi_a: Multivector<R>,
    pub a: AntisymmetricForm<R>,
    /// Scalar part of `ψ(A)`.
    pub s: Complex<R>,
}

impl<R: Real> BSpinor<R> {
    pub fn total(&self) -> Multivector<R> {
        &self.psi + &self.psi_a
    }
}

pub fn build_b_element<R: Real>(coeffs: &Multivector<R>, a: &AntisymmetricForm<R>) -> BSpinor<R> {
    let psi_a = psi_a_part(coeffs, a);
    BSpinor { psi: coeffs.clone(), s: psi_a.scalar_part(), psi_a, a: a.clone() }
}

/// `(ψ_B) ∘_B (f_B)` split as `[ψ∘f, ψ(A)∘f, ψ∘f(A), ψ(A)∘f(A)]`.
pub fn decompose_b_spinor<R: Real>(
    engine: &CliffordEngine<R>,
    psi_b: &BSpinor<R>,
    fb: &BIdempotent<R>,
) -> [Multivector<R>; 4] {
    [
        engine.product(&psi_b.psi, &fb.f),
        engine.product(&psi_b.psi_a, &fb.f),
        engine.product(&psi_b.psi, &fb.f_a),
        engine.product(&psi_b.psi_a, &fb.f_a),
    ]
}

/// The sixteen `Γ` elements for one product.
#[derive(Clone, Debug)]
struct GammaSet<R: Real> {
    one: Multivector<R>,
    j: [Multivector<R>; 4],
    s: [Multivector<R>; 6],
    k: [Multivector<R>; 4],
    omega: Multivector<R>,
}

impl<R: Real> GammaSet<R> {
    fn new(engine: &CliffordEngine<R>) -> Self {
        let e = |i: usize| Multivector::<R>::blade(Blade::from_mask(1 << i));
        let i = imag_unit::<R>();
        let e0123 = engine.monomial(&[0, 1, 2, 3]);
        GammaSet {
            one: Multivector::one(),
            j: core::array::from_fn(e),
            s: core::array::from_fn(|p| {
                let (m, n) = UPPER_PAIRS[p];
                engine.product(&e(m), &e(n)).scale(&(i.clone() * real(R::half())))
            }),
            k: core::array::from_fn(|m| engine.product(&e0123, &e(m)).scale(&i)),
            omega: -e0123,
        }
    }
}

/// A-independent half of the pipeline: Cl(1,3), `f`, and the undeformed `Γ`s.
#[derive(Clone, Debug)]
pub struct FlatPipeline<R: Real> {
    st: Spacetime<R>,
    gammas: GammaSet<R>,
    matrix_ops: Arc<CovariantOperators<R>>,
}

impl<R: Real> Default for FlatPipeline<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> FlatPipeline<R> {
    pub fn new() -> Self {
        let st = Spacetime::new();
        let gammas = GammaSet::new(st.engine());
        let matrix_ops = Arc::new(CovariantOperators::new(&st));
        FlatPipeline { st, gammas, matrix_ops }
    }

    pub fn spacetime(&self) -> &Spacetime<R> {
        &self.st
    }

    pub fn matrix_operators(&self) -> &CovariantOperators<R> {
        &self.matrix_ops
    }
}

/// Everything needed to compute B-covariants for one `A`.
#[derive(Clone, Debug)]
pub struct QuantumContext<R: Real> {
    qc: QuantumClifford<R>,
    fb: BIdempotent<R>,
    gammas: GammaSet<R>,
    flat: Arc<FlatPipeline<R>>,
}

/// Split B-covariants.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumCovariants<R: Real> {
    /// `σ_B, J_B, S_B, K_B, ω_B`
    pub total: ComplexCovariants<R>,
    /// `σ, J, S, K, ω` (the pipeline at `A = 0`)
    pub classical: ComplexCovariants<R>,
    /// `σ(A), …, ω(A)`
    pub a_part: ComplexCovariants<R>,
    /// Contribution to `S_B` of the scalar part of `½ιγ_μ∘γ_ν`.
    pub s_scalar_leak: [Complex<R>; 6],
    /// Contribution to `K_B` of the vector part of `ιγ0∘γ1∘γ2∘γ3∘γ_μ`.
    pub k_vector_leak: [Complex<R>; 4],
}

impl<R: Real> QuantumCovariants<R> {
    /// Largest imaginary part of the B-covariants (zero would mean the
    /// deformed sandwiches stay Hermitian; they do not in general).
    pub fn max_imag(&self) -> f64 {
        self.total.max_imag()
    }
}

impl<R: Real> QuantumContext<R> {
    pub fn new(a: AntisymmetricForm<R>) -> Self {
        Self::with_flat(a, Arc::new(FlatPipeline::new()))
    }

    /// Reuses an existing A-independent pipeline (cheap to clone).
    pub fn with_flat(a: AntisymmetricForm<R>, flat: Arc<FlatPipeline<R>>) -> Self {
        let qc = QuantumClifford::minkowski_plus(a);
        let fb = idempotent_f_b(qc.b_engine());
        let gammas = GammaSet::new(qc.b_engine());
        QuantumContext { qc, fb, gammas, flat }
    }

    pub fn algebra(&self) -> &QuantumClifford<R> {
        &self.qc
    }

    pub fn a(&self) -> &AntisymmetricForm<R> {
        self.qc.a()
    }

    pub fn idempotent(&self) -> &BIdempotent<R> {
        &self.fb
    }

    pub fn flat(&self) -> &Arc<FlatPipeline<R>> {
        &self.flat
    }

    /// Coefficients `h_S` of the classical algebraic spinor of a column.
    pub fn coefficients(&self, c: &ColumnSpinor<R>) -> Multivector<R> {
        self.flat.st.from_column(c).element
    }

    pub fn b_spinor(&self, c: &ColumnSpinor<R>) -> BSpinor<R> {
        build_b_element(&self.coefficients(c), self.a())
    }

    /// `Ψ_B = ψ_B ∘_B f_B`
    pub fn b_ideal_element(&self, c: &ColumnSpinor<R>) -> Multivector<R> {
        self.qc.b_product(&self.b_spinor(c).total(), &self.fb.f_b)
    }

    pub fn compute(&self, c: &ColumnSpinor<R>) -> Result<QuantumCovariants<R>> {
        check_finite(c)?;
        let coeffs = self.coefficients(c);
        let bs = build_b_element(&coeffs, self.a());
        let eng_b = self.qc.b_engine();
        let big_b = eng_b.product(&bs.total(), &self.fb.f_b);
        let total = evaluate(eng_b, &self.gammas, &big_b, &big_b);
        let eng_g = self.flat.st.engine();
        let big_g = eng_g.product(&coeffs, &self.fb.f);
        let classical = evaluate(eng_g, &self.flat.gammas, &big_g, &big_g);
        let left = left_factor(eng_b, &big_b);
        let val = |g: &Multivector<R>| sandwich_value(eng_b, &left, g, &big_b);
        let s_scalar_leak = core::array::from_fn(|p| val(&self.gammas.s[p].grade_part(0)));
        let k_vector_leak = core::array::from_fn(|m| val(&self.gammas.k[m].grade_part(1)));
        let a_part = total.sub(&classical);
        Ok(QuantumCovariants { total, classical, a_part, s_scalar_leak, k_vector_leak })
    }

    /// Matrices `M` with `σ_B(c) = c† M c` (and likewise for ω_B): the pipeline
    /// is sesquilinear in the column.
    pub fn sesquilinear_sigma_omega(&self) -> (CMat4<R>, CMat4<R>) {
        let eng = self.qc.b_engine();
        let unit = |i: usize| {
            let mut comps: [Complex<R>; 4] = core::array::from_fn(|_| Complex::zero());
            comps[i] = int(1);
            eng.product(&self.b_spinor(&ColumnSpinor::new(comps)).total(), &self.fb.f_b)
        };
        let bigs: Vec<Multivector<R>> = (0..4).map(unit).collect();
        let lefts: Vec<Multivector<R>> = bigs.iter().map(|b| left_factor(eng, b)).collect();
        let sig = CMat4::from_fn(|i, j| sandwich_value(eng, &lefts[i], &self.gammas.one, &bigs[j]));
        let om = CMat4::from_fn(|i, j| sandwich_value(eng, &lefts[i], &self.gammas.omega, &bigs[j]));
        (sig, om)
    }
}

fn check_finite<R: Real>(c: &ColumnSpinor<R>) -> Result<()> {
    if c.to_c64().iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// `γ0 ∘ Ψ̃*`
fn left_factor<R: Real>(eng: &CliffordEngine<R>, big: &Multivector<R>) -> Multivector<R> {
    let e0 = Multivector::blade(Blade::from_mask(1));
    eng.product(&e0, &big.reversion().conj())
}

fn sandwich_value<R: Real>(
    eng: &CliffordEngine<R>,
    left: &Multivector<R>,
    gamma: &Multivector<R>,
    right: &Multivector<R>,
) -> Complex<R> {
    eng.product(left, &eng.product(gamma, right)).scalar_part() * int(4)
}

fn evaluate<R: Real>(
    eng: &CliffordEngine<R>,
    gammas: &GammaSet<R>,
    left_big: &Multivector<R>,
    right_big: &Multivector<R>,
) -> ComplexCovariants<R> {
    let left = left_factor(eng, left_big);
    let val = |g: &Multivector<R>| sandwich_value(eng, &left, g, right_big);
    ComplexCovariants {
        sigma: val(&gammas.one),
        j: core::array::from_fn(|m| val(&gammas.j[m])),
        s: core::array::from_fn(|p| val(&gammas.s[p])),
        k: core::array::from_fn(|m| val(&gammas.k[m])),
        omega: val(&gammas.omega),
    }
}

pub fn compute_b_covariants<R: Real>(c: &ColumnSpinor<R>, a: &AntisymmetricForm<R>) -> Result<QuantumCovariants<R>> {
    QuantumContext::new(a.clone()).compute(c)
}

/// One of the six B-classes `1_B … 6_B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BClass(u8);

impl BClass {
    pub fn new(label: u8) -> Option<Self> {
        (1..=6).contains(&label).then_some(BClass(label))
    }

    pub fn label(self) -> u8 {
        self.0
    }
}

impl fmt::Display for BClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_B", self.0)
    }
}

/// B-class by the zero pattern of the B-covariants (complex magnitudes).
pub fn b_classify<R: Real>(qc: &QuantumCovariants<R>, tol: f64) -> Result<BClass> {
    Ok(BClass(qc.total.zero_pattern(tol).label()?))
}

/// Classical labels admissible for each B-class when `A ≠ 0`.
pub fn table_row(b: BClass) -> &'static [u8] {
    match b.0 {
        1 => &[1, 2, 3, 4, 5, 6],
        2 => &[3, 1],
        3 => &[2, 1],
        _ => &[1],
    }
}

/// Whether `(classical, quantum)` is an admissible pair. With `A = 0` the two
/// classifications coincide, so only the diagonal is admissible.
pub fn admissible(classical: LounestoClass, quantum: BClass, a_is_zero: bool) -> bool {
    if a_is_zero {
        classical.label() == quantum.label()
    } else {
        table_row(quantum).contains(&classical.label())
    }
}

/// Outcome of comparing the classical and B-classifications of one spinor.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityRecord {
    pub classical: LounestoClass,
    pub quantum: BClass,
    pub a_is_zero: bool,
    /// `σ, ω` (classical, real)
    pub sigma: f64,
    pub omega: f64,
    /// `σ(A), ω(A)` as `(re, im)`
    pub sigma_a: (f64, f64),
    pub omega_a: (f64, f64),
    /// Side conditions that hold, e.g. `"σ = 0"` or `"0 ≠ ω ≠ −ω(A)"`.
    pub conditions: Vec<&'static str>,
    /// Some covariant sits within a decade of the zero threshold.
    pub marginal: bool,
    pub admissible: bool,
    /// Largest imaginary part among the B-covariants.
    pub max_imag: f64,
}

fn fired<R: Real>(q: &QuantumCovariants<R>, tol: f64) -> Vec<&'static str> {
    let scale = R::max_of(q.total.scale(), q.classical.scale());
    let z = |c: &Complex<R>| R::negligible(&crate::scalar::cmag(c), &scale, tol);
    let mut out = Vec::new();
    out.push(if z(&q.classical.sigma) {
        "σ = 0"
    } else if z(&q.total.sigma) {
        "σ = −σ(A) ≠ 0"
    } else {
        "0 ≠ σ ≠ −σ(A)"
    });
    out.push(if z(&q.classical.omega) {
        "ω = 0"
    } else if z(&q.total.omega) {
        "ω = −ω(A) ≠ 0"
    } else {
        "0 ≠ ω ≠ −ω(A)"
    });
    out
}

/// Classifies a column both ways. Returns `Err(Inadmissible)` only when the
/// pair is outside Table I and the sample is not marginal; marginal records
/// are returned with `marginal = true` and left for the caller to quarantine.
pub fn duality<R: Real>(ctx: &QuantumContext<R>, c: &ColumnSpinor<R>, tol: f64) -> Result<DualityRecord> {
    let cov = crate::covariants::compute_covariants_with(ctx.flat.matrix_operators(), c)?;
    let classical = classify(&cov, tol)?;
    let q = ctx.compute(c)?;
    let quantum = b_classify(&q, tol)?;
    let a_is_zero = ctx.a().is_zero();
    let marginal = q.total.is_marginal(tol) || cov.to_complex().is_marginal(tol);
    let rec = DualityRecord {
        classical,
        quantum,
        a_is_zero,
        sigma: cov.sigma.to_f64(),
        omega: cov.omega.to_f64(),
        sigma_a: c64_pair(&q.a_part.sigma),
        omega_a: c64_pair(&q.a_part.omega),
        conditions: fired(&q, tol),
        marginal,
        admissible: admissible(classical, quantum, a_is_zero),
        max_imag: q.max_imag(),
    };
    if !rec.admissible && !rec.marginal {
        return Err(Error::Inadmissible(alloc::boxed::Box::new(rec)));
    }
    Ok(rec)
}

fn c64_pair<R: Real>(z: &Complex<R>) -> (f64, f64) {
    let w = to_c64(z);
    (w.re, w.im)
}
