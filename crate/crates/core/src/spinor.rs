//! Primitive idempotents, minimal left ideals and the three equivalent
//! presentations of a spinor: column in C⁴, element of a minimal left ideal,
//! and even spinor operator.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::Zero;

use crate::blade::{Blade, ALGEBRA_DIM};
use crate::engine::CliffordEngine;
use crate::error::{Error, Result};
use crate::form::UPPER_PAIRS;
use crate::matrix::CMat4;
use crate::multivector::Multivector;
use crate::quaternion::{QMat2, Quaternion};
use crate::scalar::{imag_unit, int, real, Real};

/// `½(1 + e0)`
pub fn idempotent_f_real<R: Real>() -> Multivector<R> {
    Multivector::from_terms([
        (Blade::SCALAR, real(R::half())),
        (Blade::from_mask(0b0001), real(R::half())),
    ])
}

/// `¼(1 + e0)(1 + ι e1e2) = ¼(1 + e0 + ι e12 + ι e012)`
pub fn idempotent_f_complex<R: Real>() -> Multivector<R> {
    let q = R::ratio(1, 4);
    let iq = Complex::new(R::zero(), q.clone());
    Multivector::from_terms([
        (Blade::SCALAR, real(q.clone())),
        (Blade::from_mask(0b0001), real(q)),
        (Blade::from_mask(0b0110), iq.clone()),
        (Blade::from_mask(0b0111), iq),
    ])
}

/// Which ideal an [`AlgebraicSpinor`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    /// `Cl(1,3)·½(1+e0)`
    Real,
    /// `(C⊗Cl(1,3))·¼(1+e0)(1+ιe1e2)`
    Complex,
}

/// An element of a minimal left ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSpinor<R: Real> {
    pub element: Multivector<R>,
    pub kind: IdealKind,
}

/// The four components of a classical Dirac spinor.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnSpinor<R: Real> {
    pub components: [Complex<R>; 4],
}

impl<R: Real> ColumnSpinor<R> {
    pub fn new(components: [Complex<R>; 4]) -> Self {
        ColumnSpinor { components }
    }

    pub fn from_f64(c: [(f64, f64); 4]) -> Result<Self> {
        let mut out: [Complex<R>; 4] = core::array::from_fn(|_| Complex::zero());
        for (slot, (re, im)) in out.iter_mut().zip(c) {
            *slot = Complex::new(R::from_f64(re).ok_or(Error::NonFinite)?, R::from_f64(im).ok_or(Error::NonFinite)?);
        }
        Ok(ColumnSpinor { components: out })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        ColumnSpinor { components: core::array::from_fn(|i| self.components[i].clone() * c.clone()) }
    }

    pub fn to_c64(&self) -> [Complex<f64>; 4] {
        core::array::from_fn(|i| crate::scalar::to_c64(&self.components[i]))
    }
}

/// Even element `Ψ = h + h^{μν} e_μe_ν + p e0e1e2e3`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorOperator<R: Real> {
    element: Multivector<R>,
}

impl<R: Real> SpinorOperator<R> {
    pub fn new(element: Multivector<R>) -> Result<Self> {
        if element.is_even() {
            Ok(SpinorOperator { element })
        } else {
            Err(Error::NotEven)
        }
    }

    /// From `h`, the six `h^{μν}` (μ<ν, lexicographic) and `p`.
    pub fn from_coefficients(h: Complex<R>, hmn: [Complex<R>; 6], p: Complex<R>) -> Self {
        let mut m = Multivector::scalar(h);
        for ((i, j), c) in UPPER_PAIRS.iter().zip(hmn) {
            m.add_term(Blade::from_mask((1 << i) | (1 << j)), c);
        }
        m.add_term(Blade::PSEUDOSCALAR, p);
        SpinorOperator { element: m }
    }

    pub fn element(&self) -> &Multivector<R> {
        &self.element
    }
}

/// Cl(1,3) with its fixed representations. Build once and reuse: the
/// constructor precomputes the product table and all basis images.
#[derive(Clone, Debug)]
pub struct Spacetime<R: Real> {
    engine: CliffordEngine<R>,
    dirac: Vec<CMat4<R>>,
    dirac_inv: Vec<CMat4<R>>,
    quat: Vec<QMat2<R>>,
    f_real: Multivector<R>,
    f_complex: Multivector<R>,
}

impl<R: Real> Default for Spacetime<R> {
    fn default() -> Self {
        Self::new()
    }
}

/// Dirac representation: `γ0 = diag(1,1,−1,−1)`, `γk = [[0, −σk], [σk, 0]]`.
pub fn dirac_gamma<R: Real>(mu: usize) -> Result<CMat4<R>> {
    let (o, z, i) = (int::<R>(1), Complex::<R>::zero(), imag_unit::<R>());
    let sigma: [[Complex<R>; 2]; 2] = match mu {
        0 => {
            let mut m = CMat4::zero();
            for k in 0..4 {
                m.0[k][k] = if k < 2 { o.clone() } else { -o.clone() };
            }
            return Ok(m);
        }
        1 => [[z.clone(), o.clone()], [o.clone(), z.clone()]],
        2 => [[z.clone(), -i.clone()], [i.clone(), z.clone()]],
        3 => [[o.clone(), z.clone()], [z.clone(), -o.clone()]],
        _ => return Err(Error::IndexOutOfRange(mu)),
    };
    let mut m = CMat4::zero();
    for r in 0..2 {
        for c in 0..2 {
            m.0[r][c + 2] = -sigma[r][c].clone();
            m.0[r + 2][c] = sigma[r][c].clone();
        }
    }
    Ok(m)
}

fn quat_generator<R: Real>(mu: usize) -> QMat2<R> {
    let mut m = QMat2::zero();
    match mu {
        0 => {
            m.0[0][0] = Quaternion::one();
            m.0[1][1] = -&Quaternion::one();
        }
        _ => {
            let q = match mu {
                1 => Quaternion::i(),
                2 => Quaternion::j(),
                _ => Quaternion::k(),
            };
            m.0[0][1] = q.clone();
            m.0[1][0] = q;
        }
    }
    m
}

/// `1 ↦ I`, `𝔦 ↦ diag(ι, −ι)`, `𝔧 ↦ [[0, 1], [−1, 0]]`, `𝔨 ↦ [[0, ι], [ι, 0]]`.
pub fn quaternion_to_complex<R: Real>(q: &Quaternion<R>) -> [[Complex<R>; 2]; 2] {
    let (w, x, y, z) = (q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone());
    [
        [Complex::new(w.clone(), x.clone()), Complex::new(y.clone(), z.clone())],
        [Complex::new(-y, z), Complex::new(w, -x)],
    ]
}

impl<R: Real> Spacetime<R> {
    pub fn new() -> Self {
        let gammas: Vec<CMat4<R>> = (0..4).map(|m| dirac_gamma(m).expect("index < 4")).collect();
        let qgens: Vec<QMat2<R>> = (0..4).map(quat_generator).collect();
        let mut dirac = Vec::with_capacity(ALGEBRA_DIM);
        let mut quat = Vec::with_capacity(ALGEBRA_DIM);
        for b in Blade::all() {
            // orthogonal basis: the blade equals the ordered product of its vectors
            let mut d = CMat4::identity();
            let mut q = QMat2::identity();
            for i in b.indices() {
                d = &d * &gammas[i];
                q = &q * &qgens[i];
            }
            dirac.push(d);
            quat.push(q);
        }
        let dirac_inv = dirac
            .iter()
            .map(|d| {
                // every blade image squares to ±I
                let sq = d * d;
                d.scale(&sq.0[0][0])
            })
            .collect();
        Spacetime {
            engine: CliffordEngine::minkowski(),
            dirac,
            dirac_inv,
            quat,
            f_real: idempotent_f_real(),
            f_complex: idempotent_f_complex(),
        }
    }

    pub fn engine(&self) -> &CliffordEngine<R> {
        &self.engine
    }

    pub fn product(&self, x: &Multivector<R>, y: &Multivector<R>) -> Multivector<R> {
        self.engine.product(x, y)
    }

    pub fn f_real(&self) -> &Multivector<R> {
        &self.f_real
    }

    pub fn f_complex(&self) -> &Multivector<R> {
        &self.f_complex
    }

    pub fn gamma(&self, mu: usize) -> &CMat4<R> {
        &self.dirac[1 << (mu & 3)]
    }

    pub fn dirac_blade(&self, b: Blade) -> &CMat4<R> {
        &self.dirac[b.index()]
    }

    pub fn dirac(&self, x: &Multivector<R>) -> CMat4<R> {
        let mut m = CMat4::zero();
        for (b, c) in x.terms() {
            m = &m + &self.dirac[b.index()].scale(c);
        }
        m
    }

    /// `x = ¼ Σ_S tr(D(e_S)⁻¹ M) e_S`
    pub fn dirac_inverse(&self, m: &CMat4<R>) -> Multivector<R> {
        let quarter = real(R::ratio(1, 4));
        Multivector::from_terms(
            Blade::all().map(|b| (b, (&self.dirac_inv[b.index()] * m).trace() * quarter.clone())),
        )
    }

    /// 2×2 quaternion matrix of a real element.
    pub fn quaternion_rep(&self, x: &Multivector<R>) -> Result<QMat2<R>> {
        if !x.is_real() {
            return Err(Error::NotReal);
        }
        let mut m = QMat2::zero();
        for (b, c) in x.terms() {
            m = &m + &self.quat[b.index()].scale(&c.re);
        }
        Ok(m)
    }

    /// The quaternion representation, complexified, with each quaternion
    /// replaced by its 2×2 complex block. A faithful representation that is
    /// equivalent to, but not equal to, the Dirac representation.
    pub fn complex_block(&self, x: &Multivector<R>) -> CMat4<R> {
        let re = x.map(|_, c| real(c.re.clone()));
        let im = x.map(|_, c| real(c.im.clone()));
        let qr = self.quaternion_rep(&re).expect("real part is real");
        let qi = self.quaternion_rep(&im).expect("imaginary part is real");
        let mut out = CMat4::zero();
        for r in 0..2 {
            for c in 0..2 {
                let br = quaternion_to_complex(&qr.0[r][c]);
                let bi = quaternion_to_complex(&qi.0[r][c]);
                for i in 0..2 {
                    for j in 0..2 {
                        out.0[2 * r + i][2 * c + j] = br[i][j].clone() + bi[i][j].clone() * imag_unit();
                    }
                }
            }
        }
        out
    }

    fn ideal_residual(&self, x: &Multivector<R>, f: &Multivector<R>) -> Multivector<R> {
        &self.product(x, f) - x
    }

    fn check_ideal(&self, x: &Multivector<R>, f: &Multivector<R>) -> Result<()> {
        let res = self.ideal_residual(x, f);
        let ok = if R::EXACT {
            res.is_zero()
        } else {
            res.max_abs_f64() <= 1e-10 * x.max_abs_f64().max(1.0)
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotInIdeal { residual: res.max_abs_f64() })
        }
    }

    pub fn algebraic(&self, element: Multivector<R>, kind: IdealKind) -> Result<AlgebraicSpinor<R>> {
        let f = match kind {
            IdealKind::Real => &self.f_real,
            IdealKind::Complex => &self.f_complex,
        };
        self.check_ideal(&element, f)?;
        Ok(AlgebraicSpinor { element, kind })
    }

    /// `(q1, q2)` with `Ω = q1 f + q2 e0123 f`; they are the first column of
    /// the quaternion matrix of `Ω`.
    pub fn to_quaternion_pair(&self, omega: &AlgebraicSpinor<R>) -> Result<(Quaternion<R>, Quaternion<R>)> {
        self.check_ideal(&omega.element, &self.f_real)?;
        let m = self.quaternion_rep(&omega.element)?;
        Ok((m.0[0][0].clone(), m.0[1][0].clone()))
    }

    pub fn from_quaternion_pair(&self, q1: &Quaternion<R>, q2: &Quaternion<R>) -> AlgebraicSpinor<R> {
        let f = &self.f_real;
        let e0123f = self.product(&Multivector::pseudoscalar(), f);
        let element = self.product(&quaternion_element(q1), f) + self.product(&quaternion_element(q2), &e0123f);
        AlgebraicSpinor { element, kind: IdealKind::Real }
    }

    /// First column of the Dirac matrix of an element of the complex ideal.
    pub fn to_column(&self, psi: &AlgebraicSpinor<R>) -> Result<ColumnSpinor<R>> {
        self.check_ideal(&psi.element, &self.f_complex)?;
        Ok(ColumnSpinor { components: self.dirac(&psi.element).column(0) })
    }

    pub fn from_column(&self, c: &ColumnSpinor<R>) -> AlgebraicSpinor<R> {
        let mut m = CMat4::zero();
        for i in 0..4 {
            m.0[i][0] = c.components[i].clone();
        }
        AlgebraicSpinor { element: self.dirac_inverse(&m), kind: IdealKind::Complex }
    }

    /// `Ψ f` in the complex ideal.
    pub fn operator_to_algebraic(&self, op: &SpinorOperator<R>) -> AlgebraicSpinor<R> {
        AlgebraicSpinor { element: self.product(&op.element, &self.f_complex), kind: IdealKind::Complex }
    }
}

/// `w + x e2e3 + y e3e1 + z e1e2` as a multivector.
pub fn quaternion_element<R: Real>(q: &Quaternion<R>) -> Multivector<R> {
    Multivector::from_terms([
        (Blade::SCALAR, real(q.w.clone())),
        (Blade::from_mask(0b1100), real(q.x.clone())),
        (Blade::from_mask(0b1010), real(-q.y.clone())),
        (Blade::from_mask(0b0110), real(q.z.clone())),
    ])
}

pub fn dirac_matrix_rep<R: Real>(x: &Multivector<R>) -> CMat4<R> {
    Spacetime::new().dirac(x)
}

pub fn quaternion_matrix_rep<R: Real>(x: &Multivector<R>) -> Result<QMat2<R>> {
    Spacetime::new().quaternion_rep(x)
}

pub fn complex_block_rep<R: Real>(x: &Multivector<R>) -> CMat4<R> {
    Spacetime::new().complex_block(x)
}

pub fn to_column<R: Real>(psi: &AlgebraicSpinor<R>) -> Result<ColumnSpinor<R>> {
    Spacetime::new().to_column(psi)
}

pub fn from_column<R: Real>(c: &ColumnSpinor<R>) -> AlgebraicSpinor<R> {
    Spacetime::new().from_column(c)
}

pub fn to_quaternion_pair<R: Real>(omega: &AlgebraicSpinor<R>) -> Result<(Quaternion<R>, Quaternion<R>)> {
    Spacetime::new().to_quaternion_pair(omega)
}

/// Identity matrix check used by tests and suites.
pub fn is_identity<R: Real>(m: &CMat4<R>, scale: &Complex<R>) -> bool {
    let target = CMat4::<R>::identity().scale(scale);
    if R::EXACT {
        *m == target
    } else {
        (m - &target).max_abs_f64() <= 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalar::Exact;

    fn st() -> Spacetime<Exact> {
        Spacetime::new()
    }

    fn e(i: usize) -> Multivector<Exact> {
        Multivector::basis(i).unwrap()
    }

    #[test]
    fn idempotents() {
        let st = st();
        let (fr, fc) = (st.f_real().clone(), st.f_complex().clone());
        assert_eq!(st.product(&fr, &fr), fr);
        assert_eq!(st.product(&fc, &fc), fc);
        assert_eq!(st.product(&e(0), &fr), fr);
        let built = st
            .product(&(Multivector::one() + e(0)), &(Multivector::one() + st.product(&e(1), &e(2)).scale(&imag_unit())))
            .scale_real(&Exact::ratio(1, 4));
        assert_eq!(built, fc);
        let mut diag = CMat4::zero();
        diag.0[0][0] = Complex::one();
        assert_eq!(st.dirac(&fc), diag);
        let q = st.quaternion_rep(&fr).unwrap();
        assert_eq!(q.0[0][0], Quaternion::one());
        assert!(q.0[0][1].is_zero() && q.0[1][0].is_zero() && q.0[1][1].is_zero());
    }

    #[test]
    fn generator_images() {
        let st = st();
        let q0 = st.quaternion_rep(&e(0)).unwrap();
        assert_eq!(q0.0[0][0], Quaternion::one());
        assert_eq!(q0.0[1][1], -&Quaternion::one());
        let q1 = st.quaternion_rep(&e(1)).unwrap();
        assert_eq!(q1.0[0][1], Quaternion::i());
        assert_eq!(&q1 * &q1, QMat2::identity().scale(&-Exact::one()));
        let d0 = st.dirac(&e(0));
        assert_eq!(d0, CMat4::from_fn(|i, j| if i != j { Complex::zero() } else if i < 2 { int(1) } else { int(-1) }));
        for m in 0..4 {
            for n in 0..4 {
                let ac = &(st.gamma(m) * st.gamma(n)) + &(st.gamma(n) * st.gamma(m));
                let eta = if m != n { 0 } else if m == 0 { 2 } else { -2 };
                assert!(is_identity(&ac, &int(eta)));
            }
        }
        assert!(matches!(st.quaternion_rep(&e(0).scale(&imag_unit())), Err(Error::NotReal)));
    }

    #[test]
    fn quaternion_pair_examples() {
        let st = st();
        let f = st.f_real().clone();
        let om = st.algebraic(f.clone(), IdealKind::Real).unwrap();
        assert_eq!(st.to_quaternion_pair(&om).unwrap(), (Quaternion::one(), Quaternion::zero()));
        let om = st.algebraic(st.product(&Multivector::pseudoscalar(), &f), IdealKind::Real).unwrap();
        assert_eq!(st.to_quaternion_pair(&om).unwrap(), (Quaternion::zero(), Quaternion::one()));
        let eps = Multivector::one() + e(0);
        let om = st.algebraic(st.product(&eps, &f), IdealKind::Real).unwrap();
        assert_eq!(st.to_quaternion_pair(&om).unwrap().0, Quaternion::one().scale(&Exact::from_i64(2)));
        assert!(st.algebraic(e(1), IdealKind::Real).is_err());
        let (q1, q2) = (Quaternion::new(Exact::from_i64(1), Exact::from_i64(-2), Exact::ratio(1, 2), Exact::from_i64(3)), Quaternion::j());
        let om = st.from_quaternion_pair(&q1, &q2);
        assert_eq!(st.to_quaternion_pair(&om).unwrap(), (q1, q2));
    }

    #[test]
    fn column_examples() {
        let st = st();
        let f = st.algebraic(st.f_complex().clone(), IdealKind::Complex).unwrap();
        let c = st.to_column(&f).unwrap();
        assert_eq!(c.components, [int(1), int(0), int(0), int(0)]);
        let op = SpinorOperator::from_coefficients(int(1), core::array::from_fn(|_| Complex::zero()), Complex::zero());
        assert_eq!(st.to_column(&st.operator_to_algebraic(&op)).unwrap().components, [int(1), int(0), int(0), int(0)]);
        let col = ColumnSpinor::new([int(1), Complex::new(Exact::from_i64(2), Exact::ratio(-1, 3)), int(0), imag_unit()]);
        let alg = st.from_column(&col);
        assert_eq!(st.to_column(&alg).unwrap(), col);
        assert!(SpinorOperator::new(e(0)).is_err());
    }

    #[test]
    fn spinor_operator_block_matrix() {
        let st = st();
        let c = |n: i64| int::<Exact>(n);
        // h, h01, h02, h03, h12, h13, h23, p
        let (h, h01, h02, h03, h12, h13, h23, p) = (c(2), c(3), c(5), c(7), c(11), c(13), c(17), c(19));
        let op = SpinorOperator::from_coefficients(h.clone(), [h01.clone(), h02.clone(), h03.clone(), h12.clone(), h13.clone(), h23.clone()], p.clone());
        let m = st.complex_block(op.element());
        let i = imag_unit::<Exact>();
        let expected = [
            [h.clone() + h23.clone() * i.clone(), -h13.clone() + h12.clone() * i.clone(), -p.clone() + h01.clone() * i.clone(), h02.clone() + h03.clone() * i.clone()],
            [h13.clone() + h12.clone() * i.clone(), h.clone() - h23.clone() * i.clone(), -h02.clone() + h03.clone() * i.clone(), -p.clone() - h01.clone() * i.clone()],
            [p.clone() - h01.clone() * i.clone(), -h02.clone() - h03.clone() * i.clone(), h.clone() + h23.clone() * i.clone(), -h13.clone() + h12.clone() * i.clone()],
            [h02.clone() - h03.clone() * i.clone(), p.clone() + h01.clone() * i.clone(), h13.clone() + h12 * i.clone(), h - h23 * i],
        ];
        assert_eq!(m.0, expected);
    }

    #[test]
    fn dirac_round_trip() {
        let st = st();
        let x = Multivector::from_terms(Blade::all().map(|b| (b, Complex::new(Exact::from_i64(b.index() as i64 - 4), Exact::ratio(1, 1 + b.index() as i64)))));
        assert_eq!(st.dirac_inverse(&st.dirac(&x)), x);
    }
}
