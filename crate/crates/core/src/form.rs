//! Bilinear forms on the four-dimensional vector space and the contraction
//! antiderivations they induce on the exterior algebra.

use num_complex::Complex;
use num_traits::Zero;

use crate::blade::{Blade, DIM};
use crate::error::{Error, Result};
use crate::multivector::{dense_zero, Multivector};
use crate::scalar::{real, Real};

pub type Matrix4<R> = [[R; DIM]; DIM];

pub(crate) fn zero_matrix<R: Real>() -> Matrix4<R> {
    core::array::from_fn(|_| core::array::from_fn(|_| R::zero()))
}

fn max_abs<R: Real>(m: &Matrix4<R>) -> f64 {
    m.iter().flatten().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
}

fn check_finite<R: Real>(m: &Matrix4<R>) -> Result<()> {
    if m.iter().flatten().all(|x| x.to_f64().is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Anything that evaluates on pairs of basis vectors.
pub trait BilinearForm<R: Real> {
    fn entry(&self, i: usize, j: usize) -> R;

    /// `F(u, v)` for arbitrary real vectors.
    fn eval(&self, u: &[R; DIM], v: &[R; DIM]) -> R {
        let mut acc = R::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                acc = acc + u[i].clone() * self.entry(i, j) * v[j].clone();
            }
        }
        acc
    }
}

/// Symmetric part `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricForm<R: Real> {
    entries: Matrix4<R>,
}

/// Antisymmetric part `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntisymmetricForm<R: Real> {
    entries: Matrix4<R>,
}

/// `B = g + A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArbitraryForm<R: Real> {
    pub g: SymmetricForm<R>,
    pub a: AntisymmetricForm<R>,
}

impl<R: Real> SymmetricForm<R> {
    /// Validates symmetry (exactly on the rational backend, to
    /// `1e−12·(1+max|g|)` otherwise) and stores the symmetrized matrix.
    pub fn new(m: Matrix4<R>) -> Result<Self> {
        check_finite(&m)?;
        let tol = if R::EXACT { 0.0 } else { 1e-12 * (1.0 + max_abs(&m)) };
        let mut deviation = 0.0f64;
        for i in 0..DIM {
            for j in 0..DIM {
                deviation = deviation.max((m[i][j].clone() - m[j][i].clone()).to_f64().abs());
            }
        }
        let exact_fail = R::EXACT && (0..DIM).any(|i| (0..DIM).any(|j| m[i][j] != m[j][i]));
        if deviation > tol || exact_fail {
            return Err(Error::NotSymmetric { deviation });
        }
        let half = R::half();
        let entries = core::array::from_fn(|i| {
            core::array::from_fn(|j| (m[i][j].clone() + m[j][i].clone()) * half.clone())
        });
        Ok(SymmetricForm { entries })
    }

    pub fn entries(&self) -> &Matrix4<R> {
        &self.entries
    }

    pub fn is_diagonal(&self) -> bool {
        (0..DIM).all(|i| (0..DIM).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    /// Inverse matrix `g^{μν}`.
    pub fn inverse(&self) -> Result<Matrix4<R>> {
        invert(&self.entries)
    }
}

impl<R: Real> AntisymmetricForm<R> {
    /// Validates antisymmetry with tolerance `1e−12·(1+max|A|)` (exact on the
    /// rational backend) and stores the antisymmetrized matrix.
    pub fn new(m: Matrix4<R>) -> Result<Self> {
        check_finite(&m)?;
        let tol = if R::EXACT { 0.0 } else { 1e-12 * (1.0 + max_abs(&m)) };
        let mut deviation = 0.0f64;
        let mut exact_fail = false;
        for i in 0..DIM {
            for j in 0..DIM {
                let s = m[i][j].clone() + m[j][i].clone();
                exact_fail |= !s.is_zero();
                deviation = deviation.max(s.to_f64().abs());
            }
        }
        if deviation > tol || (R::EXACT && exact_fail) {
            return Err(Error::NotAntisymmetric { deviation });
        }
        Ok(Self::antisymmetrize(&m))
    }

    fn antisymmetrize(m: &Matrix4<R>) -> Self {
        let half = R::half();
        let entries = core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                if i == j {
                    R::zero()
                } else {
                    (m[i][j].clone() - m[j][i].clone()) * half.clone()
                }
            })
        });
        AntisymmetricForm { entries }
    }

    pub fn zero() -> Self {
        AntisymmetricForm { entries: zero_matrix() }
    }

    /// From the six upper entries in the order `A01, A02, A03, A12, A13, A23`.
    pub fn from_upper(upper: [R; 6]) -> Self {
        let mut entries = zero_matrix::<R>();
        for ((i, j), x) in UPPER_PAIRS.iter().copied().zip(upper) {
            entries[j][i] = -x.clone();
            entries[i][j] = x;
        }
        AntisymmetricForm { entries }
    }

    pub fn upper(&self) -> [R; 6] {
        core::array::from_fn(|k| {
            let (i, j) = UPPER_PAIRS[k];
            self.entries[i][j].clone()
        })
    }

    pub fn entries(&self) -> &Matrix4<R> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// `t·A`
    pub fn scaled(&self, t: &R) -> Self {
        AntisymmetricForm {
            entries: core::array::from_fn(|i| {
                core::array::from_fn(|j| self.entries[i][j].clone() * t.clone())
            }),
        }
    }

    /// Pfaffian `A01 A23 − A02 A13 + A03 A12`, i.e. `(1/8) ε^{μνρσ} A_{μν} A_{ρσ}`
    /// with the indices of ε in the same position as those of A.
    pub fn pfaffian(&self) -> R {
        let a = &self.entries;
        a[0][1].clone() * a[2][3].clone() - a[0][2].clone() * a[1][3].clone()
            + a[0][3].clone() * a[1][2].clone()
    }
}

/// Index pairs `μ < ν` in lexicographic order.
pub const UPPER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl<R: Real> ArbitraryForm<R> {
    pub fn new(g: SymmetricForm<R>, a: AntisymmetricForm<R>) -> Self {
        ArbitraryForm { g, a }
    }

    /// `B = η + A`.
    pub fn minkowski_plus(a: AntisymmetricForm<R>) -> Self {
        ArbitraryForm { g: minkowski(), a }
    }

    pub fn symmetric_only(g: SymmetricForm<R>) -> Self {
        ArbitraryForm { g, a: AntisymmetricForm::zero() }
    }

    pub fn matrix(&self) -> Matrix4<R> {
        core::array::from_fn(|i| core::array::from_fn(|j| self.entry(i, j)))
    }

    /// `Q(u) = B(u, u) = g(u, u)`.
    pub fn quadratic(&self, u: &[R; DIM]) -> R {
        self.g.eval(u, u)
    }

    /// A stable fingerprint of the entries, used to tag memo tables.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the f64 images of the sixteen entries of B
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for i in 0..DIM {
            for j in 0..DIM {
                for byte in self.entry(i, j).to_f64().to_bits().to_le_bytes() {
                    h ^= byte as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }
}

impl<R: Real> BilinearForm<R> for SymmetricForm<R> {
    fn entry(&self, i: usize, j: usize) -> R {
        self.entries[i][j].clone()
    }
}

impl<R: Real> BilinearForm<R> for AntisymmetricForm<R> {
    fn entry(&self, i: usize, j: usize) -> R {
        self.entries[i][j].clone()
    }
}

impl<R: Real> BilinearForm<R> for ArbitraryForm<R> {
    fn entry(&self, i: usize, j: usize) -> R {
        self.g.entries[i][j].clone() + self.a.entries[i][j].clone()
    }
}

/// Minkowski metric `diag(1, −1, −1, −1)`.
pub fn minkowski<R: Real>() -> SymmetricForm<R> {
    let mut entries = zero_matrix::<R>();
    entries[0][0] = R::one();
    for (i, row) in entries.iter_mut().enumerate().skip(1) {
        row[i] = -R::one();
    }
    SymmetricForm { entries }
}

/// Splits an arbitrary matrix into its symmetric and antisymmetric parts.
/// Exact on the rational backend: `g + A` reproduces `B`.
pub fn decompose<R: Real>(b: &Matrix4<R>) -> ArbitraryForm<R> {
    let half = R::half();
    let g = core::array::from_fn(|i| {
        core::array::from_fn(|j| (b[i][j].clone() + b[j][i].clone()) * half.clone())
    });
    ArbitraryForm {
        g: SymmetricForm { entries: g },
        a: AntisymmetricForm::antisymmetrize(b),
    }
}

/// Coefficients of a grade-1 multivector.
pub fn vector_components<R: Real>(u: &Multivector<R>) -> Result<[Complex<R>; DIM]> {
    let mut out: [Complex<R>; DIM] = core::array::from_fn(|_| Complex::zero());
    for (b, c) in u.terms() {
        if b.grade() != 1 {
            return Err(Error::NotAVector);
        }
        out[b.mask().trailing_zeros() as usize] = c.clone();
    }
    Ok(out)
}

/// `δ_{e_i}^F x`: the degree −1 antiderivation determined by `e_i ⌟ e_j = F_{ij}`.
pub fn contract_basis<R: Real, F: BilinearForm<R> + ?Sized>(
    i: usize,
    form: &F,
    x: &Multivector<R>,
) -> Multivector<R> {
    let row: [R; DIM] = core::array::from_fn(|j| form.entry(i, j));
    let mut acc = dense_zero::<R>();
    for (b, c) in x.terms() {
        for (pos, j) in b.indices().enumerate() {
            if row[j].is_zero() {
                continue;
            }
            let v = c.clone() * row[j].clone();
            let slot = &mut acc[b.without(j).index()];
            if pos % 2 == 0 {
                *slot = slot.clone() + v;
            } else {
                *slot = slot.clone() - v;
            }
        }
    }
    Multivector::from_dense(acc)
}

/// `u ⌟_F ψ` for a grade-1 `u`.
pub fn contract_vector<R: Real, F: BilinearForm<R> + ?Sized>(
    u: &Multivector<R>,
    form: &F,
    psi: &Multivector<R>,
) -> Result<Multivector<R>> {
    let comps = vector_components(u)?;
    let mut out = Multivector::zero();
    for (i, c) in comps.iter().enumerate() {
        if !c.is_zero() {
            out += &contract_basis(i, form, psi).scale(c);
        }
    }
    Ok(out)
}

/// Left contraction `κ ⌟_F φ` extended to arbitrary `κ` by
/// `(u ∧ κ') ⌟ φ = u ⌟ (κ' ⌟ φ)`.
pub fn contract<R: Real, F: BilinearForm<R> + ?Sized>(
    kappa: &Multivector<R>,
    form: &F,
    phi: &Multivector<R>,
) -> Multivector<R> {
    let mut out = Multivector::zero();
    for (b, c) in kappa.terms() {
        let mut acc = phi.clone();
        // apply the highest index first so that the lowest ends up outermost
        let idx: alloc::vec::Vec<usize> = b.indices().collect();
        for &i in idx.iter().rev() {
            acc = contract_basis(i, form, &acc);
        }
        out += &acc.scale(c);
    }
    out
}

/// Extension of a bilinear form to the exterior algebra via Gram determinants:
/// `F(e_S, e_T) = det[F(e_{s_i}, e_{t_j})]` on blades of equal grade, zero otherwise.
/// Bilinear (no conjugation) in the complex coefficients.
pub fn form_extension<R: Real, F: BilinearForm<R> + ?Sized>(
    form: &F,
    x: &Multivector<R>,
    y: &Multivector<R>,
) -> Complex<R> {
    let mut acc = Complex::zero();
    for (a, xa) in x.terms() {
        for (b, yb) in y.terms() {
            if a.grade() != b.grade() {
                continue;
            }
            let d = gram(form, a, b);
            if !d.is_zero() {
                acc = acc + xa.clone() * yb.clone() * real(d);
            }
        }
    }
    acc
}

fn gram<R: Real, F: BilinearForm<R> + ?Sized>(form: &F, a: Blade, b: Blade) -> R {
    let ia: alloc::vec::Vec<usize> = a.indices().collect();
    let ib: alloc::vec::Vec<usize> = b.indices().collect();
    let n = ia.len();
    let mut m = zero_matrix::<R>();
    for r in 0..n {
        for c in 0..n {
            m[r][c] = form.entry(ia[r], ib[c]);
        }
    }
    det(&m, n)
}

/// Determinant of the leading `n×n` block by cofactor expansion (n ≤ 4).
pub(crate) fn det<R: Real>(m: &Matrix4<R>, n: usize) -> R {
    fn rec<R: Real>(m: &Matrix4<R>, rows: &[usize], cols: u8, n: usize) -> R {
        if rows.is_empty() {
            return R::one();
        }
        let r = rows[0];
        let mut acc = R::zero();
        let mut sign = true;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let x = m[r][c].clone();
            if !x.is_zero() {
                let minor = rec(m, &rows[1..], cols & !(1 << c), n);
                acc = if sign { acc + x * minor } else { acc - x * minor };
            }
            sign = !sign;
        }
        acc
    }
    let rows: alloc::vec::Vec<usize> = (0..n).collect();
    rec(m, &rows, ((1u16 << n) - 1) as u8, n)
}

/// Gauss-Jordan inverse with partial pivoting.
pub(crate) fn invert<R: Real>(m: &Matrix4<R>) -> Result<Matrix4<R>> {
    let mut a = m.clone();
    let mut inv = zero_matrix::<R>();
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = R::one();
    }
    for col in 0..DIM {
        let pivot = (col..DIM)
            .max_by(|&x, &y| {
                a[x][col]
                    .abs()
                    .partial_cmp(&a[y][col].abs())
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if a[pivot][col].is_zero() || (!R::EXACT && a[pivot][col].to_f64().abs() < 1e-300) {
            return Err(Error::SingularMetric);
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..DIM {
            a[col][j] = a[col][j].clone() / p.clone();
            inv[col][j] = inv[col][j].clone() / p.clone();
        }
        for r in 0..DIM {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let k = a[r][col].clone();
            for j in 0..DIM {
                a[r][j] = a[r][j].clone() - k.clone() * a[col][j].clone();
                inv[r][j] = inv[r][j].clone() - k.clone() * inv[col][j].clone();
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalar::{int, Exact};

    fn q(n: i64, d: i64) -> Exact {
        Exact::ratio(n, d)
    }

    fn e(i: usize) -> Multivector<Exact> {
        Multivector::basis(i).unwrap()
    }

    fn sample_a() -> AntisymmetricForm<Exact> {
        AntisymmetricForm::from_upper([q(1, 2), q(-1, 3), q(2, 5), q(3, 7), q(-1, 4), q(1, 9)])
    }

    #[test]
    fn minkowski_entries() {
        let g = minkowski::<Exact>();
        assert_eq!(g.entry(0, 0), Exact::one());
        assert_eq!(g.entry(1, 1), -Exact::one());
        assert_eq!(g.entry(0, 1), Exact::zero());
    }

    #[test]
    fn decompose_examples() {
        let eta = minkowski::<Exact>();
        let d = decompose(eta.entries());
        assert_eq!(d.g, eta);
        assert!(d.a.is_zero());

        let mut b = eta.entries().clone();
        b[0][1] = Exact::one();
        let d = decompose(&b);
        assert_eq!(d.g.entry(0, 1), q(1, 2));
        assert_eq!(d.g.entry(1, 0), q(1, 2));
        assert_eq!(d.a.entry(0, 1), q(1, 2));
        assert_eq!(d.a.entry(1, 0), q(-1, 2));
        assert_eq!(d.matrix(), b);
    }

    #[test]
    fn validation() {
        let mut m = sample_a().entries().clone();
        m[0][1] = m[0][1].clone() + Exact::one();
        assert!(matches!(AntisymmetricForm::new(m), Err(Error::NotAntisymmetric { .. })));
        let sym = *minkowski::<f64>().entries();
        assert!(AntisymmetricForm::new(sym).is_err());
        let mut nan = zero_matrix::<f64>();
        nan[1][2] = f64::NAN;
        assert!(matches!(AntisymmetricForm::new(nan), Err(Error::NonFinite)));
        let mut near = zero_matrix::<f64>();
        near[0][1] = 0.3;
        near[1][0] = -0.3 + 1e-15;
        assert!(AntisymmetricForm::new(near).is_ok());
    }

    #[test]
    fn contraction_examples() {
        let eta = minkowski::<Exact>();
        assert_eq!(contract_vector(&e(0), &eta, &e(0)).unwrap(), Multivector::one());
        let a = sample_a();
        let lhs = contract_vector(&e(1), &a, &e(2).wedge(&e(3))).unwrap();
        let rhs = e(3).scale_real(&a.entry(1, 2)) - e(2).scale_real(&a.entry(1, 3));
        assert_eq!(lhs, rhs);
        let b = ArbitraryForm::minkowski_plus(a);
        assert_eq!(
            contract_vector(&e(1), &b, &e(2)).unwrap(),
            Multivector::scalar(real(b.entry(1, 2)))
        );
        assert!(matches!(
            contract_vector(&e(1).wedge(&e(2)), &b, &e(2)),
            Err(Error::NotAVector)
        ));
        assert!(contract_vector(&e(1), &b, &Multivector::one()).unwrap().is_zero());
    }

    #[test]
    fn antiderivation_on_blades() {
        let b = ArbitraryForm::minkowski_plus(sample_a());
        for x in Blade::all() {
            for y in Blade::all() {
                let (mx, my) = (Multivector::<Exact>::blade(x), Multivector::blade(y));
                for i in 0..DIM {
                    let lhs = contract_basis(i, &b, &mx.wedge(&my));
                    let mut rhs = contract_basis(i, &b, &mx).wedge(&my);
                    let t = mx.wedge(&contract_basis(i, &b, &my));
                    if x.grade() % 2 == 0 {
                        rhs += &t;
                    } else {
                        rhs -= &t;
                    }
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn nilpotent_vector_operator() {
        let a = sample_a();
        let u = Multivector::vector([q(1, 3), q(-2, 1), q(1, 1), q(5, 4)]);
        let psi = Multivector::from_terms(Blade::all().map(|b| (b, int(b.index() as i64 - 7))));
        let op = |x: &Multivector<Exact>| u.wedge(x) + contract_vector(&u, &a, x).unwrap();
        assert!(op(&op(&psi)).is_zero());
    }

    #[test]
    fn contraction_duality_for_metric() {
        let g = minkowski::<Exact>();
        let x = |s: i64| {
            Multivector::from_terms(Blade::all().map(move |b| (b, int((b.index() as i64 * s) % 7 - 3))))
        };
        let (kappa, phi, xi) = (x(3), x(5), x(2));
        for k in 0..=4 {
            let kk = kappa.grade_part(k);
            let lhs = form_extension(&g, &contract(&kk, &g, &phi), &xi);
            let rhs = form_extension(&g, &phi, &kk.reversion().wedge(&xi));
            assert_eq!(lhs, rhs, "grade {k}");
        }
    }

    #[test]
    fn inverse_metric() {
        let inv = minkowski::<Exact>().inverse().unwrap();
        assert_eq!(&inv, minkowski::<Exact>().entries());
        assert!(SymmetricForm::new(zero_matrix::<Exact>()).unwrap().inverse().is_err());
        assert_eq!(det(minkowski::<Exact>().entries(), 4), -Exact::one());
    }

    #[test]
    fn pfaffian_matches_levi_civita_sum() {
        let a = sample_a();
        let mut s = Exact::zero();
        for m in 0..4 {
            for n in 0..4 {
                for r in 0..4 {
                    for t in 0..4 {
                        let eps = crate::blade::levi_civita(m, n, r, t).unwrap();
                        s += Exact::from_i64(eps as i64) * a.entry(m, n) * a.entry(r, t);
                    }
                }
            }
        }
        assert_eq!(s * q(1, 8), a.pfaffian());
    }
}
