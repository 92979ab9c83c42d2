//! Clifford products of an arbitrary bilinear form, realized on the exterior
//! algebra through the Chevalley construction `u ∘ ψ = u ∧ ψ + u ⌟_B ψ`.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::blade::{Blade, ALGEBRA_DIM};
use crate::form::{contract_basis, ArbitraryForm, SymmetricForm};
use crate::multivector::{dense_zero, Multivector};
use crate::scalar::Real;

/// Memoized blade × blade products for one fixed form.
///
/// Built eagerly at construction and immutable afterwards, so a table can be
/// shared freely between threads.
#[derive(Clone, Debug)]
pub struct ProductTable<R: Real> {
    entries: Vec<Vec<(Blade, R)>>,
    fingerprint: u64,
}

impl<R: Real> ProductTable<R> {
    fn build(form: &ArbitraryForm<R>) -> Self {
        let mut dense: Vec<Option<Multivector<R>>> = (0..ALGEBRA_DIM * ALGEBRA_DIM).map(|_| None).collect();
        let mut order: Vec<Blade> = Blade::all().collect();
        order.sort_by_key(|b| b.grade());
        for a in order {
            for b in Blade::all() {
                let v = match a.lowest() {
                    None => Multivector::blade(b),
                    Some(i) => {
                        // e_a = e_i ∘ e_r − δ_i e_r, so e_a ∘ e_b = e_i ∘ (e_r ∘ e_b) − (δ_i e_r) ∘ e_b
                        let r = a.without(i);
                        let inner = dense[slot(r, b)].as_ref().expect("lower grade built first");
                        let mut t = vector_op(form, i, inner);
                        let d = contract_basis(i, form, &Multivector::blade(r));
                        for (m, c) in d.terms() {
                            let sub = dense[slot(m, b)].as_ref().expect("lower grade built first");
                            t -= &sub.scale(c);
                        }
                        t
                    }
                };
                dense[slot(a, b)] = Some(v);
            }
        }
        let entries = dense
            .into_iter()
            .map(|m| {
                m.expect("every slot filled")
                    .terms()
                    .map(|(b, c)| (b, c.re.clone()))
                    .collect()
            })
            .collect();
        ProductTable { entries, fingerprint: form.fingerprint() }
    }

    pub fn entry(&self, a: Blade, b: Blade) -> Multivector<R> {
        Multivector::from_terms(
            self.entries[slot(a, b)]
                .iter()
                .map(|(m, r)| (*m, Complex::new(r.clone(), R::zero()))),
        )
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }
}

fn slot(a: Blade, b: Blade) -> usize {
    a.index() * ALGEBRA_DIM + b.index()
}

/// `e_i ∘ x = e_i ∧ x + δ_i^B x`
fn vector_op<R: Real>(form: &ArbitraryForm<R>, i: usize, x: &Multivector<R>) -> Multivector<R> {
    let ei = Multivector::blade(Blade::from_mask(1 << i));
    ei.wedge(x) + contract_basis(i, form, x)
}

/// The Clifford algebra of a bilinear form `B = g + A`, carried by the
/// exterior algebra. With `A = 0` this is the ordinary Clifford product of `g`.
#[derive(Clone, Debug)]
pub struct CliffordEngine<R: Real> {
    form: ArbitraryForm<R>,
    table: ProductTable<R>,
}

impl<R: Real> CliffordEngine<R> {
    pub fn new(form: ArbitraryForm<R>) -> Self {
        let table = ProductTable::build(&form);
        CliffordEngine { form, table }
    }

    /// Ordinary Clifford algebra of `g`.
    pub fn symmetric(g: SymmetricForm<R>) -> Self {
        Self::new(ArbitraryForm::symmetric_only(g))
    }

    /// Cl(1,3) with the Minkowski metric.
    pub fn minkowski() -> Self {
        Self::symmetric(crate::form::minkowski())
    }

    pub fn form(&self) -> &ArbitraryForm<R> {
        &self.form
    }

    pub fn table(&self) -> &ProductTable<R> {
        &self.table
    }

    pub fn product(&self, x: &Multivector<R>, y: &Multivector<R>) -> Multivector<R> {
        let mut acc = dense_zero::<R>();
        for (a, xa) in x.terms() {
            for (b, yb) in y.terms() {
                let entry = &self.table.entries[slot(a, b)];
                if entry.is_empty() {
                    continue;
                }
                let p = xa.clone() * yb.clone();
                for (m, r) in entry {
                    let s = &mut acc[m.index()];
                    *s = s.clone() + p.clone() * r.clone();
                }
            }
        }
        Multivector::from_dense(acc)
    }

    /// Left-to-right product of a sequence; the empty product is 1.
    pub fn product_of(&self, factors: &[&Multivector<R>]) -> Multivector<R> {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Multivector::one();
        };
        it.fold((*first).clone(), |acc, f| self.product(&acc, f))
    }

    /// Product of basis vectors `e_{i1} ∘ … ∘ e_{ik}` in the given order.
    pub fn monomial(&self, indices: &[usize]) -> Multivector<R> {
        indices.iter().fold(Multivector::one(), |acc, &i| {
            self.product(&acc, &Multivector::blade(Blade::from_mask(1 << (i & 3))))
        })
    }

    /// Blade product recomputed from scratch without the memo table.
    pub fn fresh_blade_product(&self, a: Blade, b: Blade) -> Multivector<R> {
        fresh(&self.form, a, &Multivector::blade(b))
    }

    /// Left multiplication by the basis vector `e_i`.
    pub fn vector_product(&self, i: usize, x: &Multivector<R>) -> Multivector<R> {
        vector_op(&self.form, i & 3, x)
    }
}

fn fresh<R: Real>(form: &ArbitraryForm<R>, a: Blade, x: &Multivector<R>) -> Multivector<R> {
    match a.lowest() {
        None => x.clone(),
        Some(i) => {
            let r = a.without(i);
            let mut t = vector_op(form, i, &fresh(form, r, x));
            let d = contract_basis(i, form, &Multivector::blade(r));
            for (m, c) in d.terms() {
                t -= &fresh(form, m, x).scale(c);
            }
            t
        }
    }
}

/// Ordinary Clifford product of `g`. Builds a fresh engine; prefer
/// [`CliffordEngine::product`] in loops.
pub fn clifford_product_g<R: Real>(
    a: &Multivector<R>,
    b: &Multivector<R>,
    g: &SymmetricForm<R>,
) -> Multivector<R> {
    CliffordEngine::symmetric(g.clone()).product(a, b)
}

/// Clifford product of `B = g + A`. Builds a fresh engine; prefer
/// [`CliffordEngine::product`] in loops.
pub fn b_product<R: Real>(a: &Multivector<R>, b: &Multivector<R>, form: &ArbitraryForm<R>) -> Multivector<R> {
    CliffordEngine::new(form.clone()).product(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{minkowski, AntisymmetricForm, BilinearForm};
    use crate::scalar::{int, real, Exact};

    fn q(n: i64, d: i64) -> Exact {
        Exact::ratio(n, d)
    }

    fn sample_form() -> ArbitraryForm<Exact> {
        ArbitraryForm::minkowski_plus(AntisymmetricForm::from_upper([
            q(1, 2),
            q(-1, 3),
            q(2, 5),
            q(3, 7),
            q(-1, 4),
            q(1, 9),
        ]))
    }

    fn e(i: usize) -> Multivector<Exact> {
        Multivector::basis(i).unwrap()
    }

    #[test]
    fn minkowski_generators() {
        let eng = CliffordEngine::<Exact>::minkowski();
        let eta = minkowski::<Exact>();
        for m in 0..4 {
            for n in 0..4 {
                let ac = eng.product(&e(m), &e(n)) + eng.product(&e(n), &e(m));
                assert_eq!(ac, Multivector::scalar(real(eta.entry(m, n) * q(2, 1))));
            }
        }
        let i = Multivector::pseudoscalar();
        assert_eq!(eng.product(&i, &i), Multivector::scalar(int(-1)));
    }

    #[test]
    fn b_product_on_vectors() {
        let form = sample_form();
        let eng = CliffordEngine::new(form.clone());
        let g = CliffordEngine::<Exact>::minkowski();
        for m in 0..4 {
            for n in 0..4 {
                let uv = eng.product(&e(m), &e(n));
                let expected = g.product(&e(m), &e(n)) + Multivector::scalar(real(form.a.entry(m, n)));
                assert_eq!(uv, expected);
            }
        }
    }

    #[test]
    fn triple_expansion() {
        let form = sample_form();
        let eng = CliffordEngine::new(form.clone());
        let a = |i, j| form.a.entry(i, j);
        let lhs = eng.monomial(&[0, 1, 2]);
        let e012 = e(0).wedge(&e(1)).wedge(&e(2));
        let rhs = e012 + e(2).scale_real(&a(0, 1)) + e(1).scale_real(&a(2, 0)) + e(0).scale_real(&a(1, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn table_matches_fresh_recursion() {
        let eng = CliffordEngine::new(sample_form());
        for a in Blade::all() {
            for b in Blade::all() {
                assert_eq!(eng.table().entry(a, b), eng.fresh_blade_product(a, b));
            }
        }
    }

    #[test]
    fn associativity_on_blades() {
        let eng = CliffordEngine::new(sample_form());
        for a in Blade::all() {
            for b in Blade::all() {
                for c in [Blade::new(0b0101).unwrap(), Blade::new(0b1110).unwrap(), Blade::PSEUDOSCALAR] {
                    let (x, y, z) = (Multivector::blade(a), Multivector::blade(b), Multivector::blade(c));
                    assert_eq!(
                        eng.product(&eng.product(&x, &y), &z),
                        eng.product(&x, &eng.product(&y, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn free_functions_agree_with_engine() {
        let form = sample_form();
        let x = e(1) + e(2).wedge(&e(3));
        let y = e(0) + Multivector::one();
        assert_eq!(b_product(&x, &y, &form), CliffordEngine::new(form.clone()).product(&x, &y));
        assert_eq!(
            clifford_product_g(&x, &y, &form.g),
            CliffordEngine::minkowski().product(&x, &y)
        );
        assert_eq!(eng_zero().product_of(&[]), Multivector::one());
    }

    fn eng_zero() -> CliffordEngine<Exact> {
        CliffordEngine::minkowski()
    }

    #[test]
    fn bivector_square_is_even() {
        let eng = CliffordEngine::new(sample_form());
        let t = eng.table().entry(Blade::new(0b0011).unwrap(), Blade::new(0b0011).unwrap());
        // only grades 0 and 2 survive
        assert_eq!(t.grade_mask() & 0b11010, 0);
    }
}
