//! The deformed algebra `Cl(V, B)` bundled with its undeformed partner
//! `Cl(V, g)` and the map `φ`, plus closed case formulas for B-products with
//! homogeneous left factors.

use crate::engine::CliffordEngine;
use crate::error::{Error, Result};
use crate::form::{contract_vector, vector_components, ArbitraryForm, AntisymmetricForm, BilinearForm};
use crate::multivector::Multivector;
use crate::phi::PhiMap;
use crate::scalar::{real, Real};

/// Everything needed to compute in `Cl(V, B)` for one fixed `B = g + A`.
#[derive(Clone, Debug)]
pub struct QuantumClifford<R: Real> {
    b: CliffordEngine<R>,
    g: CliffordEngine<R>,
    phi: PhiMap<R>,
}

impl<R: Real> QuantumClifford<R> {
    pub fn new(form: ArbitraryForm<R>) -> Self {
        let g = CliffordEngine::symmetric(form.g.clone());
        let phi = PhiMap::new(&form.a);
        QuantumClifford { b: CliffordEngine::new(form), g, phi }
    }

    pub fn minkowski_plus(a: AntisymmetricForm<R>) -> Self {
        Self::new(ArbitraryForm::minkowski_plus(a))
    }

    pub fn form(&self) -> &ArbitraryForm<R> {
        self.b.form()
    }

    pub fn a(&self) -> &AntisymmetricForm<R> {
        &self.b.form().a
    }

    /// `∘_B`
    pub fn b_engine(&self) -> &CliffordEngine<R> {
        &self.b
    }

    /// Juxtaposition in `Cl(V, g)`.
    pub fn g_engine(&self) -> &CliffordEngine<R> {
        &self.g
    }

    pub fn phi(&self) -> &PhiMap<R> {
        &self.phi
    }

    pub fn b_product(&self, x: &Multivector<R>, y: &Multivector<R>) -> Multivector<R> {
        self.b.product(x, y)
    }

    pub fn g_product(&self, x: &Multivector<R>, y: &Multivector<R>) -> Multivector<R> {
        self.g.product(x, y)
    }

    fn contract_a(&self, u: &Multivector<R>, x: &Multivector<R>) -> Multivector<R> {
        contract_vector(u, &self.form().a, x).expect("grade checked by caller")
    }

    fn contract_b(&self, u: &Multivector<R>, x: &Multivector<R>) -> Multivector<R> {
        contract_vector(u, self.form(), x).expect("grade checked by caller")
    }

    fn contract_g(&self, u: &Multivector<R>, x: &Multivector<R>) -> Multivector<R> {
        contract_vector(u, &self.form().g, x).expect("grade checked by caller")
    }

    fn form_on(&self, f: &dyn BilinearForm<R>, u: &Multivector<R>, v: &Multivector<R>) -> Multivector<R> {
        let (cu, cv) = (
            vector_components(u).expect("grade checked by caller"),
            vector_components(v).expect("grade checked by caller"),
        );
        let mut s = num_complex::Complex::new(R::zero(), R::zero());
        for i in 0..4 {
            for j in 0..4 {
                s = s + cu[i].clone() * cv[j].clone() * real(f.entry(i, j));
            }
        }
        Multivector::scalar(s)
    }

    /// Case formulas for `(u…)∘_B ψ`, where the left factor is the g-product of
    /// one, two or three vectors:
    ///
    /// - a) `u ∘_B ψ = uψ + u ⌟_A ψ`
    /// - b) `(uv) ∘_B ψ = uvψ + u(v ⌟_A ψ) − v ∧ (u ⌟_A ψ) + u ⌟_A (v ⌟_B ψ)`
    /// - c) `(uvw) ∘_B ψ = u ∘_B [(vw) ∘_B ψ] − A(u,v) (w ∘_B ψ) + A(u,w) (v ∘_B ψ)`,
    ///   using a) and b) on the right-hand side.
    ///
    /// Only g-products and contractions are used, so this is an independent
    /// route to [`CliffordEngine::product`].
    pub fn b_product_homogeneous(&self, us: &[Multivector<R>], psi: &Multivector<R>) -> Result<Multivector<R>> {
        check_vectors(us)?;
        Ok(match us {
            [u] => self.case_a(u, psi),
            [u, v] => self.case_b(u, v, psi),
            [u, v, w] => {
                let a = &self.form().a;
                self.case_a(u, &self.case_b(v, w, psi)) - self.form_on(a, u, v).wedge(&self.case_a(w, psi))
                    + self.form_on(a, u, w).wedge(&self.case_a(v, psi))
            }
            _ => unreachable!("arity checked"),
        })
    }

    fn case_a(&self, u: &Multivector<R>, psi: &Multivector<R>) -> Multivector<R> {
        self.g.product(u, psi) + self.contract_a(u, psi)
    }

    fn case_b(&self, u: &Multivector<R>, v: &Multivector<R>, psi: &Multivector<R>) -> Multivector<R> {
        let g = &self.g;
        g.product(&g.product(u, v), psi) + g.product(u, &self.contract_a(v, psi))
            - v.wedge(&self.contract_a(u, psi))
            + self.contract_a(u, &self.contract_b(v, psi))
    }

    /// An alternative twelve-term expansion of case c), transcribed literally
    /// (including the repeated `u` in its third term, with the mixed-subscript
    /// contraction read as `⌟_A`). It does not agree with the B-product in
    /// general and is kept only for discrepancy reporting.
    pub fn case_c_literal(
        &self,
        u: &Multivector<R>,
        v: &Multivector<R>,
        w: &Multivector<R>,
        psi: &Multivector<R>,
    ) -> Result<Multivector<R>> {
        check_vectors(&[u.clone(), v.clone(), w.clone()])?;
        let g = &self.g;
        let a = &self.form().a;
        let (ca, cb, cg) = (
            |x: &Multivector<R>, y: &Multivector<R>| self.contract_a(x, y),
            |x: &Multivector<R>, y: &Multivector<R>| self.contract_b(x, y),
            |x: &Multivector<R>, y: &Multivector<R>| self.contract_g(x, y),
        );
        let uv = g.product(u, v);
        let uw = g.product(u, w);
        let mut t = g.product_of(&[u, v, w, psi]);
        t += &g.product(&uv, &ca(w, psi));
        t -= &g.product(&uw, &cg(u, psi));
        t += &w.wedge(&cg(u, &ca(v, psi)));
        t += &g.product(u, &ca(v, &cb(w, psi)));
        t += &v.wedge(w).wedge(&ca(u, psi));
        t -= &v.wedge(&ca(u, &cg(w, psi)));
        t += &ca(u, &g.product(&self.form_on(&self.form().g, v, w), psi));
        t -= &v.wedge(&ca(u, &cb(w, psi)));
        t -= &self.form_on(a, w, u).wedge(&g.product(v, psi));
        t -= &self.form_on(a, v, w).wedge(&g.product(u, psi));
        t -= &self.form_on(a, u, w).wedge(&v.wedge(psi));
        Ok(t)
    }
}

fn check_vectors<R: Real>(us: &[Multivector<R>]) -> Result<()> {
    if us.is_empty() || us.len() > 3 {
        return Err(Error::Arity(us.len()));
    }
    for u in us {
        vector_components(u)?;
    }
    Ok(())
}

/// Free-function form of [`QuantumClifford::b_product_homogeneous`].
pub fn b_product_homogeneous<R: Real>(
    us: &[Multivector<R>],
    psi: &Multivector<R>,
    form: &ArbitraryForm<R>,
) -> Result<Multivector<R>> {
    QuantumClifford::new(form.clone()).b_product_homogeneous(us, psi)
}
