//! The isomorphism `φ: ⋀V → ⋀V`, `φ(ψ) = λ(ψ)(1)`, relating the undotted and
//! dotted exterior algebras, and the dotted wedge `ψ ∧̇ ξ = φ(φ⁻¹ψ ∧ φ⁻¹ξ)`.

use alloc::vec::Vec;

use crate::blade::{Blade, DIM};
use crate::error::{Error, Result};
use crate::form::{contract_basis, AntisymmetricForm};
use crate::multivector::Multivector;
use crate::scalar::Real;

/// Precomputed images `φ(e_S)` for one antisymmetric form.
#[derive(Clone, Debug)]
pub struct PhiMap<R: Real> {
    a: AntisymmetricForm<R>,
    images: Vec<Multivector<R>>,
}

impl<R: Real> PhiMap<R> {
    pub fn new(a: &AntisymmetricForm<R>) -> Self {
        let mut images: Vec<Multivector<R>> = Vec::with_capacity(16);
        for s in Blade::all() {
            // φ(e_i ∧ e_r) = (l_{e_i} + δ_{e_i}^A) φ(e_r); e_r has a smaller mask
            let img = match s.lowest() {
                None => Multivector::one(),
                Some(i) => {
                    let prev = &images[s.without(i).index()];
                    let ei = Multivector::blade(Blade::from_mask(1 << i));
                    ei.wedge(prev) + contract_basis(i, a, prev)
                }
            };
            images.push(img);
        }
        PhiMap { a: a.clone(), images }
    }

    pub fn form(&self) -> &AntisymmetricForm<R> {
        &self.a
    }

    pub fn image(&self, b: Blade) -> &Multivector<R> {
        &self.images[b.index()]
    }

    pub fn apply(&self, x: &Multivector<R>) -> Multivector<R> {
        let mut out = Multivector::zero();
        for (b, c) in x.terms() {
            out += &self.images[b.index()].scale(c);
        }
        out
    }

    /// `φ` is unitriangular with respect to grade (φ(e_S) = e_S + lower grades
    /// of equal parity), so the inverse follows by peeling off the top grade.
    pub fn inverse(&self, x: &Multivector<R>) -> Multivector<R> {
        let mut out = Multivector::zero();
        let mut rest = x.clone();
        while let Some(k) = rest.top_grade() {
            let top = rest.grade_part(k);
            rest -= &self.apply(&top);
            out += &top;
        }
        out
    }

    pub fn dotted_wedge(&self, x: &Multivector<R>, y: &Multivector<R>) -> Multivector<R> {
        self.apply(&self.inverse(x).wedge(&self.inverse(y)))
    }

    /// Component of `x` in `⋀̇^k = φ(⋀^k)`.
    pub fn dotted_grade_project(&self, x: &Multivector<R>, k: usize) -> Result<Multivector<R>> {
        if k > DIM {
            return Err(Error::GradeOutOfRange(k));
        }
        Ok(self.apply(&self.inverse(x).grade_part(k)))
    }
}

pub fn phi_map<R: Real>(psi: &Multivector<R>, a: &AntisymmetricForm<R>) -> Multivector<R> {
    PhiMap::new(a).apply(psi)
}

pub fn phi_inverse<R: Real>(psi: &Multivector<R>, a: &AntisymmetricForm<R>) -> Multivector<R> {
    PhiMap::new(a).inverse(psi)
}

pub fn dotted_wedge<R: Real>(
    x: &Multivector<R>,
    y: &Multivector<R>,
    a: &AntisymmetricForm<R>,
) -> Multivector<R> {
    PhiMap::new(a).dotted_wedge(x, y)
}

pub fn dotted_grade_project<R: Real>(
    x: &Multivector<R>,
    k: usize,
    a: &AntisymmetricForm<R>,
) -> Result<Multivector<R>> {
    PhiMap::new(a).dotted_grade_project(x, k)
}
