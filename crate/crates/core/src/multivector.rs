use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::blade::{Blade, ALGEBRA_DIM, DIM};
use crate::error::{Error, Result};
use crate::scalar::{cmag, real, to_c64, Real};

/// Dense coefficient array indexed by blade mask; used as a product accumulator.
pub(crate) type Dense<R> = [Complex<R>; ALGEBRA_DIM];

pub(crate) fn dense_zero<R: Real>() -> Dense<R> {
    core::array::from_fn(|_| Complex::zero())
}

/// Element of the complexified exterior algebra over a four-dimensional space,
/// stored as a sparse blade → coefficient map without explicit zeros.
///
/// The same storage serves every product on the algebra (wedge, g-Clifford,
/// B-Clifford, dotted wedge); which product applies is a property of the
/// operation, not of the value.
#[derive(Clone, PartialEq, Eq)]
pub struct Multivector<R: Real> {
    terms: BTreeMap<Blade, Complex<R>>,
}

impl<R: Real> Default for Multivector<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Real> Multivector<R> {
    pub fn zero() -> Self {
        Multivector { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(Complex::one())
    }

    pub fn scalar(c: Complex<R>) -> Self {
        Self::term(Blade::SCALAR, c)
    }

    pub fn term(blade: Blade, c: Complex<R>) -> Self {
        let mut m = Self::zero();
        m.add_term(blade, c);
        m
    }

    pub fn blade(blade: Blade) -> Self {
        Self::term(blade, Complex::one())
    }

    /// Basis vector `e_i`.
    pub fn basis(i: usize) -> Result<Self> {
        Ok(Self::blade(Blade::vector(i)?))
    }

    /// `e0 ∧ e1 ∧ e2 ∧ e3`
    pub fn pseudoscalar() -> Self {
        Self::blade(Blade::PSEUDOSCALAR)
    }

    /// Real grade-1 element `Σ v_μ e_μ`.
    pub fn vector(v: [R; DIM]) -> Self {
        let mut m = Self::zero();
        for (i, x) in v.into_iter().enumerate() {
            m.add_term(Blade::from_mask(1 << i), real(x));
        }
        m
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Complex<R>)>>(it: I) -> Self {
        let mut m = Self::zero();
        for (b, c) in it {
            m.add_term(b, c);
        }
        m
    }

    pub(crate) fn from_dense(d: Dense<R>) -> Self {
        let mut m = Self::zero();
        for (i, c) in d.into_iter().enumerate() {
            if !c.is_zero() {
                m.terms.insert(Blade::from_mask(i as u8), c);
            }
        }
        m
    }

    /// Adds `c` to the coefficient of `blade`, dropping the term if it cancels.
    pub fn add_term(&mut self, blade: Blade, c: Complex<R>) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(blade).or_insert_with(Complex::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&blade);
        }
    }

    pub fn get(&self, blade: Blade) -> Complex<R> {
        self.terms.get(&blade).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn scalar_part(&self) -> Complex<R> {
        self.get(Blade::SCALAR)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Complex<R>)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Set of grades present, as a bit set (bit k ⇔ grade k).
    pub fn grade_mask(&self) -> u8 {
        self.terms.keys().fold(0, |acc, b| acc | (1 << b.grade()))
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.grade() % 2 == 0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn map<F: FnMut(Blade, &Complex<R>) -> Complex<R>>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (*b, f(*b, c))))
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        self.map(|_, x| x.clone() * c.clone())
    }

    pub fn scale_real(&self, r: &R) -> Self {
        self.map(|_, x| x.clone() * r.clone())
    }

    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > DIM {
            return Err(Error::GradeOutOfRange(k));
        }
        Ok(self.grade_part(k))
    }

    pub(crate) fn grade_part(&self, k: usize) -> Self {
        Multivector {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Highest grade present, `None` for zero.
    pub fn top_grade(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.grade()).max()
    }

    pub fn reversion(&self) -> Self {
        self.map(|b, c| if b.reversion_sign() < 0 { -c.clone() } else { c.clone() })
    }

    pub fn grade_involution(&self) -> Self {
        self.map(|b, c| if b.involution_sign() < 0 { -c.clone() } else { c.clone() })
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        self.map(|_, c| c.conj())
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut acc = dense_zero::<R>();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s = a.wedge_sign(*b);
                if s == 0 {
                    continue;
                }
                let p = x.clone() * y.clone();
                let slot = &mut acc[(a.mask() | b.mask()) as usize];
                if s > 0 {
                    *slot = slot.clone() + p;
                } else {
                    *slot = slot.clone() - p;
                }
            }
        }
        Self::from_dense(acc)
    }

    /// `max(|re|, |im|)` over all coefficients.
    pub fn max_abs(&self) -> R {
        self.terms.values().map(cmag).fold(R::zero(), R::max_of)
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.terms
            .values()
            .map(|c| {
                let z = to_c64(c);
                z.re.abs().max(z.im.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Coefficientwise comparison: exact equality on the rational backend,
    /// `max|a−b| ≤ tol·max(1, |a|, |b|)` on the floating one.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if R::EXACT {
            return self == other;
        }
        let scale = self.max_abs_f64().max(other.max_abs_f64()).max(1.0);
        (self - other).max_abs_f64() <= tol * scale
    }

    /// Re-expresses the coefficients in another backend (through `f64`).
    pub fn convert<T: Real>(&self) -> Option<Multivector<T>> {
        let mut out = Multivector::zero();
        for (b, c) in &self.terms {
            out.add_term(*b, crate::scalar::convert(c)?);
        }
        Some(out)
    }
}

impl<R: Real> fmt::Debug for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: Real> fmt::Display for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let z = to_c64(c);
            if z.im == 0.0 {
                write!(f, "{}", z.re)?;
            } else {
                write!(f, "({}{:+}i)", z.re, z.im)?;
            }
            if *b != Blade::SCALAR {
                write!(f, "*{b}")?;
            }
        }
        Ok(())
    }
}

impl<R: Real> AddAssign<&Multivector<R>> for Multivector<R> {
    fn add_assign(&mut self, rhs: &Multivector<R>) {
        for (b, c) in &rhs.terms {
            self.add_term(*b, c.clone());
        }
    }
}

impl<R: Real> SubAssign<&Multivector<R>> for Multivector<R> {
    fn sub_assign(&mut self, rhs: &Multivector<R>) {
        for (b, c) in &rhs.terms {
            self.add_term(*b, -c.clone());
        }
    }
}

impl<R: Real> Add<&Multivector<R>> for &Multivector<R> {
    type Output = Multivector<R>;
    fn add(self, rhs: &Multivector<R>) -> Multivector<R> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<R: Real> Sub<&Multivector<R>> for &Multivector<R> {
    type Output = Multivector<R>;
    fn sub(self, rhs: &Multivector<R>) -> Multivector<R> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<R: Real> Add for Multivector<R> {
    type Output = Multivector<R>;
    fn add(mut self, rhs: Multivector<R>) -> Multivector<R> {
        self += &rhs;
        self
    }
}

impl<R: Real> Sub for Multivector<R> {
    type Output = Multivector<R>;
    fn sub(mut self, rhs: Multivector<R>) -> Multivector<R> {
        self -= &rhs;
        self
    }
}

impl<R: Real> Neg for Multivector<R> {
    type Output = Multivector<R>;
    fn neg(self) -> Multivector<R> {
        self.map(|_, c| -c.clone())
    }
}

impl<R: Real> Neg for &Multivector<R> {
    type Output = Multivector<R>;
    fn neg(self) -> Multivector<R> {
        self.map(|_, c| -c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Exact};

    fn e(i: usize) -> Multivector<Exact> {
        Multivector::basis(i).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let e12 = e(1).wedge(&e(2));
        assert_eq!(e12, Multivector::blade(Blade::new(0b0110).unwrap()));
        assert!(e(1).wedge(&e(1)).is_zero());
        assert_eq!(e(2).wedge(&e(1)), -e12);
    }

    #[test]
    fn grade_projection() {
        let x = Multivector::<Exact>::one() + e(0) + e(1).wedge(&e(2));
        assert_eq!(x.grade_project(1).unwrap(), e(0));
        assert!(matches!(x.grade_project(5), Err(Error::GradeOutOfRange(5))));
        let mut sum = Multivector::zero();
        for k in 0..=4 {
            sum += &x.grade_project(k).unwrap();
        }
        assert_eq!(sum, x);
        let i = Multivector::<Exact>::pseudoscalar();
        assert_eq!(i.grade_project(4).unwrap(), i);
    }

    #[test]
    fn reversion_and_involution() {
        let e12 = e(1).wedge(&e(2));
        assert_eq!(e12.reversion(), -e12.clone());
        assert_eq!(e(0).reversion(), e(0));
        assert_eq!(e(0).grade_involution(), -e(0));
        assert_eq!(e12.grade_involution(), e12);
    }

    #[test]
    fn no_explicit_zeros() {
        let mut x = Multivector::<Exact>::scalar(int(2));
        x.add_term(Blade::SCALAR, int(-2));
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn float_approx_eq() {
        let a = Multivector::<f64>::vector([1.0, 2.0, 3.0, 4.0]);
        let b = Multivector::<f64>::vector([1.0, 2.0, 3.0, 4.0 + 1e-12]);
        assert!(a.approx_eq(&b, 1e-9));
        assert!(!a.approx_eq(&b, 1e-14));
    }
}
