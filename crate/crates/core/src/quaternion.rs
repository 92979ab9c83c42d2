//! Quaternions realized as `K = span{1, e2e3, e3e1, e1e2}` and 2×2 quaternion matrices.

use core::ops::{Add, Mul, Neg, Sub};


use crate::scalar::Real;

/// `w + x𝔦 + y𝔧 + z𝔨` with `𝔦 = e2e3`, `𝔧 = e3e1`, `𝔨 = e1e2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<R: Real> {
    pub w: R,
    pub x: R,
    pub y: R,
    pub z: R,
}

impl<R: Real> Quaternion<R> {
    pub fn new(w: R, x: R, y: R, z: R) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::zero())
    }

    pub fn one() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::zero())
    }

    pub fn i() -> Self {
        Self::new(R::zero(), R::one(), R::zero(), R::zero())
    }

    pub fn j() -> Self {
        Self::new(R::zero(), R::zero(), R::one(), R::zero())
    }

    pub fn k() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn scale(&self, r: &R) -> Self {
        Self::new(
            self.w.clone() * r.clone(),
            self.x.clone() * r.clone(),
            self.y.clone() * r.clone(),
            self.z.clone() * r.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn components(&self) -> [R; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl<R: Real> Add for &Quaternion<R> {
    type Output = Quaternion<R>;
    fn add(self, o: &Quaternion<R>) -> Quaternion<R> {
        Quaternion::new(
            self.w.clone() + o.w.clone(),
            self.x.clone() + o.x.clone(),
            self.y.clone() + o.y.clone(),
            self.z.clone() + o.z.clone(),
        )
    }
}

impl<R: Real> Sub for &Quaternion<R> {
    type Output = Quaternion<R>;
    fn sub(self, o: &Quaternion<R>) -> Quaternion<R> {
        self + &-o
    }
}

impl<R: Real> Neg for &Quaternion<R> {
    type Output = Quaternion<R>;
    fn neg(self) -> Quaternion<R> {
        Quaternion::new(-self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }
}

impl<R: Real> Mul for &Quaternion<R> {
    type Output = Quaternion<R>;
    fn mul(self, o: &Quaternion<R>) -> Quaternion<R> {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        let m = |p: &R, q: &R| p.clone() * q.clone();
        Quaternion::new(
            m(a1, a2) - m(b1, b2) - m(c1, c2) - m(d1, d2),
            m(a1, b2) + m(b1, a2) + m(c1, d2) - m(d1, c2),
            m(a1, c2) - m(b1, d2) + m(c1, a2) + m(d1, b2),
            m(a1, d2) + m(b1, c2) - m(c1, b2) + m(d1, a2),
        )
    }
}

/// 2×2 matrix over the quaternions.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat2<R: Real>(pub [[Quaternion<R>; 2]; 2]);

impl<R: Real> QMat2<R> {
    pub fn zero() -> Self {
        QMat2(core::array::from_fn(|_| core::array::from_fn(|_| Quaternion::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        m.0[0][0] = Quaternion::one();
        m.0[1][1] = Quaternion::one();
        m
    }

    pub fn scale(&self, r: &R) -> Self {
        QMat2(core::array::from_fn(|i| core::array::from_fn(|j| self.0[i][j].scale(r))))
    }
}

impl<R: Real> Mul for &QMat2<R> {
    type Output = QMat2<R>;
    fn mul(self, o: &QMat2<R>) -> QMat2<R> {
        QMat2(core::array::from_fn(|i| {
            core::array::from_fn(|j| &(&self.0[i][0] * &o.0[0][j]) + &(&self.0[i][1] * &o.0[1][j]))
        }))
    }
}

impl<R: Real> Add for &QMat2<R> {
    type Output = QMat2<R>;
    fn add(self, o: &QMat2<R>) -> QMat2<R> {
        QMat2(core::array::from_fn(|i| core::array::from_fn(|j| &self.0[i][j] + &o.0[i][j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::<Exact>::i(), Quaternion::j(), Quaternion::k());
        let minus_one = -&Quaternion::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
    }
}
