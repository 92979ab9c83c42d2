//! Coefficient backends.
//!
//! Every algebraic object is generic over a real field `R`; coefficients are
//! `Complex<R>`. Two backends are provided: [`f64`] (floating) and
//! [`BigRational`] (exact). The exact backend compares with `==`, the floating
//! backend compares against a scale-aware tolerance.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Real coefficient field of a backend.
pub trait Real:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` for the rational backend.
    const EXACT: bool;
    /// Backend name used in diagnostics.
    const NAME: &'static str;

    fn from_i64(n: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self;

    /// Converts a finite double. The exact backend keeps the full binary value.
    fn from_f64(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Zero test used by classifiers: exact equality on the rational backend,
    /// `|x| <= tol * max(1, scale)` on the floating one.
    fn negligible(x: &Self, scale: &Self, tol: f64) -> bool {
        if Self::EXACT {
            x.is_zero()
        } else {
            let s = scale.to_f64().abs().max(1.0);
            x.to_f64().abs() <= tol * s
        }
    }
}

impl Real for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Real for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(x: f64) -> Option<Self> {
        if x.is_finite() {
            BigRational::from_float(x)
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Exact backend.
pub type Exact = BigRational;

/// Complex coefficient of backend `R`.
pub type Coeff<R> = Complex<R>;

pub fn real<R: Real>(r: R) -> Complex<R> {
    Complex::new(r, R::zero())
}

pub fn int<R: Real>(n: i64) -> Complex<R> {
    real(R::from_i64(n))
}

pub fn imag_unit<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::one())
}

/// `max(|re|, |im|)`, a norm that stays inside the real field.
pub fn cmag<R: Real>(z: &Complex<R>) -> R {
    R::max_of(z.re.abs(), z.im.abs())
}

pub fn to_c64<R: Real>(z: &Complex<R>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn from_c64<R: Real>(z: Complex<f64>) -> Option<Complex<R>> {
    Some(Complex::new(R::from_f64(z.re)?, R::from_f64(z.im)?))
}

/// Converts between backends through `f64` (lossless when going to `Exact`).
pub fn convert<R: Real, T: Real>(z: &Complex<R>) -> Option<Complex<T>> {
    from_c64(to_c64(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn exact_backend_keeps_binary_value() {
        let r = <Exact as Real>::from_f64(0.1).unwrap();
        assert_ne!(r, Exact::ratio(1, 10));
        assert_eq!(Real::to_f64(&r), 0.1);
        assert!(<Exact as Real>::from_f64(f64::NAN).is_none());
    }

    #[test]
    fn negligible_is_scale_aware() {
        assert!(f64::negligible(&1e-10, &1.0, 1e-9));
        assert!(!f64::negligible(&1e-8, &1.0, 1e-9));
        assert!(f64::negligible(&1e-4, &1e6, 1e-9));
        assert!(!Exact::negligible(&Exact::ratio(1, 1_000_000_000_000), &Exact::one(), 1e-9));
    }
}
