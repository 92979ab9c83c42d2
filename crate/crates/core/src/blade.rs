//! Basis blades of the exterior algebra over a four-dimensional space.

use core::fmt;

use crate::error::{Error, Result};

/// Number of basis vectors.
pub const DIM: usize = 4;
/// Dimension of the full algebra.
pub const ALGEBRA_DIM: usize = 1 << DIM;

/// A canonical basis monomial `e_{i1} ∧ … ∧ e_{ik}` with `i1 < … < ik`,
/// stored as a bit set (bit μ set ⇔ e_μ present).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn new(mask: u8) -> Result<Self> {
        if (mask as usize) < ALGEBRA_DIM {
            Ok(Blade(mask))
        } else {
            Err(Error::InvalidBlade(mask))
        }
    }

    /// Basis vector `e_i`.
    pub fn vector(i: usize) -> Result<Self> {
        if i < DIM {
            Ok(Blade(1 << i))
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }

    pub(crate) const fn from_mask(mask: u8) -> Self {
        Blade(mask & 0b1111)
    }

    /// Canonicalizes the wedge of the listed basis vectors, returning the sign
    /// of the reordering, or `None` when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Result<Option<(i8, Blade)>> {
        let mut acc = (1i8, Blade::SCALAR);
        for &i in indices {
            let b = Blade::vector(i)?;
            let s = acc.1.wedge_sign(b);
            if s == 0 {
                return Ok(None);
            }
            acc = (acc.0 * s, Blade(acc.1 .0 | b.0));
        }
        Ok(Some(acc))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < DIM && self.0 & (1 << i) != 0
    }

    /// Ascending basis indices.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..DIM).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn without(self, i: usize) -> Blade {
        Blade(self.0 & !(1 << i))
    }

    /// Sign of `self ∧ other` relative to the canonical blade, 0 on overlap.
    pub fn wedge_sign(self, other: Blade) -> i8 {
        if self.0 & other.0 != 0 {
            return 0;
        }
        // count pairs (i in self, j in other) with i > j
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        if swaps.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// (−1)^{⌊k/2⌋}
    pub fn reversion_sign(self) -> i8 {
        let k = self.grade();
        if (k / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// (−1)^k
    pub fn involution_sign(self) -> i8 {
        if self.grade().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All sixteen blades in mask order.
    pub fn all() -> impl Iterator<Item = Blade> {
        (0..ALGEBRA_DIM as u8).map(Blade)
    }

    pub fn of_grade(k: usize) -> impl Iterator<Item = Blade> {
        Blade::all().filter(move |b| b.grade() == k)
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Levi-Civita symbol with ε_{0123} = +1.
pub fn levi_civita(mu: usize, nu: usize, rho: usize, sigma: usize) -> Result<i8> {
    let idx = [mu, nu, rho, sigma];
    if let Some(&bad) = idx.iter().find(|&&i| i >= DIM) {
        return Err(Error::IndexOutOfRange(bad));
    }
    Ok(match Blade::from_indices(&idx)? {
        Some((sign, _)) => sign,
        None => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let e1 = Blade::vector(1).unwrap();
        let e2 = Blade::vector(2).unwrap();
        assert_eq!(e1.wedge_sign(e2), 1);
        assert_eq!(e2.wedge_sign(e1), -1);
        assert_eq!(e1.wedge_sign(e1), 0);
        assert_eq!(Blade::from_indices(&[3, 0, 1]).unwrap(), Some((1, Blade(0b1011))));
        assert_eq!(Blade::from_indices(&[2, 1]).unwrap(), Some((-1, Blade(0b0110))));
        assert_eq!(Blade::from_indices(&[2, 2]).unwrap(), None);
    }

    #[test]
    fn reversion_table() {
        let signs: [i8; 5] = core::array::from_fn(|k| Blade::of_grade(k).next().unwrap().reversion_sign());
        assert_eq!(signs, [1, 1, -1, -1, 1]);
    }

    #[test]
    fn levi_civita_symbol() {
        assert_eq!(levi_civita(0, 1, 2, 3).unwrap(), 1);
        assert_eq!(levi_civita(1, 0, 2, 3).unwrap(), -1);
        assert_eq!(levi_civita(0, 0, 2, 3).unwrap(), 0);
        assert_eq!(levi_civita(3, 2, 1, 0).unwrap(), 1);
        assert_eq!(levi_civita(1, 2, 3, 0).unwrap(), -1);
        assert!(matches!(levi_civita(0, 1, 2, 4), Err(Error::IndexOutOfRange(4))));
    }

    #[test]
    fn invalid_blade() {
        assert!(Blade::new(16).is_err());
        assert!(Blade::vector(4).is_err());
        assert_eq!(alloc::format!("{}", Blade::new(0b1101).unwrap()), "e023");
    }
}
