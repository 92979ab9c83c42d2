use core::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{cmag, Real};

/// 4×4 complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat4<R: Real>(pub [[Complex<R>; 4]; 4]);

impl<R: Real> CMat4<R> {
    pub fn zero() -> Self {
        CMat4(core::array::from_fn(|_| core::array::from_fn(|_| Complex::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = Complex::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex<R>>(mut f: F) -> Self {
        CMat4(core::array::from_fn(|i| core::array::from_fn(|j| f(i, j))))
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex<R> {
        &self.0[i][j]
    }

    pub fn scale(&self, c: &Complex<R>) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() * c.clone())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn trace(&self) -> Complex<R> {
        (0..4).fold(Complex::zero(), |acc, i| acc + self.0[i][i].clone())
    }

    pub fn column(&self, j: usize) -> [Complex<R>; 4] {
        core::array::from_fn(|i| self.0[i][j].clone())
    }

    pub fn max_abs(&self) -> R {
        self.0.iter().flatten().map(cmag).fold(R::zero(), R::max_of)
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.max_abs().to_f64()
    }

    /// `M v`
    pub fn apply(&self, v: &[Complex<R>; 4]) -> [Complex<R>; 4] {
        core::array::from_fn(|i| {
            (0..4).fold(Complex::zero(), |acc, k| acc + self.0[i][k].clone() * v[k].clone())
        })
    }
}

impl<R: Real> Mul for &CMat4<R> {
    type Output = CMat4<R>;
    fn mul(self, rhs: &CMat4<R>) -> CMat4<R> {
        CMat4::from_fn(|i, j| {
            (0..4).fold(Complex::zero(), |acc, k| acc + self.0[i][k].clone() * rhs.0[k][j].clone())
        })
    }
}

impl<R: Real> Add for &CMat4<R> {
    type Output = CMat4<R>;
    fn add(self, rhs: &CMat4<R>) -> CMat4<R> {
        CMat4::from_fn(|i, j| self.0[i][j].clone() + rhs.0[i][j].clone())
    }
}

impl<R: Real> Sub for &CMat4<R> {
    type Output = CMat4<R>;
    fn sub(self, rhs: &CMat4<R>) -> CMat4<R> {
        CMat4::from_fn(|i, j| self.0[i][j].clone() - rhs.0[i][j].clone())
    }
}

/// Hermitian form `a† M b`.
pub fn sandwich<R: Real>(a: &[Complex<R>; 4], m: &CMat4<R>, b: &[Complex<R>; 4]) -> Complex<R> {
    let mb = m.apply(b);
    (0..4).fold(Complex::zero(), |acc, i| acc + a[i].conj() * mb[i].clone())
}

/// Rank of a set of coefficient vectors by Gaussian elimination. Pivots with
/// magnitude `≤ tol·max(1, max entry)` count as zero on the floating backend;
/// the exact backend ignores `tol`.
pub fn rank<R: Real>(vectors: &[alloc::vec::Vec<Complex<R>>], tol: f64) -> usize {
    let mut rows: alloc::vec::Vec<alloc::vec::Vec<Complex<R>>> = vectors.to_vec();
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let scale = rows
        .iter()
        .flatten()
        .map(|c| cmag(c).to_f64())
        .fold(1.0, f64::max);
    let is_zero = |c: &Complex<R>| {
        if R::EXACT {
            c.is_zero()
        } else {
            cmag(c).to_f64() <= tol * scale
        }
    };
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len())
            .filter(|&r| col < rows[r].len() && !is_zero(&rows[r][col]))
            .max_by(|&a, &b| {
                cmag(&rows[a][col])
                    .partial_cmp(&cmag(&rows[b][col]))
                    .unwrap_or(core::cmp::Ordering::Equal)
            });
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let pv = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r == rank || col >= rows[r].len() || rows[r][col].is_zero() {
                continue;
            }
            let k = rows[r][col].clone() / pv.clone();
            for c in col..ncols {
                let sub = rows[rank].get(c).cloned().unwrap_or_else(Complex::zero) * k.clone();
                if c < rows[r].len() {
                    rows[r][c] = rows[r][c].clone() - sub;
                }
            }
        }
        rank += 1;
    }
    rank
}
