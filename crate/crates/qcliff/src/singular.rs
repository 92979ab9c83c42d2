//! Columns whose B-spinor is singular (`σ_B = ω_B = 0`), found by
//! Gauss-Newton on the sesquilinear forms `σ_B(c) = c†M_σc`, `ω_B(c) = c†M_ωc`.

use num_complex::Complex64;
use qcliff_core::matrix::{sandwich, CMat4};
use qcliff_core::quantum::QuantumContext;
use qcliff_core::ColumnSpinor;
use rand::Rng;

use crate::sampling::random_column;

/// Residual vector `(Re σ_B, Im σ_B, Re ω_B, Im ω_B)` for a unit column.
fn residual(ms: &CMat4<f64>, mo: &CMat4<f64>, c: &[Complex64; 4]) -> [f64; 4] {
    let s = sandwich(c, ms, c);
    let o = sandwich(c, mo, c);
    [s.re, s.im, o.re, o.im]
}

/// Row of partial derivatives of `c†Mc` with respect to `(Re c_k, Im c_k)`.
fn gradient(m: &CMat4<f64>, c: &[Complex64; 4]) -> [Complex64; 8] {
    let mc = m.apply(c);
    let cm: [Complex64; 4] = std::array::from_fn(|k| (0..4).map(|i| c[i].conj() * m.0[i][k]).sum());
    let i = Complex64::i();
    std::array::from_fn(|j| {
        let k = j / 2;
        if j % 2 == 0 {
            mc[k] + cm[k]
        } else {
            -i * mc[k] + i * cm[k]
        }
    })
}

/// Solves the 4×4 system `m x = b` by partial pivoting.
fn solve4(mut m: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let p = (col..4).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[p][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, p);
        b.swap(col, p);
        for r in col + 1..4 {
            let k = m[r][col] / m[col][col];
            for c in col..4 {
                m[r][c] -= k * m[col][c];
            }
            b[r] -= k * b[col];
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|c| m[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / m[r][r];
    }
    Some(x)
}

fn normalize(c: &mut [Complex64; 4]) {
    let n = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in c.iter_mut() {
        *z /= n;
    }
}

/// Minimum-norm Gauss-Newton from `start`, renormalizing after each step (the
/// equations are homogeneous). Returns the unit column once the residual is
/// below `1e-14·max(|M_σ|, |M_ω|)`.
pub fn solve_from(ctx: &QuantumContext<f64>, start: &ColumnSpinor<f64>, max_iter: usize) -> Option<ColumnSpinor<f64>> {
    let (ms, mo) = ctx.sesquilinear_sigma_omega();
    let target = 1e-14 * ms.max_abs().max(mo.max_abs()).max(1.0);
    let mut c = start.components;
    normalize(&mut c);
    for _ in 0..max_iter {
        let r = residual(&ms, &mo, &c);
        if r.iter().all(|x| x.abs() <= target) {
            return Some(ColumnSpinor::new(c));
        }
        let gs = gradient(&ms, &c);
        let go = gradient(&mo, &c);
        let jac: [[f64; 8]; 4] = [
            gs.map(|z| z.re),
            gs.map(|z| z.im),
            go.map(|z| z.re),
            go.map(|z| z.im),
        ];
        let jjt: [[f64; 4]; 4] =
            std::array::from_fn(|a| std::array::from_fn(|b| (0..8).map(|k| jac[a][k] * jac[b][k]).sum()));
        let y = solve4(jjt, r)?;
        for (k, z) in c.iter_mut().enumerate() {
            let dre: f64 = (0..4).map(|a| jac[a][2 * k] * y[a]).sum();
            let dim: f64 = (0..4).map(|a| jac[a][2 * k + 1] * y[a]).sum();
            *z -= Complex64::new(dre, dim);
        }
        normalize(&mut c);
    }
    None
}

/// Tries up to `attempts` random starts.
pub fn find_singular_b(ctx: &QuantumContext<f64>, rng: &mut impl Rng, attempts: usize) -> Option<ColumnSpinor<f64>> {
    (0..attempts).find_map(|_| solve_from(ctx, &random_column(rng), 60))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_a, rng_for};

    #[test]
    fn converges_to_vanishing_sigma_and_omega() {
        for i in 0..5 {
            let mut rng = rng_for(3, i);
            let ctx = QuantumContext::new(random_a(&mut rng, 1.0));
            let c = find_singular_b(&ctx, &mut rng, 8).expect("solution");
            let q = ctx.compute(&c).unwrap();
            assert!(q.total.sigma.norm() < 1e-12);
            assert!(q.total.omega.norm() < 1e-12);
        }
    }
}
