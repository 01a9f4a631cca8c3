//! Wigner matrices T^k(g): matrix elements of the (2k+1)-dimensional unitary
//! irreducible representations, satisfying the expansion identity
//! Y_k^m(g⁻¹x) = Σ_{m'} T^k_{m m'}(g) Y_k^{m'}(x) in the z-x-z convention.
//!
//! Internally the little-d matrix is evaluated in the standard z-y-z frame
//! (Jacobi-polynomial closed form per entry); the frame shift
//! Z(γ)X(β)Z(α) = Z(γ−π/2)Y(β)Z(α+π/2) is folded into the phase factors.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use crate::cmat::CMat;
use crate::rotations::EulerAngles;

const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
fn jacobi(n: usize, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut pm1 = 1.0;
    let mut p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) * 0.5;
    for i in 2..=n {
        let nn = i as f64;
        let c1 = 2.0 * nn * (nn + a + b) * (2.0 * nn + a + b - 2.0);
        let c2 = 2.0 * nn + a + b - 1.0;
        let c3 = (2.0 * nn + a + b) * (2.0 * nn + a + b - 2.0);
        let c4 = a * a - b * b;
        let c5 = 2.0 * (nn + a - 1.0) * (nn + b - 1.0) * (2.0 * nn + a + b);
        let next = (c2 * (c3 * x + c4) * p - c5 * pm1) / c1;
        pm1 = p;
        p = next;
    }
    p
}

/// Little-d element d^k_{mp,m}(β) for the rotation exp(−iβJ_y).
fn little_d(k: i64, mp: i64, m: i64, cos_half: f64, sin_half: f64, cos_b: f64) -> f64 {
    let mu = (mp - m).unsigned_abs() as usize;
    let nu = (mp + m).unsigned_abs() as usize;
    let s = (k as usize) - (mu + nu) / 2;
    let sign = if mp > m && (mp - m) % 2 != 0 { -1.0 } else { 1.0 };
    // sqrt( s!/(s+μ)! · (s+μ+ν)!/(s+ν)! ), kept as ratio products
    let mut ratio = 1.0;
    for i in (s + 1)..=(s + mu) {
        ratio /= i as f64;
    }
    for i in (s + nu + 1)..=(s + mu + nu) {
        ratio *= i as f64;
    }
    sign * ratio.sqrt()
        * sin_half.powi(mu as i32)
        * cos_half.powi(nu as i32)
        * jacobi(s, mu as f64, nu as f64, cos_b)
}

/// All little-d matrices for k ≤ kmax at one β. Entry layout per degree k:
/// row-major (2k+1)², index [a·(2k+1)+b] = d^k_{a−k, b−k}.
pub(crate) fn d_stack(kmax: usize, beta: f64) -> Vec<Vec<f64>> {
    let ch = (0.5 * beta).cos();
    let sh = (0.5 * beta).sin();
    let cb = beta.cos();
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let n = 2 * k + 1;
        let ki = k as i64;
        let mut block = Vec::with_capacity(n * n);
        for a in 0..n {
            let mp = a as i64 - ki;
            for b in 0..n {
                let m = b as i64 - ki;
                block.push(little_d(ki, mp, m, ch, sh, cb));
            }
        }
        out.push(block);
    }
    out
}

/// Assemble T^k from a precomputed little-d block of the same k.
pub(crate) fn matrix_from_d(k: usize, d: &[f64], alpha: f64, gamma: f64) -> CMat {
    let n = 2 * k + 1;
    let ki = k as i64;
    let pa: Vec<Complex64> = (0..n)
        .map(|i| Complex64::new(0.0, -((i as i64 - ki) as f64) * (alpha + FRAC_PI_2)).exp())
        .collect();
    let pg: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(0.0, -((j as i64 - ki) as f64) * (gamma - FRAC_PI_2)).exp())
        .collect();
    let mut t = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            // row index carries m, column m'; the d element wants (m', m)
            t[(i, j)] = pa[i] * d[j * n + i] * pg[j];
        }
    }
    t
}

/// T^k(g), the (2k+1)×(2k+1) unitary block.
pub fn wigner_matrix(k: usize, g: &EulerAngles) -> CMat {
    let stack = d_stack(k, g.beta);
    matrix_from_d(k, &stack[k], g.alpha, g.gamma)
}

/// T^0 .. T^kmax at one rotation.
pub fn wigner_stack(kmax: usize, g: &EulerAngles) -> Vec<CMat> {
    let stack = d_stack(kmax, g.beta);
    (0..=kmax)
        .map(|k| matrix_from_d(k, &stack[k], g.alpha, g.gamma))
        .collect()
}
