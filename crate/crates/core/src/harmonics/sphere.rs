//! Complex orthonormal spherical harmonics.
//!
//! Normalization: ∫_{S²} Y_k^m conj(Y_l^n) dx = δ_{kl} δ_{mn} with the plain
//! Lebesgue measure (total 4π), Condon-Shortley phase included, so that the
//! zonal value at the north pole is Y_k^0 = sqrt((2k+1)/4π) and Y_k^m
//! vanishes there for m ≠ 0.

use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use super::legendre::{assoc_legendre, assoc_legendre_table};
use crate::error::Error;
use crate::vec3;
use crate::Result;

const PI: f64 = core::f64::consts::PI;

/// Colatitude/longitude coordinates, θ ∈ [0, π] measured from the north pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S2Point {
    pub theta: f64,
    pub phi: f64,
}

impl S2Point {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain {
                what: "colatitude",
                value: theta,
            });
        }
        Ok(S2Point { theta, phi })
    }

    pub fn to_vec(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn from_vec(v: [f64; 3]) -> Self {
        let u = vec3::unit(v).unwrap_or([0.0, 0.0, 1.0]);
        S2Point {
            theta: (u[0] * u[0] + u[1] * u[1]).sqrt().atan2(u[2]),
            phi: {
                let p = u[1].atan2(u[0]);
                if p < 0.0 {
                    p + 2.0 * PI
                } else {
                    p
                }
            },
        }
    }
}

/// sqrt((2k+1)/(4π) · (k−m)!/(k+m)!) for 0 ≤ m ≤ k, by a ratio product that
/// never overflows.
fn norm_factor(k: usize, m: usize) -> f64 {
    let mut ratio = 1.0;
    for j in (k - m + 1)..=(k + m) {
        ratio /= j as f64;
    }
    ((2 * k + 1) as f64 / (4.0 * PI) * ratio).sqrt()
}

/// Y_k^m(θ, φ). Negative m via Y_k^{−m} = (−1)^m conj(Y_k^m).
pub fn sph_harm(k: usize, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    let ka = k as i64;
    if m.abs() > ka {
        return Err(Error::Index {
            what: "harmonic order",
            index: m,
            limit: ka,
        });
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            what: "colatitude",
            value: theta,
        });
    }
    let ma = m.unsigned_abs() as usize;
    let p = assoc_legendre(k, ma, theta.cos())?;
    let base = norm_factor(k, ma) * p;
    let phase = Complex64::new(0.0, m as f64 * phi).exp();
    if m >= 0 {
        Ok(base * phase)
    } else {
        // (−1)^m conj of the positive-order value; the conj is the phase flip
        // already encoded by exp(imφ) with m < 0
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * base * phase)
    }
}

/// All Y_k^m(θ, φ) for k ≤ kmax, indexed [k][m + k].
pub fn sph_harm_table(kmax: usize, theta: f64, phi: f64) -> Result<Vec<Vec<Complex64>>> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            what: "colatitude",
            value: theta,
        });
    }
    let legendre = assoc_legendre_table(kmax, theta.cos())?;
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let mut row = Vec::with_capacity(2 * k + 1);
        for mm in -(k as i64)..=(k as i64) {
            let ma = mm.unsigned_abs() as usize;
            let base = norm_factor(k, ma) * legendre[k][ma];
            let phase = Complex64::new(0.0, mm as f64 * phi).exp();
            let sign = if mm < 0 && ma % 2 == 1 { -1.0 } else { 1.0 };
            row.push(sign * base * phase);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::legendre::legendre_p;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_point(rng: &mut ChaCha8Rng) -> S2Point {
        S2Point {
            theta: (1.0 - 2.0 * rng.gen::<f64>()).acos(),
            phi: 2.0 * PI * rng.gen::<f64>(),
        }
    }

    #[test]
    fn constant_harmonic() {
        let v = sph_harm(0, 0, 1.1, 2.2).unwrap();
        assert!((v.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn pole_values() {
        for k in 0..=6usize {
            let zonal = sph_harm(k, 0, 0.0, 0.0).unwrap();
            let expect = ((2 * k + 1) as f64 / (4.0 * PI)).sqrt();
            assert!((zonal.re - expect).abs() < 1e-14);
            for m in 1..=(k as i64) {
                assert!(sph_harm(k, m, 0.0, 0.3).unwrap().norm() < 1e-15);
                assert!(sph_harm(k, -m, 0.0, 0.3).unwrap().norm() < 1e-15);
            }
        }
    }

    #[test]
    fn addition_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let x = rand_point(&mut rng);
            let y = rand_point(&mut rng);
            let k = rng.gen_range(0..=8usize);
            let tx = sph_harm_table(k, x.theta, x.phi).unwrap();
            let ty = sph_harm_table(k, y.theta, y.phi).unwrap();
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..(2 * k + 1) {
                s += tx[k][i] * ty[k][i].conj();
            }
            let dot = crate::vec3::dot(x.to_vec(), y.to_vec()).clamp(-1.0, 1.0);
            let expect = (2 * k + 1) as f64 / (4.0 * PI) * legendre_p(k, dot);
            assert!((s - Complex64::new(expect, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..100 {
            let x = rand_point(&mut rng);
            let anti = S2Point::from_vec(crate::vec3::scale(x.to_vec(), -1.0));
            for k in 0..=6usize {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                for m in -(k as i64)..=(k as i64) {
                    let a = sph_harm(k, m, anti.theta, anti.phi).unwrap();
                    let b = sph_harm(k, m, x.theta, x.phi).unwrap();
                    assert!((a - sign * b).norm() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let x = rand_point(&mut rng);
            for k in 0..=5usize {
                for m in 0..=(k as i64) {
                    let plus = sph_harm(k, m, x.theta, x.phi).unwrap();
                    let minus = sph_harm(k, -m, x.theta, x.phi).unwrap();
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((minus - sign * plus.conj()).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn table_matches_single() {
        let (theta, phi) = (1.234, 4.321);
        let table = sph_harm_table(6, theta, phi).unwrap();
        for k in 0..=6usize {
            for m in -(k as i64)..=(k as i64) {
                let idx = (m + k as i64) as usize;
                let single = sph_harm(k, m, theta, phi).unwrap();
                assert!((table[k][idx] - single).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn domain_checks() {
        assert!(sph_harm(2, 3, 0.5, 0.0).is_err());
        assert!(sph_harm(2, 1, -0.1, 0.0).is_err());
        assert!(sph_harm(2, 1, 3.2, 0.0).is_err());
        assert!(S2Point::new(3.2, 0.0).is_err());
    }

    #[test]
    fn coordinate_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let x = rand_point(&mut rng);
            let back = S2Point::from_vec(x.to_vec());
            assert!(crate::vec3::norm(crate::vec3::sub(back.to_vec(), x.to_vec())) < 1e-12);
        }
    }
}
