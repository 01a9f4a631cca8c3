//! Discrete analysis of transform samples on a weighted lattice, and the
//! bandwidth/density bookkeeping that ties lattice resolution to the largest
//! trustworthy degree.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use crate::error::Error;
use crate::harmonics::sphere::sph_harm_table;
use crate::harmonics::spectrum::{PairSpectrum, SO3Spectrum};
use crate::radon::radon_invert;
use crate::sampling::cubature::{CubatureLattice, CubatureWeights};
use crate::sampling::lattice::LatticePoints;
use crate::Result;

/// Default constant c in the density rule ρ = c·(k(k+1)+1)^{-1/2}.
pub const DEFAULT_DENSITY_CONSTANT: f64 = 0.7;

/// Lattice density fine enough to resolve bandwidth `k` with constant `c`.
pub fn rho_for_bandwidth(k: usize, c: f64) -> f64 {
    let kk = (k * (k + 1)) as f64;
    c / (kk + 1.0).sqrt()
}

/// Largest per-sphere tensor degree the density ρ supports under the same
/// rule: the bandwidth k is the largest with k(k+1) ≤ (c/ρ)² − 1, and the
/// analysis integrand needs degree 2k.
pub fn degree_for_rho(rho: f64, c: f64) -> usize {
    let omega = (c / rho) * (c / rho) - 1.0;
    let mut k = 0usize;
    while ((k + 1) * (k + 2)) as f64 <= omega + 1e-9 {
        k += 1;
    }
    2 * k
}

/// Tensor degree of conj(Y^i_k) ⊗ Y^j_k products: analysis at bandwidth k
/// needs cubature exact through 2k on each sphere.
pub fn required_product_degree(bandwidth: usize) -> usize {
    2 * bandwidth
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscreteReport {
    pub sample_count: usize,
    /// Dimension of the tensor polynomial space the cubature must integrate.
    pub space_dim: usize,
}

fn flat_tables(
    pts: &[crate::harmonics::sphere::S2Point],
    bandwidth: usize,
) -> Result<Vec<Vec<Complex64>>> {
    pts.iter()
        .map(|p| {
            let t = sph_harm_table(bandwidth, p.theta, p.phi)?;
            Ok(t.into_iter().flatten().collect())
        })
        .collect()
}

/// Recover pair-space coefficients through `bandwidth` from samples of a
/// transform field at the cubature nodes (x-major order for product
/// lattices). Requires cubature degree ≥ 2·bandwidth.
pub fn discrete_coefficients(
    cub: &CubatureLattice,
    values: &[Complex64],
    bandwidth: usize,
) -> Result<(PairSpectrum, DiscreteReport)> {
    if values.len() != cub.len() {
        return Err(Error::Shape {
            what: "sample vector",
            expected: cub.len(),
            got: values.len(),
        });
    }
    let needed = required_product_degree(bandwidth);
    if cub.degree < needed {
        return Err(Error::DegreeDeficiency {
            needed,
            got: cub.degree,
        });
    }
    let kdim = (bandwidth + 1) * (bandwidth + 1);
    let mut out = PairSpectrum::zeros(bandwidth);
    match (&cub.weights, &cub.lattice.points) {
        (CubatureWeights::Factored { wx, wy }, LatticePoints::Product { xs, ys }) => {
            let tx = flat_tables(xs, bandwidth)?;
            let ty = flat_tables(ys, bandwidth)?;
            let ny = ys.len();
            let mut partial = vec![Complex64::new(0.0, 0.0); kdim];
            for (a, ta) in tx.iter().enumerate() {
                for v in partial.iter_mut() {
                    *v = Complex64::new(0.0, 0.0);
                }
                let row = &values[a * ny..(a + 1) * ny];
                for (b, tb) in ty.iter().enumerate() {
                    let s = row[b] * wy[b];
                    for (v, yb) in partial.iter_mut().zip(tb.iter()) {
                        *v += s * yb;
                    }
                }
                let wa = wx[a];
                for k in 0..=bandwidth {
                    let base = k * k;
                    let n = 2 * k + 1;
                    let block = out.block_mut(k);
                    for i in 0..n {
                        let cx = (wa * ta[base + i].conj()) * Complex64::new(1.0, 0.0);
                        for j in 0..n {
                            block[(i, j)] += cx * partial[base + j];
                        }
                    }
                }
            }
        }
        (CubatureWeights::Dense(w), LatticePoints::Pairs(pairs)) => {
            for ((x, y), (wv, val)) in pairs.iter().zip(w.iter().zip(values.iter())) {
                let tx: Vec<Complex64> = sph_harm_table(bandwidth, x.theta, x.phi)?
                    .into_iter()
                    .flatten()
                    .collect();
                let ty: Vec<Complex64> = sph_harm_table(bandwidth, y.theta, y.phi)?
                    .into_iter()
                    .flatten()
                    .collect();
                let s = *val * *wv;
                for k in 0..=bandwidth {
                    let base = k * k;
                    let n = 2 * k + 1;
                    let block = out.block_mut(k);
                    for i in 0..n {
                        let cx = s * tx[base + i].conj();
                        for j in 0..n {
                            block[(i, j)] += cx * ty[base + j];
                        }
                    }
                }
            }
        }
        _ => unreachable!("weights always match the lattice layout"),
    }
    let dim2 = (needed + 1) * (needed + 1);
    let report = DiscreteReport {
        sample_count: cub.len(),
        space_dim: dim2 * dim2,
    };
    Ok((out, report))
}

/// Full discrete inversion: recover the function on rotations whose
/// transform produced the samples.
pub fn discrete_invert(
    cub: &CubatureLattice,
    values: &[Complex64],
    bandwidth: usize,
) -> Result<(SO3Spectrum, DiscreteReport)> {
    let (coef, report) = discrete_coefficients(cub, values, bandwidth)?;
    Ok((radon_invert(&coef), report))
}
