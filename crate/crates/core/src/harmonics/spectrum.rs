//! Band-limited spectra on the rotation group and on S²×S², with analysis,
//! synthesis, and the blockwise operators (Laplacian, translation,
//! convolution) that act on them.
//!
//! Storage convention (plain coefficients): a rotation-group spectrum holds
//! the numbers f̂(k)_{ij} of the expansion f(g) = Σ_k Σ_{ij} f̂(k)_{ij}
//! T^k_{ij}(g), so analysis is f̂(k)_{ij} = (2k+1)·∫ f·conj(T^k_{ij}) dg and
//! the squared L² norm is Σ_k ‖f̂(k)‖²_HS/(2k+1). A pair spectrum holds
//! Ĝ(k)_{ij} of G(x,y) = Σ Ĝ(k)_{ij} Y_k^i(x) conj(Y_k^j(y)) in the
//! orthonormal harmonic basis, where the squared L² norm is plain Σ ‖Ĝ‖²_HS.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::quadrature::{require_rule, QuadratureNodes, QuadratureRule};
use super::sphere::{sph_harm_table, S2Point};
use super::wigner::{d_stack, matrix_from_d};
use crate::cmat::CMat;
use crate::error::Error;
use crate::rotations::EulerAngles;
use crate::Result;

/// Block-diagonal spectrum of a function on the rotation group.
#[derive(Debug, Clone, PartialEq)]
pub struct SO3Spectrum {
    bandwidth: usize,
    blocks: Vec<CMat>,
}

impl SO3Spectrum {
    pub fn zeros(bandwidth: usize) -> Self {
        SO3Spectrum {
            bandwidth,
            blocks: (0..=bandwidth).map(|k| CMat::zeros(2 * k + 1)).collect(),
        }
    }

    /// The uniform density: f̂(0) = [[1]], nothing else.
    pub fn uniform(bandwidth: usize) -> Self {
        let mut f = SO3Spectrum::zeros(bandwidth);
        f.blocks[0][(0, 0)] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn from_blocks(blocks: Vec<CMat>) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            if b.dim() != 2 * k + 1 {
                return Err(Error::Shape {
                    what: "spectrum block",
                    expected: 2 * k + 1,
                    got: b.dim(),
                });
            }
        }
        Ok(SO3Spectrum {
            bandwidth: blocks.len() - 1,
            blocks,
        })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut CMat {
        &mut self.blocks[k]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    /// Squared L² norm over normalized Haar measure.
    pub fn l2_norm_sq(&self) -> f64 {
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| b.frobenius_sq() / (2 * k + 1) as f64)
            .sum()
    }

    /// Largest entrywise difference across all blocks.
    pub fn max_block_diff(&self, rhs: &SO3Spectrum) -> f64 {
        let mut d: f64 = 0.0;
        let kmax = self.bandwidth.max(rhs.bandwidth);
        for k in 0..=kmax {
            let n = 2 * k + 1;
            let z = CMat::zeros(n);
            let a = if k <= self.bandwidth { &self.blocks[k] } else { &z };
            let b = if k <= rhs.bandwidth { &rhs.blocks[k] } else { &z };
            d = d.max(a.max_abs_diff(b));
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }
}

/// Spectrum of a degree-diagonal function on S²×S².
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpectrum {
    bandwidth: usize,
    blocks: Vec<CMat>,
}

impl PairSpectrum {
    pub fn zeros(bandwidth: usize) -> Self {
        PairSpectrum {
            bandwidth,
            blocks: (0..=bandwidth).map(|k| CMat::zeros(2 * k + 1)).collect(),
        }
    }

    pub fn from_blocks(blocks: Vec<CMat>) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            if b.dim() != 2 * k + 1 {
                return Err(Error::Shape {
                    what: "spectrum block",
                    expected: 2 * k + 1,
                    got: b.dim(),
                });
            }
        }
        Ok(PairSpectrum {
            bandwidth: blocks.len() - 1,
            blocks,
        })
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn block_mut(&mut self, k: usize) -> &mut CMat {
        &mut self.blocks[k]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    /// Squared L² norm over Lebesgue×Lebesgue measure.
    pub fn l2_norm_sq(&self) -> f64 {
        self.blocks.iter().map(|b| b.frobenius_sq()).sum()
    }

    pub fn max_block_diff(&self, rhs: &PairSpectrum) -> f64 {
        let mut d: f64 = 0.0;
        let kmax = self.bandwidth.max(rhs.bandwidth);
        for k in 0..=kmax {
            let n = 2 * k + 1;
            let z = CMat::zeros(n);
            let a = if k <= self.bandwidth { &self.blocks[k] } else { &z };
            let b = if k <= rhs.bandwidth { &rhs.blocks[k] } else { &z };
            d = d.max(a.max_abs_diff(b));
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(|b| b.max_abs()).fold(0.0, f64::max)
    }
}

/// Evaluate the spectrum at one rotation.
pub fn synth_so3(f: &SO3Spectrum, g: &EulerAngles) -> Complex64 {
    let stack = d_stack(f.bandwidth, g.beta);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=f.bandwidth {
        let t = matrix_from_d(k, &stack[k], g.alpha, g.gamma);
        let fb = f.block(k);
        for (a, b) in fb.data().iter().zip(t.data().iter()) {
            acc += a * b;
        }
    }
    acc
}

/// Evaluate at many rotations, reusing the little-d stack over runs of equal
/// β (quadrature node lists keep β slowest-varying for exactly this reason).
pub fn synth_so3_many(f: &SO3Spectrum, nodes: &[EulerAngles]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(nodes.len());
    let mut cached_beta = f64::NAN;
    let mut stack: Vec<Vec<f64>> = Vec::new();
    for g in nodes {
        if g.beta != cached_beta {
            stack = d_stack(f.bandwidth, g.beta);
            cached_beta = g.beta;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=f.bandwidth {
            let t = matrix_from_d(k, &stack[k], g.alpha, g.gamma);
            for (a, b) in f.block(k).data().iter().zip(t.data().iter()) {
                acc += a * b;
            }
        }
        out.push(acc);
    }
    out
}

/// Matrix coefficients from samples on the nodes of a rotation-group rule:
/// f̂(k)_{ij} = (2k+1)·Σ_ν w_ν f(g_ν) conj(T^k_{ij}(g_ν)).
///
/// The rule must be exact to degree 2K (analysis of a degree-K function
/// multiplies two degree-K factors).
pub fn analyze_so3(
    samples: &[Complex64],
    rule: &QuadratureRule,
    bandwidth: usize,
) -> Result<SO3Spectrum> {
    require_rule(rule, "SO3", 2 * bandwidth)?;
    let nodes = match &rule.nodes {
        QuadratureNodes::Rotations(v) => v,
        _ => unreachable!(),
    };
    if samples.len() != nodes.len() {
        return Err(Error::Shape {
            what: "sample vector",
            expected: nodes.len(),
            got: samples.len(),
        });
    }
    let mut f = SO3Spectrum::zeros(bandwidth);
    let mut cached_beta = f64::NAN;
    let mut stack: Vec<Vec<f64>> = Vec::new();
    for ((g, w), s) in nodes.iter().zip(rule.weights.iter()).zip(samples.iter()) {
        if g.beta != cached_beta {
            stack = d_stack(bandwidth, g.beta);
            cached_beta = g.beta;
        }
        let ws = *w * s;
        for k in 0..=bandwidth {
            let t = matrix_from_d(k, &stack[k], g.alpha, g.gamma);
            for (fe, te) in f.block_mut(k).data_mut().iter_mut().zip(t.data().iter()) {
                *fe += ws * te.conj();
            }
        }
    }
    for k in 0..=bandwidth {
        let scale = (2 * k + 1) as f64;
        for fe in f.block_mut(k).data_mut() {
            *fe *= scale;
        }
    }
    Ok(f)
}

/// Spectral Laplacian: block k scaled by −k(k+1).
pub fn laplacian_so3(f: &SO3Spectrum) -> SO3Spectrum {
    let blocks = f
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| b.scaled_re(-((k * (k + 1)) as f64)))
        .collect();
    SO3Spectrum {
        bandwidth: f.bandwidth,
        blocks,
    }
}

/// Spectrum of g ↦ f(g·g₀): blocks become T^k(g₀)ᵀ·f̂(k).
pub fn translate_right(f: &SO3Spectrum, g0: &EulerAngles) -> SO3Spectrum {
    let stack = d_stack(f.bandwidth, g0.beta);
    let blocks = f
        .blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            matrix_from_d(k, &stack[k], g0.alpha, g0.gamma)
                .transpose()
                .mul(b)
        })
        .collect();
    SO3Spectrum {
        bandwidth: f.bandwidth,
        blocks,
    }
}

/// Spectrum of the group convolution (f∗r)(g) = ∫ f(h) r(h⁻¹g) dh:
/// blockwise r̂(k)·f̂(k)/(2k+1).
pub fn convolve(f: &SO3Spectrum, r: &SO3Spectrum) -> SO3Spectrum {
    let kmax = f.bandwidth.min(r.bandwidth);
    let blocks = (0..=kmax)
        .map(|k| r.block(k).mul(f.block(k)).scaled_re(1.0 / (2 * k + 1) as f64))
        .collect();
    SO3Spectrum {
        bandwidth: kmax,
        blocks,
    }
}

/// Project onto the spectra of real-valued functions: averages f̂ with its
/// reality partner f̂'(k)[−m_i, −m_j] = (−1)^{m_i−m_j} conj(f̂(k)[m_i, m_j]).
pub fn symmetrize_real(f: &SO3Spectrum) -> SO3Spectrum {
    let mut out = f.clone();
    for k in 0..=f.bandwidth {
        let n = 2 * k + 1;
        let src = f.block(k);
        let dst = out.block_mut(k);
        for i in 0..n {
            let mi = i as i64 - k as i64;
            for j in 0..n {
                let mj = j as i64 - k as i64;
                let sign = if (mi - mj).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let partner = sign * src[(n - 1 - i, n - 1 - j)].conj();
                dst[(i, j)] = 0.5 * (src[(i, j)] + partner);
            }
        }
    }
    out
}

/// Evaluate a pair spectrum at one point pair.
pub fn pair_eval(g: &PairSpectrum, x: &S2Point, y: &S2Point) -> Result<Complex64> {
    let tx = sph_harm_table(g.bandwidth, x.theta, x.phi)?;
    let ty = sph_harm_table(g.bandwidth, y.theta, y.phi)?;
    Ok(pair_eval_tables(g, &tx, &ty))
}

/// Same, against precomputed harmonic tables (must reach the bandwidth).
pub fn pair_eval_tables(
    g: &PairSpectrum,
    tx: &[Vec<Complex64>],
    ty: &[Vec<Complex64>],
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=g.bandwidth {
        let b = g.block(k);
        let n = 2 * k + 1;
        for i in 0..n {
            let yx = tx[k][i];
            if yx.re == 0.0 && yx.im == 0.0 {
                continue;
            }
            for j in 0..n {
                acc += b[(i, j)] * yx * ty[k][j].conj();
            }
        }
    }
    acc
}

/// Coefficients of a degree-diagonal function on S²×S² from samples on the
/// tensor grid of one sphere rule (x fastest over rule nodes for fixed y:
/// value layout is row-major in (x index, y index)).
pub fn analyze_pair(
    values: &[Complex64],
    rule: &QuadratureRule,
    bandwidth: usize,
) -> Result<PairSpectrum> {
    require_rule(rule, "S2", 2 * bandwidth)?;
    let nodes = match &rule.nodes {
        QuadratureNodes::Sphere(v) => v,
        _ => unreachable!(),
    };
    let n = nodes.len();
    if values.len() != n * n {
        return Err(Error::Shape {
            what: "pair sample matrix",
            expected: n * n,
            got: values.len(),
        });
    }
    let tables: Vec<_> = nodes
        .iter()
        .map(|p| sph_harm_table(bandwidth, p.theta, p.phi))
        .collect::<Result<_>>()?;
    // first contract over y, then over x
    let dim: usize = (0..=bandwidth).map(|k| 2 * k + 1).sum();
    let mut partial = alloc::vec![Complex64::new(0.0, 0.0); n * dim];
    for ix in 0..n {
        for (iy, wy) in rule.weights.iter().enumerate() {
            let v = *wy * values[ix * n + iy];
            let ty = &tables[iy];
            let mut off = 0;
            for k in 0..=bandwidth {
                for j in 0..(2 * k + 1) {
                    partial[ix * dim + off + j] += v * ty[k][j];
                }
                off += 2 * k + 1;
            }
        }
    }
    let mut out = PairSpectrum::zeros(bandwidth);
    for (ix, wx) in rule.weights.iter().enumerate() {
        let tx = &tables[ix];
        let mut off = 0;
        for k in 0..=bandwidth {
            let b = out.block_mut(k);
            for i in 0..(2 * k + 1) {
                let cx = *wx * tx[k][i].conj();
                for j in 0..(2 * k + 1) {
                    b[(i, j)] += cx * partial[ix * dim + off + j];
                }
            }
            off += 2 * k + 1;
        }
    }
    Ok(out)
}
