//! Quadrature rules: Gauss-Legendre on [−1, 1] and the product rules built
//! from it on the sphere (Lebesgue measure, total 4π) and the rotation group
//! (normalized Haar measure, total 1).

use alloc::vec::Vec;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use super::legendre::legendre_p;
use super::sphere::S2Point;
use crate::error::Error;
use crate::rotations::EulerAngles;
use crate::Result;

const PI: f64 = core::f64::consts::PI;

/// Nodes live either on the sphere or on the rotation group.
#[derive(Debug, Clone)]
pub enum QuadratureNodes {
    Sphere(Vec<S2Point>),
    Rotations(Vec<EulerAngles>),
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: QuadratureNodes,
    pub weights: Vec<f64>,
    /// Largest basis degree integrated exactly (harmonic degree on the
    /// sphere, representation degree on the rotation group).
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn space(&self) -> &'static str {
        match self.nodes {
            QuadratureNodes::Sphere(_) => "S2",
            QuadratureNodes::Rotations(_) => "SO3",
        }
    }
}

/// Gauss-Legendre nodes and weights on [−1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let p = legendre_p(n, x);
            let pm1 = legendre_p(n - 1, x);
            // (1−x²) P_n' = n (P_{n−1} − x P_n)
            dp = n as f64 * (pm1 - x * p) / (1.0 - x * x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// Product rule exact for all spherical harmonics of degree ≤ 2K:
/// Gauss-Legendre (K+1 points) in cos θ crossed with a uniform 2K+1-point
/// grid in φ. Weights sum to 4π.
pub fn sphere_quadrature(bandwidth: usize) -> QuadratureRule {
    let k = bandwidth;
    let (gl_nodes, gl_weights) = gauss_legendre(k + 1);
    let nphi = 2 * k + 1;
    let wphi = 2.0 * PI / nphi as f64;
    let mut nodes = Vec::with_capacity((k + 1) * nphi);
    let mut weights = Vec::with_capacity((k + 1) * nphi);
    for (ct, wt) in gl_nodes.iter().zip(gl_weights.iter()) {
        let theta = ct.clamp(-1.0, 1.0).acos();
        for j in 0..nphi {
            nodes.push(S2Point {
                theta,
                phi: 2.0 * PI * j as f64 / nphi as f64,
            });
            weights.push(wt * wphi);
        }
    }
    QuadratureRule {
        nodes: QuadratureNodes::Sphere(nodes),
        weights,
        exact_degree: 2 * k,
    }
}

/// Product rule on the rotation group, exact for all products
/// T^k_{ij}·conj(T^l_{mn}) with k, l ≤ K: uniform 2K+1-point grids in α and
/// γ, Gauss-Legendre (K+1 points) in cos β. Normalized Haar: weights sum
/// to 1. β varies slowest over the node list, so per-β caching of little-d
/// matrices pays off during analysis.
pub fn haar_quadrature(bandwidth: usize) -> QuadratureRule {
    let k = bandwidth;
    let (gl_nodes, gl_weights) = gauss_legendre(k + 1);
    let ngrid = 2 * k + 1;
    let mut nodes = Vec::with_capacity((k + 1) * ngrid * ngrid);
    let mut weights = Vec::with_capacity((k + 1) * ngrid * ngrid);
    let wnode = 1.0 / (2.0 * (ngrid * ngrid) as f64);
    for (cb, wb) in gl_nodes.iter().zip(gl_weights.iter()) {
        let beta = cb.clamp(-1.0, 1.0).acos();
        for ia in 0..ngrid {
            let alpha = 2.0 * PI * ia as f64 / ngrid as f64;
            for ig in 0..ngrid {
                nodes.push(EulerAngles {
                    alpha,
                    beta,
                    gamma: 2.0 * PI * ig as f64 / ngrid as f64,
                });
                weights.push(wb * wnode);
            }
        }
    }
    QuadratureRule {
        nodes: QuadratureNodes::Rotations(nodes),
        weights,
        exact_degree: 2 * k,
    }
}

/// Check that a rule on the expected space is fine enough for `degree`.
pub(crate) fn require_rule(rule: &QuadratureRule, space: &'static str, degree: usize) -> Result<()> {
    if rule.space() != space {
        return Err(Error::WrongSpace {
            expected: space,
            got: rule.space(),
        });
    }
    if rule.exact_degree < degree {
        return Err(Error::QuadratureDegree {
            needed: degree,
            got: rule.exact_degree,
        });
    }
    Ok(())
}
