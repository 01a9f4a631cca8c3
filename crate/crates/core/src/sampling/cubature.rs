//! Positive cubature weights on S²×S² lattices, exact on tensor products of
//! spherical harmonics up to a per-sphere degree D.
//!
//! The weights solve the moment system Σ_ν μ_ν φ(node_ν) = ∫φ over the real
//! orthonormal harmonic basis by a minimum-norm correction of the uniform
//! start, with a strict positivity floor enforced by active-set clamping at
//! ε = 0.1·(mean weight). For product lattices the solve runs per factor and
//! the product weights are the outer products, which keeps the pair grid
//! implicit; the residual is still reported for the full tensor system.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use crate::error::Error;
use crate::harmonics::sphere::{sph_harm_table, S2Point};
use crate::sampling::lattice::{LatticePoints, MetricLattice};
use crate::Result;

const PI: f64 = core::f64::consts::PI;
const SQRT_2: f64 = core::f64::consts::SQRT_2;
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum CubatureWeights {
    Dense(Vec<f64>),
    /// Outer product: the weight of node (a, b) is wx[a]·wy[b].
    Factored { wx: Vec<f64>, wy: Vec<f64> },
}

#[derive(Debug, Clone)]
pub struct CubatureLattice {
    pub lattice: MetricLattice,
    pub weights: CubatureWeights,
    /// Per-sphere exactness degree.
    pub degree: usize,
    /// Largest defect over all tensor moment rows.
    pub residual: f64,
}

impl CubatureLattice {
    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Node ν in the order the weight and sample vectors use: for product
    /// lattices the x index is the major one (ν = a·|ys| + b).
    pub fn node(&self, idx: usize) -> (S2Point, S2Point) {
        match &self.lattice.points {
            LatticePoints::Product { xs, ys } => (xs[idx / ys.len()], ys[idx % ys.len()]),
            LatticePoints::Pairs(v) => v[idx],
            LatticePoints::Sphere(_) => unreachable!("cubature is built on pair lattices only"),
        }
    }

    pub fn weight(&self, idx: usize) -> f64 {
        match (&self.weights, &self.lattice.points) {
            (CubatureWeights::Dense(w), _) => w[idx],
            (CubatureWeights::Factored { wx, wy }, LatticePoints::Product { ys, .. }) => {
                wx[idx / ys.len()] * wy[idx % ys.len()]
            }
            _ => unreachable!("factored weights pair with product lattices"),
        }
    }

    pub fn total_mass(&self) -> f64 {
        match &self.weights {
            CubatureWeights::Dense(w) => w.iter().sum(),
            CubatureWeights::Factored { wx, wy } => {
                wx.iter().sum::<f64>() * wy.iter().sum::<f64>()
            }
        }
    }

    /// Smallest and largest node weight. Positivity of both factors makes
    /// the factored extrema exact without materializing the grid.
    pub fn weight_extrema(&self) -> (f64, f64) {
        match &self.weights {
            CubatureWeights::Dense(w) => w
                .iter()
                .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &v| (lo.min(v), hi.max(v))),
            CubatureWeights::Factored { wx, wy } => {
                let (xl, xh) = minmax(wx);
                let (yl, yh) = minmax(wy);
                (xl * yl, xh * yh)
            }
        }
    }

    /// Median node weight; materializes the product weights, so costs
    /// O(len) memory for factored lattices.
    pub fn median_weight(&self) -> f64 {
        let mut all: Vec<f64> = match &self.weights {
            CubatureWeights::Dense(w) => w.clone(),
            CubatureWeights::Factored { wx, wy } => wx
                .iter()
                .flat_map(|a| wy.iter().map(move |b| a * b))
                .collect(),
        };
        let mid = all.len() / 2;
        let (_, m, _) = all.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).expect("finite"));
        *m
    }
}

fn minmax(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Real orthonormal spherical harmonics through degree `degree`, flattened
/// as index p² + (a+p); entry 0 is the constant 1/√(4π).
pub(crate) fn real_harmonic_row(degree: usize, p: &S2Point) -> Result<Vec<f64>> {
    let t = sph_harm_table(degree, p.theta, p.phi)?;
    let mut out = Vec::with_capacity((degree + 1) * (degree + 1));
    for (l, row) in t.iter().enumerate() {
        let l = l as i64;
        for m in -l..=l {
            let v = if m == 0 {
                row[l as usize].re
            } else if m > 0 {
                SQRT_2 * row[(m + l) as usize].re
            } else {
                SQRT_2 * row[(-m + l) as usize].im
            };
            out.push(v);
        }
    }
    Ok(out)
}

/// Solve a symmetric positive semidefinite system in place, skipping pivots
/// that have collapsed (rank deficiency); skipped components come back zero.
fn solve_spd(mut g: Vec<f64>, n: usize, b: &[f64]) -> Vec<f64> {
    let mut scale = 0.0_f64;
    for i in 0..n {
        scale = scale.max(g[i * n + i].abs());
    }
    let tol = 1e-12 * scale.max(1e-300);
    let mut skip = vec![false; n];
    for i in 0..n {
        let mut s = g[i * n + i];
        for k in 0..i {
            if !skip[k] {
                s -= g[i * n + k] * g[i * n + k];
            }
        }
        if s <= tol {
            skip[i] = true;
            continue;
        }
        let d = s.sqrt();
        g[i * n + i] = d;
        for j in i + 1..n {
            let mut v = g[j * n + i];
            for k in 0..i {
                if !skip[k] {
                    v -= g[i * n + k] * g[j * n + k];
                }
            }
            g[j * n + i] = v / d;
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        if skip[i] {
            continue;
        }
        let mut s = b[i];
        for k in 0..i {
            if !skip[k] {
                s -= g[i * n + k] * y[k];
            }
        }
        y[i] = s / g[i * n + i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        if skip[i] {
            continue;
        }
        let mut s = y[i];
        for k in i + 1..n {
            if !skip[k] {
                s -= g[k * n + i] * x[k];
            }
        }
        x[i] = s / g[i * n + i];
    }
    x
}

/// Minimum-norm solution of rows·μ = rhs around the uniform start, clamped
/// to the positivity floor. Returns the weights and the achieved moments.
fn positive_min_norm(rows: &[Vec<f64>], rhs: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let m = rows.len();
    let n = rows[0].len();
    let mu0 = rhs[0] / rows[0][0] / n as f64;
    let floor = 0.1 * mu0;
    let mut mu = vec![mu0; n];
    let mut free = vec![true; n];
    for _ in 0..60 {
        let mut d = rhs.to_vec();
        for (r, row) in rows.iter().enumerate() {
            let mut acc = 0.0;
            for (j, v) in row.iter().enumerate() {
                acc += v * if free[j] { mu0 } else { floor };
            }
            d[r] -= acc;
        }
        let mut g = vec![0.0; m * m];
        for r in 0..m {
            for s in r..m {
                let mut acc = 0.0;
                for j in 0..n {
                    if free[j] {
                        acc += rows[r][j] * rows[s][j];
                    }
                }
                g[r * m + s] = acc;
                g[s * m + r] = acc;
            }
        }
        let lam = solve_spd(g, m, &d);
        for j in 0..n {
            if free[j] {
                let mut v = mu0;
                for (r, row) in rows.iter().enumerate() {
                    v += row[j] * lam[r];
                }
                mu[j] = v;
            } else {
                mu[j] = floor;
            }
        }
        let mut newly_clamped = false;
        for j in 0..n {
            if free[j] && mu[j] < floor {
                free[j] = false;
                newly_clamped = true;
            }
        }
        if !newly_clamped {
            break;
        }
    }
    let mut achieved = vec![0.0; m];
    for (r, row) in rows.iter().enumerate() {
        achieved[r] = row.iter().zip(mu.iter()).map(|(a, b)| a * b).sum();
    }
    (mu, achieved)
}

fn factor_solve(pts: &[S2Point], degree: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let dim = (degree + 1) * (degree + 1);
    let mut rows = vec![Vec::with_capacity(pts.len()); dim];
    for p in pts {
        let col = real_harmonic_row(degree, p)?;
        for (row, v) in rows.iter_mut().zip(col.iter()) {
            row.push(*v);
        }
    }
    let mut rhs = vec![0.0; dim];
    rhs[0] = (4.0 * PI).sqrt();
    let (mu, achieved) = positive_min_norm(&rows, &rhs);
    if mu.iter().any(|w| !w.is_finite() || *w <= 0.0) {
        let worst = mu.iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(Error::Infeasible { residual: worst });
    }
    Ok((mu, achieved))
}

/// Largest tensor-moment defect of the product rule given the achieved
/// factor moments (targets are √4π on the constant row, zero elsewhere).
fn composed_residual(mx: &[f64], my: &[f64]) -> f64 {
    let root = (4.0 * PI).sqrt();
    let mut worst = 0.0_f64;
    for (r, a) in mx.iter().enumerate() {
        for (s, b) in my.iter().enumerate() {
            let target = if r == 0 && s == 0 { root * root } else { 0.0 };
            worst = worst.max((a * b - target).abs());
        }
    }
    worst
}

/// Weights exact on { Y^a_p ⊗ conj(Y^b_q) : p, q ≤ degree } with all
/// μ_ν > 0, or an infeasibility error carrying the residual when the lattice
/// is too coarse for the requested degree.
pub fn cubature_weights(lattice: MetricLattice, degree: usize) -> Result<CubatureLattice> {
    match &lattice.points {
        LatticePoints::Sphere(_) => Err(Error::WrongSpace {
            expected: "S2xS2",
            got: "S2",
        }),
        LatticePoints::Product { xs, ys } => {
            let (wx, mx) = factor_solve(xs, degree)?;
            let (wy, my) = factor_solve(ys, degree)?;
            let residual = composed_residual(&mx, &my);
            if !(residual < RESIDUAL_TOL) {
                return Err(Error::Infeasible { residual });
            }
            Ok(CubatureLattice {
                lattice,
                weights: CubatureWeights::Factored { wx, wy },
                degree,
                residual,
            })
        }
        LatticePoints::Pairs(pairs) => {
            let dim = (degree + 1) * (degree + 1);
            let mut rows = vec![Vec::with_capacity(pairs.len()); dim * dim];
            for (x, y) in pairs {
                let rx = real_harmonic_row(degree, x)?;
                let ry = real_harmonic_row(degree, y)?;
                for (r, a) in rx.iter().enumerate() {
                    for (s, b) in ry.iter().enumerate() {
                        rows[r * dim + s].push(a * b);
                    }
                }
            }
            let mut rhs = vec![0.0; dim * dim];
            rhs[0] = 4.0 * PI;
            let (mu, achieved) = positive_min_norm(&rows, &rhs);
            let residual = achieved
                .iter()
                .zip(rhs.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0_f64, f64::max);
            if mu.iter().any(|w| !w.is_finite() || *w <= 0.0) || !(residual < RESIDUAL_TOL) {
                return Err(Error::Infeasible { residual });
            }
            Ok(CubatureLattice {
                lattice,
                weights: CubatureWeights::Dense(mu),
                degree,
                residual,
            })
        }
    }
}
