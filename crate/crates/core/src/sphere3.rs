//! Verification tier on the 3-sphere: the geodesic circle transform of the
//! even lift F(q) = f(τ(q)), its dual transform over the circles at a fixed
//! distance from a point, the angle density over small circles, and two
//! independent reconstruction formulas built from them.
//!
//! Everything here recovers values the spectral machinery already produces
//! exactly; the point is that these routes go through geometry alone, so they
//! cross-check the calibrated constants instead of reusing them. Target
//! accuracy is desk scale (1e-2), not spectral scale.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float; // f64 math without std

use crate::harmonics::quadrature::{gauss_legendre, sphere_quadrature, QuadratureNodes};
use crate::harmonics::spectrum::{synth_so3, SO3Spectrum};
use crate::rotations::{
    circle_from_pair, circle_from_pair_relaxed, circle_point, euler_from_quat, matrix_from_euler,
    quat_from_euler, EulerAngles, GreatCirclePair, UnitQuaternion,
};
use crate::vec3;
use crate::Result;

const PI: f64 = core::f64::consts::PI;

/// Even function on unit quaternions obtained by pulling a rotation-group
/// function back through the double cover.
pub struct LiftedFunction<'a> {
    f: &'a SO3Spectrum,
}

impl<'a> LiftedFunction<'a> {
    pub fn new(f: &'a SO3Spectrum) -> Self {
        LiftedFunction { f }
    }

    pub fn bandwidth(&self) -> usize {
        self.f.bandwidth()
    }

    /// F(q). Evenness F(q) = F(−q) is exact to the last bit because the
    /// evaluation goes through the covering map, whose entries are quadratic
    /// in the components of q.
    pub fn eval(&self, q: &UnitQuaternion) -> f64 {
        synth_so3(self.f, &euler_from_quat(q)).re
    }
}

fn comb4(a: &UnitQuaternion, ca: f64, b: &UnitQuaternion, cb: f64) -> UnitQuaternion {
    UnitQuaternion::normalized(
        ca * a.a0 + cb * b.a0,
        ca * a.a1 + cb * b.a1,
        ca * a.a2 + cb * b.a2,
        ca * a.a3 + cb * b.a3,
    )
    .expect("combination of orthonormal quaternions")
}

fn dot4(a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
    a.a0 * b.a0 + a.a1 * b.a1 + a.a2 * b.a2 + a.a3 * b.a3
}

/// Average of F over the great circle with basis (q₁, q₂), by n equispaced
/// nodes on the full parameter period. Exact once n ≥ 2K+2 for a bandwidth-K
/// lift, since the integrand is a trigonometric polynomial of degree 2K.
pub fn geodesic_radon(f: &LiftedFunction, c: &GreatCirclePair, n: usize) -> f64 {
    let mut acc = 0.0;
    for j in 0..n {
        let q = circle_point(c, 2.0 * PI * j as f64 / n as f64);
        acc += f.eval(&q);
    }
    acc / n as f64
}

/// Circle average F̂(x, y′) over the rotations carrying x to y′. A hit within
/// 1e-9 of the antipode y′ = −x is displaced by 1e-6 in y′ before the circle
/// is built; the transform extends continuously there, so the displaced value
/// is off by about 1e-6, far below this tier's tolerance. (A smaller nudge
/// would leave the dot product rounding back to exactly -1.)
pub fn pair_value(f: &LiftedFunction, x: [f64; 3], y: [f64; 3], n: usize) -> f64 {
    let c = if vec3::dot(x, y) < -1.0 + 1e-9 {
        let p = vec3::any_perp(y);
        let nudged = vec3::unit(vec3::add(y, vec3::scale(p, 1e-6))).expect("unit nudge");
        circle_from_pair_relaxed(nudged, x)
    } else {
        circle_from_pair(y, x)
    }
    .expect("nudged pair is never exactly antipodal");
    geodesic_radon(f, &c, n)
}

/// Sampled family {ξ : d(q, ξ) = ρ} of great circles at a fixed distance
/// from a base point, with averaging weights.
pub struct CircleFamilySample {
    pub q: UnitQuaternion,
    pub rho: f64,
    pub circles: Vec<(GreatCirclePair, f64)>,
}

impl CircleFamilySample {
    /// Product rule: the nearest point u = q cos ρ + w sin ρ runs over the
    /// geodesic sphere at distance ρ (w on the unit sphere of q^⊥, Gauss in
    /// the polar angle times uniform in the azimuth, (m+1)·(2m+1) nodes) and
    /// the second basis vector v runs uniformly over the unit circle
    /// orthogonal to both q and w (2m+1 nodes). Weights sum to one.
    pub fn build(q: &UnitQuaternion, rho: f64, m: usize) -> Result<Self> {
        if !(0.0..=PI / 2.0 + 1e-12).contains(&rho) {
            return Err(crate::Error::Domain {
                what: "circle family distance",
                value: rho,
            });
        }
        // exact orthonormal basis of q^⊥: right multiples of q by i, j, k
        let bi = q.mul(&UnitQuaternion { a0: 0.0, a1: 1.0, a2: 0.0, a3: 0.0 });
        let bj = q.mul(&UnitQuaternion { a0: 0.0, a1: 0.0, a2: 1.0, a3: 0.0 });
        let bk = q.mul(&UnitQuaternion { a0: 0.0, a1: 0.0, a2: 0.0, a3: 1.0 });
        let in_perp = |c: [f64; 3]| -> UnitQuaternion {
            UnitQuaternion::normalized(
                c[0] * bi.a0 + c[1] * bj.a0 + c[2] * bk.a0,
                c[0] * bi.a1 + c[1] * bj.a1 + c[2] * bk.a1,
                c[0] * bi.a2 + c[1] * bj.a2 + c[2] * bk.a2,
                c[0] * bi.a3 + c[1] * bj.a3 + c[2] * bk.a3,
            )
            .expect("orthonormal combination")
        };
        let (sr, cr) = rho.sin_cos();
        let gl = gauss_legendre(m + 1);
        let na = 2 * m + 1;
        let mut circles = Vec::with_capacity(gl.0.len() * na * na);
        for (ct, wt) in gl.0.iter().zip(gl.1.iter()) {
            let st = (1.0 - ct * ct).sqrt();
            for a in 0..na {
                let phi = 2.0 * PI * a as f64 / na as f64;
                let w3 = [st * phi.cos(), st * phi.sin(), *ct];
                let w = in_perp(w3);
                let u = comb4(q, cr, &w, sr);
                // circle basis of the plane orthogonal to span(q, w), taken
                // inside q^⊥ coordinates
                let p1 = vec3::any_perp(w3);
                let p2 = vec3::cross(w3, p1);
                let p1q = in_perp(p1);
                let p2q = in_perp(p2);
                let wq = wt * 0.5 / (na * na) as f64;
                for b in 0..na {
                    let psi = 2.0 * PI * b as f64 / na as f64;
                    let v = comb4(&p1q, psi.cos(), &p2q, psi.sin());
                    let pair = GreatCirclePair::from_quaternion_basis(&u, &v)?;
                    circles.push((pair, wq));
                }
            }
        }
        Ok(CircleFamilySample { q: *q, rho, circles })
    }

    /// Spherical distance from the base point to a sampled circle.
    pub fn distance_to(&self, pair: &GreatCirclePair) -> f64 {
        let c = dot4(&self.q, &pair.q1).hypot(dot4(&self.q, &pair.q2));
        c.min(1.0).acos()
    }
}

/// Average of a circle function over the family at distance ρ from q.
pub fn dual_transform(
    phi: &mut dyn FnMut(&GreatCirclePair) -> f64,
    q: &UnitQuaternion,
    rho: f64,
    m: usize,
) -> Result<f64> {
    let fam = CircleFamilySample::build(q, rho, m)?;
    Ok(fam.circles.iter().map(|(c, w)| w * phi(c)).sum())
}

/// Average of F̂(x, ·) over the small circle of radius ρ about y; n uniform
/// nodes on the small circle, and the same n inside each circle average
/// (the outer integrand has lower trigonometric degree, so one count covers
/// both).
pub fn angle_density(f: &LiftedFunction, x: [f64; 3], y: [f64; 3], rho: f64, n: usize) -> f64 {
    let (sr, cr) = rho.sin_cos();
    let p1 = vec3::any_perp(y);
    let p2 = vec3::cross(y, p1);
    let mut acc = 0.0;
    for j in 0..n {
        let psi = 2.0 * PI * j as f64 / n as f64;
        let dir = vec3::add(vec3::scale(p1, psi.cos()), vec3::scale(p2, psi.sin()));
        let yp = vec3::add(vec3::scale(y, cr), vec3::scale(dir, sr));
        acc += pair_value(f, x, yp, n);
    }
    acc / n as f64
}

/// Node counts for the reconstruction formulas.
#[derive(Debug, Clone, Copy)]
pub struct InversionControls {
    /// Bandwidth of the underlying rotation-group function.
    pub bandwidth: usize,
    /// Nodes per circle average.
    pub circle_nodes: usize,
    /// Order of the circle-family rule in the dual transform.
    pub family_order: usize,
    /// Chebyshev–Lobatto nodes for the profile in cos θ.
    pub theta_nodes: usize,
}

impl InversionControls {
    /// Exactness-based defaults: every quadrature is past its degree
    /// threshold for a bandwidth-K lift, with one order of headroom.
    pub fn for_bandwidth(k: usize) -> Self {
        InversionControls {
            bandwidth: k,
            circle_nodes: 4 * k + 6,
            family_order: k + 1,
            theta_nodes: k + 2,
        }
    }

    fn doubled(&self) -> Self {
        InversionControls {
            bandwidth: self.bandwidth,
            circle_nodes: 2 * self.circle_nodes,
            family_order: 2 * self.family_order,
            theta_nodes: self.theta_nodes,
        }
    }
}

/// Interpolating Chebyshev coefficients from values at the Lobatto nodes
/// u_j = cos(jπ/N), j = 0..N (so `values[0]` sits at u = 1).
pub fn cheb_fit(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    if n == 0 {
        return vec![values[0]];
    }
    let mut coef = vec![0.0; n + 1];
    for (k, c) in coef.iter_mut().enumerate() {
        let mut s = 0.0;
        for (j, v) in values.iter().enumerate() {
            let f = if j == 0 || j == n { 0.5 } else { 1.0 };
            s += f * v * (PI * (j * k) as f64 / n as f64).cos();
        }
        *c = s * if k == 0 || k == n { 1.0 / n as f64 } else { 2.0 / n as f64 };
    }
    coef
}

/// Clenshaw evaluation of a Chebyshev series at u ∈ [−1, 1].
pub fn cheb_eval(coef: &[f64], u: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coef.iter().skip(1).rev() {
        let b0 = c + 2.0 * u * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coef[0] + u * b1 - b2
}

/// Coefficients of the derivative of a Chebyshev series.
pub fn cheb_derivative(coef: &[f64]) -> Vec<f64> {
    let n = coef.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n - 1];
    let mut next = 0.0; // d[k+1]
    let mut after = 0.0; // d[k+2]
    for k in (1..n).rev() {
        let v = after + 2.0 * k as f64 * coef[k];
        if k >= 2 {
            after = next;
            next = v;
            d[k - 1] = v;
        } else {
            d[0] = 0.5 * v;
        }
    }
    d
}

/// Shared tail of both reconstruction formulas: given the profile values
/// B(θ_j) at θ_j = acos(u_j) on the Lobatto grid, return
/// p(−1) + 4∫₀¹ p′(1 − 2z²) dz for the fitted polynomial p(cos θ) = B(θ).
fn reconstruct_from_profile(profile: &[f64]) -> f64 {
    let p = cheb_fit(profile);
    let dp = cheb_derivative(&p);
    let gl = gauss_legendre(profile.len());
    let mut integral = 0.0;
    for (t, w) in gl.0.iter().zip(gl.1.iter()) {
        let z = 0.5 * (t + 1.0);
        integral += 0.5 * w * cheb_eval(&dp, 1.0 - 2.0 * z * z);
    }
    cheb_eval(&p, -1.0) + 4.0 * integral
}

fn lobatto_thetas(count: usize) -> Vec<f64> {
    // θ_j = jπ/N puts cos θ_j exactly on the Lobatto grid the fit assumes
    let n = count - 1;
    (0..=n).map(|j| PI * j as f64 / n as f64).collect()
}

fn helgason_value(
    phi: &mut dyn FnMut(&GreatCirclePair) -> f64,
    q: &UnitQuaternion,
    ctl: &InversionControls,
) -> Result<f64> {
    let profile = lobatto_thetas(ctl.theta_nodes)
        .into_iter()
        .map(|theta| dual_transform(phi, q, 0.5 * theta, ctl.family_order))
        .collect::<Result<Vec<f64>>>()?;
    Ok(reconstruct_from_profile(&profile))
}

/// Reconstruct F(q) from its circle transform alone:
/// F(q) = B(π) + 2∫₀^π (d/d cos θ) B(θ) · cos(θ/2) dθ, where B(θ) is the
/// dual transform at distance θ/2. Returns the refined value and the change
/// under doubling of the family order, as an error estimate.
pub fn helgason_invert(
    phi: &mut dyn FnMut(&GreatCirclePair) -> f64,
    q: &UnitQuaternion,
    ctl: &InversionControls,
) -> Result<(f64, f64)> {
    let coarse = helgason_value(phi, q, ctl)?;
    let fine = helgason_value(phi, q, &ctl.doubled())?;
    Ok((fine, (fine - coarse).abs()))
}

fn matthies_value(f: &LiftedFunction, g: &EulerAngles, ctl: &InversionControls) -> Result<f64> {
    let r = matrix_from_euler(g);
    let rule = sphere_quadrature(ctl.bandwidth);
    let nodes = match &rule.nodes {
        QuadratureNodes::Sphere(v) => v.clone(),
        _ => unreachable!("sphere rule"),
    };
    let inv_total = 1.0 / (4.0 * PI);
    let thetas = lobatto_thetas(ctl.theta_nodes);
    let mut profile = vec![0.0; thetas.len()];
    for (p, theta) in profile.iter_mut().zip(thetas.iter()) {
        let mut acc = 0.0;
        for (node, w) in nodes.iter().zip(rule.weights.iter()) {
            let x = node.to_vec();
            let gx = r.apply(x);
            acc += w * angle_density(f, x, gx, *theta, ctl.circle_nodes);
        }
        *p = acc * inv_total;
    }
    Ok(reconstruct_from_profile(&profile))
}

/// Reconstruct f(g) from sphere-pair data alone: the profile is the average
/// over x of the angle density at (x, gx; θ), and the reconstruction tail is
/// shared with `helgason_invert`. The first profile value (θ = 0 is the grid
/// head, θ = π the tail) reproduces the antipodal average term. Returns the
/// refined value and a node-doubling error estimate.
pub fn matthies_invert(
    f: &LiftedFunction,
    g: &EulerAngles,
    ctl: &InversionControls,
) -> Result<(f64, f64)> {
    let coarse = matthies_value(f, g, ctl)?;
    let fine = matthies_value(f, g, &ctl.doubled())?;
    Ok((fine, (fine - coarse).abs()))
}

/// Both sides of the antipodal-average identity: the sphere average of
/// F̂(x, −gx) against the dual transform at distance π/2 from the quaternion
/// of g. Equal in the normalized-average convention used throughout.
pub fn r0_check(f: &LiftedFunction, g: &EulerAngles, ctl: &InversionControls) -> Result<(f64, f64)> {
    let r = matrix_from_euler(g);
    let rule = sphere_quadrature(ctl.bandwidth);
    let nodes = match &rule.nodes {
        QuadratureNodes::Sphere(v) => v.clone(),
        _ => unreachable!("sphere rule"),
    };
    let mut lhs = 0.0;
    for (node, w) in nodes.iter().zip(rule.weights.iter()) {
        let x = node.to_vec();
        let mgx = vec3::scale(r.apply(x), -1.0);
        lhs += w * pair_value(f, x, mgx, ctl.circle_nodes);
    }
    lhs /= 4.0 * PI;
    let q = quat_from_euler(g);
    let mut phi = |c: &GreatCirclePair| geodesic_radon(f, c, ctl.circle_nodes);
    let rhs = dual_transform(&mut phi, &q, 0.5 * PI, ctl.family_order)?;
    Ok((lhs, rhs))
}

/// Both sides of the angle-density identity at opening angle θ: the sphere
/// average of the angle density at (x, gx; θ) against the dual transform at
/// distance θ/2.
pub fn r1_check(
    f: &LiftedFunction,
    g: &EulerAngles,
    theta: f64,
    ctl: &InversionControls,
) -> Result<(f64, f64)> {
    let r = matrix_from_euler(g);
    let rule = sphere_quadrature(ctl.bandwidth);
    let nodes = match &rule.nodes {
        QuadratureNodes::Sphere(v) => v.clone(),
        _ => unreachable!("sphere rule"),
    };
    let mut lhs = 0.0;
    for (node, w) in nodes.iter().zip(rule.weights.iter()) {
        let x = node.to_vec();
        let gx = r.apply(x);
        lhs += w * angle_density(f, x, gx, theta, ctl.circle_nodes);
    }
    lhs /= 4.0 * PI;
    let q = quat_from_euler(g);
    let mut phi = |c: &GreatCirclePair| geodesic_radon(f, c, ctl.circle_nodes);
    let rhs = dual_transform(&mut phi, &q, 0.5 * theta, ctl.family_order)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::spectrum::{analyze_pair, symmetrize_real};
    use crate::radon::{radon_forward_numeric, radon_forward_spectral, LINE_AVERAGE_SCALE};
    use num_complex::Complex64;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_quat(rng: &mut ChaCha8Rng) -> UnitQuaternion {
        quat_from_euler(&EulerAngles {
            alpha: 2.0 * PI * rng.gen::<f64>(),
            beta: (1.0 - 2.0 * rng.gen::<f64>()).acos(),
            gamma: 2.0 * PI * rng.gen::<f64>(),
        })
    }

    fn rand_unit_vec(rng: &mut ChaCha8Rng) -> [f64; 3] {
        let z: f64 = 1.0 - 2.0 * rng.gen::<f64>();
        let phi = 2.0 * PI * rng.gen::<f64>();
        let r = (1.0 - z * z).sqrt();
        [r * phi.cos(), r * phi.sin(), z]
    }

    /// 1 + 0.3·Re T²₁₃: strictly positive, real, bandwidth 2.
    fn bump_spectrum() -> SO3Spectrum {
        let mut f = SO3Spectrum::uniform(2);
        f.block_mut(2)[(0, 2)] = Complex64::new(0.15, 0.0);
        f.block_mut(2)[(4, 2)] = Complex64::new(0.15, 0.0);
        assert!(symmetrize_real(&f).max_block_diff(&f) < 1e-15);
        f
    }

    fn rand_real_spectrum(bandwidth: usize, rng: &mut ChaCha8Rng) -> SO3Spectrum {
        let mut f = SO3Spectrum::zeros(bandwidth);
        for k in 0..=bandwidth {
            for z in f.block_mut(k).data_mut() {
                *z = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
        }
        symmetrize_real(&f)
    }

    #[test]
    fn chebyshev_helpers_fit_cubic() {
        // u³ = (3T₁ + T₃)/4 on the 4-node Lobatto grid
        let n = 3usize;
        let values: Vec<f64> = (0..=n)
            .map(|j| (PI * j as f64 / n as f64).cos().powi(3))
            .collect();
        let c = cheb_fit(&values);
        assert!((c[0]).abs() < 1e-15);
        assert!((c[1] - 0.75).abs() < 1e-15);
        assert!((c[2]).abs() < 1e-15);
        assert!((c[3] - 0.25).abs() < 1e-15);
        let d = cheb_derivative(&c);
        assert!((d[0] - 1.5).abs() < 1e-14);
        assert!((d[1]).abs() < 1e-14);
        assert!((d[2] - 1.5).abs() < 1e-14);
        for u in [-0.9, -0.3, 0.2, 1.0] {
            assert!((cheb_eval(&c, u) - u * u * u).abs() < 1e-14);
            assert!((cheb_eval(&d, u) - 3.0 * u * u).abs() < 1e-13);
        }
    }

    #[test]
    fn lift_is_exactly_even() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        let f = rand_real_spectrum(3, &mut rng);
        let lift = LiftedFunction::new(&f);
        for _ in 0..1000 {
            let q = rand_quat(&mut rng);
            let m = UnitQuaternion {
                a0: -q.a0,
                a1: -q.a1,
                a2: -q.a2,
                a3: -q.a3,
            };
            let a = lift.eval(&q);
            let b = lift.eval(&m);
            assert!(a == b, "evenness must be exact, got {a} vs {b}");
        }
    }

    #[test]
    fn geodesic_same_sum_as_numeric_forward() {
        // one global constant relates the two circle averages; it is the
        // already-locked line scale, i.e. they agree outright
        assert_eq!(LINE_AVERAGE_SCALE, 1.0);
        let mut f = SO3Spectrum::zeros(2);
        f.block_mut(2)[(0, 0)] = Complex64::new(1.0, 0.0);
        let lift = LiftedFunction::new(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let mut done = 0;
        while done < 20 {
            let x = rand_unit_vec(&mut rng);
            let y = rand_unit_vec(&mut rng);
            if vec3::dot(x, y) < -1.0 + 1e-6 {
                continue;
            }
            done += 1;
            let c = circle_from_pair(y, x).unwrap();
            let geo = geodesic_radon(&lift, &c, 8);
            let num = radon_forward_numeric(&f, x, y, 8).unwrap();
            assert!((geo - num.re).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_constant_and_reparameterization() {
        let one = SO3Spectrum::uniform(0);
        let lift = LiftedFunction::new(&one);
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        let f = rand_real_spectrum(2, &mut rng);
        let lf = LiftedFunction::new(&f);
        for _ in 0..10 {
            let x = rand_unit_vec(&mut rng);
            let y = rand_unit_vec(&mut rng);
            if vec3::dot(x, y) < -1.0 + 1e-6 {
                continue;
            }
            let c = circle_from_pair(y, x).unwrap();
            assert!((geodesic_radon(&lift, &c, 6) - 1.0).abs() < 1e-14);
            // rotating the basis within the circle leaves the average alone
            let v = geodesic_radon(&lf, &c, 10);
            for s in [0.3, 1.2, 4.0] {
                let u2 = comb4(&c.q1, s.cos(), &c.q2, s.sin());
                let v2 = comb4(&c.q1, -s.sin(), &c.q2, s.cos());
                let c2 = GreatCirclePair::from_quaternion_basis(&u2, &v2).unwrap();
                assert!(vec3::sub(c2.x, c.x).iter().all(|t| t.abs() < 1e-12));
                assert!(vec3::sub(c2.y, c.y).iter().all(|t| t.abs() < 1e-12));
                assert!((geodesic_radon(&lf, &c2, 10) - v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn circle_family_distance_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for &rho in &[0.0, 0.3, 1.1, PI / 2.0] {
            let q = rand_quat(&mut rng);
            let fam = CircleFamilySample::build(&q, rho, 3).unwrap();
            let total: f64 = fam.circles.iter().map(|(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-13);
            for (pair, _) in &fam.circles {
                assert!((fam.distance_to(pair) - rho).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dual_transform_constants_and_convergence() {
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        let q = rand_quat(&mut rng);
        let mut one = |_: &GreatCirclePair| 1.0;
        for &rho in &[0.0, 0.4, PI / 2.0] {
            assert!((dual_transform(&mut one, &q, rho, 2).unwrap() - 1.0).abs() < 1e-13);
        }
        let uniform = SO3Spectrum::uniform(0);
        let lift = LiftedFunction::new(&uniform);
        let mut phi = |c: &GreatCirclePair| geodesic_radon(&lift, c, 6);
        assert!((dual_transform(&mut phi, &q, 0.8, 3).unwrap() - 1.0).abs() < 1e-13);

        let f = rand_real_spectrum(2, &mut rng);
        let lf = LiftedFunction::new(&f);
        let mut phif = |c: &GreatCirclePair| geodesic_radon(&lf, c, 14);
        let a = dual_transform(&mut phif, &q, 0.7, 3).unwrap();
        let b = dual_transform(&mut phif, &q, 0.7, 6).unwrap();
        assert!((a - b).abs() < 1e-6 * a.abs().max(1.0));
    }

    #[test]
    fn angle_density_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        let f = rand_real_spectrum(2, &mut rng);
        let lift = LiftedFunction::new(&f);
        let x = [0.0, 0.0, 1.0];
        let y = [1.0, 0.0, 0.0];
        let at0 = angle_density(&lift, x, y, 0.0, 14);
        assert!((at0 - pair_value(&lift, x, y, 14)).abs() < 1e-12);
        let atpi = angle_density(&lift, x, y, PI, 14);
        assert!((atpi - pair_value(&lift, x, vec3::scale(y, -1.0), 14)).abs() < 1e-12);

        let one = SO3Spectrum::uniform(0);
        let lone = LiftedFunction::new(&one);
        for &rho in &[0.0, 0.4, 2.0, PI] {
            assert!((angle_density(&lone, x, y, rho, 6) - 1.0).abs() < 1e-13);
            // the all-nodes-antipodal case runs through the nudged path
            assert!((angle_density(&lone, x, x, rho, 6) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn helgason_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(76);
        let one = SO3Spectrum::uniform(0);
        let lone = LiftedFunction::new(&one);
        let ctl1 = InversionControls::for_bandwidth(0);
        let mut phi1 = |c: &GreatCirclePair| geodesic_radon(&lone, c, 6);
        let (v1, _) = helgason_invert(&mut phi1, &rand_quat(&mut rng), &ctl1).unwrap();
        assert!((v1 - 1.0).abs() < 1e-10);

        let f = bump_spectrum();
        let lift = LiftedFunction::new(&f);
        let ctl = InversionControls::for_bandwidth(2);
        for _ in 0..3 {
            let q = rand_quat(&mut rng);
            let mut phi = |c: &GreatCirclePair| geodesic_radon(&lift, c, ctl.circle_nodes);
            let (v, est) = helgason_invert(&mut phi, &q, &ctl).unwrap();
            let truth = lift.eval(&q);
            assert!((v - truth).abs() < 1e-2 * truth.abs());
            assert!(est < 1e-6);
        }
    }

    #[test]
    fn helgason_linear_in_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let f1 = bump_spectrum();
        let f2 = rand_real_spectrum(2, &mut rng);
        let l1 = LiftedFunction::new(&f1);
        let l2 = LiftedFunction::new(&f2);
        let ctl = InversionControls::for_bandwidth(2);
        let q = rand_quat(&mut rng);
        let n = ctl.circle_nodes;
        let mut p1 = |c: &GreatCirclePair| geodesic_radon(&l1, c, n);
        let mut p2 = |c: &GreatCirclePair| geodesic_radon(&l2, c, n);
        let mut pc =
            |c: &GreatCirclePair| 2.0 * geodesic_radon(&l1, c, n) - 0.5 * geodesic_radon(&l2, c, n);
        let (v1, _) = helgason_invert(&mut p1, &q, &ctl).unwrap();
        let (v2, _) = helgason_invert(&mut p2, &q, &ctl).unwrap();
        let (vc, _) = helgason_invert(&mut pc, &q, &ctl).unwrap();
        assert!((vc - (2.0 * v1 - 0.5 * v2)).abs() < 1e-12);
    }

    #[test]
    fn matthies_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(78);
        let one = SO3Spectrum::uniform(0);
        let lone = LiftedFunction::new(&one);
        let g0 = EulerAngles {
            alpha: 1.0,
            beta: 0.8,
            gamma: 5.0,
        };
        let (v1, _) = matthies_invert(&lone, &g0, &InversionControls::for_bandwidth(0)).unwrap();
        assert!((v1 - 1.0).abs() < 1e-10);

        let f = bump_spectrum();
        let lift = LiftedFunction::new(&f);
        let ctl = InversionControls::for_bandwidth(2);
        for _ in 0..2 {
            let g = EulerAngles {
                alpha: 2.0 * PI * rng.gen::<f64>(),
                beta: (1.0 - 2.0 * rng.gen::<f64>()).acos(),
                gamma: 2.0 * PI * rng.gen::<f64>(),
            };
            let (v, est) = matthies_invert(&lift, &g, &ctl).unwrap();
            let truth = synth_so3(&f, &g).re;
            assert!((v - truth).abs() < 1e-2 * truth.abs());
            assert!(est < 1e-6);
        }
    }

    #[test]
    fn r0_r1_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let f = bump_spectrum();
        let lift = LiftedFunction::new(&f);
        let ctl = InversionControls::for_bandwidth(2);
        let g = EulerAngles {
            alpha: 0.9,
            beta: 1.7,
            gamma: 4.1,
        };
        let (l0, r0) = r0_check(&lift, &g, &ctl).unwrap();
        assert!((l0 / r0 - 1.0).abs() < 1e-4, "R0: {l0} vs {r0}");
        for &theta in &[PI / 3.0, PI / 2.0] {
            let g2 = EulerAngles {
                alpha: 2.0 * PI * rng.gen::<f64>(),
                beta: (1.0 - 2.0 * rng.gen::<f64>()).acos(),
                gamma: 2.0 * PI * rng.gen::<f64>(),
            };
            let (l1, r1) = r1_check(&lift, &g2, theta, &ctl).unwrap();
            assert!((l1 / r1 - 1.0).abs() < 1e-4, "R1(θ={theta}): {l1} vs {r1}");
        }
    }

    #[test]
    fn consistency_chain_matches_spectral_forward() {
        let mut rng = ChaCha8Rng::seed_from_u64(80);
        let f = rand_real_spectrum(2, &mut rng);
        let lift = LiftedFunction::new(&f);
        let rule = sphere_quadrature(2);
        let nodes = match &rule.nodes {
            QuadratureNodes::Sphere(v) => v.clone(),
            _ => unreachable!(),
        };
        let mut values = Vec::new();
        for a in &nodes {
            for b in &nodes {
                let v = pair_value(&lift, a.to_vec(), b.to_vec(), 14);
                values.push(Complex64::new(v, 0.0));
            }
        }
        let got = analyze_pair(&values, &rule, 2).unwrap();
        let want = radon_forward_spectral(&f);
        assert!(got.max_block_diff(&want) < 1e-9);
    }

    #[test]
    fn family_rejects_bad_distance() {
        let q = UnitQuaternion::identity();
        assert!(CircleFamilySample::build(&q, 2.0, 2).is_err());
        assert!(CircleFamilySample::build(&q, -0.1, 2).is_err());
    }
}
