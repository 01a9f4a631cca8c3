//! Invariant suites behind `texradon verify`: each check reruns a library
//! identity at desk scale and reports the measured defect against its
//! tolerance.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use texradon_core::harmonics::quadrature::QuadratureNodes;
use texradon_core::harmonics::spectrum::{convolve, symmetrize_real, synth_so3};
use texradon_core::harmonics::{
    haar_quadrature, laplacian_so3, legendre_p, pair_eval, sph_harm, sphere_quadrature,
    wigner_matrix, S2Point, SO3Spectrum,
};
use texradon_core::radon::{
    even_part, radon_adjoint, radon_forward_numeric, radon_forward_spectral, radon_invert,
    sobolev_norm_pair, xray_forward,
};
use texradon_core::rotations::{
    circle_from_pair, circle_point, euler_from_quat, matrix_from_euler, quat_from_euler, tau,
    EulerAngles, GreatCirclePair, UnitQuaternion,
};
use texradon_core::sampling::{
    cubature_weights, discrete_invert, product_lattice, recheck_lattice, rho_for_bandwidth,
    LatticePoints, AUDIT_PROBE_SEED, DEFAULT_DENSITY_CONSTANT,
};
use texradon_core::sphere3::{
    geodesic_radon, helgason_invert, matthies_invert, r0_check, r1_check, InversionControls,
    LiftedFunction,
};
use texradon_core::vec3;

use crate::{TaskError, TaskResult};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Scale applied to the 4π constant in the isometry and adjoint checks;
    /// anything but 1.0 is a deliberate negative control.
    pub four_pi_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 20,
            four_pi_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check(suite: &str, name: &str, measured: f64, tolerance: f64) -> Check {
    Check {
        suite: suite.into(),
        name: name.into(),
        measured,
        tolerance,
        pass: measured <= tolerance,
    }
}

pub const SUITE_NAMES: &[&str] = &["harmonics", "rotations", "radon", "sphere3", "sampling"];

pub fn run_suites(selector: Option<&str>, opt: &VerifyOptions) -> TaskResult<Vec<Check>> {
    let names: Vec<&str> = match selector {
        None => SUITE_NAMES.to_vec(),
        Some(s) => {
            let Some(found) = SUITE_NAMES.iter().find(|n| **n == s) else {
                return Err(TaskError::Io(format!(
                    "unknown suite {s:?}; known: {}",
                    SUITE_NAMES.join(", ")
                )));
            };
            vec![*found]
        }
    };
    let mut checks = Vec::new();
    for name in names {
        checks.extend(match name {
            "harmonics" => harmonics_suite(opt),
            "rotations" => rotations_suite(opt),
            "radon" => radon_suite(opt),
            "sphere3" => sphere3_suite(opt),
            "sampling" => sampling_suite(opt),
            _ => unreachable!(),
        });
    }
    Ok(checks)
}

/// Print the checks; returns overall pass.
pub fn report(checks: &[Check], json: bool) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    if json {
        let body = serde_json::json!({ "pass": pass, "checks": checks });
        println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    } else {
        for c in checks {
            println!(
                "[{}] {}/{} measured {:.3e} tolerance {:.3e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.measured,
                c.tolerance
            );
        }
        let failed = checks.iter().filter(|c| !c.pass).count();
        println!("{} checks, {} failed", checks.len(), failed);
    }
    pass
}

fn rand_s2(rng: &mut ChaCha8Rng) -> S2Point {
    let theta = (1.0 - 2.0 * rng.gen::<f64>()).clamp(-1.0, 1.0).acos();
    let phi = 2.0 * PI * rng.gen::<f64>();
    S2Point::new(theta, phi.min(2.0 * PI - 1e-15)).expect("in range")
}

fn rand_euler(rng: &mut ChaCha8Rng) -> EulerAngles {
    let beta = (1.0 - 2.0 * rng.gen::<f64>()).clamp(-1.0, 1.0).acos();
    EulerAngles::new(2.0 * PI * rng.gen::<f64>(), beta, 2.0 * PI * rng.gen::<f64>())
        .expect("in range")
}

fn rand_quat(rng: &mut ChaCha8Rng) -> UnitQuaternion {
    quat_from_euler(&rand_euler(rng)).canonical()
}

fn rand_unit_vec(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let p = rand_s2(rng);
    p.to_vec()
}

fn random_spectrum(bandwidth: usize, rng: &mut ChaCha8Rng) -> SO3Spectrum {
    let mut f = SO3Spectrum::zeros(bandwidth);
    for k in 0..=bandwidth {
        let n = 2 * k + 1;
        let block = f.block_mut(k);
        for i in 0..n {
            for j in 0..n {
                block[(i, j)] = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            }
        }
    }
    f
}

fn harmonics_suite(opt: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed);
    let mut out = Vec::new();

    let mut worst = 0.0_f64;
    for _ in 0..300 {
        let k = rng.gen_range(0..=8usize);
        let x = rand_s2(&mut rng);
        let y = rand_s2(&mut rng);
        let mut lhs = Complex64::new(0.0, 0.0);
        for m in -(k as i64)..=(k as i64) {
            lhs += sph_harm(k, m, x.theta, x.phi).unwrap()
                * sph_harm(k, m, y.theta, y.phi).unwrap().conj();
        }
        let t = vec3::dot(x.to_vec(), y.to_vec()).clamp(-1.0, 1.0);
        let rhs = (2 * k + 1) as f64 / (4.0 * PI) * legendre_p(k, t);
        worst = worst.max((lhs - rhs).norm());
    }
    out.push(check("harmonics", "addition_theorem", worst, 1e-11));

    let mut worst = 0.0_f64;
    for _ in 0..300 {
        let k = rng.gen_range(0..=6usize);
        let x = rand_s2(&mut rng);
        let anti_phi = (x.phi + PI) % (2.0 * PI);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for m in -(k as i64)..=(k as i64) {
            let a = sph_harm(k, m, PI - x.theta, anti_phi).unwrap();
            let b = sph_harm(k, m, x.theta, x.phi).unwrap() * sign;
            worst = worst.max((a - b).norm());
        }
    }
    out.push(check("harmonics", "parity", worst, 1e-11));

    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let k = rng.gen_range(0..=6usize);
        let g = rand_euler(&mut rng);
        let x = rand_s2(&mut rng);
        let rotated = matrix_from_euler(&g).apply_inv(x.to_vec());
        let xr = S2Point::from_vec(rotated);
        let t = wigner_matrix(k, &g);
        for i in 0..(2 * k + 1) {
            let m = i as i64 - k as i64;
            let lhs = sph_harm(k, m, xr.theta, xr.phi).unwrap();
            let mut rhs = Complex64::new(0.0, 0.0);
            for j in 0..(2 * k + 1) {
                let mj = j as i64 - k as i64;
                rhs += t[(i, j)] * sph_harm(k, mj, x.theta, x.phi).unwrap();
            }
            worst = worst.max((lhs - rhs).norm());
        }
    }
    out.push(check("harmonics", "wigner_expansion", worst, 1e-10));

    // Funk-Hecke for f(t) = t²: the Legendre coefficients 2π∫t²P_k(t)dt are
    // 2π·2/3 (k=0), 2π·4/15 (k=2), zero otherwise.
    let mut worst = 0.0_f64;
    for k in 0..=4usize {
        let lambda = match k {
            0 => 2.0 * PI * 2.0 / 3.0,
            2 => 2.0 * PI * 4.0 / 15.0,
            _ => 0.0,
        };
        let rule = sphere_quadrature(k + 2);
        let nodes = match &rule.nodes {
            QuadratureNodes::Sphere(v) => v.clone(),
            _ => unreachable!(),
        };
        for _ in 0..8 {
            let y = rand_s2(&mut rng);
            let yv = y.to_vec();
            for m in -(k as i64)..=(k as i64) {
                let mut acc = Complex64::new(0.0, 0.0);
                for (p, w) in nodes.iter().zip(rule.weights.iter()) {
                    let t = vec3::dot(p.to_vec(), yv);
                    acc += *w * t * t * sph_harm(k, m, p.theta, p.phi).unwrap();
                }
                let rhs = lambda * sph_harm(k, m, y.theta, y.phi).unwrap();
                worst = worst.max((acc - rhs).norm());
            }
        }
    }
    out.push(check("harmonics", "funk_hecke_t_squared", worst, 1e-9));

    let rule = haar_quadrature(3);
    let nodes = match &rule.nodes {
        QuadratureNodes::Rotations(v) => v.clone(),
        _ => unreachable!(),
    };
    let mut acc = 0.0;
    for (g, w) in nodes.iter().zip(rule.weights.iter()) {
        let t = wigner_matrix(3, g);
        acc += w * t[(1, 3)].norm_sqr();
    }
    out.push(check(
        "harmonics",
        "representation_orthogonality",
        (acc - 1.0 / 7.0).abs(),
        1e-12,
    ));

    let f = random_spectrum(5, &mut rng);
    let rule = haar_quadrature(5);
    let nodes = match &rule.nodes {
        QuadratureNodes::Rotations(v) => v.clone(),
        _ => unreachable!(),
    };
    let quad: f64 = nodes
        .iter()
        .zip(rule.weights.iter())
        .map(|(g, w)| w * synth_so3(&f, g).norm_sqr())
        .sum();
    out.push(check(
        "harmonics",
        "parseval",
        (quad - f.l2_norm_sq()).abs(),
        1e-10,
    ));

    let fa = random_spectrum(3, &mut rng);
    let fb = random_spectrum(3, &mut rng);
    let conv = convolve(&fa, &fb);
    let rule = haar_quadrature(6);
    let nodes = match &rule.nodes {
        QuadratureNodes::Rotations(v) => v.clone(),
        _ => unreachable!(),
    };
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let g = rand_euler(&mut rng);
        let qg = quat_from_euler(&g);
        let mut acc = Complex64::new(0.0, 0.0);
        for (h, w) in nodes.iter().zip(rule.weights.iter()) {
            let qh = quat_from_euler(h);
            let rel = euler_from_quat(&qh.conj().mul(&qg));
            acc += *w * synth_so3(&fa, h) * synth_so3(&fb, &rel);
        }
        worst = worst.max((acc - synth_so3(&conv, &g)).norm());
    }
    out.push(check("harmonics", "convolution_theorem", worst, 1e-8));

    let f = random_spectrum(4, &mut rng);
    let lap = laplacian_so3(&f);
    let mut worst = 0.0_f64;
    for k in 0..=4usize {
        let factor = -((k * (k + 1)) as f64);
        let a = lap.block(k);
        let b = f.block(k).scaled_re(factor);
        worst = worst.max(a.max_abs_diff(&b));
    }
    out.push(check("harmonics", "laplacian_eigenvalue", worst, 1e-12));

    out
}

fn rotations_suite(opt: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed.wrapping_add(1));
    let mut out = Vec::new();

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let p = rand_quat(&mut rng);
        let q = rand_quat(&mut rng);
        let lhs = tau(&q.mul(&p));
        let rhs = tau(&q).compose(&tau(&p));
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    out.push(check("rotations", "cover_homomorphism", worst, 1e-12));

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let q = rand_quat(&mut rng);
        worst = worst.max(tau(&q).max_abs_diff(&tau(&q.neg())));
    }
    out.push(check("rotations", "double_cover_sign", worst, 1e-14));

    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let q = rand_quat(&mut rng);
        let back = quat_from_euler(&euler_from_quat(&q));
        worst = worst.max(1.0 - q.dot(&back).abs());
    }
    out.push(check("rotations", "euler_round_trip", worst, 1e-10));

    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let x = rand_unit_vec(&mut rng);
        let y = rand_unit_vec(&mut rng);
        let c = circle_from_pair(x, y).expect("not antipodal");
        for j in 0..5 {
            let t = 2.0 * PI * j as f64 / 5.0;
            let moved = circle_point(&c, t).rotate(y);
            worst = worst.max(vec3::norm(vec3::sub(moved, x)));
        }
    }
    out.push(check("rotations", "circle_carries_pair", worst, 1e-12));

    out
}

fn radon_suite(opt: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed.wrapping_add(2));
    let four_pi = 4.0 * PI * opt.four_pi_scale;
    let mut out = Vec::new();

    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let f = random_spectrum(6, &mut rng);
        let back = radon_invert(&radon_forward_spectral(&f));
        worst = worst.max(back.max_block_diff(&f));
    }
    out.push(check("radon", "spectral_round_trip", worst, 1e-12));

    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let f = random_spectrum(6, &mut rng);
        let lhs = f.l2_norm_sq().sqrt();
        let rhs = sobolev_norm_pair(&radon_forward_spectral(&f), 0.5) / four_pi;
        worst = worst.max((lhs - rhs).abs());
    }
    out.push(check("radon", "sobolev_isometry", worst, 1e-10));

    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let f = random_spectrum(6, &mut rng);
        let back = radon_adjoint(&radon_forward_spectral(&f));
        let mut local = 0.0_f64;
        for k in 0..=6usize {
            let scaled = back.block(k).scaled_re(1.0 / four_pi);
            local = local.max(scaled.max_abs_diff(f.block(k)));
        }
        worst = worst.max(local);
    }
    out.push(check("radon", "adjoint_inversion", worst, 1e-10));

    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let f = random_spectrum(4, &mut rng);
        let g = radon_forward_spectral(&f);
        let x = rand_s2(&mut rng);
        let y = rand_s2(&mut rng);
        let numeric = radon_forward_numeric(&f, x.to_vec(), y.to_vec(), 2 * 4 + 2).unwrap();
        let spectral = pair_eval(&g, &x, &y).unwrap();
        worst = worst.max((numeric - spectral).norm());
    }
    out.push(check("radon", "numeric_matches_spectral", worst, 1e-9));

    let f = random_spectrum(7, &mut rng);
    let p = xray_forward(&f);
    let mut worst = 0.0_f64;
    for k in (1..=7usize).step_by(2) {
        worst = worst.max(p.block(k).max_abs());
    }
    out.push(check("radon", "xray_odd_kernel", worst, 0.0));

    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let f = random_spectrum(5, &mut rng);
        let rec = radon_invert(&xray_forward(&f));
        worst = worst.max(rec.max_block_diff(&even_part(&f)));
    }
    out.push(check("radon", "xray_recovers_even_part", worst, 1e-12));

    out
}

fn bump_spectrum() -> SO3Spectrum {
    let mut f = SO3Spectrum::uniform(2);
    f.block_mut(2)[(0, 2)] = Complex64::new(0.15, 0.0);
    f.block_mut(2)[(4, 2)] = Complex64::new(0.15, 0.0);
    f
}

fn sphere3_suite(opt: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed.wrapping_add(3));
    let mut out = Vec::new();

    let one = SO3Spectrum::uniform(0);
    let lone = LiftedFunction::new(&one);
    let ctl0 = InversionControls::for_bandwidth(0);
    let mut worst = 0.0_f64;
    for _ in 0..2 {
        let q = rand_quat(&mut rng);
        let mut phi = |c: &GreatCirclePair| geodesic_radon(&lone, c, ctl0.circle_nodes);
        let (v, _) = helgason_invert(&mut phi, &q, &ctl0).unwrap();
        worst = worst.max((v - 1.0).abs());
        let g = rand_euler(&mut rng);
        let (vm, _) = matthies_invert(&lone, &g, &ctl0).unwrap();
        worst = worst.max((vm - 1.0).abs());
    }
    out.push(check("sphere3", "uniform_reproduces_one", worst, 1e-10));

    let f = bump_spectrum();
    let lift = LiftedFunction::new(&f);
    let ctl = InversionControls::for_bandwidth(2);
    let mut worst = 0.0_f64;
    for _ in 0..3 {
        let q = rand_quat(&mut rng);
        let truth = lift.eval(&q);
        let mut phi = |c: &GreatCirclePair| geodesic_radon(&lift, c, ctl.circle_nodes);
        let (v, _) = helgason_invert(&mut phi, &q, &ctl).unwrap();
        worst = worst.max((v - truth).abs() / truth.abs());
    }
    out.push(check("sphere3", "helgason_desk_scale", worst, 1e-2));

    let mut worst = 0.0_f64;
    for _ in 0..2 {
        let g = rand_euler(&mut rng);
        let truth = synth_so3(&f, &g).re;
        let (v, _) = matthies_invert(&lift, &g, &ctl).unwrap();
        worst = worst.max((v - truth).abs() / truth.abs());
    }
    out.push(check("sphere3", "matthies_desk_scale", worst, 1e-2));

    let mut worst = 0.0_f64;
    for _ in 0..2 {
        let g = rand_euler(&mut rng);
        let (lhs, rhs) = r0_check(&lift, &g, &ctl).unwrap();
        worst = worst.max((lhs / rhs - 1.0).abs());
        let (lhs1, rhs1) = r1_check(&lift, &g, PI / 3.0, &ctl).unwrap();
        worst = worst.max((lhs1 / rhs1 - 1.0).abs());
    }
    out.push(check("sphere3", "r0_r1_identities", worst, 1e-4));

    out
}

fn sampling_suite(opt: &VerifyOptions) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(opt.seed.wrapping_add(4));
    let mut out = Vec::new();

    let lat = product_lattice(0.5).expect("buildable");
    let recheck_defect = match recheck_lattice(&lat, AUDIT_PROBE_SEED) {
        Ok(_) => 0.0,
        Err(_) => 1.0,
    };
    out.push(check("sampling", "lattice_recheck", recheck_defect, 0.0));

    let cub = cubature_weights(lat, 2).expect("feasible at this density");
    out.push(check("sampling", "cubature_residual", cub.residual, 1e-9));
    let (lo, hi) = cub.weight_extrema();
    out.push(check("sampling", "weights_positive", (-lo).max(0.0), 0.0));
    let med = cub.median_weight();
    out.push(check(
        "sampling",
        "weight_spread_vs_median",
        (hi / med).max(med / lo),
        4.0,
    ));

    let bandwidth = 1usize;
    let rho = rho_for_bandwidth(bandwidth, DEFAULT_DENSITY_CONSTANT);
    let cub = cubature_weights(product_lattice(rho).expect("buildable"), 2 * bandwidth)
        .expect("feasible");
    let f = symmetrize_real(&random_spectrum(bandwidth, &mut rng));
    let g = radon_forward_spectral(&f);
    let (xs, ys) = match &cub.lattice.points {
        LatticePoints::Product { xs, ys } => (xs.clone(), ys.clone()),
        _ => unreachable!(),
    };
    let field = texradon_core::radon::pair_field(&g, &xs, &ys).unwrap();
    let (rec, _) = discrete_invert(&cub, &field, bandwidth).unwrap();
    out.push(check(
        "sampling",
        "discrete_round_trip",
        rec.max_block_diff(&f),
        1e-9,
    ));

    out
}
