// Oracle tests that pin the analytic constants the library is built around
// using methods independent of the code paths under test: finite differences
// for the Casimir eigenvalue, Gauss-Legendre integration for Wigner row
// orthogonality, and three separately implemented circle averages.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use texradon_core::harmonics::spectrum::symmetrize_real;
use texradon_core::harmonics::{
    laplacian_so3, legendre_p, pair_eval, sph_harm, synth_so3, wigner_matrix, S2Point, SO3Spectrum,
};
use texradon_core::radon::{radon_forward_numeric, radon_forward_spectral};
use texradon_core::rotations::{euler_from_quat, EulerAngles, UnitQuaternion};
use texradon_core::sphere3::{pair_value, LiftedFunction};
use texradon_core::{harmonics::gauss_legendre, vec3};

fn rand_spectrum(bandwidth: usize, rng: &mut ChaCha8Rng) -> SO3Spectrum {
    let mut f = SO3Spectrum::zeros(bandwidth);
    for k in 0..=bandwidth {
        for z in f.block_mut(k).data_mut() {
            *z = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
    }
    f
}

fn rand_unit_vec(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = 1.0 - 2.0 * rng.gen::<f64>();
    let phi = 2.0 * PI * rng.gen::<f64>();
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn axis_rotation(axis: [f64; 3], angle: f64) -> UnitQuaternion {
    let (s, c) = (angle / 2.0).sin_cos();
    UnitQuaternion::normalized(c, s * axis[0], s * axis[1], s * axis[2]).expect("unit axis")
}

// Sum of second derivatives along the three coordinate one-parameter
// subgroups equals the Laplacian; measured by central differences and
// compared with the spectral multiplier.
#[test]
fn casimir_eigenvalue_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let f = rand_spectrum(3, &mut rng);
    let lap = laplacian_so3(&f);
    let h = 1e-4;
    let axes = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 0..6 {
        let g = UnitQuaternion::normalized(
            rng.gen::<f64>() - 0.5,
            rng.gen::<f64>() - 0.5,
            rng.gen::<f64>() - 0.5,
            rng.gen::<f64>() - 0.5,
        )
        .expect("generic draw")
        .canonical();
        let center = synth_so3(&f, &euler_from_quat(&g));
        let mut fd = Complex64::new(0.0, 0.0);
        for axis in axes {
            let plus = synth_so3(&f, &euler_from_quat(&g.mul(&axis_rotation(axis, h))));
            let minus = synth_so3(&f, &euler_from_quat(&g.mul(&axis_rotation(axis, -h))));
            fd += (plus - 2.0 * center + minus) / (h * h);
        }
        let spectral = synth_so3(&lap, &euler_from_quat(&g));
        assert!(
            (fd - spectral).norm() < 1e-5,
            "finite differences {fd} vs multiplier {spectral}"
        );
    }
}

// With the first and third angles fixed so their phases cancel, the rotation
// matrix entries reduce to the real beta kernel; rows of different degrees
// are orthogonal over [0, pi] with weight sin(beta) and normalize to
// 2/(2k+1). The integrand is polynomial in cos(beta), so a modest
// Gauss-Legendre rule is exact.
#[test]
fn beta_kernel_rows_integrate_to_inverse_dimension() {
    let (nodes, weights) = gauss_legendre(12);
    for k in 0..=4usize {
        for j in 0..=4usize {
            let top = k.min(j) as i64;
            for (m, n) in [(0, 0), (1, -1), (top, 0), (-top, top)] {
                if m.abs() > top || n.abs() > top {
                    continue;
                }
                let mut acc = 0.0;
                for (c, w) in nodes.iter().zip(&weights) {
                    let beta = c.clamp(-1.0, 1.0).acos();
                    let e = EulerAngles::new(1.5 * PI, beta, 0.5 * PI).unwrap();
                    let tk = wigner_matrix(k, &e);
                    let tj = wigner_matrix(j, &e);
                    let a = tk[((m + k as i64) as usize, (n + k as i64) as usize)];
                    let b = tj[((m + j as i64) as usize, (n + j as i64) as usize)];
                    acc += w * (a * b).re;
                }
                let expect = if k == j { 2.0 / (2 * k + 1) as f64 } else { 0.0 };
                assert!(
                    (acc - expect).abs() < 1e-13,
                    "k={k} j={j} m={m} n={n}: {acc} vs {expect}"
                );
            }
        }
    }
}

// The central column of the beta kernel is the Legendre polynomial.
#[test]
fn beta_kernel_center_is_legendre() {
    for k in 0..=6usize {
        for i in 0..8 {
            let beta = PI * (i as f64 + 0.5) / 8.0;
            let e = EulerAngles::new(1.5 * PI, beta, 0.5 * PI).unwrap();
            let t = wigner_matrix(k, &e);
            let center = t[(k, k)];
            assert!((center.re - legendre_p(k, beta.cos())).abs() < 1e-13);
            assert!(center.im.abs() < 1e-13);
        }
    }
}

// Three independent implementations of the same circle average: quadrature
// on the rotation circle, the blockwise spectral transform evaluated through
// the basis products, and the quaternion-space lift.
#[test]
fn circle_average_paths_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    let f = symmetrize_real(&rand_spectrum(3, &mut rng));
    let g = radon_forward_spectral(&f);
    let lift = LiftedFunction::new(&f);
    let n = 2 * f.bandwidth() + 2;
    let mut done = 0;
    while done < 20 {
        let x = rand_unit_vec(&mut rng);
        let y = rand_unit_vec(&mut rng);
        if vec3::dot(x, y) < -1.0 + 1e-6 {
            continue;
        }
        done += 1;
        let spectral = pair_eval(&g, &S2Point::from_vec(x), &S2Point::from_vec(y)).unwrap();
        let numeric = radon_forward_numeric(&f, x, y, n).unwrap();
        let lifted = pair_value(&lift, x, y, n);
        assert!(spectral.im.abs() < 1e-12, "real input, real transform");
        assert!((numeric - spectral).norm() < 1e-10);
        assert!((lifted - spectral.re).abs() < 1e-10);
    }
}

// Spot check of the spherical harmonic values entering the basis products
// against closed forms at hand-picked points.
#[test]
fn harmonic_closed_forms() {
    let y00 = sph_harm(0, 0, 1.1, 2.3).unwrap();
    assert!((y00.re - 0.5 / PI.sqrt()).abs() < 1e-15 && y00.im.abs() < 1e-15);

    let theta = 0.8;
    let phi = 5.1;
    let y10 = sph_harm(1, 0, theta, phi).unwrap();
    assert!((y10.re - (3.0 / (4.0 * PI)).sqrt() * theta.cos()).abs() < 1e-14);

    let y11 = sph_harm(1, 1, theta, phi).unwrap();
    let mag = (3.0 / (8.0 * PI)).sqrt() * theta.sin();
    let expect = -mag * Complex64::new(phi.cos(), phi.sin());
    assert!((y11 - expect).norm() < 1e-14);

    let y22 = sph_harm(2, 2, theta, phi).unwrap();
    let mag2 = 0.25 * (15.0 / (2.0 * PI)).sqrt() * theta.sin() * theta.sin();
    let expect2 = mag2 * Complex64::new((2.0 * phi).cos(), (2.0 * phi).sin());
    assert!((y22 - expect2).norm() < 1e-14);
}
