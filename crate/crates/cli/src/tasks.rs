//! Command implementations. Every number these emit comes from a library
//! operation; this layer only moves data between files and the library.

use std::path::Path;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use texradon_core::harmonics::quadrature::{haar_quadrature, sphere_quadrature, QuadratureNodes};
use texradon_core::harmonics::spectrum::{analyze_so3, symmetrize_real, synth_so3, synth_so3_many};
use texradon_core::harmonics::SO3Spectrum;
use texradon_core::radon::{
    even_part, pair_field, radon_forward_spectral, radon_invert, xray_forward,
};
use texradon_core::rotations::{euler_from_quat, GreatCirclePair, UnitQuaternion};
use texradon_core::sampling::{
    cubature_weights, discrete_invert, product_lattice, recheck_lattice, rho_for_bandwidth,
    LatticePoints, AUDIT_PROBE_SEED, DEFAULT_DENSITY_CONSTANT,
};
use texradon_core::sphere3::{
    geodesic_radon, helgason_invert, matthies_invert, InversionControls, LiftedFunction,
};

use crate::format::{
    cubature_to_json, json_to_cubature, json_to_lattice, json_to_pair, json_to_so3,
    lattice_to_json, pair_to_json, read_csv, read_json, so3_to_json, write_csv, write_json,
};
use crate::{map_ordered, TaskError, TaskResult};

/// Random spectrum of a real-valued function, entries of order one.
pub fn random_real_spectrum(bandwidth: usize, rng: &mut ChaCha8Rng) -> SO3Spectrum {
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
    symmetrize_real(&f)
}

fn scale_spectrum(f: &SO3Spectrum, c: f64) -> SO3Spectrum {
    SO3Spectrum::from_blocks(f.blocks().iter().map(|b| b.scaled_re(c)).collect())
        .expect("shape preserved")
}

fn haar_nodes(rule: &texradon_core::harmonics::QuadratureRule) -> Vec<texradon_core::rotations::EulerAngles> {
    match &rule.nodes {
        QuadratureNodes::Rotations(v) => v.clone(),
        QuadratureNodes::Sphere(_) => unreachable!("haar rules hold rotations"),
    }
}

#[derive(Debug)]
pub struct GenerateOutcome {
    pub bandwidth: usize,
    /// Minimum over the nonnegativity spot-check grid, when --nonneg ran.
    pub grid_min: Option<f64>,
}

/// Synthesize a density spectrum. Without `nonneg` the output is a random
/// real-valued spectrum at the requested bandwidth. With `nonneg` a random
/// f₀ is squared pointwise on a Haar grid, re-analyzed at twice the
/// bandwidth, and scaled so the mean is exactly one; the result is checked
/// to be nonnegative on a fixed grid of more than 10⁴ rotations.
pub fn generate(bandwidth: usize, seed: u64, nonneg: bool, out: &Path) -> TaskResult<GenerateOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if bandwidth == 0 {
        let f = SO3Spectrum::uniform(0);
        write_json(out, &so3_to_json(&f))?;
        return Ok(GenerateOutcome {
            bandwidth: 0,
            grid_min: nonneg.then_some(1.0),
        });
    }
    let f0 = random_real_spectrum(bandwidth, &mut rng);
    if !nonneg {
        write_json(out, &so3_to_json(&f0))?;
        return Ok(GenerateOutcome { bandwidth, grid_min: None });
    }
    let rule = haar_quadrature(2 * bandwidth);
    let nodes = haar_nodes(&rule);
    let squared: Vec<Complex64> = synth_so3_many(&f0, &nodes)
        .iter()
        .map(|v| Complex64::new(v.re * v.re, 0.0))
        .collect();
    let f2 = analyze_so3(&squared, &rule, 2 * bandwidth)?;
    let mean = f2.block(0)[(0, 0)].re;
    if mean <= 0.0 {
        return Err(TaskError::Tolerance(format!(
            "squared sample mean {mean:e} is not positive"
        )));
    }
    let f = scale_spectrum(&f2, 1.0 / mean);
    let check_rule = haar_quadrature(13);
    let check_nodes = haar_nodes(&check_rule);
    let grid_min = synth_so3_many(&f, &check_nodes)
        .iter()
        .map(|v| v.re)
        .fold(f64::INFINITY, f64::min);
    if grid_min < -1e-10 {
        return Err(TaskError::Tolerance(format!(
            "nonneg output dips to {grid_min:e} on the check grid"
        )));
    }
    write_json(out, &so3_to_json(&f))?;
    Ok(GenerateOutcome {
        bandwidth: 2 * bandwidth,
        grid_min: Some(grid_min),
    })
}

/// Forward transform to pair-space coefficients, optionally with a CSV
/// field (x_theta, x_phi, y_theta, y_phi, value) on a quadrature grid.
pub fn forward(input: &Path, out: &Path, grid_out: Option<&Path>, threads: usize) -> TaskResult<()> {
    let f = json_to_so3(&read_json(input)?)?;
    let g = radon_forward_spectral(&f);
    write_json(out, &pair_to_json(&g))?;
    if let Some(grid_path) = grid_out {
        let rule = sphere_quadrature(f.bandwidth());
        let nodes = match &rule.nodes {
            QuadratureNodes::Sphere(v) => v.clone(),
            QuadratureNodes::Rotations(_) => unreachable!(),
        };
        let per_x = map_ordered(&nodes, threads, |x| {
            let vals = pair_field(&g, core::slice::from_ref(x), &nodes).expect("valid nodes");
            nodes
                .iter()
                .zip(vals)
                .map(|(y, v)| vec![x.theta, x.phi, y.theta, y.phi, v.re])
                .collect::<Vec<_>>()
        });
        let rows: Vec<Vec<f64>> = per_x.into_iter().flatten().collect();
        write_csv(grid_path, "x_theta,x_phi,y_theta,y_phi,value", &rows)?;
    }
    Ok(())
}

pub fn invert(input: &Path, out: &Path) -> TaskResult<()> {
    let g = json_to_pair(&read_json(input)?)?;
    write_json(out, &so3_to_json(&radon_invert(&g)))
}

pub fn xray(input: &Path, out: &Path) -> TaskResult<()> {
    let f = json_to_so3(&read_json(input)?)?;
    write_json(out, &pair_to_json(&xray_forward(&f)))
}

#[derive(Debug)]
pub struct LatticeOutcome {
    pub points: usize,
    pub separation: f64,
    pub covering: f64,
}

pub fn lattice(rho: f64, out: &Path) -> TaskResult<LatticeOutcome> {
    let lat = product_lattice(rho)?;
    let outcome = LatticeOutcome {
        points: lat.len(),
        separation: lat.certification.min_pairwise_distance,
        covering: lat.certification.covering_radius,
    };
    write_json(out, &lattice_to_json(&lat))?;
    Ok(outcome)
}

#[derive(Debug)]
pub struct CubatureOutcome {
    pub residual: f64,
    pub min_weight: f64,
    pub max_weight: f64,
}

pub fn cubature(lattice_path: &Path, degree: usize, out: &Path) -> TaskResult<CubatureOutcome> {
    let lat = json_to_lattice(&read_json(lattice_path)?)?;
    recheck_lattice(&lat, AUDIT_PROBE_SEED)?;
    let cub = cubature_weights(lat, degree)?;
    let (min_weight, max_weight) = cub.weight_extrema();
    let outcome = CubatureOutcome {
        residual: cub.residual,
        min_weight,
        max_weight,
    };
    write_json(out, &cubature_to_json(&cub))?;
    Ok(outcome)
}

#[derive(Debug)]
pub struct DiscreteOutcome {
    pub sample_count: usize,
    pub moment_space_dim: usize,
    pub rotation_space_dim: usize,
}

/// Invert transform samples given the cubature file and a CSV whose rows
/// follow the lattice node order.
pub fn discrete_invert_files(
    cubature_path: &Path,
    samples_path: &Path,
    bandwidth: usize,
    out: &Path,
) -> TaskResult<DiscreteOutcome> {
    let cub = json_to_cubature(&read_json(cubature_path)?)?;
    let rows = read_csv(samples_path, 5)?;
    if rows.len() != cub.len() {
        return Err(TaskError::Io(format!(
            "{} sample rows for {} lattice nodes",
            rows.len(),
            cub.len()
        )));
    }
    let mut values = Vec::with_capacity(rows.len());
    for (idx, row) in rows.iter().enumerate() {
        let (x, y) = cub.node(idx);
        let drift = (row[0] - x.theta)
            .abs()
            .max((row[1] - x.phi).abs())
            .max((row[2] - y.theta).abs())
            .max((row[3] - y.phi).abs());
        if drift > 1e-9 {
            return Err(TaskError::Io(format!(
                "sample row {} does not follow the lattice node order (coordinate drift {drift:e})",
                idx + 1
            )));
        }
        values.push(Complex64::new(row[4], 0.0));
    }
    let (f, report) = discrete_invert(&cub, &values, bandwidth)?;
    write_json(out, &so3_to_json(&f))?;
    Ok(DiscreteOutcome {
        sample_count: report.sample_count,
        moment_space_dim: report.space_dim,
        rotation_space_dim: (0..=bandwidth).map(|k| (2 * k + 1) * (2 * k + 1)).sum(),
    })
}

fn random_quat(rng: &mut ChaCha8Rng) -> UnitQuaternion {
    loop {
        let v: [f64; 4] = [
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
        ];
        let n2: f64 = v.iter().map(|a| a * a).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return UnitQuaternion::normalized(v[0], v[1], v[2], v[3])
                .expect("norm checked")
                .canonical();
        }
    }
}

#[derive(Debug)]
pub struct MatthiesOutcome {
    pub rows: usize,
    pub max_rel_err: f64,
}

/// Desk-scale inversion comparison at random rotations; writes CSV rows
/// (q0..q3, f_true, f_matthies, f_helgason, est_error).
pub fn matthies(
    input: &Path,
    count: usize,
    seed: u64,
    out: &Path,
    threads: usize,
) -> TaskResult<MatthiesOutcome> {
    let f = json_to_so3(&read_json(input)?)?;
    let ctl = InversionControls::for_bandwidth(f.bandwidth());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quats: Vec<UnitQuaternion> = (0..count).map(|_| random_quat(&mut rng)).collect();
    let rows = map_ordered(&quats, threads, |q| -> TaskResult<Vec<f64>> {
        let lift = LiftedFunction::new(&f);
        let g = euler_from_quat(q);
        let f_true = synth_so3(&f, &g).re;
        let (vm, est) = matthies_invert(&lift, &g, &ctl)?;
        let mut phi = |c: &GreatCirclePair| geodesic_radon(&lift, c, ctl.circle_nodes);
        let (vh, _) = helgason_invert(&mut phi, q, &ctl)?;
        Ok(vec![q.a0, q.a1, q.a2, q.a3, f_true, vm, vh, est])
    });
    let rows = rows.into_iter().collect::<TaskResult<Vec<_>>>()?;
    let max_rel_err = rows
        .iter()
        .map(|r| {
            let scale = r[4].abs().max(1e-12);
            (r[5] - r[4]).abs().max((r[6] - r[4]).abs()) / scale
        })
        .fold(0.0, f64::max);
    write_csv(out, "q0,q1,q2,q3,f_true,f_matthies,f_helgason,est_error", &rows)?;
    Ok(MatthiesOutcome {
        rows: rows.len(),
        max_rel_err,
    })
}

#[derive(Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub pass: bool,
    pub metrics: serde_json::Value,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct PipelineReport {
    pub bandwidth: usize,
    pub seed: u64,
    pub pass: bool,
    pub stages: Vec<StageReport>,
}

fn stage_forward_invert(f: &SO3Spectrum) -> StageReport {
    let g = radon_forward_spectral(f);
    let back = radon_invert(&g);
    let err = back.max_block_diff(f);
    StageReport {
        stage: "forward-invert".into(),
        pass: err < 1e-12,
        metrics: json!({ "max_error": err, "tolerance": 1e-12 }),
        notes: vec![],
    }
}

fn stage_xray(f: &SO3Spectrum) -> StageReport {
    let p = xray_forward(f);
    let back = radon_invert(&p);
    let even = even_part(f);
    let err = back.max_block_diff(&even);
    let odd_energy = f.l2_norm_sq() - even.l2_norm_sq();
    StageReport {
        stage: "xray".into(),
        pass: err < 1e-12,
        metrics: json!({
            "even_part_error": err,
            "tolerance": 1e-12,
            "odd_energy_dropped": odd_energy,
        }),
        notes: vec![
            "odd-degree blocks vanish under the symmetrized transform; only the even part returns"
                .into(),
        ],
    }
}

fn stage_discrete(bandwidth: usize, seed: u64) -> TaskResult<StageReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
    let f = random_real_spectrum(bandwidth, &mut rng);
    let rho = rho_for_bandwidth(bandwidth, DEFAULT_DENSITY_CONSTANT);
    let lat = product_lattice(rho)?;
    let cub = cubature_weights(lat, 2 * bandwidth)?;
    let (xs, ys) = match &cub.lattice.points {
        LatticePoints::Product { xs, ys } => (xs.clone(), ys.clone()),
        _ => unreachable!("product lattice"),
    };
    let g = radon_forward_spectral(&f);
    let field = pair_field(&g, &xs, &ys)?;
    let (rec, report) = discrete_invert(&cub, &field, bandwidth)?;
    let err = rec.max_block_diff(&f);
    let rotation_space_dim: usize = (0..=bandwidth).map(|k| (2 * k + 1) * (2 * k + 1)).sum();
    Ok(StageReport {
        stage: "discrete".into(),
        pass: err < 1e-8 && cub.residual < 1e-9,
        metrics: json!({
            "bandwidth": bandwidth,
            "rho": rho,
            "reconstruction_error": err,
            "tolerance": 1e-8,
            "solver_residual": cub.residual,
            "sample_count": report.sample_count,
            "moment_space_dim": report.space_dim,
            "rotation_space_dim": rotation_space_dim,
        }),
        notes: vec![],
    })
}

/// Chained stages over a generated density; the discrete stage caps its
/// bandwidth at 3 to stay desk-scale.
pub fn pipeline(
    bandwidth: usize,
    seed: u64,
    stages: Option<&str>,
    out: Option<&Path>,
) -> TaskResult<PipelineReport> {
    let names: Vec<String> = match stages {
        Some(s) => s
            .split(',')
            .map(|t| t.trim().to_string())
            .filter(|t| !t.is_empty())
            .collect(),
        None => ["forward-invert", "xray", "discrete"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_real_spectrum(bandwidth.max(1), &mut rng);
    let mut reports = Vec::new();
    for name in &names {
        let report = match name.as_str() {
            "forward-invert" => stage_forward_invert(&f),
            "xray" => stage_xray(&f),
            "discrete" => stage_discrete(bandwidth.clamp(1, 3), seed)?,
            other => return Err(TaskError::Io(format!("unknown stage {other:?}"))),
        };
        println!(
            "stage {}: {} {}",
            report.stage,
            if report.pass { "PASS" } else { "FAIL" },
            report.metrics
        );
        reports.push(report);
    }
    let pass = reports.iter().all(|r| r.pass);
    let report = PipelineReport {
        bandwidth,
        seed,
        pass,
        stages: reports,
    };
    if let Some(path) = out {
        write_json(path, &report)?;
    }
    if !pass {
        return Err(TaskError::Tolerance("a pipeline stage failed".into()));
    }
    Ok(report)
}
