// End-to-end tests of the texradon binary: file flows, exit codes, and
// determinism guarantees, driven through real process invocations.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use texradon_cli::format::{
    json_to_cubature, json_to_pair, json_to_so3, read_json, write_csv, LatticeFileJson,
    SpectrumJson,
};
use texradon_core::radon::{pair_field, radon_forward_spectral};
use texradon_core::sampling::LatticePoints;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_texradon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("no signal")
}

fn p(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn s(path: &Path) -> String {
    path.to_str().expect("utf8 path").to_string()
}

#[test]
fn generate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = p(dir.path(), "a1.json");
    let a2 = p(dir.path(), "a2.json");
    let b = p(dir.path(), "b.json");
    run_ok(&["generate", "--bandwidth", "3", "--seed", "42", "--out", &s(&a1)]);
    run_ok(&["generate", "--bandwidth", "3", "--seed", "42", "--out", &s(&a2)]);
    run_ok(&["generate", "--bandwidth", "3", "--seed", "43", "--out", &s(&b)]);
    let bytes1 = std::fs::read(&a1).unwrap();
    let bytes2 = std::fs::read(&a2).unwrap();
    let bytes3 = std::fs::read(&b).unwrap();
    assert_eq!(bytes1, bytes2, "same seed must reproduce the same file");
    assert_ne!(bytes1, bytes3, "different seeds must differ");
}

#[test]
fn nonneg_generation_doubles_bandwidth_and_normalizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path(), "f.json");
    let msg = run_ok(&[
        "generate",
        "--bandwidth",
        "2",
        "--nonneg",
        "--out",
        &s(&out),
    ]);
    let text = String::from_utf8_lossy(&msg.stdout).to_string();
    assert!(text.contains("bandwidth-4"), "squaring doubles the degree: {text}");
    let f = json_to_so3(&read_json::<SpectrumJson>(&out).unwrap()).unwrap();
    assert_eq!(f.bandwidth(), 4);
    let mean = f.block(0)[(0, 0)];
    assert!((mean.re - 1.0).abs() < 1e-12 && mean.im.abs() < 1e-14);

    let flat = p(dir.path(), "flat.json");
    run_ok(&["generate", "--bandwidth", "0", "--out", &s(&flat)]);
    let u = json_to_so3(&read_json::<SpectrumJson>(&flat).unwrap()).unwrap();
    assert_eq!(u.bandwidth(), 0);
    assert!((u.block(0)[(0, 0)].re - 1.0).abs() < 1e-15);
}

#[test]
fn forward_then_invert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = p(dir.path(), "f.json");
    let g_path = p(dir.path(), "g.json");
    let back_path = p(dir.path(), "back.json");
    run_ok(&["generate", "--bandwidth", "4", "--seed", "11", "--out", &s(&f_path)]);
    run_ok(&["radon", "--input", &s(&f_path), "--out", &s(&g_path)]);
    run_ok(&["invert", "--input", &s(&g_path), "--out", &s(&back_path)]);
    let f = json_to_so3(&read_json::<SpectrumJson>(&f_path).unwrap()).unwrap();
    let back = json_to_so3(&read_json::<SpectrumJson>(&back_path).unwrap()).unwrap();
    assert!(back.max_block_diff(&f) < 1e-12);

    let g = json_to_pair(&read_json::<SpectrumJson>(&g_path).unwrap()).unwrap();
    let expect = radon_forward_spectral(&f);
    assert!(g.max_block_diff(&expect) < 1e-12);
}

#[test]
fn grid_output_is_thread_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = p(dir.path(), "f.json");
    let g_path = p(dir.path(), "g.json");
    let grid1 = p(dir.path(), "grid1.csv");
    let grid3 = p(dir.path(), "grid3.csv");
    run_ok(&["generate", "--bandwidth", "3", "--seed", "4", "--out", &s(&f_path)]);
    run_ok(&[
        "radon", "--input", &s(&f_path), "--out", &s(&g_path), "--grid-out", &s(&grid1),
        "--threads", "1",
    ]);
    run_ok(&[
        "radon", "--input", &s(&f_path), "--out", &s(&g_path), "--grid-out", &s(&grid3),
        "--threads", "3",
    ]);
    let a = std::fs::read(&grid1).unwrap();
    let b = std::fs::read(&grid3).unwrap();
    assert_eq!(a, b, "worker count must not change the bytes");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x_theta,x_phi,y_theta,y_phi,value");
    let rows: Vec<&str> = lines.collect();
    // one row per ordered node pair of the degree-3 sphere rule
    let nodes = 4 * 7;
    assert_eq!(rows.len(), nodes * nodes);
    assert!(rows.iter().all(|r| r.split(',').count() == 5));
}

#[test]
fn xray_zeroes_odd_blocks_in_files() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = p(dir.path(), "f.json");
    let p_path = p(dir.path(), "p.json");
    run_ok(&["generate", "--bandwidth", "3", "--seed", "8", "--out", &s(&f_path)]);
    run_ok(&["xray", "--input", &s(&f_path), "--out", &s(&p_path)]);
    let g = json_to_pair(&read_json::<SpectrumJson>(&p_path).unwrap()).unwrap();
    assert_eq!(g.block(1).max_abs(), 0.0);
    assert_eq!(g.block(3).max_abs(), 0.0);
    assert!(g.block(2).max_abs() > 0.0);
}

#[test]
fn lattice_cubature_discrete_invert_file_flow() {
    let dir = tempfile::tempdir().unwrap();
    let lat_path = p(dir.path(), "lat.json");
    let cub_path = p(dir.path(), "cub.json");
    let f_path = p(dir.path(), "f.json");
    let g_path = p(dir.path(), "g.json");
    let samples_path = p(dir.path(), "samples.csv");
    let rec_path = p(dir.path(), "rec.json");

    // density fit for bandwidth 1: 0.7 / sqrt(3)
    run_ok(&["lattice", "--rho", "0.404", "--out", &s(&lat_path)]);
    run_ok(&[
        "cubature", "--lattice", &s(&lat_path), "--degree", "2", "--out", &s(&cub_path),
    ]);
    let cub = json_to_cubature(&read_json::<LatticeFileJson>(&cub_path).unwrap()).unwrap();
    assert!(cub.residual < 1e-9);
    assert!(cub.weight_extrema().0 > 0.0);

    run_ok(&["generate", "--bandwidth", "1", "--seed", "21", "--out", &s(&f_path)]);
    run_ok(&["radon", "--input", &s(&f_path), "--out", &s(&g_path)]);
    let f = json_to_so3(&read_json::<SpectrumJson>(&f_path).unwrap()).unwrap();
    let g = json_to_pair(&read_json::<SpectrumJson>(&g_path).unwrap()).unwrap();
    let (xs, ys) = match &cub.lattice.points {
        LatticePoints::Product { xs, ys } => (xs.clone(), ys.clone()),
        _ => unreachable!("product lattice file"),
    };
    let field = pair_field(&g, &xs, &ys).unwrap();
    let mut rows = Vec::with_capacity(field.len());
    for (idx, v) in field.iter().enumerate() {
        let (x, y) = cub.node(idx);
        rows.push(vec![x.theta, x.phi, y.theta, y.phi, v.re]);
    }
    write_csv(&samples_path, "x_theta,x_phi,y_theta,y_phi,value", &rows).unwrap();

    run_ok(&[
        "discrete-invert",
        "--cubature", &s(&cub_path),
        "--samples", &s(&samples_path),
        "--bandwidth", "1",
        "--out", &s(&rec_path),
    ]);
    let rec = json_to_so3(&read_json::<SpectrumJson>(&rec_path).unwrap()).unwrap();
    assert!(rec.max_block_diff(&f) < 1e-9);

    // shuffled rows no longer follow the node order
    let mut bad = rows.clone();
    bad.swap(0, 1);
    let bad_path = p(dir.path(), "bad.csv");
    write_csv(&bad_path, "x_theta,x_phi,y_theta,y_phi,value", &bad).unwrap();
    assert_eq!(
        exit_code(&[
            "discrete-invert",
            "--cubature", &s(&cub_path),
            "--samples", &s(&bad_path),
            "--bandwidth", "1",
            "--out", &s(&rec_path),
        ]),
        4
    );
}

#[test]
fn infeasible_degree_reports_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let lat_path = p(dir.path(), "sparse.json");
    let cub_path = p(dir.path(), "cub.json");
    run_ok(&["lattice", "--rho", "1.4", "--out", &s(&lat_path)]);
    assert_eq!(
        exit_code(&[
            "cubature", "--lattice", &s(&lat_path), "--degree", "8", "--out", &s(&cub_path),
        ]),
        3
    );
}

#[test]
fn dishonest_certification_reports_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let lat_path = p(dir.path(), "forged.json");
    let cub_path = p(dir.path(), "cub.json");
    // a single pair point cannot have this separation and covering
    std::fs::write(
        &lat_path,
        concat!(
            "{\"space\":\"S2xS2\",\"rho\":0.9,",
            "\"points\":{\"kind\":\"pairs\",\"pairs\":[[1.0,1.0,1.5,2.0]]},",
            "\"certification\":{\"min_pairwise_distance\":3.2,",
            "\"covering_radius\":0.9,\"max_multiplicity\":1,\"probe_mesh\":0.075}}\n"
        ),
    )
    .unwrap();
    assert_eq!(
        exit_code(&[
            "cubature", "--lattice", &s(&lat_path), "--degree", "1", "--out", &s(&cub_path),
        ]),
        2
    );
}

#[test]
fn matthies_writes_comparison_table() {
    let dir = tempfile::tempdir().unwrap();
    let f_path = p(dir.path(), "f.json");
    let m_path = p(dir.path(), "m.csv");
    run_ok(&["generate", "--bandwidth", "1", "--nonneg", "--seed", "3", "--out", &s(&f_path)]);
    run_ok(&[
        "matthies", "--input", &s(&f_path), "--count", "3", "--seed", "5", "--out", &s(&m_path),
    ]);
    let text = std::fs::read_to_string(&m_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q0,q1,q2,q3,f_true,f_matthies,f_helgason,est_error"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 8);
        let norm2: f64 = cols[..4].iter().map(|a| a * a).sum();
        assert!((norm2 - 1.0).abs() < 1e-12);
        assert!((cols[5] - cols[4]).abs() < 1e-6, "matthies value off: {row}");
        assert!((cols[6] - cols[4]).abs() < 1e-6, "helgason value off: {row}");
    }
}

#[test]
fn verify_command_reports_and_gates() {
    assert_eq!(exit_code(&["verify", "--suite", "radon"]), 0);
    assert_eq!(
        exit_code(&["verify", "--suite", "radon", "--four-pi-scale", "1.01"]),
        2,
        "a wrong normalization constant must fail the isometry check"
    );
    assert_eq!(exit_code(&["verify", "--suite", "bogus"]), 4);

    let out = run_ok(&["verify", "--suite", "rotations", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().len() >= 4);
}

#[test]
fn pipeline_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = p(dir.path(), "report.json");
    run_ok(&["pipeline", "--bandwidth", "2", "--seed", "9", "--out", &s(&report_path)]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["stages"].as_array().unwrap().len(), 3);

    assert_eq!(
        exit_code(&["pipeline", "--bandwidth", "2", "--stages", "warp"]),
        4,
        "unknown stage name"
    );
}

#[test]
fn missing_input_reports_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path(), "out.json");
    assert_eq!(exit_code(&["invert", "--input", "nosuch.json", "--out", &s(&out)]), 4);
    assert_eq!(exit_code(&["radon", "--input", "nosuch.json", "--out", &s(&out)]), 4);
}
