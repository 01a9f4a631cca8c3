//! ρ-lattices: point sets whose radius-ρ/4 balls are disjoint and whose
//! radius-ρ/2 balls cover, on S² and on S²×S² with the product metric
//! d((x,y),(x′,y′)) = sqrt(d(x,x′)² + d(y,y′)²).
//!
//! Covering is certified against a deterministic probe grid: the stored
//! covering radius is the largest probe-to-lattice distance, and the grid's
//! own mesh bound is recorded next to it, so the true covering radius is at
//! most their sum. Separation is exact.

use alloc::vec::Vec;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

use crate::error::Error;
use crate::harmonics::sphere::S2Point;
use crate::vec3;
use crate::Result;

const PI: f64 = core::f64::consts::PI;
const SQRT_2: f64 = core::f64::consts::SQRT_2;

/// Ratio of the probe grid's guaranteed mesh norm to its ring spacing δ:
/// ring offsets contribute δ/2 in latitude and at most δ/2 in longitude arc,
/// and 0.75 > sqrt(2)/2 absorbs the metric distortion.
const PROBE_MESH_FACTOR: f64 = 0.75;

/// Probe-grid seed the builder certifies against.
pub const BUILD_PROBE_SEED: u64 = 11;
/// Default probe-grid seed for independent re-checks.
pub const AUDIT_PROBE_SEED: u64 = 23;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certification {
    /// Exact minimum distance between distinct lattice points.
    pub min_pairwise_distance: f64,
    /// Largest distance from a probe point to its nearest lattice point.
    /// The true covering radius exceeds this by at most `probe_mesh`.
    pub covering_radius: f64,
    /// Largest observed number of lattice points within ρ of a probe point.
    pub max_multiplicity: usize,
    /// Upper bound on the probe grid's own covering radius.
    pub probe_mesh: f64,
}

#[derive(Debug, Clone)]
pub enum LatticePoints {
    Sphere(Vec<S2Point>),
    /// Full product grid; the pair list is never materialized.
    Product { xs: Vec<S2Point>, ys: Vec<S2Point> },
    Pairs(Vec<(S2Point, S2Point)>),
}

#[derive(Debug, Clone)]
pub struct MetricLattice {
    pub points: LatticePoints,
    pub rho: f64,
    pub certification: Certification,
    /// For product lattices, the certifications of the two factors.
    pub factor_certs: Option<(Certification, Certification)>,
}

impl MetricLattice {
    pub fn len(&self) -> usize {
        match &self.points {
            LatticePoints::Sphere(v) => v.len(),
            LatticePoints::Product { xs, ys } => xs.len() * ys.len(),
            LatticePoints::Pairs(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn space(&self) -> &'static str {
        match &self.points {
            LatticePoints::Sphere(_) => "S2",
            _ => "S2xS2",
        }
    }
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_from_bits(x: u64) -> f64 {
    (x >> 11) as f64 / (1u64 << 53) as f64
}

/// Deterministic rotation matrix from a seed, used to orient probe grids.
fn seeded_rotation(seed: u64) -> [[f64; 3]; 3] {
    let mut s = seed;
    let alpha = 2.0 * PI * unit_from_bits(splitmix(&mut s));
    let beta = (1.0 - 2.0 * unit_from_bits(splitmix(&mut s))).acos();
    let gamma = 2.0 * PI * unit_from_bits(splitmix(&mut s));
    let e = crate::rotations::EulerAngles { alpha, beta, gamma };
    crate::rotations::matrix_from_euler(&e).m
}

fn apply3(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Latitude-longitude grid of ring spacing ≤ δ, rotated by a seeded
/// rotation. Every point of the sphere is within `PROBE_MESH_FACTOR`·δ of
/// some grid point.
fn probe_grid(delta: f64, seed: u64) -> Vec<[f64; 3]> {
    let rot = seeded_rotation(seed);
    let n_theta = (PI / delta).ceil() as usize;
    let dt = PI / n_theta as f64;
    let mut out = Vec::new();
    for i in 0..n_theta {
        let tc = (i as f64 + 0.5) * dt;
        let lo = tc - 0.5 * dt;
        let hi = tc + 0.5 * dt;
        // widest circumference inside the band
        let s_max = if lo <= PI / 2.0 && hi >= PI / 2.0 {
            1.0
        } else {
            lo.sin().max(hi.sin())
        };
        let n_phi = ((2.0 * PI * s_max / delta).ceil() as usize).max(6);
        let (st, ct) = tc.sin_cos();
        for j in 0..n_phi {
            let phi = (j as f64 + 0.5) * 2.0 * PI / n_phi as f64;
            out.push(apply3(&rot, [st * phi.cos(), st * phi.sin(), ct]));
        }
    }
    out
}

fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let step = PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = step * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

fn min_pairwise_angle(pts: &[[f64; 3]]) -> f64 {
    let mut best = -1.0_f64;
    for (i, a) in pts.iter().enumerate() {
        for b in pts.iter().skip(i + 1) {
            let d = vec3::dot(*a, *b);
            if d > best {
                best = d;
            }
        }
    }
    if pts.len() < 2 {
        PI
    } else {
        best.clamp(-1.0, 1.0).acos()
    }
}

struct ProbeSurvey {
    covering: f64,
    max_multiplicity: usize,
}

fn survey(pts: &[[f64; 3]], probes: &[[f64; 3]], rho: f64) -> ProbeSurvey {
    let cos_rho = rho.cos();
    let mut worst = 1.0_f64;
    let mut mult = 0usize;
    for q in probes {
        let mut best = -1.0_f64;
        let mut count = 0usize;
        for p in pts {
            let d = vec3::dot(*p, *q);
            if d > best {
                best = d;
            }
            if d >= cos_rho {
                count += 1;
            }
        }
        if best < worst {
            worst = best;
        }
        if count > mult {
            mult = count;
        }
    }
    ProbeSurvey {
        covering: worst.clamp(-1.0, 1.0).acos(),
        max_multiplicity: mult,
    }
}

fn to_points(pts: Vec<[f64; 3]>) -> Vec<S2Point> {
    pts.into_iter().map(S2Point::from_vec).collect()
}

fn from_points(pts: &[S2Point]) -> Vec<[f64; 3]> {
    pts.iter().map(|p| p.to_vec()).collect()
}

/// Greedy lattice on S²: Fibonacci-spiral seed of ⌈16/ρ²⌉ points, thinning
/// to separation ρ/2, then farthest-probe insertion (which preserves the
/// separation, since only probes farther than ρ/2 from the set are inserted)
/// until every probe of a mesh-ρ/8 grid lies within ρ/2.
pub fn build_lattice_s2(rho: f64) -> Result<MetricLattice> {
    if !(0.02..PI / 2.0).contains(&rho) {
        return Err(Error::Domain {
            what: "lattice radius",
            value: rho,
        });
    }
    let sep = rho / 2.0;
    let cos_sep = sep.cos();
    let mut pts: Vec<[f64; 3]> = Vec::new();
    for s in fibonacci_sphere((16.0 / (rho * rho)).ceil() as usize) {
        if pts.iter().all(|p| vec3::dot(*p, s) <= cos_sep) {
            pts.push(s);
        }
    }
    let delta = rho / 8.0;
    let probes = probe_grid(delta, BUILD_PROBE_SEED);
    // running max dot from each probe to the set; insertion raises them
    let mut best: Vec<f64> = probes
        .iter()
        .map(|q| {
            pts.iter()
                .map(|p| vec3::dot(*p, *q))
                .fold(-1.0_f64, f64::max)
        })
        .collect();
    for _ in 0..probes.len() {
        let (arg, &val) = best
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite dots"))
            .expect("nonempty probe grid");
        if val >= cos_sep {
            break;
        }
        let new = probes[arg];
        pts.push(new);
        for (b, q) in best.iter_mut().zip(probes.iter()) {
            let d = vec3::dot(new, *q);
            if d > *b {
                *b = d;
            }
        }
    }
    let covering = best
        .iter()
        .fold(1.0_f64, |acc, b| acc.min(*b))
        .clamp(-1.0, 1.0)
        .acos();
    let sp = min_pairwise_angle(&pts);
    let sv = survey(&pts, &probes, rho);
    let cert = Certification {
        min_pairwise_distance: sp,
        covering_radius: covering,
        max_multiplicity: sv.max_multiplicity,
        probe_mesh: PROBE_MESH_FACTOR * delta,
    };
    if sp < sep - 1e-9 || covering > sep + 1e-12 {
        return Err(Error::CertificationFailed {
            separation: sp,
            covering,
            bound: sep,
        });
    }
    Ok(MetricLattice {
        points: LatticePoints::Sphere(to_points(pts)),
        rho,
        certification: cert,
        factor_certs: None,
    })
}

/// Independent audit of a sphere point set against the lattice criteria at
/// radius ρ. Separation must reach ρ/2 exactly; the probe covering estimate
/// may exceed ρ/2 by at most the probe mesh, since a set built against one
/// grid can measure that much larger on another.
pub fn certify_s2(points: &[S2Point], rho: f64, probe_seed: u64) -> Result<Certification> {
    let pts = from_points(points);
    let delta = rho / 8.0;
    let probes = probe_grid(delta, probe_seed);
    let sp = min_pairwise_angle(&pts);
    let sv = survey(&pts, &probes, rho);
    let mesh = PROBE_MESH_FACTOR * delta;
    let cert = Certification {
        min_pairwise_distance: sp,
        covering_radius: sv.covering,
        max_multiplicity: sv.max_multiplicity,
        probe_mesh: mesh,
    };
    if sp < rho / 2.0 - 1e-9 || sv.covering > rho / 2.0 + mesh + 1e-9 {
        return Err(Error::CertificationFailed {
            separation: sp,
            covering: sv.covering,
            bound: rho / 2.0,
        });
    }
    Ok(cert)
}

/// Product lattice on S²×S² at radius ρ: two copies of the S² lattice at
/// radius ρ/√2. Covering composes as the hypotenuse of the factor coverings
/// (≤ ρ/2); the minimum pairwise distance is that of a factor (two product
/// points sharing one coordinate differ only in the other), which is ρ/(2√2)
/// rather than ρ/2 — the constant-factor loss inherent to product grids.
pub fn product_lattice(rho: f64) -> Result<MetricLattice> {
    let factor = build_lattice_s2(rho / SQRT_2)?;
    let fc = factor.certification;
    let pts = match factor.points {
        LatticePoints::Sphere(v) => v,
        _ => unreachable!("sphere builder"),
    };
    let cert = Certification {
        min_pairwise_distance: fc.min_pairwise_distance,
        covering_radius: fc.covering_radius.hypot(fc.covering_radius),
        max_multiplicity: fc.max_multiplicity * fc.max_multiplicity,
        probe_mesh: fc.probe_mesh.hypot(fc.probe_mesh),
    };
    Ok(MetricLattice {
        points: LatticePoints::Product {
            xs: pts.clone(),
            ys: pts,
        },
        rho,
        certification: cert,
        factor_certs: Some((fc, fc)),
    })
}

/// Re-run certification with a fresh probe orientation and check it against
/// the stored record: separation is recomputed exactly and must agree to
/// 1e-9; the new covering estimate must stay below the stored estimate plus
/// the stored probe mesh (a bound the stored certificate implies).
pub fn recheck_lattice(lat: &MetricLattice, probe_seed: u64) -> Result<Certification> {
    let stored = &lat.certification;
    let audit = |sp: f64, cov: f64| -> Result<()> {
        if (sp - stored.min_pairwise_distance).abs() > 1e-9 {
            return Err(Error::CertificationFailed {
                separation: sp,
                covering: cov,
                bound: stored.min_pairwise_distance,
            });
        }
        if cov > stored.covering_radius + stored.probe_mesh + 1e-9 {
            return Err(Error::CertificationFailed {
                separation: sp,
                covering: cov,
                bound: stored.covering_radius + stored.probe_mesh,
            });
        }
        Ok(())
    };
    match &lat.points {
        LatticePoints::Sphere(v) => {
            let pts = from_points(v);
            let probes = probe_grid(lat.rho / 8.0, probe_seed);
            let sp = min_pairwise_angle(&pts);
            let sv = survey(&pts, &probes, lat.rho);
            audit(sp, sv.covering)?;
            Ok(Certification {
                min_pairwise_distance: sp,
                covering_radius: sv.covering,
                max_multiplicity: sv.max_multiplicity,
                probe_mesh: PROBE_MESH_FACTOR * lat.rho / 8.0,
            })
        }
        LatticePoints::Product { xs, ys } => {
            let rf = lat.rho / SQRT_2;
            let cx = certify_s2(xs, rf, probe_seed)?;
            let cy = certify_s2(ys, rf, probe_seed ^ 0x9E37)?;
            let sp = cx.min_pairwise_distance.min(cy.min_pairwise_distance);
            let cov = cx.covering_radius.hypot(cy.covering_radius);
            audit(sp, cov)?;
            Ok(Certification {
                min_pairwise_distance: sp,
                covering_radius: cov,
                max_multiplicity: cx.max_multiplicity * cy.max_multiplicity,
                probe_mesh: cx.probe_mesh.hypot(cy.probe_mesh),
            })
        }
        LatticePoints::Pairs(v) => {
            // rare, test-sized path: exact separation in the product metric,
            // covering against a coarser product probe family
            let mut best = PI * 2.0;
            for (i, (xa, ya)) in v.iter().enumerate() {
                for (xb, yb) in v.iter().skip(i + 1) {
                    let dx = vec3::angle(xa.to_vec(), xb.to_vec());
                    let dy = vec3::angle(ya.to_vec(), yb.to_vec());
                    best = best.min(dx.hypot(dy));
                }
            }
            let sp = if v.len() < 2 { PI } else { best };
            let delta = lat.rho / 4.0;
            let px = probe_grid(delta, probe_seed);
            let py = probe_grid(delta, probe_seed ^ 0x517C);
            let mut cov = 0.0_f64;
            for a in &px {
                for b in &py {
                    let mut near = f64::INFINITY;
                    for (x, y) in v {
                        let d = vec3::angle(x.to_vec(), *a).hypot(vec3::angle(y.to_vec(), *b));
                        if d < near {
                            near = d;
                        }
                    }
                    if near > cov {
                        cov = near;
                    }
                }
            }
            audit(sp, cov)?;
            Ok(Certification {
                min_pairwise_distance: sp,
                covering_radius: cov,
                max_multiplicity: stored.max_multiplicity,
                probe_mesh: PROBE_MESH_FACTOR * delta * SQRT_2,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_thirds_lattice_is_small_and_certified() {
        let lat = build_lattice_s2(PI / 3.0).unwrap();
        assert!(lat.len() <= 40, "got {} points", lat.len());
        let c = &lat.certification;
        assert!(c.min_pairwise_distance >= PI / 6.0 - 1e-9);
        assert!(c.covering_radius <= PI / 6.0 + 1e-12);
        assert!(c.max_multiplicity >= 1);
        assert_eq!(lat.space(), "S2");
    }

    #[test]
    fn single_point_fails_certification() {
        let p = [S2Point { theta: 0.4, phi: 1.0 }];
        match certify_s2(&p, PI / 2.0, 7) {
            Err(Error::CertificationFailed { covering, .. }) => {
                assert!(covering > PI / 4.0);
            }
            other => panic!("expected covering failure, got {other:?}"),
        }
    }

    #[test]
    fn point_count_scales_inverse_square() {
        let n1 = build_lattice_s2(0.4).unwrap().len() as f64;
        let n2 = build_lattice_s2(0.2).unwrap().len() as f64;
        let n3 = build_lattice_s2(0.1).unwrap().len() as f64;
        assert!(
            (3.0..=5.0).contains(&(n2 / n1)),
            "halving 0.4 -> 0.2 ratio {}",
            n2 / n1
        );
        assert!(
            (3.0..=5.0).contains(&(n3 / n2)),
            "halving 0.2 -> 0.1 ratio {}",
            n3 / n2
        );
    }

    #[test]
    fn recheck_agrees_with_stored() {
        let lat = build_lattice_s2(0.5).unwrap();
        let again = recheck_lattice(&lat, AUDIT_PROBE_SEED).unwrap();
        assert!(
            (again.min_pairwise_distance - lat.certification.min_pairwise_distance).abs() < 1e-12
        );
        assert!(
            again.covering_radius
                <= lat.certification.covering_radius + lat.certification.probe_mesh + 1e-9
        );
    }

    #[test]
    fn product_composes() {
        let lat = product_lattice(0.8).unwrap();
        let (xs_len, ys_len) = match &lat.points {
            LatticePoints::Product { xs, ys } => (xs.len(), ys.len()),
            _ => panic!("expected product"),
        };
        assert_eq!(lat.len(), xs_len * ys_len);
        assert_eq!(lat.space(), "S2xS2");
        let c = &lat.certification;
        assert!(c.covering_radius <= 0.4 + 1e-12);
        assert!(c.min_pairwise_distance >= 0.8 / (2.0 * SQRT_2) - 1e-9);
        recheck_lattice(&lat, 99).unwrap();
    }

    #[test]
    fn product_count_grows_sixteenfold_per_halving() {
        let big = product_lattice(0.8).unwrap().len() as f64;
        let small = product_lattice(0.4).unwrap().len() as f64;
        let ratio = small / big;
        assert!((9.0..=25.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn probe_grid_parameters() {
        let probes = probe_grid(0.3, 3);
        // all unit, and plenty of them
        for p in &probes {
            assert!((vec3::norm(*p) - 1.0).abs() < 1e-12);
        }
        assert!(probes.len() >= (4.0 * PI / (0.3 * 0.3)) as usize);
        assert!(build_lattice_s2(0.005).is_err());
        assert!(build_lattice_s2(2.0).is_err());
    }
}
