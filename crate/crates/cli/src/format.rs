//! On-disk formats: JSON for spectra and lattices, CSV for pointwise fields.
//! Spectrum blocks are stored as full re/im matrices; the row index is i and
//! the column index j, both 1-based in the file's own terms.

use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use texradon_core::cmat::CMat;
use texradon_core::harmonics::{PairSpectrum, S2Point, SO3Spectrum};
use texradon_core::sampling::{
    Certification, CubatureLattice, CubatureWeights, LatticePoints, MetricLattice,
};

use crate::{TaskError, TaskResult};

#[derive(Debug, Serialize, Deserialize)]
pub struct BlockJson {
    pub k: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub space: String,
    pub bandwidth: usize,
    pub blocks: Vec<BlockJson>,
}

fn mat_to_block(k: usize, m: &CMat) -> BlockJson {
    let n = 2 * k + 1;
    let mut re = vec![vec![0.0; n]; n];
    let mut im = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            re[i][j] = v.re;
            im[i][j] = v.im;
        }
    }
    BlockJson { k, re, im }
}

fn block_to_mat(b: &BlockJson) -> TaskResult<CMat> {
    let n = 2 * b.k + 1;
    if b.re.len() != n || b.im.len() != n || b.re.iter().any(|r| r.len() != n)
        || b.im.iter().any(|r| r.len() != n)
    {
        return Err(TaskError::Io(format!(
            "block k={} is not {n}x{n} in both parts",
            b.k
        )));
    }
    let mut m = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(b.re[i][j], b.im[i][j]);
        }
    }
    Ok(m)
}

fn blocks_from_json(j: &SpectrumJson) -> TaskResult<Vec<CMat>> {
    if j.blocks.len() != j.bandwidth + 1 {
        return Err(TaskError::Io(format!(
            "bandwidth {} needs {} blocks, file has {}",
            j.bandwidth,
            j.bandwidth + 1,
            j.blocks.len()
        )));
    }
    j.blocks
        .iter()
        .enumerate()
        .map(|(k, b)| {
            if b.k != k {
                return Err(TaskError::Io(format!(
                    "blocks out of order: expected k={k}, found k={}",
                    b.k
                )));
            }
            block_to_mat(b)
        })
        .collect()
}

pub fn so3_to_json(f: &SO3Spectrum) -> SpectrumJson {
    SpectrumJson {
        space: "SO3".into(),
        bandwidth: f.bandwidth(),
        blocks: f.blocks().iter().enumerate().map(|(k, m)| mat_to_block(k, m)).collect(),
    }
}

pub fn pair_to_json(g: &PairSpectrum) -> SpectrumJson {
    SpectrumJson {
        space: "S2xS2".into(),
        bandwidth: g.bandwidth(),
        blocks: g.blocks().iter().enumerate().map(|(k, m)| mat_to_block(k, m)).collect(),
    }
}

pub fn json_to_so3(j: &SpectrumJson) -> TaskResult<SO3Spectrum> {
    if j.space != "SO3" {
        return Err(TaskError::Io(format!(
            "expected an SO3 spectrum, file says {:?}",
            j.space
        )));
    }
    Ok(SO3Spectrum::from_blocks(blocks_from_json(j)?)?)
}

pub fn json_to_pair(j: &SpectrumJson) -> TaskResult<PairSpectrum> {
    if j.space != "S2xS2" {
        return Err(TaskError::Io(format!(
            "expected an S2xS2 spectrum, file says {:?}",
            j.space
        )));
    }
    Ok(PairSpectrum::from_blocks(blocks_from_json(j)?)?)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CertJson {
    pub min_pairwise_distance: f64,
    pub covering_radius: f64,
    pub max_multiplicity: usize,
    pub probe_mesh: f64,
}

impl From<Certification> for CertJson {
    fn from(c: Certification) -> Self {
        CertJson {
            min_pairwise_distance: c.min_pairwise_distance,
            covering_radius: c.covering_radius,
            max_multiplicity: c.max_multiplicity,
            probe_mesh: c.probe_mesh,
        }
    }
}

impl From<CertJson> for Certification {
    fn from(c: CertJson) -> Self {
        Certification {
            min_pairwise_distance: c.min_pairwise_distance,
            covering_radius: c.covering_radius,
            max_multiplicity: c.max_multiplicity,
            probe_mesh: c.probe_mesh,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointsJson {
    Sphere { points: Vec<[f64; 2]> },
    Product { xs: Vec<[f64; 2]>, ys: Vec<[f64; 2]> },
    Pairs { pairs: Vec<[f64; 4]> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightsJson {
    Dense { w: Vec<f64> },
    Factored { wx: Vec<f64>, wy: Vec<f64> },
}

/// Lattice file: points, certification, density, and (after the cubature
/// step) weights with the solver residual.
#[derive(Debug, Serialize, Deserialize)]
pub struct LatticeFileJson {
    pub space: String,
    pub rho: f64,
    pub points: PointsJson,
    pub certification: CertJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor_certifications: Option<[CertJson; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

fn pt(p: &S2Point) -> [f64; 2] {
    [p.theta, p.phi]
}

fn s2(a: [f64; 2]) -> S2Point {
    S2Point { theta: a[0], phi: a[1] }
}

pub fn lattice_to_json(lat: &MetricLattice) -> LatticeFileJson {
    let points = match &lat.points {
        LatticePoints::Sphere(v) => PointsJson::Sphere {
            points: v.iter().map(pt).collect(),
        },
        LatticePoints::Product { xs, ys } => PointsJson::Product {
            xs: xs.iter().map(pt).collect(),
            ys: ys.iter().map(pt).collect(),
        },
        LatticePoints::Pairs(v) => PointsJson::Pairs {
            pairs: v
                .iter()
                .map(|(x, y)| [x.theta, x.phi, y.theta, y.phi])
                .collect(),
        },
    };
    LatticeFileJson {
        space: lat.space().into(),
        rho: lat.rho,
        points,
        certification: lat.certification.into(),
        factor_certifications: lat.factor_certs.map(|(a, b)| [a.into(), b.into()]),
        degree: None,
        weights: None,
        residual: None,
    }
}

pub fn json_to_lattice(j: &LatticeFileJson) -> TaskResult<MetricLattice> {
    let points = match &j.points {
        PointsJson::Sphere { points } => LatticePoints::Sphere(points.iter().copied().map(s2).collect()),
        PointsJson::Product { xs, ys } => LatticePoints::Product {
            xs: xs.iter().copied().map(s2).collect(),
            ys: ys.iter().copied().map(s2).collect(),
        },
        PointsJson::Pairs { pairs } => LatticePoints::Pairs(
            pairs
                .iter()
                .map(|a| (s2([a[0], a[1]]), s2([a[2], a[3]])))
                .collect(),
        ),
    };
    Ok(MetricLattice {
        points,
        rho: j.rho,
        certification: j.certification.into(),
        factor_certs: j.factor_certifications.map(|[a, b]| (a.into(), b.into())),
    })
}

pub fn cubature_to_json(c: &CubatureLattice) -> LatticeFileJson {
    let mut j = lattice_to_json(&c.lattice);
    j.degree = Some(c.degree);
    j.residual = Some(c.residual);
    j.weights = Some(match &c.weights {
        CubatureWeights::Dense(w) => WeightsJson::Dense { w: w.clone() },
        CubatureWeights::Factored { wx, wy } => WeightsJson::Factored {
            wx: wx.clone(),
            wy: wy.clone(),
        },
    });
    j
}

pub fn json_to_cubature(j: &LatticeFileJson) -> TaskResult<CubatureLattice> {
    let lattice = json_to_lattice(j)?;
    let degree = j
        .degree
        .ok_or_else(|| TaskError::Io("lattice file has no cubature degree".into()))?;
    let residual = j
        .residual
        .ok_or_else(|| TaskError::Io("lattice file has no solver residual".into()))?;
    let weights = match &j.weights {
        Some(WeightsJson::Dense { w }) => {
            if w.len() != lattice.len() {
                return Err(TaskError::Io(format!(
                    "dense weights: {} entries for {} nodes",
                    w.len(),
                    lattice.len()
                )));
            }
            CubatureWeights::Dense(w.clone())
        }
        Some(WeightsJson::Factored { wx, wy }) => match &lattice.points {
            LatticePoints::Product { xs, ys } if wx.len() == xs.len() && wy.len() == ys.len() => {
                CubatureWeights::Factored {
                    wx: wx.clone(),
                    wy: wy.clone(),
                }
            }
            _ => {
                return Err(TaskError::Io(
                    "factored weights do not match a product lattice of the same shape".into(),
                ))
            }
        },
        None => return Err(TaskError::Io("lattice file has no weights".into())),
    };
    Ok(CubatureLattice {
        lattice,
        weights,
        degree,
        residual,
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> TaskResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TaskError::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> TaskResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| TaskError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

pub fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> TaskResult<()> {
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                text.push(',');
            }
            first = false;
            text.push_str(&format!("{v}"));
        }
        text.push('\n');
    }
    std::fs::write(path, text)
        .map_err(|e| TaskError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

/// Numeric CSV reader; a non-numeric first line is treated as the header.
pub fn read_csv(path: &Path, columns: usize) -> TaskResult<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TaskError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Result<Vec<f64>, _> = line.split(',').map(|f| f.trim().parse::<f64>()).collect();
        match fields {
            Ok(vals) => {
                if vals.len() != columns {
                    return Err(TaskError::Io(format!(
                        "{} line {}: expected {columns} fields, found {}",
                        path.display(),
                        ln + 1,
                        vals.len()
                    )));
                }
                out.push(vals);
            }
            Err(_) if ln == 0 => continue,
            Err(e) => {
                return Err(TaskError::Io(format!(
                    "{} line {}: {e}",
                    path.display(),
                    ln + 1
                )))
            }
        }
    }
    Ok(out)
}
