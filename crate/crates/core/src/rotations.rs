//! Rotation representations, the double cover of SO(3) by unit quaternions,
//! and the great circles of quaternions that realize the fiber of rotations
//! carrying one sphere point to another.
//!
//! Euler angles follow the z-x-z convention: the angles (α, β, γ) name the
//! rotation Z(γ)·X(β)·Z(α), applied to column vectors on the left.

use crate::error::Error;
use crate::vec3;
use crate::Result;
#[allow(unused_imports)] use num_traits::Float; // f64 math without std

const PI: f64 = core::f64::consts::PI;
const TAU2: f64 = 2.0 * PI;

/// z-x-z angles: the rotation Z(γ)·X(β)·Z(α).
///
/// Canonical ranges are α, γ ∈ [0, 2π) and β ∈ [0, π]; `new` wraps the outer
/// angles and rejects β outside its interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

fn wrap_2pi(t: f64) -> f64 {
    let mut r = t % TAU2;
    if r < 0.0 {
        r += TAU2;
    }
    // t = -1e-18 wraps to 2π by the branch above; fold it back.
    if r >= TAU2 {
        r = 0.0;
    }
    r
}

impl EulerAngles {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(-1e-12..=PI + 1e-12).contains(&beta) {
            return Err(Error::Domain {
                what: "euler beta",
                value: beta,
            });
        }
        Ok(EulerAngles {
            alpha: wrap_2pi(alpha),
            beta: beta.clamp(0.0, PI),
            gamma: wrap_2pi(gamma),
        })
    }
}

/// Unit quaternion a₀ + a₁i + a₂j + a₃k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl UnitQuaternion {
    /// Strict constructor: rejects input whose norm strays from 1 by more
    /// than 1e-12, then renormalizes the survivor exactly.
    pub fn new(a0: f64, a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let n = (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(UnitQuaternion {
            a0: a0 / n,
            a1: a1 / n,
            a2: a2 / n,
            a3: a3 / n,
        })
    }

    /// Lenient constructor: normalizes any nonzero input.
    pub fn normalized(a0: f64, a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let n = (a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3).sqrt();
        if n < 1e-150 {
            return Err(Error::ZeroNorm);
        }
        Ok(UnitQuaternion {
            a0: a0 / n,
            a1: a1 / n,
            a2: a2 / n,
            a3: a3 / n,
        })
    }

    pub fn identity() -> Self {
        UnitQuaternion {
            a0: 1.0,
            a1: 0.0,
            a2: 0.0,
            a3: 0.0,
        }
    }

    /// A pure quaternion from a unit 3-vector.
    pub fn pure(v: [f64; 3]) -> Result<Self> {
        UnitQuaternion::new(0.0, v[0], v[1], v[2])
    }

    pub fn conj(&self) -> Self {
        UnitQuaternion {
            a0: self.a0,
            a1: -self.a1,
            a2: -self.a2,
            a3: -self.a3,
        }
    }

    pub fn neg(&self) -> Self {
        UnitQuaternion {
            a0: -self.a0,
            a1: -self.a1,
            a2: -self.a2,
            a3: -self.a3,
        }
    }

    /// Euclidean inner product of the coefficient 4-vectors.
    pub fn dot(&self, rhs: &Self) -> f64 {
        self.a0 * rhs.a0 + self.a1 * rhs.a1 + self.a2 * rhs.a2 + self.a3 * rhs.a3
    }

    /// Hamilton product, renormalized.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (p0, p1, p2, p3) = (self.a0, self.a1, self.a2, self.a3);
        let (q0, q1, q2, q3) = (rhs.a0, rhs.a1, rhs.a2, rhs.a3);
        let a0 = p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3;
        let a1 = p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2;
        let a2 = p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1;
        let a3 = p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0;
        UnitQuaternion::normalized(a0, a1, a2, a3).expect("product of units is nonzero")
    }

    /// Vector (i, j, k) part.
    pub fn vector_part(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Flip the overall sign so a₀ > 0, ties broken by the first nonzero
    /// component being positive. Both signs name the same rotation.
    pub fn canonical(&self) -> Self {
        let c = [self.a0, self.a1, self.a2, self.a3];
        for x in c {
            if x > 0.0 {
                return *self;
            }
            if x < 0.0 {
                return self.neg();
            }
        }
        *self
    }

    /// Rotate a 3-vector: the vector part of q v q̄.
    pub fn rotate(&self, v: [f64; 3]) -> [f64; 3] {
        // q v q̄ = v + 2 a₀ (u × v) + 2 u × (u × v), u the vector part
        let u = self.vector_part();
        let uv = vec3::cross(u, v);
        let uuv = vec3::cross(u, uv);
        [
            v[0] + 2.0 * (self.a0 * uv[0] + uuv[0]),
            v[1] + 2.0 * (self.a0 * uv[1] + uuv[1]),
            v[2] + 2.0 * (self.a0 * uv[2] + uuv[2]),
        ]
    }
}

/// Proper rotation matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix {
    pub m: [[f64; 3]; 3],
}

impl RotationMatrix {
    pub fn identity() -> Self {
        RotationMatrix {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Validates UᵀU = I and det U = 1 to 1e-10.
    pub fn checked(m: [[f64; 3]; 3]) -> Result<Self> {
        let mut defect: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += m[l][i] * m[l][j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((s - target).abs());
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        defect = defect.max((det - 1.0).abs());
        if defect > 1e-10 {
            return Err(Error::NotARotation { defect });
        }
        Ok(RotationMatrix { m })
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    /// Apply the inverse (= transpose).
    pub fn apply_inv(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[1][0] * v[1] + m[2][0] * v[2],
            m[0][1] * v[0] + m[1][1] * v[1] + m[2][1] * v[2],
            m[0][2] * v[0] + m[1][2] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn compose(&self, rhs: &RotationMatrix) -> RotationMatrix {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for l in 0..3 {
                    s += self.m[i][l] * rhs.m[l][j];
                }
                out[i][j] = s;
            }
        }
        RotationMatrix { m: out }
    }

    pub fn transpose(&self) -> RotationMatrix {
        let m = &self.m;
        RotationMatrix {
            m: [
                [m[0][0], m[1][0], m[2][0]],
                [m[0][1], m[1][1], m[2][1]],
                [m[0][2], m[1][2], m[2][2]],
            ],
        }
    }

    pub fn max_abs_diff(&self, rhs: &RotationMatrix) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.m[i][j] - rhs.m[i][j]).abs());
            }
        }
        d
    }
}

/// The double cover: the rotation v ↦ vector part of q v q̄.
///
/// Strictness about non-unit input is decided at construction time
/// (`UnitQuaternion::new` rejects, `UnitQuaternion::normalized` repairs), so
/// here q is already unit and τ(q) = τ(−q) holds exactly.
pub fn tau(q: &UnitQuaternion) -> RotationMatrix {
    let (a0, a1, a2, a3) = (q.a0, q.a1, q.a2, q.a3);
    RotationMatrix {
        m: [
            [
                1.0 - 2.0 * (a2 * a2 + a3 * a3),
                2.0 * (a1 * a2 - a0 * a3),
                2.0 * (a1 * a3 + a0 * a2),
            ],
            [
                2.0 * (a1 * a2 + a0 * a3),
                1.0 - 2.0 * (a1 * a1 + a3 * a3),
                2.0 * (a2 * a3 - a0 * a1),
            ],
            [
                2.0 * (a1 * a3 - a0 * a2),
                2.0 * (a2 * a3 + a0 * a1),
                1.0 - 2.0 * (a1 * a1 + a2 * a2),
            ],
        ],
    }
}

/// z-x-z factor quaternions: exp(t/2 · k) and exp(t/2 · i).
fn quat_z(t: f64) -> UnitQuaternion {
    UnitQuaternion {
        a0: (0.5 * t).cos(),
        a1: 0.0,
        a2: 0.0,
        a3: (0.5 * t).sin(),
    }
}

fn quat_x(t: f64) -> UnitQuaternion {
    UnitQuaternion {
        a0: (0.5 * t).cos(),
        a1: (0.5 * t).sin(),
        a2: 0.0,
        a3: 0.0,
    }
}

/// Quaternion of Z(γ)X(β)Z(α), sign-canonicalized.
pub fn quat_from_euler(e: &EulerAngles) -> UnitQuaternion {
    quat_z(e.gamma).mul(&quat_x(e.beta)).mul(&quat_z(e.alpha)).canonical()
}

pub fn matrix_from_euler(e: &EulerAngles) -> RotationMatrix {
    let (sa, ca) = e.alpha.sin_cos();
    let (sb, cb) = e.beta.sin_cos();
    let (sg, cg) = e.gamma.sin_cos();
    RotationMatrix {
        m: [
            [cg * ca - sg * cb * sa, -cg * sa - sg * cb * ca, sg * sb],
            [sg * ca + cg * cb * sa, -sg * sa + cg * cb * ca, -cg * sb],
            [sb * sa, sb * ca, cb],
        ],
    }
}

/// z-x-z angles of a rotation matrix. At the gimbal degeneracies β ∈ {0, π}
/// only α+γ (resp. α−γ) is determined; the convention γ = 0 is returned.
pub fn euler_from_matrix(r: &RotationMatrix) -> EulerAngles {
    let m = &r.m;
    let sb = (m[2][0] * m[2][0] + m[2][1] * m[2][1]).sqrt();
    let beta = sb.atan2(m[2][2]);
    if sb < 1e-12 {
        if m[2][2] > 0.0 {
            // Z(γ)Z(α) = Z(α+γ)
            EulerAngles {
                alpha: wrap_2pi(m[1][0].atan2(m[0][0])),
                beta: 0.0,
                gamma: 0.0,
            }
        } else {
            // Z(γ)X(π)Z(α); only γ−α fixed
            EulerAngles {
                alpha: wrap_2pi((-m[0][1]).atan2(m[0][0])),
                beta: PI,
                gamma: 0.0,
            }
        }
    } else {
        EulerAngles {
            alpha: wrap_2pi(m[2][0].atan2(m[2][1])),
            beta,
            gamma: wrap_2pi(m[0][2].atan2(-m[1][2])),
        }
    }
}

pub fn euler_from_quat(q: &UnitQuaternion) -> EulerAngles {
    euler_from_matrix(&tau(q))
}

/// Quaternion of a rotation matrix (Shepperd's branch selection),
/// sign-canonicalized.
pub fn quat_from_matrix(r: &RotationMatrix) -> UnitQuaternion {
    let m = &r.m;
    let tr = m[0][0] + m[1][1] + m[2][2];
    let q = if tr >= m[0][0].max(m[1][1]).max(m[2][2]) {
        let s = (1.0 + tr).sqrt() * 2.0;
        UnitQuaternion::normalized(
            0.25 * s,
            (m[2][1] - m[1][2]) / s,
            (m[0][2] - m[2][0]) / s,
            (m[1][0] - m[0][1]) / s,
        )
    } else if m[0][0] >= m[1][1].max(m[2][2]) {
        let s = (1.0 + m[0][0] - m[1][1] - m[2][2]).sqrt() * 2.0;
        UnitQuaternion::normalized(
            (m[2][1] - m[1][2]) / s,
            0.25 * s,
            (m[0][1] + m[1][0]) / s,
            (m[0][2] + m[2][0]) / s,
        )
    } else if m[1][1] >= m[2][2] {
        let s = (1.0 + m[1][1] - m[0][0] - m[2][2]).sqrt() * 2.0;
        UnitQuaternion::normalized(
            (m[0][2] - m[2][0]) / s,
            (m[0][1] + m[1][0]) / s,
            0.25 * s,
            (m[1][2] + m[2][1]) / s,
        )
    } else {
        let s = (1.0 + m[2][2] - m[0][0] - m[1][1]).sqrt() * 2.0;
        UnitQuaternion::normalized(
            (m[1][0] - m[0][1]) / s,
            (m[0][2] + m[2][0]) / s,
            (m[1][2] + m[2][1]) / s,
            0.25 * s,
        )
    };
    q.expect("rotation matrix has a quaternion").canonical()
}

/// A great circle of unit quaternions together with the sphere pair it
/// serves: every rotation τ(q(t)), q(t) = q₁ cos t + q₂ sin t, carries y to x.
#[derive(Debug, Clone, Copy)]
pub struct GreatCirclePair {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub q1: UnitQuaternion,
    pub q2: UnitQuaternion,
    /// Angle between x and y.
    pub eta: f64,
}

/// The circle of rotations carrying y to x.
///
/// For x = y the stabilizer limit q₁ = 1, q₂ = x (pure) is returned. Points
/// within 1e-9 of antipodal are rejected: there the circle exists but its
/// basis is not numerically determined.
pub fn circle_from_pair(x: [f64; 3], y: [f64; 3]) -> Result<GreatCirclePair> {
    let d = vec3::dot(x, y);
    if d < -1.0 + 1e-9 {
        return Err(Error::AntipodalPair { dot: d });
    }
    circle_from_pair_at(x, y, d)
}

/// Same construction without the safety margin: only a pair whose dot product
/// has reached −1 outright is rejected. Near the antipode the basis direction
/// inherits the relative rounding of the cross product (about 1e-16/‖x×y‖),
/// which callers that deliberately nudge around the antipode accept.
pub(crate) fn circle_from_pair_relaxed(x: [f64; 3], y: [f64; 3]) -> Result<GreatCirclePair> {
    let d = vec3::dot(x, y);
    if d <= -1.0 {
        return Err(Error::AntipodalPair { dot: d });
    }
    circle_from_pair_at(x, y, d)
}

fn circle_from_pair_at(x: [f64; 3], y: [f64; 3], d: f64) -> Result<GreatCirclePair> {
    let cy = vec3::cross(y, x);
    let eta = vec3::norm(cy).atan2(d);
    // cos(η/2) = sqrt((1+cos η)/2) stays away from 0 here, and
    // sin(η/2)·cy/‖cy‖ = cy/(2 cos(η/2)) absorbs the η → 0 degeneracy.
    let c2 = (0.5 * (1.0 + d.min(1.0))).sqrt();
    let q1 = UnitQuaternion::normalized(c2, cy[0] / (2.0 * c2), cy[1] / (2.0 * c2), cy[2] / (2.0 * c2))?;
    let s = vec3::add(x, y);
    let su = vec3::unit(s).ok_or(Error::AntipodalPair { dot: d })?;
    let q2 = UnitQuaternion {
        a0: 0.0,
        a1: su[0],
        a2: su[1],
        a3: su[2],
    };
    Ok(GreatCirclePair { x, y, q1, q2, eta })
}

impl GreatCirclePair {
    /// Rebuild the pair served by an arbitrary orthonormal circle basis
    /// (u, v): y is the vector part of ū v and x that of v ū. Unlike
    /// `circle_from_pair` this admits antipodal pairs, since no cross-product
    /// construction is involved.
    pub fn from_quaternion_basis(u: &UnitQuaternion, v: &UnitQuaternion) -> Result<Self> {
        let ip = u.dot(v);
        if ip.abs() > 1e-9 {
            return Err(Error::Domain {
                what: "circle basis inner product",
                value: ip,
            });
        }
        // Gram-Schmidt the residual inner product away, then the derived
        // pure parts are exact.
        let v = UnitQuaternion::normalized(
            v.a0 - ip * u.a0,
            v.a1 - ip * u.a1,
            v.a2 - ip * u.a2,
            v.a3 - ip * u.a3,
        )?;
        let yq = u.conj().mul(&v);
        let xq = v.mul(&u.conj());
        let y = vec3::unit(yq.vector_part()).ok_or(Error::ZeroNorm)?;
        let x = vec3::unit(xq.vector_part()).ok_or(Error::ZeroNorm)?;
        Ok(GreatCirclePair {
            x,
            y,
            q1: *u,
            q2: v,
            eta: vec3::angle(x, y),
        })
    }
}

/// Point on the circle: q₁ cos t + q₂ sin t.
pub fn circle_point(c: &GreatCirclePair, t: f64) -> UnitQuaternion {
    let (s, co) = t.sin_cos();
    UnitQuaternion::normalized(
        c.q1.a0 * co + c.q2.a0 * s,
        c.q1.a1 * co + c.q2.a1 * s,
        c.q1.a2 * co + c.q2.a2 * s,
        c.q1.a3 * co + c.q2.a3 * s,
    )
    .expect("orthonormal basis combination")
}
