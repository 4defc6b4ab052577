//! Minkowski-space primitives under the metric `diag(-1, 1, 1, 1)`.
//!
//! Antisymmetric rank-2 tensors are stored as an `(e, h)` pair of
//! three-vectors with `T^{k0} = -e_k` and `T^{12} = h_z` (cyclic), so a
//! field tensor reads `H^{μν} = (-E, H)`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonal of the metric `g_{μν} = g^{μν}`.
pub const METRIC: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Sign of `ε^{0123}` (upper indices).
///
/// Fixed by requiring `dual_vector` to reproduce `s^α = ((β·η), η)/γ` for the
/// normalized space-like projector `S^{μν} = ([β×η], η - β(β·η))`.
pub const LEVI_CIVITA_0123: f64 = 1.0;

/// A real three-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const X: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const Y: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const Z: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalize(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// A contravariant four-vector `a^μ = (t, x, y, z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector { t: 0.0, x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn from_parts(t: f64, space: Vec3) -> Self {
        FourVector::new(t, space[0], space[1], space[2])
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        FourVector::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    /// Covariant components `a_μ = g_{μν} a^ν`.
    pub fn lower(self) -> [f64; 4] {
        [-self.t, self.x, self.y, self.z]
    }

    pub fn spatial(self) -> Vec3 {
        Vec3([self.x, self.y, self.z])
    }

    /// `a_μ b^μ`.
    pub fn dot(self, other: FourVector) -> f64 {
        minkowski_dot(self, other)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

/// `a_μ b^μ = -a⁰b⁰ + a·b`.
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z
}

/// Real antisymmetric rank-2 tensor packed as `(-e, h)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AntisymTensor {
    /// `T^{k0} = -e_k`.
    pub e: Vec3,
    /// `T^{23} = h_x`, `T^{31} = h_y`, `T^{12} = h_z`.
    pub h: Vec3,
}

impl AntisymTensor {
    pub const ZERO: AntisymTensor = AntisymTensor { e: Vec3::ZERO, h: Vec3::ZERO };

    pub fn new(e: Vec3, h: Vec3) -> Self {
        AntisymTensor { e, h }
    }

    /// Builds the tensor from its time-space slot `T^{k0}` and space-space slot.
    ///
    /// This is the `(Q, S)` / `(Φ, Π)` reading used for spin tensors.
    pub fn from_polar_axial(polar: Vec3, axial: Vec3) -> Self {
        AntisymTensor { e: -polar, h: axial }
    }

    /// `T^{k0}`, i.e. `-e`.
    pub fn polar(&self) -> Vec3 {
        -self.e
    }

    pub fn axial(&self) -> Vec3 {
        self.h
    }

    /// Full `T^{μν}` array.
    pub fn unpack(&self) -> [[f64; 4]; 4] {
        let [ex, ey, ez] = self.e.0;
        let [hx, hy, hz] = self.h.0;
        [
            [0.0, ex, ey, ez],
            [-ex, 0.0, hz, -hy],
            [-ey, -hz, 0.0, hx],
            [-ez, hy, -hx, 0.0],
        ]
    }

    /// Packs a 4×4 array, rejecting inputs that are not antisymmetric.
    pub fn pack(t: &[[f64; 4]; 4]) -> Result<Self> {
        let scale = t.iter().flatten().fold(1.0_f64, |m, c| m.max(c.abs()));
        for mu in 0..4 {
            for nu in mu..4 {
                let sym = t[mu][nu] + t[nu][mu];
                if !(sym.abs() <= 1e-12 * scale) {
                    return Err(Error::ConventionViolation(format!(
                        "tensor is not antisymmetric at ({mu},{nu}): T+T^T = {sym:e}"
                    )));
                }
            }
        }
        Ok(AntisymTensor {
            e: Vec3([t[0][1], t[0][2], t[0][3]]),
            h: Vec3([t[2][3], t[3][1], t[1][2]]),
        })
    }

    /// `½ A_{μν} B^{μν}`.
    pub fn contract(&self, other: &AntisymTensor) -> f64 {
        tensor_contract(self, other)
    }

    /// `T^{μν} a_ν`.
    pub fn apply(&self, a: FourVector) -> FourVector {
        let t = self.unpack();
        let al = a.lower();
        let mut out = [0.0; 4];
        for (mu, row) in t.iter().enumerate() {
            out[mu] = row.iter().zip(al.iter()).map(|(x, y)| x * y).sum();
        }
        FourVector::from_array(out)
    }

    pub fn is_finite(&self) -> bool {
        self.e.is_finite() && self.h.is_finite()
    }

    pub fn max_abs(&self) -> f64 {
        self.e.max_abs().max(self.h.max_abs())
    }
}

impl Add for AntisymTensor {
    type Output = AntisymTensor;
    fn add(self, o: AntisymTensor) -> AntisymTensor {
        AntisymTensor::new(self.e + o.e, self.h + o.h)
    }
}

impl Sub for AntisymTensor {
    type Output = AntisymTensor;
    fn sub(self, o: AntisymTensor) -> AntisymTensor {
        AntisymTensor::new(self.e - o.e, self.h - o.h)
    }
}

impl Mul<f64> for AntisymTensor {
    type Output = AntisymTensor;
    fn mul(self, s: f64) -> AntisymTensor {
        AntisymTensor::new(self.e * s, self.h * s)
    }
}

/// `A^{[μ} B^{ν]} = A^μ B^ν - A^ν B^μ` (no factor ½).
pub fn wedge(a: FourVector, b: FourVector) -> AntisymTensor {
    let (at, asp) = (a.t, a.spatial());
    let (bt, bsp) = (b.t, b.spatial());
    // T^{0k} = e_k
    AntisymTensor::new(asp * (-bt) + bsp * at, asp.cross(bsp))
}

/// `½ A_{μν} B^{μν} = h_A·h_B - e_A·e_B`.
pub fn tensor_contract(a: &AntisymTensor, b: &AntisymTensor) -> f64 {
    a.h.dot(b.h) - a.e.dot(b.e)
}

/// Totally antisymmetric symbol with upper indices, `ε^{0123} = LEVI_CIVITA_0123`.
pub fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> f64 {
    let p = [i, j, k, l];
    if p.iter().any(|&x| x > 3) {
        return 0.0;
    }
    let mut sign = LEVI_CIVITA_0123;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if p[a] == p[b] {
                return 0.0;
            }
            if p[a] > p[b] {
                sign = -sign;
            }
        }
    }
    sign
}

fn lower_tensor(t: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = METRIC[mu] * METRIC[nu] * t[mu][nu];
        }
    }
    out
}

/// `s^α = ½ ε^{αβμν} S_{μν} b_β`.
pub fn dual_vector(s: &AntisymTensor, b: FourVector) -> FourVector {
    let sl = lower_tensor(&s.unpack());
    let bl = b.lower();
    let mut out = [0.0; 4];
    for (alpha, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (beta, bb) in bl.iter().enumerate() {
            for mu in 0..4 {
                for nu in 0..4 {
                    let eps = levi_civita(alpha, beta, mu, nu);
                    if eps != 0.0 {
                        acc += eps * sl[mu][nu] * bb;
                    }
                }
            }
        }
        *o = 0.5 * acc;
    }
    FourVector::from_array(out)
}

/// `S^{μν} = ε^{μναβ} s_α b_β`.
pub fn dual_tensor(s: FourVector, b: FourVector) -> AntisymTensor {
    let sl = s.lower();
    let bl = b.lower();
    let mut t = [[0.0; 4]; 4];
    for (mu, row) in t.iter_mut().enumerate() {
        for (nu, entry) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (alpha, sa) in sl.iter().enumerate() {
                for (beta, bb) in bl.iter().enumerate() {
                    acc += levi_civita(mu, nu, alpha, beta) * sa * bb;
                }
            }
            *entry = acc;
        }
    }
    AntisymTensor::new(Vec3([t[0][1], t[0][2], t[0][3]]), Vec3([t[2][3], t[3][1], t[1][2]]))
}

/// Velocity in units of `c` together with its Lorentz factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Beta3 {
    beta: Vec3,
    gamma: f64,
}

impl Beta3 {
    pub fn new(beta: Vec3) -> Result<Self> {
        let b2 = beta.norm_sqr();
        if !beta.is_finite() || b2 >= 1.0 {
            return Err(Error::InvalidVelocity(b2.sqrt()));
        }
        Ok(Beta3 { beta, gamma: 1.0 / (1.0 - b2).sqrt() })
    }

    /// From dimensionless momentum `b = γβ`; always subluminal.
    pub fn from_momentum(b: Vec3) -> Self {
        let gamma = (1.0 + b.norm_sqr()).sqrt();
        Beta3 { beta: b * (1.0 / gamma), gamma }
    }

    pub fn rest() -> Self {
        Beta3 { beta: Vec3::ZERO, gamma: 1.0 }
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Active boost matrix `Λ^μ_ν`.
    pub fn matrix(&self) -> [[f64; 4]; 4] {
        let b = self.beta;
        let g = self.gamma;
        let b2 = b.norm_sqr();
        // (γ-1)/β², continued smoothly to β→0
        let k = if b2 > 0.0 { g * g / (g + 1.0) } else { 0.5 };
        let mut m = [[0.0; 4]; 4];
        m[0][0] = g;
        for i in 0..3 {
            m[0][i + 1] = g * b[i];
            m[i + 1][0] = g * b[i];
            for j in 0..3 {
                m[i + 1][j + 1] = if i == j { 1.0 } else { 0.0 } + k * b[i] * b[j];
            }
        }
        m
    }
}

/// Active boost: a vector at rest `(1,0,0,0)` is mapped to `(γ, γβ)`.
pub fn boost_vector(a: FourVector, beta: &Beta3) -> FourVector {
    let m = beta.matrix();
    let arr = a.to_array();
    let mut out = [0.0; 4];
    for (mu, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|nu| m[mu][nu] * arr[nu]).sum();
    }
    FourVector::from_array(out)
}

/// `Λ T Λ^T` for the active boost.
pub fn boost_tensor(t: &AntisymTensor, beta: &Beta3) -> AntisymTensor {
    let m = beta.matrix();
    let a = t.unpack();
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut acc = 0.0;
            for r in 0..4 {
                for s in 0..4 {
                    acc += m[mu][r] * a[r][s] * m[nu][s];
                }
            }
            out[mu][nu] = acc;
        }
    }
    AntisymTensor::new(
        Vec3([out[0][1], out[0][2], out[0][3]]),
        Vec3([out[2][3], out[3][1], out[1][2]]),
    )
}
