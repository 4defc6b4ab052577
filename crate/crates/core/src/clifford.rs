//! Dirac matrices in the standard (Dirac–Pauli) representation.
//!
//! `ρ_i` act on the outer particle/antiparticle index, `σ_i` within each
//! 2×2 block, `α_i = ρ₁σ_i`. With the metric `diag(-1,1,1,1)`:
//!
//! ```text
//! γ⁰ = iρ₃,   γᵏ = iρ₃αₖ,   γ⁵ = -iρ₁,   σ^{μν} = -(i/2)[γ^μ, γ^ν]
//! ```
//!
//! so that `{γ^μ, γ^ν} = 2g^{μν}`, `σ^{12} = σ₃` and `σ^{10} = -iα₁`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Dense 4×4 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CMat4(pub [[C64; 4]; 4]);

impl Default for CMat4 {
    fn default() -> Self {
        CMat4::zero()
    }
}

impl CMat4 {
    pub fn zero() -> Self {
        CMat4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [C64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// Kronecker product `outer ⊗ inner` of two 2×2 matrices.
    pub fn kron(outer: [[C64; 2]; 2], inner: [[C64; 2]; 2]) -> Self {
        let mut m = Self::zero();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        m.0[2 * a + c][2 * b + d] = outer[a][b] * inner[c][d];
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0_f64, |m, x| m.max(x.norm()))
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    pub fn column(&self, j: usize) -> [C64; 4] {
        [self.0[0][j], self.0[1][j], self.0[2][j], self.0[3][j]]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.re.is_finite() && x.im.is_finite())
    }
}

impl Index<(usize, usize)> for CMat4 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for CMat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl Add for CMat4 {
    type Output = CMat4;
    fn add(self, o: CMat4) -> CMat4 {
        mat_add(&self, &o)
    }
}

impl Sub for CMat4 {
    type Output = CMat4;
    fn sub(self, o: CMat4) -> CMat4 {
        let mut m = self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }
}

impl Neg for CMat4 {
    type Output = CMat4;
    fn neg(self) -> CMat4 {
        self.scale_re(-1.0)
    }
}

impl Mul for CMat4 {
    type Output = CMat4;
    fn mul(self, o: CMat4) -> CMat4 {
        mat_mul(&self, &o)
    }
}

impl Mul<f64> for CMat4 {
    type Output = CMat4;
    fn mul(self, s: f64) -> CMat4 {
        self.scale_re(s)
    }
}

impl Mul<C64> for CMat4 {
    type Output = CMat4;
    fn mul(self, s: C64) -> CMat4 {
        self.scale(s)
    }
}

pub fn mat_mul(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut m = CMat4::zero();
    for i in 0..4 {
        for k in 0..4 {
            let aik = a.0[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..4 {
                m.0[i][j] += aik * b.0[k][j];
            }
        }
    }
    m
}

pub fn mat_add(a: &CMat4, b: &CMat4) -> CMat4 {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] += b.0[i][j];
        }
    }
    m
}

/// `[A, B] = AB - BA`.
pub fn commutator(a: &CMat4, b: &CMat4) -> CMat4 {
    mat_mul(a, b) - mat_mul(b, a)
}

/// `{A, B} = AB + BA`.
pub fn anticommutator(a: &CMat4, b: &CMat4) -> CMat4 {
    mat_mul(a, b) + mat_mul(b, a)
}

pub fn adjoint(a: &CMat4) -> CMat4 {
    a.adjoint()
}

/// Σ_k v_k M_k for a Cartesian triple of matrices.
pub fn dot3(v: [f64; 3], m: &[CMat4; 3]) -> CMat4 {
    m[0] * v[0] + m[1] * v[1] + m[2] * v[2]
}

fn pauli2(i: usize) -> [[C64; 2]; 2] {
    match i {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

const ID2: [[C64; 2]; 2] = [[ONE, ZERO], [ZERO, ONE]];

fn check_spatial(what: &'static str, i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index: i })
    }
}

/// `ρ_i`, acting on the outer block index.
pub fn rho(i: usize) -> Result<CMat4> {
    check_spatial("rho", i)?;
    Ok(CMat4::kron(pauli2(i), ID2))
}

/// `σ_i`, block diagonal.
pub fn sigma_small(i: usize) -> Result<CMat4> {
    check_spatial("sigma", i)?;
    Ok(CMat4::kron(ID2, pauli2(i)))
}

/// `α_i = ρ₁σ_i`.
pub fn alpha(i: usize) -> Result<CMat4> {
    Ok(rho(1)? * sigma_small(i)?)
}

/// `γ⁰ = iρ₃`, `γᵏ = iρ₃αₖ`.
pub fn gamma(mu: usize) -> Result<CMat4> {
    match mu {
        0 => Ok(rho(3)? * I),
        1..=3 => Ok((rho(3)? * alpha(mu)?) * I),
        _ => Err(Error::IndexOutOfRange { what: "gamma", index: mu }),
    }
}

/// `γ⁵ = -iρ₁`.
pub fn gamma5() -> CMat4 {
    CMat4::kron(pauli2(1), ID2) * (-I)
}

/// `σ^{μν} = -(i/2)[γ^μ, γ^ν]`; zero on the diagonal.
pub fn sigma_tensor(mu: usize, nu: usize) -> Result<CMat4> {
    let gm = gamma(mu)?;
    let gn = gamma(nu)?;
    if mu == nu {
        return Ok(CMat4::zero());
    }
    Ok(commutator(&gm, &gn) * C64::new(0.0, -0.5))
}

/// Cached triples `ρ`, `σ`, `α` and the four `γ^μ`, built once per call site.
#[derive(Clone, Debug)]
pub struct DiracBasis {
    pub rho: [CMat4; 3],
    pub sigma: [CMat4; 3],
    pub alpha: [CMat4; 3],
    pub gamma: [CMat4; 4],
    pub gamma5: CMat4,
}

impl DiracBasis {
    pub fn new() -> Self {
        let triple = |f: fn(usize) -> Result<CMat4>| {
            [1, 2, 3].map(|i| f(i).expect("spatial index in range"))
        };
        DiracBasis {
            rho: triple(rho),
            sigma: triple(sigma_small),
            alpha: triple(alpha),
            gamma: [0, 1, 2, 3].map(|mu| gamma(mu).expect("index in range")),
            gamma5: gamma5(),
        }
    }

    /// `σ^{μν}` from the cached γ matrices.
    pub fn sigma_tensor(&self, mu: usize, nu: usize) -> CMat4 {
        if mu == nu {
            return CMat4::zero();
        }
        commutator(&self.gamma[mu], &self.gamma[nu]) * C64::new(0.0, -0.5)
    }
}

impl Default for DiracBasis {
    fn default() -> Self {
        Self::new()
    }
}
