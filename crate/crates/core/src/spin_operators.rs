//! Spin operators of a free Dirac particle with definite momentum.
//!
//! The momentum enters through the dimensionless four-momentum
//! `b^μ = (γ, b)`, `b_μ b^μ = -1`. All operators are 4×4 matrices built from
//! [`DiracBasis`]; the positive-energy subspace is the `+γ` eigenspace of the
//! free Hamiltonian `ĥ = (α·b) + ρ₃`.

use serde::{Deserialize, Serialize};

use crate::clifford::{dot3, CMat4, DiracBasis, C64};
use crate::error::{Error, Result};
use crate::tensor::{AntisymTensor, Beta3, FourVector, Vec3};

/// Projected seeds shorter than this are rejected by [`eigenspinor`].
pub const SEED_NORM_FLOOR: f64 = 1e-10;
/// Largest tolerated `‖(I-P₊)AP₊‖` in [`restricted_eigenvalues`].
pub const LEAKAGE_TOL: f64 = 1e-10;
/// Largest tolerated imaginary part of a mean value that must be real.
pub const IMAG_TOL: f64 = 1e-10;

/// Dimensionless momentum `b = p/m₀c` with its derived `γ` and `β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumState {
    b: Vec3,
    gamma: f64,
    beta: Vec3,
}

impl MomentumState {
    /// Always on shell: `γ = √(1 + b²)`.
    pub fn new(b: Vec3) -> Self {
        let gamma = (1.0 + b.norm_sqr()).sqrt();
        MomentumState { b, gamma, beta: b * (1.0 / gamma) }
    }

    pub fn at_rest() -> Self {
        Self::new(Vec3::ZERO)
    }

    pub fn b(&self) -> Vec3 {
        self.b
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn beta(&self) -> Vec3 {
        self.beta
    }

    pub fn velocity(&self) -> Beta3 {
        Beta3::from_momentum(self.b)
    }

    /// `b^μ = (γ, b)`.
    pub fn four_momentum(&self) -> FourVector {
        FourVector::from_parts(self.gamma, self.b)
    }
}

/// Rest-frame quantization direction `ν` and spin sign `ζ = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinAxis {
    nu: Vec3,
    zeta: i8,
}

impl SpinAxis {
    /// `nu` is normalized; it must be finite and nonzero.
    pub fn new(nu: Vec3, zeta: i8) -> Result<Self> {
        if zeta != 1 && zeta != -1 {
            return Err(Error::InvalidParameter(format!("zeta must be +1 or -1, got {zeta}")));
        }
        let nu = nu
            .normalize()
            .filter(|n| n.is_finite())
            .ok_or_else(|| Error::InvalidParameter("spin axis must be a finite nonzero vector".into()))?;
        Ok(SpinAxis { nu, zeta })
    }

    /// `ν = (sinϑ cosφ, sinϑ sinφ, cosϑ)`.
    pub fn from_angles(theta: f64, phi: f64, zeta: i8) -> Result<Self> {
        Self::new(
            Vec3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()),
            zeta,
        )
    }

    pub fn nu(&self) -> Vec3 {
        self.nu
    }

    pub fn zeta(&self) -> i8 {
        self.zeta
    }

    pub fn zeta_f64(&self) -> f64 {
        f64::from(self.zeta)
    }
}

/// Four-component spinor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spinor(pub [C64; 4]);

impl Spinor {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖a - b‖₂`.
    pub fn distance(&self, other: &Spinor) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> Spinor {
        Spinor(self.0.map(|c| c * s))
    }

    pub fn apply(a: &CMat4, v: &Spinor) -> Spinor {
        Spinor(a.apply(&v.0))
    }
}

/// Σ̂ operator families that coincide on positive-energy solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SigmaVariant {
    /// `σ + (1-ρ₃) i[α×b]/(γ+1)`
    Sigma,
    /// `ρ₃σ + ρ₁b/γ - ρ₃b(σ·b)/(γ(γ+1))`
    Rho3Sigma,
    /// `ρ₃σ + (1-ρ₃) b(σ·b)/(γ²-1)`
    Stech,
    /// `σ - iρ₃[α×b]/γ - [b×[σ×b]]/(γ(γ+1))`
    FoldyWouthuysen,
}

impl SigmaVariant {
    pub const ALL: [SigmaVariant; 4] = [
        SigmaVariant::Sigma,
        SigmaVariant::Rho3Sigma,
        SigmaVariant::Stech,
        SigmaVariant::FoldyWouthuysen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SigmaVariant::Sigma => "sigma",
            SigmaVariant::Rho3Sigma => "rho3sigma",
            SigmaVariant::Stech => "stech",
            SigmaVariant::FoldyWouthuysen => "fw",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Matrix-valued antisymmetric tensor `Π̂^{μν} = (Φ̂, Π̂)`.
///
/// `polar[k] = Π̂^{k0}` and `axial` holds `(Π̂^{23}, Π̂^{31}, Π̂^{12})`,
/// the same packing as [`AntisymTensor::from_polar_axial`].
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator {
    pub polar: [CMat4; 3],
    pub axial: [CMat4; 3],
}

impl TensorOperator {
    /// `½ S_{μν} Π̂^{μν} = S·Π̂ - Q·Φ̂` for a c-number tensor `S = (Q, S)`.
    pub fn contract(&self, s: &AntisymTensor) -> CMat4 {
        dot3(s.axial().0, &self.axial) - dot3(s.polar().0, &self.polar)
    }

    /// `½ Π̂_{μν} Π̂^{μν} = Σ Π̂ₖ² - Σ Φ̂ₖ²`.
    pub fn square(&self) -> CMat4 {
        let mut m = CMat4::zero();
        for k in 0..3 {
            m = m + self.axial[k] * self.axial[k] - self.polar[k] * self.polar[k];
        }
        m
    }
}

/// `ĥ = (α·b) + ρ₃`.
pub fn hamiltonian(m: &MomentumState) -> CMat4 {
    hamiltonian_in(&DiracBasis::new(), m)
}

fn hamiltonian_in(d: &DiracBasis, m: &MomentumState) -> CMat4 {
    dot3(m.b().0, &d.alpha) + d.rho[2]
}

/// `P₊ = (ĥ + γ)/(2γ)`.
pub fn positive_energy_projector(m: &MomentumState) -> CMat4 {
    let g = m.gamma();
    (hamiltonian(m) + CMat4::identity() * g) * (0.5 / g)
}

/// `π̂^μ = (γ^μ + i b^μ) γ⁵`.
pub fn pi_mu(m: &MomentumState) -> [CMat4; 4] {
    pi_mu_in(&DiracBasis::new(), m)
}

fn pi_mu_in(d: &DiracBasis, m: &MomentumState) -> [CMat4; 4] {
    let bu = m.four_momentum().to_array();
    [0, 1, 2, 3].map(|mu| (d.gamma[mu] + CMat4::identity() * C64::new(0.0, bu[mu])) * d.gamma5)
}

/// `Π̂^{μν} = σ^{μν} - (γ^μ b^ν - γ^ν b^μ)`.
pub fn spin_tensor(m: &MomentumState) -> TensorOperator {
    spin_tensor_in(&DiracBasis::new(), m)
}

fn spin_tensor_in(d: &DiracBasis, m: &MomentumState) -> TensorOperator {
    let bu = m.four_momentum().to_array();
    let comp = |mu: usize, nu: usize| {
        d.sigma_tensor(mu, nu) - (d.gamma[mu] * bu[nu] - d.gamma[nu] * bu[mu])
    };
    TensorOperator {
        polar: [comp(1, 0), comp(2, 0), comp(3, 0)],
        axial: [comp(2, 3), comp(3, 1), comp(1, 2)],
    }
}

/// `[v × M]` for a c-number vector `v` and a Cartesian triple `M`.
fn cross_mv(v: Vec3, m: &[CMat4; 3]) -> [CMat4; 3] {
    [
        m[2] * v[1] - m[1] * v[2],
        m[0] * v[2] - m[2] * v[0],
        m[1] * v[0] - m[0] * v[1],
    ]
}

/// `[M × v]`.
fn cross_mv_right(m: &[CMat4; 3], v: Vec3) -> [CMat4; 3] {
    cross_mv(v, m).map(|x| -x)
}

/// Cartesian components of the requested Σ̂ variant.
pub fn sigma_variant(m: &MomentumState, variant: SigmaVariant) -> Result<[CMat4; 3]> {
    sigma_variant_in(&DiracBasis::new(), m, variant)
}

fn sigma_variant_in(d: &DiracBasis, m: &MomentumState, variant: SigmaVariant) -> Result<[CMat4; 3]> {
    let b = m.b();
    let g = m.gamma();
    let id = CMat4::identity();
    let one_minus_rho3 = id - d.rho[2];
    let sigma_b = dot3(b.0, &d.sigma);
    let out = match variant {
        SigmaVariant::Sigma => {
            let axb = cross_mv_right(&d.alpha, b);
            [0, 1, 2].map(|k| d.sigma[k] + one_minus_rho3 * axb[k] * C64::new(0.0, 1.0 / (g + 1.0)))
        }
        SigmaVariant::Rho3Sigma => [0, 1, 2].map(|k| {
            d.rho[2] * d.sigma[k] + d.rho[0] * (b[k] / g)
                - d.rho[2] * sigma_b * (b[k] / (g * (g + 1.0)))
        }),
        SigmaVariant::Stech => {
            // γ² - 1 = b², evaluated without cancellation
            let b2 = b.norm_sqr();
            if b2 == 0.0 {
                return Err(Error::SingularVariant("Stech operator needs b != 0 (γ²-1 = 0)"));
            }
            [0, 1, 2].map(|k| d.rho[2] * d.sigma[k] + one_minus_rho3 * sigma_b * (b[k] / b2))
        }
        SigmaVariant::FoldyWouthuysen => {
            let axb = cross_mv_right(&d.alpha, b);
            let b2 = b.norm_sqr();
            [0, 1, 2].map(|k| {
                // [b×[σ×b]]_k = σ_k b² - b_k (σ·b)
                let bsb = d.sigma[k] * b2 - sigma_b * b[k];
                d.sigma[k] - d.rho[2] * axb[k] * C64::new(0.0, 1.0 / g) - bsb * (1.0 / (g * (g + 1.0)))
            })
        }
    };
    Ok(out)
}

/// Every operator of a given momentum, built once.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub momentum: MomentumState,
    pub hamiltonian: CMat4,
    pub projector: CMat4,
    pub pi: [CMat4; 4],
    pub tensor: TensorOperator,
    sigma: [Option<[CMat4; 3]>; 4],
}

impl OperatorSet {
    pub fn new(m: &MomentumState) -> Self {
        let d = DiracBasis::new();
        let hamiltonian = hamiltonian_in(&d, m);
        let g = m.gamma();
        let projector = (hamiltonian + CMat4::identity() * g) * (0.5 / g);
        let sigma = SigmaVariant::ALL.map(|v| sigma_variant_in(&d, m, v).ok());
        OperatorSet {
            momentum: *m,
            hamiltonian,
            projector,
            pi: pi_mu_in(&d, m),
            tensor: spin_tensor_in(&d, m),
            sigma,
        }
    }

    pub fn sigma(&self, variant: SigmaVariant) -> Result<&[CMat4; 3]> {
        let idx = SigmaVariant::ALL.iter().position(|v| *v == variant).unwrap_or(0);
        self.sigma[idx]
            .as_ref()
            .ok_or(Error::SingularVariant("Stech operator needs b != 0 (γ²-1 = 0)"))
    }

    /// `Σ̂_σ`, the variant used for eigenspinors and chains.
    pub fn sigma_main(&self) -> &[CMat4; 3] {
        self.sigma[0].as_ref().expect("sigma variant is defined for every momentum")
    }

    /// Spatial part `π̂ = (π̂¹, π̂², π̂³)`.
    pub fn pi_spatial(&self) -> [CMat4; 3] {
        [self.pi[1], self.pi[2], self.pi[3]]
    }

    /// `π̂_μ π̂^μ`.
    pub fn pi_square(&self) -> CMat4 {
        let mut m = -(self.pi[0] * self.pi[0]);
        for k in 1..4 {
            m = m + self.pi[k] * self.pi[k];
        }
        m
    }

    /// `s_α π̂^α` for a c-number four-vector.
    pub fn pi_contract(&self, s: FourVector) -> CMat4 {
        self.pi[0] * (-s.t) + dot3(s.spatial().0, &self.pi_spatial())
    }
}

/// Positive-energy eigenspinor with `(Σ̂_σ·ν)φ = ζφ`.
///
/// Applies `P_ζ P₊` to the canonical basis vectors, keeps the longest image,
/// normalizes it and makes its largest component real positive.
pub fn eigenspinor(m: &MomentumState, axis: &SpinAxis) -> Result<Spinor> {
    eigenspinor_with(&OperatorSet::new(m), axis)
}

pub fn eigenspinor_with(ops: &OperatorSet, axis: &SpinAxis) -> Result<Spinor> {
    let sn = dot3(axis.nu().0, ops.sigma_main());
    let p_zeta = (CMat4::identity() + sn * axis.zeta_f64()) * 0.5;
    let proj = p_zeta * ops.projector;
    let mut best: Option<(f64, Spinor)> = None;
    for j in 0..4 {
        let v = Spinor(proj.column(j));
        let n = v.norm();
        if n >= SEED_NORM_FLOOR && best.as_ref().is_none_or(|(bn, _)| n > *bn) {
            best = Some((n, v));
        }
    }
    let (n, v) = best.ok_or_else(|| Error::Internal("every projected seed vanished".into()))?;
    let v = v.scale(C64::new(1.0 / n, 0.0));
    Ok(fix_phase(v))
}

/// Rotates the global phase so the largest-magnitude component (first on ties)
/// is real and positive.
pub fn fix_phase(v: Spinor) -> Spinor {
    let mut idx = 0;
    for i in 1..4 {
        if v.0[i].norm() > v.0[idx].norm() {
            idx = i;
        }
    }
    let lead = v.0[idx];
    if lead.norm() == 0.0 {
        return v;
    }
    let mut out = v.scale(lead.conj() / lead.norm());
    out.0[idx] = C64::new(out.0[idx].re, 0.0);
    out
}

/// `φ†Aφ`.
pub fn mean_value(a: &CMat4, phi: &Spinor) -> C64 {
    let av = a.apply(&phi.0);
    phi.0.iter().zip(av.iter()).map(|(p, q)| p.conj() * q).sum()
}

/// Real part of `φ†Aφ`, rejecting imaginary parts above [`IMAG_TOL`].
pub fn real_mean_value(a: &CMat4, phi: &Spinor, what: &str) -> Result<f64> {
    let z = mean_value(a, phi);
    if z.im.abs() > IMAG_TOL {
        return Err(Error::ConventionViolation(format!(
            "mean value of {what} has imaginary part {:e}",
            z.im
        )));
    }
    Ok(z.re)
}

fn inner(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn vnorm(a: &[C64; 4]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the positive-energy subspace.
///
/// Column-pivoted Gram–Schmidt over the columns of `P₊`: the longest
/// remaining column is taken at each of the two steps.
pub fn positive_energy_basis(m: &MomentumState) -> [[C64; 4]; 2] {
    pivoted_basis(&positive_energy_projector(m))
}

fn pivoted_basis(p: &CMat4) -> [[C64; 4]; 2] {
    let mut cols: Vec<[C64; 4]> = (0..4).map(|j| p.column(j)).collect();
    let mut basis = [[C64::new(0.0, 0.0); 4]; 2];
    for slot in basis.iter_mut() {
        let (idx, _) = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (i, vnorm(c)))
            .fold((0, -1.0), |acc, (i, n)| if n > acc.1 { (i, n) } else { acc });
        let pivot = cols.remove(idx);
        let n = vnorm(&pivot);
        let q = pivot.map(|c| c / n);
        for c in cols.iter_mut() {
            let r = inner(&q, c);
            for k in 0..4 {
                c[k] -= q[k] * r;
            }
        }
        *slot = q;
    }
    basis
}

/// Eigenvalues of `A` restricted to the positive-energy subspace, ascending.
pub fn restricted_eigenvalues(a: &CMat4, m: &MomentumState) -> Result<(f64, f64)> {
    let p = positive_energy_projector(m);
    let leak = ((CMat4::identity() - p) * *a * p).max_abs();
    if leak > LEAKAGE_TOL {
        return Err(Error::SubspaceLeakage(leak));
    }
    let q = pivoted_basis(&p);
    let aq = [a.apply(&q[0]), a.apply(&q[1])];
    let r = |i: usize, j: usize| inner(&q[i], &aq[j]);
    let (m00, m01, m10, m11) = (r(0, 0), r(0, 1), r(1, 0), r(1, 1));
    let half_tr = (m00 + m11) * 0.5;
    let det = m00 * m11 - m01 * m10;
    let disc = (half_tr * half_tr - det).sqrt();
    let (l1, l2) = (half_tr - disc, half_tr + disc);
    for l in [l1, l2] {
        if l.im.abs() > IMAG_TOL {
            return Err(Error::ConventionViolation(format!(
                "restricted eigenvalue {l} is not real"
            )));
        }
    }
    let (a1, a2) = (l1.re, l2.re);
    Ok(if a1 <= a2 { (a1, a2) } else { (a2, a1) })
}

/// Mean spin four-vector `π^μ` and tensor `Π^{μν} = (Φ, Π)` on the eigenspinor.
pub fn classical_spin(m: &MomentumState, axis: &SpinAxis) -> Result<(FourVector, AntisymTensor)> {
    let ops = OperatorSet::new(m);
    let phi = eigenspinor_with(&ops, axis)?;
    classical_spin_of(&ops, &phi)
}

pub fn classical_spin_of(ops: &OperatorSet, phi: &Spinor) -> Result<(FourVector, AntisymTensor)> {
    let mut pi = [0.0; 4];
    for (mu, p) in pi.iter_mut().enumerate() {
        *p = real_mean_value(&ops.pi[mu], phi, "pi")?;
    }
    let mut polar = [0.0; 3];
    let mut axial = [0.0; 3];
    for k in 0..3 {
        polar[k] = real_mean_value(&ops.tensor.polar[k], phi, "Phi")?;
        axial[k] = real_mean_value(&ops.tensor.axial[k], phi, "Pi")?;
    }
    Ok((
        FourVector::from_array(pi),
        AntisymTensor::from_polar_axial(Vec3(polar), Vec3(axial)),
    ))
}
