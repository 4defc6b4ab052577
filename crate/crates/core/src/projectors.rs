//! Spin projectors built from an antisymmetric tensor `h^{μν} = (-e, h)`
//! and the invariant projection chains evaluated on eigenspinors.

use serde::{Deserialize, Serialize};

use crate::clifford::dot3;
use crate::error::{Error, Result};
use crate::spin_operators::{
    eigenspinor_with, real_mean_value, OperatorSet, MomentumState, SpinAxis, Spinor,
};
use crate::tensor::{dual_vector, AntisymTensor, Beta3, FourVector, Vec3};

/// `I₁` at or below this is treated as a vanishing projector.
pub const I1_FLOOR: f64 = 1e-14;
/// `|β|` below this has no direction of motion.
pub const VELOCITY_FLOOR: f64 = 1e-14;

/// An antisymmetric projector tensor `h^{μν} = (-e, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldProjector {
    pub e: Vec3,
    pub h: Vec3,
}

impl FieldProjector {
    pub fn new(e: Vec3, h: Vec3) -> Self {
        FieldProjector { e, h }
    }

    pub fn magnetic(h: Vec3) -> Self {
        FieldProjector { e: Vec3::ZERO, h }
    }

    pub fn tensor(&self) -> AntisymTensor {
        AntisymTensor::new(self.e, self.h)
    }

    pub fn from_tensor(t: &AntisymTensor) -> Self {
        FieldProjector { e: t.e, h: t.h }
    }
}

/// Space-like part of `h^{μν}` with respect to the velocity `β`:
///
/// ```text
/// -e' = γ²[β×(h - [β×e])]
///  h' = h - γ²[β×(e + [β×h])]
/// ```
pub fn spacelike_part(p: &FieldProjector, beta: &Beta3) -> AntisymTensor {
    let b = beta.beta();
    let g2 = beta.gamma() * beta.gamma();
    let polar = b.cross(p.h - b.cross(p.e)) * g2;
    let axial = p.h - b.cross(p.e + b.cross(p.h)) * g2;
    AntisymTensor::from_polar_axial(polar, axial)
}

/// `I₁ = ½ h'_{μν} h'^{μν}` through the tensor contraction, any `e`.
pub fn invariant_i1_contracted(p: &FieldProjector, beta: &Beta3) -> f64 {
    let t = spacelike_part(p, beta);
    t.contract(&t)
}

/// `I₁ = γ²[h² - (β·h)²]`, valid for `e = 0`.
pub fn invariant_i1_closed_form(h: Vec3, beta: &Beta3) -> f64 {
    let g = beta.gamma();
    g * g * (h.norm_sqr() - beta.beta().dot(h).powi(2))
}

/// `I₁`, via the closed form when `e = 0` and the contraction otherwise.
pub fn invariant_i1(p: &FieldProjector, beta: &Beta3) -> Result<f64> {
    let i1 = if p.e == Vec3::ZERO {
        invariant_i1_closed_form(p.h, beta)
    } else {
        invariant_i1_contracted(p, beta)
    };
    if !(i1 > I1_FLOOR) {
        return Err(Error::DegenerateProjector(i1));
    }
    Ok(i1)
}

/// Normalized space-like tensor and its dual vector, for any `(e, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovariantProjector {
    /// `S^{μν} = h'^{μν}/√I₁`
    pub tensor: AntisymTensor,
    /// `s^α = ½ ε^{αβμν} S_{μν} b_β`
    pub s: FourVector,
    pub i1: f64,
}

pub fn covariant_projector(p: &FieldProjector, m: &MomentumState) -> Result<CovariantProjector> {
    let beta = m.velocity();
    let i1 = invariant_i1_contracted(p, &beta);
    if !(i1 > I1_FLOOR) {
        return Err(Error::DegenerateProjector(i1));
    }
    let tensor = spacelike_part(p, &beta) * (1.0 / i1.sqrt());
    let s = dual_vector(&tensor, m.four_momentum());
    Ok(CovariantProjector { tensor, s, i1 })
}

/// Projector quantities for a purely magnetic-type `h` (`e = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorFrame {
    /// `S^{μν} = (Q, S)` with `Q = [β×η]`, `S = η - β(β·η)`.
    pub tensor: AntisymTensor,
    /// `η = γ²h/√I₁`
    pub eta: Vec3,
    /// `s^α = ((β·η), η)/γ`
    pub s: FourVector,
    /// Rest-frame unit vector `ν = [η - γβ(β·η)/(γ+1)]/γ`.
    pub nu: Vec3,
    pub i1: f64,
    pub gamma: f64,
    pub beta: Vec3,
}

impl ProjectorFrame {
    /// Vector part `S` of `S^{μν}`.
    pub fn s_axial(&self) -> Vec3 {
        self.tensor.axial()
    }

    /// `Q = [β×η]`.
    pub fn q_polar(&self) -> Vec3 {
        self.tensor.polar()
    }
}

pub fn projector_frame(p: &FieldProjector, m: &MomentumState) -> Result<ProjectorFrame> {
    if p.e != Vec3::ZERO {
        return Err(Error::InvalidParameter(
            "projector frame closed forms require e = 0".into(),
        ));
    }
    let beta = m.velocity();
    let i1 = invariant_i1(p, &beta)?;
    let root = i1.sqrt();
    let (b, g) = (beta.beta(), beta.gamma());
    let eta = Vec3(p.h.0.map(|c| c * g * g / root));
    let tensor = spacelike_part(p, &beta) * (1.0 / root);
    let s = dual_vector(&tensor, m.four_momentum());
    let nu = Vec3((eta - b * (g * b.dot(eta) / (g + 1.0))).0.map(|c| c / g));
    Ok(ProjectorFrame { tensor, eta, s, nu, i1, gamma: g, beta: b })
}

/// `s = S/γ + γβ(β·S)`.
pub fn vector_from_tensor_part(s_axial: Vec3, beta: &Beta3) -> Vec3 {
    let (b, g) = (beta.beta(), beta.gamma());
    s_axial * (1.0 / g) + b * (g * b.dot(s_axial))
}

/// `S = γ[s - β(β·s)]`.
pub fn tensor_part_from_vector(s: Vec3, beta: &Beta3) -> Vec3 {
    let (b, g) = (beta.beta(), beta.gamma());
    (s - b * b.dot(s)) * g
}

/// `(⟨s_α π̂^α⟩, ⟨½ S_{μν} Π̂^{μν}⟩)` on a given spinor.
pub fn covariant_chain_on(ops: &OperatorSet, phi: &Spinor, tensor: &AntisymTensor, s: FourVector) -> Result<(f64, f64)> {
    let lhs = real_mean_value(&ops.pi_contract(s), phi, "s·pi")?;
    let rhs = real_mean_value(&ops.tensor.contract(tensor), phi, "S:Pi/2")?;
    Ok((lhs, rhs))
}

/// Invariant pair `s_α π̂^α = ½ S_{μν} Π̂^{μν}` on the eigenspinor of `axis`.
pub fn invariant_chain_eq8(frame: &ProjectorFrame, m: &MomentumState, axis: &SpinAxis) -> Result<(f64, f64)> {
    let ops = OperatorSet::new(m);
    let phi = eigenspinor_with(&ops, axis)?;
    covariant_chain_on(&ops, &phi, &frame.tensor, frame.s)
}

/// `(⟨ν·Σ̂⟩, ⟨S·π̂⟩/γ, ⟨s·Π̂⟩/γ)` on a given spinor.
pub fn rest_axis_chain_on(ops: &OperatorSet, phi: &Spinor, frame: &ProjectorFrame) -> Result<(f64, f64, f64)> {
    let g = ops.momentum.gamma();
    let nu_sigma = real_mean_value(&dot3(frame.nu.0, ops.sigma_main()), phi, "nu·Sigma")?;
    let s_pi = real_mean_value(&dot3(frame.s_axial().0, &ops.pi_spatial()), phi, "S·pi")? / g;
    let s_big_pi = real_mean_value(&dot3(frame.s.spatial().0, &ops.tensor.axial), phi, "s·Pi")? / g;
    Ok((nu_sigma, s_pi, s_big_pi))
}

/// Three-member chain `(ν·Σ̂) = (S·π̂)/γ = (s·Π̂)/γ` on the eigenspinor of `axis`.
pub fn invariant_chain_eq9(
    frame: &ProjectorFrame,
    m: &MomentumState,
    axis: &SpinAxis,
) -> Result<(f64, f64, f64)> {
    let ops = OperatorSet::new(m);
    let phi = eigenspinor_with(&ops, axis)?;
    rest_axis_chain_on(&ops, &phi, frame)
}

/// Both chains with the operators replaced by their classical mean values:
/// `ζn` for Σ̂, `π^μ` for π̂^μ and `Π^{μν}` for Π̂^{μν}.
pub fn classical_chains(
    frame: &ProjectorFrame,
    spin_vector: Vec3,
    pi: FourVector,
    big_pi: &AntisymTensor,
) -> ([f64; 2], [f64; 3]) {
    let g = frame.gamma;
    let covariant = [frame.s.dot(pi), frame.tensor.contract(big_pi)];
    let rest_axis = [
        frame.nu.dot(spin_vector),
        frame.s_axial().dot(pi.spatial()) / g,
        frame.s.spatial().dot(big_pi.axial()) / g,
    ];
    (covariant, rest_axis)
}

/// Chains induced by the particle motion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicChains {
    /// `(⟨σ·β⟩, ⟨Σ̂·β⟩, ⟨β·π̂⟩/γ, ⟨β·Π̂⟩)`; all equal to `ζ(ν_axis·β)`.
    pub helicity: [f64; 4],
    /// `(⟨ν·Φ̂⟩, ⟨s·Φ̂⟩, ⟨[η×β]·Π̂⟩/γ, ⟨η·Φ̂⟩/γ)`: the projection onto `[k×β]`.
    pub transverse: [f64; 4],
    /// `⟨S·Π̂⟩/γ`, reported for comparison; not a member of the chain.
    pub transverse_s_pi: f64,
}

impl KinematicChains {
    pub fn helicity_spread(&self) -> f64 {
        spread(&self.helicity)
    }

    pub fn transverse_spread(&self) -> f64 {
        spread(&self.transverse)
    }
}

/// Largest pairwise difference.
pub fn spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    hi - lo
}

/// Helicity and transverse chains on the eigenspinor of `axis`.
///
/// The transverse chain is an identity when `h ⊥ β`; for other
/// configurations its members are reported as computed.
pub fn kinematic_invariants(m: &MomentumState, axis: &SpinAxis, frame: &ProjectorFrame) -> Result<KinematicChains> {
    let beta = m.beta();
    if beta.norm() < VELOCITY_FLOOR {
        return Err(Error::ZeroVelocity);
    }
    let ops = OperatorSet::new(m);
    let phi = eigenspinor_with(&ops, axis)?;
    let g = m.gamma();
    let basis = crate::clifford::DiracBasis::new();
    let mv = |v: Vec3, ms: &[crate::clifford::CMat4; 3], what: &str| real_mean_value(&dot3(v.0, ms), &phi, what);

    let helicity = [
        mv(beta, &basis.sigma, "sigma·beta")?,
        mv(beta, ops.sigma_main(), "Sigma·beta")?,
        mv(beta, &ops.pi_spatial(), "beta·pi")? / g,
        mv(beta, &ops.tensor.axial, "beta·Pi")?,
    ];
    let transverse = [
        mv(frame.nu, &ops.tensor.polar, "nu·Phi")?,
        mv(frame.s.spatial(), &ops.tensor.polar, "s·Phi")?,
        mv(frame.eta.cross(beta), &ops.tensor.axial, "[eta×beta]·Pi")? / g,
        mv(frame.eta, &ops.tensor.polar, "eta·Phi")? / g,
    ];
    let transverse_s_pi = mv(frame.s_axial(), &ops.tensor.axial, "S·Pi")? / g;
    Ok(KinematicChains { helicity, transverse, transverse_s_pi })
}

/// Relative orientation of the motion and the projector direction `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeCase {
    /// `β ∥ k`: `(k·Σ̂) = (k·π̂)/γ = (k·Π̂)`.
    Parallel,
    /// `β ⊥ k`: `(k·Σ̂) = (k·π̂) = (k·Π̂)/γ`.
    Perpendicular,
    /// Anything else, including rest; no `1/γ` placement applies.
    General,
}

/// Raw mean values `⟨k·Σ̂⟩`, `⟨k·π̂⟩`, `⟨k·Π̂⟩` along a unit direction `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisProjections {
    pub k: Vec3,
    pub gamma: f64,
    pub case: ExtremeCase,
    pub sigma: f64,
    pub pi: f64,
    pub big_pi: f64,
}

impl AxisProjections {
    /// The three chain members with `1/γ` placed as the case requires.
    pub fn members(&self) -> [f64; 3] {
        match self.case {
            ExtremeCase::Parallel => [self.sigma, self.pi / self.gamma, self.big_pi],
            ExtremeCase::Perpendicular => [self.sigma, self.pi, self.big_pi / self.gamma],
            ExtremeCase::General => [self.sigma, self.pi, self.big_pi],
        }
    }
}

/// Classifies `β` against `k` with an angular tolerance `tol` on `|sin|`/`|cos|`.
pub fn classify_case(beta: Vec3, k: Vec3, tol: f64) -> ExtremeCase {
    let (Some(bh), Some(kh)) = (beta.normalize(), k.normalize()) else {
        return ExtremeCase::General;
    };
    let cos = bh.dot(kh);
    if (1.0 - cos.abs()) <= tol {
        ExtremeCase::Parallel
    } else if cos.abs() <= tol {
        ExtremeCase::Perpendicular
    } else {
        ExtremeCase::General
    }
}

/// Mean values along `k` on the eigenspinor of `axis`.
pub fn axis_projections(m: &MomentumState, axis: &SpinAxis, k: Vec3) -> Result<AxisProjections> {
    let k = k
        .normalize()
        .ok_or_else(|| Error::InvalidParameter("projection direction must be nonzero".into()))?;
    let ops = OperatorSet::new(m);
    let phi = eigenspinor_with(&ops, axis)?;
    Ok(AxisProjections {
        k,
        gamma: m.gamma(),
        case: classify_case(m.beta(), k, 1e-12),
        sigma: real_mean_value(&dot3(k.0, ops.sigma_main()), &phi, "k·Sigma")?,
        pi: real_mean_value(&dot3(k.0, &ops.pi_spatial()), &phi, "k·pi")?,
        big_pi: real_mean_value(&dot3(k.0, &ops.tensor.axial), &phi, "k·Pi")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(x: f64, y: f64, z: f64) -> Beta3 {
        Beta3::new(Vec3::new(x, y, z)).unwrap()
    }

    #[test]
    fn spacelike_part_examples() {
        let p = FieldProjector::magnetic(Vec3::new(1.0, 2.0, -0.5));
        assert_eq!(spacelike_part(&p, &Beta3::rest()), p.tensor());
        // at rest the time-space part is projected out entirely
        let p = FieldProjector::new(Vec3::new(0.3, -0.2, 1.0), Vec3::new(1.0, 2.0, -0.5));
        let t = spacelike_part(&p, &Beta3::rest());
        assert_eq!(t.h, p.h);
        assert_eq!(t.e.max_abs(), 0.0);

        let b = beta(0.2, -0.4, 0.3);
        let h = b.beta() * 2.5;
        let t = spacelike_part(&FieldProjector::magnetic(h), &b);
        assert!((t.h - h).max_abs() < 1e-15);
        assert!(t.e.max_abs() < 1e-15);
    }

    #[test]
    fn spacelike_part_is_orthogonal_to_momentum() {
        let m = MomentumState::new(Vec3::new(1.3, -0.7, 2.2));
        let p = FieldProjector::new(Vec3::new(0.5, 0.1, -0.8), Vec3::new(-1.0, 0.4, 0.9));
        let t = spacelike_part(&p, &m.velocity());
        assert!(t.apply(m.four_momentum()).max_abs() < 1e-12);
    }

    #[test]
    fn i1_examples() {
        let i1 = invariant_i1(&FieldProjector::magnetic(Vec3::new(0.0, 0.0, 2.0)), &Beta3::rest()).unwrap();
        assert!((i1 - 4.0).abs() < 1e-15);
        let i1 = invariant_i1(&FieldProjector::magnetic(Vec3::Z), &beta(0.6, 0.0, 0.0)).unwrap();
        assert!((i1 - 1.5625).abs() < 1e-12);
        let i1 = invariant_i1(&FieldProjector::magnetic(Vec3::X), &beta(0.6, 0.0, 0.0)).unwrap();
        assert!((i1 - 1.0).abs() < 1e-12);
        let p = FieldProjector::magnetic(Vec3::new(0.3, -1.1, 0.4));
        let b = beta(0.1, 0.5, -0.6);
        assert!((invariant_i1_closed_form(p.h, &b) - invariant_i1_contracted(&p, &b)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_projector() {
        let err = invariant_i1(&FieldProjector::magnetic(Vec3::ZERO), &Beta3::rest()).unwrap_err();
        assert!(matches!(err, Error::DegenerateProjector(_)));
        assert!(projector_frame(&FieldProjector::magnetic(Vec3::ZERO), &MomentumState::at_rest()).is_err());
        assert!(covariant_projector(&FieldProjector::default_zero(), &MomentumState::at_rest()).is_err());
    }

    impl FieldProjector {
        fn default_zero() -> Self {
            FieldProjector::new(Vec3::ZERO, Vec3::ZERO)
        }
    }

    #[test]
    fn frame_rejects_electric_part() {
        let p = FieldProjector::new(Vec3::X, Vec3::Z);
        assert!(matches!(
            projector_frame(&p, &MomentumState::at_rest()),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rest_frame_collapse() {
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &MomentumState::at_rest()).unwrap();
        assert_eq!(f.eta, Vec3::Z);
        assert_eq!(f.tensor, AntisymTensor::new(Vec3::ZERO, Vec3::Z));
        assert_eq!(f.s, FourVector::new(0.0, 0.0, 0.0, 1.0));
        assert_eq!(f.nu, Vec3::Z);
        let h = Vec3::new(0.0, 3.0, 4.0);
        let f = projector_frame(&FieldProjector::magnetic(h), &MomentumState::at_rest()).unwrap();
        assert_eq!(f.nu, Vec3::new(0.0, 0.6, 0.8));
        assert_eq!(f.eta, f.nu);
    }

    #[test]
    fn transverse_eta_is_gamma_k() {
        // β = 0.6 x̂ ⇒ b = γβ = 0.75 x̂
        let m = MomentumState::new(Vec3::new(0.75, 0.0, 0.0));
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &m).unwrap();
        assert!((f.eta - Vec3::Z * 1.25).max_abs() < 1e-12);
    }

    #[test]
    fn frame_closed_forms() {
        let m = MomentumState::new(Vec3::new(-1.1, 0.8, 2.4));
        let f = projector_frame(&FieldProjector::magnetic(Vec3::new(0.5, 1.5, -0.3)), &m).unwrap();
        let (b, g) = (f.beta, f.gamma);
        assert!((f.q_polar() - b.cross(f.eta)).max_abs() < 1e-12);
        assert!((f.s_axial() - (f.eta - b * b.dot(f.eta))).max_abs() < 1e-12);
        let s = FourVector::from_parts(b.dot(f.eta) / g, f.eta * (1.0 / g));
        assert!((f.s - s).max_abs() < 1e-12);
        assert!((f.tensor.contract(&f.tensor) - 1.0).abs() < 1e-12);
        assert!((f.nu.norm() - 1.0).abs() < 1e-12);
        assert!(f.s.dot(m.four_momentum()).abs() < 1e-12);
        let v = m.velocity();
        assert!((vector_from_tensor_part(f.s_axial(), &v) - f.s.spatial()).max_abs() < 1e-12);
        assert!((tensor_part_from_vector(f.s.spatial(), &v) - f.s_axial()).max_abs() < 1e-12);
    }

    #[test]
    fn rest_frame_chains() {
        let m = MomentumState::at_rest();
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &m).unwrap();
        let up = SpinAxis::new(Vec3::Z, 1).unwrap();
        let (a, b) = invariant_chain_eq8(&f, &m, &up).unwrap();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let down = SpinAxis::new(Vec3::Z, -1).unwrap();
        let (x, y, z) = invariant_chain_eq9(&f, &m, &down).unwrap();
        for v in [x, y, z] {
            assert!((v + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_extreme_case() {
        let m = MomentumState::new(Vec3::new(0.0, 0.0, 2.0));
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &m).unwrap();
        assert!((f.nu - Vec3::Z).max_abs() < 1e-12);
        assert!((f.s_axial() - Vec3::Z).max_abs() < 1e-12);
        assert!((f.s.spatial() - Vec3::Z * m.gamma()).max_abs() < 1e-12);
        let (x, y, z) = invariant_chain_eq9(&f, &m, &SpinAxis::new(Vec3::Z, 1).unwrap()).unwrap();
        for v in [x, y, z] {
            assert!((v - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_velocity_kinematics() {
        let m = MomentumState::at_rest();
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &m).unwrap();
        let axis = SpinAxis::new(Vec3::Z, 1).unwrap();
        assert_eq!(kinematic_invariants(&m, &axis, &f).unwrap_err(), Error::ZeroVelocity);
    }

    #[test]
    fn helicity_chain_value() {
        let m = MomentumState::new(Vec3::new(0.0, 0.0, 2.0));
        let f = projector_frame(&FieldProjector::magnetic(Vec3::Z), &m).unwrap();
        let k = kinematic_invariants(&m, &SpinAxis::new(Vec3::Z, 1).unwrap(), &f).unwrap();
        let expect = 2.0 / 5f64.sqrt();
        for v in k.helicity {
            assert!((v - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn extreme_case_displays() {
        for zeta in [1, -1] {
            let axis = SpinAxis::new(Vec3::Z, zeta).unwrap();
            let par = axis_projections(&MomentumState::new(Vec3::new(0.0, 0.0, 2.0)), &axis, Vec3::Z).unwrap();
            assert_eq!(par.case, ExtremeCase::Parallel);
            let perp = axis_projections(&MomentumState::new(Vec3::new(2.0, 0.0, 0.0)), &axis, Vec3::Z).unwrap();
            assert_eq!(perp.case, ExtremeCase::Perpendicular);
            for v in par.members().into_iter().chain(perp.members()) {
                assert!((v - zeta as f64).abs() < 1e-10);
            }
            // the 1/γ really is needed on the chosen member
            assert!((par.pi - zeta as f64).abs() > 0.5);
            assert!((perp.big_pi - zeta as f64).abs() > 0.5);
        }
        assert_eq!(classify_case(Vec3::ZERO, Vec3::Z, 1e-12), ExtremeCase::General);
    }

    #[test]
    fn spread_of_values() {
        assert_eq!(spread(&[1.0, 3.0, 2.0]), 2.0);
        assert_eq!(spread(&[0.5]), 0.0);
    }
}
