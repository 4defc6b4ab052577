//! Tensor-form BMT spin precession coupled to Lorentz-force motion in
//! constant uniform fields.
//!
//! Brackets follow `A^{[μ}B^{ν]} = A^μB^ν - A^νB^μ`. The spin tensor obeys
//!
//! ```text
//! dΠ^{μν}/dτ = (eg/2m₀c) (H̃^{μρ} g_{ρλ} Π^{λν} - H̃^{νρ} g_{ρλ} Π^{λμ})
//! H̃^{μρ}     = H^{μρ} + (1/c²) v^{[μ} v_α H^{αρ]} + (2m₀/egc) v^{[μ} w^{ρ]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projectors::{spacelike_part, FieldProjector};
use crate::spin_operators::{classical_spin, MomentumState, SpinAxis};
use crate::tensor::{wedge, AntisymTensor, Beta3, FourVector, Vec3, METRIC};

/// `I₁` of the effective field below this has no usable moving axis.
pub const AXIS_I1_FLOOR: f64 = 1e-12;

/// Charge, mass, speed of light and g-factor in natural units.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub charge: f64,
    pub mass: f64,
    pub c: f64,
    pub g: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        PhysParams { charge: -1.0, mass: 1.0, c: 1.0, g: 2.0 }
    }
}

impl PhysParams {
    pub fn with_g(g: f64) -> Self {
        PhysParams { g, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.charge, self.mass, self.c, self.g].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("physical parameters must be finite".into()));
        }
        if self.mass <= 0.0 {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {}", self.mass)));
        }
        if self.c <= 0.0 {
            return Err(Error::InvalidParameter(format!("c must be positive, got {}", self.c)));
        }
        Ok(())
    }

    /// `e/(m₀c)`
    pub fn cyclotron_factor(&self) -> f64 {
        self.charge / (self.mass * self.c)
    }

    /// `eg/(2m₀c)`
    pub fn precession_factor(&self) -> f64 {
        self.charge * self.g / (2.0 * self.mass * self.c)
    }
}

/// Constant uniform lab-frame fields, `H^{μν} = (-E, H)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldTensor {
    pub e_field: Vec3,
    pub h_field: Vec3,
}

impl FieldTensor {
    pub fn new(e_field: Vec3, h_field: Vec3) -> Self {
        FieldTensor { e_field, h_field }
    }

    pub fn magnetic(h: Vec3) -> Self {
        FieldTensor { e_field: Vec3::ZERO, h_field: h }
    }

    pub fn tensor(&self) -> AntisymTensor {
        AntisymTensor::new(self.e_field, self.h_field)
    }

    pub fn is_zero(&self) -> bool {
        self.e_field == Vec3::ZERO && self.h_field == Vec3::ZERO
    }
}

/// Proper time, four-velocity and classical spin tensor `Π^{μν} = (Φ, Π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DynState {
    pub tau: f64,
    pub v: FourVector,
    pub spin: AntisymTensor,
}

impl DynState {
    pub fn is_finite(&self) -> bool {
        self.tau.is_finite() && self.v.is_finite() && self.spin.is_finite()
    }

    /// `β = v/v⁰`.
    pub fn velocity(&self) -> Result<Beta3> {
        Beta3::new(self.v.spatial() * (1.0 / self.v.t))
    }
}

/// `w^μ = (e/m₀c) H^{μν} v_ν`.
pub fn lorentz_force(v: FourVector, field: &FieldTensor, p: &PhysParams) -> FourVector {
    field.tensor().apply(v) * p.cyclotron_factor()
}

/// Effective field `H̃^{μν}` seen by the spin.
pub fn effective_field(
    field: &FieldTensor,
    v: FourVector,
    w: FourVector,
    p: &PhysParams,
) -> Result<AntisymTensor> {
    let eg = p.charge * p.g;
    if eg == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "effective field needs e·g != 0 (e = {}, g = {})",
            p.charge, p.g
        )));
    }
    let h = field.tensor();
    // v_α H^{αρ} = -H^{ρα} v_α
    let vh = h.apply(v) * -1.0;
    let thomas = wedge(v, vh) * (1.0 / (p.c * p.c));
    let accel = wedge(v, w) * (2.0 * p.mass / (eg * p.c));
    Ok(h + thomas + accel)
}

/// `A g B - B g A` for antisymmetric `A`, `B` (mixed-index contraction).
pub fn generator_commutator(a: &AntisymTensor, b: &AntisymTensor) -> AntisymTensor {
    let (au, bu) = (a.unpack(), b.unpack());
    let mut agb = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            agb[mu][nu] = (0..4).map(|r| au[mu][r] * METRIC[r] * bu[r][nu]).sum();
        }
    }
    // (AgB)ᵀ = BgA for antisymmetric A and B
    let entry = |mu: usize, nu: usize| agb[mu][nu] - agb[nu][mu];
    AntisymTensor::new(
        Vec3([entry(0, 1), entry(0, 2), entry(0, 3)]),
        Vec3([entry(2, 3), entry(3, 1), entry(1, 2)]),
    )
}

/// Right-hand side `(dv/dτ, dΠ/dτ)`.
pub fn bmt_rhs(state: &DynState, field: &FieldTensor, p: &PhysParams) -> Result<(FourVector, AntisymTensor)> {
    let w = lorentz_force(state.v, field, p);
    let ht = effective_field(field, state.v, w, p)?;
    let dspin = generator_commutator(&ht, &state.spin) * p.precession_factor();
    Ok((w, dspin))
}

fn renormalize(v: FourVector, c: f64) -> Option<FourVector> {
    let vv = v.dot(v);
    (vv < 0.0).then(|| v * (c / (-vv).sqrt()))
}

/// Classical fourth-order Runge–Kutta with fixed step.
///
/// Returns `n_steps + 1` states starting with `state0`. The four-velocity is
/// rescaled to `v·v = -c²` after each step; the spin tensor is never touched.
pub fn integrate(
    state0: &DynState,
    field: &FieldTensor,
    p: &PhysParams,
    dtau: f64,
    n_steps: usize,
) -> Result<Vec<DynState>> {
    p.validate()?;
    if !(dtau > 0.0) || !dtau.is_finite() {
        return Err(Error::InvalidParameter(format!("dtau must be positive, got {dtau}")));
    }
    if n_steps == 0 {
        return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
    }
    if !state0.is_finite() {
        return Err(Error::Divergence { step: 0 });
    }
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push(*state0);
    let mut s = *state0;
    let shifted = |s: &DynState, k: &(FourVector, AntisymTensor), h: f64| DynState {
        tau: s.tau + h,
        v: s.v + k.0 * h,
        spin: s.spin + k.1 * h,
    };
    for step in 1..=n_steps {
        let k1 = bmt_rhs(&s, field, p)?;
        let k2 = bmt_rhs(&shifted(&s, &k1, 0.5 * dtau), field, p)?;
        let k3 = bmt_rhs(&shifted(&s, &k2, 0.5 * dtau), field, p)?;
        let k4 = bmt_rhs(&shifted(&s, &k3, dtau), field, p)?;
        let h6 = dtau / 6.0;
        let dv = (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * h6;
        let spin = s.spin + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * h6;
        // an unmoved velocity is left bit-exact rather than rescaled by an ulp
        let v = if dv.max_abs() == 0.0 {
            s.v
        } else {
            renormalize(s.v + dv, p.c).ok_or(Error::Divergence { step })?
        };
        s = DynState { tau: state0.tau + step as f64 * dtau, v, spin };
        if !s.is_finite() {
            return Err(Error::Divergence { step });
        }
        out.push(s);
    }
    Ok(out)
}

/// Contractions tracked along a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConservedRecord {
    pub tau: f64,
    /// `½ H_{μν} Π^{μν}`
    pub h_dot_pi: f64,
    /// `½ H̃_{μν} Π^{μν}`
    pub htilde_dot_pi: f64,
    /// `½ Π_{μν} Π^{μν}`
    pub pi_norm: f64,
    /// `v_μ v^μ`
    pub v_dot_v: f64,
}

pub fn conserved_report(
    trajectory: &[DynState],
    field: &FieldTensor,
    p: &PhysParams,
) -> Result<Vec<ConservedRecord>> {
    let h = field.tensor();
    trajectory
        .iter()
        .map(|s| {
            let w = lorentz_force(s.v, field, p);
            let ht = effective_field(field, s.v, w, p)?;
            Ok(ConservedRecord {
                tau: s.tau,
                h_dot_pi: h.contract(&s.spin),
                htilde_dot_pi: ht.contract(&s.spin),
                pi_norm: s.spin.contract(&s.spin),
                v_dot_v: s.v.dot(s.v),
            })
        })
        .collect()
}

/// Largest `|x_i - x_0|` over a series.
pub fn max_drift<I: IntoIterator<Item = f64>>(series: I) -> f64 {
    let mut it = series.into_iter();
    let Some(first) = it.next() else { return 0.0 };
    it.fold(0.0_f64, |m, x| m.max((x - first).abs()))
}

/// Drift of each tracked contraction over a report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DriftSummary {
    pub h_dot_pi: f64,
    pub htilde_dot_pi: f64,
    pub pi_norm: f64,
    pub v_dot_v: f64,
    /// Largest pointwise `|H̃:Π - H:Π|`.
    pub htilde_vs_h: f64,
}

pub fn drift_summary(report: &[ConservedRecord]) -> DriftSummary {
    DriftSummary {
        h_dot_pi: max_drift(report.iter().map(|r| r.h_dot_pi)),
        htilde_dot_pi: max_drift(report.iter().map(|r| r.htilde_dot_pi)),
        pi_norm: max_drift(report.iter().map(|r| r.pi_norm)),
        v_dot_v: max_drift(report.iter().map(|r| r.v_dot_v)),
        htilde_vs_h: report
            .iter()
            .fold(0.0_f64, |m, r| m.max((r.htilde_dot_pi - r.h_dot_pi).abs())),
    }
}

/// `dH̃/dτ = ((g-2)/(gc²)) H^{[μα} w_α v^{ν]}` at a point.
pub fn dhtilde_formula(v: FourVector, field: &FieldTensor, p: &PhysParams) -> AntisymTensor {
    let w = lorentz_force(v, field, p);
    let hw = field.tensor().apply(w);
    wedge(hw, v) * ((p.g - 2.0) / (p.g * p.c * p.c))
}

/// Central-difference derivative of `H̃` versus the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DhtildeRecord {
    pub tau: f64,
    pub finite_difference: AntisymTensor,
    pub formula: AntisymTensor,
    pub residual: f64,
}

/// One record per interior point of the trajectory.
pub fn dhtilde_check(
    trajectory: &[DynState],
    field: &FieldTensor,
    p: &PhysParams,
) -> Result<Vec<DhtildeRecord>> {
    let ht: Vec<AntisymTensor> = trajectory
        .iter()
        .map(|s| effective_field(field, s.v, lorentz_force(s.v, field, p), p))
        .collect::<Result<_>>()?;
    Ok((1..trajectory.len().saturating_sub(1))
        .map(|i| {
            let span = trajectory[i + 1].tau - trajectory[i - 1].tau;
            let fd = (ht[i + 1] - ht[i - 1]) * (1.0 / span);
            let formula = dhtilde_formula(trajectory[i].v, field, p);
            DhtildeRecord {
                tau: trajectory[i].tau,
                finite_difference: fd,
                formula,
                residual: (fd - formula).max_abs(),
            }
        })
        .collect())
}

/// Normalized moving axis `S^{μν}(τ)` and the spin projection on it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRecord {
    pub tau: f64,
    pub axis: AntisymTensor,
    /// `½ S_{μν} Π^{μν}`
    pub projection: f64,
}

/// `S^{μν} = H̃'^{μν}/√I₁` at one state, `H̃'` being the space-like part.
pub fn moving_axis(state: &DynState, field: &FieldTensor, p: &PhysParams) -> Result<AntisymTensor> {
    let w = lorentz_force(state.v, field, p);
    let ht = effective_field(field, state.v, w, p)?;
    let beta = state.velocity()?;
    let spacelike = spacelike_part(&FieldProjector::from_tensor(&ht), &beta);
    let i1 = spacelike.contract(&spacelike);
    if !(i1 >= AXIS_I1_FLOOR) {
        return Err(Error::DegenerateProjector(i1));
    }
    Ok(spacelike * (1.0 / i1.sqrt()))
}

pub fn moving_axis_projection(
    trajectory: &[DynState],
    field: &FieldTensor,
    p: &PhysParams,
) -> Result<Vec<AxisRecord>> {
    trajectory
        .iter()
        .map(|s| {
            let axis = moving_axis(s, field, p)?;
            Ok(AxisRecord { tau: s.tau, axis, projection: axis.contract(&s.spin) })
        })
        .collect()
}

/// Classical initial data from the quantum mean values on an eigenspinor.
pub fn quantum_init(m: &MomentumState, axis: &SpinAxis, p: &PhysParams) -> Result<DynState> {
    let (_, spin) = classical_spin(m, axis)?;
    let v = FourVector::from_parts(m.gamma(), m.b()) * p.c;
    Ok(DynState { tau: 0.0, v, spin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rest_state(spin: Vec3) -> DynState {
        DynState { tau: 0.0, v: FourVector::new(1.0, 0.0, 0.0, 0.0), spin: AntisymTensor::new(Vec3::ZERO, spin) }
    }

    #[test]
    fn force_vanishes_at_rest_in_magnetic_field() {
        let w = lorentz_force(FourVector::new(1.0, 0.0, 0.0, 0.0), &FieldTensor::magnetic(Vec3::Z), &PhysParams::default());
        assert_eq!(w.max_abs(), 0.0);
    }

    #[test]
    fn force_is_orthogonal_to_velocity() {
        let m = MomentumState::new(Vec3::new(0.4, -1.2, 2.0));
        let v = m.four_momentum();
        let f = FieldTensor::new(Vec3::new(0.3, 0.1, -0.7), Vec3::new(-0.2, 0.9, 0.5));
        let w = lorentz_force(v, &f, &PhysParams::default());
        assert!(w.dot(v).abs() < 1e-12);
    }

    #[test]
    fn effective_field_limits() {
        let f = FieldTensor::magnetic(Vec3::new(0.0, 0.0, 0.8));
        let p = PhysParams::default();
        let rest = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let ht = effective_field(&f, rest, FourVector::ZERO, &p).unwrap();
        assert_eq!(ht, f.tensor());

        let f = FieldTensor::new(Vec3::new(0.3, -0.4, 0.2), Vec3::new(0.5, 0.1, -0.6));
        let v = MomentumState::new(Vec3::new(1.0, 0.5, -2.0)).four_momentum();
        let w = lorentz_force(v, &f, &p);
        let ht = effective_field(&f, v, w, &p).unwrap();
        assert!((ht - f.tensor()).max_abs() < 1e-14);

        let err = effective_field(&f, v, w, &PhysParams::with_g(0.0)).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }

    #[test]
    fn effective_field_keeps_spin_contraction() {
        let p = PhysParams::with_g(3.0);
        let f = FieldTensor::new(Vec3::new(0.2, 0.4, -0.1), Vec3::new(0.7, -0.3, 0.5));
        let m = MomentumState::new(Vec3::new(-0.8, 1.6, 0.4));
        let axis = SpinAxis::new(Vec3::new(0.2, -0.5, 1.0), 1).unwrap();
        let s = quantum_init(&m, &axis, &p).unwrap();
        let ht = effective_field(&f, s.v, lorentz_force(s.v, &f, &p), &p).unwrap();
        assert!((ht.contract(&s.spin) - f.tensor().contract(&s.spin)).abs() < 1e-12);
        assert!(ht != f.tensor());
    }

    #[test]
    fn rhs_examples() {
        let f = FieldTensor::new(Vec3::new(0.2, 0.0, 0.1), Vec3::Z);
        let p = PhysParams::with_g(2.5);
        let s = DynState { tau: 0.0, v: FourVector::new(1.25, 0.75, 0.0, 0.0), spin: AntisymTensor::ZERO };
        let (_, ds) = bmt_rhs(&s, &f, &p).unwrap();
        assert_eq!(ds, AntisymTensor::ZERO);

        let m = MomentumState::new(Vec3::new(0.3, 1.1, -0.4));
        let s = quantum_init(&m, &SpinAxis::new(Vec3::new(1.0, 0.2, 0.3), -1).unwrap(), &p).unwrap();
        let (_, ds) = bmt_rhs(&s, &f, &p).unwrap();
        // d(½Π:Π)/dτ = ½Π:dΠ + ½dΠ:Π
        assert!((2.0 * s.spin.contract(&ds)).abs() < 1e-12);
    }

    #[test]
    fn zero_field_is_stationary() {
        let m = MomentumState::new(Vec3::new(0.5, 0.5, 1.0));
        let p = PhysParams::default();
        let s0 = quantum_init(&m, &SpinAxis::new(Vec3::Y, 1).unwrap(), &p).unwrap();
        let traj = integrate(&s0, &FieldTensor::default(), &p, 0.01, 50).unwrap();
        assert_eq!(traj.len(), 51);
        for s in &traj[1..] {
            assert_eq!(s.spin, s0.spin);
            assert_eq!(s.v, s0.v);
        }
        let report = conserved_report(&traj, &FieldTensor::default(), &p).unwrap();
        let d = drift_summary(&report);
        assert_eq!(d.h_dot_pi, 0.0);
        assert_eq!(d.pi_norm, 0.0);
        assert_eq!(d.htilde_dot_pi, 0.0);
    }

    #[test]
    fn integrate_rejects_bad_input() {
        let s = rest_state(Vec3::Z);
        let f = FieldTensor::magnetic(Vec3::Z);
        let p = PhysParams::default();
        assert!(integrate(&s, &f, &p, 0.0, 10).is_err());
        assert!(integrate(&s, &f, &p, 0.1, 0).is_err());
        let bad = PhysParams { mass: -1.0, ..p };
        assert!(integrate(&s, &f, &bad, 0.1, 10).is_err());
        let mut nan = s;
        nan.spin.h = Vec3::new(f64::NAN, 0.0, 0.0);
        assert_eq!(integrate(&nan, &f, &p, 0.1, 10).unwrap_err(), Error::Divergence { step: 0 });
    }

    #[test]
    fn runaway_reports_step() {
        let s = rest_state(Vec3::Z);
        let f = FieldTensor::new(Vec3::new(1e300, 0.0, 0.0), Vec3::ZERO);
        let err = integrate(&s, &f, &PhysParams::default(), 1.0, 10).unwrap_err();
        assert!(matches!(err, Error::Divergence { step: 1 }));
    }

    #[test]
    fn rest_frame_precession_rate() {
        // spin precesses about H at egH/(2m₀c)
        let h = 0.7;
        let f = FieldTensor::magnetic(Vec3::new(0.0, 0.0, h));
        let p = PhysParams::default();
        let traj = integrate(&rest_state(Vec3::X), &f, &p, 1e-3, 2000).unwrap();
        let end = traj.last().unwrap();
        let angle = end.spin.h[1].atan2(end.spin.h[0]);
        // ds/dτ = (eg/2m₀c) s × H; with e = -1 the rotation is counterclockwise
        let expect = -p.precession_factor() * h * end.tau;
        assert!((angle - expect).abs() < 1e-10, "{angle} vs {expect}");
        assert!((end.spin.h[2]).abs() < 1e-14);
    }

    #[test]
    fn cyclotron_frequency() {
        let h = 0.5;
        let f = FieldTensor::magnetic(Vec3::new(0.0, 0.0, h));
        let p = PhysParams::default();
        let m = MomentumState::new(Vec3::new(1.5, 0.0, 0.0));
        let s0 = DynState { tau: 0.0, v: m.four_momentum(), spin: AntisymTensor::ZERO };
        let traj = integrate(&s0, &f, &p, 1e-3, 3000).unwrap();
        // unwrap the in-plane velocity angle and fit a slope in lab time t = γτ
        let mut phase = Vec::with_capacity(traj.len());
        let mut prev = 0.0;
        let mut turns = 0.0;
        for s in &traj {
            let a = s.v.y.atan2(s.v.x);
            if a - prev > std::f64::consts::PI {
                turns -= 1.0;
            } else if prev - a > std::f64::consts::PI {
                turns += 1.0;
            }
            prev = a;
            phase.push(a + turns * std::f64::consts::TAU);
        }
        let n = traj.len() as f64;
        let ts: Vec<f64> = traj.iter().map(|s| s.tau * m.gamma()).collect();
        let (mt, mp) = (ts.iter().sum::<f64>() / n, phase.iter().sum::<f64>() / n);
        let cov: f64 = ts.iter().zip(&phase).map(|(t, a)| (t - mt) * (a - mp)).sum();
        let var: f64 = ts.iter().map(|t| (t - mt).powi(2)).sum();
        let omega = cov / var;
        let expect = -p.charge * h / (p.mass * m.gamma() * p.c);
        assert!((omega - expect).abs() < 1e-9, "{omega} vs {expect}");
    }

    #[test]
    fn dhtilde_vanishes_for_g2() {
        let f = FieldTensor::new(Vec3::new(0.1, 0.0, 0.05), Vec3::new(0.0, 0.3, 0.6));
        let p = PhysParams::default();
        let m = MomentumState::new(Vec3::new(1.0, -0.5, 0.2));
        let s0 = quantum_init(&m, &SpinAxis::new(Vec3::Z, 1).unwrap(), &p).unwrap();
        let traj = integrate(&s0, &f, &p, 1e-3, 500).unwrap();
        let check = dhtilde_check(&traj, &f, &p).unwrap();
        assert_eq!(check.len(), 499);
        for r in &check {
            assert_eq!(r.formula.max_abs(), 0.0);
            assert!(r.residual <= 1e-10);
        }
        let zero = dhtilde_check(&traj, &FieldTensor::default(), &p).unwrap();
        assert!(zero.iter().all(|r| r.residual == 0.0));
    }

    #[test]
    fn quantum_init_examples() {
        let p = PhysParams::default();
        let s = quantum_init(&MomentumState::at_rest(), &SpinAxis::new(Vec3::Z, 1).unwrap(), &p).unwrap();
        assert_eq!(s.v, FourVector::new(1.0, 0.0, 0.0, 0.0));
        assert!((s.spin - AntisymTensor::new(Vec3::ZERO, Vec3::Z)).max_abs() < 1e-15);

        let m = MomentumState::new(Vec3::new(2.0, -1.0, 3.0));
        let s = quantum_init(&m, &SpinAxis::new(Vec3::new(0.1, 0.7, -0.2), -1).unwrap(), &p).unwrap();
        assert!((s.spin.contract(&s.spin) - 1.0).abs() < 1e-12);
        assert!(s.spin.apply(s.v).max_abs() < 1e-12);
    }

    #[test]
    fn aligned_spin_keeps_unit_projection() {
        let f = FieldTensor::magnetic(Vec3::new(0.0, 0.0, 0.9));
        let p = PhysParams::with_g(2.5);
        let traj = integrate(&rest_state(Vec3::Z), &f, &p, 1e-2, 200).unwrap();
        for r in moving_axis_projection(&traj, &f, &p).unwrap() {
            assert!((r.projection - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_axis() {
        let f = FieldTensor::new(Vec3::X, Vec3::ZERO);
        let err = moving_axis(&rest_state(Vec3::Z), &f, &PhysParams::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateProjector(_)));
    }

    #[test]
    fn drift_helpers() {
        assert_eq!(max_drift([1.0, 1.5, 0.25]), 0.75);
        assert_eq!(max_drift(std::iter::empty()), 0.0);
    }
}
