//! Named invariant suites with seeded sampling and per-check tolerances.
//!
//! Every suite draws from its own ChaCha8 stream, so results do not depend
//! on the order or concurrency in which suites run.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bmt::{
    conserved_report, drift_summary, effective_field, integrate, lorentz_force, moving_axis_projection, max_drift,
};
use crate::clifford::{anticommutator, commutator, dot3, CMat4, DiracBasis, C64};
use crate::error::{Error, Result};
use crate::projectors::{
    axis_projections, classical_chains, covariant_projector, covariant_chain_on, rest_axis_chain_on, kinematic_invariants, projector_frame,
    spread, tensor_part_from_vector, vector_from_tensor_part, FieldProjector,
};
use crate::sampling::{self, rng_for, SampleRng};
use crate::spin_operators::{
    classical_spin_of, eigenspinor_with, restricted_eigenvalues, MomentumState, OperatorSet, SigmaVariant, SpinAxis,
};
use crate::tensor::{boost_tensor, boost_vector, dual_tensor, Beta3, FourVector, Vec3, METRIC};

/// Every check name with its default tolerance.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("clifford_relation", 1e-14),
    ("sigma_tensor_anchors", 1e-14),
    ("gamma5_square", 1e-14),
    ("gamma5_anticommutator", 1e-14),
    ("Eq2_eigenvalues", 1e-10),
    ("Eq3_eigenspinor", 1e-12),
    ("Eq3_rest_eigenvalues", 1e-12),
    ("Eq4_subspace", 1e-12),
    ("pi_square_full", 1e-12),
    ("pauli_algebra", 1e-12),
    ("hamiltonian_subspace", 1e-12),
    ("variant_coincidence", 1e-12),
    ("dual_relation", 1e-12),
    ("classical_spin_norm", 1e-12),
    ("projector_normalization", 1e-12),
    ("projector_orthogonality", 1e-12),
    ("Eq7_roundtrip", 1e-12),
    ("rest_frame_nu", 1e-12),
    ("Eq8_chain", 1e-10),
    ("Eq9_chain", 1e-10),
    ("chain_agreement", 1e-10),
    ("classical_chains", 1e-10),
    ("Eq8_boost_invariance", 1e-9),
    ("helicity_chain", 1e-10),
    ("transverse_chain", 1e-10),
    ("extreme_cases", 1e-10),
    ("g2_effective_field", 1e-12),
    ("bmt_conservation", 1e-8),
    ("bmt_velocity_norm", 1e-9),
    ("moving_axis", 1e-7),
];

pub fn default_tolerance(name: &str) -> Option<f64> {
    DEFAULT_TOLERANCES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random momenta per operator suite.
    pub samples: usize,
    /// Random configurations for the projector suite.
    pub projector_samples: usize,
    pub bmt_runs: usize,
    pub bmt_steps: usize,
    pub bmt_dtau: f64,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 2718,
            samples: 100,
            projector_samples: 1000,
            bmt_runs: 4,
            bmt_steps: 2000,
            bmt_dtau: 1e-3,
            tolerances: BTreeMap::new(),
        }
    }
}

impl VerifyConfig {
    /// Rejects unknown check names and non-positive tolerances.
    pub fn validate(&self) -> Result<()> {
        for (name, tol) in &self.tolerances {
            if default_tolerance(name).is_none() {
                return Err(Error::InvalidParameter(format!("unknown check name '{name}'")));
            }
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(Error::InvalidParameter(format!("tolerance for '{name}' must be positive, got {tol}")));
            }
        }
        if !(self.bmt_dtau.is_finite() && self.bmt_dtau > 0.0) {
            return Err(Error::InvalidParameter(format!("dtau must be positive, got {}", self.bmt_dtau)));
        }
        if self.samples == 0 || self.projector_samples == 0 || self.bmt_runs == 0 || self.bmt_steps == 0 {
            return Err(Error::InvalidParameter("sample counts must be at least 1".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str) -> f64 {
        self.tolerances
            .get(name)
            .copied()
            .or_else(|| default_tolerance(name))
            .unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub suite: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Running maximum that keeps NaN sticky.
#[derive(Clone, Copy, Debug, Default)]
struct Acc {
    max: f64,
    n: usize,
}

impl Acc {
    fn add(&mut self, x: f64) {
        if x.is_nan() || self.max.is_nan() {
            self.max = f64::NAN;
        } else {
            self.max = self.max.max(x.abs());
        }
    }

    fn sample(&mut self) {
        self.n += 1;
    }
}

/// Accumulators for one suite, in declaration order.
struct Suite<'a> {
    name: &'static str,
    cfg: &'a VerifyConfig,
    checks: Vec<(&'static str, Acc, Option<String>)>,
}

impl<'a> Suite<'a> {
    fn new(name: &'static str, cfg: &'a VerifyConfig, checks: &[&'static str]) -> Self {
        Suite { name, cfg, checks: checks.iter().map(|c| (*c, Acc::default(), None)).collect() }
    }

    fn slot(&mut self, check: &str) -> &mut (&'static str, Acc, Option<String>) {
        self.checks
            .iter_mut()
            .find(|(n, _, _)| *n == check)
            .expect("check registered with its suite")
    }

    fn add(&mut self, check: &str, residual: f64) {
        self.slot(check).1.add(residual);
    }

    fn sample(&mut self, check: &str) {
        self.slot(check).1.sample();
    }

    /// Records `r` into `check`, turning an error into a failing entry.
    fn record<T>(&mut self, check: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let slot = self.slot(check);
                slot.1.max = f64::INFINITY;
                slot.2.get_or_insert_with(|| e.to_string());
                None
            }
        }
    }

    fn finish(self) -> Vec<CheckResult> {
        self.checks
            .into_iter()
            .map(|(name, acc, error)| {
                let tolerance = self.cfg.tolerance(name);
                CheckResult {
                    name: name.into(),
                    suite: self.name,
                    samples: acc.n,
                    max_residual: acc.max,
                    tolerance,
                    pass: error.is_none() && acc.max <= tolerance,
                    error,
                }
            })
            .collect()
    }
}

fn clifford_suite(cfg: &VerifyConfig, _rng: &mut SampleRng) -> Vec<CheckResult> {
    let mut s = Suite::new(
        "clifford",
        cfg,
        &["clifford_relation", "sigma_tensor_anchors", "gamma5_square", "gamma5_anticommutator"],
    );
    let d = DiracBasis::new();
    let id = CMat4::identity();
    for mu in 0..4 {
        for nu in 0..4 {
            let g = if mu == nu { METRIC[mu] } else { 0.0 };
            s.add("clifford_relation", (anticommutator(&d.gamma[mu], &d.gamma[nu]) - id * (2.0 * g)).max_abs());
            s.sample("clifford_relation");
        }
    }
    s.add("sigma_tensor_anchors", (d.sigma_tensor(1, 2) - d.sigma[2]).max_abs());
    s.add("sigma_tensor_anchors", (d.sigma_tensor(1, 0) - d.alpha[0] * C64::new(0.0, -1.0)).max_abs());
    s.sample("sigma_tensor_anchors");
    s.add("gamma5_square", (d.gamma5 * d.gamma5 + id).max_abs());
    s.sample("gamma5_square");
    for mu in 0..4 {
        s.add("gamma5_anticommutator", anticommutator(&d.gamma5, &d.gamma[mu]).max_abs());
        s.sample("gamma5_anticommutator");
    }
    s.finish()
}

fn levi_civita3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

fn pauli_residual(s: &[CMat4; 3]) -> f64 {
    let mut r = 0.0_f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut rhs = CMat4::zero();
            for k in 0..3 {
                rhs = rhs + s[k] * C64::new(0.0, 2.0 * levi_civita3(i, j, k));
            }
            r = r.max((commutator(&s[i], &s[j]) - rhs).max_abs());
        }
    }
    r
}

fn operator_suite(cfg: &VerifyConfig, rng: &mut SampleRng) -> Vec<CheckResult> {
    let mut s = Suite::new(
        "spin_operators",
        cfg,
        &[
            "Eq2_eigenvalues",
            "Eq3_eigenspinor",
            "Eq3_rest_eigenvalues",
            "Eq4_subspace",
            "pi_square_full",
            "pauli_algebra",
            "hamiltonian_subspace",
            "variant_coincidence",
            "dual_relation",
            "classical_spin_norm",
        ],
    );
    let id = CMat4::identity();
    let three = id * 3.0;
    for _ in 0..cfg.samples {
        let b = sampling::nonzero_momentum(rng, 5.0, 1e-3);
        let axis = sampling::spin_axis(rng);
        let m = MomentumState::new(b);
        let ops = OperatorSet::new(&m);
        let p = ops.projector;

        let bperp = (b[0] * b[0] + b[1] * b[1]).sqrt();
        let expected = [
            (ops.pi[3], (1.0 + b[2] * b[2]).sqrt()),
            (ops.tensor.axial[2], (1.0 + bperp * bperp).sqrt()),
            (ops.pi[0], b.norm()),
            (ops.tensor.polar[2], bperp),
        ];
        for (op, lam) in expected {
            if let Some((lo, hi)) = s.record("Eq2_eigenvalues", restricted_eigenvalues(&op, &m)) {
                s.add("Eq2_eigenvalues", (lo + lam).abs().max((hi - lam).abs()));
            }
        }
        s.sample("Eq2_eigenvalues");

        let main = ops.sigma_main();
        let nu_sigma = dot3(axis.nu().0, main);
        if let Some(phi) = s.record("Eq3_eigenspinor", eigenspinor_with(&ops, &axis)) {
            let lhs = crate::spin_operators::Spinor::apply(&nu_sigma, &phi);
            s.add("Eq3_eigenspinor", lhs.distance(&phi.scale(C64::new(axis.zeta_f64(), 0.0))));
            if let Some((pi, big_pi)) = s.record("dual_relation", classical_spin_of(&ops, &phi)) {
                s.add("dual_relation", (dual_tensor(pi, m.four_momentum()) - big_pi).max_abs());
                s.add("classical_spin_norm", big_pi.contract(&big_pi) - 1.0);
                s.add("classical_spin_norm", pi.dot(pi) - 1.0);
                s.add("classical_spin_norm", pi.dot(m.four_momentum()));
                s.add("classical_spin_norm", big_pi.apply(m.four_momentum()).max_abs());
            }
        }
        s.sample("Eq3_eigenspinor");
        s.sample("dual_relation");
        s.sample("classical_spin_norm");

        let mut sigmas = Vec::new();
        for v in SigmaVariant::ALL {
            let Some(sv) = s.record("variant_coincidence", ops.sigma(v)) else { continue };
            let nu_v = dot3(axis.nu().0, sv);
            if let Some((lo, hi)) = s.record("Eq3_rest_eigenvalues", restricted_eigenvalues(&nu_v, &m)) {
                s.add("Eq3_rest_eigenvalues", (lo + 1.0).abs().max((hi - 1.0).abs()));
            }
            let sq = sv[0] * sv[0] + sv[1] * sv[1] + sv[2] * sv[2];
            s.add("Eq4_subspace", ((sq - three) * p).max_abs());
            for k in 0..3 {
                s.add("hamiltonian_subspace", ((id - p) * sv[k] * p).max_abs());
            }
            sigmas.push(*sv);
        }
        s.sample("Eq3_rest_eigenvalues");
        for i in 0..sigmas.len() {
            for j in (i + 1)..sigmas.len() {
                for k in 0..3 {
                    s.add("variant_coincidence", ((sigmas[i][k] - sigmas[j][k]) * p).max_abs());
                }
            }
        }
        s.sample("variant_coincidence");

        s.add("Eq4_subspace", ((ops.tensor.square() - three) * p).max_abs());
        s.add("Eq4_subspace", ((ops.pi_square() - three) * p).max_abs());
        s.sample("Eq4_subspace");
        s.add("pi_square_full", (ops.pi_square() - three).max_abs());
        s.sample("pi_square_full");

        s.add("pauli_algebra", pauli_residual(main));
        if let Some(fw) = s.record("pauli_algebra", ops.sigma(SigmaVariant::FoldyWouthuysen)) {
            s.add("pauli_algebra", pauli_residual(fw));
        }
        s.sample("pauli_algebra");

        for x in ops.pi.iter().chain(&ops.tensor.polar).chain(&ops.tensor.axial) {
            s.add("hamiltonian_subspace", ((id - p) * *x * p).max_abs());
        }
        s.sample("hamiltonian_subspace");
    }
    s.finish()
}

/// Rest-frame spin direction of a boosted particle from its spin four-vector.
fn rest_axis(pi: FourVector, m: &MomentumState) -> Result<SpinAxis> {
    let back = boost_vector(pi, &Beta3::from_momentum(m.b() * -1.0));
    SpinAxis::new(back.spatial(), 1)
}

fn projector_suite(cfg: &VerifyConfig, rng: &mut SampleRng) -> Vec<CheckResult> {
    let mut s = Suite::new(
        "projectors",
        cfg,
        &[
            "projector_normalization",
            "projector_orthogonality",
            "Eq7_roundtrip",
            "rest_frame_nu",
            "Eq8_chain",
            "Eq9_chain",
            "chain_agreement",
            "classical_chains",
            "Eq8_boost_invariance",
        ],
    );
    for i in 0..cfg.projector_samples {
        let m = MomentumState::new(sampling::momentum(rng, 5.0));
        let beta = m.velocity();
        let h = sampling::vector_with_norm(rng, 0.2, 2.0);
        let e = sampling::vector_with_norm(rng, 0.0, 2.0);
        let bu = m.four_momentum();

        if let Some(cp) = s.record("projector_normalization", covariant_projector(&FieldProjector::new(e, h), &m)) {
            s.add("projector_normalization", cp.tensor.contract(&cp.tensor) - 1.0);
            s.add("projector_orthogonality", cp.s.dot(bu));
            s.add("projector_orthogonality", cp.tensor.apply(bu).max_abs());
        }
        let Some(f) = s.record("projector_normalization", projector_frame(&FieldProjector::magnetic(h), &m)) else {
            continue;
        };
        s.add("projector_normalization", f.tensor.contract(&f.tensor) - 1.0);
        s.add("projector_normalization", f.nu.norm() - 1.0);
        s.sample("projector_normalization");
        s.add("projector_orthogonality", f.s.dot(bu));
        s.add("projector_orthogonality", f.tensor.apply(bu).max_abs());
        s.sample("projector_orthogonality");

        let scale = f.s.max_abs().max(1.0);
        s.add("Eq7_roundtrip", (vector_from_tensor_part(f.s_axial(), &beta) - f.s.spatial()).max_abs() / scale);
        s.add("Eq7_roundtrip", (tensor_part_from_vector(f.s.spatial(), &beta) - f.s_axial()).max_abs());
        s.add("Eq7_roundtrip", (f.s.t - beta.gamma() * beta.beta().dot(f.s_axial())) / scale);
        s.sample("Eq7_roundtrip");

        let rest = boost_tensor(&f.tensor, &Beta3::from_momentum(m.b() * -1.0));
        s.add("rest_frame_nu", rest.e.max_abs());
        s.add("rest_frame_nu", (rest.h - f.nu).max_abs());
        s.sample("rest_frame_nu");

        // chains are evaluated on a tenth of the configurations; each needs an eigensolve
        if i % 10 != 0 {
            continue;
        }
        let ops = OperatorSet::new(&m);
        for axis in [sampling::spin_axis(rng), SpinAxis::new(f.nu, sampling::zeta(rng)).expect("unit ν")] {
            let Some(phi) = s.record("Eq8_chain", eigenspinor_with(&ops, &axis)) else { continue };
            let expect = axis.zeta_f64() * axis.nu().dot(f.nu);
            let e8 = s.record("Eq8_chain", covariant_chain_on(&ops, &phi, &f.tensor, f.s));
            let e9 = s.record("Eq9_chain", rest_axis_chain_on(&ops, &phi, &f));
            let (Some((a, b)), Some((x, y, z))) = (e8, e9) else { continue };
            s.add("Eq8_chain", a - b);
            s.add("Eq9_chain", spread(&[x, y, z]));
            s.add("chain_agreement", spread(&[a, b, x, y, z, expect]));
            if let Some((pi, big_pi)) = s.record("classical_chains", classical_spin_of(&ops, &phi)) {
                let (c8, c9) = classical_chains(&f, axis.nu() * axis.zeta_f64(), pi, &big_pi);
                s.add("classical_chains", spread(&[a, b, x, y, z, c8[0], c8[1], c9[0], c9[1], c9[2]]));

                let boost = Beta3::new(sampling::vector_with_norm(rng, 0.0, 0.9)).expect("|β| ≤ 0.9");
                let m2 = MomentumState::new(boost_vector(bu, &boost).spatial());
                let h2 = FieldProjector::from_tensor(&boost_tensor(&FieldProjector::magnetic(h).tensor(), &boost));
                let pi2 = boost_vector(pi, &boost);
                let boosted = covariant_projector(&h2, &m2).and_then(|cp| {
                    let ops2 = OperatorSet::new(&m2);
                    let phi2 = eigenspinor_with(&ops2, &rest_axis(pi2, &m2)?)?;
                    covariant_chain_on(&ops2, &phi2, &cp.tensor, cp.s)
                });
                if let Some((a2, b2)) = s.record("Eq8_boost_invariance", boosted) {
                    s.add("Eq8_boost_invariance", spread(&[a, a2, b2]));
                }
                s.sample("Eq8_boost_invariance");
            }
            s.sample("Eq8_chain");
            s.sample("Eq9_chain");
            s.sample("chain_agreement");
            s.sample("classical_chains");
        }
    }
    s.finish()
}

fn kinematic_suite(cfg: &VerifyConfig, rng: &mut SampleRng) -> Vec<CheckResult> {
    let mut s = Suite::new("kinematics", cfg, &["helicity_chain", "transverse_chain", "extreme_cases"]);
    for _ in 0..cfg.samples {
        let m = MomentumState::new(sampling::nonzero_momentum(rng, 5.0, 1e-2));
        let bhat = m.beta().normalize().expect("nonzero momentum");
        let raw = sampling::unit_vector(rng);
        let Some(h) = (raw - bhat * raw.dot(bhat)).normalize() else { continue };
        let axis = sampling::spin_axis(rng);
        let chains = projector_frame(&FieldProjector::magnetic(h), &m).and_then(|f| kinematic_invariants(&m, &axis, &f));
        if let Some(k) = s.record("helicity_chain", chains) {
            let expect = axis.zeta_f64() * axis.nu().dot(m.beta());
            s.add("helicity_chain", spread(&[k.helicity[0], k.helicity[1], k.helicity[2], k.helicity[3], expect]));
            s.add("transverse_chain", k.transverse_spread());
        }
        s.sample("helicity_chain");
        s.sample("transverse_chain");
    }
    for (b, zeta) in [(Vec3::new(0.0, 0.0, 2.0), 1), (Vec3::new(0.0, 0.0, 2.0), -1), (Vec3::new(2.0, 0.0, 0.0), 1), (Vec3::new(2.0, 0.0, 0.0), -1)] {
        let m = MomentumState::new(b);
        let axis = SpinAxis::new(Vec3::Z, zeta).expect("unit axis");
        if let Some(ap) = s.record("extreme_cases", axis_projections(&m, &axis, Vec3::Z)) {
            for v in ap.members() {
                s.add("extreme_cases", v - zeta as f64);
            }
        }
        s.sample("extreme_cases");
    }
    s.finish()
}

fn bmt_suite(cfg: &VerifyConfig, rng: &mut SampleRng) -> Vec<CheckResult> {
    let mut s = Suite::new(
        "bmt",
        cfg,
        &["g2_effective_field", "bmt_conservation", "bmt_velocity_norm", "moving_axis"],
    );
    let gs = [2.0, 2.5, 3.0];
    for run in 0..cfg.bmt_runs {
        let g = gs[run % gs.len()];
        let Some(c) = s.record("bmt_conservation", sampling::bmt_config(rng, g, 0.98)) else { continue };
        let mut p2 = c.params;
        p2.g = 2.0;
        let v = c.state.v;
        let ht = effective_field(&c.field, v, lorentz_force(v, &c.field, &p2), &p2);
        if let Some(ht) = s.record("g2_effective_field", ht) {
            s.add("g2_effective_field", (ht - c.field.tensor()).max_abs());
        }
        s.sample("g2_effective_field");

        let traj = integrate(&c.state, &c.field, &c.params, cfg.bmt_dtau, cfg.bmt_steps);
        let Some(traj) = s.record("bmt_conservation", traj) else { continue };
        if let Some(report) = s.record("bmt_conservation", conserved_report(&traj, &c.field, &c.params)) {
            let d = drift_summary(&report);
            s.add("bmt_conservation", d.h_dot_pi);
            s.add("bmt_conservation", d.htilde_dot_pi);
            s.add("bmt_conservation", d.pi_norm);
            s.add("bmt_velocity_norm", d.v_dot_v);
        }
        if let Some(axis) = s.record("moving_axis", moving_axis_projection(&traj, &c.field, &c.params)) {
            s.add("moving_axis", max_drift(axis.iter().map(|r| r.projection)));
        }
        s.sample("bmt_conservation");
        s.sample("bmt_velocity_norm");
        s.sample("moving_axis");
    }
    s.finish()
}

type SuiteFn = fn(&VerifyConfig, &mut SampleRng) -> Vec<CheckResult>;

const SUITES: [SuiteFn; 5] = [clifford_suite, operator_suite, projector_suite, kinematic_suite, bmt_suite];

/// Runs all suites concurrently and merges their results in a fixed order.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let results: Vec<Vec<CheckResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES
            .iter()
            .enumerate()
            .map(|(i, suite)| {
                scope.spawn(move || {
                    let mut rng = rng_for(cfg.seed, i as u64);
                    suite(cfg, &mut rng)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join()).collect::<std::result::Result<_, _>>()
    })
    .map_err(|_| Error::Internal("verification suite panicked".into()))?;
    let checks: Vec<CheckResult> = results.into_iter().flatten().collect();
    Ok(VerifyReport { seed: cfg.seed, pass: checks.iter().all(|c| c.pass), checks })
}
