//! Machine-readable convention sheet: every matrix in explicit numeric form
//! plus the measured residuals that pin down signs and normalizations.
//!
//! The sheet is computed from fixed inputs only, so its JSON rendering is
//! byte-stable for a given build.

use serde::Serialize;

use crate::bmt::{bmt_rhs, effective_field, lorentz_force, DynState, FieldTensor, PhysParams};
use crate::clifford::{commutator, dot3, CMat4, DiracBasis};
use crate::error::Result;
use crate::spin_operators::{classical_spin, MomentumState, OperatorSet, SigmaVariant, SpinAxis};
use crate::tensor::{dual_tensor, AntisymTensor, FourVector, Vec3, LEVI_CIVITA_0123, METRIC};

/// Momentum used for every operator residual on the sheet.
pub const PROBE_MOMENTUM: Vec3 = Vec3::new(0.3, -1.2, 0.8);
/// Threshold separating "commutes" from "fails" in the commutation table.
pub const COMMUTATION_TOL: f64 = 1e-12;

/// A complex matrix as rows of `[re, im]` pairs.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixEntry {
    pub name: String,
    pub rows: Vec<Vec<[f64; 2]>>,
}

impl MatrixEntry {
    pub fn new(name: impl Into<String>, m: &CMat4) -> Self {
        // `+ 0.0` folds negative zeros so the output does not depend on how a zero was reached
        let rows = m.0.iter().map(|r| r.iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect()).collect();
        MatrixEntry { name: name.into(), rows }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviCivitaEntry {
    pub epsilon_0123: f64,
    pub check: &'static str,
    pub residual: f64,
    pub residual_with_flipped_sign: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub convention: &'static str,
    /// `max|H̃ - H|` at `g = 2` for a moving particle in mixed fields.
    pub g2_cancellation_residual: f64,
    /// `|ω_measured - egH/(2m₀c)|` from the equation of motion at rest.
    pub rest_frame_rate_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationEntry {
    pub operator: String,
    pub commutator_with_h: f64,
    pub subspace_leakage: f64,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualEntry {
    pub relation: String,
    pub full_matrix: f64,
    pub on_subspace: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionSheet {
    pub representation: &'static str,
    pub metric: [f64; 4],
    pub tensor_packing: &'static str,
    pub inner_product: &'static str,
    pub levi_civita: LeviCivitaEntry,
    pub antisymmetrization: BracketEntry,
    pub matrices: Vec<MatrixEntry>,
    pub probe_momentum: [f64; 3],
    pub commutation: Vec<CommutationEntry>,
    pub commutation_failures: Vec<String>,
    pub off_subspace_residuals: Vec<ResidualEntry>,
}

fn dirac_matrices(d: &DiracBasis) -> Vec<MatrixEntry> {
    let mut out = Vec::new();
    for (k, m) in d.rho.iter().enumerate() {
        out.push(MatrixEntry::new(format!("rho{}", k + 1), m));
    }
    for (k, m) in d.sigma.iter().enumerate() {
        out.push(MatrixEntry::new(format!("sigma{}", k + 1), m));
    }
    for (k, m) in d.alpha.iter().enumerate() {
        out.push(MatrixEntry::new(format!("alpha{}", k + 1), m));
    }
    for (mu, m) in d.gamma.iter().enumerate() {
        out.push(MatrixEntry::new(format!("gamma{mu}"), m));
    }
    out.push(MatrixEntry::new("gamma5", &d.gamma5));
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            out.push(MatrixEntry::new(format!("sigma^{mu}{nu}"), &d.sigma_tensor(mu, nu)));
        }
    }
    out
}

fn levi_civita_entry() -> Result<LeviCivitaEntry> {
    let m = MomentumState::new(PROBE_MOMENTUM);
    let axis = SpinAxis::new(Vec3::new(0.4, 0.5, -0.7), 1)?;
    let (pi, big_pi) = classical_spin(&m, &axis)?;
    let dual = dual_tensor(pi, m.four_momentum());
    Ok(LeviCivitaEntry {
        epsilon_0123: LEVI_CIVITA_0123,
        check: "Pi^{mu nu} = eps^{mu nu a b} pi_a b_b on an eigenspinor",
        residual: (dual - big_pi).max_abs(),
        residual_with_flipped_sign: (dual * -1.0 - big_pi).max_abs(),
    })
}

fn bracket_entry() -> Result<BracketEntry> {
    let p = PhysParams::default();
    let field = FieldTensor::new(Vec3::new(0.2, -0.1, 0.3), Vec3::new(0.4, 0.6, -0.5));
    let v = MomentumState::new(PROBE_MOMENTUM).four_momentum() * p.c;
    let ht = effective_field(&field, v, lorentz_force(v, &field, &p), &p)?;

    let h = 0.7;
    let rest = DynState {
        tau: 0.0,
        v: FourVector::new(p.c, 0.0, 0.0, 0.0),
        spin: AntisymTensor::new(Vec3::ZERO, Vec3::X),
    };
    let (_, ds) = bmt_rhs(&rest, &FieldTensor::magnetic(Vec3::new(0.0, 0.0, h)), &p)?;
    let expected = (p.charge * p.g * h / (2.0 * p.mass * p.c)).abs();
    Ok(BracketEntry {
        convention: "A^[mu B^nu] = A^mu B^nu - A^nu B^mu (no 1/2)",
        g2_cancellation_residual: (ht - field.tensor()).max_abs(),
        rest_frame_rate_residual: (ds.h.norm() - expected).abs(),
    })
}

fn commutation_table(ops: &OperatorSet) -> Result<Vec<CommutationEntry>> {
    let id = CMat4::identity();
    let p = ops.projector;
    let mut named: Vec<(String, CMat4)> = Vec::new();
    for (mu, m) in ops.pi.iter().enumerate() {
        named.push((format!("pi^{mu}"), *m));
    }
    let axes = ['x', 'y', 'z'];
    for k in 0..3 {
        named.push((format!("Phi_{}", axes[k]), ops.tensor.polar[k]));
    }
    for k in 0..3 {
        named.push((format!("Pi_{}", axes[k]), ops.tensor.axial[k]));
    }
    for v in SigmaVariant::ALL {
        let s = ops.sigma(v)?;
        for k in 0..3 {
            named.push((format!("Sigma[{}]_{}", v.name(), axes[k]), s[k]));
        }
    }
    Ok(named
        .into_iter()
        .map(|(operator, x)| {
            let c = commutator(&ops.hamiltonian, &x).max_abs();
            CommutationEntry {
                operator,
                commutator_with_h: c,
                subspace_leakage: ((id - p) * x * p).max_abs(),
                commutes: c <= COMMUTATION_TOL,
            }
        })
        .collect())
}

fn residual(relation: &str, diff: CMat4, p: &CMat4) -> ResidualEntry {
    ResidualEntry {
        relation: relation.into(),
        full_matrix: diff.max_abs(),
        on_subspace: (diff * *p).max_abs(),
    }
}

fn off_subspace_residuals(ops: &OperatorSet, d: &DiracBasis) -> Result<Vec<ResidualEntry>> {
    let three = CMat4::identity() * 3.0;
    let p = ops.projector;
    let mut out = Vec::new();
    for v in SigmaVariant::ALL {
        let s = ops.sigma(v)?;
        let sq = s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
        out.push(residual(&format!("Sigma[{}]^2 = 3", v.name()), sq - three, &p));
    }
    out.push(residual("Pi_{mu nu} Pi^{mu nu}/2 = 3", ops.tensor.square() - three, &p));
    out.push(residual("pi_mu pi^mu = 3", ops.pi_square() - three, &p));

    let b = ops.momentum.b();
    out.push(residual("pi^0 = (sigma.b)", ops.pi[0] - dot3(b.0, &d.sigma), &p));
    // [σ×b]_k
    let sxb = [
        d.sigma[1] * b[2] - d.sigma[2] * b[1],
        d.sigma[2] * b[0] - d.sigma[0] * b[2],
        d.sigma[0] * b[1] - d.sigma[1] * b[0],
    ];
    let axes = ['x', 'y', 'z'];
    for k in 0..3 {
        let phi_display = -(d.rho[2] * sxb[k]);
        out.push(residual(&format!("Phi_{} = -rho3[sigma x b]", axes[k]), ops.tensor.polar[k] - phi_display, &p));
    }
    for k in 0..3 {
        let pi_display = d.sigma[k] + d.rho[1] * sxb[k];
        out.push(residual(&format!("Pi_{} = sigma + rho2[sigma x b]", axes[k]), ops.tensor.axial[k] - pi_display, &p));
    }
    Ok(out)
}

pub fn convention_sheet() -> Result<ConventionSheet> {
    let d = DiracBasis::new();
    let ops = OperatorSet::new(&MomentumState::new(PROBE_MOMENTUM));
    let commutation = commutation_table(&ops)?;
    let commutation_failures = commutation.iter().filter(|c| !c.commutes).map(|c| c.operator.clone()).collect();
    Ok(ConventionSheet {
        representation: "Dirac-Pauli: rho_i = tau_i (x) 1, sigma_i = 1 (x) tau_i, gamma0 = i rho3, gammak = i rho3 alphak, gamma5 = -i rho1",
        metric: METRIC,
        tensor_packing: "T^{k0} = -e_k, T^{23} = h_x, T^{31} = h_y, T^{12} = h_z; A:B/2 = h_A.h_B - e_A.e_B",
        inner_product: "phi^dagger A phi",
        levi_civita: levi_civita_entry()?,
        antisymmetrization: bracket_entry()?,
        matrices: dirac_matrices(&d),
        probe_momentum: PROBE_MOMENTUM.0,
        commutation,
        commutation_failures,
        off_subspace_residuals: off_subspace_residuals(&ops, &d)?,
    })
}

pub fn convention_sheet_json() -> Result<String> {
    let sheet = convention_sheet()?;
    serde_json::to_string_pretty(&sheet).map_err(|e| crate::Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_is_listed() {
        let sheet = convention_sheet().unwrap();
        let g0 = sheet.matrices.iter().find(|m| m.name == "gamma0").unwrap();
        for (i, row) in g0.rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let expect = if i != j { 0.0 } else if i < 2 { 1.0 } else { -1.0 };
                assert_eq!(*z, [0.0, expect]);
            }
        }
    }

    #[test]
    fn epsilon_is_discriminated() {
        let e = convention_sheet().unwrap().levi_civita;
        assert_eq!(e.epsilon_0123, 1.0);
        assert!(e.residual < 1e-12);
        assert!(e.residual_with_flipped_sign > 0.1);
    }

    #[test]
    fn bracket_anchors_hold() {
        let b = convention_sheet().unwrap().antisymmetrization;
        assert!(b.g2_cancellation_residual < 1e-14);
        assert!(b.rest_frame_rate_residual < 1e-14);
    }

    #[test]
    fn commutation_failures_still_preserve_subspace() {
        let sheet = convention_sheet().unwrap();
        assert_eq!(sheet.commutation.len(), 4 + 3 + 3 + 12);
        assert!(!sheet.commutation_failures.is_empty());
        for c in &sheet.commutation {
            assert!(c.subspace_leakage <= 1e-12, "{}: {}", c.operator, c.subspace_leakage);
        }
    }

    #[test]
    fn subspace_residuals_are_small() {
        for r in convention_sheet().unwrap().off_subspace_residuals {
            assert!(r.on_subspace <= 1e-12, "{}: {}", r.relation, r.on_subspace);
        }
    }

    #[test]
    fn json_is_stable() {
        let a = convention_sheet_json().unwrap();
        let b = convention_sheet_json().unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("-0.0,"));
    }
}
