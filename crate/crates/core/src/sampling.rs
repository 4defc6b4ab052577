//! Seeded random configurations shared by the verification suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bmt::{quantum_init, DynState, FieldTensor, PhysParams};
use crate::error::Result;
use crate::spin_operators::{MomentumState, SpinAxis};
use crate::tensor::Vec3;

pub type SampleRng = ChaCha8Rng;

/// Independent stream `stream` derived from a user seed.
pub fn rng_for(seed: u64, stream: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on the unit sphere.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(r * phi.cos(), r * phi.sin(), z)
}

/// Uniform in the ball `|b| ≤ radius`.
pub fn momentum<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Vec3 {
    let u: f64 = rng.gen();
    unit_vector(rng) * (radius * u.cbrt())
}

/// As [`momentum`] but with `|b| ≥ floor`.
pub fn nonzero_momentum<R: Rng + ?Sized>(rng: &mut R, radius: f64, floor: f64) -> Vec3 {
    loop {
        let b = momentum(rng, radius);
        if b.norm() >= floor {
            return b;
        }
    }
}

pub fn zeta<R: Rng + ?Sized>(rng: &mut R) -> i8 {
    if rng.gen::<bool>() {
        1
    } else {
        -1
    }
}

pub fn spin_axis<R: Rng + ?Sized>(rng: &mut R) -> SpinAxis {
    let z = zeta(rng);
    SpinAxis::new(unit_vector(rng), z).expect("unit vectors are valid axes")
}

/// Vector of random direction with magnitude uniform in `[lo, hi]`.
pub fn vector_with_norm<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Vec3 {
    let n = rng.gen_range(lo..=hi);
    unit_vector(rng) * n
}

/// One precession run: fields, parameters and initial state.
#[derive(Clone, Copy, Debug)]
pub struct BmtConfig {
    pub field: FieldTensor,
    pub params: PhysParams,
    pub state: DynState,
}

/// `|β₀| ≤ beta_max`, `|H| ∈ [0.2, 1]`, `|E| ≤ 0.3|H|`, random spin axis.
///
/// Keeping `E` below `H` bounds `I₁ ≥ H² - E²` away from zero along the
/// whole trajectory, so the moving axis stays defined.
pub fn bmt_config<R: Rng + ?Sized>(rng: &mut R, g: f64, beta_max: f64) -> Result<BmtConfig> {
    let h = vector_with_norm(rng, 0.2, 1.0);
    let e = vector_with_norm(rng, 0.0, 0.3 * h.norm());
    let speed = rng.gen_range(0.0..=beta_max);
    let beta = unit_vector(rng) * speed;
    let gamma = 1.0 / (1.0 - speed * speed).sqrt();
    let m = MomentumState::new(beta * gamma);
    let params = PhysParams::with_g(g);
    let state = quantum_init(&m, &spin_axis(rng), &params)?;
    Ok(BmtConfig { field: FieldTensor::new(e, h), params, state })
}
