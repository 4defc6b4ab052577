//! Independent reference constructions used by the integration tests.
//!
//! Nothing here calls into the library's algebra: matrices are written out
//! by hand, products and contractions are plain loops.

#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M4 = [[C; 4]; 4];
pub type R4 = [[f64; 4]; 4];

pub const G: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn zero4() -> M4 {
    [[c(0.0, 0.0); 4]; 4]
}

pub fn eye4() -> M4 {
    let mut m = zero4();
    for i in 0..4 {
        m[i][i] = c(1.0, 0.0);
    }
    m
}

pub fn mul(a: &M4, b: &M4) -> M4 {
    let mut m = zero4();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn add(a: &M4, b: &M4) -> M4 {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] += b[i][j];
        }
    }
    m
}

pub fn scale(a: &M4, s: C) -> M4 {
    a.map(|r| r.map(|z| z * s))
}

pub fn sub(a: &M4, b: &M4) -> M4 {
    add(a, &scale(b, c(-1.0, 0.0)))
}

pub fn max_abs(a: &M4) -> f64 {
    a.iter().flatten().fold(0.0, |m: f64, z| m.max(z.norm()))
}

pub fn apply(a: &M4, v: &[C; 4]) -> [C; 4] {
    let mut out = [c(0.0, 0.0); 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i] += a[i][j] * v[j];
        }
    }
    out
}

pub fn vdist(a: &[C; 4], b: &[C; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn to_m4(m: &spin_invariants::clifford::CMat4) -> M4 {
    m.0
}

/// Pauli matrices.
pub fn tau() -> [[[C; 2]; 2]; 3] {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [[[o, one], [one, o]], [[o, -i], [i, o]], [[one, o], [o, -one]]]
}

pub fn id2() -> [[C; 2]; 2] {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// `A ⊗ B` with `A` acting on the outer (large/small) index.
pub fn kron(a: &[[C; 2]; 2], b: &[[C; 2]; 2]) -> M4 {
    let mut m = zero4();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

pub struct Dirac {
    pub rho: [M4; 3],
    pub sigma: [M4; 3],
    pub alpha: [M4; 3],
    pub gamma: [M4; 4],
    pub gamma5: M4,
}

/// Dirac–Pauli representation: `ρᵢ = τᵢ⊗1`, `σᵢ = 1⊗τᵢ`, `αᵢ = ρ₁σᵢ`,
/// `γ⁰ = iρ₃`, `γᵏ = -ρ₂σₖ`, `γ⁵ = -iρ₁`.
pub fn dirac() -> Dirac {
    let t = tau();
    let rho = [0, 1, 2].map(|i| kron(&t[i], &id2()));
    let sigma = [0, 1, 2].map(|i| kron(&id2(), &t[i]));
    let alpha = [0, 1, 2].map(|i| mul(&rho[0], &sigma[i]));
    let g0 = scale(&rho[2], c(0.0, 1.0));
    let gk = [0, 1, 2].map(|k| scale(&mul(&rho[1], &sigma[k]), c(-1.0, 0.0)));
    Dirac {
        rho,
        sigma,
        alpha,
        gamma: [g0, gk[0], gk[1], gk[2]],
        gamma5: scale(&rho[0], c(0.0, -1.0)),
    }
}

pub fn gamma_of(b: [f64; 3]) -> f64 {
    (1.0 + b.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// Normalized positive-energy spinor `((γ+1)χ, (σ·b)χ)` of `ĥ = α·b + ρ₃`.
pub fn positive_spinor(b: [f64; 3], chi: [C; 2]) -> [C; 4] {
    let g = gamma_of(b);
    let t = tau();
    let mut lower = [c(0.0, 0.0); 2];
    for k in 0..3 {
        for i in 0..2 {
            for j in 0..2 {
                lower[i] += t[k][i][j] * chi[j] * b[k];
            }
        }
    }
    let v = [chi[0] * (g + 1.0), chi[1] * (g + 1.0), lower[0], lower[1]];
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / n)
}

/// The two canonical positive-energy spinors for momentum `b`.
pub fn positive_pair(b: [f64; 3]) -> [[C; 4]; 2] {
    let one = c(1.0, 0.0);
    let o = c(0.0, 0.0);
    [positive_spinor(b, [one, o]), positive_spinor(b, [o, one])]
}

/// Active boost matrix taking `(1,0,0,0)` to `(γ, γβ)`.
pub fn boost_matrix(beta: [f64; 3]) -> R4 {
    let b2: f64 = beta.iter().map(|x| x * x).sum();
    let g = 1.0 / (1.0 - b2).sqrt();
    let mut m = [[0.0; 4]; 4];
    m[0][0] = g;
    for i in 0..3 {
        m[0][i + 1] = g * beta[i];
        m[i + 1][0] = g * beta[i];
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            m[i + 1][j + 1] = d + if b2 > 0.0 { (g - 1.0) * beta[i] * beta[j] / b2 } else { 0.0 };
        }
    }
    m
}

pub fn rmul(a: &R4, b: &R4) -> R4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                m[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    m
}

pub fn transpose(a: &R4) -> R4 {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = a[j][i];
        }
    }
    m
}

pub fn rapply(a: &R4, v: [f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i] += a[i][j] * v[j];
        }
    }
    out
}

pub fn rmax(a: &R4) -> f64 {
    a.iter().flatten().fold(0.0, |m: f64, x| m.max(x.abs()))
}

pub fn rsub(a: &R4, b: &R4) -> R4 {
    let mut m = *a;
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] -= b[i][j];
        }
    }
    m
}

/// `A^{μν}` from electric-type `e` (`A^{k0} = -e_k`) and magnetic-type `h`.
pub fn field_matrix(e: [f64; 3], h: [f64; 3]) -> R4 {
    [
        [0.0, e[0], e[1], e[2]],
        [-e[0], 0.0, h[2], -h[1]],
        [-e[1], -h[2], 0.0, h[0]],
        [-e[2], h[1], -h[0], 0.0],
    ]
}

/// `½ A_{μν} B^{μν}`.
pub fn half_contract(a: &R4, b: &R4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            s += G[i] * G[j] * a[i][j] * b[i][j];
        }
    }
    0.5 * s
}

/// `A^{μρ} g_{ρν}`.
pub fn mixed(a: &R4) -> R4 {
    let mut m = *a;
    for row in m.iter_mut() {
        for (j, x) in row.iter_mut().enumerate() {
            *x *= G[j];
        }
    }
    m
}

pub fn mdot(a: [f64; 4], b: [f64; 4]) -> f64 {
    (0..4).map(|i| G[i] * a[i] * b[i]).sum()
}

/// `exp(A)` by scaling and squaring with a degree-20 Taylor polynomial.
pub fn expm(a: &R4) -> R4 {
    let norm = a.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scaled = a.map(|r| r.map(|x| x / 2f64.powi(s)));
    let mut term = [[0.0; 4]; 4];
    let mut sum = [[0.0; 4]; 4];
    for i in 0..4 {
        term[i][i] = 1.0;
        sum[i][i] = 1.0;
    }
    for k in 1..=20 {
        term = rmul(&term, &scaled).map(|r| r.map(|x| x / k as f64));
        for i in 0..4 {
            for j in 0..4 {
                sum[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..s {
        sum = rmul(&sum, &sum);
    }
    sum
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [0, 1, 2].map(|_| rng.gen_range(-1.0..1.0));
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Uniform in the ball of the given radius.
pub fn ball<R: Rng>(rng: &mut R, radius: f64) -> [f64; 3] {
    let r = radius * rng.gen::<f64>().cbrt();
    unit(rng).map(|x| x * r)
}

pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

pub fn spread(v: &[f64]) -> f64 {
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// `⟨φ|A|φ⟩`.
pub fn expect(a: &M4, phi: &[C; 4]) -> C {
    let av = apply(a, phi);
    phi.iter().zip(av.iter()).map(|(p, q)| p.conj() * q).sum()
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    cov / var
}
