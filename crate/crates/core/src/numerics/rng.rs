//! Seeded randomness. Every stochastic ingredient (check-node rotations,
//! sample points for property checks) draws from one ChaCha stream so a run
//! is reproducible from its 64-bit seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG for a run.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random rotation of `R^n` built from composed Givens rotations.
/// Returned row-major as an `n x n` matrix.
pub fn random_rotation(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let angle: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (s, c) = angle.sin_cos();
            for col in 0..n {
                let a = m[i * n + col];
                let b = m[j * n + col];
                m[i * n + col] = c * a - s * b;
                m[j * n + col] = s * a + c * b;
            }
        }
    }
    m
}

/// Apply a row-major `n x n` matrix to a vector.
pub fn apply_matrix(m: &[f64], v: &[f64], out: &mut [f64]) {
    let n = v.len();
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            acc += m[i * n + j] * v[j];
        }
        out[i] = acc;
    }
}

/// Uniform point on the unit sphere `S^{n-1}` (Gaussian normalization).
pub fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n)
            .map(|_| {
                // Box-Muller from two uniforms.
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                (-2.0 * u1.ln()).sqrt() * u2.cos()
            })
            .collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_is_orthogonal() {
        let mut rng = seeded(7);
        for n in 3..=6 {
            let m = random_rotation(&mut rng, n);
            for i in 0..n {
                for j in 0..n {
                    let dot: f64 = (0..n).map(|k| m[i * n + k] * m[j * n + k]).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-12, "n={n} rows {i},{j}");
                }
            }
        }
    }

    #[test]
    fn directions_are_unit() {
        let mut rng = seeded(3);
        for n in 3..=7 {
            let d = random_direction(&mut rng, n);
            let norm: f64 = d.iter().map(|x| x * x).sum::<f64>();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
