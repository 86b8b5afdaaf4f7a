//! Gauss-Legendre nodes and weights, computed by Newton iteration on the
//! Legendre recurrence.

/// Nodes and weights of the `m`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    // Symmetric rule: solve for the first half, mirror the rest.
    let half = m.div_ceil(2);
    for i in 0..half {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(m, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[m - 1 - i] = x;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    (nodes, weights)
}

/// `m`-point Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(m: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(m);
    let mid = 0.5 * (a + b);
    let hal = 0.5 * (b - a);
    (
        x.iter().map(|t| mid + hal * t).collect(),
        w.iter().map(|v| v * hal).collect(),
    )
}

fn legendre_and_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Gegenbauer rule: nodes and weights for `∫_{-1}^1 f(t) (1-t²)^λ dt`,
/// computed by Golub-Welsch from the symmetric Jacobi matrix. `λ = 0`
/// reduces to Gauss-Legendre. Exact for polynomials of degree `2m-1`.
///
/// With `t = cos θ` and `λ = (k-1)/2` this integrates
/// `∫_0^π f(cos θ) sin^k θ dθ` exactly for polynomial `f`, which is the
/// form the sphere-product quadrature needs.
pub fn gauss_gegenbauer(m: usize, lambda: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    // Monic recurrence coefficients: a_k = 0 (even weight),
    // b_k² = k (k + 2λ) / ((2k + 2λ + 1)(2k + 2λ - 1)).
    let mut jac = nalgebra::DMatrix::<f64>::zeros(m, m);
    for k in 1..m {
        let kf = k as f64;
        let b2 = kf * (kf + 2.0 * lambda)
            / ((2.0 * kf + 2.0 * lambda + 1.0) * (2.0 * kf + 2.0 * lambda - 1.0));
        let b = b2.sqrt();
        jac[(k, k - 1)] = b;
        jac[(k - 1, k)] = b;
    }
    // μ0 = ∫ (1-t²)^λ dt = sqrt(π) Γ(λ+1) / Γ(λ+3/2).
    let mu0 = std::f64::consts::PI.sqrt() * gamma(lambda + 1.0) / gamma(lambda + 1.5);
    let eig = nalgebra::SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    (pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
}

/// Gamma function for the positive half-integer and integer arguments the
/// Gegenbauer normalization needs.
fn gamma(x: f64) -> f64 {
    let two_x = 2.0 * x;
    let k = two_x.round() as i64;
    assert!(
        k >= 1 && (two_x - k as f64).abs() < 1e-9,
        "gamma supports positive half-integers, got {x}"
    );
    let k = k as usize;
    if k % 2 == 0 {
        (1..k / 2).map(|i| i as f64).product()
    } else {
        let m = (k - 1) / 2;
        let mut v = std::f64::consts::PI.sqrt();
        for i in 0..m {
            v *= i as f64 + 0.5;
        }
        v
    }
}

/// Clenshaw-Curtis nodes and weights on `[0, 1]`, `m >= 2` points including
/// both endpoints. Exact for polynomials of degree `m-1`.
pub fn clenshaw_curtis_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 2);
    let nn = m - 1;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = vec![0.0; m];
    for k in 0..m {
        let theta = std::f64::consts::PI * k as f64 / nn as f64;
        // Map cos θ ∈ [-1,1] (descending) to [0,1] ascending.
        nodes.push(0.5 * (1.0 - theta.cos()));
    }
    for k in 0..m {
        let theta = std::f64::consts::PI * k as f64 / nn as f64;
        let mut w = 1.0;
        let jmax = nn / 2;
        for j in 1..=jmax {
            let b = if 2 * j == nn { 1.0 } else { 2.0 };
            w -= b * (2.0 * j as f64 * theta).cos() / (4.0 * j as f64 * j as f64 - 1.0);
        }
        w *= 2.0 / nn as f64;
        if k == 0 || k == nn {
            w *= 0.5;
        }
        // Scale from [-1,1] to [0,1].
        weights[k] = 0.5 * w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn five_point_rule_matches_reference_nodes() {
        let (x, w) = gauss_legendre(5);
        assert_relative_eq!(x[4], 0.906179845938664, epsilon = 1e-14);
        assert_relative_eq!(w[4], 0.236926885056189, epsilon = 1e-14);
        assert_relative_eq!(x[2], 0.0, epsilon = 1e-15);
        assert_relative_eq!(w[2], 128.0 / 225.0, epsilon = 1e-14);
    }

    #[test]
    fn integrates_monomials_exactly() {
        for m in 1..=20 {
            let (x, w) = gauss_legendre(m);
            for deg in 0..(2 * m) {
                let integral: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
                assert!(
                    (integral - exact).abs() < 1e-13,
                    "m={m} deg={deg}: got {integral}, want {exact}"
                );
            }
        }
    }

    #[test]
    fn mapped_rule_integrates_on_interval() {
        let (x, w) = gauss_legendre_on(8, 1.0, 3.0);
        let integral: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        assert_relative_eq!(integral, (27.0 - 1.0) / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn gegenbauer_matches_legendre_at_lambda_zero() {
        let (xg, wg) = gauss_gegenbauer(7, 0.0);
        let (xl, wl) = gauss_legendre(7);
        for i in 0..7 {
            assert_relative_eq!(xg[i], xl[i], epsilon = 1e-12);
            assert_relative_eq!(wg[i], wl[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn gegenbauer_integrates_sine_powers_exactly() {
        // ∫_0^π cos^{2j}θ sin^k θ dθ via t = cos θ against dense quadrature.
        for k in 1..=5usize {
            let lambda = (k as f64 - 1.0) / 2.0;
            let (t, w) = gauss_gegenbauer(6, lambda);
            for j in 0..=4 {
                let got: f64 = t.iter().zip(&w).map(|(ti, wi)| wi * ti.powi(2 * j)).sum();
                // Dense reference on θ.
                let m = 4000;
                let mut reference = 0.0;
                for i in 0..m {
                    let theta = std::f64::consts::PI * (i as f64 + 0.5) / m as f64;
                    reference += std::f64::consts::PI / m as f64
                        * theta.cos().powi(2 * j)
                        * theta.sin().powi(k as i32);
                }
                assert_relative_eq!(got, reference, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn chebyshev_second_kind_nodes() {
        // λ = 1/2 gives Chebyshev-U nodes cos(iπ/(m+1)).
        let m = 9;
        let (t, w) = gauss_gegenbauer(m, 0.5);
        for (i, ti) in t.iter().enumerate() {
            let expect = (std::f64::consts::PI * (m - i) as f64 / (m as f64 + 1.0)).cos();
            assert_relative_eq!(*ti, expect, epsilon = 1e-12);
        }
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, std::f64::consts::FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn clenshaw_curtis_integrates_smooth_functions() {
        let (t, w) = clenshaw_curtis_unit(33);
        let integral: f64 = t.iter().zip(&w).map(|(ti, wi)| wi * (3.0 * ti).exp()).sum();
        assert_relative_eq!(integral, (3.0f64.exp() - 1.0) / 3.0, max_relative = 1e-12);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 1.0, max_relative = 1e-14);
    }
}
