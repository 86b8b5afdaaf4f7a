//! Superpositions of fundamental-solution poles `c_j |x - y_j|^{-(n-2)}`.

/// `r^{-p}` from `r²`, for integer `p >= 0`.
#[inline]
pub fn inv_pow(r2: f64, p: usize) -> f64 {
    let inv = 1.0 / r2;
    let mut v = inv.powi((p / 2) as i32);
    if p % 2 == 1 {
        v *= inv.sqrt();
    }
    v
}

/// A finite set of point sources with coefficients. Harmonic away from the
/// source points; decays like `|x|^{-(n-2)}` at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceSet {
    n: usize,
    /// Flattened source locations, `len = count * n`.
    points: Vec<f64>,
    coeffs: Vec<f64>,
}

impl SourceSet {
    pub fn empty(n: usize) -> Self {
        Self { n, points: Vec::new(), coeffs: Vec::new() }
    }

    pub fn new(n: usize, points: Vec<f64>, coeffs: Vec<f64>) -> Self {
        assert_eq!(points.len(), coeffs.len() * n, "source storage mismatch");
        Self { n, points, coeffs }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn push(&mut self, point: &[f64], coeff: f64) {
        assert_eq!(point.len(), self.n);
        self.points.extend_from_slice(point);
        self.coeffs.push(coeff);
    }

    pub fn point(&self, j: usize) -> &[f64] {
        &self.points[j * self.n..(j + 1) * self.n]
    }

    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Sum of coefficients: the monopole moment governing the far field.
    pub fn monopole(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// Sum of `|c_j|`, used in decay bounds.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// `Σ_j c_j |x - y_j|^{-(n-2)}`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let p = self.n - 2;
        let mut acc = 0.0;
        for j in 0..self.count() {
            let y = self.point(j);
            let mut r2 = 0.0;
            for k in 0..self.n {
                let d = x[k] - y[k];
                r2 += d * d;
            }
            acc += self.coeffs[j] * inv_pow(r2, p);
        }
        acc
    }

    /// Gradient of [`eval`](Self::eval) accumulated into `out`.
    pub fn add_gradient(&self, x: &[f64], out: &mut [f64]) {
        let nf = (self.n - 2) as f64;
        for j in 0..self.count() {
            let y = self.point(j);
            let mut r2 = 0.0;
            for k in 0..self.n {
                let d = x[k] - y[k];
                r2 += d * d;
            }
            // ∇ |x-y|^{-(n-2)} = -(n-2) |x-y|^{-n} (x-y)
            let f = -nf * self.coeffs[j] * inv_pow(r2, self.n);
            for k in 0..self.n {
                out[k] += f * (x[k] - y[k]);
            }
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        self.add_gradient(x, &mut g);
        g
    }

    /// Directional derivative `∇(eval)·dir`.
    pub fn directional_derivative(&self, x: &[f64], dir: &[f64]) -> f64 {
        self.gradient(x).iter().zip(dir).map(|(g, d)| g * d).sum()
    }

    /// Largest distance of a source from `point`.
    pub fn max_distance_from(&self, point: &[f64]) -> f64 {
        (0..self.count())
            .map(|j| {
                self.point(j)
                    .iter()
                    .zip(point)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Concatenate two source sets.
    pub fn extend(&mut self, other: &SourceSet) {
        assert_eq!(self.n, other.n);
        self.points.extend_from_slice(&other.points);
        self.coeffs.extend_from_slice(&other.coeffs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_pole_values() {
        let mut s = SourceSet::empty(3);
        s.push(&[0.0, 0.0, 0.0], 2.0);
        assert_relative_eq!(s.eval(&[2.0, 0.0, 0.0]), 1.0, max_relative = 1e-15);
        let g = s.gradient(&[2.0, 0.0, 0.0]);
        assert_relative_eq!(g[0], -0.5, max_relative = 1e-15);
    }

    #[test]
    fn laplacian_vanishes_off_sources() {
        // Five-point-style finite-difference Laplacian at a generic point.
        for n in [3usize, 4, 6] {
            let mut s = SourceSet::empty(n);
            let mut p1 = vec![0.0; n];
            p1[0] = 0.3;
            s.push(&p1, 1.5);
            let mut p2 = vec![0.0; n];
            p2[1] = -0.2;
            s.push(&p2, -0.7);
            let x: Vec<f64> = (0..n).map(|k| 1.0 + 0.1 * k as f64).collect();
            let h = 1e-4;
            let mut lap = 0.0;
            for k in 0..n {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[k] += h;
                xm[k] -= h;
                lap += s.eval(&xp) - 2.0 * s.eval(&x) + s.eval(&xm);
            }
            lap /= h * h;
            assert!(lap.abs() < 1e-5, "n={n}: fd laplacian {lap}");
        }
    }

    #[test]
    fn inv_pow_matches_powf() {
        for p in 1..8 {
            let r2: f64 = 2.37;
            assert_relative_eq!(
                inv_pow(r2, p),
                r2.sqrt().powi(-(p as i32)),
                max_relative = 1e-14
            );
        }
    }
}
