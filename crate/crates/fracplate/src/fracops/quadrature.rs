use faer::{Mat, Side};
use statrs::function::gamma::ln_gamma;

use crate::error::{arg, Error, Result};

/// Abscissae and weights on a reference interval.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine image of a rule on `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> QuadratureRule {
        let h = 0.5 * (b - a);
        let m = 0.5 * (a + b);
        QuadratureRule {
            points: self.points.iter().map(|&x| m + h * x).collect(),
            weights: self.weights.iter().map(|&w| h * w).collect(),
        }
    }
}

/// Gauss–Legendre rule on `[-1, 1]`, exact through degree `2n − 1`.
pub fn gauss_legendre_rule(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return arg("Gauss-Legendre rule needs at least one point");
    }
    let mut points = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        points[i] = -x;
        points[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        points[n / 2] = 0.0;
    }
    Ok(QuadratureRule { points, weights })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Jacobi rule on `[-1, 1]` for the weight `(1−x)^a (1+x)^b`, via Golub–Welsch.
pub fn gauss_jacobi_rule(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return arg("Gauss-Jacobi rule needs at least one point");
    }
    if !(a > -1.0 && b > -1.0) {
        return arg(format!("Jacobi exponents ({a}, {b}) must exceed -1"));
    }
    let ab = a + b;
    let mut t = Mat::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (b - a) / (ab + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        t[(k, k)] = diag;
        if k + 1 < n {
            let j = kf + 1.0;
            let s = 2.0 * j + ab;
            let beta = 4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
            let off = beta.sqrt();
            t[(k, k + 1)] = off;
            t[(k + 1, k)] = off;
        }
    }
    let mu0 = ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0)
        - ln_gamma(ab + 2.0))
        .exp();
    let evd = t
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let s = evd.S().column_vector();
    let u = evd.U();
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n {
        points.push(s[k]);
        weights.push(mu0 * u[(0, k)] * u[(0, k)]);
    }
    Ok(QuadratureRule { points, weights })
}

/// Rule on `[0, 1]` for the weight `t^{−α}`; exact for polynomials through degree `2n − 1`.
pub fn singular_rule(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Unsupported(format!("singular rule for order {alpha}")));
    }
    let gj = gauss_jacobi_rule(n, 0.0, -alpha)?;
    let scale = 2f64.powf(alpha - 1.0);
    Ok(QuadratureRule {
        points: gj.points.iter().map(|&x| 0.5 * (1.0 + x)).collect(),
        weights: gj.weights.iter().map(|&w| scale * w).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularEnd {
    Lower,
    Upper,
}

/// Moments `∫_a^b |s − s₀|^{−α} s^k ds` for `k = 0..=poly_degree`, with `s₀` the chosen end.
pub fn singular_moment_integrate(
    poly_degree: usize,
    alpha: f64,
    interval: (f64, f64),
    singular_end: SingularEnd,
) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Unsupported(format!("singular moments for order {alpha}")));
    }
    let (a, b) = interval;
    if !(a < b) {
        return arg(format!("empty interval ({a}, {b})"));
    }
    let h = b - a;
    let (s0, sign) = match singular_end {
        SingularEnd::Lower => (a, 1.0),
        SingularEnd::Upper => (b, -1.0),
    };
    // s = s0 + sign·t, t ∈ [0, h]
    let tm: Vec<f64> = (0..=poly_degree)
        .map(|m| h.powf(m as f64 + 1.0 - alpha) / (m as f64 + 1.0 - alpha))
        .collect();
    let mut out = Vec::with_capacity(poly_degree + 1);
    for k in 0..=poly_degree {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for m in 0..=k {
            acc += binom * s0.powi((k - m) as i32) * sign_pow(sign, m) * tm[m];
            binom = binom * (k - m) as f64 / (m + 1) as f64;
        }
        out.push(acc);
    }
    Ok(out)
}

fn sign_pow(sign: f64, m: usize) -> f64 {
    if sign < 0.0 && m % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// `(c+1)^p − c^p` without cancellation for large `c`.
fn pow_step(c: f64, p: f64) -> f64 {
    if c == 0.0 {
        1.0
    } else {
        c.powf(p) * (p * (1.0 / c).ln_1p()).exp_m1()
    }
}

/// Product-integration weights: `∫₀¹ (c+τ)^{−α} p(τ) dτ = Σ w_j p(τ_j)` for every
/// polynomial `p` of degree below `nodes.len()`. Here `c ≥ 0` is the gap between the
/// kernel singularity and the start of the interval, in units of its length.
pub fn product_weights(nodes: &[f64], c: f64, alpha: f64) -> Vec<f64> {
    let n = nodes.len();
    // J_m = ∫₀¹ (c+τ)^{−α} τ^m dτ, expanded around u = c + τ.
    let mut moments = vec![0.0; n];
    for (m, jm) in moments.iter_mut().enumerate() {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for k in (0..=m).rev() {
            // coefficient C(m,k) (−c)^{m−k}
            let p = k as f64 + 1.0 - alpha;
            let coeff = binom * (-c).powi((m - k) as i32);
            acc += coeff * pow_step(c, p) / p;
            binom = binom * k as f64 / (m - k + 1) as f64;
        }
        *jm = acc;
    }
    // Solve Vᵀ w = J with V_{jm} = τ_j^m.
    let mut a = vec![vec![0.0; n + 1]; n];
    for (m, row) in a.iter_mut().enumerate() {
        for (j, &t) in nodes.iter().enumerate() {
            row[j] = t.powi(m as i32);
        }
        row[n] = moments[m];
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        a.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for k in col..=n {
                        a[r][k] -= f * a[col][k];
                    }
                }
            }
        }
    }
    (0..n).map(|j| a[j][n] / a[j][j]).collect()
}
