//! Adaptive reference evaluations of the fractional operators.
//!
//! These are oracles for tests and for manufactured-solution forcing; the
//! assembly path never calls them.

use std::sync::OnceLock;

use super::quadrature::{gauss_legendre_rule, singular_rule, QuadratureRule};
use super::FractionalParams;
use crate::error::{Error, Result};

/// Default relative tolerance of the adaptive oracles.
pub const ORACLE_TOL: f64 = 1e-8;

const MAX_DEPTH: usize = 60;

/// A sampled 1D field with its first derivative.
pub trait ScalarField1D: Sync {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    /// Coordinates where the field or its derivative may have kinks.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Polynomial `Σ c_k x^k`.
#[derive(Clone, Debug)]
pub struct PolyField(pub Vec<f64>);

impl ScalarField1D for PolyField {
    fn value(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
    fn d1(&self, x: f64) -> f64 {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * x + k as f64 * c)
    }
}

/// Field from a pair of closures.
pub struct FnField<F, G> {
    pub value: F,
    pub d1: G,
    pub breaks: Vec<f64>,
}

impl<F, G> FnField<F, G>
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    pub fn new(value: F, d1: G) -> Self {
        Self { value, d1, breaks: Vec::new() }
    }
}

impl<F, G> ScalarField1D for FnField<F, G>
where
    F: Fn(f64) -> f64 + Sync,
    G: Fn(f64) -> f64 + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
}

fn gl10() -> &'static QuadratureRule {
    static RULE: OnceLock<QuadratureRule> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(10).expect("fixed rule"))
}

fn gl_on(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let r = gl10();
    let h = 0.5 * (b - a);
    let m = 0.5 * (a + b);
    h * r.points.iter().zip(&r.weights).map(|(&x, &w)| w * f(m + h * x)).sum::<f64>()
}

/// Adaptive Gauss–Legendre on `[a, b]` to absolute tolerance `tol`.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut total = 0.0;
    let mut stack = vec![(a, b, gl_on(&f, a, b), 0usize)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = gl_on(&f, lo, mid);
        let right = gl_on(&f, mid, hi);
        let refined = left + right;
        if !refined.is_finite() {
            return Err(Error::NonFinite(format!("integrand on [{lo}, {hi}]")));
        }
        let scaled_tol = tol * (hi - lo) / (b - a).abs();
        if (refined - whole).abs() <= scaled_tol.max(1e-15 * refined.abs()) {
            total += refined;
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature(format!(
                "no convergence on [{lo}, {hi}], estimate {refined:e}"
            )));
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    Ok(total)
}

struct SingularRules {
    coarse: QuadratureRule,
    fine: QuadratureRule,
}

fn singular_pair(alpha: f64) -> Result<SingularRules> {
    Ok(SingularRules { coarse: singular_rule(12, alpha)?, fine: singular_rule(24, alpha)? })
}

fn singular_panel(
    g: &impl Fn(f64) -> f64,
    rules: &SingularRules,
    alpha: f64,
    p: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let scale = p.powf(1.0 - alpha);
    let coarse = scale * rules.coarse.integrate(|u| g(p * u));
    let fine = scale * rules.fine.integrate(|u| g(p * u));
    if !fine.is_finite() {
        return Err(Error::NonFinite(format!("integrand near the singular end, panel {p:e}")));
    }
    if (fine - coarse).abs() <= tol.max(1e-15 * fine.abs()) {
        return Ok(fine);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!("singular panel of width {p:e}")));
    }
    let inner = singular_panel(g, rules, alpha, 0.5 * p, 0.5 * tol, depth + 1)?;
    let outer = integrate_adaptive(|t| t.powf(-alpha) * g(t), 0.5 * p, p, 0.5 * tol)?;
    Ok(inner + outer)
}

/// `∫₀^h t^{−α} g(t) dt` for a `g` smooth between the given breakpoints, to relative
/// tolerance `rel_tol`.
pub fn integrate_weakly_singular(
    g: impl Fn(f64) -> f64,
    h: f64,
    alpha: f64,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    if h == 0.0 {
        return Ok(0.0);
    }
    if alpha == 0.0 {
        return integrate_piecewise(&g, 0.0, h, breaks, rel_tol);
    }
    let rules = singular_pair(alpha)?;
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&t| t > 0.0 && t < h).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.push(h);
    let magnitude = h.powf(1.0 - alpha) * rules.fine.integrate(|u| g(h * u).abs());
    let tol = rel_tol * magnitude.max(f64::MIN_POSITIVE);
    let mut total = singular_panel(&g, &rules, alpha, cuts[0], tol, 0)?;
    for w in cuts.windows(2) {
        total += integrate_adaptive(|t| t.powf(-alpha) * g(t), w[0], w[1], tol)?;
    }
    Ok(total)
}

fn integrate_piecewise(
    g: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    pts.sort_by(f64::total_cmp);
    pts.insert(0, a);
    pts.push(b);
    let magnitude = gl_on(&|t| g(t).abs(), a, b);
    let tol = rel_tol * magnitude.max(f64::MIN_POSITIVE);
    pts.windows(2).map(|w| integrate_adaptive(g, w[0], w[1], tol)).sum()
}

fn check(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what.into()))
    }
}

/// Riesz–Caputo derivative `∫ K(x,x') f'(x') dx'` over `(x − l_a, x + l_b)`.
///
/// A one-sided horizon of zero length contributes its limit `f'(x)/2`.
pub fn riesz_caputo_derivative(
    field: &dyn ScalarField1D,
    x: f64,
    params: &FractionalParams,
) -> Result<f64> {
    if params.is_local() {
        return check(field.d1(x), "field derivative");
    }
    let alpha = params.alpha;
    let breaks = field.breakpoints();
    let side = |l: f64, dir: f64| -> Result<f64> {
        if l == 0.0 {
            return Ok(field.d1(x) / (1.0 - alpha));
        }
        let tb: Vec<f64> = breaks.iter().map(|&b| dir * (b - x)).collect();
        let i = integrate_weakly_singular(|t| field.d1(x + dir * t), l, alpha, &tb, ORACLE_TOL)?;
        Ok(l.powf(alpha - 1.0) * i)
    };
    let left = side(params.l_a, -1.0)?;
    let right = side(params.l_b, 1.0)?;
    check(0.5 * (1.0 - alpha) * (left + right), "Riesz-Caputo derivative")
}

/// Riesz Riemann–Liouville derivative on the shifted interval `(x − l_b, x + l_a)`:
/// `½Γ(2−α)[l_b^{α−1}·RL-left − l_a^{α−1}·RL-right]` with fixed terminals.
pub fn riesz_rl_derivative(
    field: &dyn ScalarField1D,
    x: f64,
    params: &FractionalParams,
) -> Result<f64> {
    if params.is_local() {
        return check(field.d1(x), "field derivative");
    }
    let alpha = params.alpha;
    let (la, lb) = (params.l_a, params.l_b);
    if la == 0.0 || lb == 0.0 {
        return Err(Error::Domain("Riemann-Liouville form needs two-sided horizon".into()));
    }
    let breaks = field.breakpoints();
    // d/dx ∫_{x−l}^{x} ψ(s)(x−s)^{−α} ds = ψ(x−l) l^{−α} + ∫₀^l ψ'(x−t) t^{−α} dt
    let tb_left: Vec<f64> = breaks.iter().map(|&b| x - b).collect();
    let left = field.value(x - lb) * lb.powf(-alpha)
        + integrate_weakly_singular(|t| field.d1(x - t), lb, alpha, &tb_left, ORACLE_TOL)?;
    // −d/dx ∫_{x}^{x+l} ψ(s)(s−x)^{−α} ds = ψ(x+l) l^{−α} − ∫₀^l ψ'(x+t) t^{−α} dt
    let tb_right: Vec<f64> = breaks.iter().map(|&b| b - x).collect();
    let right = field.value(x + la) * la.powf(-alpha)
        - integrate_weakly_singular(|t| field.d1(x + t), la, alpha, &tb_right, ORACLE_TOL)?;
    let c = 0.5 * (1.0 - alpha);
    check(
        c * (lb.powf(alpha - 1.0) * left - la.powf(alpha - 1.0) * right),
        "Riesz Riemann-Liouville derivative",
    )
}

/// Derivative of the transposed convolution `G(s) = ∫ K(x,s) f(x) dx`, where every
/// `x` carries its own horizon `min(l_f, ·)` clipped to `[lo, hi]`.
///
/// This is the operator that integration by parts pairs with the truncated
/// Riesz–Caputo derivative: `∫ f·D^α v = −∫ G'·v` for `v` vanishing at both ends.
pub fn riesz_adjoint_derivative(
    field: &dyn ScalarField1D,
    s: f64,
    l_f: f64,
    alpha: f64,
    domain: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = domain;
    if !(s > lo && s < hi) {
        return Err(Error::Domain(format!("{s} not inside ({lo}, {hi})")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) || !(l_f > 0.0) {
        return Err(Error::Argument(format!("order {alpha}, horizon {l_f}")));
    }
    if alpha == 1.0 {
        return check(field.d1(s), "field derivative");
    }
    let la = |x: f64| l_f.min(x - lo);
    let lb = |x: f64| l_f.min(hi - x);
    let fb = field.breakpoints();
    let a1 = alpha - 1.0;

    // x = s + t, weights carry l_a(x)
    let tr = l_f.min(hi - s);
    let mut br: Vec<f64> = fb.iter().map(|&b| b - s).collect();
    br.push(lo + l_f - s);
    let right = integrate_weakly_singular(
        |t| {
            let x = s + t;
            let l = la(x);
            let dl = if x - lo < l_f { 1.0 } else { 0.0 };
            a1 * l.powf(a1 - 1.0) * dl * field.value(x) + l.powf(a1) * field.d1(x)
        },
        tr,
        alpha,
        &br,
        ORACLE_TOL,
    )?;
    let right_end = if hi - s < l_f {
        -la(s + tr).powf(a1) * tr.powf(-alpha) * field.value(s + tr)
    } else {
        0.0
    };

    // x = s − t, weights carry l_b(x)
    let tl = l_f.min(s - lo);
    let mut bl: Vec<f64> = fb.iter().map(|&b| s - b).collect();
    bl.push(s - (hi - l_f));
    let left = integrate_weakly_singular(
        |t| {
            let x = s - t;
            let l = lb(x);
            let dl = if hi - x < l_f { -1.0 } else { 0.0 };
            a1 * l.powf(a1 - 1.0) * dl * field.value(x) + l.powf(a1) * field.d1(x)
        },
        tl,
        alpha,
        &bl,
        ORACLE_TOL,
    )?;
    let left_end = if s - lo < l_f {
        lb(s - tl).powf(a1) * tl.powf(-alpha) * field.value(s - tl)
    } else {
        0.0
    };
    check(
        0.5 * (1.0 - alpha) * (right + right_end + left + left_end),
        "adjoint derivative",
    )
}
