use fracplate::fracops::*;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Closed-form two-sided Caputo combination for `x²` with terminals
/// `x − l_a`, `x + l_b`, from `ᶜD (x−a)^k = Γ(k+1)/Γ(k+1−α)(x−a)^{k−α}`.
fn caputo_square(x: f64, p: &FractionalParams) -> f64 {
    let al = p.alpha;
    let (a, b) = (x - p.l_a, x + p.l_b);
    let left = 2.0 / gamma(3.0 - al) * (x - a).powf(2.0 - al) + 2.0 * a / gamma(2.0 - al) * (x - a).powf(1.0 - al);
    let right = 2.0 / gamma(3.0 - al) * (b - x).powf(2.0 - al) - 2.0 * b / gamma(2.0 - al) * (b - x).powf(1.0 - al);
    0.5 * gamma(2.0 - al) * (p.l_a.powf(al - 1.0) * left - p.l_b.powf(al - 1.0) * right)
}

/// Closed-form Riemann–Liouville combination for `c0 + c1·s + c2·s²` on the
/// shifted interval `(x − l_b, x + l_a)`.
fn rl_quadratic(c: [f64; 3], x: f64, p: &FractionalParams) -> f64 {
    let al = p.alpha;
    let (a, b) = (x - p.l_b, x + p.l_a);
    let d = |k: usize, t: f64| gamma(k as f64 + 1.0) / gamma(k as f64 + 1.0 - al) * t.powf(k as f64 - al);
    // expand around each terminal
    let la = [c[0] + c[1] * a + c[2] * a * a, c[1] + 2.0 * c[2] * a, c[2]];
    let rb = [c[0] + c[1] * b + c[2] * b * b, -(c[1] + 2.0 * c[2] * b), c[2]];
    let left: f64 = (0..3).map(|k| la[k] * d(k, x - a)).sum();
    let right: f64 = (0..3).map(|k| rb[k] * d(k, b - x)).sum();
    0.5 * gamma(2.0 - al) * (p.l_b.powf(al - 1.0) * left - p.l_a.powf(al - 1.0) * right)
}

#[test]
fn kernel_hand_value_and_symmetry() {
    let p = FractionalParams::symmetric(0.8, 0.2).unwrap();
    let k = kernel_eval(0.5, 0.4, &p).unwrap();
    assert!(rel(k, 0.1 * 0.2f64.powf(-0.2) * 0.1f64.powf(-0.8)) < 1e-14);
    assert!((k - 0.87055).abs() < 5e-5);
    for d in [0.01, 0.07, 0.19] {
        assert!(rel(kernel_eval(0.5, 0.5 + d, &p).unwrap(), kernel_eval(0.5, 0.5 - d, &p).unwrap()) < 1e-13);
    }
    let near_one = FractionalParams::symmetric(1.0 - 1e-9, 0.2).unwrap();
    assert!(kernel_eval(0.5, 0.45, &near_one).unwrap() < 1e-8);
}

#[test]
fn kernel_domain_errors() {
    let p = FractionalParams::new(0.7, 0.1, 0.3).unwrap();
    assert!(kernel_eval(0.5, 0.5, &p).is_err());
    assert!(kernel_eval(0.5, 0.35, &p).is_err());
    assert!(kernel_eval(0.5, 0.75, &p).is_ok());
    assert!(kernel_eval(0.5, 0.81, &p).is_err());
    assert!(kernel_eval(0.5, 0.6, &FractionalParams::symmetric(1.0, 0.2).unwrap()).is_err());
    assert!(FractionalParams::new(0.0, 0.1, 0.1).is_err());
    assert!(FractionalParams::new(0.5, 0.0, 0.0).is_err());
    assert!(FractionalParams::new(0.5, -0.1, 0.2).is_err());
}

#[test]
fn truncated_params_clip_at_edges() {
    let p = FractionalParams::truncated(0.8, 0.2, 0.05, 0.0, 1.0).unwrap();
    assert!((p.l_a - 0.05).abs() < 1e-15 && p.l_b == 0.2);
    let q = FractionalParams::truncated(0.8, 0.2, 0.5, 0.0, 1.0).unwrap();
    assert_eq!((q.l_a, q.l_b), (0.2, 0.2));
}

#[test]
fn caputo_square_matches_monomial_formula() {
    let p = FractionalParams::symmetric(0.8, 0.5).unwrap();
    let f = PolyField(vec![0.0, 0.0, 1.0]);
    let got = riesz_caputo_derivative(&f, 0.5, &p).unwrap();
    assert!(rel(got, caputo_square(0.5, &p)) < 1e-8, "{got}");
    for (x, la, lb, al) in [(0.3, 0.3, 0.1, 0.6), (0.9, 0.25, 0.1, 0.9), (0.1, 0.0, 0.4, 0.75)] {
        let p = FractionalParams::new(al, la, lb).unwrap();
        let got = riesz_caputo_derivative(&f, x, &p).unwrap();
        let want = if la == 0.0 {
            // a zero-length side contributes half the local derivative
            let half = 0.5 * 2.0 * x;
            let b = x + lb;
            let right = 2.0 / gamma(3.0 - al) * (b - x).powf(2.0 - al) - 2.0 * b / gamma(2.0 - al) * (b - x).powf(1.0 - al);
            half - 0.5 * gamma(2.0 - al) * lb.powf(al - 1.0) * right
        } else {
            caputo_square(x, &p)
        };
        assert!(rel(got, want) < 1e-8, "x={x} got={got} want={want}");
    }
}

#[test]
fn caputo_local_order_is_the_derivative() {
    let f = PolyField(vec![1.0, -2.0, 0.5, 3.0]);
    let p = FractionalParams::symmetric(1.0, 0.3).unwrap();
    assert_eq!(riesz_caputo_derivative(&f, 0.4, &p).unwrap(), f.d1(0.4));
    assert_eq!(riesz_rl_derivative(&f, 0.4, &p).unwrap(), f.d1(0.4));
}

#[test]
fn caputo_tends_to_the_derivative_as_order_tends_to_one() {
    let f = PolyField(vec![0.0, 1.0, -1.0, 2.0]);
    let x = 0.45;
    let mut prev = f64::INFINITY;
    for eps in [1e-1, 1e-2, 1e-3] {
        let p = FractionalParams::new(1.0 - eps, 0.2, 0.3).unwrap();
        let err = (riesz_caputo_derivative(&f, x, &p).unwrap() - f.d1(x)).abs();
        assert!(err < prev * 0.2, "eps={eps} err={err}");
        prev = err;
    }
}

#[test]
fn rl_matches_closed_form_polynomials() {
    for (c, x, la, lb, al) in [
        ([1.0, 0.0, 0.0], 0.5, 0.2, 0.2, 0.7),
        ([1.0, 0.0, 0.0], 0.5, 0.1, 0.3, 0.7),
        ([0.3, -1.0, 2.0], 0.5, 0.25, 0.25, 0.8),
        ([0.3, -1.0, 2.0], 0.4, 0.1, 0.35, 0.6),
    ] {
        let p = FractionalParams::new(al, la, lb).unwrap();
        let got = riesz_rl_derivative(&PolyField(c.to_vec()), x, &p).unwrap();
        let want = rl_quadratic(c, x, &p);
        assert!((got - want).abs() < 1e-6 * want.abs().max(1.0), "{c:?} got={got} want={want}");
    }
    // a constant is annihilated only by a symmetric horizon
    let sym = FractionalParams::symmetric(0.7, 0.2).unwrap();
    assert!(riesz_rl_derivative(&PolyField(vec![1.0]), 0.5, &sym).unwrap().abs() < 1e-8);
}

#[test]
fn singular_moments_against_adaptive_quadrature() {
    let (a, b, al) = (0.2, 0.3, 0.8);
    let m = singular_moment_integrate(3, al, (a, b), SingularEnd::Lower).unwrap();
    // t = u^q with q = 1/(1−α) turns ∫₀^h t^{−α} g(t) dt into the smooth ∫ q g(u^q) du
    let q = 1.0 / (1.0 - al);
    let smooth = |g: &dyn Fn(f64) -> f64| {
        integrate_adaptive(|u| q * g(u.powf(q)), 0.0, (b - a).powf(1.0 / q), 1e-14).unwrap()
    };
    for (k, mk) in m.iter().enumerate() {
        let want = smooth(&|t| (a + t).powi(k as i32));
        assert!(rel(*mk, want) < 1e-10, "k={k}");
    }
    let m = singular_moment_integrate(3, al, (a, b), SingularEnd::Upper).unwrap();
    for (k, mk) in m.iter().enumerate() {
        let want = smooth(&|t| (b - t).powi(k as i32));
        assert!(rel(*mk, want) < 1e-10, "k={k}");
    }
    let m = singular_moment_integrate(1, 0.5, (0.0, 1.0), SingularEnd::Lower).unwrap();
    assert!((m[0] - 2.0).abs() < 1e-15 && (m[1] - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn gauss_jacobi_weights_sum_to_moment() {
    for (a, b) in [(0.0, -0.5), (0.3, 0.2), (-0.8, 0.0)] {
        let r = gauss_jacobi_rule(6, a, b).unwrap();
        let sum: f64 = r.weights.iter().sum();
        let want = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
        assert!(rel(sum, want) < 1e-12, "a={a} b={b}");
    }
}

fn tuple() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (0.05f64..0.99, 0.0f64..0.5, 0.0f64..0.5, 0.0f64..1.0)
        .prop_filter("nonempty horizon", |(_, la, lb, _)| la + lb > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn linear_reproduction_and_constant_annihilation((al, la, lb, x) in tuple(), s in -3.0f64..3.0, c in -2.0f64..2.0) {
        let p = FractionalParams::new(al, la, lb).unwrap();
        let lin = PolyField(vec![c, s]);
        prop_assert!((riesz_caputo_derivative(&lin, x, &p).unwrap() - s).abs() <= 1e-8 * s.abs().max(1.0));
        prop_assert!(riesz_caputo_derivative(&PolyField(vec![c]), x, &p).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn kernel_is_positive((al, la, lb, x) in tuple(), t in 0.01f64..0.99, left in any::<bool>()) {
        let p = FractionalParams::new(al, la, lb).unwrap();
        let l = if left { la } else { lb };
        prop_assume!(l > 1e-6);
        let xp = if left { x - t * l } else { x + t * l };
        prop_assert!(kernel_eval(x, xp, &p).unwrap() > 0.0);
    }

    #[test]
    fn perturbation_outside_horizon_is_invisible(al in 0.5f64..0.95, la in 0.05f64..0.3, lb in 0.05f64..0.3, bump in -5.0f64..5.0) {
        let x = 0.5;
        let p = FractionalParams::new(al, la, lb).unwrap();
        let base = PolyField(vec![0.1, 0.4, -0.7]);
        let (lo, hi) = (x - la, x + lb);
        let bumped = FnField::new(
            |s: f64| {
                let b = if s < lo { bump * (lo - s).powi(2) } else if s > hi { bump * (s - hi).powi(2) } else { 0.0 };
                0.1 + 0.4 * s - 0.7 * s * s + b
            },
            |s: f64| {
                let b = if s < lo { -2.0 * bump * (lo - s) } else if s > hi { 2.0 * bump * (s - hi) } else { 0.0 };
                0.4 - 1.4 * s + b
            },
        );
        let a = riesz_caputo_derivative(&base, x, &p).unwrap();
        let b = riesz_caputo_derivative(&bumped, x, &p).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }
}
