use std::f64::consts::PI;
use std::sync::Arc;

use fracplate::assembly::*;
use fracplate::mesh::{Component, Theory};
use fracplate::model::{isotropic, PlateModel};
use fracplate::solve::*;
use proptest::prelude::*;

fn model(theory: Theory, h: f64, rho: f64) -> PlateModel {
    PlateModel::new(theory, 1.0, 1.0, h, isotropic(2.0e5, 0.3, rho, 5.0 / 6.0).unwrap()).unwrap()
}

fn system(pm: &PlateModel, n: usize, bc: BoundaryCondition, opts: &AssemblyOptions, load: &LoadSpec) -> AssembledSystem {
    assemble_system(pm, n, n, &bc.constraints(pm.theory), opts, load).unwrap()
}

fn transverse(alpha: f64, l_f: f64) -> AssemblyOptions {
    let mut o = AssemblyOptions::new(alpha, l_f);
    o.fields = FieldSet::Transverse;
    o
}

fn centre(sys: &AssembledSystem, sol: &StaticSolution) -> f64 {
    evaluate_field(&sys.mesh, &sys.dofs, &sol.u_full, Component::W0, (0.5 * sys.mesh.l, 0.5 * sys.mesh.b)).unwrap()
}

/// Double sine series for a simply supported square under uniform pressure;
/// `shear` adds the first-order shear term `D k²/(K_s G h)`.
fn navier_centre(pm: &PlateModel, q: f64, shear: bool) -> f64 {
    let m = &pm.material;
    let d = m.e1 * pm.h.powi(3) / (12.0 * (1.0 - m.nu12 * m.nu12));
    let mut w = 0.0;
    for i in (1..400).step_by(2) {
        for j in (1..400).step_by(2) {
            let (a, b) = (i as f64 * PI / pm.l, j as f64 * PI / pm.b);
            let k2 = a * a + b * b;
            let qmn = 16.0 * q / (PI * PI * i as f64 * j as f64);
            let corr = if shear { 1.0 + d * k2 / (m.ks * m.g13 * pm.h) } else { 1.0 };
            let s = ((i / 2) as i32 + (j / 2) as i32) % 2;
            w += if s == 0 { 1.0 } else { -1.0 } * qmn * corr / (d * k2 * k2);
        }
    }
    w
}

#[test]
fn local_thin_plate_matches_series_solution() {
    let pm = model(Theory::Kirchhoff, 0.01, 1.0);
    let sys = system(&pm, 12, BoundaryCondition::SimplySupported, &AssemblyOptions::local(), &LoadSpec::Uniform(1.0));
    let sol = static_solve(&sys, None).unwrap();
    let exact = navier_centre(&pm, 1.0, false);
    assert!((centre(&sys, &sol) / exact - 1.0).abs() < 2e-3, "{} vs {exact}", centre(&sys, &sol));
    assert!(sol.residual < 1e-10);
}

#[test]
fn local_thick_plate_matches_series_solution() {
    let pm = model(Theory::Mindlin, 0.1, 1.0);
    let sys = system(&pm, 48, BoundaryCondition::SimplySupported, &transverse(1.0, 0.0), &LoadSpec::Uniform(1.0));
    let sol = static_solve(&sys, None).unwrap();
    let exact = navier_centre(&pm, 1.0, true);
    assert!((centre(&sys, &sol) / exact - 1.0).abs() < 1e-2, "{} vs {exact}", centre(&sys, &sol));
    assert!(sol.residual < 1e-10);
}

#[test]
fn zero_load_gives_zero_deflection() {
    let pm = model(Theory::Mindlin, 0.1, 1.0);
    let sys = system(&pm, 6, BoundaryCondition::Clamped, &transverse(0.8, 0.3), &LoadSpec::None);
    let sol = static_solve(&sys, None).unwrap();
    assert!(sol.u.iter().all(|&v| v == 0.0));
}

#[test]
fn factor_reuse_and_mismatch() {
    let pm = model(Theory::Kirchhoff, 0.01, 1.0);
    let sys = system(&pm, 6, BoundaryCondition::Clamped, &transverse(0.9, 0.2), &LoadSpec::Uniform(1.0));
    let f = SpdFactor::new(&sys.k).unwrap();
    let a = static_solve(&sys, Some(&f)).unwrap();
    let b = static_solve(&sys, None).unwrap();
    assert_eq!(a.u, b.u);
    let other = system(&pm, 4, BoundaryCondition::Clamped, &transverse(0.9, 0.2), &LoadSpec::Uniform(1.0));
    assert!(static_solve(&other, Some(&f)).is_err());
    let unsupported = assemble_system(&pm, 4, 4, &BoundaryConditionSet::free(), &transverse(1.0, 0.0), &LoadSpec::Uniform(1.0)).unwrap();
    assert!(static_solve(&unsupported, None).is_err());
}

#[test]
fn thin_plate_frequencies_match_closed_form() {
    // ω_mn (B/π)² √(ρh/D) = m² + n² on a simply supported square
    let pm = model(Theory::Kirchhoff, 0.01, 1.0);
    let sys = system(&pm, 10, BoundaryCondition::SimplySupported, &transverse(1.0, 0.0), &LoadSpec::None);
    let sol = modal_solve(&sys.k, &sys.m, &ModalOptions { n_modes: 6, ..Default::default() }, None).unwrap();
    let params: Vec<f64> = sol.omegas().iter().map(|&w| frequency_parameter(&pm, w)).collect();
    let distinct = distinct_values(&params, 1e-6);
    for (got, want) in distinct.iter().zip([2.0, 5.0, 8.0, 10.0]) {
        assert!((got / want - 1.0).abs() < 5e-3, "{got} vs {want}");
    }
    assert!(distinct.len() < params.len());
}

#[test]
fn lanczos_agrees_with_dense() {
    let pm = model(Theory::Mindlin, 0.1, 1.0);
    let sys = system(&pm, 8, BoundaryCondition::Clamped, &transverse(0.8, 0.3), &LoadSpec::None);
    let dense = modal_solve(&sys.k, &sys.m, &ModalOptions { n_modes: 8, ..Default::default() }, None).unwrap();
    let opts = ModalOptions { n_modes: 8, dense_threshold: 0, ..Default::default() };
    let lanczos = modal_solve(&sys.k, &sys.m, &opts, None).unwrap();
    assert_eq!(dense.method, ModalMethod::Dense);
    assert_eq!(lanczos.method, ModalMethod::BlockLanczos);
    for (a, b) in dense.eigenvalues.iter().zip(&lanczos.eigenvalues) {
        assert!((a / b - 1.0).abs() < 1e-9);
    }
    for sol in [&dense, &lanczos] {
        assert!(sol.residuals.iter().all(|&r| r < 1e-8));
        for i in 0..8 {
            let (xi, ki) = (sol.mode(i), sys.k.bilinear(sol.mode(i), sol.mode(i)));
            assert!((ki - sol.eigenvalues[i]).abs() < 1e-9 * sol.eigenvalues[i]);
            for j in 0..8 {
                let mij = sys.m.bilinear(xi, sol.mode(j));
                assert!((mij - (i == j) as u8 as f64).abs() < 1e-9);
            }
        }
    }
    assert!(modal_solve(&sys.k, &sys.m, &ModalOptions { n_modes: 0, ..Default::default() }, None).is_err());
}

#[test]
fn transverse_classification_recovers_the_bending_spectrum() {
    let pm = model(Theory::Mindlin, 0.3, 1.0);
    let all = system(&pm, 6, BoundaryCondition::Clamped, &AssemblyOptions::local(), &LoadSpec::None);
    let bend = system(&pm, 6, BoundaryCondition::Clamped, &transverse(1.0, 0.0), &LoadSpec::None);
    let sa = modal_solve(&all.k, &all.m, &ModalOptions { n_modes: 40, ..Default::default() }, None).unwrap();
    let sb = modal_solve(&bend.k, &bend.m, &ModalOptions { n_modes: 40, ..Default::default() }, None).unwrap();
    let picked = transverse_modes(&all, &sa);
    assert!(picked.len() < 40, "expected in-plane modes in the listing");
    for j in 0..40 {
        let p = transverse_participation(&all.m, &all.dofs, &all.eqs, sa.mode(j));
        assert!(p > 0.999 || p < 1e-3);
    }
    for (k, &j) in picked.iter().enumerate() {
        assert!((sa.eigenvalues[j] / sb.eigenvalues[k] - 1.0).abs() < 1e-9);
    }
}

#[test]
fn density_scaling_leaves_parameters_unchanged() {
    let mut out = Vec::new();
    for rho in [1.0, 4.0] {
        let pm = model(Theory::Kirchhoff, 0.01, rho);
        let sys = system(&pm, 6, BoundaryCondition::Clamped, &transverse(0.8, 0.3), &LoadSpec::Uniform(1.0));
        let sol = modal_solve(&sys.k, &sys.m, &ModalOptions { n_modes: 3, ..Default::default() }, None).unwrap();
        let st = static_solve(&sys, None).unwrap();
        out.push((sol.omegas()[0], frequency_parameter(&pm, sol.omegas()[0]), centre(&sys, &st)));
    }
    assert!((out[0].0 / out[1].0 - 2.0).abs() < 1e-9);
    assert!((out[0].1 / out[1].1 - 1.0).abs() < 1e-9);
    assert!((out[0].2 / out[1].2 - 1.0).abs() < 1e-12);
}

#[test]
fn nondimensional_parameters_invert() {
    let pm = model(Theory::Mindlin, 0.1, 3.0);
    let (w, q) = (2.5e-3, 7.0);
    let p = deflection_parameter(&pm, w, q).unwrap();
    assert!((p * q * pm.l.powi(4) / (100.0 * pm.material.e1 * pm.h.powi(3)) - w).abs() < 1e-15);
    assert!(deflection_parameter(&pm, w, 0.0).is_err());
    let omega = 11.0;
    let f = frequency_parameter(&pm, omega);
    assert!((f * pm.h / (pm.l * pm.l) * (pm.material.e1 / pm.material.rho).sqrt() - omega).abs() < 1e-12);
    let pk = model(Theory::Kirchhoff, 0.01, 3.0);
    let f = frequency_parameter(&pk, omega);
    let back = f * (PI / pk.b).powi(2) * (pk.d11() / (pk.material.rho * pk.h)).sqrt();
    assert!((back - omega).abs() < 1e-12);
}

#[test]
fn distinct_values_merge_near_repeats() {
    assert_eq!(distinct_values(&[1.0, 1.0 + 1e-9, 2.0, 2.0, 3.5], 1e-6), vec![1.0, 2.0, 3.5]);
    assert_eq!(distinct_values(&[], 1e-6), Vec::<f64>::new());
    assert_eq!(distinct_values(&[1.0, 1.01], 1e-6).len(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn static_response_is_linear_in_the_load(a in -5.0f64..5.0, b in -5.0f64..5.0, alpha in 0.6f64..1.0) {
        let pm = model(Theory::Mindlin, 0.1, 1.0);
        let opts = transverse(alpha, 0.3);
        let solve = |load: LoadSpec| {
            let sys = system(&pm, 5, BoundaryCondition::Clamped, &opts, &load);
            static_solve(&sys, None).unwrap().u
        };
        let u1 = solve(LoadSpec::Uniform(1.0));
        let u2 = solve(LoadSpec::Pointwise(Arc::new(|x, y| [x * y, 0.0, 0.0])));
        let u = solve(LoadSpec::Pointwise(Arc::new(move |x, y| [a + b * x * y, 0.0, 0.0])));
        let scale = u1.iter().chain(&u2).fold(0.0f64, |s, v| s.max(v.abs()));
        for i in 0..u.len() {
            prop_assert!((u[i] - a * u1[i] - b * u2[i]).abs() < 1e-10 * scale * (a.abs() + b.abs() + 1.0));
        }
    }
}

