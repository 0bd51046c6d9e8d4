use fracplate::mesh::*;
use proptest::prelude::*;

#[test]
fn node_coordinates_are_uniform() {
    let (m, d) = build_mesh(2.0, 1.5, 4, 3, Theory::Mindlin).unwrap();
    assert_eq!(d.n_dofs(), 20 * 5);
    for j in 0..=3 {
        for i in 0..=4 {
            let (x, y) = m.node_coords(m.node_index(i, j));
            assert!((x - i as f64 * 0.5).abs() < 1e-15 && (y - j as f64 * 0.5).abs() < 1e-15);
        }
    }
    assert_eq!(m.connectivity(m.element_index(1, 2)), [11, 12, 17, 16]);
}

#[test]
fn dof_map_is_a_bijection() {
    for theory in [Theory::Mindlin, Theory::Kirchhoff] {
        let d = DofMap::new(theory, 7);
        let mut seen = vec![false; d.n_dofs()];
        for node in 0..7 {
            for &c in d.components() {
                let g = d.global(node, c).unwrap();
                assert!(!seen[g]);
                seen[g] = true;
                assert_eq!(d.node_component(g), (node, c));
            }
        }
        assert!(seen.into_iter().all(|s| s));
        assert_eq!(d.global(7, Component::W0), None);
    }
    assert_eq!(DofMap::new(Theory::Mindlin, 1).slot(Component::Wx), None);
}

#[test]
fn jacobians() {
    let m = StructuredMesh::new(1.0, 1.0, 10, 10).unwrap();
    assert!((jacobian(&m) - 0.0025).abs() < 1e-17);
    let unit = StructuredMesh::new(2.0, 2.0, 1, 1).unwrap();
    assert_eq!(jacobian(&unit), 1.0);
    let fine = StructuredMesh::new(1.0, 1.0, 12, 5).unwrap();
    assert!((line_jacobian(&fine, Axis::X) - 1.0 / 24.0).abs() < 1e-16);
    assert!((line_jacobian(&fine, Axis::Y) - 0.1).abs() < 1e-16);
}

fn hermite_field(h: &HermiteEval, nodal: &[[f64; 4]; 4]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for k in 0..4 {
        for s in 0..4 {
            let i = 4 * k + s;
            let c = nodal[k][s];
            out[0] += c * h.v[i];
            out[1] += c * h.dx[i];
            out[2] += c * h.dy[i];
            out[3] += c * h.dxx[i];
            out[4] += c * h.dyy[i];
            out[5] += c * h.dxy[i];
        }
    }
    out
}

const CORNERS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

/// Bicubic `p(x, y) = Σ c_ij x^i y^j` with its derivatives.
fn bicubic(c: &[[f64; 4]; 4], x: f64, y: f64) -> [f64; 6] {
    let mut out = [0.0; 6];
    for i in 0..4 {
        for j in 0..4 {
            let (fi, fj) = (i as f64, j as f64);
            let px = |k: i32| if k < 0 { 0.0 } else { x.powi(k) };
            let py = |k: i32| if k < 0 { 0.0 } else { y.powi(k) };
            let (ii, jj) = (i as i32, j as i32);
            out[0] += c[i][j] * px(ii) * py(jj);
            out[1] += c[i][j] * fi * px(ii - 1) * py(jj);
            out[2] += c[i][j] * fj * px(ii) * py(jj - 1);
            out[3] += c[i][j] * fi * (fi - 1.0) * px(ii - 2) * py(jj);
            out[4] += c[i][j] * fj * (fj - 1.0) * px(ii) * py(jj - 2);
            out[5] += c[i][j] * fi * fj * px(ii - 1) * py(jj - 1);
        }
    }
    out
}

proptest! {
    #[test]
    fn lagrange_reproduces_bilinears(c in prop::array::uniform4(-2.0f64..2.0), xi in -1.0f64..1.0, eta in -1.0f64..1.0) {
        let (a, b) = (0.3, 0.2);
        let (x0, y0) = (0.6, 0.4);
        let f = |x: f64, y: f64| c[0] + c[1] * x + c[2] * y + c[3] * x * y;
        let s = lagrange_shape(xi, eta);
        let (x, y) = (x0 + a * (1.0 + xi), y0 + b * (1.0 + eta));
        let mut v = 0.0;
        let mut dx = 0.0;
        for (k, &(cx, cy)) in CORNERS.iter().enumerate() {
            let nodal = f(x0 + a * (1.0 + cx), y0 + b * (1.0 + cy));
            v += s.n[k] * nodal;
            dx += s.dn[k][0] / a * nodal;
        }
        prop_assert!((v - f(x, y)).abs() < 1e-12);
        prop_assert!((dx - (c[1] + c[3] * y)).abs() < 1e-12);
        prop_assert!((s.n.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_reproduces_bicubics(
        c in prop::array::uniform4(prop::array::uniform4(-1.0f64..1.0)),
        xi in -1.0f64..1.0,
        eta in -1.0f64..1.0,
    ) {
        let (a, b) = (0.25, 0.4);
        let (x0, y0) = (0.5, 0.2);
        let mut nodal = [[0.0; 4]; 4];
        for (k, &(cx, cy)) in CORNERS.iter().enumerate() {
            let p = bicubic(&c, x0 + a * (1.0 + cx), y0 + b * (1.0 + cy));
            nodal[k] = [p[0], p[1], p[2], p[5]];
        }
        let h = hermite_shape(xi, eta, a, b);
        let got = hermite_field(&h, &nodal);
        let want = bicubic(&c, x0 + a * (1.0 + xi), y0 + b * (1.0 + eta));
        for q in 0..6 {
            prop_assert!((got[q] - want[q]).abs() < 1e-12 * want[q].abs().max(1.0), "q={}", q);
        }
        let sum: f64 = (0..4).map(|k| h.v[4 * k]).sum();
        prop_assert!((sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_normal_slope_is_continuous(dofs in prop::array::uniform6(prop::array::uniform4(-1.0f64..1.0))) {
        // two elements side by side sharing the edge x = 0.5; nodes numbered
        // (0,0) (0.5,0) (1,0) (0,1) (0.5,1) (1,1)
        let (a, b) = (0.25, 0.5);
        let left = [dofs[0], dofs[1], dofs[4], dofs[3]];
        let right = [dofs[1], dofs[2], dofs[5], dofs[4]];
        for eta in [-1.0, -0.5, 0.0, 0.3, 1.0] {
            let hl = hermite_field(&hermite_shape(1.0, eta, a, b), &left);
            let hr = hermite_field(&hermite_shape(-1.0, eta, a, b), &right);
            prop_assert!((hl[0] - hr[0]).abs() < 1e-12);
            prop_assert!((hl[1] - hr[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn stencils_cover_the_truncated_horizon(
        n in 5usize..40,
        t in 0.0f64..1.0,
        gp in 0usize..4,
        lf in 0.02f64..0.5,
    ) {
        let mesh = StructuredMesh::new(1.0, 1.0, n, n).unwrap();
        let h = 1.0 / n as f64;
        let k = ((t * n as f64) as usize).min(n - 1);
        let xi = [-0.861136311594053, -0.339981043584856, 0.339981043584856, 0.861136311594053][gp];
        let p = (k as f64 + 0.5 * (1.0 + xi)) * h;
        let s = horizon_stencil((0.37, p), Axis::Y, lf, &mesh).unwrap();
        prop_assert_eq!(s.l_a, lf.min(p));
        prop_assert_eq!(s.l_b, lf.min(1.0 - p));
        prop_assert_eq!(s.singular_element, k);
        // pieces tile [p − l_a, p + l_b] in order without overlap
        let mut at = p - s.l_a;
        for piece in &s.pieces {
            prop_assert!((piece.lo - at).abs() < 1e-12);
            prop_assert!(piece.hi > piece.lo);
            prop_assert!(piece.lo >= mesh.coord(Axis::Y, piece.element) - 1e-12);
            prop_assert!(piece.hi <= mesh.coord(Axis::Y, piece.element + 1) + 1e-12);
            at = piece.hi;
        }
        prop_assert!((at - (p + s.l_b)).abs() < 1e-12);
        let mut all: Vec<usize> = s.left_elements.iter().chain(&s.right_elements).copied().collect();
        all.push(k);
        let before = all.len();
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), before);
        if p >= lf && 1.0 - p >= lf {
            prop_assert_eq!(s.l_a, s.l_b);
        }
    }
}

#[test]
fn rate_twelve_interior_and_truncated_anchor() {
    let mesh = StructuredMesh::new(1.0, 1.0, 60, 60).unwrap();
    let s = horizon_stencil((0.5 + 1.0 / 120.0, 0.5), Axis::X, 0.2, &mesh).unwrap();
    assert_eq!((s.left_elements.len(), s.right_elements.len()), (12, 12));
    let edge = horizon_stencil((0.055, 0.5), Axis::X, 0.2, &mesh).unwrap();
    assert!((edge.l_a - 0.055).abs() < 1e-15);
    assert_eq!(edge.left_elements.len(), 3);
    assert!(horizon_stencil((0.5, -0.1), Axis::X, 0.2, &mesh).is_err());
}
