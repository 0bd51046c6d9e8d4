//! Independent local FEM: bilinear Mindlin and Bogner–Fox–Schmit Kirchhoff
//! elements on physical coordinates, dense storage.

use fracplate::assembly::SymmetricCsr;
use fracplate::mesh::{build_mesh, Component, Theory};
use fracplate::model::PlateModel;

const GL3: [(f64, f64); 3] = [(-0.774_596_669_241_483_4, 5.0 / 9.0), (0.0, 8.0 / 9.0), (0.774_596_669_241_483_4, 5.0 / 9.0)];
const GL4: [(f64, f64); 4] = [
    (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
];

/// 1D cubic Hermite basis on an element of length `le`: (value, d1, d2) for
/// [left value, left slope, right value, right slope].
fn hermite_1d(t: f64, le: f64) -> [[f64; 3]; 4] {
    [
        [1.0 - 3.0 * t * t + 2.0 * t.powi(3), (-6.0 * t + 6.0 * t * t) / le, (-6.0 + 12.0 * t) / (le * le)],
        [le * (t - 2.0 * t * t + t.powi(3)), 1.0 - 4.0 * t + 3.0 * t * t, (-4.0 + 6.0 * t) / le],
        [3.0 * t * t - 2.0 * t.powi(3), (6.0 * t - 6.0 * t * t) / le, (6.0 - 12.0 * t) / (le * le)],
        [le * (-t * t + t.powi(3)), -2.0 * t + 3.0 * t * t, (-2.0 + 6.0 * t) / le],
    ]
}

fn lagrange_1d(t: f64, le: f64) -> [[f64; 2]; 2] {
    [[1.0 - t, -1.0 / le], [t, 1.0 / le]]
}

pub struct Oracle {
    pub k: Vec<Vec<f64>>,
    pub m: Vec<Vec<f64>>,
    pub f: Vec<f64>,
}

/// `load(x, y)` is the transverse pressure.
pub fn local_oracle(pm: &PlateModel, nx: usize, ny: usize, load: impl Fn(f64, f64) -> f64) -> Oracle {
    let (mesh, dofs) = build_mesh(pm.l, pm.b, nx, ny, pm.theory).unwrap();
    let n = dofs.n_dofs();
    let (lx, ly) = (pm.l / nx as f64, pm.b / ny as f64);
    let mut k = vec![vec![0.0; n]; n];
    let mut m = vec![vec![0.0; n]; n];
    let mut f = vec![0.0; n];
    let sb = pm.constitutive.s_b;
    let ss = pm.constitutive.s_s;
    let (i0, i2) = (pm.inertia.i0, pm.inertia.i2);
    let rule: &[(f64, f64)] = if pm.theory == Theory::Mindlin { &GL3 } else { &GL4 };
    for je in 0..ny {
        for ie in 0..nx {
            for &(gx, wx) in rule {
                for &(gy, wy) in rule {
                    let (tx, ty) = (0.5 * (1.0 + gx), 0.5 * (1.0 + gy));
                    let (x, y) = ((ie as f64 + tx) * lx, (je as f64 + ty) * ly);
                    let w = wx * wy * 0.25 * lx * ly;
                    // strain rows: 6 bending/membrane, 2 shear; inertia rows: 5
                    let mut bb: Vec<Vec<(usize, f64)>> = vec![Vec::new(); 8];
                    let mut rows_m: Vec<(Vec<(usize, f64)>, f64)> = Vec::new();
                    let mut wrow = Vec::new();
                    let lag_x = lagrange_1d(tx, lx);
                    let lag_y = lagrange_1d(ty, ly);
                    let mut u_val = Vec::new();
                    let mut v_val = Vec::new();
                    let mut tx_val = Vec::new();
                    let mut ty_val = Vec::new();
                    for a in 0..2 {
                        for b in 0..2 {
                            let node = mesh.node_index(ie + a, je + b);
                            let g = |c| dofs.global(node, c).unwrap();
                            let (nv, nxd, nyd) = (lag_x[a][0] * lag_y[b][0], lag_x[a][1] * lag_y[b][0], lag_x[a][0] * lag_y[b][1]);
                            bb[0].push((g(Component::U0), nxd));
                            bb[1].push((g(Component::V0), nyd));
                            bb[2].push((g(Component::U0), nyd));
                            bb[2].push((g(Component::V0), nxd));
                            u_val.push((g(Component::U0), nv));
                            v_val.push((g(Component::V0), nv));
                            if pm.theory == Theory::Mindlin {
                                bb[3].push((g(Component::ThetaX), nxd));
                                bb[4].push((g(Component::ThetaY), nyd));
                                bb[5].push((g(Component::ThetaX), nyd));
                                bb[5].push((g(Component::ThetaY), nxd));
                                bb[6].push((g(Component::W0), nyd));
                                bb[6].push((g(Component::ThetaY), -nv));
                                bb[7].push((g(Component::W0), nxd));
                                bb[7].push((g(Component::ThetaX), -nv));
                                wrow.push((g(Component::W0), nv));
                                tx_val.push((g(Component::ThetaX), nv));
                                ty_val.push((g(Component::ThetaY), nv));
                            }
                        }
                    }
                    if pm.theory == Theory::Kirchhoff {
                        let hx = hermite_1d(tx, lx);
                        let hy = hermite_1d(ty, ly);
                        for a in 0..2 {
                            for b in 0..2 {
                                let node = mesh.node_index(ie + a, je + b);
                                let comps = [
                                    (Component::W0, 2 * a, 2 * b),
                                    (Component::Wx, 2 * a + 1, 2 * b),
                                    (Component::Wy, 2 * a, 2 * b + 1),
                                    (Component::Wxy, 2 * a + 1, 2 * b + 1),
                                ];
                                for (c, fx, fy) in comps {
                                    let g = dofs.global(node, c).unwrap();
                                    let (px, py) = (hx[fx], hy[fy]);
                                    bb[3].push((g, px[2] * py[0]));
                                    bb[4].push((g, px[0] * py[2]));
                                    bb[5].push((g, 2.0 * px[1] * py[1]));
                                    wrow.push((g, px[0] * py[0]));
                                    tx_val.push((g, px[1] * py[0]));
                                    ty_val.push((g, px[0] * py[1]));
                                }
                            }
                        }
                        bb.truncate(6);
                    }
                    rows_m.push((u_val, i0));
                    rows_m.push((v_val, i0));
                    rows_m.push((wrow.clone(), i0));
                    rows_m.push((tx_val, i2));
                    rows_m.push((ty_val, i2));
                    for (r, ra) in bb.iter().enumerate() {
                        for (s, rb) in bb.iter().enumerate() {
                            let c = if r < 6 && s < 6 {
                                sb[r][s]
                            } else if r >= 6 && s >= 6 {
                                ss[r - 6][s - 6]
                            } else {
                                0.0
                            };
                            if c == 0.0 {
                                continue;
                            }
                            for &(i, vi) in ra {
                                for &(j, vj) in rb {
                                    k[i][j] += w * c * vi * vj;
                                }
                            }
                        }
                    }
                    for (row, rho) in &rows_m {
                        for &(i, vi) in row {
                            for &(j, vj) in row {
                                m[i][j] += w * rho * vi * vj;
                            }
                        }
                    }
                    let q = load(x, y);
                    for &(i, vi) in &wrow {
                        f[i] += w * q * vi;
                    }
                }
            }
        }
    }
    Oracle { k, m, f }
}

pub fn compare_dense(a: &SymmetricCsr, b: &[Vec<f64>]) -> f64 {
    let scale = b.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    let mut d: f64 = 0.0;
    for i in 0..a.n() {
        for j in 0..a.n() {
            d = d.max((a.get(i, j) - b[i][j]).abs());
        }
    }
    d / scale
}
