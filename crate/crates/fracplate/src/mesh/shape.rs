//! Bilinear Lagrange and bicubic Hermite bases on the reference square.

/// Local corner coordinates, counterclockwise from (−1, −1).
const CORNERS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

/// Bilinear values and reference gradients `(∂/∂ξ, ∂/∂η)`.
#[derive(Clone, Copy, Debug)]
pub struct LagrangeEval {
    pub n: [f64; 4],
    pub dn: [[f64; 2]; 4],
}

pub fn lagrange_shape(xi: f64, eta: f64) -> LagrangeEval {
    let mut n = [0.0; 4];
    let mut dn = [[0.0; 2]; 4];
    for (k, &(a, b)) in CORNERS.iter().enumerate() {
        n[k] = 0.25 * (1.0 + a * xi) * (1.0 + b * eta);
        dn[k] = [0.25 * a * (1.0 + b * eta), 0.25 * b * (1.0 + a * xi)];
    }
    LagrangeEval { n, dn }
}

/// 1D linear pair `(values, d/dξ)` for the two element ends.
pub fn lagrange_1d(xi: f64) -> ([f64; 2], [f64; 2]) {
    ([0.5 * (1.0 - xi), 0.5 * (1.0 + xi)], [-0.5, 0.5])
}

/// 1D cubic Hermite basis in physical units on an element of half-length `a`.
///
/// Order: value at left end, slope at left end, value at right end, slope at right end.
#[derive(Clone, Copy, Debug)]
pub struct Hermite1d {
    pub v: [f64; 4],
    pub d1: [f64; 4],
    pub d2: [f64; 4],
}

pub fn hermite_1d(xi: f64, a: f64) -> Hermite1d {
    let x2 = xi * xi;
    let v = [
        0.25 * (1.0 - xi) * (1.0 - xi) * (2.0 + xi),
        a * 0.25 * (1.0 - xi) * (1.0 - xi) * (1.0 + xi),
        0.25 * (1.0 + xi) * (1.0 + xi) * (2.0 - xi),
        -a * 0.25 * (1.0 + xi) * (1.0 + xi) * (1.0 - xi),
    ];
    let dxi = [
        0.75 * (x2 - 1.0),
        a * 0.25 * (3.0 * x2 - 2.0 * xi - 1.0),
        0.75 * (1.0 - x2),
        a * 0.25 * (3.0 * x2 + 2.0 * xi - 1.0),
    ];
    let d2xi = [1.5 * xi, a * 0.5 * (3.0 * xi - 1.0), -1.5 * xi, a * 0.5 * (3.0 * xi + 1.0)];
    Hermite1d {
        v,
        d1: dxi.map(|d| d / a),
        d2: d2xi.map(|d| d / (a * a)),
    }
}

/// Bicubic Hermite values and physical derivatives.
///
/// Index `4k + s` addresses local node `k` and slot `s ∈ {w, w_x, w_y, w_xy}`.
#[derive(Clone, Copy, Debug)]
pub struct HermiteEval {
    pub v: [f64; 16],
    pub dx: [f64; 16],
    pub dy: [f64; 16],
    pub dxx: [f64; 16],
    pub dyy: [f64; 16],
    pub dxy: [f64; 16],
}

/// Local 1D function indices `(value, slope)` for a corner at reference coordinate `c`.
pub(crate) fn end_pair(c: f64) -> (usize, usize) {
    if c < 0.0 {
        (0, 1)
    } else {
        (2, 3)
    }
}

/// Bicubic Hermite basis on an element with half-lengths `(a, b)`.
pub fn hermite_shape(xi: f64, eta: f64, a: f64, b: f64) -> HermiteEval {
    let hx = hermite_1d(xi, a);
    let hy = hermite_1d(eta, b);
    let mut out = HermiteEval {
        v: [0.0; 16],
        dx: [0.0; 16],
        dy: [0.0; 16],
        dxx: [0.0; 16],
        dyy: [0.0; 16],
        dxy: [0.0; 16],
    };
    for (k, &(cx, cy)) in CORNERS.iter().enumerate() {
        let (xv, xs) = end_pair(cx);
        let (yv, ys) = end_pair(cy);
        for (s, (ix, iy)) in [(xv, yv), (xs, yv), (xv, ys), (xs, ys)].into_iter().enumerate() {
            let i = 4 * k + s;
            out.v[i] = hx.v[ix] * hy.v[iy];
            out.dx[i] = hx.d1[ix] * hy.v[iy];
            out.dy[i] = hx.v[ix] * hy.d1[iy];
            out.dxx[i] = hx.d2[ix] * hy.v[iy];
            out.dyy[i] = hx.v[ix] * hy.d2[iy];
            out.dxy[i] = hx.d1[ix] * hy.d1[iy];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_partition_of_unity() {
        for &(xi, eta) in &[(0.1, -0.7), (-1.0, 1.0), (0.33, 0.99)] {
            let s = lagrange_shape(xi, eta);
            assert!((s.n.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            assert!(s.dn.iter().map(|g| g[0]).sum::<f64>().abs() < 1e-15);
            assert!(s.dn.iter().map(|g| g[1]).sum::<f64>().abs() < 1e-15);
        }
        for (k, &(a, b)) in CORNERS.iter().enumerate() {
            let s = lagrange_shape(a, b);
            for j in 0..4 {
                assert_eq!(s.n[j], if j == k { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn hermite_nodal_interpolation() {
        let (a, b) = (0.3, 0.7);
        for (k, &(cx, cy)) in CORNERS.iter().enumerate() {
            let h = hermite_shape(cx, cy, a, b);
            for i in 0..16 {
                let own = i / 4 == k;
                let s = i % 4;
                let expect = |slot: usize| if own && s == slot { 1.0 } else { 0.0 };
                assert!((h.v[i] - expect(0)).abs() < 1e-14);
                assert!((h.dx[i] - expect(1)).abs() < 1e-14);
                assert!((h.dy[i] - expect(2)).abs() < 1e-14);
                assert!((h.dxy[i] - expect(3)).abs() < 1e-14);
            }
        }
        let h = hermite_shape(0.2, -0.4, a, b);
        let sum: f64 = (0..4).map(|k| h.v[4 * k]).sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }
}
