//! Published benchmark values for the square plate studies.
//!
//! Grids are indexed `[l_f row][α column]` over [`LF_FRACS`] and [`ALPHAS`].

use fracplate::assembly::BoundaryCondition;
use fracplate::mesh::Theory;

pub const ALPHAS: [f64; 4] = [1.0, 0.9, 0.8, 0.7];
pub const LF_FRACS: [f64; 4] = [0.2, 0.3, 0.4, 0.5];

type Grid = [[f64; 4]; 4];

const STATIC_MINDLIN_CCCC: Grid = [
    [1.6071, 1.8480, 2.0445, 2.2400],
    [1.6071, 1.9554, 2.2787, 2.5372],
    [1.6071, 2.1118, 2.7252, 3.4427],
    [1.6071, 2.2835, 3.3362, 5.0887],
];
const STATIC_MINDLIN_SSSS: Grid = [
    [4.6401, 5.1533, 5.5759, 5.9310],
    [4.6401, 5.3579, 6.0026, 6.5009],
    [4.6401, 5.6047, 6.6445, 7.6796],
    [4.6401, 5.9198, 7.6192, 9.9868],
];
const STATIC_KIRCHHOFF_CCCC: Grid = [
    [1.4235, 1.5135, 1.5929, 1.6709],
    [1.4235, 1.6047, 1.7772, 1.9380],
    [1.4235, 1.6982, 2.0135, 2.3790],
    [1.4235, 1.8047, 2.2878, 2.9446],
];
const STATIC_KIRCHHOFF_SSSS: Grid = [
    [4.5701, 4.6151, 4.6419, 4.6610],
    [4.5701, 4.7068, 4.8252, 4.8768],
    [4.5701, 4.8249, 5.0927, 5.3828],
    [4.5701, 4.9480, 5.4094, 6.0180],
];

const MODAL_MINDLIN_CCCC: Grid = [
    [9.8540, 9.2083, 8.6610, 8.1801],
    [9.8540, 8.9162, 8.0603, 7.2857],
    [9.8540, 8.6172, 7.4342, 6.3439],
    [9.8540, 8.3622, 6.8856, 5.5204],
];
const MODAL_MINDLIN_SSSS: Grid = [
    [5.7788, 5.4588, 5.2210, 5.0368],
    [5.7788, 5.3664, 5.0286, 4.7443],
    [5.7788, 5.2581, 4.7980, 4.3866],
    [5.7788, 5.1487, 4.5570, 3.9966],
];
const MODAL_KIRCHHOFF_CCCC: Grid = [
    [3.6457, 3.5176, 3.4090, 3.3077],
    [3.6457, 3.4123, 3.2115, 3.0277],
    [3.6457, 3.3157, 3.0288, 2.7659],
    [3.6457, 3.2389, 2.8812, 2.5483],
];
const MODAL_KIRCHHOFF_SSSS: Grid = [
    [1.9998, 1.9865, 1.9765, 1.9676],
    [1.9998, 1.9681, 1.9384, 1.9081],
    [1.9998, 1.9465, 1.8923, 1.8342],
    [1.9998, 1.9257, 1.8463, 1.7564],
];

/// Clamped Mindlin plate: `(l_f, [(𝒩, [w̄; α])])`.
const CONVERGENCE_MINDLIN: [(f64, [(usize, [f64; 4]); 5]); 3] = [
    (
        0.2,
        [
            (4, [1.5645, 1.7214, 1.8549, 1.9793]),
            (8, [1.6226, 1.8164, 1.9924, 2.1668]),
            (10, [1.6299, 1.8350, 2.0226, 2.2092]),
            (12, [1.6339, 1.8480, 2.0445, 2.2400]),
            (16, [1.6379, 1.8659, 2.0753, 2.2832]),
        ],
    ),
    (
        0.4,
        [
            (4, [1.3715, 1.8071, 2.3811, 3.1851]),
            (8, [1.5645, 2.0525, 2.6554, 3.3890]),
            (10, [1.5836, 2.0788, 2.6856, 3.4102]),
            (12, [1.6071, 2.1118, 2.7252, 3.4427]),
            (16, [1.6226, 2.1384, 2.7611, 3.4776]),
        ],
    ),
    (
        0.5,
        [
            (4, [1.2578, 1.7969, 2.6313, 4.0621]),
            (8, [1.5238, 2.1893, 3.2054, 4.9160]),
            (10, [1.5645, 2.2486, 3.2874, 5.0246]),
            (12, [1.5876, 2.2835, 3.3362, 5.0887]),
            (16, [1.6113, 2.3227, 3.3935, 5.1657]),
        ],
    ),
];

/// Clamped Kirchhoff plate, same layout.
const CONVERGENCE_KIRCHHOFF: [(f64, [(usize, [f64; 4]); 4]); 3] = [
    (
        0.2,
        [
            (4, [1.4235, 1.5102, 1.5860, 1.6603]),
            (8, [1.4235, 1.5129, 1.5916, 1.6689]),
            (10, [1.4235, 1.5135, 1.5929, 1.6709]),
            (12, [1.4235, 1.5140, 1.5939, 1.6273]),
        ],
    ),
    (
        0.4,
        [
            (4, [1.4235, 1.7262, 2.0782, 2.5063]),
            (8, [1.4235, 1.7102, 2.0320, 2.4078]),
            (10, [1.4235, 1.6982, 2.0135, 2.3790]),
            (12, [1.4235, 1.7055, 2.0185, 2.3788]),
        ],
    ),
    (
        0.5,
        [
            (4, [1.4236, 1.8189, 2.3280, 3.0251]),
            (8, [1.4325, 1.8072, 2.2952, 2.9598]),
            (10, [1.4235, 1.8047, 2.2878, 2.9446]),
            (12, [1.4235, 1.8030, 2.2828, 2.9340]),
        ],
    ),
];

/// First eight frequencies of the clamped Mindlin plate at `l_f = 0.5L`.
const MODES_FIXED_LF: [(f64, [f64; 8]); 4] = [
    (0.7, [5.5204, 7.8808, 10.1654, 11.9102, 12.0238, 13.9883, 17.2615, 17.3539]),
    (0.8, [6.8856, 10.9440, 14.7220, 16.8717, 17.0305, 20.2794, 24.7794, 25.2272]),
    (0.9, [8.3622, 14.6749, 20.2387, 23.4535, 23.6739, 28.3423, 34.6228, 35.5065]),
    (1.0, MODES_LOCAL),
];

/// First eight frequencies of the clamped Mindlin plate at `α = 0.8`.
const MODES_FIXED_ALPHA: [(f64, [f64; 8]); 3] = [
    (0.4, [7.4342, 11.7452, 15.8992, 16.8007, 16.9583, 20.6869, 24.3174, 25.0889]),
    (0.3, [8.0603, 13.3021, 18.3123, 18.4040, 18.5473, 23.2114, 24.2828, 27.8966]),
    (0.2, [8.6610, 15.2968, 21.3305, 22.4971, 22.6767, 28.1549, 29.2432, 34.3695]),
];

const MODES_LOCAL: [f64; 8] = [9.8540, 18.8806, 26.4485, 31.3387, 31.6403, 37.8018, 46.4625, 47.7089];

/// Manufactured-solution results `(α, l_f, 100·w)`; the local row has no horizon.
const VALIDATION: [(f64, f64, f64); 5] =
    [(1.0, 0.0, 6.26), (0.9, 0.1, 6.06), (0.9, 0.2, 6.50), (0.8, 0.1, 6.19), (0.8, 0.2, 6.26)];

const EPS: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < EPS
}

fn grid_lookup(grid: &Grid, alpha: f64, lf_frac: f64) -> Option<f64> {
    let j = ALPHAS.iter().position(|&a| close(a, alpha))?;
    if j == 0 {
        return Some(grid[0][0]);
    }
    let i = LF_FRACS.iter().position(|&l| close(l, lf_frac))?;
    Some(grid[i][j])
}

fn family(bc: BoundaryCondition) -> BoundaryCondition {
    match bc {
        BoundaryCondition::SimplySupportedSoft => BoundaryCondition::SimplySupported,
        other => other,
    }
}

/// Centre deflection parameter under uniform load.
pub fn static_deflection(theory: Theory, bc: BoundaryCondition, alpha: f64, lf_frac: f64) -> Option<f64> {
    let grid = match (theory, family(bc)) {
        (Theory::Mindlin, BoundaryCondition::Clamped) => &STATIC_MINDLIN_CCCC,
        (Theory::Mindlin, _) => &STATIC_MINDLIN_SSSS,
        (Theory::Kirchhoff, BoundaryCondition::Clamped) => &STATIC_KIRCHHOFF_CCCC,
        (Theory::Kirchhoff, _) => &STATIC_KIRCHHOFF_SSSS,
    };
    grid_lookup(grid, alpha, lf_frac)
}

/// Fundamental frequency parameter.
pub fn fundamental_frequency(theory: Theory, bc: BoundaryCondition, alpha: f64, lf_frac: f64) -> Option<f64> {
    let grid = match (theory, family(bc)) {
        (Theory::Mindlin, BoundaryCondition::Clamped) => &MODAL_MINDLIN_CCCC,
        (Theory::Mindlin, _) => &MODAL_MINDLIN_SSSS,
        (Theory::Kirchhoff, BoundaryCondition::Clamped) => &MODAL_KIRCHHOFF_CCCC,
        (Theory::Kirchhoff, _) => &MODAL_KIRCHHOFF_SSSS,
    };
    grid_lookup(grid, alpha, lf_frac)
}

/// Frequency parameter of mode `k` (0-based, at most 7) for the clamped Mindlin plate.
pub fn mode_frequency(theory: Theory, bc: BoundaryCondition, alpha: f64, lf_frac: f64, k: usize) -> Option<f64> {
    if theory != Theory::Mindlin || bc != BoundaryCondition::Clamped || k >= 8 {
        return None;
    }
    if close(alpha, 1.0) {
        return Some(MODES_LOCAL[k]);
    }
    if close(lf_frac, 0.5) {
        if let Some((_, m)) = MODES_FIXED_LF.iter().find(|(a, _)| close(*a, alpha)) {
            return Some(m[k]);
        }
    }
    if close(alpha, 0.8) {
        if let Some((_, m)) = MODES_FIXED_ALPHA.iter().find(|(l, _)| close(*l, lf_frac)) {
            return Some(m[k]);
        }
    }
    None
}

/// Clamped-plate deflection parameter at dynamic rate `n`.
pub fn convergence_deflection(theory: Theory, alpha: f64, lf_frac: f64, n: usize) -> Option<f64> {
    let j = ALPHAS.iter().position(|&a| close(a, alpha))?;
    match theory {
        Theory::Mindlin => {
            let (_, rows) = CONVERGENCE_MINDLIN.iter().find(|(l, _)| close(*l, lf_frac))?;
            rows.iter().find(|(m, _)| *m == n).map(|(_, v)| v[j])
        }
        Theory::Kirchhoff => {
            let (_, rows) = CONVERGENCE_KIRCHHOFF.iter().find(|(l, _)| close(*l, lf_frac))?;
            rows.iter().find(|(m, _)| *m == n).map(|(_, v)| v[j])
        }
    }
}

/// Manufactured-solution centre value `100·w`; `lf_frac` is ignored at `α = 1`.
pub fn validation_value(alpha: f64, lf_frac: f64) -> Option<f64> {
    VALIDATION
        .iter()
        .find(|(a, l, _)| close(*a, alpha) && (close(alpha, 1.0) || close(*l, lf_frac)))
        .map(|(_, _, v)| *v)
}
