//! Generalized symmetric eigenproblem `K x = λ M x` for the lowest modes.

use faer::{Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SpdFactor;
use crate::assembly::SymmetricCsr;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModalMethod {
    /// Cholesky reduction of the dense pencil.
    Dense,
    /// Shift-invert block Lanczos with full reorthogonalization.
    BlockLanczos,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModalOptions {
    pub n_modes: usize,
    /// Systems up to this size use the dense path.
    pub dense_threshold: usize,
    pub block_size: usize,
    /// Upper bound on the Krylov basis; `None` scales with `n_modes`.
    pub max_basis: Option<usize>,
    /// Relative Ritz residual for convergence.
    pub tol: f64,
    pub seed: u64,
}

impl Default for ModalOptions {
    fn default() -> Self {
        Self {
            n_modes: 16,
            dense_threshold: 800,
            block_size: 3,
            max_basis: None,
            tol: 1e-10,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModalSolution {
    /// Ascending eigenvalues `ω²`.
    pub eigenvalues: Vec<f64>,
    /// Mass-normalized mode shapes, one per column, on the equations.
    pub vectors: Mat<f64>,
    /// `‖K x − λ M x‖ / ‖K x‖` per mode.
    pub residuals: Vec<f64>,
    pub method: ModalMethod,
}

impl ModalSolution {
    pub fn omegas(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect()
    }

    pub fn mode(&self, j: usize) -> &[f64] {
        self.vectors.col_as_slice(j)
    }
}

/// Lowest `opts.n_modes` eigenpairs of `(k, m)`. `factor` must factor `k` when given.
pub fn modal_solve(
    k: &SymmetricCsr,
    m: &SymmetricCsr,
    opts: &ModalOptions,
    factor: Option<&SpdFactor>,
) -> Result<ModalSolution> {
    let n = k.n();
    if m.n() != n {
        return Err(Error::Argument("stiffness and mass differ in size".into()));
    }
    if opts.n_modes == 0 || opts.n_modes > n {
        return Err(Error::Argument(format!("{} modes requested from {n} equations", opts.n_modes)));
    }
    let (values, vectors, method) = if n <= opts.dense_threshold {
        let (v, x) = dense_pencil(k, m, opts.n_modes)?;
        (v, x, ModalMethod::Dense)
    } else {
        let owned;
        let factor = match factor {
            Some(f) => f,
            None => {
                owned = SpdFactor::new(k)?;
                &owned
            }
        };
        let (v, x) = block_lanczos(k, m, factor, opts)?;
        (v, x, ModalMethod::BlockLanczos)
    };
    let residuals = (0..values.len())
        .map(|j| pair_residual(k, m, values[j], vectors.col_as_slice(j)))
        .collect();
    Ok(ModalSolution { eigenvalues: values, vectors, residuals, method })
}

fn pair_residual(k: &SymmetricCsr, m: &SymmetricCsr, lambda: f64, x: &[f64]) -> f64 {
    let kx = k.matvec(x);
    let mx = m.matvec(x);
    let r: f64 = kx.iter().zip(&mx).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    r / kx.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE)
}

fn dense_pencil(k: &SymmetricCsr, m: &SymmetricCsr, nev: usize) -> Result<(Vec<f64>, Mat<f64>)> {
    let kd = k.to_dense();
    let md = m.to_dense();
    // inverse form keeps the low end accurate when the spectrum is wide
    if let Ok(llt) = kd.llt(Side::Lower) {
        let (mu, mut x) = reduced_eigen(llt.L(), md, nev, true)?;
        let values = mu.iter().map(|&v| 1.0 / v).collect();
        for (j, &v) in mu.iter().enumerate() {
            let s = 1.0 / v.sqrt();
            x.col_mut(j).iter_mut().for_each(|e| *e *= s);
        }
        return Ok((values, x));
    }
    let llt = md.llt(Side::Lower).map_err(|e| Error::Factorization(format!("mass: {e:?}")))?;
    reduced_eigen(llt.L(), kd, nev, false)
}

/// Eigenpairs of `L⁻¹ A L⁻ᵀ` mapped back by `L⁻ᵀ`; the `nev` largest when
/// `largest`, otherwise the smallest, in the order of the original pencil.
fn reduced_eigen(
    l: faer::MatRef<'_, f64>,
    mut a: Mat<f64>,
    nev: usize,
    largest: bool,
) -> Result<(Vec<f64>, Mat<f64>)> {
    let n = a.nrows();
    l.solve_lower_triangular_in_place(a.as_mut());
    let mut c = a.transpose().to_owned();
    l.solve_lower_triangular_in_place(c.as_mut());
    let c = Mat::from_fn(n, n, |i, j| 0.5 * (c[(i, j)] + c[(j, i)]));
    let eig = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| if largest { s[j].total_cmp(&s[i]) } else { s[i].total_cmp(&s[j]) });
    let values: Vec<f64> = order[..nev].iter().map(|&i| s[i]).collect();
    let mut x = Mat::from_fn(n, nev, |r, j| u[(r, order[j])]);
    l.transpose().solve_upper_triangular_in_place(x.as_mut());
    Ok((values, x))
}

/// M-orthonormalizes `x` against the first `k` basis columns and appends it.
/// Returns `false` when the vector is numerically dependent.
fn append_orthonormal(
    m: &SymmetricCsr,
    v: &mut Mat<f64>,
    mv: &mut Mat<f64>,
    k: usize,
    mut x: Vec<f64>,
) -> bool {
    let n = x.len();
    let norm0 = m.bilinear(&x, &x).max(0.0).sqrt();
    if norm0 == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for i in 0..k {
            let c: f64 = mv.col_as_slice(i).iter().zip(&x).map(|(a, b)| a * b).sum();
            let vi = v.col_as_slice(i);
            for r in 0..n {
                x[r] -= c * vi[r];
            }
        }
    }
    let mx = m.matvec(&x);
    let norm = x.iter().zip(&mx).map(|(a, b)| a * b).sum::<f64>().max(0.0).sqrt();
    if norm <= 1e-10 * norm0 {
        return false;
    }
    v.col_as_slice_mut(k).iter_mut().zip(&x).for_each(|(d, s)| *d = s / norm);
    mv.col_as_slice_mut(k).iter_mut().zip(&mx).for_each(|(d, s)| *d = s / norm);
    true
}

fn block_lanczos(
    k: &SymmetricCsr,
    m: &SymmetricCsr,
    factor: &SpdFactor,
    opts: &ModalOptions,
) -> Result<(Vec<f64>, Mat<f64>)> {
    let n = k.n();
    let nev = opts.n_modes;
    let b = opts.block_size.max(1);
    let cap = opts.max_basis.unwrap_or((6 * nev).max(90)).min(n);
    let mut v = Mat::<f64>::zeros(n, cap);
    let mut mv = Mat::<f64>::zeros(n, cap);
    let mut w = Mat::<f64>::zeros(n, cap);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut kb = 0; // basis columns
    let mut kw = 0; // columns already mapped through K⁻¹M
    while kb < b.min(cap) {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if append_orthonormal(m, &mut v, &mut mv, kb, x) {
            kb += 1;
        }
    }
    loop {
        // apply the operator to the newest block
        let (s, e) = (kw, kb);
        let mut rhs = Mat::from_fn(n, e - s, |r, j| mv[(r, s + j)]);
        factor.solve_in_place(rhs.as_mut());
        for j in 0..e - s {
            w.col_as_slice_mut(s + j).copy_from_slice(rhs.col_as_slice(j));
        }
        kw = e;
        if kw >= nev {
            if let Some(out) = ritz(m, &v, &mv, &w, kw, nev, opts.tol, kw + b > cap)? {
                return Ok(out);
            }
        }
        if kb >= cap {
            return Err(Error::Eigen(format!("no convergence with a basis of {cap}")));
        }
        let mut added = 0;
        for j in 0..e - s {
            if kb >= cap {
                break;
            }
            if append_orthonormal(m, &mut v, &mut mv, kb, rhs.col_as_slice(j).to_vec()) {
                kb += 1;
                added += 1;
            }
        }
        // restart invariant subspaces with fresh directions
        while added == 0 && kb < cap {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            if append_orthonormal(m, &mut v, &mut mv, kb, x) {
                kb += 1;
                added += 1;
            }
        }
    }
}

/// Rayleigh–Ritz on the mapped basis. `Some` once the top `nev` pairs converge,
/// or unconditionally when `last`.
#[allow(clippy::too_many_arguments)]
fn ritz(
    m: &SymmetricCsr,
    v: &Mat<f64>,
    mv: &Mat<f64>,
    w: &Mat<f64>,
    kw: usize,
    nev: usize,
    tol: f64,
    last: bool,
) -> Result<Option<(Vec<f64>, Mat<f64>)>> {
    let n = v.nrows();
    let t = mv.subcols(0, kw).transpose() * w.subcols(0, kw);
    let t = Mat::from_fn(kw, kw, |i, j| 0.5 * (t[(i, j)] + t[(j, i)]));
    let eig = t.self_adjoint_eigen(Side::Lower).map_err(|e| Error::Eigen(format!("{e:?}")))?;
    let s = eig.S().column_vector();
    let u = eig.U();
    let mut order: Vec<usize> = (0..kw).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let y = Mat::from_fn(kw, nev, |r, j| u[(r, order[j])]);
    let x = v.subcols(0, kw) * &y;
    let wy = w.subcols(0, kw) * &y;
    let mut converged = true;
    for j in 0..nev {
        let theta = s[order[j]];
        if theta <= 0.0 {
            return Err(Error::Eigen("non-positive Ritz value; stiffness is not definite".into()));
        }
        let r: Vec<f64> = (0..n).map(|i| wy[(i, j)] - theta * x[(i, j)]).collect();
        let rn = m.bilinear(&r, &r).max(0.0).sqrt();
        if rn > tol * theta {
            converged = false;
            break;
        }
    }
    if !converged && !last {
        return Ok(None);
    }
    if !converged {
        return Err(Error::Eigen("Ritz pairs did not reach tolerance".into()));
    }
    let values: Vec<f64> = (0..nev).map(|j| 1.0 / s[order[j]]).collect();
    Ok(Some((values, x)))
}
