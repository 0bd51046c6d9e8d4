use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::Llt;
use faer::{Mat, MatMut, Side};

use crate::assembly::SymmetricCsr;
use crate::error::{Error, Result};

/// Sparse Cholesky factor of a symmetric positive definite matrix.
pub struct SpdFactor {
    n: usize,
    llt: Llt<u32, f64>,
}

impl std::fmt::Debug for SpdFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpdFactor").field("n", &self.n).finish_non_exhaustive()
    }
}

impl SpdFactor {
    pub fn new(a: &SymmetricCsr) -> Result<Self> {
        if a.n() == 0 {
            return Err(Error::Argument("empty system".into()));
        }
        let llt = a
            .lower_csc()
            .sp_cholesky(Side::Lower)
            .map_err(|e| Error::Factorization(format!("{e:?}")))?;
        Ok(Self { n: a.n(), llt })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = Mat::from_fn(self.n, 1, |i, _| b[i]);
        self.llt.solve_in_place(x.as_mut());
        x.col_as_slice(0).to_vec()
    }

    pub fn solve_in_place(&self, rhs: MatMut<'_, f64>) {
        self.llt.solve_in_place(rhs);
    }
}
