//! Upper-triangular CSR storage for symmetric matrices and the equation map.

use faer::sparse::{SparseColMatRef, SymbolicSparseColMatRef};
use faer::Mat;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mesh::{DofMap, StructuredMesh};

const NONE: usize = usize::MAX;

/// Monotone map from global DOFs to the retained equation numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct EquationMap {
    eq_of_dof: Vec<usize>,
    dof_of_eq: Vec<usize>,
}

impl EquationMap {
    pub fn full(n_dofs: usize) -> Self {
        Self { eq_of_dof: (0..n_dofs).collect(), dof_of_eq: (0..n_dofs).collect() }
    }

    pub fn retaining(n_dofs: usize, keep: impl Fn(usize) -> bool) -> Self {
        let mut eq_of_dof = vec![NONE; n_dofs];
        let mut dof_of_eq = Vec::new();
        for (dof, slot) in eq_of_dof.iter_mut().enumerate() {
            if keep(dof) {
                *slot = dof_of_eq.len();
                dof_of_eq.push(dof);
            }
        }
        Self { eq_of_dof, dof_of_eq }
    }

    pub fn n_dofs(&self) -> usize {
        self.eq_of_dof.len()
    }

    pub fn n_eq(&self) -> usize {
        self.dof_of_eq.len()
    }

    pub fn eq(&self, dof: usize) -> Option<usize> {
        match self.eq_of_dof[dof] {
            NONE => None,
            e => Some(e),
        }
    }

    pub fn dof(&self, eq: usize) -> usize {
        self.dof_of_eq[eq]
    }

    pub fn dofs(&self) -> &[usize] {
        &self.dof_of_eq
    }

    /// Equations retained by both maps, numbered within `self`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::retaining(self.n_dofs(), |d| self.eq(d).is_some() && keep(d))
    }

    /// Scatter an equation vector into a full DOF vector, zero elsewhere.
    pub fn expand(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_dofs()];
        for (e, &d) in self.dof_of_eq.iter().enumerate() {
            out[d] = x[e];
        }
        out
    }

    /// Gather the retained entries of a full DOF vector.
    pub fn gather(&self, full: &[f64]) -> Vec<f64> {
        self.dof_of_eq.iter().map(|&d| full[d]).collect()
    }
}

/// Symmetric matrix stored as its upper triangle (diagonal included) in CSR.
///
/// Read as CSC, the same arrays are the lower triangle, which is what the
/// sparse Cholesky consumes.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricCsr {
    n: usize,
    rowptr: Vec<u32>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SymmetricCsr {
    pub fn from_parts(n: usize, rowptr: Vec<u32>, cols: Vec<u32>, vals: Vec<f64>) -> Result<Self> {
        if rowptr.len() != n + 1 || cols.len() != vals.len() || rowptr[n] as usize != cols.len()
        {
            return Err(Error::Argument("inconsistent CSR arrays".into()));
        }
        for r in 0..n {
            let row = &cols[rowptr[r] as usize..rowptr[r + 1] as usize];
            if row.first().is_some_and(|&c| (c as usize) < r)
                || row.windows(2).any(|w| w[0] >= w[1])
                || row.last().is_some_and(|&c| c as usize >= n)
            {
                return Err(Error::Argument(format!("row {r} is not sorted upper-triangular")));
            }
        }
        Ok(Self { n, rowptr, cols, vals })
    }

    /// Build from `(row, col, value)` triplets; both triangles may be given and are folded.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut t: Vec<(usize, usize, f64)> =
            triplets.iter().map(|&(i, j, v)| (i.min(j), i.max(j), v)).collect();
        if t.iter().any(|&(_, j, _)| j >= n) {
            return Err(Error::Argument("triplet index out of range".into()));
        }
        t.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut rowptr = vec![0u32; n + 1];
        let mut cols: Vec<u32> = Vec::new();
        let mut vals: Vec<f64> = Vec::new();
        let mut last = None;
        for (i, j, v) in t {
            if last == Some((i, j)) {
                *vals.last_mut().expect("entry exists") += v;
            } else {
                cols.push(j as u32);
                vals.push(v);
                rowptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for r in 0..n {
            rowptr[r + 1] += rowptr[r];
        }
        Self::from_parts(n, rowptr, cols, vals)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz_stored(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, r: usize) -> (&[u32], &[f64]) {
        let (a, b) = (self.rowptr[r] as usize, self.rowptr[r + 1] as usize);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn row_mut(&mut self, r: usize) -> (&[u32], &mut [f64]) {
        let (a, b) = (self.rowptr[r] as usize, self.rowptr[r + 1] as usize);
        (&self.cols[a..b], &mut self.vals[a..b])
    }

    pub fn rowptr(&self) -> &[u32] {
        &self.rowptr
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }

    pub fn vals(&self) -> &[f64] {
        &self.vals
    }

    pub fn vals_mut(&mut self) -> &mut [f64] {
        &mut self.vals
    }

    /// Position of entry `(i, j)` in storage, if it is in the pattern.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = (i.min(j), i.max(j));
        let (cols, _) = self.row(i);
        cols.binary_search(&(j as u32)).ok().map(|p| self.rowptr[i] as usize + p)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.position(i, j).map_or(0.0, |p| self.vals[p])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for r in 0..self.n {
            let (cols, vals) = self.row(r);
            let xr = x[r];
            let mut acc = 0.0;
            for (&c, &v) in cols.iter().zip(vals) {
                let c = c as usize;
                acc += v * x[c];
                if c != r {
                    y[c] += v * xr;
                }
            }
            y[r] += acc;
        }
        y
    }

    /// `xᵀ A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.matvec(y).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for r in 0..self.n {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                s += if c as usize == r { v * v } else { 2.0 * v * v };
            }
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.vals.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Number of stored entries whose value is not exactly zero.
    pub fn nnz_nonzero(&self) -> usize {
        self.vals.iter().filter(|v| **v != 0.0).count()
    }

    pub fn scale(&mut self, s: f64) {
        self.vals.iter_mut().for_each(|v| *v *= s);
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::<f64>::zeros(self.n, self.n);
        for r in 0..self.n {
            let (cols, vals) = self.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                m[(r, c as usize)] = v;
                m[(c as usize, r)] = v;
            }
        }
        m
    }

    /// Lower-triangular CSC view of the same storage.
    pub fn lower_csc(&self) -> SparseColMatRef<'_, u32, f64> {
        let sym = SymbolicSparseColMatRef::new_checked(self.n, self.n, &self.rowptr, None, &self.cols);
        SparseColMatRef::new(sym, &self.vals)
    }

    /// Principal submatrix on the indices `keep` (strictly increasing).
    pub fn principal_submatrix(&self, keep: &[usize]) -> Result<Self> {
        let mut new_index = vec![NONE; self.n];
        for (k, &i) in keep.iter().enumerate() {
            if i >= self.n || (k > 0 && keep[k - 1] >= i) {
                return Err(Error::Argument("submatrix indices must increase".into()));
            }
            new_index[i] = k;
        }
        let mut rowptr = vec![0u32; keep.len() + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for (k, &i) in keep.iter().enumerate() {
            let (c, v) = self.row(i);
            for (&c, &v) in c.iter().zip(v) {
                let ni = new_index[c as usize];
                if ni != NONE {
                    cols.push(ni as u32);
                    vals.push(v);
                }
            }
            rowptr[k + 1] = cols.len() as u32;
        }
        Self::from_parts(keep.len(), rowptr, cols, vals)
    }
}

/// Node-window sparsity of the nonlocal operators.
///
/// With reach `n` elements, node `b` couples to node `a` when
/// `|Δi| ≤ n+1 ∧ |Δj| ≤ n+1`, or `|Δj| ≤ 1 ∧ |Δi| ≤ 2n+1`, or `|Δi| ≤ 1 ∧ |Δj| ≤ 2n+1`
/// (square from mixed-axis products, cross arms from same-axis products).
pub fn window_pattern(
    mesh: &StructuredMesh,
    dofs: &DofMap,
    eqs: &EquationMap,
    reach: (usize, usize),
    exec: Execution,
) -> Result<SymmetricCsr> {
    let nn = mesh.n_nodes();
    let per = dofs.dofs_per_node();
    // first equation of every node
    let mut node_eq = vec![0usize; nn + 1];
    for node in 0..nn {
        let count = (0..per).filter(|s| eqs.eq(node * per + s).is_some()).count();
        node_eq[node + 1] = node_eq[node] + count;
    }
    let (rx, ry) = reach;
    let segments = |node: usize| -> Vec<(usize, usize)> {
        let (ia, ja) = mesh.node_ij(node);
        let (ia, ja) = (ia as isize, ja as isize);
        let (nx, ny) = (mesh.nx as isize, mesh.ny as isize);
        let (rx, ry) = (rx as isize, ry as isize);
        let mut out = Vec::new();
        for jb in (ja - 2 * ry - 1).max(0)..=(ja + 2 * ry + 1).min(ny) {
            let dj = (jb - ja).abs();
            let w = if dj <= 1 {
                2 * rx + 1
            } else if dj <= ry + 1 {
                rx + 1
            } else {
                1
            };
            let i0 = (ia - w).max(0);
            let i1 = (ia + w).min(nx);
            let n0 = mesh.node_index(i0 as usize, jb as usize);
            let n1 = mesh.node_index(i1 as usize, jb as usize);
            let (e0, e1) = (node_eq[n0], node_eq[n1 + 1]);
            if e1 > e0 {
                out.push((e0, e1));
            }
        }
        out
    };
    let n_eq = eqs.n_eq();
    let eq_node: Vec<usize> = (0..n_eq).map(|e| eqs.dof(e) / per).collect();
    let per_node: Vec<Vec<(usize, usize)>> = exec::map_range(exec, nn, segments);
    let mut rowptr = vec![0usize; n_eq + 1];
    for r in 0..n_eq {
        let len: usize = per_node[eq_node[r]]
            .iter()
            .map(|&(a, b)| b.saturating_sub(a.max(r)))
            .sum();
        rowptr[r + 1] = rowptr[r] + len;
    }
    let nnz = rowptr[n_eq];
    if nnz > u32::MAX as usize {
        return Err(Error::Unsupported(format!("{nnz} stored entries exceed 32-bit indexing")));
    }
    let mut cols = vec![0u32; nnz];
    {
        let mut rows: Vec<&mut [u32]> = Vec::with_capacity(n_eq);
        let mut rest = cols.as_mut_slice();
        for r in 0..n_eq {
            let (head, tail) = rest.split_at_mut(rowptr[r + 1] - rowptr[r]);
            rows.push(head);
            rest = tail;
        }
        exec::for_each_mut(exec, &mut rows, |r, row| {
            let mut k = 0;
            for &(a, b) in &per_node[eq_node[r]] {
                for c in a.max(r)..b {
                    row[k] = c as u32;
                    k += 1;
                }
            }
        });
    }
    let rowptr: Vec<u32> = rowptr.into_iter().map(|p| p as u32).collect();
    Ok(SymmetricCsr { n: n_eq, rowptr, cols, vals: vec![0.0; nnz] })
}
