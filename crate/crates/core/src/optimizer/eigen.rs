use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Leading eigenpairs of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    /// Descending.
    pub values: Vec<f64>,
    /// Column `j` pairs with `values[j]`; unit norm, first nonzero entry
    /// positive.
    pub vectors: DMatrix<f64>,
}

pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Top-`k` eigenpairs by eigenvalue.
pub fn symmetric_eigen(m: &DMatrix<f64>, k: usize) -> Result<EigenPairs> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidParameter(format!("matrix is {}x{}", n, m.ncols())));
    }
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let scale = m.amax().max(1.0);
    let asym = asymmetry(m);
    if asym > 1e-12 * scale {
        return Err(Error::NonSymmetric(asym));
    }
    Ok(top_eigenpairs(m.clone(), k))
}

/// Same as [`symmetric_eigen`] without validation; takes ownership to skip
/// a copy.
pub(crate) fn top_eigenpairs(m: DMatrix<f64>, k: usize) -> EigenPairs {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let mut vectors = DMatrix::zeros(n, k);
    let mut values = Vec::with_capacity(k);
    for (col, &src) in order.iter().take(k).enumerate() {
        values.push(eig.eigenvalues[src]);
        let v = eig.eigenvectors.column(src);
        let tol = 1e-10 * v.amax();
        let flip = v.iter().find(|x| x.abs() > tol).is_some_and(|&x| x < 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, col)] = sign * v[r];
        }
    }
    EigenPairs { values, vectors }
}
