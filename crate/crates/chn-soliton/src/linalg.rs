//! Small dense linear algebra helpers shared across the crate.

use nalgebra::{DMatrix, DVector};

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Vectors whose residual after projection falls below `tol * max_norm` are
/// dropped, so the returned matrix has orthonormal columns spanning the input.
/// The input order is preserved, which keeps downstream output deterministic.
pub fn orthonormalize(vectors: &[DVector<f64>], tol: f64) -> DMatrix<f64> {
    let dim = vectors.first().map_or(0, |v| v.len());
    let max_norm = vectors
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &cols {
                let p = u.dot(&w);
                w.axpy(-p, u, 1.0);
            }
        }
        let n = w.norm();
        if n > tol * max_norm {
            cols.push(w / n);
        }
    }
    from_columns(dim, &cols)
}

/// Orthonormal basis of the orthogonal complement of `basis` in R^dim.
///
/// `basis` must already have orthonormal columns.
pub fn orthonormal_complement(basis: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let dim = basis.nrows();
    let mut cols: Vec<DVector<f64>> = basis.column_iter().map(|c| c.into_owned()).collect();
    let tangent = cols.len();
    for i in 0..dim {
        let mut w = DVector::zeros(dim);
        w[i] = 1.0;
        for _ in 0..2 {
            for u in &cols {
                let p = u.dot(&w);
                w.axpy(-p, u, 1.0);
            }
        }
        let n = w.norm();
        if n > tol {
            cols.push(w / n);
        }
    }
    let normals: Vec<DVector<f64>> = cols.split_off(tangent);
    from_columns(dim, &normals)
}

/// Builds a matrix out of columns, tolerating the empty case.
pub fn from_columns(dim: usize, cols: &[DVector<f64>]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

/// Orthonormal basis of the null space of `a`, from a singular value
/// decomposition; singular values below `tol_rel * sigma_max` count as zero.
pub fn null_space(a: &DMatrix<f64>, tol_rel: f64) -> Vec<DVector<f64>> {
    let (rows, cols) = a.shape();
    // v_t only carries min(rows, cols) right singular vectors; pad with zero
    // rows so every null direction is represented.
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("svd computed with right singular vectors");
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let mut out = Vec::new();
    for (i, row) in v_t.row_iter().enumerate() {
        let sv = if i < svd.singular_values.len() {
            svd.singular_values[i]
        } else {
            0.0
        };
        if sv <= tol_rel * smax.max(1e-300) {
            out.push(row.transpose());
        }
    }
    out
}

/// Minimum-norm least squares solution of `a x = b` together with the
/// numerical rank of `a`. Singular values below `tol_rel * sigma_max` are
/// treated as zero.
pub fn lstsq_min_norm(a: &DMatrix<f64>, b: &DVector<f64>, tol_rel: f64) -> (DVector<f64>, usize) {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let eps = tol_rel * smax.max(1e-300);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let x = svd.solve(b, eps).expect("svd solve");
    (x, rank)
}

/// Projection of `v` onto the column span of an orthonormal `basis`.
pub fn project(basis: &DMatrix<f64>, v: &DVector<f64>) -> DVector<f64> {
    basis * (basis.transpose() * v)
}

/// Largest absolute entry of a matrix.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

/// Groups a descending-sorted list of values into clusters whose consecutive
/// gaps stay within `tol`; returns index ranges.
pub fn cluster_descending(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i - 1] - values[i]).abs() > tol {
            out.push(start..i);
            start = i;
        }
    }
    out
}
