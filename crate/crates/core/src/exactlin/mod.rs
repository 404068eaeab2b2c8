//! Exact rational scalars, dense matrices and the subspace lattice.
//!
//! Everything downstream (filtrations, complexes, L-invariants) is phrased
//! in terms of the handful of operations exported here: kernels, images,
//! sums, intersections, preimages, eigenspaces and solving in a span.

mod matrix;
mod scalar;
mod subspace;

use alloc::vec::Vec;

pub use matrix::Matrix;
pub use scalar::{ParseScalarError, Scalar};
pub(crate) use subspace::unit;
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{rows}x{cols} matrix needs {} entries, got {got}", rows * cols)]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("rows have differing lengths")]
    Ragged,
}

/// `{v : M v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = unit(m.cols(), f);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, f)];
            }
            v
        })
        .collect();
    Subspace::span(m.cols(), &vectors).expect("kernel vectors have matching length")
}

/// Column space of `M`.
pub fn image(m: &Matrix) -> Subspace {
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.column(j)).collect();
    Subspace::span(m.rows(), &cols).expect("columns have matching length")
}

pub fn sum(u: &Subspace, v: &Subspace) -> Result<Subspace, LinError> {
    check_ambient(u, v)?;
    let mut vs = u.basis().to_vec();
    vs.extend(v.basis().iter().cloned());
    Subspace::span(u.ambient(), &vs)
}

/// Intersection, as the common solution set of both subspaces' equations.
pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, LinError> {
    check_ambient(u, v)?;
    let n = u.ambient();
    let mut eqs = u.annihilator().basis().to_vec();
    eqs.extend(v.annihilator().basis().iter().cloned());
    if eqs.is_empty() {
        return Ok(Subspace::full(n));
    }
    Ok(kernel(&Matrix::from_rows(&eqs)?))
}

/// `{v : M v ∈ U}`.
pub fn preimage(m: &Matrix, u: &Subspace) -> Result<Subspace, LinError> {
    if m.rows() != u.ambient() {
        return Err(LinError::DimensionMismatch { expected: m.rows(), got: u.ambient() });
    }
    let ann = u.annihilator();
    if ann.is_zero() {
        return Ok(Subspace::full(m.cols()));
    }
    let eqs = Matrix::from_rows(ann.basis())?.try_mul(m)?;
    Ok(kernel(&eqs))
}

/// `ker(M - λ I)`; the zero subspace when `λ` is not an eigenvalue.
pub fn eigenspace(m: &Matrix, lambda: &Scalar) -> Result<Subspace, LinError> {
    Ok(kernel(&m.shifted(lambda)?))
}

/// Coefficients `c` with `Σ c_i g_i = target`, or `None` when `target` is
/// outside the span. Free coefficients are set to zero, so the answer is
/// unique whenever the generators are independent.
pub fn solve_in_span(target: &[Scalar], generators: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    let n = target.len();
    if generators.iter().any(|g| g.len() != n) {
        return None;
    }
    let k = generators.len();
    let mut cols = generators.to_vec();
    cols.push(target.to_vec());
    let aug = Matrix::from_columns(n, &cols);
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut coeffs = alloc::vec![Scalar::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        coeffs[p] = r[(row, k)].clone();
    }
    Some(coeffs)
}

/// Solves `M x = b` for some `x`, if one exists.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    if b.len() != m.rows() {
        return None;
    }
    let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.column(j)).collect();
    solve_in_span(b, &cols)
}

fn check_ambient(u: &Subspace, v: &Subspace) -> Result<(), LinError> {
    if u.ambient() != v.ambient() {
        return Err(LinError::DimensionMismatch { expected: u.ambient(), got: v.ambient() });
    }
    Ok(())
}
