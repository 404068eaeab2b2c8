use alloc::vec::Vec;
use core::fmt;

use super::{LinError, Matrix, Scalar};

/// A linear subspace of the coordinate space of dimension `ambient`.
///
/// The basis is kept in reduced row-echelon form (leftmost pivots equal to
/// one, zeros above and below), which makes it a canonical representative:
/// two subspaces are equal exactly when their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Self, LinError> {
        for v in vectors {
            if v.len() != ambient {
                return Err(LinError::DimensionMismatch { expected: ambient, got: v.len() });
            }
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = Matrix::from_rows(vectors)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis, pivots })
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<_> = indices.iter().map(|&i| unit(ambient, i)).collect();
        Subspace::span(ambient, &vs).expect("coordinate indices in range")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns are the basis vectors: the inclusion of coordinates on `self`
    /// into the ambient space.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut residual = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = residual[p].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                *r = &*r - &c * x;
            }
        }
        residual.iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` with respect to the stored basis, when `v` lies in
    /// the subspace. For an echelon basis these are the pivot entries.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    /// Equations cutting out the subspace: rows `a` with `a . v = 0` for all
    /// `v` in `self`, spanning the annihilator.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = Matrix::from_rows(&self.basis).expect("uniform basis");
        super::kernel(&m)
    }

    /// Linear map onto coordinates of the quotient `ambient / self`.
    ///
    /// Quotient coordinates are the non-pivot positions: a vector is first
    /// reduced against the echelon basis, then its non-pivot entries are read
    /// off. The kernel of the returned matrix is exactly `self`.
    pub fn quotient_map(&self) -> Matrix {
        let free = self.free_positions();
        let mut q = Matrix::zeros(free.len(), self.ambient);
        for (r, &k) in free.iter().enumerate() {
            q[(r, k)] = Scalar::one();
            for (b, &p) in self.basis.iter().zip(&self.pivots) {
                q[(r, p)] = -&b[k];
            }
        }
        q
    }

    /// A section of [`Self::quotient_map`]: quotient coordinates placed at
    /// the non-pivot positions, zeros elsewhere.
    pub fn quotient_section(&self) -> Matrix {
        let free = self.free_positions();
        let mut s = Matrix::zeros(self.ambient, free.len());
        for (c, &k) in free.iter().enumerate() {
            s[(k, c)] = Scalar::one();
        }
        s
    }

    fn free_positions(&self) -> Vec<usize> {
        (0..self.ambient).filter(|k| !self.pivots.contains(k)).collect()
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Result<Subspace, LinError> {
        if m.cols() != self.ambient {
            return Err(LinError::DimensionMismatch { expected: m.cols(), got: self.ambient });
        }
        let imgs = self.basis.iter().map(|b| m.try_apply(b)).collect::<Result<Vec<_>, _>>()?;
        Subspace::span(m.rows(), &imgs)
    }

    /// Re-expresses `self` (contained in `container`) in the coordinates of
    /// `container`'s echelon basis.
    pub fn in_coordinates_of(&self, container: &Subspace) -> Option<Subspace> {
        let coords = self.basis.iter().map(|b| container.coordinates(b)).collect::<Option<Vec<_>>>()?;
        Subspace::span(container.dim(), &coords).ok()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = alloc::vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}} in dim {}", self.ambient)
    }
}
