use alloc::vec::Vec;

use crate::exactlin::{self, Matrix, Scalar, Subspace};

/// A finite cochain complex `C^0 → C^1 → … → C^k` of coordinate spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

/// `H^k` of a complex: its dimension and cocycles whose classes form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

impl CochainComplex {
    /// `diffs[k]` maps `C^k` to `C^{k+1}`. Shapes are checked, `d∘d = 0` is
    /// left to the caller.
    pub fn new(dims: Vec<usize>, diffs: Vec<Matrix>) -> Option<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return None;
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return None;
            }
        }
        Some(CochainComplex { dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        self.diffs.get(k)
    }

    /// First nonzero composite `d_{k+1} d_k`, if any.
    pub fn square_defect(&self) -> Option<(usize, Matrix)> {
        self.diffs.windows(2).enumerate().find_map(|(k, w)| {
            let c = w[1].try_mul(&w[0]).expect("shapes checked at construction");
            (!c.is_zero()).then_some((k, c))
        })
    }

    pub fn cocycles(&self, k: usize) -> Subspace {
        match self.dims.get(k) {
            None => Subspace::zero(0),
            Some(&d) => match self.diffs.get(k) {
                Some(m) => exactlin::kernel(m),
                None => Subspace::full(d),
            },
        }
    }

    pub fn coboundaries(&self, k: usize) -> Subspace {
        match self.dims.get(k) {
            None => Subspace::zero(0),
            Some(&d) => match k.checked_sub(1).and_then(|j| self.diffs.get(j)) {
                Some(m) => exactlin::image(m),
                None => Subspace::zero(d),
            },
        }
    }

    pub fn is_cocycle(&self, k: usize, v: &[Scalar]) -> bool {
        self.cocycles(k).contains(v)
    }

    pub fn is_coboundary(&self, k: usize, v: &[Scalar]) -> bool {
        self.coboundaries(k).contains(v)
    }

    /// Whether two cocycles define the same class.
    pub fn same_class(&self, k: usize, u: &[Scalar], v: &[Scalar]) -> bool {
        if u.len() != v.len() {
            return false;
        }
        let diff: Vec<Scalar> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        self.is_coboundary(k, &diff)
    }

    /// Coordinates of the class of `v` in the basis `classes`, modulo
    /// coboundaries; `None` if `v` is not in their span plus coboundaries.
    pub fn class_coordinates(&self, k: usize, v: &[Scalar], classes: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
        let mut gens = classes.to_vec();
        gens.extend(self.coboundaries(k).basis().iter().cloned());
        let mut c = exactlin::solve_in_span(v, &gens)?;
        c.truncate(classes.len());
        Some(c)
    }

    /// Whether the classes of the given cocycles are linearly independent.
    pub fn independent(&self, k: usize, classes: &[Vec<Scalar>]) -> bool {
        let b = self.coboundaries(k);
        let mut all = b.basis().to_vec();
        all.extend(classes.iter().cloned());
        match Subspace::span(b.ambient(), &all) {
            Ok(s) => s.dim() == b.dim() + classes.len(),
            Err(_) => false,
        }
    }

    pub fn h(&self, k: usize) -> Cohomology {
        let z = self.cocycles(k);
        let b = self.coboundaries(k);
        let mut span = b.clone();
        let mut representatives = Vec::new();
        for v in z.basis() {
            if !span.contains(v) {
                representatives.push(v.clone());
                span = exactlin::sum(
                    &span,
                    &Subspace::span(span.ambient(), core::slice::from_ref(v)).expect("same ambient"),
                )
                .expect("same ambient");
            }
        }
        Cohomology { degree: k, dim: representatives.len(), representatives }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top()).map(|k| if k % 2 == 0 { self.h(k).dim as i64 } else { -(self.h(k).dim as i64) }).sum()
    }
}
