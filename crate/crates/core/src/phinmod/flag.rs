use alloc::vec::Vec;

use super::ModuleError;
use crate::exactlin::{self, Matrix, Subspace};

/// A complete decreasing flag `F_0 ⊃ F_1 ⊃ … ⊃ F_n` with `dim F_i = n - i`,
/// and an integer label `w_i` on each step `F_{i-1}/F_i`.
///
/// Labels are the jumps of the de Rham filtration: `Fil^j` is the flag
/// member obtained after dropping every step whose label is below `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedFlag {
    steps: Vec<Subspace>,
    weights: Vec<i64>,
}

impl WeightedFlag {
    pub fn new(steps: Vec<Subspace>, weights: Vec<i64>) -> Result<Self, ModuleError> {
        let n = weights.len();
        if steps.len() != n + 1 {
            return Err(ModuleError::FlagLength { expected: n + 1, got: steps.len() });
        }
        for (i, s) in steps.iter().enumerate() {
            if s.ambient() != n {
                return Err(ModuleError::FlagAmbient { step: i, expected: n, got: s.ambient() });
            }
            if s.dim() != n - i {
                return Err(ModuleError::FlagStepDimension { step: i, expected: n - i, got: s.dim() });
            }
        }
        for i in 0..n {
            if !steps[i + 1].is_subspace_of(&steps[i]) {
                return Err(ModuleError::FlagNotNested { step: i + 1 });
            }
        }
        if weights.windows(2).any(|w| w[0] > w[1]) {
            return Err(ModuleError::WeightsNotSorted);
        }
        Ok(WeightedFlag { steps, weights })
    }

    /// Builds the flag from one new generator per step: `F_{n-1}` is spanned
    /// by `generators[n-1]`, `F_{i}` adds `generators[i]` to `F_{i+1}`.
    /// `generators[0]` is unused; `F_0` is the full space.
    pub fn from_generators(
        n: usize,
        generators: &[alloc::vec::Vec<crate::exactlin::Scalar>],
        weights: Vec<i64>,
    ) -> Result<Self, ModuleError> {
        if generators.len() != n {
            return Err(ModuleError::FlagLength { expected: n, got: generators.len() });
        }
        let mut steps = alloc::vec![Subspace::zero(n)];
        for i in (1..n).rev() {
            let prev = steps.last().expect("nonempty");
            let mut vs = prev.basis().to_vec();
            vs.push(generators[i].clone());
            steps.push(Subspace::span(n, &vs)?);
        }
        steps.push(Subspace::full(n));
        steps.reverse();
        WeightedFlag::new(steps, weights)
    }

    /// The one-step flag on a line with a single label.
    pub fn line(weight: i64) -> Self {
        WeightedFlag { steps: alloc::vec![Subspace::full(1), Subspace::zero(1)], weights: alloc::vec![weight] }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    pub fn step(&self, i: usize) -> &Subspace {
        &self.steps[i]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// `Fil^j`.
    pub fn fil(&self, j: i64) -> &Subspace {
        let below = self.weights.iter().filter(|&&w| w < j).count();
        &self.steps[below]
    }

    pub fn shift_weights(&self, delta: i64) -> Self {
        WeightedFlag { steps: self.steps.clone(), weights: self.weights.iter().map(|w| w + delta).collect() }
    }

    /// Image under an invertible change of coordinates.
    pub fn transform(&self, g: &Matrix) -> Result<Self, ModuleError> {
        let steps = self.steps.iter().map(|s| s.map(g)).collect::<Result<Vec<_>, _>>()?;
        WeightedFlag::new(steps, self.weights.clone())
    }

    /// Dual flag: `F^∨_i = ann(F_{n-i})`, labels negated and reversed.
    pub fn dual(&self) -> Self {
        let n = self.dim();
        let steps = (0..=n).map(|i| self.steps[n - i].annihilator()).collect();
        let weights = self.weights.iter().rev().map(|w| -w).collect();
        WeightedFlag { steps, weights }
    }

    /// Flag induced on a subspace: `F_i ∩ S`, written in the echelon
    /// coordinates of `S`. Steps that collapse lose their labels.
    pub fn restrict(&self, sub: &Subspace) -> Result<Self, ModuleError> {
        let chain = self
            .steps
            .iter()
            .map(|f| {
                let meet = exactlin::intersect(f, sub)?;
                Ok(meet.in_coordinates_of(sub).expect("intersection lies in the subspace"))
            })
            .collect::<Result<Vec<_>, ModuleError>>()?;
        self.collapse(sub.dim(), chain)
    }

    /// Flag induced on a quotient by the surjection `q`: the images `q(F_i)`.
    pub fn push_forward(&self, q: &Matrix) -> Result<Self, ModuleError> {
        let chain = self.steps.iter().map(|f| f.map(q)).collect::<Result<Vec<_>, _>>()?;
        self.collapse(q.rows(), chain)
    }

    fn collapse(&self, dim: usize, chain: Vec<Subspace>) -> Result<Self, ModuleError> {
        if chain[0].dim() != dim || !chain[chain.len() - 1].is_zero() {
            return Err(ModuleError::InducedFlag);
        }
        let mut steps = alloc::vec![chain[0].clone()];
        let mut weights = Vec::new();
        for i in 1..chain.len() {
            match chain[i - 1].dim() - chain[i].dim() {
                0 => {}
                1 => {
                    steps.push(chain[i].clone());
                    weights.push(self.weights[i - 1]);
                }
                _ => return Err(ModuleError::InducedFlag),
            }
        }
        WeightedFlag::new(steps, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Scalar;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn fix_a_flag() -> WeightedFlag {
        WeightedFlag::from_generators(2, &[vec![s(1), s(0)], vec![s(1), Scalar::from_frac(-7, 3)]], vec![0, 2]).unwrap()
    }

    #[test]
    fn fil_reads_labels() {
        let f = fix_a_flag();
        assert!(f.fil(0).is_full());
        assert_eq!(f.fil(1).dim(), 1);
        assert_eq!(f.fil(2).dim(), 1);
        assert!(f.fil(3).is_zero());
        assert!(f.shift_weights(-1).fil(0).dim() == 1);
    }

    #[test]
    fn rejects_bad_flags() {
        let full = Subspace::full(2);
        let zero = Subspace::zero(2);
        let line = Subspace::coordinate(2, &[0]);
        assert!(WeightedFlag::new(vec![full.clone(), line.clone(), zero.clone()], vec![2, 0]).is_err());
        assert!(WeightedFlag::new(vec![full.clone(), full.clone(), zero.clone()], vec![0, 1]).is_err());
        assert!(WeightedFlag::new(vec![full, line], vec![0, 1]).is_err());
    }

    #[test]
    fn dual_is_involutive() {
        let f = fix_a_flag();
        assert_eq!(f.dual().weights(), &[-2, 0]);
        assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn restriction_and_push_forward() {
        let f = fix_a_flag();
        // The line span{e2} meets F_1 trivially, so it keeps the lower label.
        let sub = Subspace::coordinate(2, &[1]);
        assert_eq!(f.restrict(&sub).unwrap().weights(), &[0]);
        let q = sub.quotient_map();
        assert_eq!(f.push_forward(&q).unwrap().weights(), &[2]);
    }
}
