//! Single-field edits for negative tests. Each returns a structurally valid
//! module or the construction error.

use alloc::vec::Vec;

use crate::exactlin::{Scalar, Subspace};
use crate::phinmod::{FilPhiNModule, ModuleError, WeightedFlag};

pub fn set_phi_entry(module: &FilPhiNModule, i: usize, j: usize, value: Scalar) -> Result<FilPhiNModule, ModuleError> {
    let mut phi = module.phi().clone();
    phi[(i, j)] = value;
    module.with_phi(phi)
}

pub fn set_mono_entry(module: &FilPhiNModule, i: usize, j: usize, value: Scalar) -> Result<FilPhiNModule, ModuleError> {
    let mut mono = module.mono().clone();
    mono[(i, j)] = value;
    module.with_mono(mono)
}

/// Replaces `F_{σ,step}` by the span of `vectors`.
pub fn set_flag_step(
    module: &FilPhiNModule,
    sigma: usize,
    step: usize,
    vectors: &[Vec<Scalar>],
) -> Result<FilPhiNModule, ModuleError> {
    let flag = module.flag(sigma);
    let mut steps = flag.steps().to_vec();
    steps[step] = Subspace::span(module.n(), vectors)?;
    module.with_flag(sigma, WeightedFlag::new(steps, flag.weights().to_vec())?)
}

/// Sets the label of step `index + 1` at embedding `σ`.
pub fn set_weight(
    module: &FilPhiNModule,
    sigma: usize,
    index: usize,
    value: i64,
) -> Result<FilPhiNModule, ModuleError> {
    let flag = module.flag(sigma);
    let mut weights = flag.weights().to_vec();
    weights[index] = value;
    module.with_flag(sigma, WeightedFlag::new(flag.steps().to_vec(), weights)?)
}
