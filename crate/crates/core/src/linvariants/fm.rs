//! The Fontaine–Mazur side: pure flag geometry against Frobenius
//! eigenvectors. Nothing here touches complexes or cohomology.

use alloc::vec::Vec;

use super::LError;
use crate::exactlin::{self, Scalar};
use crate::phinmod::FilPhiNModule;

fn eigenvector(module: &FilPhiNModule, m: i64, i: usize) -> Result<Vec<Scalar>, LError> {
    let eigenvalue = Scalar::int_pow(module.p(), m - i as i64);
    let line = exactlin::eigenspace(module.phi(), &eigenvalue)?;
    if line.dim() != 1 {
        return Err(LError::EigenspaceDimension { index: i, dim: line.dim() });
    }
    Ok(line.basis()[0].clone())
}

/// Default `v_0`: the echelon basis vector of `ker(φ - p^m)`.
pub fn default_v0(module: &FilPhiNModule, m: i64) -> Result<Vec<Scalar>, LError> {
    eigenvector(module, m, 0)
}

/// `v_0, N v_0, …, N^{n-1} v_0`.
fn monodromy_chain(module: &FilPhiNModule, m: i64, v0: &[Scalar]) -> Result<Vec<Vec<Scalar>>, LError> {
    let d0 = exactlin::eigenspace(module.phi(), &Scalar::int_pow(module.p(), m))?;
    if v0.iter().all(Scalar::is_zero) || !d0.contains(v0) {
        return Err(LError::NotInEigenspace);
    }
    let mut chain = alloc::vec![v0.to_vec()];
    for _ in 1..module.n() {
        let next = module.mono().try_apply(chain.last().expect("nonempty"))?;
        if next.iter().all(Scalar::is_zero) {
            return Err(LError::MonodromyVanishes);
        }
        chain.push(next);
    }
    Ok(chain)
}

/// The scalar `L` with `v_0 - L v_1` spanning the projection of `F_{σ,n-1}`
/// to `D^{(0)} ⊕ D^{(1)}` along the eigenlines `D^{(2)}, …, D^{(n-1)}`.
pub fn fm_invariant(module: &FilPhiNModule, m: i64) -> Result<Scalar, LError> {
    fm_invariant_with(module, m, &default_v0(module, m)?)
}

pub fn fm_invariant_with(module: &FilPhiNModule, m: i64, v0: &[Scalar]) -> Result<Scalar, LError> {
    let n = module.n();
    if n < 2 {
        return Err(LError::OperatorIndex { i: 1, n });
    }
    let d0 = exactlin::eigenspace(module.phi(), &Scalar::int_pow(module.p(), m))?;
    if v0.iter().all(Scalar::is_zero) || !d0.contains(v0) {
        return Err(LError::NotInEigenspace);
    }
    let v1 = module.mono().try_apply(v0)?;
    if v1.iter().all(Scalar::is_zero) {
        return Err(LError::MonodromyVanishes);
    }
    let mut gens = alloc::vec![v0.to_vec(), v1];
    for i in 2..n {
        gens.push(eigenvector(module, m, i)?);
    }
    per_embedding(module, |sigma| {
        let top = module.flag(sigma).step(n - 1);
        let f = &top.basis()[0];
        let c = exactlin::solve_in_span(f, &gens).ok_or(LError::DegenerateProjection { embedding: sigma })?;
        if c[0].is_zero() {
            return Err(LError::DegenerateProjection { embedding: sigma });
        }
        Ok(-(&c[1] / &c[0]))
    })
}

/// The `i`-th operator at one embedding: `v_{i-1} - L^{(i)} v_i` spans the
/// image of `F_{n-i}/F_{n-i+1}` in `D^{(i-1)} ⊕ D^{(i)}`, where
/// `v_j = N^j v_0`.
pub fn fm_operator_at(module: &FilPhiNModule, m: i64, i: usize, sigma: usize) -> Result<Scalar, LError> {
    fm_operator_at_with(module, m, i, sigma, &default_v0(module, m)?)
}

pub fn fm_operator_at_with(
    module: &FilPhiNModule,
    m: i64,
    i: usize,
    sigma: usize,
    v0: &[Scalar],
) -> Result<Scalar, LError> {
    let n = module.n();
    if i == 0 || i >= n {
        return Err(LError::OperatorIndex { i, n });
    }
    if sigma >= module.e() {
        return Err(LError::EmbeddingIndex { sigma, e: module.e() });
    }
    let chain = monodromy_chain(module, m, v0)?;
    let flag = module.flag(sigma);
    let lower = flag.step(n - i + 1);
    let upper = flag.step(n - i);
    let x = upper.basis().iter().find(|b| !lower.contains(b)).expect("flag steps drop by one");
    let mut gens = lower.basis().to_vec();
    gens.extend(chain[i - 1..].iter().cloned());
    let c = exactlin::solve_in_span(x, &gens).ok_or(LError::DegenerateProjection { embedding: sigma })?;
    let k = lower.dim();
    if c[k].is_zero() {
        return Err(LError::DegenerateProjection { embedding: sigma });
    }
    Ok(-(&c[k + 1] / &c[k]))
}

/// The `i`-th operator, required to agree across embeddings.
pub fn fm_operator(module: &FilPhiNModule, m: i64, i: usize) -> Result<Scalar, LError> {
    let v0 = default_v0(module, m)?;
    per_embedding(module, |sigma| fm_operator_at_with(module, m, i, sigma, &v0))
}

/// All operators `L^{(1)}, …, L^{(n-1)}` at each embedding.
pub fn fm_operators(module: &FilPhiNModule, m: i64) -> Result<Vec<Vec<Scalar>>, LError> {
    let v0 = default_v0(module, m)?;
    (0..module.e())
        .map(|sigma| (1..module.n()).map(|i| fm_operator_at_with(module, m, i, sigma, &v0)).collect())
        .collect()
}

fn per_embedding(module: &FilPhiNModule, f: impl Fn(usize) -> Result<Scalar, LError>) -> Result<Scalar, LError> {
    let values = (0..module.e()).map(f).collect::<Result<Vec<_>, _>>()?;
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(LError::EmbeddingsDisagree(values));
    }
    Ok(values.into_iter().next().expect("at least one embedding"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instancegen::{fix_a, fix_b};

    #[test]
    fn fixture_values() {
        let (a, ma) = fix_a();
        assert_eq!(fm_invariant(&a, ma).unwrap(), Scalar::from_frac(7, 3));
        assert_eq!(fm_operator(&a, ma, 1).unwrap(), Scalar::from_frac(7, 3));
        let (b, mb) = fix_b();
        assert_eq!(fm_invariant(&b, mb).unwrap(), Scalar::from_int(-2));
        assert_eq!(fm_operator(&b, mb, 1).unwrap(), Scalar::from_int(-2));
        assert_eq!(fm_operator(&b, mb, 2).unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn operator_range() {
        let (b, mb) = fix_b();
        assert!(matches!(fm_operator(&b, mb, 0), Err(LError::OperatorIndex { .. })));
        assert!(matches!(fm_operator(&b, mb, 3), Err(LError::OperatorIndex { .. })));
    }

    #[test]
    fn scaling_v0() {
        let (b, mb) = fix_b();
        let v0: Vec<Scalar> = default_v0(&b, mb).unwrap().iter().map(|x| x * Scalar::from_frac(-5, 7)).collect();
        assert_eq!(fm_invariant_with(&b, mb, &v0).unwrap(), Scalar::from_int(-2));
        assert_eq!(fm_operator_at_with(&b, mb, 2, 0, &v0).unwrap(), Scalar::from_int(-1));
    }
}
