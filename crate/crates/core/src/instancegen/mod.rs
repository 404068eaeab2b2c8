//! Seeded generation of admissible modules with a planted invariant, the
//! hand-checked fixtures, mutation helpers and the test corpus.
//!
//! # Algorithm
//!
//! The random source is ChaCha8 seeded with `seed_from_u64(seed)`. Every
//! draw is `next_u64()`; a bounded integer in `0..k` is `next_u64() % k`.
//! A random rational has numerator in `-10..=10` and denominator in `1..=10`
//! (one draw each, numerator first).
//!
//! 1. Unless the basis is [`Basis::Identity`], draw `g` entry by entry in
//!    row-major order, redrawing the whole matrix until it is invertible.
//! 2. For each embedding in order: draw `c_2, …, c_{n-1}` and set
//!    `F_{n-1} = span(v_0 - L v_1 + Σ c_j v_j)`; then for `i = n-2` down to
//!    `1` draw a vector `u_i` (entries in order) until
//!    `F_i = F_{i+1} + span(u_i)` has dimension `n-i` and meets
//!    `Fil^φ_i = span(v_{n-i}, …, v_{n-1})` trivially.
//! 3. In the eigenbasis `φ = diag(p^m, …, p^{m-n+1})` and `N v_i = v_{i+1}`.
//!    The module returned is the image of all data under `g`.
//!
//! Each redraw loop gives up after 64 attempts.

mod corpus;
mod fixtures;
mod mutate;

use alloc::vec::Vec;

pub use corpus::{corpus, rank_one_family, CorpusGroup};
pub use fixtures::{fix_a, fix_a_degenerate, fix_a_spec, fix_b, fix_b_eigen_data};
pub use mutate::{set_flag_step, set_mono_entry, set_phi_entry, set_weight};

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::exactlin::{self, Matrix, Scalar, Subspace};
use crate::phinmod::{is_prime, FilPhiNModule, ModuleError, WeightedFlag};

const MAX_TRIES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Data stays in the Frobenius eigenbasis.
    Identity,
    /// Data is moved by a seeded random invertible matrix.
    Seeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub p: u64,
    pub n: usize,
    pub m: i64,
    /// `k_{σ,1} ≤ … ≤ k_{σ,n}` for each embedding; `e` is the length.
    pub weights: Vec<Vec<i64>>,
    pub planted_l: Scalar,
    pub allow_degenerate: bool,
    pub seed: u64,
    pub basis: Basis,
}

impl GenSpec {
    pub fn e(&self) -> usize {
        self.weights.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    Spec(&'static str),
    #[error("gave up drawing {0} after {MAX_TRIES} attempts")]
    RetriesExhausted(&'static str),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// Flag data in the eigenbasis: generators `g_1, …, g_{n-1}` with
/// `F_i = span(g_i, …, g_{n-1})`, plus weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenFlag {
    pub generators: Vec<Vec<Scalar>>,
    pub weights: Vec<i64>,
}

pub(crate) struct Draws(ChaCha8Rng);

impl Draws {
    pub(crate) fn new(seed: u64) -> Self {
        Draws(ChaCha8Rng::seed_from_u64(seed))
    }

    pub(crate) fn below(&mut self, k: u64) -> u64 {
        self.0.next_u64() % k
    }

    pub(crate) fn raw(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub(crate) fn rational(&mut self) -> Scalar {
        let num = self.below(21) as i64 - 10;
        let den = self.below(10) as i64 + 1;
        Scalar::from_frac(num, den)
    }

    fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.rational()).collect()
    }
}

fn check_spec(spec: &GenSpec) -> Result<(), GenError> {
    if !is_prime(spec.p) {
        return Err(GenError::Spec("p must be prime"));
    }
    if spec.n < 2 {
        return Err(GenError::Spec("n must be at least 2"));
    }
    if spec.weights.is_empty() {
        return Err(GenError::Spec("need at least one embedding"));
    }
    for k in &spec.weights {
        if k.len() != spec.n {
            return Err(GenError::Spec("each embedding needs n weights"));
        }
        if k.windows(2).any(|w| w[0] > w[1]) {
            return Err(GenError::Spec("weights must be nondecreasing"));
        }
        if !(k[spec.n - 1] > spec.m && spec.m > k[spec.n - 2]) {
            return Err(GenError::Spec("weights must satisfy k_n > m > k_{n-1}"));
        }
    }
    if spec.planted_l.is_zero() && !spec.allow_degenerate {
        return Err(GenError::Spec("planted L is zero without the degenerate flag"));
    }
    Ok(())
}

/// A module passing every admissibility check, with `L_FM = spec.planted_l`.
pub fn generate(spec: &GenSpec) -> Result<FilPhiNModule, GenError> {
    check_spec(spec)?;
    let n = spec.n;
    let mut draws = Draws::new(spec.seed);
    let g = match spec.basis {
        Basis::Identity => Matrix::identity(n),
        Basis::Seeded => random_invertible(&mut draws, n)?,
    };
    let fil_phi: Vec<Subspace> = (0..=n).map(|i| Subspace::coordinate(n, &((n - i)..n).collect::<Vec<_>>())).collect();
    let mut flags = Vec::with_capacity(spec.e());
    for k in &spec.weights {
        let mut top = alloc::vec![Scalar::zero(); n];
        top[0] = Scalar::one();
        top[1] = -&spec.planted_l;
        for x in top.iter_mut().skip(2) {
            *x = draws.rational();
        }
        let mut generators = alloc::vec![Vec::new(); n];
        generators[n - 1] = top.clone();
        let mut current = Subspace::span(n, &[top]).expect("length n");
        for i in (1..n - 1).rev() {
            let mut accepted = None;
            for _ in 0..MAX_TRIES {
                let u = draws.vector(n);
                let mut vs = current.basis().to_vec();
                vs.push(u.clone());
                let next = Subspace::span(n, &vs).expect("length n");
                if next.dim() == n - i && exactlin::intersect(&next, &fil_phi[i]).expect("same ambient").is_zero() {
                    accepted = Some((u, next));
                    break;
                }
            }
            let (u, next) = accepted.ok_or(GenError::RetriesExhausted("flag step"))?;
            generators[i] = u;
            current = next;
        }
        generators[0] = alloc::vec![Scalar::zero(); n];
        flags.push(EigenFlag { generators, weights: k.clone() });
    }
    Ok(build_from_eigen_data(spec.p, spec.m, n, &flags, &g)?)
}

/// A seeded invertible `n × n` matrix, drawn as in step 1 of [`generate`].
pub fn random_change_of_basis(n: usize, seed: u64) -> Result<Matrix, GenError> {
    random_invertible(&mut Draws::new(seed), n)
}

fn random_invertible(draws: &mut Draws, n: usize) -> Result<Matrix, GenError> {
    for _ in 0..MAX_TRIES {
        let entries = (0..n * n).map(|_| draws.rational()).collect();
        let g = Matrix::from_entries(n, n, entries).expect("n*n entries");
        if g.rank() == n {
            return Ok(g);
        }
    }
    Err(GenError::RetriesExhausted("change of basis"))
}

/// Assembles the module from eigenbasis data and moves it by `g`.
pub fn build_from_eigen_data(
    p: u64,
    m: i64,
    n: usize,
    flags: &[EigenFlag],
    g: &Matrix,
) -> Result<FilPhiNModule, ModuleError> {
    let diag: Vec<Scalar> = (0..n).map(|i| Scalar::int_pow(p, m - i as i64)).collect();
    let mut mono = Matrix::zeros(n, n);
    for i in 0..n - 1 {
        mono[(i + 1, i)] = Scalar::one();
    }
    let flags = flags
        .iter()
        .map(|f| WeightedFlag::from_generators(n, &f.generators, f.weights.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    FilPhiNModule::new(p, Matrix::diagonal(&diag), mono, flags, 0)?.transform(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linvariants::fm_invariant;
    use crate::phinmod::validate;

    fn spec(n: usize, seed: u64) -> GenSpec {
        let mut k: Vec<i64> = (0..n as i64).collect();
        k[n - 1] = n as i64 + 2;
        GenSpec {
            p: 3,
            n,
            m: n as i64 - 1,
            weights: alloc::vec![k.clone(), k],
            planted_l: Scalar::from_frac(-5, 4),
            allow_degenerate: false,
            seed,
            basis: Basis::Seeded,
        }
    }

    #[test]
    fn generated_modules_are_admissible() {
        for n in 2..=4 {
            for seed in 0..3 {
                let s = spec(n, seed);
                let module = generate(&s).unwrap();
                let r = validate(&module, s.m).unwrap();
                assert!(r.passed(), "n={n} seed={seed}: {r:?}");
                assert_eq!(fm_invariant(&module, s.m).unwrap(), s.planted_l);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate(&spec(4, 9)).unwrap(), generate(&spec(4, 9)).unwrap());
        assert_ne!(generate(&spec(4, 9)).unwrap(), generate(&spec(4, 10)).unwrap());
    }

    #[test]
    fn bad_specs_are_rejected() {
        let mut s = spec(3, 0);
        s.m = 10;
        assert!(matches!(generate(&s), Err(GenError::Spec(_))));
        let mut s = spec(3, 0);
        s.planted_l = Scalar::zero();
        assert!(matches!(generate(&s), Err(GenError::Spec(_))));
        s.allow_degenerate = true;
        assert!(generate(&s).is_ok());
        let mut s = spec(3, 0);
        s.p = 9;
        assert!(matches!(generate(&s), Err(GenError::Spec(_))));
    }

    #[test]
    fn fix_a_is_generated() {
        assert_eq!(generate(&fix_a_spec()).unwrap(), fix_a().0);
    }
}
