//! Semistable and crystalline complexes of filtered (φ,N)-modules, their
//! cohomology with explicit representatives, the classes `α*`, `β*` of a
//! rank-one module, and connecting maps of short exact sequences.
//!
//! For a module `D` with `e` embeddings the semistable complex is
//!
//! ```text
//! D ──d1──▶ ⊕_σ D/Fil^0_σ ⊕ D ⊕ D ──d2──▶ D
//! d1(a)       = (a mod Fil^0_σ, (φ-1)a, N a)
//! d2(x, b, c) = N b - (pφ-1) c
//! ```
//!
//! and the crystalline complex is `D_cris → ⊕_σ D_cris/Fil^0_σ ⊕ D_cris`
//! with `D_cris = ker N`.

mod complex;

use alloc::vec::Vec;

pub use complex::{CochainComplex, Cohomology};

use crate::exactlin::{self, LinError, Matrix, Scalar, Subspace};
use crate::phinmod::{FilPhiNModule, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linear(#[from] LinError),
    #[error("d2 d1 is nonzero: the relation N phi = p phi N fails")]
    NotAComplex(Matrix),
    #[error("expected a rank-one module, got dimension {0}")]
    NotRankOne(usize),
    #[error("beta is not a cocycle: Frobenius is not 1/p")]
    BetaNotCocycle,
    #[error("alpha and beta are dependent in H^1")]
    DependentClasses,
    #[error("sequence is not exact: {0}")]
    NotExact(&'static str),
    #[error("maps do not respect {0}")]
    Incompatible(&'static str),
    #[error("class {0} of H^0(quotient) has no Frobenius-fixed lift")]
    NoFixedLift(usize),
    #[error("boundary of class {0} does not come from the submodule")]
    NotInSub(usize),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
}

/// Sizes of the blocks of the middle term: one `D/Fil^0_σ` per embedding,
/// then the two copies of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term1Layout {
    pub de_rham: Vec<usize>,
    pub n: usize,
}

impl Term1Layout {
    pub fn total(&self) -> usize {
        self.de_rham.iter().sum::<usize>() + 2 * self.n
    }

    pub fn de_rham_total(&self) -> usize {
        self.de_rham.iter().sum()
    }

    /// Splits a middle-term vector into its blocks.
    pub fn split<'a>(&self, v: &'a [Scalar]) -> (Vec<&'a [Scalar]>, &'a [Scalar], &'a [Scalar]) {
        let mut rest = v;
        let mut blocks = Vec::new();
        for &q in &self.de_rham {
            let (a, b) = rest.split_at(q);
            blocks.push(a);
            rest = b;
        }
        let (b, c) = rest.split_at(self.n);
        (blocks, b, c)
    }

    /// Concatenates blocks into a middle-term vector.
    pub fn join(&self, de_rham: &[Vec<Scalar>], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = de_rham.iter().flatten().cloned().collect();
        out.extend_from_slice(b);
        out.extend_from_slice(c);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemistableComplex {
    pub module: FilPhiNModule,
    pub complex: CochainComplex,
    pub layout: Term1Layout,
    /// Projections `D → D/Fil^0_σ`.
    pub quotients: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystallineComplex {
    /// `D_cris = ker N` with induced structure.
    pub cris: FilPhiNModule,
    /// `ker N` inside the source module.
    pub inclusion: Subspace,
    pub complex: CochainComplex,
}

/// A cohomology class given by a cocycle representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub representative: Vec<Scalar>,
}

fn fil0_quotients(module: &FilPhiNModule) -> Vec<Matrix> {
    (0..module.e()).map(|s| module.fil0(s).quotient_map()).collect()
}

/// Assembles `C_st(D)` and checks `d2 d1 = 0`.
pub fn build_st(module: &FilPhiNModule) -> Result<SemistableComplex, CohError> {
    let n = module.n();
    let quotients = fil0_quotients(module);
    let layout = Term1Layout { de_rham: quotients.iter().map(Matrix::rows).collect(), n };
    let phi_minus = module.phi().shifted(&Scalar::one())?;
    let mut blocks: Vec<&Matrix> = quotients.iter().collect();
    blocks.push(&phi_minus);
    blocks.push(module.mono());
    let d1 = Matrix::vstack(n, &blocks)?;

    let p_phi_minus = module.phi().scale(&module.p_scalar()).shifted(&Scalar::one())?;
    let zero = Matrix::zeros(n, layout.de_rham_total());
    let neg = p_phi_minus.scale(&Scalar::from_int(-1));
    let d2 = Matrix::hstack(n, &[&zero, module.mono(), &neg])?;

    let complex = CochainComplex::new(alloc::vec![n, layout.total(), n], alloc::vec![d1, d2]).expect("shapes agree");
    if let Some((_, defect)) = complex.square_defect() {
        return Err(CohError::NotAComplex(defect));
    }
    Ok(SemistableComplex { module: module.clone(), complex, layout, quotients })
}

/// Assembles `C_cris(D)` on `ker N`.
pub fn build_cris(module: &FilPhiNModule) -> Result<CrystallineComplex, CohError> {
    let kernel = exactlin::kernel(module.mono());
    let cris = module.submodule(&kernel)?;
    let quotients = fil0_quotients(&cris);
    let k = cris.n();
    let phi_minus = cris.phi().shifted(&Scalar::one())?;
    let mut blocks: Vec<&Matrix> = quotients.iter().collect();
    blocks.push(&phi_minus);
    let d = Matrix::vstack(k, &blocks)?;
    let complex = CochainComplex::new(alloc::vec![k, d.rows()], alloc::vec![d]).expect("shapes agree");
    Ok(CrystallineComplex { cris, inclusion: kernel, complex })
}

impl SemistableComplex {
    pub fn h(&self, degree: usize) -> Cohomology {
        self.complex.h(degree)
    }

    /// `d1` applied to a vector of the module.
    pub fn d1(&self, a: &[Scalar]) -> Result<Vec<Scalar>, CohError> {
        Ok(self.complex.differential(0).expect("three terms").try_apply(a)?)
    }

    pub fn class(&self, degree: usize, representative: Vec<Scalar>) -> CohClass {
        CohClass { degree, representative }
    }

    pub fn same_class(&self, a: &CohClass, b: &CohClass) -> bool {
        a.degree == b.degree && self.complex.same_class(a.degree, &a.representative, &b.representative)
    }

    /// Expected `dim H^0 - dim H^1 + dim H^2`, from the term dimensions.
    pub fn expected_euler(&self) -> i64 {
        let d = self.complex.dims();
        d[0] as i64 - d[1] as i64 + d[2] as i64
    }
}

impl CrystallineComplex {
    pub fn h(&self, degree: usize) -> Cohomology {
        self.complex.h(degree)
    }
}

/// `α* = cl(v, 0, 0)` and `β* = -cl(0, 0, v)` on a rank-one module, with
/// `v` the basis vector scaled by `scale`.
pub fn alpha_beta(module: &FilPhiNModule) -> Result<(CohClass, CohClass), CohError> {
    alpha_beta_scaled(module, &Scalar::one())
}

pub fn alpha_beta_scaled(module: &FilPhiNModule, scale: &Scalar) -> Result<(CohClass, CohClass), CohError> {
    let st = build_st(module)?;
    alpha_beta_in(&st, scale)
}

pub(crate) fn alpha_beta_in(st: &SemistableComplex, scale: &Scalar) -> Result<(CohClass, CohClass), CohError> {
    if st.module.n() != 1 {
        return Err(CohError::NotRankOne(st.module.n()));
    }
    if scale.is_zero() {
        return Err(CohError::ZeroScale);
    }
    let v = alloc::vec![scale.clone()];
    let de_rham: Vec<Vec<Scalar>> = st.quotients.iter().map(|q| q.try_apply(&v)).collect::<Result<_, _>>()?;
    let zero = alloc::vec![Scalar::zero()];
    let alpha = st.layout.join(&de_rham, &zero, &zero);
    let zeros: Vec<Vec<Scalar>> = st.quotients.iter().map(|q| alloc::vec![Scalar::zero(); q.rows()]).collect();
    let beta = st.layout.join(&zeros, &zero, &[-scale]);
    if !st.complex.is_cocycle(1, &beta) {
        return Err(CohError::BetaNotCocycle);
    }
    if !st.complex.independent(1, &[alpha.clone(), beta.clone()]) {
        return Err(CohError::DependentClasses);
    }
    Ok((st.class(1, alpha), st.class(1, beta)))
}

/// `∂ : H^0(quot) → H^1(sub)` for `0 → sub → mid → quot → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingMap {
    pub sub: SemistableComplex,
    /// Representatives of the chosen basis of `H^0(quot)`.
    pub sources: Vec<Vec<Scalar>>,
    /// `∂` of each source, as classes in `H^1(sub)`.
    pub images: Vec<CohClass>,
    /// The Frobenius-fixed lift is unique.
    pub lift_unique: bool,
}

impl ConnectingMap {
    /// `∂(Σ c_i s_i)`.
    pub fn apply(&self, coeffs: &[Scalar]) -> CohClass {
        let len = self.sub.layout.total();
        let mut rep = alloc::vec![Scalar::zero(); len];
        for (c, img) in coeffs.iter().zip(&self.images) {
            for (r, x) in rep.iter_mut().zip(&img.representative) {
                *r = &*r + c * x;
            }
        }
        CohClass { degree: 1, representative: rep }
    }
}

/// Weight labels at which flag compatibility is checked: every label, every
/// label plus one, and zero.
fn probe_levels(modules: &[&FilPhiNModule], sigma: usize) -> Vec<i64> {
    let mut js = alloc::vec![0];
    for m in modules {
        for &w in m.flag(sigma).weights() {
            js.push(w);
            js.push(w + 1);
        }
    }
    js.sort_unstable();
    js.dedup();
    js
}

fn check_ses(
    sub: &FilPhiNModule,
    mid: &FilPhiNModule,
    quot: &FilPhiNModule,
    incl: &Matrix,
    proj: &Matrix,
) -> Result<(), CohError> {
    let (a, b, c) = (sub.n(), mid.n(), quot.n());
    if incl.rows() != b || incl.cols() != a || proj.rows() != c || proj.cols() != b {
        return Err(CohError::NotExact("map shapes"));
    }
    if sub.e() != mid.e() || quot.e() != mid.e() || sub.p() != mid.p() || quot.p() != mid.p() {
        return Err(CohError::NotExact("modules have different primes or embeddings"));
    }
    if incl.rank() != a {
        return Err(CohError::NotExact("inclusion is not injective"));
    }
    if proj.rank() != c {
        return Err(CohError::NotExact("projection is not surjective"));
    }
    if a + c != b || !proj.try_mul(incl)?.is_zero() {
        return Err(CohError::NotExact("image of inclusion is not the kernel of projection"));
    }
    for (what, s, m, q) in
        [("Frobenius", sub.phi(), mid.phi(), quot.phi()), ("monodromy", sub.mono(), mid.mono(), quot.mono())]
    {
        if incl.try_mul(s)? != m.try_mul(incl)? || proj.try_mul(m)? != q.try_mul(proj)? {
            return Err(CohError::Incompatible(what));
        }
    }
    let image = exactlin::image(incl);
    for sigma in 0..mid.e() {
        for j in probe_levels(&[sub, mid, quot], sigma) {
            let fm = mid.flag(sigma).fil(j);
            if sub.flag(sigma).fil(j).map(incl)? != exactlin::intersect(fm, &image)? {
                return Err(CohError::Incompatible("filtration on the submodule"));
            }
            if fm.map(proj)? != *quot.flag(sigma).fil(j) {
                return Err(CohError::Incompatible("filtration on the quotient"));
            }
        }
    }
    Ok(())
}

/// Connecting map of a short exact sequence of filtered (φ,N)-modules.
///
/// Each basis class `v` of `H^0(quot)` is lifted to a φ-fixed `x` in `mid`;
/// `d1(x)` then lies in the image of the sub's middle term and its preimage
/// is the class `∂(v)`.
pub fn connecting(
    sub: &FilPhiNModule,
    mid: &FilPhiNModule,
    quot: &FilPhiNModule,
    incl: &Matrix,
    proj: &Matrix,
) -> Result<ConnectingMap, CohError> {
    check_ses(sub, mid, quot, incl, proj)?;
    let st_sub = build_st(sub)?;
    let st_mid = build_st(mid)?;
    let st_quot = build_st(quot)?;

    let mid_fixed = exactlin::eigenspace(mid.phi(), &Scalar::one())?;
    let lift_unique = exactlin::intersect(&mid_fixed, &exactlin::image(incl))?.is_zero();

    // Middle-term map induced by the inclusion.
    let mut blocks = Vec::new();
    for sigma in 0..mid.e() {
        let section = sub.fil0(sigma).quotient_section();
        blocks.push(st_mid.quotients[sigma].try_mul(incl)?.try_mul(&section)?);
    }
    blocks.push(incl.clone());
    blocks.push(incl.clone());
    let iota1 = Matrix::block_diagonal(&blocks.iter().collect::<Vec<_>>());

    let lift_system = Matrix::vstack(mid.n(), &[proj, &mid.phi().shifted(&Scalar::one())?])?;
    let sources = st_quot.h(0).representatives;
    let mut images = Vec::with_capacity(sources.len());
    for (i, v) in sources.iter().enumerate() {
        let mut rhs = v.clone();
        rhs.extend(core::iter::repeat_n(Scalar::zero(), mid.n()));
        let x = exactlin::solve(&lift_system, &rhs).ok_or(CohError::NoFixedLift(i))?;
        let boundary = st_mid.d1(&x)?;
        let y = exactlin::solve(&iota1, &boundary).ok_or(CohError::NotInSub(i))?;
        images.push(st_sub.class(1, y));
    }
    Ok(ConnectingMap { sub: st_sub, sources, images, lift_unique })
}
