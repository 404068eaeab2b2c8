use alloc::format;
use alloc::vec::Vec;

use super::{is_prime, ModuleError, WeightedFlag};
use crate::exactlin::{Matrix, Scalar, Subspace};

/// A filtered (φ,N)-module over the rationals: Frobenius `phi`, monodromy
/// `mono`, one weighted de Rham flag per embedding, and the running Tate
/// twist.
///
/// Construction only checks shapes. The relation `Nφ = pφN`, nilpotency and
/// the eigenvalue pattern are admissibility questions answered by
/// [`super::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilPhiNModule {
    p: u64,
    phi: Matrix,
    mono: Matrix,
    flags: Vec<WeightedFlag>,
    twist: i64,
}

/// Exponents `(a_σ; b)` of the rank-one character `∏ σ(z)^{a_σ} |Nm z|^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankOneData {
    pub exponents: Vec<i64>,
    pub norm_exponent: i64,
}

impl RankOneData {
    pub fn new(exponents: Vec<i64>, norm_exponent: i64) -> Self {
        RankOneData { exponents, norm_exponent }
    }

    pub fn trivial(e: usize) -> Self {
        RankOneData { exponents: alloc::vec![0; e], norm_exponent: 0 }
    }

    pub fn cyclotomic(e: usize) -> Self {
        RankOneData { exponents: alloc::vec![1; e], norm_exponent: 1 }
    }
}

impl FilPhiNModule {
    pub fn new(p: u64, phi: Matrix, mono: Matrix, flags: Vec<WeightedFlag>, twist: i64) -> Result<Self, ModuleError> {
        if !is_prime(p) {
            return Err(ModuleError::NotPrime(p));
        }
        let n = phi.rows();
        if n == 0 {
            return Err(ModuleError::ZeroDimensional);
        }
        for (what, m) in [("phi", &phi), ("mono", &mono)] {
            if m.rows() != n || m.cols() != n {
                return Err(ModuleError::OperatorShape { what, rows: m.rows(), cols: m.cols(), n });
            }
        }
        if flags.is_empty() {
            return Err(ModuleError::NoEmbeddings);
        }
        for (embedding, f) in flags.iter().enumerate() {
            if f.dim() != n {
                return Err(ModuleError::FlagDimension { embedding, expected: n, got: f.dim() });
            }
        }
        Ok(FilPhiNModule { p, phi, mono, flags, twist })
    }

    /// The rank-one module with Frobenius `p^{-b}`, zero monodromy and
    /// weight `-a_σ` at embedding `σ`.
    pub fn rank_one(data: &RankOneData, p: u64) -> Result<Self, ModuleError> {
        let phi = Matrix::diagonal(&[Scalar::int_pow(p, -data.norm_exponent)]);
        let flags = data.exponents.iter().map(|a| WeightedFlag::line(-a)).collect();
        FilPhiNModule::new(p, phi, Matrix::zeros(1, 1), flags, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn e(&self) -> usize {
        self.flags.len()
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn mono(&self) -> &Matrix {
        &self.mono
    }

    pub fn flags(&self) -> &[WeightedFlag] {
        &self.flags
    }

    pub fn flag(&self, sigma: usize) -> &WeightedFlag {
        &self.flags[sigma]
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// `Fil^0` at embedding `σ`.
    pub fn fil0(&self, sigma: usize) -> &Subspace {
        self.flags[sigma].fil(0)
    }

    pub fn p_scalar(&self) -> Scalar {
        Scalar::from_int(self.p as i64)
    }

    pub fn with_phi(&self, phi: Matrix) -> Result<Self, ModuleError> {
        FilPhiNModule::new(self.p, phi, self.mono.clone(), self.flags.clone(), self.twist)
    }

    pub fn with_mono(&self, mono: Matrix) -> Result<Self, ModuleError> {
        FilPhiNModule::new(self.p, self.phi.clone(), mono, self.flags.clone(), self.twist)
    }

    pub fn with_flag(&self, sigma: usize, flag: WeightedFlag) -> Result<Self, ModuleError> {
        let mut flags = self.flags.clone();
        flags[sigma] = flag;
        FilPhiNModule::new(self.p, self.phi.clone(), self.mono.clone(), flags, self.twist)
    }

    /// Twist by `Q_p(t)`: Frobenius scaled by `p^{-t}`, weights lowered by `t`.
    pub fn tate_twist(&self, t: i64) -> Self {
        FilPhiNModule {
            p: self.p,
            phi: self.phi.scale(&Scalar::int_pow(self.p, -t)),
            mono: self.mono.clone(),
            flags: self.flags.iter().map(|f| f.shift_weights(-t)).collect(),
            twist: self.twist + t,
        }
    }

    pub fn cyclotomic_twist(&self) -> Self {
        self.tate_twist(1)
    }

    /// Dual module: `φ^{-T}`, `-N^T`, annihilator flags.
    pub fn dual(&self) -> Result<Self, ModuleError> {
        let phi = self.phi.inverse().ok_or(ModuleError::NotInvertible)?.transpose();
        Ok(FilPhiNModule {
            p: self.p,
            phi,
            mono: self.mono.transpose().scale(&Scalar::from_int(-1)),
            flags: self.flags.iter().map(WeightedFlag::dual).collect(),
            twist: -self.twist,
        })
    }

    /// Tensor product with a rank-one module.
    pub fn tensor_rank_one(&self, other: &FilPhiNModule) -> Result<Self, ModuleError> {
        if other.n() != 1 {
            return Err(ModuleError::Incompatible(format!("tensor factor has dimension {}", other.n())));
        }
        self.check_compatible(other)?;
        if !other.mono.is_zero() {
            return Err(ModuleError::Incompatible("rank-one factor has nonzero monodromy".into()));
        }
        let lambda = &other.phi[(0, 0)];
        let flags = self.flags.iter().zip(&other.flags).map(|(f, g)| f.shift_weights(g.weights()[0])).collect();
        Ok(FilPhiNModule {
            p: self.p,
            phi: self.phi.scale(lambda),
            mono: self.mono.clone(),
            flags,
            twist: self.twist + other.twist,
        })
    }

    fn check_compatible(&self, other: &FilPhiNModule) -> Result<(), ModuleError> {
        if self.p != other.p {
            return Err(ModuleError::Incompatible(format!("primes {} and {}", self.p, other.p)));
        }
        if self.e() != other.e() {
            return Err(ModuleError::Incompatible(format!("{} and {} embeddings", self.e(), other.e())));
        }
        Ok(())
    }

    /// Whether `s` is stable under φ and N.
    pub fn is_stable(&self, s: &Subspace) -> Result<bool, ModuleError> {
        self.check_ambient(s)?;
        Ok(s.map(&self.phi)?.is_subspace_of(s) && s.map(&self.mono)?.is_subspace_of(s))
    }

    fn check_ambient(&self, s: &Subspace) -> Result<(), ModuleError> {
        if s.ambient() != self.n() {
            return Err(ModuleError::AmbientMismatch { expected: self.n(), got: s.ambient() });
        }
        Ok(())
    }

    fn require_stable(&self, s: &Subspace) -> Result<(), ModuleError> {
        self.check_ambient(s)?;
        if !s.map(&self.phi)?.is_subspace_of(s) {
            return Err(ModuleError::NotStable("Frobenius"));
        }
        if !s.map(&self.mono)?.is_subspace_of(s) {
            return Err(ModuleError::NotStable("monodromy"));
        }
        Ok(())
    }

    /// The submodule on a stable subspace, in the echelon coordinates of `s`
    /// (so `s.basis_matrix()` is the inclusion).
    pub fn submodule(&self, s: &Subspace) -> Result<Self, ModuleError> {
        self.require_stable(s)?;
        if s.is_zero() {
            return Err(ModuleError::ZeroDimensional);
        }
        let restrict = |m: &Matrix| -> Result<Matrix, ModuleError> {
            let cols = s
                .basis()
                .iter()
                .map(|b| Ok(s.coordinates(&m.try_apply(b)?).expect("subspace is stable")))
                .collect::<Result<Vec<_>, ModuleError>>()?;
            Ok(Matrix::from_columns(s.dim(), &cols))
        };
        let flags = self.flags.iter().map(|f| f.restrict(s)).collect::<Result<Vec<_>, _>>()?;
        FilPhiNModule::new(self.p, restrict(&self.phi)?, restrict(&self.mono)?, flags, self.twist)
    }

    /// The quotient by a stable subspace, in the coordinates of
    /// `s.quotient_map()` (which is the projection).
    pub fn quotient(&self, s: &Subspace) -> Result<Self, ModuleError> {
        self.require_stable(s)?;
        if s.is_full() {
            return Err(ModuleError::ZeroDimensional);
        }
        let q = s.quotient_map();
        let sec = s.quotient_section();
        let induce = |m: &Matrix| -> Result<Matrix, ModuleError> { Ok(q.try_mul(m)?.try_mul(&sec)?) };
        let flags = self.flags.iter().map(|f| f.push_forward(&q)).collect::<Result<Vec<_>, _>>()?;
        FilPhiNModule::new(self.p, induce(&self.phi)?, induce(&self.mono)?, flags, self.twist)
    }

    /// Change of basis by an invertible `g`: `gφg^{-1}`, `gNg^{-1}`, `g F`.
    pub fn transform(&self, g: &Matrix) -> Result<Self, ModuleError> {
        let g_inv = g.inverse().ok_or(ModuleError::NotInvertible)?;
        let conj = |m: &Matrix| -> Result<Matrix, ModuleError> { Ok(g.try_mul(m)?.try_mul(&g_inv)?) };
        let flags = self.flags.iter().map(|f| f.transform(g)).collect::<Result<Vec<_>, _>>()?;
        FilPhiNModule::new(self.p, conj(&self.phi)?, conj(&self.mono)?, flags, self.twist)
    }
}
