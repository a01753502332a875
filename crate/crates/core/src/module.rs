//! The Hilbert C*-module `E = 𝒜ⁿ` over `𝒜 = M_k(ℂ)`.
//!
//! An element of `E` is `n` stacked `k × k` blocks, stored as an `(n·k) × k`
//! matrix. The right action of `a ∈ 𝒜` multiplies every block on the right,
//! which is the matrix product `x · a`. The `𝒜`-valued inner product is
//! `⟨x, y⟩ = x* · y`. Adjointable maps `𝒜ⁿ → 𝒜ᵐ` are exactly the
//! `(m·k) × (n·k)` complex matrices acting on the left.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::rng::InstanceRng;
use crate::matrix::ComplexMatrix;
use crate::spectral::{psd_sqrt, spectral_norm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleContext {
    k: usize,
    n: usize,
}

impl ModuleContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Shape(format!("module context needs k >= 1 and n >= 1, got k = {k}, n = {n}")));
        }
        Ok(Self { k, n })
    }

    /// Block size of the coefficient algebra `M_k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of generators.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Row count of the flattened representation, `n·k`.
    pub fn flat_dim(&self) -> usize {
        self.n * self.k
    }
}

/// An element of `M_k(ℂ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    data: ComplexMatrix,
}

impl AlgebraElement {
    pub fn new(data: ComplexMatrix) -> Result<Self> {
        if !data.is_square() || data.is_empty() {
            return Err(Error::Shape(format!("algebra element must be k×k, got {}x{}", data.rows(), data.cols())));
        }
        Ok(Self { data })
    }

    pub fn k(&self) -> usize {
        self.data.rows()
    }

    pub fn data(&self) -> &ComplexMatrix {
        &self.data
    }

    /// C*-norm of `M_k`, the spectral norm.
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.data)
    }

    pub fn adjoint(&self) -> Self {
        Self { data: self.data.adjoint() }
    }

    pub fn random(k: usize, rng: &mut InstanceRng) -> Self {
        Self { data: rng.gaussian_matrix(k, k) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleElement {
    context: ModuleContext,
    data: ComplexMatrix,
}

impl ModuleElement {
    pub fn new(context: ModuleContext, data: ComplexMatrix) -> Result<Self> {
        if data.shape() != (context.flat_dim(), context.k) {
            return Err(Error::Shape(format!(
                "element of A^{} over M_{} must be {}x{}, got {}x{}",
                context.n,
                context.k,
                context.flat_dim(),
                context.k,
                data.rows(),
                data.cols()
            )));
        }
        Ok(Self { context, data })
    }

    pub fn zero(context: ModuleContext) -> Self {
        Self { context, data: ComplexMatrix::zeros(context.flat_dim(), context.k) }
    }

    pub fn random(context: ModuleContext, rng: &mut InstanceRng) -> Self {
        Self { context, data: rng.gaussian_matrix(context.flat_dim(), context.k) }
    }

    pub fn context(&self) -> ModuleContext {
        self.context
    }

    pub fn data(&self) -> &ComplexMatrix {
        &self.data
    }

    /// Block `i`, a `k × k` matrix.
    pub fn block(&self, i: usize) -> ComplexMatrix {
        let k = self.context.k;
        self.data.block(i * k, 0, k, k)
    }

    /// `x · a`: every block multiplied on the right by `a`.
    pub fn right_action(&self, a: &AlgebraElement) -> Result<Self> {
        if a.k() != self.context.k {
            return Err(Error::ContextMismatch(format!("M_{} acting on a module over M_{}", a.k(), self.context.k)));
        }
        Ok(Self { context: self.context, data: &self.data * &a.data })
    }

    /// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
    pub fn norm(&self) -> f64 {
        spectral_norm(&(&self.data.adjoint() * &self.data)).sqrt()
    }
}

/// `⟨x, y⟩ = Σᵢ xᵢ* yᵢ`, conjugate-linear in the first slot.
pub fn inner_product(x: &ModuleElement, y: &ModuleElement) -> Result<AlgebraElement> {
    if x.context != y.context {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", x.context, y.context)));
    }
    Ok(AlgebraElement { data: &x.data.adjoint() * &y.data })
}

/// The `𝒜`-valued modulus `|x| = ⟨x, x⟩^{1/2}`.
pub fn modulus(x: &ModuleElement) -> AlgebraElement {
    let gram = &x.data.adjoint() * &x.data;
    let data = psd_sqrt(&gram).expect("a Gram matrix is positive semidefinite");
    AlgebraElement { data }
}

/// A map between two modules, as far as the linearity checker is concerned.
pub trait ModuleMap {
    fn domain(&self) -> ModuleContext;
    fn codomain(&self) -> ModuleContext;
    fn apply(&self, x: &ModuleElement) -> Result<ModuleElement>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    domain: ModuleContext,
    codomain: ModuleContext,
    data: ComplexMatrix,
}

impl ModuleOperator {
    pub fn new(domain: ModuleContext, codomain: ModuleContext, data: ComplexMatrix) -> Result<Self> {
        if domain.k != codomain.k {
            return Err(Error::ContextMismatch(format!("domain over M_{}, codomain over M_{}", domain.k, codomain.k)));
        }
        if data.shape() != (codomain.flat_dim(), domain.flat_dim()) {
            return Err(Error::Shape(format!(
                "operator A^{} -> A^{} over M_{} must be {}x{}, got {}x{}",
                domain.n,
                codomain.n,
                domain.k,
                codomain.flat_dim(),
                domain.flat_dim(),
                data.rows(),
                data.cols()
            )));
        }
        Ok(Self { domain, codomain, data })
    }

    /// Reads a flat matrix as an operator on modules over `M_k`.
    pub fn from_flat(k: usize, data: ComplexMatrix) -> Result<Self> {
        if k == 0 || !data.rows().is_multiple_of(k) || !data.cols().is_multiple_of(k) {
            return Err(Error::Shape(format!("block size {k} does not divide {}x{}", data.rows(), data.cols())));
        }
        let domain = ModuleContext::new(k, data.cols() / k)?;
        let codomain = ModuleContext::new(k, data.rows() / k)?;
        Self::new(domain, codomain, data)
    }

    pub fn random(domain: ModuleContext, codomain: ModuleContext, rng: &mut InstanceRng) -> Result<Self> {
        Self::new(domain, codomain, rng.gaussian_matrix(codomain.flat_dim(), domain.flat_dim()))
    }

    pub fn data(&self) -> &ComplexMatrix {
        &self.data
    }

    pub fn into_data(self) -> ComplexMatrix {
        self.data
    }
}

impl ModuleMap for ModuleOperator {
    fn domain(&self) -> ModuleContext {
        self.domain
    }

    fn codomain(&self) -> ModuleContext {
        self.codomain
    }

    fn apply(&self, x: &ModuleElement) -> Result<ModuleElement> {
        if x.context != self.domain {
            return Err(Error::ContextMismatch(format!("operator on {:?} applied to {:?}", self.domain, x.context)));
        }
        Ok(ModuleElement { context: self.codomain, data: &self.data * &x.data })
    }
}

/// The adjoint operator: conjugate transpose with domain and codomain swapped.
pub fn adjoint(a: &ModuleOperator) -> ModuleOperator {
    ModuleOperator { domain: a.codomain, codomain: a.domain, data: a.data.adjoint() }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearityReport {
    pub trials: usize,
    /// `max ‖A(x·a) − (Ax)·a‖_F` over the trials.
    pub max_deviation: f64,
    /// `max ‖(Ax)·a‖_F` over the trials.
    pub scale: f64,
    pub pass: bool,
}

/// Probes `A(x·a) = (Ax)·a` on random `x ∈ E`, `a ∈ 𝒜`.
pub fn check_module_linearity(map: &dyn ModuleMap, trials: usize, seed: u64) -> Result<LinearityReport> {
    let mut rng = InstanceRng::new(seed);
    let k = map.domain().k;
    let mut max_deviation = 0.0f64;
    let mut scale = 0.0f64;
    for _ in 0..trials.max(1) {
        let x = ModuleElement::random(map.domain(), &mut rng);
        let a = AlgebraElement::random(k, &mut rng);
        let lhs = map.apply(&x.right_action(&a)?)?;
        let rhs = map.apply(&x)?.right_action(&a)?;
        max_deviation = max_deviation.max((&lhs.data - &rhs.data).frobenius_norm());
        scale = scale.max(rhs.data.frobenius_norm());
    }
    Ok(LinearityReport { trials: trials.max(1), max_deviation, scale, pass: max_deviation <= 1e-12 * scale })
}

/// Largest relative defect of `⟨Ax, y⟩ = ⟨x, A*y⟩` over random pairs.
pub fn adjoint_pairing_defect(a: &ModuleOperator, pairs: usize, seed: u64) -> Result<f64> {
    let mut rng = InstanceRng::new(seed);
    let at = adjoint(a);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x = ModuleElement::random(a.domain, &mut rng);
        let y = ModuleElement::random(a.codomain, &mut rng);
        let lhs = inner_product(&a.apply(&x)?, &y)?;
        let rhs = inner_product(&x, &at.apply(&y)?)?;
        let scale = spectral_norm(&a.data) * x.norm() * y.norm();
        let d = spectral_norm(&(&lhs.data - &rhs.data));
        worst = worst.max(if scale > 0.0 { d / scale } else { d });
    }
    Ok(worst)
}
