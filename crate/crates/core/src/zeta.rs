//! Truncated Euler product for the Selberg zeta function.
//!
//! For a primitive class of length `ℓ` and character value `ε` the product
//! contributes `∏_{k≥0} (1 − ε·e^{−(s+k)ℓ})`. Evaluation works internally in
//! the classical normalization, where the product converges for `Re s > 1`;
//! the representation-theoretic spectral parameter `λ` maps to `s = λ + 1/2`.
//!
//! Per-class contributions are computed independently (optionally in
//! parallel) and then reduced sequentially, in the spectrum's canonical
//! order, with compensated summation. The result is therefore bit-identical
//! regardless of thread count.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::exec::Execution;
use crate::spectrum::{GeodesicClass, LengthSpectrum};
use crate::sum::{ComplexSum, NeumaierSum};

/// `ρ` for PSL(2,R): half the trace of `ad(H)` on the one-dimensional `n`.
pub const RHO: f64 = 0.5;

pub const DEFAULT_TAIL_TOL: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    #[error("Re(s) = {0} <= 0: the Euler product does not converge and analytic continuation is not implemented")]
    NotConvergent(f64),
    #[error("the logarithmic derivative needs Re(s) > 1, got Re(s) = {0}")]
    DerivativeDomain(f64),
    #[error("class {0} is not primitive (power {1})")]
    NonPrimitive(String, u32),
    #[error("tail tolerance must be a positive finite number, got {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `s` is used as given.
    #[default]
    Classical,
    /// The point is the spectral parameter `λ`; `s = λ + 1/2`.
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KMax {
    /// Per class, stop at the first `k` whose term `e^{−(Re s + k)ℓ}` drops below the tolerance.
    #[default]
    Auto,
    Fixed(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParams {
    /// Evaluation point, in the normalization given by `normalization`.
    pub point: Complex64,
    pub k_max: KMax,
    pub tail_tol: f64,
    pub normalization: Normalization,
    pub execution: Execution,
}

impl ZetaParams {
    pub fn classical(s: Complex64) -> Self {
        ZetaParams {
            point: s,
            k_max: KMax::Auto,
            tail_tol: DEFAULT_TAIL_TOL,
            normalization: Normalization::Classical,
            execution: Execution::default(),
        }
    }

    pub fn spectral(lambda: Complex64) -> Self {
        ZetaParams { normalization: Normalization::Spectral, ..Self::classical(lambda) }
    }

    pub fn with_k_max(mut self, k: u32) -> Self {
        self.k_max = KMax::Fixed(k);
        self
    }

    pub fn with_tail_tol(mut self, tol: f64) -> Self {
        self.tail_tol = tol;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// The evaluation point in classical normalization.
    pub fn s_classical(&self) -> Complex64 {
        match self.normalization {
            Normalization::Classical => self.point,
            Normalization::Spectral => convert_parameter(self.point),
        }
    }

    fn validate(&self) -> Result<Complex64, ZetaError> {
        if !(self.tail_tol.is_finite() && self.tail_tol > 0.0) {
            return Err(ZetaError::BadTolerance(self.tail_tol));
        }
        let s = self.s_classical();
        if s.re.is_nan() || s.re <= 0.0 {
            return Err(ZetaError::NotConvergent(s.re));
        }
        Ok(s)
    }

    /// Largest `k` used for a class of length `length` at `Re s = sigma`.
    pub fn k_limit(&self, sigma: f64, length: f64) -> u32 {
        match self.k_max {
            KMax::Fixed(k) => k,
            KMax::Auto => auto_k(sigma, length, self.tail_tol),
        }
    }
}

/// `s = λ + ρ` with `ρ = 1/2`.
pub fn convert_parameter(lambda: Complex64) -> Complex64 {
    lambda + RHO
}

/// Smallest `k ≥ 0` with `e^{−(σ+k)ℓ} < tol`.
pub fn auto_k(sigma: f64, length: f64, tol: f64) -> u32 {
    let decay = |k: u32| (-(sigma + k as f64) * length).exp();
    // Solve (σ+k)ℓ > −ln tol, then correct for rounding.
    let guess = ((-tol.ln()) / length - sigma).floor().max(0.0);
    let mut k = if guess.is_finite() { guess.min(u32::MAX as f64 - 1.0) as u32 } else { 0 };
    while k > 0 && decay(k - 1) < tol {
        k -= 1;
    }
    while decay(k) >= tol {
        k += 1;
    }
    k
}

/// `1 − ε·e^{−(s+k)ℓ}` for a primitive class.
pub fn class_factor(s: Complex64, c: &GeodesicClass, k: u32) -> Result<Complex64, ZetaError> {
    if !c.is_primitive() {
        return Err(ZetaError::NonPrimitive(c.canonical_word.to_string(), c.power));
    }
    Ok(factor(s, c.length, c.epsilon.as_f64(), k))
}

#[inline]
fn factor(s: Complex64, length: f64, eps: f64, k: u32) -> Complex64 {
    Complex64::new(1.0, 0.0) - eps * (-(s + k as f64) * length).exp()
}

/// Bound on `Σ_{k>K} |log(1 − ε e^{−(s+k)ℓ})|` for one class. Uses
/// `|log(1−x)| ≤ |x|/(1−|x|)` and the geometric tail of `|x_k| = e^{−(σ+k)ℓ}`.
pub fn class_tail_bound(sigma: f64, length: f64, k_last: u32) -> f64 {
    let first = (-(sigma + k_last as f64 + 1.0) * length).exp();
    first / ((1.0 - (-length).exp()) * (1.0 - first))
}

/// Bound on the whole contribution `Σ_{k≥0} |log(1 − ε e^{−(s+k)ℓ})|` of one
/// class, valid when `σℓ ≥ ln 2`.
pub fn class_contribution_bound(sigma: f64, length: f64) -> f64 {
    2.0 * (-sigma * length).exp() / (1.0 - (-length).exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub bound: f64,
    /// True when `Re s > 1` and every class satisfies `Re(s)·ℓ ≥ ln 2`.
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedValue {
    pub value: Complex64,
    pub classes_used: usize,
    /// Total number of factors multiplied in.
    pub k_terms_used: u64,
    pub tail_bound: TailBound,
}

struct ClassTerm {
    log: Complex64,
    factors: u64,
    tail: f64,
    within_bound_regime: bool,
}

fn check_primitive(sp: &LengthSpectrum) -> Result<(), ZetaError> {
    match sp.classes().iter().find(|c| !c.is_primitive()) {
        Some(c) => Err(ZetaError::NonPrimitive(c.canonical_word.to_string(), c.power)),
        None => Ok(()),
    }
}

/// Principal-branch logarithm of the truncated product.
pub fn log_zeta(p: &ZetaParams, sp: &LengthSpectrum) -> Result<TruncatedValue, ZetaError> {
    let s = p.validate()?;
    check_primitive(sp)?;
    let sigma = s.re;

    let terms = p.execution.map(sp.classes(), |c| {
        let k_last = p.k_limit(sigma, c.length);
        let eps = c.epsilon.as_f64();
        let log: ComplexSum = (0..=k_last).map(|k| factor(s, c.length, eps, k).ln()).collect();
        ClassTerm {
            log: log.value(),
            factors: k_last as u64 + 1,
            tail: class_tail_bound(sigma, c.length, k_last),
            within_bound_regime: sigma * c.length >= LN_2,
        }
    });

    let mut value = ComplexSum::new();
    let mut tail = NeumaierSum::new();
    let mut factors = 0u64;
    let mut regime = true;
    for t in &terms {
        value.add(t.log);
        tail.add(t.tail);
        factors += t.factors;
        regime &= t.within_bound_regime;
    }
    Ok(TruncatedValue {
        value: value.value(),
        classes_used: terms.len(),
        k_terms_used: factors,
        tail_bound: TailBound { bound: tail.value(), certified: sigma > 1.0 && regime },
    })
}

/// `exp(log_zeta)`, with the same truncation metadata.
pub fn zeta_value(p: &ZetaParams, sp: &LengthSpectrum) -> Result<TruncatedValue, ZetaError> {
    log_zeta(p, sp).map(|t| TruncatedValue { value: t.value.exp(), ..t })
}

/// `d/ds log Z(s)`, summing `ℓ·εx/(1 − εx)` with `x = e^{−(s+k)ℓ}`
/// (the geometric series `Σ_m ℓ ε^m x^m` in closed form) over the same
/// `k` range as [`log_zeta`].
pub fn log_derivative(p: &ZetaParams, sp: &LengthSpectrum) -> Result<Complex64, ZetaError> {
    let s = p.validate()?;
    if s.re.is_nan() || s.re <= 1.0 {
        return Err(ZetaError::DerivativeDomain(s.re));
    }
    check_primitive(sp)?;
    let sigma = s.re;
    let terms = p.execution.map(sp.classes(), |c| {
        let k_last = p.k_limit(sigma, c.length);
        let eps = c.epsilon.as_f64();
        let sum: ComplexSum = (0..=k_last)
            .map(|k| {
                let x = eps * (-(s + k as f64) * c.length).exp();
                c.length * x / (1.0 - x)
            })
            .collect();
        sum.value()
    });
    Ok(terms.into_iter().collect::<ComplexSum>().value())
}
