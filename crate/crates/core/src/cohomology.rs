//! Cohomology dimensions of a cusped hyperbolic surface group with
//! coefficients in principal series, finite-dimensional and discrete series
//! modules of PSL(2,R), and the order predicted by the cohomological
//! formula for the Selberg zeta function.
//!
//! Γ is torsion free with genus `g` and `r ≥ 1` cusps, so it is free and has
//! cohomological dimension one: every `h2` computed here is zero. `k` always
//! denotes an odd positive integer, the dimension of `F_k`.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CohomologyError {
    #[error("signature (g={g}, r={r}) is not hyperbolic: need 2g - 2 + r > 0")]
    NotHyperbolic { g: u32, r: u32 },
    #[error("the dimension formulas need at least one cusp (r >= 1)")]
    Cocompact,
    #[error("k = {0} must be an odd positive integer")]
    EvenK(u32),
    #[error("lambda = {0} is a reducibility point -k/2; use the k-indexed families")]
    ReducibilityPoint(Complex64),
    #[error("cusp forms at lambda = {0} are impossible: nonzero H^1 forces lambda in iR or (-1/2, 1/2)")]
    CuspFormsOffSpectrum(Complex64),
    #[error("order at lambda = 0 needs the dimensions of the extension module; use predict_order_at_zero")]
    ZeroLambda,
    #[error("Euler characteristic {0} != 0; the order formula applies only when chi vanishes")]
    NonzeroEuler(i64),
}

/// Genus and number of cusps of a finite-area hyperbolic surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceSignature {
    pub g: u32,
    pub r: u32,
}

impl SurfaceSignature {
    pub fn new(g: u32, r: u32) -> Result<Self, CohomologyError> {
        if 2 * g as i64 - 2 + r as i64 <= 0 {
            return Err(CohomologyError::NotHyperbolic { g, r });
        }
        Ok(SurfaceSignature { g, r })
    }

    /// Negative Euler characteristic of the surface, `2g − 2 + r`.
    pub fn euler_defect(&self) -> i64 {
        2 * self.g as i64 - 2 + self.r as i64
    }

    fn require_cusped(&self) -> Result<(), CohomologyError> {
        if self.r == 0 {
            Err(CohomologyError::Cocompact)
        } else {
            Ok(())
        }
    }
}

/// Odd positive integer `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddK(u32);

impl OddK {
    pub fn new(k: u32) -> Result<Self, CohomologyError> {
        if k % 2 == 1 {
            Ok(OddK(k))
        } else {
            Err(CohomologyError::EvenK(k))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// All odd `k ≤ k_max`.
    pub fn up_to(k_max: u32) -> impl Iterator<Item = OddK> {
        (1..=k_max).step_by(2).map(OddK)
    }
}

/// Coefficient module a [`CohDims`] triple refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModuleLabel {
    /// `F_k`, the k-dimensional irreducible representation.
    FiniteDim(OddK),
    /// Principal series at `λ = k/2`.
    PrincipalPlus(OddK),
    /// Principal series at `λ = −k/2`.
    PrincipalMinus(OddK),
    /// `D_k⁺ ⊕ D_k⁻`.
    DiscretePair(OddK),
    PrincipalGeneric(Complex64),
    /// The self-extension of the principal series at `λ = 0`.
    HatExtensionAtZero,
    /// Dimensions supplied by the caller for an unnamed module.
    User,
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::FiniteDim(k) => write!(f, "F_{}", k.0),
            ModuleLabel::PrincipalPlus(k) => write!(f, "H^{{{}/2}}", k.0),
            ModuleLabel::PrincipalMinus(k) => write!(f, "H^{{-{}/2}}", k.0),
            ModuleLabel::DiscretePair(k) => write!(f, "D_{0}+ + D_{0}-", k.0),
            ModuleLabel::PrincipalGeneric(l) => write!(f, "H^{{{},{}}}", l.re, l.im),
            ModuleLabel::HatExtensionAtZero => write!(f, "H^0 hat"),
            ModuleLabel::User => write!(f, "user"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CohDims {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub label: ModuleLabel,
}

impl CohDims {
    pub fn new(h0: u64, h1: u64, h2: u64, label: ModuleLabel) -> Self {
        CohDims { h0, h1, h2, label }
    }

    pub fn user(h0: u64, h1: u64, h2: u64) -> Self {
        Self::new(h0, h1, h2, ModuleLabel::User)
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.h0, self.h1, self.h2)
    }
}

/// Spectral parameter together with the multiplicity of cusp forms there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralInput {
    pub lambda: Complex64,
    pub m_cusp: u64,
}

impl SpectralInput {
    pub fn new(lambda: Complex64, m_cusp: u64) -> Result<Self, CohomologyError> {
        if m_cusp > 0 && !admits_cusp_forms(lambda) {
            return Err(CohomologyError::CuspFormsOffSpectrum(lambda));
        }
        Ok(SpectralInput { lambda, m_cusp })
    }
}

/// `λ ∈ iR ∪ (−1/2, 1/2)`, tested exactly.
pub fn admits_cusp_forms(lambda: Complex64) -> bool {
    lambda.re == 0.0 || (lambda.im == 0.0 && lambda.re.abs() < 0.5)
}

/// `λ ∈ {−1/2, −3/2, −5/2, ...}`, tested exactly.
pub fn is_reducibility_point(lambda: Complex64) -> bool {
    let shifted = lambda.re + 0.5;
    lambda.im == 0.0 && shifted <= 0.0 && shifted.fract() == 0.0
}

/// Laplace eigenvalue `1/4 − λ²` for spectral parameter `λ`.
pub fn eigenvalue_of(lambda: Complex64) -> Complex64 {
    Complex64::new(0.25, 0.0) - lambda * lambda
}

fn to_u64(x: i64) -> u64 {
    u64::try_from(x).expect("dimension formulas are nonnegative on hyperbolic signatures")
}

/// `H^*(Γ, F_k)`.
pub fn dims_f(sig: SurfaceSignature, k: OddK) -> Result<CohDims, CohomologyError> {
    sig.require_cusped()?;
    let (g, r, kk) = (sig.g as i64, sig.r as i64, k.0 as i64);
    let (h0, h1) = if kk == 1 { (1, 2 * g + r - 1) } else { (0, kk * (2 * g + r - 2)) };
    Ok(CohDims::new(to_u64(h0), to_u64(h1), 0, ModuleLabel::FiniteDim(k)))
}

/// Principal series at a generic point: `χ = r` and `h1 = m_cusp` force `h0 = r + m_cusp`.
pub fn dims_principal_generic(sig: SurfaceSignature, input: SpectralInput) -> Result<CohDims, CohomologyError> {
    sig.require_cusped()?;
    if is_reducibility_point(input.lambda) {
        return Err(CohomologyError::ReducibilityPoint(input.lambda));
    }
    if input.m_cusp > 0 && !admits_cusp_forms(input.lambda) {
        return Err(CohomologyError::CuspFormsOffSpectrum(input.lambda));
    }
    Ok(CohDims::new(
        sig.r as u64 + input.m_cusp,
        input.m_cusp,
        0,
        ModuleLabel::PrincipalGeneric(input.lambda),
    ))
}

/// `H^*(Γ, H^{k/2})`: only the Eisenstein part survives.
pub fn dims_principal_plus(sig: SurfaceSignature, k: OddK) -> Result<CohDims, CohomologyError> {
    sig.require_cusped()?;
    Ok(CohDims::new(sig.r as u64, 0, 0, ModuleLabel::PrincipalPlus(k)))
}

/// `H^*(Γ, H^{−k/2})` from the long exact sequence: `(r + h1(F_k), h1(F_k), 0)`.
pub fn dims_principal_minus(sig: SurfaceSignature, k: OddK) -> Result<CohDims, CohomologyError> {
    let f = dims_f(sig, k)?;
    Ok(CohDims::new(sig.r as u64 + f.h1, f.h1, 0, ModuleLabel::PrincipalMinus(k)))
}

/// Closed forms for `H^*(Γ, H^{−k/2})`: `(2g+2r−1, 2g+r−1)` for `k = 1`,
/// `(k(2g−2)+(k+1)r, k(2g+r−2))` otherwise.
pub fn dims_principal_minus_closed(sig: SurfaceSignature, k: OddK) -> Result<CohDims, CohomologyError> {
    sig.require_cusped()?;
    let (g, r, kk) = (sig.g as i64, sig.r as i64, k.0 as i64);
    let (h0, h1) = if kk == 1 {
        (2 * g + 2 * r - 1, 2 * g + r - 1)
    } else {
        (kk * (2 * g - 2) + (kk + 1) * r, kk * (2 * g + r - 2))
    };
    Ok(CohDims::new(to_u64(h0), to_u64(h1), 0, ModuleLabel::PrincipalMinus(k)))
}

/// `H^*(Γ, D_k⁺ ⊕ D_k⁻)`; the first cohomology vanishes.
pub fn dims_discrete_pair(sig: SurfaceSignature, k: OddK) -> Result<CohDims, CohomologyError> {
    sig.require_cusped()?;
    let (g, r, kk) = (sig.g as i64, sig.r as i64, k.0 as i64);
    let h0 = if kk == 1 { 2 * g + 2 * r - 2 } else { kk * (2 * g - 2) + (kk + 1) * r };
    Ok(CohDims::new(to_u64(h0), 0, 0, ModuleLabel::DiscretePair(k)))
}

/// Dimensions of holomorphic automorphic forms and cusp forms of weight `k+1`
/// (each equal to its antiholomorphic counterpart).
pub fn dims_automorphic(sig: SurfaceSignature, k: OddK) -> Result<(u64, u64), CohomologyError> {
    sig.require_cusped()?;
    let (g, r, kk) = (sig.g as i64, sig.r as i64, k.0 as i64);
    let (a, s) = if kk == 1 {
        (g - 1 + r, g)
    } else {
        (kk * (g - 1) + r * (kk + 1) / 2, kk * (g - 1) + r * (kk - 1) / 2)
    };
    Ok((to_u64(a), to_u64(s)))
}

pub fn euler_characteristic(d: &CohDims) -> i64 {
    d.h0 as i64 - d.h1 as i64 + d.h2 as i64
}

/// Predicted order of the zeta function at `λ`, with a warning for cusped groups.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderPrediction {
    pub order: i64,
    pub warning: Option<&'static str>,
}

pub const CUSPED_ORDER_WARNING: &str = "formal evaluation only: for groups with cusps the \
cohomological order formula is known to fail, so this number is not a prediction of the zeta order";

/// `−Σ (−1)^p p h^p = h1 − 2h2`.
fn alternating_order(d: &CohDims) -> i64 {
    d.h1 as i64 - 2 * d.h2 as i64
}

pub fn predict_order(d: &CohDims, lambda: Complex64, cocompact: bool) -> Result<OrderPrediction, CohomologyError> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(CohomologyError::ZeroLambda);
    }
    let chi = euler_characteristic(d);
    if cocompact && chi != 0 {
        return Err(CohomologyError::NonzeroEuler(chi));
    }
    Ok(OrderPrediction {
        order: alternating_order(d),
        warning: (!cocompact).then_some(CUSPED_ORDER_WARNING),
    })
}

/// Order at `λ = 0`, from the dimensions of the self-extension module.
pub fn predict_order_at_zero(d_hat: &CohDims) -> Result<i64, CohomologyError> {
    let chi = euler_characteristic(d_hat);
    if chi != 0 {
        return Err(CohomologyError::NonzeroEuler(chi));
    }
    Ok(alternating_order(d_hat))
}

/// One checked identity in a [`ConsistencyReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub g: u32,
    pub r: u32,
    pub k: u32,
    pub identity: &'static str,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConsistencyReport {
    pub checks: Vec<IdentityCheck>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass())
    }

    pub fn extend(&mut self, other: ConsistencyReport) {
        self.checks.extend(other.checks);
    }

    /// Whitespace-separated table with a header row.
    pub fn to_table(&self) -> String {
        let mut out = String::from("g r k identity lhs rhs pass\n");
        for c in &self.checks {
            out.push_str(&format!("{} {} {} {} {} {} {}\n", c.g, c.r, c.k, c.identity, c.lhs, c.rhs, c.pass()));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass() { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} g={} r={} k={} {}: {} = {}\n",
                c.g, c.r, c.k, c.identity, c.lhs, c.rhs
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

pub const ID_LES: &str = "les_alternating_sum";
pub const ID_CHI_PLUS: &str = "chi_plus_eq_r";
pub const ID_CHI_MINUS: &str = "chi_minus_eq_r";
pub const ID_H0_AUTOMORPHIC: &str = "h0_minus_eq_automorphic";
pub const ID_H1_CUSP: &str = "h1_minus_eq_cusp_forms";
pub const ID_ROUTES_H0: &str = "minus_routes_agree_h0";
pub const ID_ROUTES_H1: &str = "minus_routes_agree_h1";

/// Checks, for each `k`, the exactness of the long exact sequence of
/// `0 → F_k → H^{k/2} → D_k⁺ ⊕ D_k⁻ → 0`, both Euler characteristics,
/// the automorphic-form descriptions of `H^*(Γ, H^{−k/2})`, and agreement of
/// the two routes to `H^*(Γ, H^{−k/2})`.
pub fn consistency_report(sig: SurfaceSignature, ks: &[OddK]) -> Result<ConsistencyReport, CohomologyError> {
    sig.require_cusped()?;
    let mut checks = Vec::with_capacity(ks.len() * 7);
    for &k in ks {
        let f = dims_f(sig, k)?;
        let plus = dims_principal_plus(sig, k)?;
        let minus = dims_principal_minus(sig, k)?;
        let minus_closed = dims_principal_minus_closed(sig, k)?;
        let pair = dims_discrete_pair(sig, k)?;
        let (dim_a, dim_s) = dims_automorphic(sig, k)?;
        let r = sig.r as i64;
        let k1 = k.get() == 1;
        let mut push = |identity, lhs: i64, rhs: i64| {
            checks.push(IdentityCheck { g: sig.g, r: sig.r, k: k.get(), identity, lhs, rhs })
        };
        push(
            ID_LES,
            f.h0 as i64 - plus.h0 as i64 + pair.h0 as i64 - f.h1 as i64,
            0,
        );
        push(ID_CHI_PLUS, euler_characteristic(&plus), r);
        push(ID_CHI_MINUS, euler_characteristic(&minus), r);
        push(ID_H0_AUTOMORPHIC, minus.h0 as i64, 2 * dim_a as i64 + k1 as i64);
        push(ID_H1_CUSP, minus.h1 as i64, 2 * dim_s as i64 + r - k1 as i64);
        push(ID_ROUTES_H0, minus.h0 as i64, minus_closed.h0 as i64);
        push(ID_ROUTES_H1, minus.h1 as i64, minus_closed.h1 as i64);
    }
    Ok(ConsistencyReport { checks })
}
