//! Exact 2×2 integer matrices of determinant one.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("determinant is {0}, expected 1")]
    Determinant(BigInt),
    #[error("element with trace {trace} is {kind}, not hyperbolic")]
    NotHyperbolic { trace: BigInt, kind: ElementKind },
}

/// An element of SL(2,Z), kept with its sign.
///
/// The sign matters for the M-character: the SL(2) lift of a hyperbolic
/// element has trace of the same sign as its elliptic M-part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl SlMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, MatrixError> {
        let m = SlMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = m.determinant();
        if det.is_one() {
            Ok(m)
        } else {
            Err(MatrixError::Determinant(det))
        }
    }

    pub fn identity() -> Self {
        SlMatrix { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Inverse, which for determinant one is the adjugate.
    pub fn inverse(&self) -> Self {
        SlMatrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    /// Image in PSL(2): flip the sign so that the first nonzero entry is positive.
    pub fn to_moebius(&self) -> MoebiusMatrix {
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("determinant one matrix has a nonzero entry");
        if first.is_negative() {
            MoebiusMatrix(SlMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d })
        } else {
            MoebiusMatrix(self.clone())
        }
    }
}

impl<'a> Mul<&'a SlMatrix> for &'a SlMatrix {
    type Output = SlMatrix;

    fn mul(self, rhs: &SlMatrix) -> SlMatrix {
        SlMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for SlMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// An element of PSL(2,Z): an [`SlMatrix`] normalized modulo ±I.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoebiusMatrix(SlMatrix);

impl MoebiusMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, MatrixError> {
        SlMatrix::new(a, b, c, d).map(|m| m.to_moebius())
    }

    pub fn identity() -> Self {
        MoebiusMatrix(SlMatrix::identity())
    }

    /// The normalized representative.
    pub fn matrix(&self) -> &SlMatrix {
        &self.0
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

impl Mul for &MoebiusMatrix {
    type Output = MoebiusMatrix;

    fn mul(self, rhs: &MoebiusMatrix) -> MoebiusMatrix {
        (&self.0 * &rhs.0).to_moebius()
    }
}

impl fmt::Display for MoebiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Identity => "identity",
            ElementKind::Parabolic => "parabolic",
            ElementKind::Elliptic => "elliptic",
            ElementKind::Hyperbolic => "hyperbolic",
        })
    }
}

/// Classifies an SL(2) element by trace. `±I` both count as the identity.
pub fn classify_sl(m: &SlMatrix) -> ElementKind {
    let t = m.trace().abs();
    let two = BigInt::from(2);
    if t > two {
        ElementKind::Hyperbolic
    } else if t < two {
        ElementKind::Elliptic
    } else if m.b.is_zero() && m.c.is_zero() {
        ElementKind::Identity
    } else {
        ElementKind::Parabolic
    }
}

pub fn classify(m: &MoebiusMatrix) -> ElementKind {
    classify_sl(m.matrix())
}

/// Traces above this magnitude lose integer exactness in `f64`.
const EXACT_TRACE_LIMIT: f64 = 1e15;

/// Geodesic length `2·arccosh(|t|/2)` of a hyperbolic element with trace `t`
/// (curvature −1).
pub fn length_from_trace(trace: &BigInt) -> Result<f64, MatrixError> {
    let t = trace.abs();
    if t <= BigInt::from(2) {
        let kind = if t == BigInt::from(2) { ElementKind::Parabolic } else { ElementKind::Elliptic };
        return Err(MatrixError::NotHyperbolic { trace: trace.clone(), kind });
    }
    let approx = t.to_f64().unwrap_or(f64::INFINITY);
    if approx < EXACT_TRACE_LIMIT {
        return Ok(2.0 * (approx / 2.0).acosh());
    }
    // ℓ = 2 ln|t| + 2 ln((1 + √(1 − 4/t²))/2); the second term is −2/t² to
    // within 1e−60 here. ln|t| is taken from a 64-bit mantissa and a binary
    // exponent so that huge traces neither overflow nor round before the log.
    let bits = t.bits();
    let shift = bits.saturating_sub(64);
    let mantissa = (&t >> shift).to_f64().expect("64-bit mantissa fits in f64");
    let ln_t = mantissa.ln() + shift as f64 * std::f64::consts::LN_2;
    let inv_t2 = if approx.is_finite() { 1.0 / (approx * approx) } else { 0.0 };
    Ok(2.0 * ln_t - 2.0 * inv_t2)
}

/// Length of the closed geodesic of a hyperbolic element.
pub fn geodesic_length(m: &MoebiusMatrix) -> Result<f64, MatrixError> {
    let kind = classify(m);
    if kind != ElementKind::Hyperbolic {
        return Err(MatrixError::NotHyperbolic { trace: m.trace(), kind });
    }
    length_from_trace(&m.trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> MoebiusMatrix {
        MoebiusMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn determinant_is_validated() {
        assert!(matches!(SlMatrix::new(1, 1, 1, 1), Err(MatrixError::Determinant(_))));
        assert!(SlMatrix::new(2, 1, 1, 1).is_ok());
    }

    #[test]
    fn sign_canonicalization() {
        let x = m(-3, 2, -2, 1);
        assert_eq!(x.matrix(), &SlMatrix::new(3, -2, 2, -1).unwrap());
        let y = m(0, -1, 1, 0);
        assert_eq!(y.matrix(), &SlMatrix::new(0, 1, -1, 0).unwrap());
        assert!(m(-1, 0, 0, -1).is_identity());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&MoebiusMatrix::identity()), ElementKind::Identity);
        assert_eq!(classify(&m(5, 2, 2, 1)), ElementKind::Hyperbolic);
        assert_eq!(classify(&m(3, -2, 2, -1)), ElementKind::Parabolic);
        assert_eq!(classify(&m(0, -1, 1, 0)), ElementKind::Elliptic);
        assert_eq!(classify(&m(1, 2, 0, 1)), ElementKind::Parabolic);
    }

    #[test]
    fn lengths() {
        let l6 = geodesic_length(&m(5, 2, 2, 1)).unwrap();
        assert!((l6 - 3.525_494_348_078_172).abs() < 1e-12);
        let l3 = geodesic_length(&m(2, 1, 1, 1)).unwrap();
        assert!((l3 - 1.924_847_300_238_414).abs() < 1e-12);
        assert!(matches!(
            geodesic_length(&m(3, -2, 2, -1)),
            Err(MatrixError::NotHyperbolic { kind: ElementKind::Parabolic, .. })
        ));
        // negative trace uses |t|
        assert_eq!(length_from_trace(&BigInt::from(-6)).unwrap(), l6);
    }

    #[test]
    fn huge_trace_branch_is_continuous() {
        // both sides of the switch agree to relative 1e-15
        let below = BigInt::from(999_999_999_999_998i64);
        let above = BigInt::from(1_000_000_000_000_002i64);
        let lb = length_from_trace(&below).unwrap();
        let la = length_from_trace(&above).unwrap();
        assert!((la - lb).abs() < 1e-13);
        let expected = 2.0 * 1e15f64.ln();
        assert!((la - expected).abs() < 1e-13);
        // far beyond f64 range
        let t = BigInt::from(10).pow(400);
        let l = length_from_trace(&t).unwrap();
        assert!((l - 800.0 * std::f64::consts::LN_10).abs() < 1e-10);
    }
}
