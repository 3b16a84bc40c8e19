//! Rational multiples of π.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error building a [`RationalPhase`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PhaseError {
    /// The denominator was zero.
    #[error("phase denominator must be nonzero")]
    ZeroDenominator,
    /// Reduction/normalization overflowed `i64`.
    #[error("phase numerator/denominator out of range")]
    Overflow,
}

/// A phase α = (num/den)·π, stored reduced and normalized into [0, 2π).
///
/// Invariants maintained by every constructor and operation:
/// `den ≥ 1`, `gcd(num, den) = 1`, and `0 ≤ num/den < 2` (π units).
/// All spider phases in this workspace are exact rationals, so phase
/// arithmetic is exact; floats appear only when a tensor entry `e^{iα}`
/// is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPhase", into = "RawPhase")]
pub struct RationalPhase {
    num: i64,
    den: i64,
}

/// Wire form of a phase: `{"num": …, "den": …}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RawPhase {
    pub num: i64,
    pub den: i64,
}

impl TryFrom<RawPhase> for RationalPhase {
    type Error = PhaseError;
    fn try_from(raw: RawPhase) -> Result<Self, PhaseError> {
        RationalPhase::new(raw.num, raw.den)
    }
}

impl From<RationalPhase> for RawPhase {
    fn from(p: RationalPhase) -> RawPhase {
        RawPhase {
            num: p.num,
            den: p.den,
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalPhase {
    /// Builds the phase (num/den)·π, reducing the fraction and wrapping
    /// into [0, 2π).
    pub fn new(num: i64, den: i64) -> Result<Self, PhaseError> {
        if den == 0 {
            return Err(PhaseError::ZeroDenominator);
        }
        // Work in i128 so intermediate sign/mod arithmetic cannot overflow.
        let mut num = i128::from(num);
        let mut den = i128::from(den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = {
            let (mut a, mut b) = (num.abs(), den);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.max(1)
        };
        num /= g;
        den /= g;
        // Wrap modulo 2π: num/den mod 2 ⇒ num mod 2·den, made non-negative.
        let m = 2 * den;
        num = num.rem_euclid(m);
        let num = i64::try_from(num).map_err(|_| PhaseError::Overflow)?;
        let den = i64::try_from(den).map_err(|_| PhaseError::Overflow)?;
        Ok(Self { num, den })
    }

    /// The zero phase.
    #[must_use]
    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    /// The phase π.
    #[must_use]
    pub fn pi() -> Self {
        Self { num: 1, den: 1 }
    }

    /// Numerator of the reduced, normalized fraction (π units).
    #[must_use]
    pub fn num(&self) -> i64 {
        self.num
    }

    /// Denominator (always ≥ 1).
    #[must_use]
    pub fn den(&self) -> i64 {
        self.den
    }

    /// True when α = 0 (mod 2π).
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// True when α = π (mod 2π).
    #[must_use]
    pub fn is_pi(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    /// Sum of two phases (mod 2π).
    pub fn add(&self, other: &Self) -> Result<Self, PhaseError> {
        let num = i128::from(self.num) * i128::from(other.den)
            + i128::from(other.num) * i128::from(self.den);
        let den = i128::from(self.den) * i128::from(other.den);
        // Reduce in i128 before narrowing to avoid overflow on large dens.
        let g = {
            let (mut a, mut b) = (num.abs().max(1), den);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.max(1)
        };
        let num = i64::try_from(num / g).map_err(|_| PhaseError::Overflow)?;
        let den = i64::try_from(den / g).map_err(|_| PhaseError::Overflow)?;
        Self::new(num, den)
    }

    /// Negation mod 2π (0 ↦ 0, α ↦ 2π − α).
    #[must_use]
    pub fn negate(&self) -> Self {
        if self.num == 0 {
            *self
        } else {
            // 2 − num/den = (2·den − num)/den; num < 2·den keeps this positive
            // and the gcd is unchanged, so no re-reduction is needed.
            Self {
                num: 2 * self.den - self.num,
                den: self.den,
            }
        }
    }

    /// The angle in radians.
    #[must_use]
    pub fn as_radians(&self) -> f64 {
        (self.num as f64 / self.den as f64) * std::f64::consts::PI
    }

    /// The unit complex number e^{iα}.
    #[must_use]
    pub fn phase_factor(&self) -> Complex64 {
        // α = π, π/2, 3π/2, 0 are ubiquitous; give them exact values so
        // sums of tensor entries cancel exactly instead of to ~1e−16.
        match (self.num, self.den) {
            (0, _) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(-1.0, 0.0),
            (1, 2) => Complex64::new(0.0, 1.0),
            (3, 2) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, self.as_radians()),
        }
    }

    /// True when the raw fraction `num/den` would already be stored exactly
    /// as given (reduced, den > 0, within [0, 2π)). Used by the file reader
    /// to warn about auto-reduced phases.
    #[must_use]
    pub fn is_canonical_raw(num: i64, den: i64) -> bool {
        den >= 1 && gcd(num, den) == 1 && num >= 0 && num < 2 * den
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_wrap() {
        let p = RationalPhase::new(9, 4).unwrap();
        assert_eq!((p.num(), p.den()), (1, 4));
        let p = RationalPhase::new(2, 4).unwrap();
        assert_eq!((p.num(), p.den()), (1, 2));
        let p = RationalPhase::new(-1, 4).unwrap();
        assert_eq!((p.num(), p.den()), (7, 4));
        let p = RationalPhase::new(4, 2).unwrap();
        assert_eq!((p.num(), p.den()), (0, 1));
        let p = RationalPhase::new(3, -2).unwrap();
        assert_eq!((p.num(), p.den()), (1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalPhase::new(1, 0), Err(PhaseError::ZeroDenominator));
    }

    #[test]
    fn add_and_negate() {
        let a = RationalPhase::new(1, 4).unwrap();
        let b = RationalPhase::new(1, 2).unwrap();
        assert_eq!(a.add(&b).unwrap(), RationalPhase::new(3, 4).unwrap());
        assert_eq!(a.negate(), RationalPhase::new(7, 4).unwrap());
        assert_eq!(RationalPhase::zero().negate(), RationalPhase::zero());
        // α + (−α) = 0
        let s = a.add(&a.negate()).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn exact_cardinal_factors() {
        assert_eq!(
            RationalPhase::pi().phase_factor(),
            Complex64::new(-1.0, 0.0)
        );
        assert_eq!(
            RationalPhase::new(1, 2).unwrap().phase_factor(),
            Complex64::new(0.0, 1.0)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(RationalPhase::new(1, 4).unwrap().to_string(), "π/4");
        assert_eq!(RationalPhase::new(3, 2).unwrap().to_string(), "3π/2");
        assert_eq!(RationalPhase::pi().to_string(), "π");
        assert_eq!(RationalPhase::zero().to_string(), "0");
    }

    #[test]
    fn canonical_raw_detection() {
        assert!(RationalPhase::is_canonical_raw(1, 4));
        assert!(!RationalPhase::is_canonical_raw(2, 8));
        assert!(!RationalPhase::is_canonical_raw(9, 4));
        assert!(!RationalPhase::is_canonical_raw(-1, 4));
    }

    #[test]
    fn serde_roundtrip_reduces() {
        let p: RationalPhase = serde_json::from_str(r#"{"num":9,"den":4}"#).unwrap();
        assert_eq!(p, RationalPhase::new(1, 4).unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"num":1,"den":4}"#);
        assert!(serde_json::from_str::<RationalPhase>(r#"{"num":1,"den":0}"#).is_err());
    }
}
