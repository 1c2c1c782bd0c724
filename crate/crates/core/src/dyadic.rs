//! Exact dyadic rationals `k / 2^n` with arbitrary-precision numerators.
//!
//! Every unit-interval operation used by the step-function algebra maps
//! dyadics to dyadics, so this type is closed under everything we need and
//! no rounding ever happens.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A dyadic rational `numerator / 2^exponent` in canonical form: the
/// numerator is odd, or it is zero and the exponent is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

/// Failure to read a dyadic literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyadicParseError {
    #[error("malformed dyadic literal `{0}`")]
    Malformed(String),
    #[error("denominator in `{0}` is not a power of two")]
    NotDyadic(String),
}

impl Dyadic {
    /// Builds `numerator / 2^exponent` and reduces it.
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut numerator = numerator.into();
        let mut exponent = exponent;
        if numerator.is_zero() {
            return Dyadic {
                numerator,
                exponent: 0,
            };
        }
        while exponent > 0 && numerator.is_even() {
            numerator >>= 1u32;
            exponent -= 1;
        }
        Dyadic {
            numerator,
            exponent,
        }
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    /// `1 / 2^n`.
    pub fn pow2_inv(n: u32) -> Self {
        Dyadic::new(1, n)
    }

    /// `k / 2^n` from machine integers.
    pub fn frac(k: i64, n: u32) -> Self {
        Dyadic::new(k, n)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    /// True when the value lies in the closed unit interval.
    pub fn in_unit(&self) -> bool {
        !self.numerator.is_negative() && *self <= Dyadic::one()
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        (a, b, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    pub fn double(&self) -> Dyadic {
        if self.exponent == 0 {
            Dyadic::new(&self.numerator << 1u32, 0)
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent - 1)
        }
    }

    pub fn half(&self) -> Dyadic {
        Dyadic::new(self.numerator.clone(), self.exponent + 1)
    }

    /// Clamps into `[0, 1]`.
    pub fn clamp_unit(&self) -> Dyadic {
        self.clone().max(Dyadic::zero()).min(Dyadic::one())
    }

    /// Truncated sum `min(x + y, 1)`.
    pub fn trunc_add(&self, other: &Dyadic) -> Dyadic {
        self.add(other).min(Dyadic::one())
    }

    /// Truncated difference `max(x - y, 0)`.
    pub fn trunc_sub(&self, other: &Dyadic) -> Dyadic {
        self.sub(other).max(Dyadic::zero())
    }

    /// `min(2x, 1)`.
    pub fn double_trunc(&self) -> Dyadic {
        self.double().min(Dyadic::one())
    }

    /// `j(x) = max(2x - 1, 0)`.
    pub fn j(&self) -> Dyadic {
        self.double().sub(&Dyadic::one()).max(Dyadic::zero())
    }

    /// `j_*(x) = x/2 + 1/2`.
    pub fn jstar(&self) -> Dyadic {
        self.add(&Dyadic::one()).half()
    }

    /// `α(x) = max(x/2, 2x - 1)`.
    pub fn alpha(&self) -> Dyadic {
        self.half().max(self.double().sub(&Dyadic::one()))
    }

    /// `β(x) = min(2x, x/2 + 1/2)`, the inverse bijection of `α`.
    pub fn beta(&self) -> Dyadic {
        self.double().min(self.jstar())
    }

    /// The value as an `f64`, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let n = self.numerator.to_f64().unwrap_or(f64::NAN);
        n / 2f64.powi(self.exponent as i32)
    }

    /// `Some(k)` when the value equals `k / 2^n`.
    pub fn scaled_integer(&self, n: u32) -> Option<BigInt> {
        if self.exponent > n {
            None
        } else {
            Some(&self.numerator << (n - self.exponent))
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            let den = BigInt::one() << self.exponent;
            write!(f, "{}/{}", self.numerator, den)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = DyadicParseError;

    /// Accepts `k`, `k/m` with `m` a power of two, and `k/2^n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || DyadicParseError::Malformed(s.to_string());
        match t.split_once('/') {
            None => {
                let k: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Dyadic::new(k, 0))
            }
            Some((num, den)) => {
                let k: BigInt = num.parse().map_err(|_| bad())?;
                if let Some(exp) = den.strip_prefix("2^") {
                    let n: u32 = exp.parse().map_err(|_| bad())?;
                    return Ok(Dyadic::new(k, n));
                }
                let m: BigInt = den.parse().map_err(|_| bad())?;
                if m <= BigInt::zero() {
                    return Err(bad());
                }
                let bits = m.bits();
                if bits == 0 || (BigInt::one() << (bits - 1)) != m {
                    return Err(DyadicParseError::NotDyadic(s.to_string()));
                }
                Ok(Dyadic::new(k, (bits - 1) as u32))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_reduces() {
        assert_eq!(Dyadic::frac(2, 2), d("1/2"));
        assert_eq!(Dyadic::frac(0, 5).exponent(), 0);
        assert_eq!(d("6/2^3").to_string(), "3/4");
    }

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(d("3/2^2"), d("3/4"));
        assert_eq!(d("1"), Dyadic::one());
        assert_eq!(d("0"), Dyadic::zero());
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x".parse::<Dyadic>().is_err());
    }

    #[test]
    fn unit_interval_maps() {
        assert_eq!(d("3/4").alpha(), d("1/2"));
        assert_eq!(d("1/2").jstar(), d("3/4"));
        assert_eq!(d("3/4").j(), d("1/2"));
        assert_eq!(d("1/2").beta(), d("3/4"));
        assert_eq!(d("3/4").trunc_add(&d("1/2")), Dyadic::one());
        assert_eq!(d("1/4").trunc_sub(&d("3/4")), Dyadic::zero());
    }

    #[test]
    fn alpha_and_beta_are_inverse() {
        for k in 0..=64 {
            let x = Dyadic::frac(k, 6);
            assert_eq!(x.alpha().beta(), x);
            assert_eq!(x.beta().alpha(), x);
        }
    }
}
