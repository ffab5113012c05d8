//! Scalars of the max-plus semiring (R ∪ {-inf}, max, +).
//!
//! Every value is an exact rational or the distinguished bottom element
//! `-inf`. Bottom is the neutral element of the semiring addition (max)
//! and absorbs under the semiring multiplication (ordinary +). There is
//! no floating-point mode anywhere in this crate: tropical equalities are
//! decided exactly, which is what makes certificate checking meaningful.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for all coordinates, coefficients and
/// exponents.
pub type Rat = BigRational;

/// Convenience constructor for a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// An element of R ∪ {-inf}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// The bottom element -inf: neutral for max, absorbing for +.
    Bottom,
    /// A finite exact rational.
    Finite(Rat),
}

impl Scalar {
    pub fn bottom() -> Self {
        Scalar::Bottom
    }

    /// The rational 0, which is the unit of the max-plus product.
    pub fn zero() -> Self {
        Scalar::Finite(Rat::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Finite(Rat::from_integer(BigInt::from(v)))
    }

    pub fn from_rat(v: Rat) -> Self {
        Scalar::Finite(v)
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Scalar::Bottom)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_bottom()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Bottom => None,
            Scalar::Finite(r) => Some(r),
        }
    }

    /// Semiring addition: max, with bottom neutral.
    pub fn join(&self, other: &Scalar) -> Scalar {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Classical subtraction; `None` if either operand is bottom.
    pub fn checked_sub(&self, other: &Scalar) -> Option<Rat> {
        match (self, other) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Some(a - b),
            _ => None,
        }
    }
}

/// Semiring multiplication: ordinary addition with bottom absorbing.
impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Scalar::Finite(a + b),
            _ => Scalar::Bottom,
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Bottom, Scalar::Bottom) => Ordering::Equal,
            (Scalar::Bottom, Scalar::Finite(_)) => Ordering::Less,
            (Scalar::Finite(_), Scalar::Bottom) => Ordering::Greater,
            (Scalar::Finite(a), Scalar::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bottom => write!(f, "-inf"),
            Scalar::Finite(r) => write!(f, "{}", r),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when parsing a scalar literal fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(pub String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid max-plus scalar literal: {:?}", self.0)
    }
}

impl std::error::Error for ParseScalarError {}

/// Accepts `-inf`, integer literals and `p/q` fractions.
impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "-inf" {
            return Ok(Scalar::Bottom);
        }
        let parsed = Rat::from_str(t).map_err(|_| ParseScalarError(s.to_string()))?;
        if parsed.denom().is_negative() {
            // normalised by Ratio, but keep the guard explicit
            return Err(ParseScalarError(s.to_string()));
        }
        Ok(Scalar::Finite(parsed))
    }
}

/// Scale a scalar by a positive rational factor (bottom is fixed).
pub fn scale(s: &Scalar, factor: &Rat) -> Scalar {
    debug_assert!(factor.is_positive());
    match s {
        Scalar::Bottom => Scalar::Bottom,
        Scalar::Finite(r) => Scalar::Finite(r * factor),
    }
}

/// Least common multiple of the denominators of all finite values,
/// as a rational ≥ 1. Multiplying through by it clears denominators.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Scalar>) -> Rat {
    let mut l = BigInt::one();
    for v in values {
        if let Scalar::Finite(r) = v {
            l = num_integer::lcm(l, r.denom().clone());
        }
    }
    Rat::from_integer(l)
}
