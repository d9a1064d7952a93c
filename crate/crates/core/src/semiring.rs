//! Exact tropical scalars.
//!
//! A [`Weight`] is either a rational number or the semiring zero. The zero is
//! the same value in every semiring; its meaning (`-inf` in max-plus, `+inf`
//! in min-plus, false in the Boolean semiring) comes from the [`SemiringTag`]
//! the arithmetic is performed under. The multiplicative unit is the rational
//! `0` in all three scalar semirings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, numerator and denominator of arbitrary size.
pub type Rational = BigRational;

/// An element of a tropical semiring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Zero,
    Finite(Rational),
}

/// The semiring an automaton or matrix lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiringTag {
    MaxPlus,
    MinPlus,
    Boolean,
    MaxPlusPair,
}

impl Weight {
    pub const fn zero() -> Self {
        Weight::Zero
    }

    pub fn one() -> Self {
        Weight::Finite(Rational::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Weight::Finite(Rational::from_integer(BigInt::from(v)))
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Weight::Finite(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn finite(value: Rational) -> Self {
        Weight::Finite(value)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Weight::Zero)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Weight::Zero => None,
            Weight::Finite(v) => Some(v),
        }
    }

    /// Finite value plus a rational offset; zero stays zero.
    pub fn shifted(&self, by: &Rational) -> Weight {
        match self {
            Weight::Zero => Weight::Zero,
            Weight::Finite(v) => Weight::Finite(v + by),
        }
    }

    /// Compares in the max-plus order, where zero is the least element.
    pub fn cmp_max_plus(&self, other: &Weight) -> Ordering {
        match (self, other) {
            (Weight::Zero, Weight::Zero) => Ordering::Equal,
            (Weight::Zero, _) => Ordering::Less,
            (_, Weight::Zero) => Ordering::Greater,
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
        }
    }

    /// True when the weight is finite and strictly positive.
    pub fn is_positive(&self) -> bool {
        self.value().is_some_and(|v| v.is_positive())
    }

    /// True when the weight is finite and `<= 0`.
    pub fn is_nonpositive(&self) -> bool {
        self.value().is_some_and(|v| !v.is_positive())
    }

    /// True when the weight is finite and exactly `0`.
    pub fn is_unit(&self) -> bool {
        self.value().is_some_and(|v| v.is_zero())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Zero => f.write_str("zero"),
            Weight::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Weight::Finite)
    }
}

/// Parses a weight literal: optional sign followed by an integer, a `p/q`
/// fraction, or a decimal with at most nine fractional digits. Decimals are
/// converted to exact fractions.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidWeight(s.to_string());
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());

    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(bad());
        }
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Rational::new(num.parse().map_err(|_| bad())?, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !(digits(int) || int.is_empty()) || !digits(frac) || frac.len() > 9 {
            return Err(bad());
        }
        let int: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        Rational::new(int * &scale + frac, scale)
    } else {
        if !digits(body) {
            return Err(bad());
        }
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if negative { -value } else { value })
}

impl SemiringTag {
    pub fn name(self) -> &'static str {
        match self {
            SemiringTag::MaxPlus => "max-plus",
            SemiringTag::MinPlus => "min-plus",
            SemiringTag::Boolean => "boolean",
            SemiringTag::MaxPlusPair => "max-plus-pair",
        }
    }

    /// Max-plus, min-plus and Boolean carry plain [`Weight`]s.
    pub fn is_scalar(self) -> bool {
        self != SemiringTag::MaxPlusPair
    }

    /// The tag obtained through `x -> -x`; Boolean and pair have no dual.
    pub fn dual(self) -> Option<SemiringTag> {
        match self {
            SemiringTag::MaxPlus => Some(SemiringTag::MinPlus),
            SemiringTag::MinPlus => Some(SemiringTag::MaxPlus),
            _ => None,
        }
    }

    /// Renders a weight the way this semiring reads it (`-inf`/`+inf` for zero).
    pub fn show(self, w: &Weight) -> String {
        match (w, self) {
            (Weight::Finite(v), _) => v.to_string(),
            (Weight::Zero, SemiringTag::MinPlus) => "+inf".to_string(),
            (Weight::Zero, SemiringTag::Boolean) => "false".to_string(),
            (Weight::Zero, _) => "-inf".to_string(),
        }
    }

    /// `x ⊕ y` for a scalar tag. Pair is treated as max-plus on plain weights.
    pub(crate) fn add(self, x: &Weight, y: &Weight) -> Weight {
        match (x, y) {
            (Weight::Zero, _) => y.clone(),
            (_, Weight::Zero) => x.clone(),
            (Weight::Finite(a), Weight::Finite(b)) => match self {
                SemiringTag::MinPlus => Weight::Finite(a.min(b).clone()),
                SemiringTag::Boolean => Weight::one(),
                _ => Weight::Finite(a.max(b).clone()),
            },
        }
    }

    /// `x ⊗ y` for a scalar tag.
    pub(crate) fn mul(self, x: &Weight, y: &Weight) -> Weight {
        match (x, y) {
            (Weight::Finite(a), Weight::Finite(b)) => match self {
                SemiringTag::Boolean => Weight::one(),
                _ => Weight::Finite(a + b),
            },
            _ => Weight::Zero,
        }
    }

    /// True when `x ⊕ y = x` and `x != y`, i.e. `x` wins the semiring sum.
    pub(crate) fn beats(self, x: &Weight, y: &Weight) -> bool {
        match self {
            SemiringTag::MinPlus => match (x, y) {
                (Weight::Zero, _) => false,
                (_, Weight::Zero) => true,
                (Weight::Finite(a), Weight::Finite(b)) => a < b,
            },
            _ => x.cmp_max_plus(y) == Ordering::Greater,
        }
    }

    fn require_scalar(self) -> Result<()> {
        if self.is_scalar() {
            Ok(())
        } else {
            Err(Error::TagMismatch {
                expected: "max-plus, min-plus or boolean".into(),
                found: self,
            })
        }
    }
}

impl fmt::Display for SemiringTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max-plus" => Ok(SemiringTag::MaxPlus),
            "min-plus" => Ok(SemiringTag::MinPlus),
            "boolean" => Ok(SemiringTag::Boolean),
            "max-plus-pair" => Ok(SemiringTag::MaxPlusPair),
            _ => Err(Error::InvalidWeight(format!("unknown semiring {s:?}"))),
        }
    }
}

/// Semiring sum: max, min or logical or, with zero neutral.
pub fn oplus(x: &Weight, y: &Weight, tag: SemiringTag) -> Result<Weight> {
    tag.require_scalar()?;
    Ok(tag.add(x, y))
}

/// Semiring product: rational addition with zero absorbing.
pub fn otimes(x: &Weight, y: &Weight, tag: SemiringTag) -> Result<Weight> {
    tag.require_scalar()?;
    Ok(tag.mul(x, y))
}

/// `x -> -x`, the isomorphism between max-plus and min-plus. Zero maps to zero.
pub fn negate_weight(x: &Weight) -> Weight {
    match x {
        Weight::Zero => Weight::Zero,
        Weight::Finite(v) => Weight::Finite(-v),
    }
}

/// Canonical morphism onto the Boolean semiring: zero stays zero, anything
/// finite becomes the unit `0`.
pub fn boolean_projection(x: &Weight) -> Weight {
    match x {
        Weight::Zero => Weight::Zero,
        Weight::Finite(_) => Weight::one(),
    }
}

/// An element of `R_max × R_max`: both coordinates finite, or the pair zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairWeight {
    first: Weight,
    second: Weight,
}

impl PairWeight {
    pub fn new(first: Weight, second: Weight) -> Result<Self> {
        if first.is_zero() != second.is_zero() {
            return Err(Error::InvalidWeight(format!(
                "mixed pair ({first}, {second})"
            )));
        }
        Ok(PairWeight { first, second })
    }

    pub fn zero() -> Self {
        PairWeight {
            first: Weight::Zero,
            second: Weight::Zero,
        }
    }

    pub fn first(&self) -> &Weight {
        &self.first
    }

    pub fn second(&self) -> &Weight {
        &self.second
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero()
    }

    /// Componentwise max.
    pub fn oplus(&self, other: &PairWeight) -> PairWeight {
        let t = SemiringTag::MaxPlus;
        PairWeight {
            first: t.add(&self.first, &other.first),
            second: t.add(&self.second, &other.second),
        }
    }

    /// Componentwise sum, zero absorbing.
    pub fn otimes(&self, other: &PairWeight) -> PairWeight {
        let t = SemiringTag::MaxPlus;
        PairWeight {
            first: t.mul(&self.first, &other.first),
            second: t.mul(&self.second, &other.second),
        }
    }
}

impl fmt::Display for PairWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

impl FromStr for PairWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidWeight(format!("pair weight {s:?} needs `w1,w2`")))?;
        PairWeight::new(a.parse()?, b.parse()?)
    }
}
