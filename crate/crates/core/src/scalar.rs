//! Coefficient rings.
//!
//! Everything algebraic is generic over [`Scalar`], implemented for exact
//! arbitrary-precision rationals ([`Rational`]) and for `f64`. The exact ring
//! is the default for Hankel and expansion work; the float ring replaces
//! exact zero tests by an absolute tolerance of [`ZERO_TOL`] on data scaled to
//! unit max-norm.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational numbers.
pub type Rational = BigRational;

/// Absolute zero tolerance of the float ring (on unit max-norm data).
pub const ZERO_TOL: f64 = 1e-12;

pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// True for rings with exact arithmetic.
    const EXACT: bool;

    /// Zero test. `scale` is the magnitude of the data the value was derived
    /// from; exact rings ignore it.
    fn is_negligible(&self, scale: f64) -> bool;

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Parses `"p/q"`, integer or decimal strings. Exact rings parse
    /// decimals exactly.
    fn parse_scalar(s: &str) -> Result<Self>;

    /// Canonical text form (`"p/q"` or `"p"` for rationals).
    fn render(&self) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer conversion")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn approx(&self) -> f64 {
        // `Ratio::to_f64` handles huge numerators and denominators.
        self.to_f64().unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= ZERO_TOL * scale.max(f64::MIN_POSITIVE)
    }

    fn approx(&self) -> f64 {
        *self
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            return Ok(n / d);
        }
        let v: f64 = t.parse().map_err(|_| Error::Parse(s.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Parse(s.to_string()))
        }
    }

    fn render(&self) -> String {
        format!("{:?}", self)
    }
}

/// Parses an exact rational from `"p/q"`, `"p"` or a decimal such as
/// `"-0.125"` or `"2.5e-3"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    if shift >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// True when the string is a plain `"p/q"` or integer literal (no decimal
/// point or exponent).
pub fn is_rational_literal(s: &str) -> bool {
    let t = s.trim();
    let t = t.strip_prefix(['-', '+']).unwrap_or(t);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == ' ')
}

/// Sign `ε = ±1`, serialized as the integer `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<T: Scalar>(x: &T) -> Sign {
        if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.as_i8() as f64
    }

    pub fn to_scalar<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn apply<T: Scalar>(self, x: T) -> T {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

/// Converts exact data to the float ring.
pub fn to_float<T: Scalar>(x: &T) -> f64 {
    x.approx()
}
