//! Numeric backends for flux and potential values.
//!
//! Every quantity in this crate is generic over [`Scalar`]. Two backends are
//! provided: [`Rational`] (arbitrary-precision rationals, every identity in
//! the library holds bit-exactly) and `f64` (all equality checks degrade to a
//! relative tolerance of [`FLOAT_EPS`]). A whole run uses one backend
//! uniformly; mixing is a type error.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Relative tolerance used by the `f64` backend for equality and zero tests.
pub const FLOAT_EPS: f64 = 1e-9;

/// Which backend a scalar type is; used by serialization and diagnostics.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScalarMode {
    Rational,
    Float,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Rational => write!(f, "rational"),
            ScalarMode::Float => write!(f, "float"),
        }
    }
}

/// Arithmetic required of a flux/potential value.
///
/// `approx_eq` is exact equality for rationals and relative-tolerance
/// equality for floats; code that checks identities must go through it (or
/// `approx_zero`) so that both backends behave sensibly.
pub trait Scalar:
    Sized
    + Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Send
    + Sync
    + 'static
{
    const MODE: ScalarMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// `num / den`; panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;

    fn abs(&self) -> Self;
    /// Exact sign of the value: -1, 0 or +1.
    fn sign(&self) -> i8;
    /// Exact zero test (no tolerance; use `approx_zero` for residuals).
    fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Backend-appropriate equality: exact for rationals, within
    /// [`FLOAT_EPS`] relative (floored at absolute `FLOAT_EPS`) for floats.
    fn approx_eq(&self, other: &Self) -> bool;
    fn approx_zero(&self) -> bool {
        self.approx_eq(&Self::zero())
    }

    fn to_f64(&self) -> f64;

    /// Parse from a JSON value: a number, or a `"p/q"` string.
    fn from_json(value: &serde_json::Value) -> Option<Self>;
    /// Serialize so that `from_json` round-trips losslessly.
    fn to_json(&self) -> serde_json::Value;
}

/// Arbitrary-precision rational scalar. The default backend: all library
/// identities (reconstruction, additivity, coarea) hold exactly over it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Parse `"p/q"`, `"p"`, or a decimal like `"-3.25"` exactly.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            return Some(Rational(BigRational::new(num, den)));
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let negative = int_part.trim_start().starts_with('-');
            let int: BigInt = if int_part == "-" || int_part.is_empty() {
                BigInt::zero()
            } else {
                int_part.parse().ok()?
            };
            let num: BigInt = frac_part.parse().ok()?;
            let den = BigInt::from(10u32).pow(frac_part.len() as u32);
            let frac = BigRational::new(num, den);
            let int = BigRational::from(int);
            return Some(Rational(if negative { int - frac } else { int + frac }));
        }
        let int: BigInt = text.parse().ok()?;
        Some(Rational(BigRational::from(int)))
    }
}

/// Shared by Display and Debug: integers print bare, otherwise `p/q`.
macro_rules! fmt_rational_body {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if self.0.is_integer() {
                write!(f, "{}", self.0.numer())
            } else {
                write!(f, "{}/{}", self.0.numer(), self.0.denom())
            }
        }
    };
}

impl fmt::Display for Rational {
    fmt_rational_body!();
}

impl fmt::Debug for Rational {
    fmt_rational_body!();
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational::new(1, 1)
    }

    fn from_int(n: i64) -> Self {
        Rational(BigRational::from(BigInt::from(n)))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }

    fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    fn sign(&self) -> i8 {
        match self.0.numer().sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn from_json(value: &serde_json::Value) -> Option<Self> {
        match value {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Some(Rational::from_int(i))
                } else {
                    // Decimal numbers arrive through their textual form so
                    // that e.g. 0.5 parses as exactly 1/2.
                    Rational::parse(&n.to_string())
                }
            }
            serde_json::Value::String(s) => Rational::parse(s),
            _ => None,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        if self.is_integer() {
            if let Some(i) = self.0.numer().to_i64() {
                return serde_json::Value::from(i);
            }
        }
        serde_json::Value::from(format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        num as f64 / den as f64
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = 1.0f64.max(f64::abs(*self)).max(f64::abs(*other));
        (self - other).abs() <= FLOAT_EPS * scale
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_json(value: &serde_json::Value) -> Option<Self> {
        match value {
            serde_json::Value::Number(n) => {
                let x = n.as_f64()?;
                x.is_finite().then_some(x)
            }
            serde_json::Value::String(s) => {
                if let Some((num, den)) = s.split_once('/') {
                    let num: f64 = num.trim().parse().ok()?;
                    let den: f64 = den.trim().parse().ok()?;
                    if den == 0.0 {
                        return None;
                    }
                    let x = num / den;
                    x.is_finite().then_some(x)
                } else {
                    let x: f64 = s.trim().parse().ok()?;
                    x.is_finite().then_some(x)
                }
            }
            _ => None,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_forms() {
        assert_eq!(Rational::parse("3/4"), Some(Rational::new(3, 4)));
        assert_eq!(Rational::parse("-7"), Some(Rational::from_int(-7)));
        assert_eq!(Rational::parse("0.5"), Some(Rational::new(1, 2)));
        assert_eq!(Rational::parse("-3.25"), Some(Rational::new(-13, 4)));
        assert_eq!(Rational::parse("1/0"), None);
        assert_eq!(Rational::parse("x"), None);
    }

    #[test]
    fn rational_display_integer_vs_fraction() {
        assert_eq!(Rational::new(6, 3).to_string(), "2");
        assert_eq!(Rational::new(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn rational_json_roundtrip() {
        for r in [
            Rational::new(0, 1),
            Rational::new(22, 7),
            Rational::from_int(-4),
        ] {
            let j = r.to_json();
            assert_eq!(Rational::from_json(&j), Some(r));
        }
        // Exact decimal intake: 0.1 is read as 1/10, not as the nearest f64.
        let j: serde_json::Value = serde_json::from_str("0.1").unwrap();
        assert_eq!(Rational::from_json(&j), Some(Rational::new(1, 10)));
    }

    #[test]
    fn float_approx_eq_is_relative() {
        assert!(1e12f64.approx_eq(&(1e12 + 1.0)));
        assert!(!1.0f64.approx_eq(&1.001));
        assert!(1e-12f64.approx_zero());
        assert!(!1e-6f64.approx_zero());
    }

    #[test]
    fn signs() {
        assert_eq!(Rational::new(-3, 7).sign(), -1);
        assert_eq!(Rational::zero().sign(), 0);
        assert_eq!(2.5f64.sign(), 1);
        assert_eq!(0.0f64.sign(), 0);
    }
}
