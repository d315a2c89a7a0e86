//! Exact scalar arithmetic for exponent conditions.
//!
//! Region membership in the exponent plane hinges on strict vs. closed
//! boundaries, so rational inputs are kept as exact rationals and only
//! genuinely irrational inputs fall back to floating point with a
//! documented comparison slack.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Slack used when an equality is tested and at least one side is a float.
pub const EQ_SLACK: f64 = 1e-12;

/// A scalar that is either an exact rational or a double.
///
/// Mixed-mode arithmetic demotes to `Real`; rational-rational arithmetic
/// stays exact. Equality against zero of a `Real` uses [`EQ_SLACK`];
/// strict comparisons of `Real`s are plain float comparisons.
#[derive(Debug, Clone)]
pub enum Exact {
    Rational(BigRational),
    Real(f64),
}

impl Exact {
    pub fn int(n: i64) -> Self {
        Exact::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Exact::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(x: f64) -> Self {
        Exact::Real(x)
    }

    /// Parses `"p/q"`, `"inf"`, a decimal, or an integer literal.
    /// Integers and `p/q` become exact rationals; decimals stay floats.
    /// `"inf"` is rejected here (callers map it to the reciprocal 0).
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: i64 = a.trim().parse().ok()?;
            let den: i64 = b.trim().parse().ok()?;
            if den == 0 {
                return None;
            }
            return Some(Exact::ratio(num, den));
        }
        if let Ok(n) = s.parse::<i64>() {
            return Some(Exact::int(n));
        }
        if let Ok(x) = s.parse::<f64>() {
            if x.is_finite() {
                return Some(Exact::Real(x));
            }
        }
        None
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Exact::Rational(_))
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Exact::Rational(_) => true,
            Exact::Real(x) => x.is_finite(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exact::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Exact::Real(x) => *x,
        }
    }

    /// Multiplicative inverse. Panics on exact zero.
    pub fn recip(&self) -> Self {
        match self {
            Exact::Rational(r) => {
                assert!(!r.is_zero(), "reciprocal of zero");
                Exact::Rational(r.recip())
            }
            Exact::Real(x) => Exact::Real(1.0 / x),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Exact::Rational(r) => r.is_zero(),
            Exact::Real(x) => x.abs() <= EQ_SLACK,
        }
    }

    /// Exact equality for rationals; `|a-b| <= EQ_SLACK` otherwise.
    pub fn eq_slack(&self, other: &Exact) -> bool {
        match (self, other) {
            (Exact::Rational(a), Exact::Rational(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= EQ_SLACK,
        }
    }

    /// Strict `self < other`; exact for rational pairs.
    pub fn lt(&self, other: &Exact) -> bool {
        match (self, other) {
            (Exact::Rational(a), Exact::Rational(b)) => a < b,
            _ => self.to_f64() < other.to_f64(),
        }
    }

    pub fn le(&self, other: &Exact) -> bool {
        match (self, other) {
            (Exact::Rational(a), Exact::Rational(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Exact::Rational(r) => Exact::Rational(r.abs()),
            Exact::Real(x) => Exact::Real(x.abs()),
        }
    }

    fn promote(&self) -> BigRational {
        match self {
            Exact::Rational(r) => r.clone(),
            Exact::Real(x) => BigRational::from_f64(*x).expect("finite float"),
        }
    }

    fn binop(
        &self,
        other: &Exact,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        flt: impl Fn(f64, f64) -> f64,
    ) -> Exact {
        match (self, other) {
            (Exact::Rational(a), Exact::Rational(b)) => Exact::Rational(rat(a, b)),
            _ => Exact::Real(flt(self.to_f64(), other.to_f64())),
        }
    }

    /// Exact rational representation, promoting a float bit-exactly.
    pub fn as_rational(&self) -> BigRational {
        self.promote()
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rational(r) => write!(f, "{}", r),
            Exact::Real(x) => write!(f, "{}", x),
        }
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.eq_slack(other)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Exact {
            type Output = Exact;
            fn $method(self, rhs: &Exact) -> Exact {
                self.binop(rhs, |a, b| a $op b, |a, b| a $op b)
            }
        }
        impl $trait for Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Exact> for Exact {
            type Output = Exact;
            fn $method(self, rhs: &Exact) -> Exact {
                (&self).$method(rhs)
            }
        }
        impl $trait<Exact> for &Exact {
            type Output = Exact;
            fn $method(self, rhs: Exact) -> Exact {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);
impl_binop!(Div, div, /);

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        match self {
            Exact::Rational(r) => Exact::Rational(-r),
            Exact::Real(x) => Exact::Real(-x),
        }
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let a = Exact::ratio(1, 3);
        let b = Exact::ratio(1, 6);
        assert!((&a + &b).eq_slack(&Exact::ratio(1, 2)));
        assert!((&a - &b).eq_slack(&b));
        assert!((&a * &b).eq_slack(&Exact::ratio(1, 18)));
        assert!((&a / &b).eq_slack(&Exact::int(2)));
    }

    #[test]
    fn strictness_survives_tiny_rationals() {
        // 1/10^9 apart: still strictly ordered, never "equal".
        let a = Exact::ratio(1_000_000_000, 3_000_000_001);
        let b = Exact::ratio(1, 3);
        assert!(a.lt(&b));
        assert!(!a.eq_slack(&b));
    }

    #[test]
    fn float_mode_uses_slack() {
        let a = Exact::real(0.5 + 1e-13);
        let b = Exact::ratio(1, 2);
        assert!(a.eq_slack(&b));
    }

    #[test]
    fn parse_forms() {
        assert!(Exact::parse("4/3").unwrap().is_rational());
        assert!(Exact::parse("2").unwrap().is_rational());
        assert!(!Exact::parse("1.4142135").unwrap().is_rational());
        assert!(Exact::parse("1/0").is_none());
        assert!(Exact::parse("nan").is_none());
    }
}
