//! Exact rational numbers and the small amount of modular arithmetic the
//! Riemann–Roch formulas need.
//!
//! Every quantity in this crate (volumes, Chern numbers, Euler
//! characteristics, bound constants) is a [`Rational`]. There is no float
//! path: the only conversion to `f64` is [`Rational::approx`], which exists
//! for display columns.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction with arbitrary-precision numerator and denominator.
///
/// Always stored in lowest terms with a positive denominator, so the derived
/// `Eq`/`Hash` are value equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for integers `>= 0`.
    pub fn is_nonnegative_integer(&self) -> bool {
        self.is_integer() && !self.is_negative()
    }

    /// The integer value, if this is an integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Nearest `f64`. Display only; no decision in this crate uses it.
    pub fn approx(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional surrounding whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// `a mod r` in `[0, r)`.
pub fn smallest_residue(a: i64, r: i64) -> Result<i64> {
    if r <= 0 {
        return Err(Error::InvalidModulus(r));
    }
    Ok(a.rem_euclid(r))
}

/// The inverse of `a` modulo `r`, in `[1, r)`.
pub fn mod_inverse(a: i64, r: i64) -> Result<i64> {
    if r < 2 {
        return Err(Error::InvalidModulus(r));
    }
    let eg = a.rem_euclid(r).extended_gcd(&r);
    if eg.gcd != 1 {
        return Err(Error::NoInverse { a, r });
    }
    Ok(eg.x.rem_euclid(r))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn residues() {
        assert_eq!(smallest_residue(5, 3).unwrap(), 2);
        assert_eq!(smallest_residue(7, 7).unwrap(), 0);
        assert_eq!(smallest_residue(-1, 5).unwrap(), 4);
        assert!(matches!(smallest_residue(3, 0), Err(Error::InvalidModulus(0))));
        assert!(matches!(smallest_residue(3, -2), Err(Error::InvalidModulus(-2))));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(5, 7).unwrap(), 3);
        assert_eq!(mod_inverse(1, 9).unwrap(), 1);
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert_eq!(mod_inverse(-2, 5).unwrap(), 2);
        assert!(matches!(mod_inverse(6, 9), Err(Error::NoInverse { a: 6, r: 9 })));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Rational::new(122, 1092).to_string(), "61/546");
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(Rational::new(64, 1).to_string(), "64");
        assert_eq!(q(" 10/ 4").to_string(), "5/2");
        assert_eq!(q("-0/7").to_string(), "0");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let v = serde_json::to_string(&vec![q("1"), q("0"), q("-7/3")]).unwrap();
        assert_eq!(v, r#"["1","0","-7/3"]"#);
        let back: Vec<Rational> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![q("1"), q("0"), q("-7/3")]);
    }

    #[test]
    fn wide_intermediates() {
        // lcm(1..=24)^2 does not fit in i64.
        let big = (1..=24u64).fold(1, lcm);
        let x = Rational::new(1, big) * Rational::new(1, big);
        assert_eq!(x * Rational::integer(big) * Rational::integer(big), Rational::one());
    }

    proptest! {
        #[test]
        fn residue_in_range(a in -10_000i64..10_000, r in 1i64..500) {
            let s = smallest_residue(a, r).unwrap();
            prop_assert!((0..r).contains(&s));
            prop_assert_eq!((a - s) % r, 0);
        }

        #[test]
        fn inverse_is_inverse(a in -10_000i64..10_000, r in 2i64..500) {
            prop_assume!(gcd(a.unsigned_abs(), r as u64) == 1);
            let i = mod_inverse(a, r).unwrap();
            prop_assert!((1..r).contains(&i));
            prop_assert_eq!(smallest_residue(a * i, r).unwrap(), 1);
        }

        #[test]
        fn add_sub_round_trip(p in -1000i64..1000, qd in 1i64..1000, s in -1000i64..1000, t in 1i64..1000) {
            let x = Rational::new(p, qd);
            let y = Rational::new(s, t);
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
