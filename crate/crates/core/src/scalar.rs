//! Exact arithmetic in the quadratic field Q(sqrt 2).
//!
//! Every coefficient in the engine lives here: module parameters, structure
//! constants, polynomial coefficients. A [`Scalar`] is `a + b*sqrt2` with
//! `a`, `b` arbitrary-precision rationals, so equality is structural and
//! nothing is ever rounded.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, kept in canonical reduced form
/// (positive denominator, gcd 1) by the backing implementation.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// An element `a + b*sqrt2` of Q(sqrt 2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// The rational `p/q`. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar::new(
            Rational::new(BigInt::from(p), BigInt::from(q)),
            Rational::zero(),
        )
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    /// `sqrt2/2`, the canonical form of `1/sqrt2`.
    pub fn inv_sqrt2() -> Self {
        Scalar::new(
            Rational::zero(),
            Rational::new(BigInt::from(1), BigInt::from(2)),
        )
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Purely rational, i.e. the `sqrt2` component vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt2`.
    pub fn conjugate(&self) -> Scalar {
        Scalar::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 2b^2`, a rational; zero iff the element is zero
    /// (sqrt2 is irrational).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// `self^n` for any integer exponent. `x^0 = 1` (including `x = 0`);
    /// negative exponents require a nonzero base.
    pub fn pow(&self, n: i64) -> Result<Scalar, ScalarError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s, s^2 = 2
        let two = Rational::from_integer(BigInt::from(2));
        Scalar::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $fn:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                (&self).$fn(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                (&self).$fn(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: Scalar) -> Scalar {
                self.$fn(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_sqrt2_part(b: &Rational) -> String {
    if b.is_one() {
        "sqrt2".to_string()
    } else if (-b).is_one() {
        "-sqrt2".to_string()
    } else {
        format!("{}*sqrt2", fmt_rational(b))
    }
}

impl fmt::Display for Scalar {
    /// Canonical textual form: `p/q`, `r/s*sqrt2`, or `p/q + r/s*sqrt2`
    /// (with integer parts printed bare and unit coefficients elided).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}", fmt_sqrt2_part(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}-{}", fmt_rational(&self.a), fmt_sqrt2_part(&-self.b.clone()))
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), fmt_sqrt2_part(&self.b))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for Scalar {
    type Err = crate::parse::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64) -> Scalar {
        Scalar::from_int(a)
    }

    #[test]
    fn conjugate_product() {
        let x = &s(1) + &Scalar::sqrt2();
        let y = &s(1) - &Scalar::sqrt2();
        assert_eq!(&x * &y, s(-1));
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), s(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = &s(1) + &Scalar::sqrt2();
        let inv = x.inv().unwrap();
        // oracle: multiply back out
        assert_eq!(&inv * &x, s(1));
        assert_eq!(inv, &s(-1) + &Scalar::sqrt2());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s(1).checked_div(&s(0)), Err(ScalarError::DivisionByZero));
        assert_eq!(s(0).pow(-1), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(s(2).pow(-1).unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(Scalar::sqrt2().pow(2).unwrap(), s(2));
        assert_eq!(s(0).pow(0).unwrap(), s(1));
        // oracle: repeated multiplication
        let x = &s(1) + &Scalar::sqrt2();
        let cubed = &(&x * &x) * &x;
        assert_eq!(x.pow(3).unwrap(), cubed);
        assert_eq!(cubed, &s(7) + &(&s(5) * &Scalar::sqrt2()));
        assert_eq!(&x.pow(5).unwrap() * &x.pow(-5).unwrap(), s(1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(Scalar::sqrt2().to_string(), "sqrt2");
        assert_eq!((-Scalar::sqrt2()).to_string(), "-sqrt2");
        assert_eq!(Scalar::inv_sqrt2().to_string(), "1/2*sqrt2");
        let mixed = &s(1) - &(&Scalar::from_ratio(1, 2) * &Scalar::sqrt2());
        assert_eq!(mixed.to_string(), "1-1/2*sqrt2");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_scalar() -> impl Strategy<Value = Scalar> {
            (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(an, ad, bn, bd)| {
                Scalar::new(
                    Rational::new(BigInt::from(an), BigInt::from(ad)),
                    Rational::new(BigInt::from(bn), BigInt::from(bd)),
                )
            })
        }

        proptest! {
            #[test]
            fn field_laws(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
                prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &y, &y * &x);
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&x + &(-&x), Scalar::zero());
                if !x.is_zero() {
                    prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
                }
            }

            #[test]
            fn display_parse_round_trip(x in arb_scalar()) {
                let printed = x.to_string();
                let reparsed: Scalar = printed.parse().unwrap();
                prop_assert_eq!(reparsed, x);
            }
        }
    }
}
