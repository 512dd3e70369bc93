//! Exact arithmetic in the quadratic field Q(√3).
//!
//! The Ad-invariant metric on su(3) has Gram discriminant 3 modulo rational
//! squares, so no rational orthonormal frame of R⁸ exists. Every quantity in
//! the reference model (structure constants, form coefficients, subspace
//! bases) is therefore an element `a + b√3` with `a, b` rational.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `rat + irr·√3` of Q(√3).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Q3 {
    pub rat: BigRational,
    pub irr: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Q3 {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        Q3 { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        Q3::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Q3::new(rat(n, d), BigRational::zero())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Q3::new(r, BigRational::zero())
    }

    /// `√3`
    pub fn sqrt3() -> Self {
        Q3::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn conj(&self) -> Self {
        Q3::new(self.rat.clone(), -self.irr.clone())
    }

    /// Field norm `a² − 3b²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(3.into()) * &self.irr * &self.irr
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Q3::new(&self.rat / &n, -(&self.irr / &n)))
    }

    /// Sign of the real number `a + b√3`, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.irr);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a² with 3b²
        let a2 = &self.rat * &self.rat;
        let b2 = BigRational::from_integer(3.into()) * &self.irr * &self.irr;
        if a2 > b2 {
            sa
        } else if a2 < b2 {
            sb
        } else {
            0
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        fn f(r: &BigRational) -> f64 {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
        f(&self.rat) + f(&self.irr) * 3f64.sqrt()
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for Q3 {
    fn zero() -> Self {
        Q3::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for Q3 {
    fn one() -> Self {
        Q3::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for Q3 {
    fn from(n: i64) -> Self {
        Q3::from_int(n)
    }
}

impl From<BigRational> for Q3 {
    fn from(r: BigRational) -> Self {
        Q3::from_rational(r)
    }
}

impl<'a> Add<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn add(self, o: &Q3) -> Q3 {
        Q3::new(&self.rat + &o.rat, &self.irr + &o.irr)
    }
}

impl<'a> Sub<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn sub(self, o: &Q3) -> Q3 {
        Q3::new(&self.rat - &o.rat, &self.irr - &o.irr)
    }
}

impl<'a> Mul<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn mul(self, o: &Q3) -> Q3 {
        if self.irr.is_zero() && o.irr.is_zero() {
            return Q3::new(&self.rat * &o.rat, BigRational::zero());
        }
        let three = BigRational::from_integer(3.into());
        Q3::new(
            &self.rat * &o.rat + three * &self.irr * &o.irr,
            &self.rat * &o.irr + &self.irr * &o.rat,
        )
    }
}

impl<'a> Div<&'a Q3> for &'a Q3 {
    type Output = Q3;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Q3) -> Q3 {
        let inv = o.inv().expect("division by zero in Q(√3)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Q3> for Q3 {
            type Output = Q3;
            fn $m(self, o: Q3) -> Q3 {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Q3> for Q3 {
            type Output = Q3;
            fn $m(self, o: &Q3) -> Q3 {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3::new(-self.rat, -self.irr)
    }
}

impl Neg for &Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3::new(-self.rat.clone(), -self.irr.clone())
    }
}

impl AddAssign<&Q3> for Q3 {
    fn add_assign(&mut self, o: &Q3) {
        self.rat += &o.rat;
        self.irr += &o.irr;
    }
}

impl SubAssign<&Q3> for Q3 {
    fn sub_assign(&mut self, o: &Q3) {
        self.rat -= &o.rat;
        self.irr -= &o.irr;
    }
}

impl MulAssign<&Q3> for Q3 {
    fn mul_assign(&mut self, o: &Q3) {
        *self = &*self * o;
    }
}

impl fmt::Display for Q3 {
    /// `p/q`, `p/q*sqrt3`, `sqrt3` or `p/q+r/s*sqrt3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let irr = |f: &mut fmt::Formatter<'_>, c: &BigRational| {
            if c.is_one() {
                write!(f, "sqrt3")
            } else {
                write!(f, "{c}*sqrt3")
            }
        };
        match (self.rat.is_zero(), self.irr.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) if self.irr.is_negative() => {
                write!(f, "-")?;
                irr(f, &-self.irr.clone())
            }
            (true, false) => irr(f, &self.irr),
            (false, false) => {
                write!(f, "{}{}", self.rat, if self.irr.is_negative() { "-" } else { "+" })?;
                irr(f, &self.irr.abs())
            }
        }
    }
}

impl fmt::Debug for Q3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Q3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Q3> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix("sqrt3") else {
            return Ok(Q3::from_rational(parse_rational(&t)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // split off the rational part at the last sign that is not leading
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (r, i) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let irr = match i {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rational(i.strip_prefix('+').unwrap_or(i))?,
        };
        Ok(Q3::new(parse_rational(r)?, irr))
    }
}

impl Serialize for Q3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
