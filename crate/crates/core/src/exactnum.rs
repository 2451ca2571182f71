//! Exact scalars: rationals and elements of a real quadratic field Q(sqrt D).
//!
//! Every geometric predicate in the crate (hyperplane sides, cone tests) is
//! decided by [`QuadScalar::sign`], which never touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Config(format!("not a rational number: {s:?}")))
}

/// Generalised binomial coefficient `C(top, k)` for any integer `top`.
pub fn binomial(top: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// The field Q(sqrt D) used for a session. `D = 1` is plain Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::BadDiscriminant(d));
        }
        Ok(QuadField { d })
    }

    pub fn rationals() -> Self {
        QuadField { d: 1 }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadScalar {
        QuadScalar::new(a, b, self.d)
    }

    pub fn sqrt_d(&self) -> QuadScalar {
        self.elem(Rational::zero(), Rational::one())
    }

    pub fn from_raw(&self, raw: &RawQuad) -> QuadScalar {
        self.elem(raw.a.clone(), raw.b.clone())
    }
}

/// `a + b*sqrt(d)` in normal form: `b == 0` iff `d == 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d >= 1, "quadratic field discriminant must be positive");
        let mut x = QuadScalar { a, b, d };
        x.normalize();
        x
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    fn normalize(&mut self) {
        if self.d == 1 {
            let b = std::mem::replace(&mut self.b, Rational::zero());
            self.a += b;
        } else if self.b.is_zero() {
            self.d = 1;
        }
    }

    /// Idempotent re-normalisation (values are always kept normalised).
    pub fn normalized(&self) -> Self {
        Self::new(self.a.clone(), self.b.clone(), self.d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The discriminant of the field this value lives in (1 when rational).
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Exact sign of `a + b*sqrt(d)` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger of |a| and |b|*sqrt(d) wins.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * int(self.d as i64);
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    fn field_with(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::FieldMismatch(x, y)),
        }
    }

    fn expect_field(&self, other: &Self) -> u64 {
        match self.field_with(other) {
            Ok(d) => d,
            Err(e) => panic!("{e}"),
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int(self.d as i64)
    }

    pub fn conjugate(&self) -> Self {
        QuadScalar { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadScalar::new(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.field_with(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadScalar::new(&self.a * c, &self.b * c, self.d)
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Binary operation selector for [`quad_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: reports mismatched fields and division by zero
/// as errors instead of panicking.
pub fn quad_arith(x: &QuadScalar, y: &QuadScalar, op: ArithOp) -> Result<QuadScalar> {
    x.field_with(y)?;
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl<'a> Add<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &QuadScalar) -> QuadScalar {
        let d = self.expect_field(rhs);
        QuadScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &QuadScalar) -> QuadScalar {
        let d = self.expect_field(rhs);
        QuadScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &QuadScalar) -> QuadScalar {
        let d = self.expect_field(rhs);
        let dd = int(d as i64);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadScalar::new(a, b, d)
    }
}

impl<'a> Div<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: &QuadScalar) -> QuadScalar {
        self.checked_div(rhs).expect("QuadScalar division")
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $m(self, rhs: QuadScalar) -> QuadScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QuadScalar> for QuadScalar {
    fn mul_assign(&mut self, rhs: &QuadScalar) {
        *self = &*self * rhs;
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl From<Rational> for QuadScalar {
    fn from(a: Rational) -> Self {
        QuadScalar::from_rational(a)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        QuadScalar::from_int(n)
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() {
            String::new()
        } else if (-&self.b).is_one() {
            "-".to_string()
        } else {
            format!("{}*", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b}sqrt({})", self.d)
        } else if self.b.is_positive() {
            write!(f, "{}+{b}sqrt({})", self.a, self.d)
        } else {
            write!(f, "{}{b}sqrt({})", self.a, self.d)
        }
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawQuad { a: self.a.clone(), b: self.b.clone() }.serialize(s)
    }
}

/// A field element as it appears in JSON, before the session's `D` is
/// attached. Accepts `"p/q"`, an integer, `[a, b]` or `{"a": .., "b": ..}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawQuad {
    pub a: Rational,
    pub b: Rational,
}

impl RawQuad {
    pub fn rational(a: Rational) -> Self {
        RawQuad { a, b: Rational::zero() }
    }
}

impl Serialize for RawQuad {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadScalar", 2)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Int(i64),
    Str(String),
}

impl RatRepr {
    fn into_rational<E: serde::de::Error>(self) -> std::result::Result<Rational, E> {
        match self {
            RatRepr::Int(n) => Ok(int(n)),
            RatRepr::Str(s) => parse_rational(&s).map_err(E::custom),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum QuadRepr {
    Scalar(RatRepr),
    Pair(RatRepr, RatRepr),
    Object { a: RatRepr, #[serde(default)] b: Option<RatRepr> },
}

impl<'de> Deserialize<'de> for RawQuad {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Ok(match QuadRepr::deserialize(de)? {
            QuadRepr::Scalar(a) => RawQuad::rational(a.into_rational()?),
            QuadRepr::Pair(a, b) => RawQuad { a: a.into_rational()?, b: b.into_rational()? },
            QuadRepr::Object { a, b } => RawQuad {
                a: a.into_rational()?,
                b: match b {
                    Some(b) => b.into_rational()?,
                    None => Rational::zero(),
                },
            },
        })
    }
}

/// Serde helper writing a rational as `"p/q"`.
pub fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(x))
}

/// Serialise a rational as its `"p/q"` string.
pub fn rational_string(x: &Rational) -> String {
    x.to_string()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
