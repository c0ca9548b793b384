//! Exact scalars: prime fields GF(p) and the rationals.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest modulus accepted for a prime field; products of two residues fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("scalars from different domains ({0} and {1})")]
    MixedDomain(Domain, Domain),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar domain `{0}`")]
    BadDomain(String),
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
}

/// The scalar field: `GF(p)` or `QQ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    Prime(u64),
    Rationals,
}

impl Domain {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Domain::Prime(p))
    }

    /// `None` for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Prime(p) => *p,
            Domain::Rationals => 0,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            Domain::Prime(p) => Some(*p),
            Domain::Rationals => None,
        }
    }

    /// True when the field has at least `k` elements.
    pub fn has_at_least(&self, k: u64) -> bool {
        self.cardinality().is_none_or(|c| c >= k)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(p) => write!(f, "GF({p})"),
            Domain::Rationals => f.write_str("QQ"),
        }
    }
}

impl FromStr for Domain {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "QQ" || t == "Q" {
            return Ok(Domain::Rationals);
        }
        let inner = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ScalarError::BadDomain(t.to_string()))?;
        let p: u64 = inner
            .trim()
            .parse()
            .map_err(|_| ScalarError::BadDomain(t.to_string()))?;
        Domain::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. GF(p) residues are kept in `[0, p)`; rationals in lowest terms
/// (guaranteed by `BigRational`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u64, v: u64 },
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn zero(domain: Domain) -> Self {
        Self::from_i64(domain, 0)
    }

    pub fn one(domain: Domain) -> Self {
        Self::from_i64(domain, 1)
    }

    pub fn from_i64(domain: Domain, x: i64) -> Self {
        match domain {
            Domain::Prime(p) => Scalar::Fp {
                p,
                v: x.rem_euclid(p as i64) as u64,
            },
            Domain::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(x)))),
        }
    }

    /// `num / den` mapped into `domain`.
    pub fn from_ratio(domain: Domain, num: &BigInt, den: &BigInt) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match domain {
            Domain::Prime(p) => {
                let pb = BigInt::from(p);
                let n = reduce_big(num, &pb, p);
                let d = reduce_big(den, &pb, p);
                Scalar::Fp { p, v: n }.div(&Scalar::Fp { p, v: d })
            }
            Domain::Rationals => Ok(Scalar::Q(Box::new(BigRational::new(num.clone(), den.clone())))),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Fp { p, .. } => Domain::Prime(*p),
            Scalar::Q(_) => Domain::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), ScalarError> {
        let (a, b) = (self.domain(), other.domain());
        if a == b {
            Ok(())
        } else {
            Err(ScalarError::MixedDomain(a, b))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: pow_mod(*v, *p - 2, *p),
            },
            Scalar::Q(q) => Scalar::Q(Box::new(q.recip())),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.domain());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Signed representative: GF(p) residues above `p/2` become negative.
    pub fn to_signed_i64(&self) -> Option<i64> {
        match self {
            Scalar::Fp { p, v } => Some(if *v > p / 2 { *v as i64 - *p as i64 } else { *v as i64 }),
            Scalar::Q(q) => {
                if q.is_integer() {
                    q.to_integer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    /// Raw residue for GF(p); `None` over the rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Fp { v, .. } => Some(*v),
            Scalar::Q(_) => None,
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Fp { p, v } => *v > p / 2,
            Scalar::Q(q) => q.is_negative(),
        }
    }

    /// Parse an integer or `a/b` literal into `domain`.
    pub fn parse_in(domain: Domain, s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        let bad = || ScalarError::BadScalar(t.to_string());
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (
                BigInt::from_str(a.trim()).map_err(|_| bad())?,
                BigInt::from_str(b.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(t).map_err(|_| bad())?, BigInt::one()),
        };
        Scalar::from_ratio(domain, &num, &den)
    }
}

fn reduce_big(x: &BigInt, pb: &BigInt, p: u64) -> u64 {
    let r = ((x % pb) + pb) % pb;
    r.to_u64().unwrap_or(0) % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

#[cold]
fn mixed(a: Domain, b: Domain) -> ! {
    panic!("arithmetic on scalars from different domains ({a} and {b})")
}

impl Add for &Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) if p == q => {
                let s = v + w;
                Scalar::Fp { p: *p, v: if s >= *p { s - p } else { s } }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() + b.as_ref())),
            _ => mixed(self.domain(), rhs.domain()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) if p == q => Scalar::Fp {
                p: *p,
                v: if v >= w { v - w } else { v + p - w },
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() - b.as_ref())),
            _ => mixed(self.domain(), rhs.domain()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) if p == q => Scalar::Fp { p: *p, v: v * w % p },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(a.as_ref() * b.as_ref())),
            _ => mixed(self.domain(), rhs.domain()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: if *v == 0 { 0 } else { p - v } },
            Scalar::Q(a) => Scalar::Q(Box::new(-a.as_ref())),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order, used only for canonical containers.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) => (p, v).cmp(&(q, w)),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Less,
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { .. } => write!(f, "{}", self.to_signed_i64().unwrap_or(0)),
            Scalar::Q(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { p, v } => write!(f, "{v} (mod {p})"),
            Scalar::Q(q) => write!(f, "{q}"),
        }
    }
}
