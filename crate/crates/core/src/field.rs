//! Exact coefficient fields: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid scalar literal `{0}`")]
    InvalidLiteral(String),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(String, String),
}

/// A field whose elements carry enough context (e.g. the modulus) to
/// construct constants of the same field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// Parses `n`, `-n` or `n/d`.
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, FieldError>;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn div(&self, other: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&other.inv().ok_or(FieldError::DivisionByZero)?))
    }

    /// Uniform small integer in `[-bound, bound]`.
    fn random_small<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R, bound: i64) -> Self {
        Self::from_i64(ctx, rng.gen_range(-bound..=bound))
    }
}

fn split_fraction(s: &str) -> Result<(BigInt, BigInt), FieldError> {
    let bad = || FieldError::InvalidLiteral(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok((n, d))
}

/// `ℚ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

/// Context of [`Q`]: there is only one rational field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rationals;

impl fmt::Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QQ")
    }
}

impl Q {
    pub fn new(n: i64, d: i64) -> Self {
        Q(BigRational::new(n.into(), d.into()))
    }

    pub fn int(n: i64) -> Self {
        Q(BigRational::from_integer(n.into()))
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    type Ctx = Rationals;

    fn ctx(&self) -> Rationals {
        Rationals
    }
    fn zero(_: &Rationals) -> Self {
        Q(BigRational::zero())
    }
    fn one(_: &Rationals) -> Self {
        Q(BigRational::one())
    }
    fn from_i64(_: &Rationals, v: i64) -> Self {
        Q::int(v)
    }
    fn parse(_: &Rationals, s: &str) -> Result<Self, FieldError> {
        let (n, d) = split_fraction(s)?;
        Ok(Q(BigRational::new(n, d)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Q(self.0.recip()))
    }
}

/// Modulus of a prime field, `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        let is_prime = (2..(1 << 31)).contains(&p)
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(Prime(p as u32))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

/// Element of `𝔽_p`, stored as a representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    value: u32,
    p: Prime,
}

impl Fp {
    pub fn new(p: Prime, v: i64) -> Self {
        Fp {
            value: v.rem_euclid(p.0 as i64) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    fn check(self, o: Fp) {
        assert_eq!(self.p, o.p, "mixing elements of different prime fields");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Ctx = Prime;

    fn ctx(&self) -> Prime {
        self.p
    }
    fn zero(p: &Prime) -> Self {
        Fp::new(*p, 0)
    }
    fn one(p: &Prime) -> Self {
        Fp::new(*p, 1)
    }
    fn from_i64(p: &Prime, v: i64) -> Self {
        Fp::new(*p, v)
    }
    fn parse(p: &Prime, s: &str) -> Result<Self, FieldError> {
        let (n, d) = split_fraction(s)?;
        let m = BigInt::from(p.0);
        let reduce = |x: BigInt| -> i64 {
            let r = ((x % &m) + &m) % &m;
            i64::try_from(r).expect("residue fits")
        };
        let (n, d) = (Fp::new(*p, reduce(n)), Fp::new(*p, reduce(d)));
        n.div(&d)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        self.check(*o);
        Fp::new(self.p, self.value as i64 + o.value as i64)
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(*o);
        Fp {
            value: ((self.value as u64 * o.value as u64) % self.p.0 as u64) as u32,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp::new(self.p, -(self.value as i64))
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: v^(p-2)
        let p = self.p.0 as u64;
        let (mut base, mut exp, mut acc) = (self.value as u64, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(Fp {
            value: acc as u32,
            p: self.p,
        })
    }
}

/// True when the printed form of `c` starts with a minus sign.
pub fn is_negative_literal<F: Field>(c: &F) -> bool {
    c.to_string().starts_with('-')
}

impl Q {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_basics() {
        let ctx = Rationals;
        let x = Q::parse(&ctx, "3/2").unwrap();
        assert_eq!(x.mul(&Q::int(2)), Q::int(3));
        assert_eq!(x.inv().unwrap(), Q::new(2, 3));
        assert_eq!(Q::zero(&ctx).inv(), None);
        assert_eq!(Q::int(1).div(&Q::int(0)), Err(FieldError::DivisionByZero));
        assert_eq!(Q::parse(&ctx, "-4/6").unwrap(), Q::new(-2, 3));
        assert!(Q::parse(&ctx, "x").is_err());
        assert_eq!(Q::parse(&ctx, "1/0"), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn prime_field_basics() {
        let p = Prime::new(7).unwrap();
        let three = Fp::new(p, 3);
        assert_eq!(three.inv().unwrap(), Fp::new(p, 5));
        assert_eq!(Fp::parse(&p, "3/2").unwrap(), Fp::new(p, 5));
        assert_eq!(Fp::parse(&p, "-1").unwrap(), Fp::new(p, 6));
        assert_eq!(Fp::parse(&p, "1/7"), Err(FieldError::DivisionByZero));
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(1 << 31).is_err());
        assert!(Prime::new(2_147_483_647).is_ok());
    }

    proptest! {
        #[test]
        fn fp_field_axioms(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let p = Prime::new(2_147_483_647).unwrap();
            let (a, b, c) = (Fp::new(p, a), Fp::new(p, b), Fp::new(p, c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a.neg()), Fp::zero(&p));
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Fp::one(&p));
            }
        }

        #[test]
        fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
            let (x, y) = (Q::new(a, b), Q::new(c, b + 1));
            prop_assert_eq!(x.add(&y).sub(&y), x.clone());
            if !y.is_zero() {
                prop_assert_eq!(x.div(&y).unwrap().mul(&y), x);
            }
        }
    }
}
