//! Coefficient fields: arbitrary-precision rationals and small prime fields.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Which coefficient field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Prime { modulus: u32 },
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "QQ"),
            FieldTag::Prime { modulus } => write!(f, "GF({modulus})"),
        }
    }
}

/// An exact field element, used by every polynomial in the crate.
///
/// Implementations never round: rationals are kept in lowest terms with a
/// positive denominator, residues live in `[0, p)`.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Image of `num/den`; fails when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, AlgebraError>;
    fn tag() -> FieldTag;
    fn to_scalar(&self) -> Scalar;

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv().expect("division by zero in field"))
    }

    /// Integer value of `num/den` when it is a signed integer after printing
    /// with the symmetric convention. Used by the text format.
    fn signed_parts(&self) -> (bool, String);
}

/// Field-tagged scalar, the serialized form of any coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum Scalar {
    Rational { num: String, den: String },
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational { .. } => FieldTag::Rational,
            Scalar::Prime { modulus, .. } => FieldTag::Prime { modulus: *modulus },
        }
    }

    /// Converts into a concrete field, checking the tag.
    pub fn into_field<K: Field>(&self) -> Result<K, AlgebraError> {
        if self.tag() != K::tag() {
            return Err(AlgebraError::IncompatibleContext(format!(
                "scalar over {} used in a {} context",
                self.tag(),
                K::tag()
            )));
        }
        match self {
            Scalar::Rational { num, den } => {
                let n: BigInt = num
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad numerator {num}")))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| AlgebraError::Parse(format!("bad denominator {den}")))?;
                K::from_ratio(&n, &d)
            }
            Scalar::Prime { value, .. } => Ok(K::from_i64(*value as i64)),
        }
    }
}

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Reduction modulo a prime, if the denominator is a unit there.
    pub fn reduce_mod<const P: u32>(&self) -> Option<Fp<P>> {
        Fp::<P>::from_ratio(self.numer(), self.denom()).ok()
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

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        Rational(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Rational(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Rational(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.clone(), den.clone())))
    }
    fn tag() -> FieldTag {
        FieldTag::Rational
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Rational {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
    }
    fn signed_parts(&self) -> (bool, String) {
        let neg = self.0.is_negative();
        let abs = Rational(self.0.abs());
        (neg, abs.to_string())
    }
}

/// Residue modulo the prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

/// The default fast field.
pub type F32003 = Fp<32003>;

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }

    /// Symmetric representative in `(-P/2, P/2]`.
    pub fn symmetric(self) -> i64 {
        let v = self.0 as i64;
        if v > (P as i64) / 2 {
            v - P as i64
        } else {
            v
        }
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    #[inline]
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    #[inline]
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }
    #[inline]
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Result<Self, AlgebraError> {
        let p = BigInt::from(P);
        let n = num.mod_floor(&p).to_i64().unwrap_or(0);
        let d = den.mod_floor(&p).to_i64().unwrap_or(0);
        if d == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Fp::new(n).mul(&Fp::new(d).inv().unwrap()))
    }
    fn tag() -> FieldTag {
        FieldTag::Prime { modulus: P }
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Prime {
            value: self.0,
            modulus: P,
        }
    }
    #[inline]
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = ((a.0 as u64 * b.0 as u64) % P as u64) as u32;
        self.0 = if self.0 >= prod {
            self.0 - prod
        } else {
            self.0 + P - prod
        };
    }
    fn signed_parts(&self) -> (bool, String) {
        let s = self.symmetric();
        (s < 0, s.abs().to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = Rational::new(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(a.denom(), &BigInt::from(2));
        let b = a.add(&Rational::new(1, 2));
        assert!(b.is_zero());
    }

    #[test]
    fn prime_field_inverse_and_range() {
        let a = F32003::new(-1);
        assert_eq!(a.value(), 32002);
        assert_eq!(a.to_string(), "-1");
        for v in 1..200 {
            let x = F32003::new(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(F32003::zero().inv().is_none());
    }

    #[test]
    fn ratio_with_vanishing_denominator_fails() {
        let r = Fp::<7>::from_ratio(&BigInt::from(1), &BigInt::from(14));
        assert!(matches!(r, Err(AlgebraError::DivisionByZero)));
        let ok = Fp::<7>::from_ratio(&BigInt::from(3), &BigInt::from(2)).unwrap();
        assert_eq!(ok.mul(&Fp::new(2)), Fp::new(3));
    }

    #[test]
    fn scalar_round_trip_checks_tag() {
        let s = Rational::new(3, 5).to_scalar();
        let back: Rational = s.into_field().unwrap();
        assert_eq!(back, Rational::new(3, 5));
        assert!(s.into_field::<F32003>().is_err());
    }
}
