use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An element of an exact field.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Short name of the field, e.g. `Q` or `GF(32003)`.
    fn field_name() -> String;
    /// 0 for the rationals.
    fn characteristic() -> u64;
    fn from_i64(n: i64) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Parses `n` or `p/q`.
    fn parse(s: &str) -> Option<Self>;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub_ref(&a.mul_ref(b));
    }

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }

    /// Rational roots are only enumerable through this hook: every element of a
    /// prime field, or `None` for infinite fields.
    fn all_elements() -> Option<Vec<Self>> {
        None
    }

    /// Numerator and denominator when the field is the rationals.
    fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        None
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self>;
}

impl Scalar for BigRational {
    fn field_name() -> String {
        "Q".to_string()
    }

    fn characteristic() -> u64 {
        0
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self += a * b;
        }
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }

    fn as_fraction(&self) -> Option<(BigInt, BigInt)> {
        Some((self.numer().clone(), self.denom().clone()))
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let m = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp(acc as u32)
    }

    fn from_bigint(n: &BigInt) -> Self {
        let r = n % BigInt::from(P);
        let r: i64 = r.try_into().expect("residue fits");
        Fp::new(r)
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn field_name() -> String {
        format!("GF({P})")
    }

    fn characteristic() -> u64 {
        P as u64
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                Self::from_fraction(&n, &d)
            }
            None => s.parse::<BigInt>().ok().map(|n| Self::from_bigint(&n)),
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        *self + *other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        *self - *other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        *self * *other
    }

    fn all_elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }

    fn from_fraction(num: &BigInt, den: &BigInt) -> Option<Self> {
        let d = Self::from_bigint(den).inv()?;
        Some(Self::from_bigint(num) * d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F32003;

    #[test]
    fn rational_parse_and_display() {
        let x = BigRational::parse("6/4").unwrap();
        assert_eq!(x.to_string(), "3/2");
        assert_eq!(BigRational::parse("-7").unwrap().to_string(), "-7");
        assert!(BigRational::parse("1/0").is_none());
        assert!(BigRational::parse("abc").is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F32003::from_i64(-1);
        assert_eq!(a.value(), 32002);
        let two = F32003::from_i64(2);
        assert_eq!(two.inv().unwrap() * two, F32003::one());
        assert_eq!(F32003::parse("1/2").unwrap(), two.inv().unwrap());
        assert!(F32003::from_i64(32003).inv().is_none());
        assert_eq!(-F32003::zero(), F32003::zero());
    }
}
