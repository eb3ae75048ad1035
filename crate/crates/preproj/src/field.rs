//! Exact coefficient fields.
//!
//! `Rat` is the default: rationals with an inline small-integer path that
//! falls back to big rationals on overflow. `Fp<P>` is a prime field with
//! `P < 2^63`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(v: i64) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
    /// 0 for the rationals.
    fn characteristic() -> u64;
    fn label() -> String;
    /// Numerator and denominator as decimal strings (denominator is "1" in Fp).
    fn to_parts(&self) -> (String, String);
    fn from_parts(num: &str, den: &str) -> Option<Self>;
    /// Distinct roots in the field of the polynomial with the given
    /// coefficients (constant term first).
    fn roots(poly: &[Self]) -> Vec<Self>;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
    /// self -= a * b
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let t = a.mul_ref(b);
        *self = self.sub_ref(&t);
    }
    /// self += a * b
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let t = a.mul_ref(b);
        *self = self.add_ref(&t);
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// Canonical form: `S(n, d)` with `d > 0`, `gcd(n, d) = 1` whenever both fit
/// in i64; `B` otherwise. Equality and hashing rely on this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    S(i64, i64),
    B(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        if n == 0 {
            return Rat::S(0, 1);
        }
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n >= i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Rat::S(n as i64, d as i64)
        } else {
            Rat::B(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Rat {
        if r.is_zero() {
            return Rat::S(0, 1);
        }
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rat::S(n, d);
        }
        Rat::B(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::S(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::B(b) => (**b).clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::S(_, d) => *d == 1,
            Rat::B(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::S(n, _) => n.signum() as i32,
            Rat::B(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Rat::S(a, b), Rat::S(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::S(n, 1) => write!(f, "{n}"),
            Rat::S(n, d) => write!(f, "{n}/{d}"),
            Rat::B(b) => write!(f, "{b}"),
        }
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        self.add_ref(&o)
    }
}
impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        self.sub_ref(&o)
    }
}
impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        self.mul_ref(&o)
    }
}
impl Div for Rat {
    type Output = Rat;
    fn div(self, o: Rat) -> Rat {
        self.mul_ref(&o.inv())
    }
}
impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        self.neg_ref()
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::S(0, 1)
    }
    fn one() -> Self {
        Rat::S(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rat::S(0, _))
    }
    fn is_one(&self) -> bool {
        matches!(self, Rat::S(1, 1))
    }
    fn from_i64(v: i64) -> Self {
        Rat::S(v, 1)
    }
    fn inv(&self) -> Self {
        match self {
            Rat::S(0, _) => panic!("inverse of zero"),
            Rat::S(n, d) => Rat::from_i128(*d as i128, *n as i128),
            Rat::B(b) => Rat::from_big(b.recip()),
        }
    }
    fn characteristic() -> u64 {
        0
    }
    fn label() -> String {
        "rat".to_string()
    }
    fn to_parts(&self) -> (String, String) {
        match self {
            Rat::S(n, d) => (n.to_string(), d.to_string()),
            Rat::B(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }
    fn from_parts(num: &str, den: &str) -> Option<Self> {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::from_big(BigRational::new(n, d)))
    }
    fn roots(poly: &[Self]) -> Vec<Self> {
        crate::poly::rational_roots(poly)
    }

    fn add_ref(&self, o: &Self) -> Self {
        match (self, o) {
            (Rat::S(0, _), _) => o.clone(),
            (_, Rat::S(0, _)) => self.clone(),
            (Rat::S(a, b), Rat::S(c, d)) => {
                if b == d {
                    Rat::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match a.checked_mul(d).and_then(|x| c.checked_mul(b).and_then(|y| x.checked_add(y))) {
                        Some(n) => Rat::from_i128(n, b * d),
                        None => Rat::from_big(self.to_big() + o.to_big()),
                    }
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        match (self, o) {
            (Rat::S(0, _), _) | (_, Rat::S(0, _)) => Rat::S(0, 1),
            (Rat::S(1, 1), _) => o.clone(),
            (_, Rat::S(1, 1)) => self.clone(),
            (Rat::S(a, b), Rat::S(c, d)) => {
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }
    fn neg_ref(&self) -> Self {
        match self {
            Rat::S(n, d) => {
                if *n == i64::MIN {
                    Rat::from_big(-self.to_big())
                } else {
                    Rat::S(-n, *d)
                }
            }
            Rat::B(b) => Rat::from_big(-(**b).clone()),
        }
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let t = a.mul_ref(b);
        *self = self.sub_ref(&t);
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let t = a.mul_ref(b);
        *self = self.add_ref(&t);
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::S(v, 1)
    }
}

/// Integer part helpers used by the root finder.
pub(crate) fn big_floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

// ---------------------------------------------------------------------------
// Prime fields

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}
impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn characteristic() -> u64 {
        P
    }
    fn label() -> String {
        format!("gfp:{P}")
    }
    fn to_parts(&self) -> (String, String) {
        (self.0.to_string(), "1".to_string())
    }
    fn from_parts(num: &str, den: &str) -> Option<Self> {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        let p = BigInt::from(P);
        let n = n.mod_floor(&p).to_u64()?;
        let d = d.mod_floor(&p).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(Fp(n) / Fp(d))
    }
    fn roots(poly: &[Self]) -> Vec<Self> {
        crate::poly::fp_roots(poly)
    }
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
}

pub type F2147483647 = Fp<2147483647>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_overflow_promotes() {
        let big = Rat::from_i64(i64::MAX);
        let s = big.add_ref(&big);
        assert!(matches!(s, Rat::B(_)));
        let back = s.sub_ref(&big);
        assert_eq!(back, Rat::from_i64(i64::MAX));
        assert!(matches!(back, Rat::S(_, _)));
    }

    #[test]
    fn rat_canonical() {
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(3, 7).inv(), Rat::new(7, 3));
        assert_eq!(Rat::from_parts("6", "-9").unwrap(), Rat::new(-2, 3));
    }

    #[test]
    fn fp_inverse() {
        type F = Fp<1048583>;
        for v in 1..200i64 {
            let x = F::from_i64(v);
            assert_eq!(x * x.inv(), F::one());
        }
    }
}
