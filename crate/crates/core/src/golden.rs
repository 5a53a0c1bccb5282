//! Exact arithmetic in the golden field ℚ(τ).
//!
//! Every scalar in the crate is a [`Golden`] `a + bτ` with rational `a`, `b`
//! and `τ² = τ + 1`. Rationals are arbitrary precision and always reduced, so
//! structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

/// `a + bτ` with `a, b ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Golden {
    a: BigRational,
    b: BigRational,
}

impl Golden {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Golden { a, b }
    }

    /// Integer coefficients `a + bτ`.
    pub fn int(a: i64, b: i64) -> Self {
        Golden::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `(a_num/a_den) + (b_num/b_den)τ`. Panics on a zero denominator.
    pub fn frac(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        Golden::new(
            BigRational::new(a_num.into(), a_den.into()),
            BigRational::new(b_num.into(), b_den.into()),
        )
    }

    pub fn rational(r: BigRational) -> Self {
        Golden::new(r, BigRational::zero())
    }

    pub fn zero() -> Self {
        Golden::int(0, 0)
    }

    pub fn one() -> Self {
        Golden::int(1, 0)
    }

    pub fn half() -> Self {
        Golden::frac(1, 2, 0, 1)
    }

    /// τ = (1 + √5)/2.
    pub fn tau() -> Self {
        Golden::int(0, 1)
    }

    /// σ = (1 − √5)/2 = 1 − τ = −τ⁻¹.
    pub fn sigma() -> Self {
        Golden::int(1, -1)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of τ.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate τ ↦ σ: `(a, b) ↦ (a + b, −b)`.
    pub fn conj(&self) -> Self {
        Golden::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Golden::new(c.a / &n, c.b / n))
    }

    /// Exact sign of the real number `a + b(1+√5)/2`.
    ///
    /// With `u = 2a + b` the value is `(u + b√5)/2`. When `u` and `b` disagree in
    /// sign the larger of `u²` and `5b²` decides.
    pub fn signum(&self) -> i8 {
        let u = BigRational::from_integer(2.into()) * &self.a + &self.b;
        let su = rsign(&u);
        let sb = rsign(&self.b);
        if sb == 0 {
            return su;
        }
        if su == 0 || su == sb {
            return sb;
        }
        let five_b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
        match (&u * &u).cmp(&five_b2) {
            Ordering::Greater => su,
            Ordering::Less => sb,
            // u² = 5b² has no nonzero rational solution
            Ordering::Equal => unreachable!("√5 is irrational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// τⁿ = F₍ₙ₋₁₎ + Fₙτ for any integer `n`.
    pub fn tau_pow(n: i64) -> Self {
        Golden::new(
            BigRational::from_integer(fibonacci(n - 1)),
            BigRational::from_integer(fibonacci(n)),
        )
    }

    /// Nearest `f64`; for display and export only.
    pub fn to_f64(&self) -> f64 {
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        ratio_f64(&self.a) + ratio_f64(&self.b) * tau
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Golden::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn rsign(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back for magnitudes outside f64 range of the parts
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

/// Fibonacci numbers on all of ℤ: `F₀ = 0`, `F₁ = 1`, `F₋ₙ = (−1)ⁿ⁺¹Fₙ`.
pub fn fibonacci(n: i64) -> BigInt {
    let k = n.unsigned_abs();
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        let next = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, next);
    }
    if n < 0 && k.is_even() {
        -f0
    } else {
        f0
    }
}

impl Default for Golden {
    fn default() -> Self {
        Golden::zero()
    }
}

impl From<i64> for Golden {
    fn from(v: i64) -> Self {
        Golden::int(v, 0)
    }
}

impl From<BigRational> for Golden {
    fn from(r: BigRational) -> Self {
        Golden::rational(r)
    }
}

impl PartialOrd for Golden {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Golden {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

fn scale_by_rational(r: &BigRational, x: &Golden) -> Golden {
    if r.is_zero() {
        return Golden::zero();
    }
    Golden::new(r * &x.a, r * &x.b)
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $body:expr) => {
        impl $Trait<&Golden> for &Golden {
            type Output = Golden;
            fn $method(self, rhs: &Golden) -> Golden {
                let f: fn(&Golden, &Golden) -> Golden = $body;
                f(self, rhs)
            }
        }
        impl $Trait<Golden> for Golden {
            type Output = Golden;
            fn $method(self, rhs: Golden) -> Golden {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Golden> for Golden {
            type Output = Golden;
            fn $method(self, rhs: &Golden) -> Golden {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Golden> for &Golden {
            type Output = Golden;
            fn $method(self, rhs: Golden) -> Golden {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| {
    if x.is_zero() {
        y.clone()
    } else if y.is_zero() {
        x.clone()
    } else {
        Golden::new(&x.a + &y.a, &x.b + &y.b)
    }
});
forward_binop!(Sub, sub, |x, y| Golden::new(&x.a - &y.a, &x.b - &y.b));
// (a₁+b₁τ)(a₂+b₂τ) = (a₁a₂ + b₁b₂) + (a₁b₂ + a₂b₁ + b₁b₂)τ
forward_binop!(Mul, mul, |x, y| {
    // rational operands are common in group matrices; skip the τ² term for them
    match (x.b.is_zero(), y.b.is_zero()) {
        (true, true) => Golden::rational(&x.a * &y.a),
        (true, false) => scale_by_rational(&x.a, y),
        (false, true) => scale_by_rational(&y.a, x),
        (false, false) if x.a.is_zero() && y.a.is_zero() => {
            let bb = &x.b * &y.b;
            Golden::new(bb.clone(), bb)
        }
        (false, false) => {
            let bb = &x.b * &y.b;
            Golden::new(&x.a * &y.a + &bb, &x.a * &y.b + &x.b * &y.a + bb)
        }
    }
});
forward_binop!(Div, div, |x, y| x * y.inv().expect("division by zero in the golden field"));

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-self.a, -self.b)
    }
}

impl Neg for &Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-&self.a, -&self.b)
    }
}

impl AddAssign<&Golden> for Golden {
    fn add_assign(&mut self, rhs: &Golden) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl AddAssign for Golden {
    fn add_assign(&mut self, rhs: Golden) {
        *self += &rhs;
    }
}

impl SubAssign<&Golden> for Golden {
    fn sub_assign(&mut self, rhs: &Golden) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Golden> for Golden {
    fn mul_assign(&mut self, rhs: &Golden) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Golden {
    fn sum<I: Iterator<Item = Golden>>(iter: I) -> Golden {
        iter.fold(Golden::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Golden> for Golden {
    fn sum<I: Iterator<Item = &'a Golden>>(iter: I) -> Golden {
        iter.fold(Golden::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn tau_term(b: &BigRational) -> String {
    if b.is_one() {
        "τ".into()
    } else if (-b).is_one() {
        "-τ".into()
    } else {
        format!("{b}τ")
    }
}

impl fmt::Display for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => f.write_str(&tau_term(&self.b)),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", self.a, tau_term(&-&self.b))
                } else {
                    write!(f, "{} + {}", self.a, tau_term(&self.b))
                }
            }
        }
    }
}

impl fmt::Debug for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

// JSON: {"a": [num, den], "b": [num, den]}, den > 0, reduced. Integers are
// written as raw number tokens so arbitrarily large values stay exact.

struct RatioJson<'a>(&'a BigRational);

impl Serialize for RatioJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let num = RawValue::from_string(self.0.numer().to_string()).map_err(serde::ser::Error::custom)?;
        let den = RawValue::from_string(self.0.denom().to_string()).map_err(serde::ser::Error::custom)?;
        (num, den).serialize(s)
    }
}

impl Serialize for Golden {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Golden", 2)?;
        st.serialize_field("a", &RatioJson(&self.a))?;
        st.serialize_field("b", &RatioJson(&self.b))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct GoldenRepr {
    a: (Box<RawValue>, Box<RawValue>),
    b: (Box<RawValue>, Box<RawValue>),
}

fn parse_ratio<E: serde::de::Error>(num: &RawValue, den: &RawValue) -> Result<BigRational, E> {
    let n: BigInt = num.get().trim().parse().map_err(E::custom)?;
    let d: BigInt = den.get().trim().parse().map_err(E::custom)?;
    if !d.is_positive() {
        return Err(E::custom("denominator must be positive"));
    }
    if !n.gcd(&d).is_one() {
        return Err(E::custom("fraction is not in lowest terms"));
    }
    Ok(BigRational::new_raw(n, d))
}

impl<'de> Deserialize<'de> for Golden {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GoldenRepr::deserialize(d)?;
        let a = parse_ratio::<D::Error>(&r.a.0, &r.a.1)?;
        let b = parse_ratio::<D::Error>(&r.b.0, &r.b.1)?;
        if a.denom().is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Golden::new(a, b))
    }
}
