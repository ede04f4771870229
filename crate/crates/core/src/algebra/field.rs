//! Coefficient fields: the rationals and prime fields, behind one runtime type.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Exact field arithmetic as used by the linear algebra and the finite algebras.
///
/// Elements carry enough context (the characteristic, the base field of a
/// function field) to build `0` and `1` of the same field from any element.
pub trait FieldElement:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;
    fn from_i64_like(&self, n: i64) -> Self;

    /// The unique `p`-th root in characteristic `p`, if it exists in the field.
    fn pth_root(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// Division; `None` when `other` is zero.
    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// The prime field of characteristic `p`, or `Q` when the characteristic is 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct BaseField {
    characteristic: u64,
}

/// Largest supported prime; products of residues must fit in `u128`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseField {
    pub fn rationals() -> Self {
        BaseField { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(AlgebraError::InvalidCharacteristic(p));
        }
        Ok(BaseField { characteristic: p })
    }

    /// Characteristic 0 gives `Q`, a prime gives `F_p`.
    pub fn new(characteristic: u64) -> Result<Self, AlgebraError> {
        if characteristic == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(characteristic)
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic != 0
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Rational(BigRational::from_integer(n.clone())),
            p => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num / den`; fails if `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, AlgebraError> {
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.from_bigint(num) * inv)
    }

    /// All elements, for finite fields only.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self.characteristic {
            0 => None,
            p => Some(
                (0..p)
                    .map(|v| Scalar::Modular { value: v, modulus: p })
                    .collect(),
            ),
        }
    }

    /// Lift of a scalar of this field, checking it belongs here.
    pub fn owns(&self, s: &Scalar) -> bool {
        s.characteristic() == self.characteristic
    }
}

impl TryFrom<u64> for BaseField {
    type Error = AlgebraError;
    fn try_from(c: u64) -> Result<Self, Self::Error> {
        BaseField::new(c)
    }
}

impl From<BaseField> for u64 {
    fn from(f: BaseField) -> u64 {
        f.characteristic
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// An element of `Q` or of `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> BaseField {
        BaseField {
            characteristic: self.characteristic(),
        }
    }

    /// Numerator and denominator of a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Representative in `[0, p)` of a modular scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// True when printing needs no parentheses or sign handling: nonnegative.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub(crate) fn abs(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.abs()),
            s => s.clone(),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "mixed coefficient fields: {} and {}",
        a.field(),
        b.field()
    )
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: (a + b) % p,
                    modulus: *p,
                }
            }
            _ => mismatch(&self, &rhs),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus,
            },
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (&self, &rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => mismatch(&self, &rhs),
        }
    }
}

impl FieldElement for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }

    fn one_like(&self) -> Self {
        self.field().one()
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    fn inv(&self) -> Option<Self> {
        if FieldElement::is_zero(self) {
            return None;
        }
        match self {
            Scalar::Rational(q) => Some(Scalar::Rational(q.recip())),
            Scalar::Modular { value, modulus } => {
                let v = BigInt::from(*value);
                let m = BigInt::from(*modulus);
                let e = v.extended_gcd(&m);
                debug_assert!(e.gcd.is_one());
                let inv = e.x.mod_floor(&m);
                Some(Scalar::Modular {
                    value: inv.to_u64().expect("residue fits"),
                    modulus: *modulus,
                })
            }
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Modular { modulus, .. } => *modulus,
        }
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.field().from_i64(n)
    }

    fn pth_root(&self) -> Option<Self> {
        match self {
            // Frobenius is the identity on F_p.
            Scalar::Modular { .. } => Some(self.clone()),
            Scalar::Rational(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
