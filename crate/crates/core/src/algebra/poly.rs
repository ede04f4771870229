//! Dense univariate polynomials over any [`FieldElement`].
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient. A
//! prototype scalar is kept so that the zero polynomial still knows its field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::FieldElement;

#[derive(Clone, Debug)]
pub struct Poly<F: FieldElement> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: FieldElement> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.zero == other.zero
    }
}

impl<F: FieldElement + Eq> Eq for Poly<F> {}

impl<F: FieldElement + std::hash::Hash> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
        self.zero.hash(state);
    }
}

impl<F: FieldElement> Poly<F> {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(proto: &F) -> Self {
        Poly {
            coeffs: Vec::new(),
            zero: proto.zero_like(),
        }
    }

    pub fn one(proto: &F) -> Self {
        Self::constant(proto.one_like())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c.clone()], &c)
    }

    /// The indeterminate.
    pub fn x(proto: &F) -> Self {
        Self::from_coeffs(vec![proto.zero_like(), proto.one_like()], proto)
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); deg + 1];
        let proto = c.clone();
        coeffs[deg] = c;
        Self::from_coeffs(coeffs, &proto)
    }

    pub fn from_coeffs(coeffs: Vec<F>, proto: &F) -> Self {
        let mut p = Poly {
            coeffs,
            zero: proto.zero_like(),
        };
        p.normalize();
        p
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Divide through by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            &self.zero,
        )
    }

    pub fn eval(&self, at: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + c.clone();
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * c.from_i64_like(i as i64))
            .collect();
        Self::from_coeffs(coeffs, &self.zero)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Self::zero(&self.zero), self.clone());
        }
        let mut quot = vec![self.zero.clone(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        (
            Self::from_coeffs(quot, &self.zero),
            Self::from_coeffs(rem, &self.zero),
        )
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            // Monic remainders keep rational coefficients small.
            let r = a.rem(&b);
            a = b.monic();
            b = r;
        }
        a.monic()
    }

    /// Monic gcd `g` together with `s, t` such that `s·self + t·other = g`.
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let z = Self::zero(&self.zero);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(&self.zero), z.clone());
        let (mut t0, mut t1) = (z.clone(), Self::one(&self.zero));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading_coeff().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.zero);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, e: &num_bigint::BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(&self.zero).rem(modulus);
        let base = self.rem(modulus);
        for bit in (0..e.bits()).rev() {
            acc = (&acc * &acc).rem(modulus);
            if e.bit(bit) {
                acc = (&acc * &base).rem(modulus);
            }
        }
        acc
    }

    /// Composition `self(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero(&self.zero);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Largest `k` with `factor^k | self`; `self` must be nonzero and
    /// `factor` nonconstant.
    pub fn multiplicity_of(&self, factor: &Self) -> u32 {
        assert!(!self.is_zero() && !factor.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(factor) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn map_coeffs<G: FieldElement>(&self, proto: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect(), proto)
    }
}

impl<F: FieldElement> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs, &self.zero)
    }
}

impl<F: FieldElement> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs, &self.zero)
    }
}

impl<F: FieldElement> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut coeffs = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs, &self.zero)
    }
}

impl<F: FieldElement> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.zero)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: FieldElement> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: FieldElement> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Writes the polynomial in `var`, highest degree first, e.g. `3*x^2 - x + 1`.
pub(crate) fn write_poly<F: FieldElement>(
    p: &Poly<F>,
    var: &str,
    signed: impl Fn(&F) -> (bool, String),
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = signed(c);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = mag == "1";
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !unit {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{i}")?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::BaseField;

    fn poly(field: BaseField, c: &[i64]) -> Poly<crate::algebra::Scalar> {
        Poly::from_coeffs(c.iter().map(|&v| field.from_i64(v)).collect(), &field.zero())
    }

    #[test]
    fn div_rem_reconstructs() {
        let q = BaseField::rationals();
        let a = poly(q, &[1, 2, 3, 4, 5]);
        let b = poly(q, &[-1, 0, 2]);
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(&(&quo * &b) + &rem, a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f5 = BaseField::prime(5).unwrap();
        let common = poly(f5, &[1, 1]);
        let a = &common * &poly(f5, &[2, 0, 1]);
        let b = &common * &poly(f5, &[3, 1]);
        assert_eq!(a.gcd(&b), common);
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn frobenius_derivative_vanishes() {
        let f3 = BaseField::prime(3).unwrap();
        assert!(poly(f3, &[0, 0, 0, 1]).derivative().is_zero());
    }

    #[test]
    fn multiplicity_and_compose() {
        let q = BaseField::rationals();
        let x = poly(q, &[0, 1]);
        let f = &x.pow(3) * &poly(q, &[1, 1]);
        assert_eq!(f.multiplicity_of(&x), 3);
        let shifted = f.compose(&poly(q, &[1, 1]));
        assert_eq!(shifted.eval(&q.from_i64(-1)), f.eval(&q.zero()));
    }
}
