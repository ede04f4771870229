//! Elements of `k(x)` kept in lowest terms with a monic denominator, so that
//! structural equality is equality of functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::factor;
use super::field::{BaseField, FieldElement, Scalar};
use super::place::Place;
use super::poly::{write_poly, Poly};
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly<Scalar>,
    den: Poly<Scalar>,
}

impl RationalFunction {
    /// `num / den` in lowest terms.
    pub fn new(num: Poly<Scalar>, den: Poly<Scalar>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().unwrap().inv().expect("nonzero");
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(num: Poly<Scalar>) -> Self {
        let den = Poly::one(num.proto());
        RationalFunction { num, den }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x(field: BaseField) -> Self {
        Self::from_poly(Poly::x(&field.zero()))
    }

    pub fn zero(field: BaseField) -> Self {
        Self::constant(field.zero())
    }

    pub fn one(field: BaseField) -> Self {
        Self::constant(field.one())
    }

    pub fn field(&self) -> BaseField {
        self.num.proto().field()
    }

    pub fn numerator(&self) -> &Poly<Scalar> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Scalar> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<Scalar> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        Self::new(n, d).expect("nonzero denominator")
    }

    /// Valuation at a place; poles are negative.
    pub fn order_at(&self, place: &Place) -> Result<i64, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::ZeroInput);
        }
        Ok(match place {
            Place::Infinity => {
                self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64
            }
            Place::Finite(pi) => {
                self.num.multiplicity_of(pi) as i64 - self.den.multiplicity_of(pi) as i64
            }
        })
    }

    /// True when the function has no pole at `place` (zero is regular).
    pub fn is_regular_at(&self, place: &Place) -> bool {
        self.is_zero() || self.order_at(place).expect("nonzero") >= 0
    }

    /// All poles, finite places first (sorted), then infinity.
    pub fn poles(&self) -> Result<Vec<(Place, u32)>, AlgebraError> {
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let mut out: Vec<(Place, u32)> = factor::factor(&self.den)?
            .into_iter()
            .map(|(g, m)| (Place::Finite(g), m))
            .collect();
        let at_inf = self.order_at(&Place::Infinity)?;
        if at_inf < 0 {
            out.push((Place::Infinity, (-at_inf) as u32));
        }
        Ok(out)
    }

    pub fn eval(&self, at: &Scalar) -> Option<Scalar> {
        self.den.eval(at).inv().map(|d| self.num.eval(at) * d)
    }

    /// `f(1/x)`, used to move the place at infinity to the origin.
    pub fn invert_variable(&self) -> Self {
        let flip = |p: &Poly<Scalar>, to: usize| {
            let mut c = p.coeffs().to_vec();
            c.resize(to + 1, p.proto().clone());
            c.reverse();
            Poly::from_coeffs(c, p.proto())
        };
        let n = self.num.degree().unwrap_or(0);
        let d = self.den.degree().unwrap_or(0);
        let m = n.max(d);
        // f(1/x) = (x^m num(1/x)) / (x^m den(1/x))
        Self::new(flip(&self.num, m), flip(&self.den, m)).expect("nonzero")
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: &Scalar) -> Self {
        let lin = Poly::from_coeffs(vec![c.clone(), c.one_like()], c);
        Self::new(self.num.compose(&lin), self.den.compose(&lin)).expect("nonzero")
    }

    /// Substitute a rational function for `x`.
    pub fn compose(&self, g: &RationalFunction) -> Self {
        let horner = |p: &Poly<Scalar>| {
            let mut acc = Self::zero(self.field());
            for c in p.coeffs().iter().rev() {
                acc = acc * g.clone() + Self::constant(c.clone());
            }
            acc
        };
        horner(&self.num)
            .checked_div(&horner(&self.den))
            .expect("denominator stays nonzero under substitution")
    }

    pub fn parse(field: BaseField, s: &str) -> Result<Self, AlgebraError> {
        super::parse::parse_rational_function(field, s)
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den).expect("nonzero");
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl FieldElement for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero(self.field())
    }

    fn one_like(&self) -> Self {
        Self::one(self.field())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()).expect("nonzero"))
    }

    fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    fn from_i64_like(&self, n: i64) -> Self {
        Self::constant(self.field().from_i64(n))
    }

    fn pth_root(&self) -> Option<Self> {
        let p = self.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let root = |poly: &Poly<Scalar>| -> Option<Poly<Scalar>> {
            let c = poly.coeffs();
            if c.iter().enumerate().any(|(i, a)| i % p != 0 && !a.is_zero()) {
                return None;
            }
            Some(Poly::from_coeffs(
                c.iter().step_by(p).cloned().collect(),
                poly.proto(),
            ))
        };
        Some(RationalFunction {
            num: root(&self.num)?,
            den: root(&self.den)?,
        })
    }
}

fn signed_scalar(c: &Scalar) -> (bool, String) {
    (c.is_negative(), c.abs().to_string())
}

fn term_count(p: &Poly<Scalar>) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

struct PolyDisplay<'a>(&'a Poly<Scalar>);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(self.0, "x", signed_scalar, f)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", PolyDisplay(&self.num));
        }
        // The denominator is monic, so a single term is a bare power of x.
        if term_count(&self.num) > 1 {
            write!(f, "({})", PolyDisplay(&self.num))?;
        } else {
            write!(f, "{}", PolyDisplay(&self.num))?;
        }
        if term_count(&self.den) > 1 {
            write!(f, "/({})", PolyDisplay(&self.den))
        } else {
            write!(f, "/{}", PolyDisplay(&self.den))
        }
    }
}
