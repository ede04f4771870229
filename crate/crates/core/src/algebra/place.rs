//! Closed points of the projective line over the coefficient field.

use std::fmt;

use super::factor;
use super::field::{BaseField, FieldElement, Scalar};
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::AlgebraError;

/// A finite place is given by its monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly<Scalar>),
    Infinity,
}

impl Place {
    pub fn finite(pi: Poly<Scalar>) -> Result<Self, AlgebraError> {
        if !pi.is_monic() {
            return Err(AlgebraError::NotMonic(
                RationalFunction::from_poly(pi).to_string(),
            ));
        }
        if !factor::is_irreducible(&pi)? {
            return Err(AlgebraError::NotIrreducible(
                RationalFunction::from_poly(pi).to_string(),
            ));
        }
        Ok(Place::Finite(pi))
    }

    /// The rational point `x = c`.
    pub fn point(c: Scalar) -> Self {
        Place::Finite(Poly::from_coeffs(vec![-c.clone(), c.one_like()], &c))
    }

    /// Parses `inf` or a polynomial in `x` (e.g. `x - 1`, `x^2 + 1`).
    pub fn parse(field: BaseField, s: &str) -> Result<Self, AlgebraError> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Place::Infinity);
        }
        let f = RationalFunction::parse(field, t)?;
        if !f.is_polynomial() || f.is_zero() {
            return Err(AlgebraError::Parse {
                column: 0,
                message: format!("place must be a monic irreducible polynomial, got {t}"),
            });
        }
        Self::finite(f.numerator().clone())
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    /// The coordinate `c` of a rational finite point.
    pub fn rational_coordinate(&self) -> Option<Scalar> {
        match self {
            Place::Finite(pi) if pi.degree() == Some(1) => Some(-pi.coeff(0)),
            _ => None,
        }
    }
}

/// Serialized as its display form, e.g. `"(x + 2)"` or `"inf"`.
impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(pi) => write!(f, "({})", RationalFunction::from_poly(pi.clone())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let q = BaseField::rationals();
        assert_eq!(Place::parse(q, "x").unwrap(), Place::point(q.zero()));
        assert_eq!(Place::parse(q, "inf").unwrap(), Place::Infinity);
        assert!(Place::parse(q, "x^2 - 1").is_err());
        assert!(Place::parse(q, "2*x").is_err());
        let f3 = BaseField::prime(3).unwrap();
        assert_eq!(Place::parse(f3, "x^2 + 1").unwrap().degree(), 2);
        assert_eq!(Place::point(f3.from_i64(1)).to_string(), "(x + 2)");
    }
}
