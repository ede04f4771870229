//! Simple extensions `K[u]/(m(u))` with `m` monic irreducible over `K`.

use super::factor;
use super::field::{FieldElement, Scalar};
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::AlgebraError;

/// Fields over which irreducibility of a candidate minimal polynomial can be
/// certified (or refused with [`AlgebraError::CannotCertify`]).
pub trait ExtensionBase: FieldElement {
    fn certify_irreducible(m: &Poly<Self>) -> Result<(), AlgebraError>;
}

fn describe<F: FieldElement>(m: &Poly<F>) -> String {
    let terms: Vec<String> = m
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("({c})*u^{i}"))
        .collect();
    terms.join(" + ")
}

impl ExtensionBase for Scalar {
    fn certify_irreducible(m: &Poly<Self>) -> Result<(), AlgebraError> {
        if factor::is_irreducible(m)? {
            Ok(())
        } else {
            Err(AlgebraError::NotIrreducible(describe(m)))
        }
    }
}

impl ExtensionBase for RationalFunction {
    fn certify_irreducible(m: &Poly<Self>) -> Result<(), AlgebraError> {
        let d = m.degree().unwrap_or(0);
        if d == 0 {
            return Err(AlgebraError::NotIrreducible(describe(m)));
        }
        if d == 1 {
            return Ok(());
        }
        let proto = m.proto().clone();
        let field = proto.field();
        let p = field.characteristic() as usize;
        // u^p - beta is irreducible iff beta is not a p-th power.
        if p == d && (1..d).all(|i| m.coeff(i).is_zero()) {
            let beta = -m.coeff(0);
            return match beta.pth_root() {
                None => Ok(()),
                Some(_) => Err(AlgebraError::NotIrreducible(describe(m))),
            };
        }
        if d > 3 {
            return Err(AlgebraError::CannotCertify(format!(
                "degree {d} minimal polynomials over k(x) are not supported"
            )));
        }
        // Degree 2 or 3: irreducible iff there is no root in K. Rescale to
        // polynomial coefficients, where any root lies in k[x], and look for
        // a specialization x = c without roots in k.
        let den = m
            .coeffs()
            .iter()
            .fold(Poly::one(&field.zero()), |acc, c| {
                let g = acc.gcd(c.denominator());
                (&acc * c.denominator()).exact_div(&g).expect("lcm")
            });
        let scaled: Vec<Poly<Scalar>> = (0..=d)
            .map(|i| {
                let c = m.coeff(i) * RationalFunction::from_poly(den.pow((d - i) as u64));
                assert!(c.is_polynomial());
                c.numerator().clone()
            })
            .collect();
        let candidates: Vec<Scalar> = match field.elements() {
            Some(all) => all,
            None => (-20..=20).map(|c| field.from_i64(c)).collect(),
        };
        for c in candidates {
            let spec = Poly::from_coeffs(scaled.iter().map(|q| q.eval(&c)).collect(), &field.zero());
            if spec.degree() != Some(d) {
                continue;
            }
            let has_root = if field.is_finite() {
                field.elements().unwrap().iter().any(|t| spec.eval(t).is_zero())
            } else {
                !factor::rational_roots(&spec)?.is_empty()
            };
            if !has_root {
                return Ok(());
            }
        }
        Err(AlgebraError::CannotCertify(format!(
            "no root-free specialization of {}",
            describe(m)
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimpleExtension<F: FieldElement> {
    minpoly: Poly<F>,
}

impl<F: ExtensionBase> SimpleExtension<F> {
    pub fn new(minpoly: Poly<F>) -> Result<Self, AlgebraError> {
        if !minpoly.is_monic() {
            return Err(AlgebraError::NotMonic(describe(&minpoly)));
        }
        F::certify_irreducible(&minpoly)?;
        Ok(SimpleExtension { minpoly })
    }
}

impl<F: FieldElement> SimpleExtension<F> {
    /// The trivial extension `K` itself.
    pub fn trivial(proto: &F) -> Self {
        SimpleExtension {
            minpoly: Poly::x(proto),
        }
    }

    pub fn minimal_polynomial(&self) -> &Poly<F> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn proto(&self) -> &F {
        self.minpoly.proto()
    }

    /// True iff the minimal polynomial is coprime to its derivative.
    pub fn is_separable(&self) -> bool {
        self.minpoly.gcd(&self.minpoly.derivative()).is_constant()
    }

    /// Coordinates of `p(u)` in the basis `1, u, ..., u^(d-1)`.
    pub fn reduce(&self, p: &Poly<F>) -> Vec<F> {
        let r = p.rem(&self.minpoly);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    pub fn to_poly(&self, e: &[F]) -> Poly<F> {
        Poly::from_coeffs(e.to_vec(), self.proto())
    }

    pub fn one(&self) -> Vec<F> {
        self.reduce(&Poly::one(self.proto()))
    }

    pub fn generator(&self) -> Vec<F> {
        self.reduce(&Poly::x(self.proto()))
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        self.reduce(&(&self.to_poly(a) * &self.to_poly(b)))
    }

    /// Matrix of multiplication by `e`; column `j` holds `e * u^j`.
    pub fn mul_matrix(&self, e: &[F]) -> Vec<Vec<F>> {
        let d = self.degree();
        let cols: Vec<Vec<F>> = (0..d)
            .map(|j| self.reduce(&(&self.to_poly(e) * &Poly::monomial(self.proto().one_like(), j))))
            .collect();
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `Tr_{L/K}(e)`, the trace of multiplication by `e`.
    pub fn ext_trace(&self, e: &[F]) -> F {
        let m = self.mul_matrix(e);
        (0..self.degree()).fold(self.proto().zero_like(), |acc, i| acc + m[i][i].clone())
    }
}

/// Monic polynomial in `u` from coefficient strings in `x`, lowest degree
/// first; the leading `1` is implicit.
pub fn minpoly_from_strings(
    field: super::field::BaseField,
    lower: &[String],
) -> Result<Poly<RationalFunction>, AlgebraError> {
    let mut coeffs = lower
        .iter()
        .map(|s| RationalFunction::parse(field, s))
        .collect::<Result<Vec<_>, _>>()?;
    coeffs.push(RationalFunction::one(field));
    Ok(Poly::from_coeffs(coeffs, &RationalFunction::zero(field)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    fn sqrt_x(char: u64) -> SimpleExtension<RationalFunction> {
        let field = BaseField::new(char).unwrap();
        SimpleExtension::new(minpoly_from_strings(field, &["-x".into(), "0".into()]).unwrap())
            .unwrap()
    }

    #[test]
    fn traces() {
        for char in [0, 2] {
            let l = sqrt_x(char);
            let u = l.generator();
            assert!(l.ext_trace(&u).is_zero());
            let two = l.proto().from_i64_like(2);
            assert_eq!(l.ext_trace(&l.one()), two);
        }
        assert!(!sqrt_x(2).is_separable());
        assert!(sqrt_x(0).is_separable());
    }

    #[test]
    fn reducible_rejected() {
        let q = BaseField::rationals();
        // u^2 - x^2 = (u - x)(u + x)
        let m = minpoly_from_strings(q, &["-x^2".into(), "0".into()]).unwrap();
        assert!(SimpleExtension::new(m).is_err());
        let f2 = BaseField::prime(2).unwrap();
        let m = minpoly_from_strings(f2, &["x^2".into(), "0".into()]).unwrap();
        assert!(matches!(
            SimpleExtension::new(m),
            Err(AlgebraError::NotIrreducible(_))
        ));
    }
}
