//! Sparse multivariate polynomials with named variables, used for
//! substitution checks of explicit equations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{BaseField, FieldElement, Scalar};
use super::AlgebraError;

/// Variable name to exponent; exponents are always positive.
pub type Monomial = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    field: BaseField,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn zero(field: BaseField) -> Self {
        MPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(Monomial::new(), c);
        }
        p
    }

    pub fn var(field: BaseField, name: &str) -> Self {
        Self::monomial(field.one(), [(name, 1)])
    }

    pub fn monomial<'a>(c: Scalar, vars: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut m = Monomial::new();
        for (v, e) in vars {
            if e > 0 {
                *m.entry(v.to_string()).or_insert(0) += e;
            }
        }
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn parse(field: BaseField, s: &str) -> Result<Self, AlgebraError> {
        super::parse::parse_mpoly(field, s)
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flat_map(|m| m.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        let entry = self.terms.entry(m.clone()).or_insert_with(|| c.zero_like());
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Simultaneous substitution; variables not in the map are kept.
    pub fn substitute(&self, map: &HashMap<String, MPoly>) -> Self {
        let mut out = Self::zero(self.field);
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (v, &e) in m {
                let factor = match map.get(v) {
                    Some(p) => p.pow(e),
                    None => Self::monomial(self.field.one(), [(v.as_str(), e)]),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.values().sum()).max()
    }
}

/// True iff the expanded polynomial is identically zero.
pub fn poly_identity_zero(expr: &MPoly) -> bool {
    expr.is_zero()
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-self.field.one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                out.add_term(m, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        // Highest total degree first, then by monomial for determinism.
        terms.sort_by(|a, b| {
            let da: u32 = a.0.values().sum();
            let db: u32 = b.0.values().sum();
            db.cmp(&da).then_with(|| a.0.cmp(b.0))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs().to_string();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut parts = Vec::new();
            if m.is_empty() || mag != "1" {
                parts.push(mag);
            }
            for (v, &e) in m {
                parts.push(if e == 1 { v.clone() } else { format!("{v}^{e}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_identities() {
        let q = BaseField::rationals();
        assert!(poly_identity_zero(&MPoly::parse(q, "x - x").unwrap()));
        let f3 = BaseField::prime(3).unwrap();
        assert!(poly_identity_zero(&MPoly::parse(f3, "3*x").unwrap()));
        let hyper = MPoly::parse(q, "z^2 - y^3 - x1*x2*y^2").unwrap();
        let qq = MPoly::parse(q, "u2^2 - u1*u3").unwrap();
        let map: HashMap<String, MPoly> = [
            ("x1", MPoly::var(q, "u1")),
            ("x2", MPoly::var(q, "u3")),
            ("y", qq.clone()),
            ("z", &MPoly::var(q, "u2") * &qq),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
        assert!(poly_identity_zero(&hyper.substitute(&map)));
    }

    #[test]
    fn display_round_trips() {
        let q = BaseField::rationals();
        for s in ["3*a^2*b - 1/2*c + 7", "-x*y^3 + x", "0", "-5"] {
            let p = MPoly::parse(q, s).unwrap();
            assert_eq!(MPoly::parse(q, &p.to_string()).unwrap(), p, "{s} -> {p}");
        }
    }
}
