//! Factorization of univariate polynomials over the coefficient field.
//!
//! Over `F_p` this is complete (square-free split, distinct-degree split,
//! Cantor–Zassenhaus). Over `Q` linear factors are found by the rational root
//! test; a remaining factor of degree 2 or 3 is then irreducible, and higher
//! degree remainders are accepted only when a prime reduction certifies them
//! irreducible.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{BaseField, FieldElement, Scalar};
use super::poly::Poly;
use super::AlgebraError;

pub type BasePoly = Poly<Scalar>;

fn field_of(p: &BasePoly) -> BaseField {
    p.proto().field()
}

fn x_poly(field: BaseField) -> BasePoly {
    Poly::x(&field.zero())
}

/// `f = Π g^k` with `g` monic, square-free and pairwise coprime. Works in any
/// characteristic; constants give an empty list.
pub fn squarefree_decomposition(f: &BasePoly) -> Vec<(BasePoly, u32)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let field = field_of(&f);
    let one = Poly::one(&field.zero());
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1u32;
    while w != one {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if z != one {
            out.push((z, i));
        }
        i += 1;
        w = y.clone();
        c = c.exact_div(&y).expect("gcd divides");
    }
    if c != one {
        // c lies in k[x^p]; take its p-th root and recurse.
        let p = field.characteristic() as usize;
        assert!(p > 0, "char 0 square-free loop must exhaust c");
        let root_coeffs: Vec<Scalar> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|s| s.pth_root().expect("prime field is perfect"))
            .collect();
        let root = Poly::from_coeffs(root_coeffs, &field.zero());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Rabin's test over `F_p`.
fn is_irreducible_fp(f: &BasePoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let field = field_of(&f);
    let p = BigUint::from(field.characteristic());
    let x = x_poly(field);
    let frob = |k: usize| x.pow_mod(&p.pow(k as u32), &f);
    if frob(n) != x.rem(&f) {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while m > 1 {
        if m % q == 0 {
            prime_divisors.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    prime_divisors.into_iter().all(|q| {
        let h = &frob(n / q) - &x;
        h.gcd(&f).is_constant()
    })
}

fn distinct_degree(f: &BasePoly) -> Vec<(BasePoly, usize)> {
    let field = field_of(f);
    let p = BigUint::from(field.characteristic());
    let x = x_poly(field);
    let mut rest = f.monic();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&p, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(field: BaseField, below: usize, rng: &mut ChaCha8Rng) -> BasePoly {
    let p = field.characteristic();
    let coeffs = (0..below)
        .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
        .collect();
    Poly::from_coeffs(coeffs, &field.zero())
}

fn equal_degree(f: &BasePoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<BasePoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let field = field_of(f);
    let p = field.characteristic();
    loop {
        let a = random_poly(field, n, rng);
        if a.is_constant() {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_constant() {
            let b = if p == 2 {
                // Absolute trace F_{2^d} -> F_2.
                let mut acc = a.rem(f);
                let mut term = acc.clone();
                for _ in 1..d {
                    term = (&term * &term).rem(f);
                    acc = &acc + &term;
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u8);
                &a.pow_mod(&e, f) - &Poly::one(&field.zero())
            };
            g = b.gcd(f);
        }
        if !g.is_constant() && g.degree() != f.degree() {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn factor_squarefree_fp(f: &BasePoly) -> Vec<BasePoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f) {
        out.extend(equal_degree(&g, d, &mut rng));
    }
    out
}

/// Primitive integer polynomial proportional to a rational one.
pub(crate) fn primitive_integer_coeffs(f: &BasePoly) -> Vec<BigInt> {
    let rats: Vec<_> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients").clone())
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    let n = n.abs();
    let Some(n) = num_traits::ToPrimitive::to_u64(&n).filter(|&v| v <= DIVISOR_LIMIT) else {
        return Err(AlgebraError::FactorizationUnsupported(format!(
            "coefficient {n} too large for the rational root test"
        )));
    };
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// All rational roots of a nonzero polynomial over `Q`.
pub fn rational_roots(f: &BasePoly) -> Result<Vec<Scalar>, AlgebraError> {
    let field = field_of(f);
    assert_eq!(field.characteristic(), 0);
    let mut roots = Vec::new();
    let mut f = f.clone();
    let x = x_poly(field);
    if f.coeff(0).is_zero() {
        roots.push(field.zero());
        while f.coeff(0).is_zero() {
            f = f.exact_div(&x).expect("x divides");
        }
    }
    if f.is_constant() {
        return Ok(roots);
    }
    let ints = primitive_integer_coeffs(&f);
    let lead = ints.last().unwrap().clone();
    let numerators = positive_divisors(&ints[0])?;
    let denominators = positive_divisors(&lead)?;
    for a in &numerators {
        for b in &denominators {
            if !a.gcd(b).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let cand = field.from_ratio(&(a * sign), b)?;
                if f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// Certifies a degree >= 4 polynomial over `Q` irreducible by finding a prime
/// at which its reduction keeps its degree and is irreducible.
fn modular_certificate(f: &BasePoly) -> bool {
    let ints = primitive_integer_coeffs(f);
    let mut p = 2u64;
    while p < 400 {
        if super::field::is_prime(p) {
            let fp = BaseField::prime(p).unwrap();
            let red = Poly::from_coeffs(ints.iter().map(|c| fp.from_bigint(c)).collect(), &fp.zero());
            if red.degree() == f.degree() && is_irreducible_fp(&red) {
                return true;
            }
        }
        p += 1;
    }
    false
}

/// Decides irreducibility. Over `Q`, polynomials of degree >= 4 without a
/// prime certificate are reported as unsupported rather than guessed.
pub fn is_irreducible(f: &BasePoly) -> Result<bool, AlgebraError> {
    let Some(n) = f.degree() else { return Ok(false) };
    if n == 0 {
        return Ok(false);
    }
    let field = field_of(f);
    if field.is_finite() {
        return Ok(is_irreducible_fp(f));
    }
    if n == 1 {
        return Ok(true);
    }
    if !rational_roots(f)?.is_empty() {
        return Ok(false);
    }
    if n <= 3 || modular_certificate(f) {
        return Ok(true);
    }
    Err(AlgebraError::FactorizationUnsupported(format!(
        "cannot certify irreducibility of a degree {n} polynomial over Q"
    )))
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients for deterministic output.
pub fn factor(f: &BasePoly) -> Result<Vec<(BasePoly, u32)>, AlgebraError> {
    let field = field_of(f);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        if field.is_finite() {
            out.extend(factor_squarefree_fp(&g).into_iter().map(|h| (h, m)));
        } else {
            let mut rest = g.clone();
            for r in rational_roots(&g)? {
                let lin = Poly::from_coeffs(vec![-r, field.one()], &field.zero());
                rest = rest.exact_div(&lin).expect("root gives a factor");
                out.push((lin, m));
            }
            if !rest.is_constant() {
                if is_irreducible(&rest)? {
                    out.push((rest.monic(), m));
                } else {
                    return Err(AlgebraError::FactorizationUnsupported(format!(
                        "polynomial {} has no rational roots but is reducible",
                        crate::algebra::ratfunc::RationalFunction::from_poly(rest)
                    )));
                }
            }
        }
    }
    out.sort_by(|a, b| poly_order_key(&a.0).cmp(&poly_order_key(&b.0)));
    Ok(out)
}

pub(crate) fn poly_order_key(p: &BasePoly) -> (usize, Vec<String>) {
    (
        p.degree().unwrap_or(0),
        p.coeffs().iter().rev().map(|c| format!("{c:>24}")).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: BaseField, c: &[i64]) -> BasePoly {
        Poly::from_coeffs(c.iter().map(|&v| field.from_i64(v)).collect(), &field.zero())
    }

    fn expand(factors: &[(BasePoly, u32)], field: BaseField) -> BasePoly {
        factors
            .iter()
            .fold(Poly::one(&field.zero()), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }

    #[test]
    fn factors_over_small_primes_recombine() {
        for p in [2u64, 3, 5, 7] {
            let f = BaseField::prime(p).unwrap();
            let target = poly(f, &[1, 0, 1, 1, 0, 0, 1, 1, 1]);
            let fac = factor(&target).unwrap();
            assert_eq!(expand(&fac, f), target.monic(), "p={p}");
            for (g, _) in &fac {
                assert!(is_irreducible(g).unwrap());
            }
        }
    }

    #[test]
    fn inseparable_square_in_char_two() {
        let f2 = BaseField::prime(2).unwrap();
        // x^2 + 1 = (x + 1)^2 over F_2
        let fac = factor(&poly(f2, &[1, 0, 1])).unwrap();
        assert_eq!(fac, vec![(poly(f2, &[1, 1]), 2)]);
        // (x^2 - x)^2 = x^2 (x - 1)^2
        let fac = factor(&poly(f2, &[0, 0, 1, 0, 1])).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().all(|(_, m)| *m == 2));
    }

    #[test]
    fn rational_linear_factors() {
        let q = BaseField::rationals();
        // (2x - 1)(x + 3)^2 (x^2 + 1)
        let f = &(&poly(q, &[-1, 2]) * &poly(q, &[3, 1]).pow(2)) * &poly(q, &[1, 0, 1]);
        let fac = factor(&f).unwrap();
        assert_eq!(expand(&fac, q), f.monic());
        assert_eq!(fac.len(), 3);
    }

    #[test]
    fn quartic_certificate_and_refusal() {
        let q = BaseField::rationals();
        assert!(is_irreducible(&poly(q, &[2, 0, 0, 0, 1])).unwrap());
        // x^4 + 1 is reducible mod every prime.
        assert!(matches!(
            is_irreducible(&poly(q, &[1, 0, 0, 0, 1])),
            Err(AlgebraError::FactorizationUnsupported(_))
        ));
    }
}
