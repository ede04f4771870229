//! Random inputs for property checks: rational functions, gluing data,
//! trace elements, conductor rings and modules over local algebras.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{BaseField, FieldElement, Place, Poly, RationalFunction, Scalar, SimpleExtension};
use crate::artinian::{FiniteAlgebra, FiniteModule};
use crate::filling::{BranchSpec, ConductorRing};
use crate::glue::{GlueData, KernelElement};
use crate::linalg;

/// Characteristics sampled by the suites.
pub const CHARACTERISTICS: [u64; 4] = [0, 2, 3, 5];

pub fn field<R: Rng>(rng: &mut R, choices: &[u64]) -> BaseField {
    BaseField::new(*choices.choose(rng).expect("nonempty")).expect("valid characteristic")
}

pub fn scalar<R: Rng>(field: BaseField, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-4..=4))
}

pub fn nonzero_scalar<R: Rng>(field: BaseField, rng: &mut R) -> Scalar {
    loop {
        let c = scalar(field, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn poly<R: Rng>(field: BaseField, max_deg: usize, rng: &mut R) -> Poly<Scalar> {
    let deg = rng.gen_range(0..=max_deg);
    Poly::from_coeffs((0..=deg).map(|_| scalar(field, rng)).collect(), &field.zero())
}

/// A random point of the line over the prime field, or `∞`.
pub fn rational_place<R: Rng>(field: BaseField, rng: &mut R) -> Place {
    if rng.gen_bool(0.2) {
        Place::Infinity
    } else {
        Place::point(scalar(field, rng))
    }
}

/// `(x - c)^k`, or `x^{-k}`-style behaviour at `∞` via `x^k`.
pub fn local_power(field: BaseField, place: &Place, k: i64) -> RationalFunction {
    let x = RationalFunction::x(field);
    let base = match place.rational_coordinate() {
        Some(c) => x - RationalFunction::constant(c),
        None => RationalFunction::one(field).checked_div(&x).expect("x nonzero"),
    };
    let mut out = RationalFunction::one(field);
    for _ in 0..k.unsigned_abs() {
        out = out * base.clone();
    }
    if k < 0 {
        out = RationalFunction::one(field).checked_div(&out).expect("nonzero");
    }
    out
}

/// A function with at most a pole of order `max_pole` at a couple of
/// random points, plus a polynomial part of low degree.
pub fn rational_function<R: Rng>(field: BaseField, max_pole: u32, rng: &mut R) -> RationalFunction {
    let mut f = RationalFunction::from_poly(poly(field, 2, rng));
    for _ in 0..rng.gen_range(0..=2) {
        let place = Place::point(scalar(field, rng));
        let m = rng.gen_range(1..=max_pole.max(1)) as i64;
        f = f + RationalFunction::constant(scalar(field, rng)) * local_power(field, &place, -m);
    }
    f
}

pub fn nonzero_rational_function<R: Rng>(field: BaseField, max_pole: u32, rng: &mut R) -> RationalFunction {
    loop {
        let f = rational_function(field, max_pole, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn glue_data<R: Rng>(field: BaseField, r: usize, rng: &mut R) -> GlueData {
    let a = rational_function(field, 3, rng);
    let b = (0..r).map(|_| nonzero_rational_function(field, 2, rng)).collect();
    GlueData::new(a, b).expect("b_i nonzero")
}

/// An element of `ker Tr` built from the closed form: free `f_1` and
/// `g_2..g_r`, then `f_i = (b_i/b_1) f_1` and
/// `g_1 = -(a f_1/b_1)' - Σ_{i≥2} g_i`.
pub fn kernel_element<R: Rng>(data: &GlueData, rng: &mut R) -> KernelElement {
    let field = data.field();
    let f1 = rational_function(field, 2, rng);
    let f = data
        .b
        .iter()
        .map(|b| b.checked_div(&data.b[0]).expect("b_1 nonzero") * f1.clone())
        .collect();
    let mut g: Vec<RationalFunction> = (0..data.r()).map(|_| rational_function(field, 2, rng)).collect();
    let rest = g[1..]
        .iter()
        .fold(RationalFunction::zero(field), |acc, gi| acc + gi.clone());
    g[0] = -(data.phi(0) * f1).derivative() - rest;
    KernelElement { f, g }
}

pub fn trace_element<R: Rng>(data: &GlueData, rng: &mut R) -> KernelElement {
    let field = data.field();
    KernelElement {
        f: (0..data.r()).map(|_| rational_function(field, 2, rng)).collect(),
        g: (0..data.r()).map(|_| rational_function(field, 2, rng)).collect(),
    }
}

/// A quadratic residue extension of the prime field.
pub fn quadratic_residue(field: BaseField) -> SimpleExtension<Scalar> {
    let c = |n: i64| field.from_i64(n);
    let coeffs = match field.characteristic() {
        2 => vec![c(1), c(1), c(1)],
        3 => vec![c(1), c(0), c(1)],
        _ => vec![c(-2), c(0), c(1)],
    };
    SimpleExtension::new(Poly::from_coeffs(coeffs, &field.zero())).expect("irreducible quadratic")
}

/// Branches with `Σ d_E n_E <= max_dim`.
pub fn conductor_ring<R: Rng>(field: BaseField, max_dim: usize, rng: &mut R) -> ConductorRing<Scalar> {
    let proto = field.zero();
    loop {
        let count = rng.gen_range(1..=3);
        let mut branches = Vec::new();
        let mut dim = 0;
        for e in 0..count {
            let n = rng.gen_range(1..=3);
            let quadratic = rng.gen_bool(0.2);
            let d = if quadratic { 2 } else { 1 };
            let residue = if quadratic {
                quadratic_residue(field)
            } else {
                SimpleExtension::trivial(&proto)
            };
            dim += d * n;
            branches.push(BranchSpec {
                residue,
                multiplicity: n,
                parameter: format!("t{}", e + 1),
            });
        }
        if dim <= max_dim && dim >= 2 {
            return ConductorRing::new(branches).expect("valid branches");
        }
    }
}

/// `k[t]/(t^n)`, `k[s, t]/(s, t)^2`, or a local subalgebra of a conductor
/// ring.
pub fn local_algebra<R: Rng>(field: BaseField, rng: &mut R) -> Arc<FiniteAlgebra<Scalar>> {
    let proto = field.zero();
    match rng.gen_range(0..3) {
        0 => Arc::new(FiniteAlgebra::truncated(&proto, rng.gen_range(1..=4))),
        1 => {
            let unit = linalg::unit_vec(&proto, 3, 0);
            let alg = FiniteAlgebra::from_rule(3, unit, &proto, |i, j| match (i, j) {
                (0, k) | (k, 0) => linalg::unit_vec(&proto, 3, k),
                _ => vec![proto.zero_like(); 3],
            });
            Arc::new(alg.expect("square-zero algebra"))
        }
        _ => loop {
            let ring = conductor_ring(field, 6, rng);
            if let Some(basis) = crate::filling::random_part_filling(&ring, 6, rng, 20) {
                return Arc::new(ring.algebra().subalgebra(&basis).expect("subalgebra"));
            }
        },
    }
}

/// `A^k` for `k <= 2`, then a random submodule or quotient.
pub fn module<R: Rng>(alg: &Arc<FiniteAlgebra<Scalar>>, rng: &mut R) -> FiniteModule<Scalar> {
    let proto = alg.proto().clone();
    let field = proto.field();
    let k = rng.gen_range(1..=2);
    let d = alg.dim();
    let action = (0..d)
        .map(|i| {
            let m = alg.mul_matrix(&alg.basis(i));
            let mut out = linalg::zeros(&proto, k * d, k * d);
            for b in 0..k {
                for r in 0..d {
                    for c in 0..d {
                        out[b * d + r][b * d + c] = m[r][c].clone();
                    }
                }
            }
            out
        })
        .collect();
    let free = FiniteModule::new(alg.clone(), k * d, action).expect("free module");
    loop {
        let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..k * d).map(|_| scalar(field, rng)).collect())
            .collect();
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        for v in &gens {
            for i in 0..d {
                span.push(free.act(&alg.basis(i), v));
            }
        }
        let sub = linalg::span_basis(&span, k * d);
        let m = if rng.gen_bool(0.5) {
            if sub.is_empty() {
                continue;
            }
            free.submodule(&sub)
        } else {
            if sub.len() == k * d {
                continue;
            }
            free.quotient(&sub)
        };
        if let Ok(m) = m {
            return m;
        }
    }
}
