//! Gluing data along a double line: the derivation `Δ(a, b)`, the trace on
//! generic stalks, and the pointwise Gorenstein and tameness conditions.
//!
//! On `O_{D+} = k(x)[y_1..y_r]/(y)^2` the derivation is
//! `f + Σ g_i y_i -> a f' + Σ b_i g_i`, and `O_D` is its kernel.
//!
//! At `∞` the local parameter is `t = 1/x` and the frame of the `i`-th
//! summand of `O(-1)` is `y_i / x`, so the local datum there is
//! `(-t^2 a, t b_i)`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, BaseField, FieldElement, Place, Poly, RationalFunction, Scalar};
use crate::artinian::restriction_trace;
use crate::filling::{BranchSpec, ConductorRing, FillingError};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlueError {
    #[error("derivation datum needs at least one b_i")]
    NoBranches,
    #[error("derivation datum b_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("multiplicity n must be at least 1")]
    ZeroMultiplicity,
    #[error("wild cusp tangent dimensions are only known for smooth Y")]
    SingularY,
    #[error("degree bound {given} is below the required {required}")]
    BoundTooSmall { given: usize, required: usize },
    #[error("the local expansion at {0} needs a rational place")]
    NonRationalPlace(String),
    #[error("{0} lists {1} entries for {2} branches")]
    Length(&'static str, usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Filling(#[from] FillingError),
}

/// `Δ(a, b)` with `b_1, ..., b_r` nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct GlueData {
    pub a: RationalFunction,
    pub b: Vec<RationalFunction>,
}

impl GlueData {
    pub fn new(a: RationalFunction, b: Vec<RationalFunction>) -> Result<Self, GlueError> {
        if b.is_empty() {
            return Err(GlueError::NoBranches);
        }
        if let Some(i) = b.iter().position(|bi| bi.is_zero()) {
            return Err(GlueError::ZeroCoefficient(i + 1));
        }
        Ok(GlueData { a, b })
    }

    pub fn parse(field: BaseField, a: &str, b: &[&str]) -> Result<Self, GlueError> {
        let a = RationalFunction::parse(field, a)?;
        let b = b
            .iter()
            .map(|s| RationalFunction::parse(field, s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(a, b)
    }

    pub fn r(&self) -> usize {
        self.b.len()
    }

    pub fn field(&self) -> BaseField {
        self.a.field()
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    /// `a / b_i`.
    pub fn phi(&self, i: usize) -> RationalFunction {
        self.a.checked_div(&self.b[i]).expect("b_i nonzero")
    }

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(self.field())
    }
}

/// An element `f + Σ g_i y_i` of `O_{D+}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DPlusElement {
    pub f: RationalFunction,
    pub g: Vec<RationalFunction>,
}

/// `a f' + Σ b_i g_i`.
pub fn delta(data: &GlueData, s: &DPlusElement) -> RationalFunction {
    data.b
        .iter()
        .zip(&s.g)
        .fold(data.a.clone() * s.f.derivative(), |acc, (b, g)| acc + b.clone() * g.clone())
}

/// `ξ = x - (a/b_1) y_1` and `η_i = y_i - (b_i/b_1) y_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiCoordinates {
    pub xi: DPlusElement,
    pub eta: Vec<DPlusElement>,
}

pub fn xi_coordinates(data: &GlueData) -> XiCoordinates {
    let field = data.field();
    let r = data.r();
    let mut g = vec![data.zero(); r];
    g[0] = -data.phi(0);
    let xi = DPlusElement {
        f: RationalFunction::x(field),
        g,
    };
    let eta = (1..r)
        .map(|i| {
            let mut g = vec![data.zero(); r];
            g[0] = -data.b[i].checked_div(&data.b[0]).unwrap();
            g[i] = RationalFunction::one(field);
            DPlusElement {
                f: data.zero(),
                g,
            }
        })
        .collect();
    XiCoordinates { xi, eta }
}

/// `s(f, g) = Σ (f_i + g_i y_i) s_i`, a generic section of `ω_C`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelElement {
    pub f: Vec<RationalFunction>,
    pub g: Vec<RationalFunction>,
}

/// The generic stalk `O_C = ∏ k(ξ)[y_i]/(y_i^2)` as a `k(ξ)`-algebra, with
/// `e_i` at coordinate `2i` and `y_i` at `2i + 1`, and `O_D` spanned by
/// `1, η_2, ..., η_r`.
///
/// Elements of `k(ξ)` are written as rational functions in the variable
/// `x`, read as `ξ`.
#[derive(Clone, Debug)]
pub struct KxiEngine {
    data: GlueData,
    ring: ConductorRing<RationalFunction>,
    od_basis: Vec<Vec<RationalFunction>>,
}

impl KxiEngine {
    pub fn new(data: &GlueData) -> Result<Self, GlueError> {
        let data = GlueData::new(data.a.clone(), data.b.clone())?;
        let zero = data.zero();
        let ring = ConductorRing::new(
            (0..data.r())
                .map(|i| BranchSpec::trivial(&zero, 2, &format!("y{}", i + 1)))
                .collect(),
        )?;
        let mut engine = KxiEngine {
            data,
            ring,
            od_basis: Vec::new(),
        };
        let r = engine.data.r();
        let one = RationalFunction::one(engine.data.field());
        let mut basis = vec![engine.embed(&vec![one; r], &vec![zero.clone(); r])];
        for eta in xi_coordinates(&engine.data).eta {
            basis.push(engine.embed(&vec![zero.clone(); r], &eta.g));
        }
        engine.od_basis = basis;
        Ok(engine)
    }

    pub fn data(&self) -> &GlueData {
        &self.data
    }

    pub fn ring(&self) -> &ConductorRing<RationalFunction> {
        &self.ring
    }

    pub fn od_basis(&self) -> &[Vec<RationalFunction>] {
        &self.od_basis
    }

    /// `Σ (f_i(x_i) + g_i(x_i) y_i)` in `k(ξ)` coordinates. Branches `i >= 2`
    /// have `x_i = ξ`; on the first, `x_1 = ξ + (a/b_1) y_1` and `y_1^2 = 0`
    /// give `f(x_1) = f(ξ) + (a/b_1) f'(ξ) y_1`.
    pub fn embed(&self, f: &[RationalFunction], g: &[RationalFunction]) -> Vec<RationalFunction> {
        let mut v = self.ring.algebra().zero_vec();
        for i in 0..self.data.r() {
            v[2 * i] = f[i].clone();
            v[2 * i + 1] = g[i].clone();
        }
        v[1] = v[1].clone() + self.data.phi(0) * f[0].derivative();
        v
    }

    /// Values of a functional on the `O_D` basis.
    pub fn trace_of(&self, functional: &[RationalFunction]) -> Result<Vec<RationalFunction>, GlueError> {
        if functional.len() != self.ring.dim() {
            return Err(GlueError::Length("functional", functional.len(), self.ring.dim()));
        }
        let zero = self.data.zero();
        Ok(self
            .od_basis
            .iter()
            .map(|v| linalg::dot(v, functional, &zero))
            .collect())
    }

    /// `dim_{k(ξ)} ker Tr`.
    pub fn kernel_dimension(&self) -> Result<usize, GlueError> {
        let tr = restriction_trace(self.ring.algebra(), &self.od_basis)
            .map_err(FillingError::from)?;
        Ok(tr.kernel.len())
    }
}

fn check_lengths(data: &GlueData, s: &KernelElement) -> Result<(), GlueError> {
    if s.f.len() != data.r() {
        return Err(GlueError::Length("f", s.f.len(), data.r()));
    }
    if s.g.len() != data.r() {
        return Err(GlueError::Length("g", s.g.len(), data.r()));
    }
    Ok(())
}

/// `s ∈ ker Tr` iff `f_i/b_i = f_1/b_1` for all `i` and
/// `(a f_1/b_1)' = -Σ g_i`.
pub fn ker_trace_closed_form(data: &GlueData, s: &KernelElement) -> Result<bool, GlueError> {
    check_lengths(data, s)?;
    let ratio = s.f[0].checked_div(&data.b[0]).unwrap();
    let same = (1..data.r()).all(|i| s.f[i].checked_div(&data.b[i]).unwrap() == ratio);
    let lhs = (data.a.clone() * ratio).derivative();
    let sum = s.g.iter().fold(data.zero(), |acc, g| acc + g.clone());
    Ok(same && lhs == -sum)
}

/// Coefficients of `s` in the basis `s'_i`, as `Σ (F_i + G_i y_i) s'_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimedCoefficients {
    pub f: Vec<RationalFunction>,
    pub g: Vec<RationalFunction>,
}

impl PrimedCoefficients {
    /// The functional `c -> ` coefficient of `y` in `c s`, written on the
    /// `k(ξ)` basis `e_i, y_i`: `(F + G y)s'` sends `α + β y` to `α G + β F`.
    pub fn functional(&self) -> Vec<RationalFunction> {
        self.f
            .iter()
            .zip(&self.g)
            .flat_map(|(f, g)| [g.clone(), f.clone()])
            .collect()
    }
}

/// `s = (a f_1/b_1)' y_1 s'_1 + Σ (f_i + g_i y_i) s'_i`.
pub fn change_of_basis(data: &GlueData, s: &KernelElement) -> Result<PrimedCoefficients, GlueError> {
    check_lengths(data, s)?;
    let mut g = s.g.clone();
    g[0] = g[0].clone() + (data.phi(0) * s.f[0].clone()).derivative();
    Ok(PrimedCoefficients { f: s.f.clone(), g })
}

/// A first-order Taylor value `v + w y` with `y^2 = 0`.
#[derive(Clone, Debug)]
struct Dual {
    v: RationalFunction,
    w: RationalFunction,
}

impl Dual {
    fn mul(&self, o: &Dual) -> Dual {
        Dual {
            v: self.v.clone() * o.v.clone(),
            w: self.v.clone() * o.w.clone() + self.w.clone() * o.v.clone(),
        }
    }

    /// Horner at `x + φ y` over polynomials: the accumulator is `v + w φ y`,
    /// and multiplying by `x + φ y` sends `(v, w)` to `(x v, v + x w)`.
    fn eval_poly(p: &Poly<Scalar>, phi: &RationalFunction) -> Dual {
        let proto = p.proto().clone();
        let x = Poly::x(&proto);
        let mut v = Poly::zero(&proto);
        let mut w = Poly::zero(&proto);
        for c in p.coeffs().iter().rev() {
            w = &v + &(&x * &w);
            v = &(&x * &v) + &Poly::constant(c.clone());
        }
        Dual {
            v: RationalFunction::from_poly(v),
            w: RationalFunction::from_poly(w) * phi.clone(),
        }
    }

    fn eval(f: &RationalFunction, phi: &RationalFunction) -> Dual {
        let n = Self::eval_poly(f.numerator(), phi);
        let d = Self::eval_poly(f.denominator(), phi);
        let inv = d.v.inv().expect("denominator nonzero at the generic point");
        Dual {
            v: n.v.clone() * inv.clone(),
            w: (n.w * d.v.clone() - n.v * d.w) * inv.clone() * inv,
        }
    }
}

/// Independent membership test: expand the first branch by first-order
/// Taylor arithmetic at `ξ + (a/b_1) y_1`, apply `s_1 = (1 + (a/b_1)' y_1)s'_1`,
/// and restrict the resulting functional to the `O_D` basis of the engine.
pub fn ker_trace_oracle(data: &GlueData, s: &KernelElement) -> Result<bool, GlueError> {
    check_lengths(data, s)?;
    let engine = KxiEngine::new(data)?;
    let field = data.field();
    let phi = data.phi(0);
    let f1 = Dual::eval(&s.f[0], &phi);
    let g1 = Dual::eval(&s.g[0], &phi);
    // (f_1 + g_1 y) evaluated at x_1, with g_1 y only keeping its value.
    let first = Dual {
        v: f1.v,
        w: f1.w + g1.v,
    };
    let jac = Dual {
        v: RationalFunction::one(field),
        w: phi.derivative(),
    };
    let first = first.mul(&jac);
    let mut f = s.f.clone();
    let mut g = s.g.clone();
    f[0] = first.v;
    g[0] = first.w;
    let functional = PrimedCoefficients { f, g }.functional();
    Ok(engine.trace_of(&functional)?.iter().all(|c| c.is_zero()))
}

/// `(a, b)` in the local chart at `place`: unchanged at finite places,
/// `(-t^2 a, t b_i)` in `t = 1/x` at infinity.
pub fn local_datum(data: &GlueData, place: &Place) -> (RationalFunction, Vec<RationalFunction>) {
    match place {
        Place::Finite(_) => (data.a.clone(), data.b.clone()),
        Place::Infinity => {
            let x = RationalFunction::x(data.field());
            let x2 = x.clone() * x.clone();
            let a = -(data.a.checked_div(&x2).unwrap());
            let b = data.b.iter().map(|b| b.checked_div(&x).unwrap()).collect();
            (a, b)
        }
    }
}

/// Order at `place` of `a/b_i` read in the local chart.
fn local_phi_order(data: &GlueData, i: usize, place: &Place) -> Option<i64> {
    if data.a.is_zero() {
        return None;
    }
    let shift = matches!(place, Place::Infinity) as i64;
    Some(data.phi(i).order_at(place).expect("nonzero") + shift)
}

fn ratio_is_unit(data: &GlueData, i: usize, j: usize, place: &Place) -> bool {
    let q = data.b[i].checked_div(&data.b[j]).unwrap();
    q.order_at(place).expect("nonzero") == 0
}

/// Each `b_i/b_j` is a unit at `place`, and each `a/b_i` is regular there
/// or has a pole of order divisible by the characteristic.
pub fn gorenstein_at_point(data: &GlueData, place: &Place) -> bool {
    let p = data.characteristic() as i64;
    let r = data.r();
    let units = (1..r).all(|i| ratio_is_unit(data, i, 0, place));
    units
        && (0..r).all(|i| match local_phi_order(data, i, place) {
            None => true,
            Some(m) if m >= 0 => true,
            Some(m) => p > 0 && (-m) % p == 0,
        })
}

/// The chart function `h(t)` with `t` the local parameter at a rational
/// place or at infinity.
fn to_chart(h: &RationalFunction, place: &Place) -> Result<RationalFunction, GlueError> {
    match place {
        Place::Infinity => Ok(h.invert_variable()),
        Place::Finite(_) => match place.rational_coordinate() {
            Some(c) => Ok(h.shift(&c)),
            None => Err(GlueError::NonRationalPlace(place.to_string())),
        },
    }
}

/// Laurent coefficients of `h` at `t = 0` for exponents `from..to`.
fn laurent(h: &RationalFunction, from: i64, to: i64) -> Vec<Scalar> {
    let field = h.field();
    if from >= to {
        return Vec::new();
    }
    if h.is_zero() {
        return vec![field.zero(); (to - from) as usize];
    }
    let strip = |p: &Poly<Scalar>| {
        let v = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        (v as i64, p.coeffs()[v..].to_vec())
    };
    let (vn, num) = strip(h.numerator());
    let (vd, den) = strip(h.denominator());
    let val = vn - vd;
    let count = (to - val).max(0) as usize;
    // Power series num/den to `count` terms.
    let inv0 = den[0].inv().unwrap();
    let mut series: Vec<Scalar> = Vec::with_capacity(count);
    for k in 0..count {
        let mut c = num.get(k).cloned().unwrap_or_else(|| field.zero());
        for j in 1..=k.min(den.len() - 1) {
            c = c - den[j].clone() * series[k - j].clone();
        }
        series.push(c * inv0.clone());
    }
    (from..to)
        .map(|e| {
            let k = e - val;
            if k < 0 {
                field.zero()
            } else {
                series[k as usize].clone()
            }
        })
        .collect()
}

/// Solves `(a f_1/b_1)' = -Σ g_i` locally by searching for a unit `f_1`
/// among polynomials of degree `<= bound` in the local parameter; the `g_i`
/// may be taken as `g_1 = -(a f_1/b_1)'` and `g_i = 0`, so the condition is
/// that `(φ f_1)'` has no polar part. The `f_i = (b_i/b_1) f_1` must also be
/// units. Rational places and infinity only.
pub fn gorenstein_at_point_oracle(
    data: &GlueData,
    place: &Place,
    bound: usize,
) -> Result<bool, GlueError> {
    let (a, b) = local_datum(data, place);
    let field = data.field();
    let b1 = to_chart(&b[0], place)?;
    for bi in &b[1..] {
        let q = to_chart(&bi.checked_div(&b[0]).unwrap(), place)?;
        if lowest_exponent(&q) != 0 {
            return Ok(false);
        }
    }
    if a.is_zero() {
        return Ok(true);
    }
    let phi = to_chart(&a, place)?.checked_div(&b1).unwrap();
    // Lowest exponent of φ, found by scanning a window.
    let m = lowest_exponent(&phi);
    if m >= 0 {
        return Ok(true);
    }
    let required = (-m) as usize + field.characteristic() as usize + 2;
    if bound < required {
        return Err(GlueError::BoundTooSmall {
            given: bound,
            required,
        });
    }
    let coeffs = laurent(&phi, m, 0);
    let at = |l: i64| coeffs[(l - m) as usize].clone();
    let unknowns = bound + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in m..0 {
        let kk = field.from_i64(k);
        if kk.is_zero() {
            continue;
        }
        let row: Vec<Scalar> = (0..unknowns as i64)
            .map(|j| {
                if k - j >= m {
                    kk.clone() * at(k - j)
                } else {
                    field.zero()
                }
            })
            .collect();
        rows.push(row);
        rhs.push(field.zero());
    }
    rows.push(linalg::unit_vec(&field.zero(), unknowns, 0));
    rhs.push(field.one());
    Ok(linalg::solve(&rows, unknowns, &rhs, &field.zero()).is_some())
}

fn lowest_exponent(h: &RationalFunction) -> i64 {
    let v = |p: &Poly<Scalar>| p.coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
    v(h.numerator()) - v(h.denominator())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TameReport {
    pub tame: bool,
    /// Places where some `a/b_i` has a pole, with the largest pole order.
    pub wild_points: Vec<(Place, u32)>,
}

/// Tame iff every `a/b_i` is regular at every place, including infinity.
pub fn is_tame(data: &GlueData) -> Result<TameReport, GlueError> {
    let mut poles: BTreeMap<String, (Place, u32)> = BTreeMap::new();
    if !data.a.is_zero() {
        for i in 0..data.r() {
            let phi = data.phi(i);
            for (place, order) in phi.poles()? {
                if place == Place::Infinity {
                    continue;
                }
                let key = format!("0{place}");
                let e = poles.entry(key).or_insert((place, 0));
                e.1 = e.1.max(order);
            }
            if let Some(m) = local_phi_order(data, i, &Place::Infinity) {
                if m < 0 {
                    let e = poles.entry("1inf".into()).or_insert((Place::Infinity, 0));
                    e.1 = e.1.max((-m) as u32);
                }
            }
        }
    }
    let wild_points: Vec<(Place, u32)> = poles.into_values().collect();
    Ok(TameReport {
        tame: wild_points.is_empty(),
        wild_points,
    })
}

/// Every place where the Gorenstein condition can fail: poles of the
/// `a/b_i`, zeros and poles of the `b_i/b_1`, and infinity.
pub fn critical_places(data: &GlueData) -> Result<Vec<Place>, GlueError> {
    let mut out: Vec<Place> = Vec::new();
    let mut push = |p: Place| {
        if !out.contains(&p) {
            out.push(p);
        }
    };
    for i in 0..data.r() {
        if !data.a.is_zero() {
            for (p, _) in data.phi(i).poles()? {
                push(p);
            }
        }
        let q = data.b[i].checked_div(&data.b[0]).unwrap();
        for (p, _) in q.poles()? {
            push(p);
        }
        for (p, _) in q.inv().unwrap().poles()? {
            push(p);
        }
    }
    push(Place::Infinity);
    Ok(out)
}

/// Places where the Gorenstein condition fails.
pub fn gorenstein_failures(data: &GlueData) -> Result<Vec<Place>, GlueError> {
    Ok(critical_places(data)?
        .into_iter()
        .filter(|p| !gorenstein_at_point(data, p))
        .collect())
}

/// The numerical semigroup `{i : p | i or i >= np}` of the wild cusp
/// `k[x^i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildCuspRing {
    pub p: u64,
    pub n: u64,
    pub generators: Vec<u64>,
    pub embedding_dim: usize,
    pub gaps: Vec<u64>,
    pub delta: usize,
}

impl WildCuspRing {
    pub fn contains(&self, i: u64) -> bool {
        i % self.p == 0 || i >= self.n * self.p
    }
}

fn ensure_prime(p: u64) -> Result<(), GlueError> {
    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(GlueError::NotPrime(p));
    }
    Ok(())
}

pub fn wild_cusp_ring(p: u64, n: u64) -> Result<WildCuspRing, GlueError> {
    ensure_prime(p)?;
    if n == 0 {
        return Err(GlueError::ZeroMultiplicity);
    }
    let conductor = n * p;
    let mut ring = WildCuspRing {
        p,
        n,
        generators: Vec::new(),
        embedding_dim: 0,
        gaps: Vec::new(),
        delta: 0,
    };
    ring.gaps = (1..conductor).filter(|&i| !ring.contains(i)).collect();
    ring.delta = ring.gaps.len();
    // Minimal generators lie below conductor + multiplicity.
    let limit = conductor + p;
    for s in 1..limit {
        if !ring.contains(s) {
            continue;
        }
        let decomposable = (1..s).any(|u| ring.contains(u) && ring.contains(s - u));
        if !decomposable {
            ring.generators.push(s);
        }
    }
    ring.embedding_dim = ring.generators.len();
    Ok(ring)
}

/// `(dim T_P Γ, dim T_P X)` at a wild cusp. For `p >= 3` both are the
/// embedding dimension of the cusp; for `p = 2` the curve is
/// `(t^2, t^(2n+1))` and `X` is a hypersurface in 3-space.
pub fn tangent_dims(p: u64, n: u64, y_smooth: bool) -> Result<(usize, usize), GlueError> {
    ensure_prime(p)?;
    if !y_smooth {
        return Err(GlueError::SingularY);
    }
    let gamma = wild_cusp_ring(p, n)?.embedding_dim;
    Ok(if p == 2 { (gamma, gamma + 1) } else { (gamma, gamma) })
}

/// Monomials `π^i` (or `x^-i` at infinity), `i <= bound`, with `h f'`
/// regular at the place. At infinity the `y`-frame is `y/x`, so the test
/// there is on `x h f'`.
pub fn gamma_local_sections(
    h: &RationalFunction,
    place: &Place,
    bound: u32,
) -> Vec<(u32, RationalFunction)> {
    let field = h.field();
    let x = RationalFunction::x(field);
    let uniformizer = match place {
        Place::Finite(pi) => RationalFunction::from_poly(pi.clone()),
        Place::Infinity => x.inv().unwrap(),
    };
    (0..=bound)
        .filter_map(|i| {
            let f = uniformizer.pow(i as u64);
            let mut test = h.clone() * f.derivative();
            if matches!(place, Place::Infinity) {
                test = test * x.clone();
            }
            test.is_regular_at(place).then_some((i, f))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(char: u64, a: &str, b: &[&str]) -> GlueData {
        GlueData::parse(BaseField::new(char).unwrap(), a, b).unwrap()
    }

    fn rf(char: u64, s: &str) -> RationalFunction {
        RationalFunction::parse(BaseField::new(char).unwrap(), s).unwrap()
    }

    fn el(char: u64, f: &[&str], g: &[&str]) -> KernelElement {
        KernelElement {
            f: f.iter().map(|s| rf(char, s)).collect(),
            g: g.iter().map(|s| rf(char, s)).collect(),
        }
    }

    #[test]
    fn xi_and_eta_are_killed() {
        let d = data(0, "x^2 + 1/x", &["x - 1", "3", "x^2"]);
        let c = xi_coordinates(&d);
        assert!(delta(&d, &c.xi).is_zero());
        assert!(c.eta.iter().all(|e| delta(&d, e).is_zero()));
        assert!(matches!(
            GlueData::parse(BaseField::rationals(), "x", &["1", "0"]),
            Err(GlueError::ZeroCoefficient(2))
        ));
    }

    #[test]
    fn engine_taylor_rule() {
        let d = data(0, "x", &["1"]);
        let e = KxiEngine::new(&d).unwrap();
        let v = e.embed(&[rf(0, "x")], &[rf(0, "0")]);
        assert_eq!(v, vec![rf(0, "x"), rf(0, "x")]);
        let tac = KxiEngine::new(&data(0, "0", &["1", "1"])).unwrap();
        assert_eq!(tac.ring().dim(), 4);
        assert_eq!(tac.od_basis().len(), 2);
        assert_eq!(tac.kernel_dimension().unwrap(), 2);
    }

    #[test]
    fn closed_form_examples() {
        let d = data(0, "x^2", &["x + 1"]);
        let g = -(d.phi(0)).derivative();
        let s = KernelElement {
            f: vec![rf(0, "1")],
            g: vec![g],
        };
        assert!(ker_trace_closed_form(&d, &s).unwrap());
        assert!(ker_trace_oracle(&d, &s).unwrap());
        let d2 = data(0, "x", &["1", "1"]);
        let s = el(0, &["1", "1"], &["0", "-1"]);
        assert!(ker_trace_closed_form(&d2, &s).unwrap());
        assert!(ker_trace_oracle(&d2, &s).unwrap());
        let s = el(0, &["1", "2"], &["0", "-1"]);
        assert!(!ker_trace_closed_form(&d2, &s).unwrap());
        assert!(!ker_trace_oracle(&d2, &s).unwrap());
        let cusp = data(0, "0", &["1"]);
        // The dual of y kills O_D = k(ξ); the dual of 1 does not.
        assert!(ker_trace_oracle(&cusp, &el(0, &["1"], &["0"])).unwrap());
        assert!(!ker_trace_oracle(&cusp, &el(0, &["0"], &["1"])).unwrap());
        let tac = data(0, "0", &["1", "1"]);
        assert!(ker_trace_oracle(&tac, &el(0, &["1", "1"], &["0", "0"])).unwrap());
        assert!(!ker_trace_oracle(&tac, &el(0, &["0", "0"], &["1", "0"])).unwrap());
    }

    #[test]
    fn change_of_basis_examples() {
        let d = data(0, "x", &["1"]);
        let c = change_of_basis(&d, &el(0, &["x"], &["0"])).unwrap();
        assert_eq!(c.g[0], rf(0, "2*x"));
        let flat = data(0, "0", &["1", "x"]);
        let s = el(0, &["x", "1"], &["x^2", "3"]);
        let c = change_of_basis(&flat, &s).unwrap();
        assert_eq!((c.f, c.g), (s.f, s.g));
    }

    #[test]
    fn pointwise_criterion() {
        let origin = Place::point(BaseField::rationals().zero());
        assert!(!gorenstein_at_point(&data(0, "1/x", &["1"]), &origin));
        let origin3 = Place::point(BaseField::prime(3).unwrap().zero());
        let wild = data(3, "1/x^3", &["1"]);
        assert!(gorenstein_at_point(&wild, &origin3));
        assert!(gorenstein_at_point_oracle(&wild, &origin3, 8).unwrap());
        assert!(!gorenstein_at_point_oracle(&data(0, "1/x", &["1"]), &origin, 4).unwrap());
        assert!(gorenstein_at_point_oracle(&data(0, "x", &["1"]), &Place::Infinity, 4).unwrap());
        assert!(!gorenstein_at_point(&data(0, "0", &["1", "x"]), &origin));
        assert!(!gorenstein_at_point_oracle(&data(0, "0", &["1", "x"]), &origin, 4).unwrap());
    }

    #[test]
    fn tameness_scan() {
        let t = is_tame(&data(0, "x", &["2"])).unwrap();
        assert!(t.tame);
        let w = is_tame(&data(3, "1/x^3", &["1"])).unwrap();
        assert_eq!(w.wild_points, vec![(Place::point(BaseField::prime(3).unwrap().zero()), 3)]);
        let w2 = is_tame(&data(2, "1/x^2 + 1/(x-1)^2", &["1"])).unwrap();
        assert_eq!(w2.wild_points.iter().map(|p| p.1).collect::<Vec<_>>(), vec![2, 2]);
        let at_inf = is_tame(&data(0, "x^2", &["1"])).unwrap();
        assert_eq!(at_inf.wild_points, vec![(Place::Infinity, 1)]);
    }

    #[test]
    fn wild_cusps() {
        let r = wild_cusp_ring(3, 1).unwrap();
        assert_eq!((r.generators.clone(), r.delta), (vec![3, 4, 5], 2));
        let r = wild_cusp_ring(2, 2).unwrap();
        assert_eq!((r.generators.clone(), r.gaps.clone()), (vec![2, 5], vec![1, 3]));
        assert_eq!(wild_cusp_ring(5, 1).unwrap().embedding_dim, 5);
        assert_eq!(tangent_dims(3, 2, true).unwrap(), (3, 3));
        assert_eq!(tangent_dims(2, 1, true).unwrap(), (2, 3));
        assert!(tangent_dims(4, 1, true).is_err());
    }

    #[test]
    fn gamma_sections() {
        let f3 = BaseField::prime(3).unwrap();
        let origin = Place::point(f3.zero());
        let exps: Vec<u32> = gamma_local_sections(&rf(3, "1/x^3"), &origin, 7)
            .into_iter()
            .map(|(i, _)| i)
            .collect();
        assert_eq!(exps, vec![0, 3, 4, 5, 6, 7]);
        let origin0 = Place::point(BaseField::rationals().zero());
        let exps: Vec<u32> = gamma_local_sections(&rf(0, "1/x"), &origin0, 4)
            .into_iter()
            .map(|(i, _)| i)
            .collect();
        assert_eq!(exps, vec![0, 2, 3, 4]);
        assert_eq!(gamma_local_sections(&rf(0, "x"), &origin0, 3).len(), 4);
    }
}
