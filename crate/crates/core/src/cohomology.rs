//! Cohomology of the glued curve `D` over `ℓ = P^1`.
//!
//! Closed forms come from the splitting `O_{D+} ≅ O ⊕ r O(-1)` and the gap
//! count of the wild cusps. The truncated two-chart computation is an
//! independent check: it builds sections of `O_D(n)` over `U_0 = {x ≠ ∞}`
//! and `U_∞ = {x ≠ 0}` as Laurent polynomials and reads off `H^0` and `H^1`
//! of the Čech complex by linear algebra.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FieldElement, Place, Poly, RationalFunction, Scalar};
use crate::glue::{self, GlueData, GlueError};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CohomologyError {
    #[error("not Gorenstein at {0}")]
    NotGorenstein(String),
    #[error("wild pole of order {order} at {place} is not divisible by {p}")]
    PoleOrder { place: String, order: u32, p: u64 },
    #[error("truncation bound {given} is below the required {required}")]
    BoundTooSmall { given: usize, required: usize },
    #[error("twisting needs a/b_1 regular away from 0 and ∞")]
    TwistUnsupported,
    #[error("r must be at least 1")]
    NoBranches,
    #[error(transparent)]
    Glue(#[from] GlueError),
}

/// `⊕ O_ℓ(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSheafSum {
    pub degrees: Vec<i64>,
}

/// `χ(⊕ O(d_i + twist)) = Σ (d_i + twist + 1)`.
pub fn line_sheaf_chi(s: &LineSheafSum, twist: i64) -> i64 {
    s.degrees.iter().map(|d| d + twist + 1).sum()
}

/// `h^1(⊕ O(d_i + twist))`.
pub fn line_sheaf_h1(s: &LineSheafSum, twist: i64) -> i64 {
    s.degrees.iter().map(|d| (-(d + twist) - 1).max(0)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DPlusStructure {
    /// `O_{D+} = O ⊕ r O(-1)`.
    pub d_plus: LineSheafSum,
    /// `N_2 = (r - 1) O(-1)` in the tame Gorenstein case.
    pub n2: LineSheafSum,
}

pub fn d_plus_structure(r: usize) -> Result<DPlusStructure, CohomologyError> {
    if r == 0 {
        return Err(CohomologyError::NoBranches);
    }
    let mut d_plus = vec![0];
    d_plus.extend(std::iter::repeat(-1).take(r));
    Ok(DPlusStructure {
        d_plus: LineSheafSum { degrees: d_plus },
        n2: LineSheafSum {
            degrees: vec![-1; r - 1],
        },
    })
}

/// A wild point with pole order `n p` and its `δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WildPoint {
    pub place: Place,
    pub pole_order: u32,
    pub n: u32,
    /// Gap count of the wild cusp semigroup, times the degree of the place.
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerReport {
    pub wild_points: Vec<WildPoint>,
    /// `N = Σ n_j deg P_j`.
    pub n_total: u64,
    /// `χ(O_ℓ) + χ(N_2) - Σ δ_P`.
    pub chi: i64,
    /// `N (p - 1)`.
    pub h1: u64,
    /// `1 - N p`, the value the `O(Np - 1)` description of `O_{D+}/O_D`
    /// would give; reported for comparison only.
    pub chi_if_quotient_were_o_np_minus_1: i64,
}

/// `χ(O_X) = χ(O_D)` and `h^1(O_X)` for data that is Gorenstein everywhere.
pub fn euler_report(data: &GlueData) -> Result<EulerReport, CohomologyError> {
    let failures = glue::gorenstein_failures(data)?;
    if let Some(p) = failures.first() {
        return Err(CohomologyError::NotGorenstein(p.to_string()));
    }
    let p = data.characteristic();
    let tame = glue::is_tame(data)?;
    let mut wild_points = Vec::new();
    for (place, order) in tame.wild_points {
        if p == 0 || order as u64 % p != 0 {
            return Err(CohomologyError::PoleOrder {
                place: place.to_string(),
                order,
                p,
            });
        }
        let n = order / p as u32;
        let delta = glue::wild_cusp_ring(p, n as u64)?.delta * place.degree();
        wild_points.push(WildPoint {
            place,
            pole_order: order,
            n,
            delta,
        });
    }
    let n_total: u64 = wild_points
        .iter()
        .map(|w| w.n as u64 * w.place.degree() as u64)
        .sum();
    let structure = d_plus_structure(data.r())?;
    let mut base = structure.n2.clone();
    base.degrees.push(0);
    let deltas: i64 = wild_points.iter().map(|w| w.delta as i64).sum();
    let chi = line_sheaf_chi(&base, 0) - deltas;
    let h1 = n_total * p.saturating_sub(1);
    debug_assert_eq!(1 - chi, h1 as i64);
    Ok(EulerReport {
        wild_points,
        n_total,
        chi,
        h1,
        chi_if_quotient_were_o_np_minus_1: 1 - (n_total * p) as i64,
    })
}

pub fn chi_ox(data: &GlueData) -> Result<i64, CohomologyError> {
    Ok(euler_report(data)?.chi)
}

pub fn h1_ox(data: &GlueData) -> Result<u64, CohomologyError> {
    Ok(euler_report(data)?.h1)
}

/// Sum of the pole orders of all `a/b_i`, which sizes the truncation.
pub fn total_pole_order(data: &GlueData) -> Result<usize, CohomologyError> {
    if data.a.is_zero() {
        return Ok(0);
    }
    let mut total = 0;
    for i in 0..data.r() {
        for (_, m) in data.phi(i).poles().map_err(GlueError::from)? {
            total += m as usize;
        }
    }
    Ok(total)
}

pub fn minimum_bound(data: &GlueData, twist: i64) -> Result<usize, CohomologyError> {
    Ok(total_pole_order(data)? + twist.unsigned_abs() as usize + 2)
}

pub fn default_bound(data: &GlueData, twist: i64) -> Result<usize, CohomologyError> {
    Ok(minimum_bound(data, twist)? + 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCounts {
    pub h0: usize,
    pub h1: usize,
}

impl SectionCounts {
    pub fn chi(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64
    }
}

/// `(h^0, h^1)` of `O_D(twist)` from truncated Čech cochains.
pub fn truncated_section_oracle(
    data: &GlueData,
    twist: i64,
    bound: usize,
) -> Result<SectionCounts, CohomologyError> {
    let required = minimum_bound(data, twist)?;
    if bound < required {
        return Err(CohomologyError::BoundTooSmall {
            given: bound,
            required,
        });
    }
    Cech::new(Some(data), data.r(), data.field().zero(), twist, bound)?.counts()
}

/// `(h^0, h^1)` of `O_{D+}(twist) = O(twist) ⊕ r O(twist - 1)` by the same
/// two-chart computation.
pub fn truncated_dplus_oracle(
    r: usize,
    field: crate::algebra::BaseField,
    twist: i64,
    bound: usize,
) -> Result<SectionCounts, CohomologyError> {
    if r == 0 {
        return Err(CohomologyError::NoBranches);
    }
    Cech::new(None, r, field.zero(), twist, bound)?.counts()
}

/// `(h^0, h^1)` of `O_D(twist)` when `D` is `r` reduced lines through one
/// point with independent tangents, each line carrying `O(1)` of degree 1.
/// For `r = 1` this is the line itself.
pub fn truncated_lines_oracle(
    r: usize,
    field: crate::algebra::BaseField,
    twist: i64,
    bound: usize,
) -> Result<SectionCounts, CohomologyError> {
    if r == 0 {
        return Err(CohomologyError::NoBranches);
    }
    let mut cech = Cech::new(None, r - 1, field.zero(), twist, bound)?;
    cech.lines = true;
    cech.counts()
}

/// Closed form for [`truncated_lines_oracle`]: `r (n + 1) - (r - 1)` and the
/// matching `h^1`.
pub fn lines_counts(r: usize, twist: i64) -> SectionCounts {
    let r = r as i64;
    let (h0, h1) = if twist >= 0 {
        (r * twist + 1, 0)
    } else {
        (0, r * (-twist - 1) + r - 1)
    };
    SectionCounts {
        h0: h0 as usize,
        h1: h1 as usize,
    }
}

/// Laurent polynomials `Σ c_e x^e` as exponent/coefficient pairs.
type Laurent = Vec<(i64, Scalar)>;

struct Cech {
    proto: Scalar,
    comps: usize,
    /// Ambient exponent window `[-m, m]` for every component.
    m: i64,
    bound: i64,
    widen: i64,
    twist: i64,
    /// `(A, B_i)` with `A f' + Σ B_i g_i = 0` cutting out `O_D`.
    constraint: Option<(Poly<Scalar>, Vec<Poly<Scalar>>)>,
    /// `a/b_1` as a Laurent polynomial, when twisting.
    phi: Laurent,
    /// Every component is a reduced line through the vertex at `x = 0`.
    lines: bool,
}

impl Cech {
    fn new(
        data: Option<&GlueData>,
        r: usize,
        proto: Scalar,
        twist: i64,
        bound: usize,
    ) -> Result<Self, CohomologyError> {
        let mut constraint = None;
        let mut phi = Vec::new();
        let mut extra = 0;
        if let Some(data) = data {
            let den = data
                .b
                .iter()
                .chain(std::iter::once(&data.a))
                .fold(Poly::one(&proto), |acc, c| {
                    let g = acc.gcd(c.denominator());
                    (&acc * c.denominator()).exact_div(&g).expect("lcm")
                });
            let scale = |f: &RationalFunction| {
                (f.clone() * RationalFunction::from_poly(den.clone()))
                    .numerator()
                    .clone()
            };
            let a = scale(&data.a);
            let b: Vec<Poly<Scalar>> = data.b.iter().map(scale).collect();
            extra = b
                .iter()
                .chain(std::iter::once(&a))
                .filter_map(|p| p.degree())
                .max()
                .unwrap_or(0) as i64;
            constraint = Some((a, b));
            if twist != 0 && !data.a.is_zero() {
                let f = data.phi(0);
                let d = f.denominator();
                let k = d.degree().unwrap();
                if *d != Poly::monomial(proto.one_like(), k) {
                    return Err(CohomologyError::TwistUnsupported);
                }
                phi = f
                    .numerator()
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (e as i64 - k as i64, c.clone()))
                    .collect();
            }
        }
        let bound = bound as i64;
        let widen = bound + twist.abs() + 2;
        let phi_span = phi.iter().map(|(e, _)| e.abs()).max().unwrap_or(0);
        let m = bound + widen + twist.abs() + phi_span + extra + 2;
        Ok(Cech {
            proto,
            comps: r + 1,
            m,
            bound,
            widen,
            twist,
            constraint,
            phi,
            lines: false,
        })
    }

    fn width(&self) -> usize {
        (2 * self.m + 1) as usize
    }

    fn index(&self, comp: usize, e: i64) -> usize {
        comp * self.width() + (e + self.m) as usize
    }

    /// Sections with exponents of `f` in `f_range` and of each `g_i` in
    /// `g_range`, satisfying the constraint, as ambient vectors.
    fn sections(&self, f_range: (i64, i64), g_range: (i64, i64)) -> Vec<Vec<Scalar>> {
        if self.lines {
            return self.line_sections(f_range);
        }
        let mut coords: Vec<(usize, i64)> = (f_range.0..=f_range.1).map(|e| (0, e)).collect();
        for c in 1..self.comps {
            coords.extend((g_range.0..=g_range.1).map(|e| (c, e)));
        }
        let n = coords.len();
        let local: Vec<Vec<Scalar>> = match &self.constraint {
            None => (0..n).map(|i| linalg::unit_vec(&self.proto, n, i)).collect(),
            Some((a, b)) => {
                // Row per output exponent of A f' + Σ B_i g_i.
                let lo = f_range.0.min(g_range.0) - 1;
                let hi = f_range.1.max(g_range.1) + self.m;
                let rows_n = (hi - lo + 1) as usize;
                let mut rows: Matrix<Scalar> = linalg::zeros(&self.proto, rows_n, n);
                for (col, &(comp, e)) in coords.iter().enumerate() {
                    let (poly, shift, factor) = if comp == 0 {
                        (a, e - 1, self.proto.from_i64_like(e))
                    } else {
                        (&b[comp - 1], e, self.proto.one_like())
                    };
                    if factor.is_zero() {
                        continue;
                    }
                    for (k, c) in poly.coeffs().iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let row = (k as i64 + shift - lo) as usize;
                        rows[row][col] = rows[row][col].clone() + c.clone() * factor.clone();
                    }
                }
                linalg::nullspace(&rows, n, &self.proto)
            }
        };
        local
            .into_iter()
            .map(|v| {
                let mut out = vec![self.proto.zero_like(); self.comps * self.width()];
                for (c, &(comp, e)) in v.into_iter().zip(&coords) {
                    out[self.index(comp, e)] = c;
                }
                out
            })
            .collect()
    }

    /// Tuples of Laurent polynomials, agreeing at `x = 0` when the chart
    /// contains the vertex.
    fn line_sections(&self, range: (i64, i64)) -> Vec<Vec<Scalar>> {
        let dim = self.comps * self.width();
        let one = self.proto.one_like();
        let vertex = range.0 == 0;
        let mut out = Vec::new();
        for e in range.0..=range.1 {
            if vertex && e == 0 {
                let mut v = vec![self.proto.zero_like(); dim];
                for c in 0..self.comps {
                    v[self.index(c, 0)] = one.clone();
                }
                out.push(v);
                continue;
            }
            for c in 0..self.comps {
                let mut v = vec![self.proto.zero_like(); dim];
                v[self.index(c, e)] = one.clone();
                out.push(v);
            }
        }
        out
    }

    /// Multiplication by `ξ^n = x^n - n x^(n-1) (a/b_1) y_1`.
    fn twist_map(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.twist;
        let mut out = vec![self.proto.zero_like(); v.len()];
        for comp in 0..self.comps {
            for e in -self.m..=self.m {
                let c = &v[self.index(comp, e)];
                if c.is_zero() {
                    continue;
                }
                let to = e + n;
                let i = self.index(comp, to);
                out[i] = out[i].clone() + c.clone();
            }
        }
        if n != 0 && self.comps > 1 && !self.lines {
            let factor = -self.proto.from_i64_like(n);
            for e in -self.m..=self.m {
                let c = &v[self.index(0, e)];
                if c.is_zero() {
                    continue;
                }
                for (pe, pc) in &self.phi {
                    let to = e + n - 1 + pe;
                    let i = self.index(1, to);
                    out[i] = out[i].clone() + factor.clone() * pc.clone() * c.clone();
                }
            }
        }
        out
    }

    fn counts(&self) -> Result<SectionCounts, CohomologyError> {
        let reach = self.bound + self.widen;
        let v0 = self.sections((0, reach), (0, reach));
        let vinf = self.sections((-reach, 0), (-reach, -1));
        let mut images = v0.clone();
        images.extend(vinf.iter().map(|v| {
            self.twist_map(v).into_iter().map(|c| -c).collect::<Vec<_>>()
        }));
        let window = if self.lines {
            self.line_sections((-self.bound, self.bound)).into_iter().filter(|v| {
                // The overlap misses the vertex, so the window is unconstrained.
                v.iter().filter(|c| !c.is_zero()).count() == 1
            }).collect::<Vec<_>>()
        } else {
            self.sections((-self.bound, self.bound), (-self.bound, self.bound))
        };
        // Drop ambient coordinates unused by any vector before eliminating.
        let dim = self.comps * self.width();
        let used: Vec<usize> = (0..dim)
            .filter(|&i| images.iter().chain(&window).any(|v| !v[i].is_zero()))
            .collect();
        let compress = |vs: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
            vs.iter()
                .map(|v| used.iter().map(|&i| v[i].clone()).collect())
                .collect()
        };
        let images = compress(&images);
        let window = compress(&window);
        let rank = linalg::rank(&images, used.len());
        let h0 = images.len() - rank;
        let inter = linalg::intersection(&window, &images, used.len(), &self.proto);
        let h1 = linalg::rank(&window, used.len()) - inter.len();
        Ok(SectionCounts { h0, h1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BaseField;

    fn data(char: u64, a: &str, b: &[&str]) -> GlueData {
        GlueData::parse(BaseField::new(char).unwrap(), a, b).unwrap()
    }

    #[test]
    fn line_sheaves() {
        assert_eq!(line_sheaf_chi(&LineSheafSum { degrees: vec![0, -1] }, 0), 1);
        assert_eq!(line_sheaf_chi(&LineSheafSum { degrees: vec![-1] }, 0), 0);
        assert_eq!(line_sheaf_chi(&LineSheafSum { degrees: vec![1, 1] }, 1), 6);
        let s = d_plus_structure(3).unwrap();
        assert_eq!(s.d_plus.degrees, vec![0, -1, -1, -1]);
        assert_eq!(s.n2.degrees, vec![-1, -1]);
        assert!(d_plus_structure(1).unwrap().n2.degrees.is_empty());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(chi_ox(&data(0, "x", &["1", "1"])).unwrap(), 1);
        let wild = data(3, "1/x^3", &["1"]);
        assert_eq!((chi_ox(&wild).unwrap(), h1_ox(&wild).unwrap()), (-1, 2));
        let two = data(2, "1/x^2 + 1/(x-1)^2", &["1"]);
        assert_eq!((chi_ox(&two).unwrap(), h1_ox(&two).unwrap()), (-1, 2));
        let five = data(5, "1/x^5 + 1/(x-1)^5", &["1"]);
        assert_eq!(h1_ox(&five).unwrap(), 8);
        assert_eq!(euler_report(&wild).unwrap().chi_if_quotient_were_o_np_minus_1, -2);
        assert!(matches!(chi_ox(&data(0, "1/x", &["1"])), Err(CohomologyError::NotGorenstein(_))));
    }

    #[test]
    fn oracle_tame_and_wild() {
        let tame = data(0, "x", &["1", "1"]);
        let b = default_bound(&tame, 0).unwrap();
        assert_eq!(truncated_section_oracle(&tame, 0, b).unwrap(), SectionCounts { h0: 1, h1: 0 });
        let wild = data(3, "1/x^3", &["1"]);
        let b = default_bound(&wild, 0).unwrap();
        assert_eq!(truncated_section_oracle(&wild, 0, b).unwrap(), SectionCounts { h0: 1, h1: 2 });
        assert_eq!(truncated_section_oracle(&wild, 0, b + 3).unwrap(), SectionCounts { h0: 1, h1: 2 });
        assert!(matches!(
            truncated_section_oracle(&wild, 0, 1),
            Err(CohomologyError::BoundTooSmall { .. })
        ));
    }

    #[test]
    fn oracle_on_reduced_lines() {
        let q = BaseField::rationals();
        for r in 1..=4 {
            for n in -3..=3 {
                assert_eq!(truncated_lines_oracle(r, q, n, 8).unwrap(), lines_counts(r, n), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn oracle_on_d_plus_and_twists() {
        let q = BaseField::rationals();
        assert_eq!(truncated_dplus_oracle(2, q, 0, 4).unwrap(), SectionCounts { h0: 1, h1: 0 });
        // O(2) ⊕ 2 O(1): h^0 = 3 + 2 + 2.
        assert_eq!(truncated_dplus_oracle(2, q, 2, 6).unwrap(), SectionCounts { h0: 7, h1: 0 });
        // O_D ≅ O ⊕ O(-1) for r = 2 in the tame case.
        let tame = data(0, "x", &["1", "2"]);
        let split = LineSheafSum { degrees: vec![0, -1] };
        for n in -3..=3 {
            let b = default_bound(&tame, n).unwrap();
            let c = truncated_section_oracle(&tame, n, b).unwrap();
            assert_eq!(c.chi(), line_sheaf_chi(&split, n), "twist {n}");
            assert_eq!(c.h1 as i64, line_sheaf_h1(&split, n), "twist {n}");
        }
    }
}
