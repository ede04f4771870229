//! Building blocks `C ⊂ Y` of a nonnormal del Pezzo surface, how they glue,
//! and the checks run on a glued scenario.
//!
//! Picard classes on `F_a` are written `c_A A + c_B B` with `A^2 = 0`,
//! `A B = 1`, `B^2 = -a`; on `P^2` they are multiples of the line class `L`.
//! The cone `F_{a;0}` is handled on its minimal resolution `F_a`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    AlgebraError, BaseField, FieldElement, MPoly, Poly, RationalFunction, Scalar, SimpleExtension,
};
use crate::cohomology::{self, SectionCounts};
use crate::filling::{self, BranchSpec, ConductorRing, FillingError, SingularityType};
use crate::glue::{self, GlueData, GlueError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("classes live on different surfaces")]
    SurfaceMismatch,
    #[error("case {case} is not available for a = {a}")]
    IllegalCase { case: CaseTag, a: u32 },
    #[error("unknown case tag {0:?}")]
    UnknownCase(String),
    #[error("unknown gluing case {0:?}")]
    UnknownGlueCase(String),
    #[error("no gluing case fits: {0}")]
    Unclassifiable(String),
    #[error("points of a projective-line identification must be distinct")]
    DegeneratePoints,
    #[error("{0}")]
    Scenario(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Filling(#[from] FillingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    P2,
    Hirzebruch(u32),
    /// `F_{a;0}`, computed on the resolution `F_a`.
    HirzebruchCone(u32),
}

impl Surface {
    fn lattice(self) -> Option<u32> {
        match self {
            Surface::P2 => None,
            Surface::Hirzebruch(a) | Surface::HirzebruchCone(a) => Some(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicardClass {
    pub surface: Surface,
    /// `(l, 0)` on `P^2`, `(c_A, c_B)` on `F_a`.
    pub coeffs: (i64, i64),
}

impl PicardClass {
    pub fn line(l: i64) -> Self {
        PicardClass {
            surface: Surface::P2,
            coeffs: (l, 0),
        }
    }

    pub fn scroll(surface: Surface, ca: i64, cb: i64) -> Self {
        PicardClass {
            surface,
            coeffs: (ca, cb),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CatalogError> {
        if self.surface != other.surface {
            return Err(CatalogError::SurfaceMismatch);
        }
        Ok(PicardClass {
            surface: self.surface,
            coeffs: (self.coeffs.0 + other.coeffs.0, self.coeffs.1 + other.coeffs.1),
        })
    }
}

impl fmt::Display for PicardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.surface {
            Surface::P2 => write!(f, "{}L", self.coeffs.0),
            _ => write!(f, "{}A+{}B", self.coeffs.0, self.coeffs.1),
        }
    }
}

pub fn hirzebruch_pairing(d1: &PicardClass, d2: &PicardClass) -> Result<i64, CatalogError> {
    if d1.surface.lattice() != d2.surface.lattice()
        || (d1.surface == Surface::P2) != (d2.surface == Surface::P2)
    {
        return Err(CatalogError::SurfaceMismatch);
    }
    let (a1, b1) = d1.coeffs;
    let (a2, b2) = d2.coeffs;
    Ok(match d1.surface.lattice() {
        None => a1 * a2,
        Some(a) => a1 * b2 + b1 * a2 - (a as i64) * b1 * b2,
    })
}

/// `K_{P^2} = -3L`, `K_{F_a} = -2B - (a+2)A`.
pub fn canonical_class(surface: Surface) -> PicardClass {
    match surface {
        Surface::P2 => PicardClass::line(-3),
        Surface::Hirzebruch(a) | Surface::HirzebruchCone(a) => {
            PicardClass::scroll(surface, -(a as i64) - 2, -2)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    A1,
    A2,
    A3,
    B,
    C0,
    C1,
    C2,
    D0,
    D1,
    E,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::A1,
        CaseTag::A2,
        CaseTag::A3,
        CaseTag::B,
        CaseTag::C0,
        CaseTag::C1,
        CaseTag::C2,
        CaseTag::D0,
        CaseTag::D1,
        CaseTag::E,
    ];

    pub fn nature(self) -> ConicNature {
        use CaseTag::*;
        match self {
            A1 | B | C0 | D0 | E => ConicNature::Smooth,
            A2 | C1 | D1 => ConicNature::LinePair,
            A3 | C2 => ConicNature::DoubleLine,
        }
    }

    /// Whether the tag exists for parameter `a`; tags on `P^2` ignore `a`.
    pub fn legal(self, a: u32) -> bool {
        use CaseTag::*;
        match self {
            A1 | A2 | A3 | B => true,
            C1 | C2 => a >= 2,
            C0 => a == 2,
            D1 | E => true,
            D0 => a <= 1,
        }
    }

    pub fn uses_parameter(self) -> bool {
        !matches!(self, CaseTag::A1 | CaseTag::A2 | CaseTag::A3 | CaseTag::B)
    }

    /// The degree column of the table: `1, 4, a, a + 2, a + 4`.
    pub fn table_degree(self, a: u32) -> u64 {
        use CaseTag::*;
        let a = a as u64;
        match self {
            A1 | A2 | A3 => 1,
            B => 4,
            C0 | C1 | C2 => a,
            D0 | D1 => a + 2,
            E => a + 4,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("tag serializes");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

impl FromStr for CaseTag {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_value(serde_json::Value::String(s.to_ascii_lowercase()))
            .map_err(|_| CatalogError::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConicNature {
    Smooth,
    LinePair,
    DoubleLine,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildingBlock {
    pub case: CaseTag,
    pub a: u32,
    pub h: PicardClass,
    pub c: PicardClass,
    pub nature: ConicNature,
}

impl BuildingBlock {
    pub fn new(case: CaseTag, a: u32) -> Result<Self, CatalogError> {
        use CaseTag::*;
        if !case.legal(a) {
            return Err(CatalogError::IllegalCase { case, a });
        }
        let a = if case.uses_parameter() { a } else { 0 };
        let ai = a as i64;
        let (h, c) = match case {
            A1 | A2 | A3 => (PicardClass::line(1), PicardClass::line(2)),
            B => (PicardClass::line(2), PicardClass::line(1)),
            C0 | C1 | C2 => {
                let s = Surface::HirzebruchCone(a);
                (PicardClass::scroll(s, ai, 1), PicardClass::scroll(s, 2, 0))
            }
            D0 | D1 => {
                let s = Surface::Hirzebruch(a);
                (PicardClass::scroll(s, ai + 1, 1), PicardClass::scroll(s, 1, 1))
            }
            E => {
                let s = Surface::Hirzebruch(a);
                (PicardClass::scroll(s, ai + 2, 1), PicardClass::scroll(s, 0, 1))
            }
        };
        Ok(BuildingBlock {
            case,
            a,
            h,
            c,
            nature: case.nature(),
        })
    }

    pub fn degree(&self) -> u64 {
        hirzebruch_pairing(&self.h, &self.h).expect("same surface") as u64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockCheck {
    pub case: CaseTag,
    pub a: u32,
    pub h: String,
    pub c: String,
    pub degree: i64,
    pub expected_degree: u64,
    /// `H + C = -K`; `None` on a cone, where only degrees are compared.
    pub anticanonical: Option<bool>,
    /// `H . C = 2`, so `C` is a conic.
    pub conic: bool,
    /// On a cone, the pulled-back polarization contracts `B`.
    pub contracts_section: Option<bool>,
}

impl BlockCheck {
    pub fn ok(&self) -> bool {
        self.degree >= 0
            && self.degree as u64 == self.expected_degree
            && self.anticanonical != Some(false)
            && self.conic
            && self.contracts_section != Some(false)
    }
}

pub fn block_check(block: &BuildingBlock) -> Result<BlockCheck, CatalogError> {
    let degree = hirzebruch_pairing(&block.h, &block.h)?;
    let conic = hirzebruch_pairing(&block.h, &block.c)? == 2;
    let (anticanonical, contracts_section) = match block.h.surface {
        Surface::HirzebruchCone(_) => {
            let b = PicardClass::scroll(block.h.surface, 0, 1);
            (None, Some(hirzebruch_pairing(&block.h, &b)? == 0))
        }
        s => {
            let k = canonical_class(s);
            let sum = block.h.add(&block.c)?;
            (Some(sum.coeffs.0 == -k.coeffs.0 && sum.coeffs.1 == -k.coeffs.1), None)
        }
    };
    Ok(BlockCheck {
        case: block.case,
        a: block.a,
        h: block.h.to_string(),
        c: block.c.to_string(),
        degree,
        expected_degree: block.case.table_degree(block.a),
        anticanonical,
        conic,
        contracts_section,
    })
}

pub fn verify_block(block: &BuildingBlock) -> bool {
    block_check(block).map(|c| c.ok()).unwrap_or(false)
}

/// Every legal block for `a = 0..=a_max`, with the `P^2` rows listed once.
pub fn block_table(a_max: u32) -> Vec<BuildingBlock> {
    let mut out = Vec::new();
    for case in [CaseTag::A1, CaseTag::A2, CaseTag::A3, CaseTag::B] {
        out.push(BuildingBlock::new(case, 0).expect("plane blocks"));
    }
    for a in 0..=a_max {
        for case in CaseTag::ALL.iter().filter(|c| c.uses_parameter()) {
            if case.legal(a) {
                out.push(BuildingBlock::new(*case, a).expect("legal"));
            }
        }
    }
    out
}

/// The gluing cases. `C(1)` and `D(1)` are the one-component cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GlueCase {
    A,
    B,
    C(usize),
    D(usize),
}

impl fmt::Display for GlueCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlueCase::A => write!(f, "A"),
            GlueCase::B => write!(f, "B"),
            GlueCase::C(r) => write!(f, "C{r}"),
            GlueCase::D(r) => write!(f, "D{r}"),
        }
    }
}

impl FromStr for GlueCase {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CatalogError::UnknownGlueCase(s.to_string());
        let t = s.trim();
        match t {
            "A" => return Ok(GlueCase::A),
            "B" => return Ok(GlueCase::B),
            _ => {}
        }
        let (head, tail) = t.split_at(t.len().min(1));
        let r: usize = tail.parse().map_err(|_| bad())?;
        if r == 0 {
            return Err(bad());
        }
        match head {
            "C" => Ok(GlueCase::C(r)),
            "D" => Ok(GlueCase::D(r)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for GlueCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GlueCase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub case: GlueCase,
    /// Two planes glued along a common conic: only the degree 2 weighted
    /// quartic `y^2 = q^2` realizes these.
    pub degenerate: bool,
}

/// Decides the gluing case from the conic natures and the number of blocks.
pub fn classify_blocks(blocks: &[BuildingBlock]) -> Result<Classification, CatalogError> {
    use CaseTag::*;
    let r = blocks.len();
    if r == 0 {
        return Err(CatalogError::Unclassifiable("no blocks".into()));
    }
    let natures: Vec<ConicNature> = blocks.iter().map(|b| b.nature).collect();
    let first = natures[0];
    if natures.iter().any(|n| *n != first) {
        let listing: Vec<String> = blocks
            .iter()
            .map(|b| format!("{} ({:?})", b.case, b.nature))
            .collect();
        return Err(CatalogError::Unclassifiable(format!(
            "conics of different natures cannot be glued: {}",
            listing.join(", ")
        )));
    }
    let all_plane = |tag: CaseTag| blocks.iter().all(|b| b.case == tag);
    let case = match (first, r) {
        (ConicNature::Smooth, 1) => GlueCase::A,
        (ConicNature::Smooth, 2) => GlueCase::B,
        (ConicNature::Smooth, _) => {
            return Err(CatalogError::Unclassifiable(format!(
                "{r} smooth conics: a conic is glued to at most one other"
            )))
        }
        (ConicNature::LinePair, r) => GlueCase::C(r),
        (ConicNature::DoubleLine, r) => GlueCase::D(r),
    };
    let degenerate = r == 2
        && match first {
            ConicNature::Smooth => all_plane(A1),
            ConicNature::LinePair => all_plane(A2),
            ConicNature::DoubleLine => all_plane(A3),
        };
    Ok(Classification { case, degenerate })
}

/// A point of `P^1`.
#[derive(Clone, Debug, PartialEq)]
pub enum P1Point {
    Finite(Scalar),
    Infinity,
}

impl P1Point {
    pub fn parse(field: BaseField, s: &str) -> Result<Self, CatalogError> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(P1Point::Infinity);
        }
        RationalFunction::parse(field, t)?
            .as_constant()
            .map(P1Point::Finite)
            .ok_or_else(|| CatalogError::Scenario(format!("{t:?} is not a constant")))
    }

    fn homogeneous(&self, field: BaseField) -> [Scalar; 2] {
        match self {
            P1Point::Finite(c) => [c.clone(), field.one()],
            P1Point::Infinity => [field.one(), field.zero()],
        }
    }

    fn from_homogeneous(v: [Scalar; 2]) -> Self {
        let [x, y] = v;
        match y.inv() {
            Some(i) => P1Point::Finite(x * i),
            None => P1Point::Infinity,
        }
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Point::Finite(c) => write!(f, "{c}"),
            P1Point::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for P1Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

type Mat2 = [[Scalar; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat2_det(m: &Mat2) -> Scalar {
    m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
}

/// The matrix taking `[1:0], [0:1], [1:1]` to the three points.
fn frame(points: &[P1Point; 3], field: BaseField) -> Result<Mat2, CatalogError> {
    let [p, q, s] = points.clone().map(|x| x.homogeneous(field));
    let m: Mat2 = [[p[0].clone(), q[0].clone()], [p[1].clone(), q[1].clone()]];
    let det = mat2_det(&m).inv().ok_or(CatalogError::DegeneratePoints)?;
    let l1 = (s[0].clone() * q[1].clone() - q[0].clone() * s[1].clone()) * det.clone();
    let l2 = (p[0].clone() * s[1].clone() - s[0].clone() * p[1].clone()) * det;
    if l1.is_zero() || l2.is_zero() {
        return Err(CatalogError::DegeneratePoints);
    }
    Ok([
        [p[0].clone() * l1.clone(), q[0].clone() * l2.clone()],
        [p[1].clone() * l1, q[1].clone() * l2],
    ])
}

/// An automorphism of `P^1`, fixed by the images of three points.
#[derive(Clone, Debug, PartialEq)]
pub struct Mobius {
    field: BaseField,
    m: Mat2,
}

impl Mobius {
    pub fn identity(field: BaseField) -> Self {
        Mobius {
            field,
            m: [[field.one(), field.zero()], [field.zero(), field.one()]],
        }
    }

    pub fn from_three_points(
        field: BaseField,
        src: &[P1Point; 3],
        dst: &[P1Point; 3],
    ) -> Result<Self, CatalogError> {
        let fs = frame(src, field)?;
        let fd = frame(dst, field)?;
        let det = mat2_det(&fs).inv().ok_or(CatalogError::DegeneratePoints)?;
        let inv: Mat2 = [
            [fs[1][1].clone() * det.clone(), -fs[0][1].clone() * det.clone()],
            [-fs[1][0].clone() * det.clone(), fs[0][0].clone() * det],
        ];
        Ok(Mobius {
            field,
            m: mat2_mul(&fd, &inv),
        })
    }

    /// `z -> z + c`.
    pub fn translation(field: BaseField, c: Scalar) -> Self {
        Mobius {
            field,
            m: [[field.one(), c], [field.zero(), field.one()]],
        }
    }

    pub fn then(&self, other: &Mobius) -> Mobius {
        Mobius {
            field: self.field,
            m: mat2_mul(&other.m, &self.m),
        }
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        let v = p.homogeneous(self.field);
        let e = |i: usize| self.m[i][0].clone() * v[0].clone() + self.m[i][1].clone() * v[1].clone();
        P1Point::from_homogeneous([e(0), e(1)])
    }
}

/// The identification of `ℓ'_i` with `ℓ''_i = ℓ_{i+1}`, each carrying the
/// node of its line pair as a marked point.
#[derive(Clone, Debug, PartialEq)]
pub struct LineMatching {
    pub node_prime: P1Point,
    pub node_second: P1Point,
    pub map: Mobius,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeClash {
    pub index: usize,
    pub transported: P1Point,
    pub expected: P1Point,
    pub diagnosis: String,
}

/// All nodes must go to the vertex: the node of `ℓ'_i` maps to the node of
/// `ℓ''_i`. Each mismatch is reported with the residue clash that rules out
/// a trace-free generator of `ω_C`.
pub fn node_clashes(matchings: &[LineMatching]) -> Vec<NodeClash> {
    matchings
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            let image = m.map.apply(&m.node_prime);
            (image != m.node_second).then(|| NodeClash {
                index: i + 1,
                transported: image.clone(),
                expected: m.node_second.clone(),
                diagnosis: format!(
                    "on Γ_{}: s'' is regular at {} but s' has a pole at {}",
                    i + 1,
                    image,
                    image
                ),
            })
        })
        .collect()
}

pub fn node_matching_check(matchings: &[LineMatching]) -> bool {
    node_clashes(matchings).is_empty()
}

/// Standard matchings for a cycle of `r` line pairs with nodes at `0` on
/// every line.
pub fn standard_cycle(field: BaseField, r: usize) -> Vec<LineMatching> {
    (0..r)
        .map(|_| LineMatching {
            node_prime: P1Point::Finite(field.zero()),
            node_second: P1Point::Finite(field.zero()),
            map: Mobius::identity(field),
        })
        .collect()
}

/// Separable or inseparable double cover `C -> Γ` in case A.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Separable,
    Inseparable,
}

#[derive(Clone, Debug)]
pub struct GlueScenario {
    pub name: String,
    pub field: BaseField,
    pub blocks: Vec<BuildingBlock>,
    pub declared: Option<GlueCase>,
    pub cover: CoverKind,
    pub matchings: Vec<LineMatching>,
    pub derivation: Option<GlueData>,
    pub equations: Vec<String>,
}

impl GlueScenario {
    pub fn new(name: &str, field: BaseField, blocks: Vec<BuildingBlock>) -> Self {
        GlueScenario {
            name: name.to_string(),
            field,
            blocks,
            declared: None,
            cover: CoverKind::Separable,
            matchings: Vec::new(),
            derivation: None,
            equations: Vec::new(),
        }
    }

    pub fn degree(&self) -> u64 {
        self.blocks.iter().map(BuildingBlock::degree).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WildPointReport {
    pub place: String,
    pub n: u32,
    pub delta: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub characteristic: u64,
    pub case: Option<GlueCase>,
    pub degenerate: bool,
    pub blocks: Vec<BlockCheck>,
    pub blocks_ok: bool,
    pub gorenstein: bool,
    pub failing_places: Vec<String>,
    pub node_clashes: Vec<NodeClash>,
    pub singularity: Option<SingularityType>,
    pub tame: Option<bool>,
    pub wild_points: Vec<WildPointReport>,
    pub chi: Option<i64>,
    pub h1: Option<u64>,
    /// `(h^0, h^1)` of `O_D` from the two-chart computation.
    pub oracle: Option<SectionCounts>,
    pub degree: u64,
    pub errors: Vec<String>,
}

/// The ring `O_C` at the generic point of `Γ` for the reduced cases, with
/// `O_D = K`.
fn reduced_singularity(
    field: BaseField,
    case: GlueCase,
    cover: CoverKind,
) -> Result<SingularityType, CatalogError> {
    let proto = RationalFunction::zero(field);
    let branches = match case {
        GlueCase::A => {
            // u^2 - x, or the Artin-Schreier u^2 + u + x when a separable
            // cover is wanted in characteristic 2.
            let x = RationalFunction::x(field);
            let one = RationalFunction::one(field);
            let coeffs = match (field.characteristic(), cover) {
                (2, CoverKind::Separable) => vec![x, one.clone(), one],
                _ => vec![-x, proto.clone(), one],
            };
            let residue = SimpleExtension::new(Poly::from_coeffs(coeffs, &proto))?;
            vec![BranchSpec {
                residue,
                multiplicity: 1,
                parameter: "t".into(),
            }]
        }
        _ => vec![
            BranchSpec::trivial(&proto, 1, "t1"),
            BranchSpec::trivial(&proto, 1, "t2"),
        ],
    };
    let ring = ConductorRing::new(branches)?;
    Ok(filling::classify_codim1(&ring, &[ring.unit()])?)
}

pub fn classify_gluing(scenario: &GlueScenario) -> Result<Classification, CatalogError> {
    let c = classify_blocks(&scenario.blocks)?;
    if let Some(d) = scenario.declared {
        if d != c.case {
            return Err(CatalogError::Unclassifiable(format!(
                "declared {d} but the blocks give {}",
                c.case
            )));
        }
    }
    Ok(c)
}

pub fn scenario_report(s: &GlueScenario) -> ScenarioReport {
    let mut report = ScenarioReport {
        name: s.name.clone(),
        characteristic: s.field.characteristic(),
        case: None,
        degenerate: false,
        blocks: Vec::new(),
        blocks_ok: true,
        gorenstein: false,
        failing_places: Vec::new(),
        node_clashes: Vec::new(),
        singularity: None,
        tame: None,
        wild_points: Vec::new(),
        chi: None,
        h1: None,
        oracle: None,
        degree: s.degree(),
        errors: Vec::new(),
    };
    for b in &s.blocks {
        match block_check(b) {
            Ok(c) => {
                report.blocks_ok &= c.ok();
                report.blocks.push(c);
            }
            Err(e) => {
                report.blocks_ok = false;
                report.errors.push(e.to_string());
            }
        }
    }
    let class = match classify_gluing(s) {
        Ok(c) => c,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    report.case = Some(class.case);
    report.degenerate = class.degenerate;
    if let Err(e) = fill_case(s, class.case, &mut report) {
        report.errors.push(e.to_string());
    }
    report
}

fn fill_case(s: &GlueScenario, case: GlueCase, report: &mut ScenarioReport) -> Result<(), CatalogError> {
    match case {
        GlueCase::A | GlueCase::B | GlueCase::C(_) => {
            if s.derivation.is_some() {
                return Err(CatalogError::Scenario("a derivation only applies to double lines".into()));
            }
            if s.cover == CoverKind::Inseparable && (case != GlueCase::A || s.field.characteristic() != 2) {
                return Err(CatalogError::Scenario(
                    "an inseparable cover needs case A in characteristic 2".into(),
                ));
            }
            let lines = match case {
                GlueCase::C(r) => {
                    if s.matchings.len() != r {
                        return Err(CatalogError::Scenario(format!(
                            "case C{r} needs {r} line identifications, found {}",
                            s.matchings.len()
                        )));
                    }
                    report.node_clashes = node_clashes(&s.matchings);
                    r
                }
                _ => {
                    if !s.matchings.is_empty() {
                        return Err(CatalogError::Scenario("line identifications only apply to case C".into()));
                    }
                    1
                }
            };
            report.gorenstein = report.node_clashes.is_empty();
            report.singularity = Some(reduced_singularity(s.field, case, s.cover)?);
            report.tame = Some(true);
            // D is `lines` copies of P^1 through one vertex.
            let chi = cohomology::line_sheaf_chi(
                &cohomology::LineSheafSum {
                    degrees: vec![0; lines],
                },
                0,
            ) - (lines as i64 - 1);
            if report.gorenstein {
                report.chi = Some(chi);
                report.h1 = Some((1 - chi) as u64);
                report.oracle = Some(cohomology::truncated_lines_oracle(lines, s.field, 0, 4).map_err(
                    |e| CatalogError::Scenario(e.to_string()),
                )?);
            }
        }
        GlueCase::D(r) => {
            let data = s
                .derivation
                .as_ref()
                .ok_or_else(|| CatalogError::Scenario("case D needs a derivation {a, b}".into()))?;
            if data.r() != r {
                return Err(CatalogError::Scenario(format!(
                    "derivation lists {} coefficients b_i for {r} blocks",
                    data.r()
                )));
            }
            if !s.matchings.is_empty() {
                return Err(CatalogError::Scenario("line identifications only apply to case C".into()));
            }
            if data.field() != s.field {
                return Err(CatalogError::Scenario("derivation field differs from the scenario".into()));
            }
            let failures = glue::gorenstein_failures(data)?;
            report.failing_places = failures.iter().map(|p| p.to_string()).collect();
            report.gorenstein = failures.is_empty();
            let (ring, basis) = filling::derivation_kernel(data)?;
            report.singularity = Some(filling::classify_codim1(&ring, &basis)?);
            let tame = glue::is_tame(data)?;
            report.tame = Some(tame.tame);
            if report.gorenstein {
                let euler = cohomology::euler_report(data).map_err(|e| CatalogError::Scenario(e.to_string()))?;
                report.wild_points = euler
                    .wild_points
                    .iter()
                    .map(|w| WildPointReport {
                        place: w.place.to_string(),
                        n: w.n,
                        delta: w.delta,
                    })
                    .collect();
                report.chi = Some(euler.chi);
                report.h1 = Some(euler.h1);
                let oracle = cohomology::default_bound(data, 0)
                    .and_then(|b| cohomology::truncated_section_oracle(data, 0, b));
                match oracle {
                    Ok(c) => report.oracle = Some(c),
                    Err(e) => report.errors.push(format!("section oracle: {e}")),
                }
            }
        }
    }
    Ok(())
}

/// True iff `hypersurface` vanishes identically after substitution.
pub fn verify_parametrization(hypersurface: &MPoly, substitution: &HashMap<String, MPoly>) -> bool {
    hypersurface.substitute(substitution).is_zero()
}

/// Reduces `p` modulo `w^2 = q`, for the variable `w`.
pub fn reduce_square(p: &MPoly, w: &str, q: &MPoly) -> MPoly {
    let field = p.field();
    let mut out = MPoly::zero(field);
    for (m, c) in p.terms() {
        let mut rest = m.clone();
        let e = rest.remove(w).unwrap_or(0);
        let mut term = MPoly::monomial(c.clone(), rest.iter().map(|(v, e)| (v.as_str(), *e)));
        term = &term * &q.pow(e / 2);
        if e % 2 == 1 {
            term = &term * &MPoly::var(field, w);
        }
        out = &out + &term;
    }
    out
}

/// Like [`verify_parametrization`], on the double cover `w^2 = q`.
pub fn verify_parametrization_on_cover(
    hypersurface: &MPoly,
    substitution: &HashMap<String, MPoly>,
    w: &str,
    q: &MPoly,
) -> bool {
    reduce_square(&hypersurface.substitute(substitution), w, q).is_zero()
}

fn subst(field: BaseField, pairs: &[(&str, &str)]) -> Result<HashMap<String, MPoly>, CatalogError> {
    pairs
        .iter()
        .map(|(v, e)| Ok((v.to_string(), MPoly::parse(field, e)?)))
        .collect()
}

/// `u = x^p`, `v_i = x^(np+i) - i h_0 x^(i-1) y`; checks
/// `v_i v_j - u^n v_(i+j) = i j h_0^2 x^(i+j-2) y^2` with `i j ≠ 0` for all
/// `i + j ≤ p - 1`.
pub fn monomial_relation_check_with(p: u64, n: u32, h0: &MPoly) -> Result<bool, CatalogError> {
    glue::wild_cusp_ring(p, n as u64)?;
    let field = BaseField::prime(p)?;
    if p < 3 || h0.field() != field {
        return Ok(false);
    }
    // h_0 must be a unit at x = 0.
    let at_zero = h0.substitute(&subst(field, &[("x", "0"), ("y", "0")])?);
    if at_zero.is_zero() {
        return Ok(false);
    }
    let x = MPoly::var(field, "x");
    let y = MPoly::var(field, "y");
    let u = x.pow(p as u32);
    let np = n * p as u32;
    let v = |i: u32| -> MPoly {
        let lead = x.pow(np + i);
        let tail = &(&h0.scale(&field.from_i64(i as i64)) * &x.pow(i - 1)) * &y;
        &lead - &tail
    };
    for i in 1..p as u32 {
        for j in 1..p as u32 {
            if i + j > p as u32 - 1 {
                continue;
            }
            let lhs = &(&v(i) * &v(j)) - &(&u.pow(n) * &v(i + j));
            let unit = field.from_i64((i * j) as i64);
            if unit.is_zero() {
                return Ok(false);
            }
            let rhs = &(&(&h0.pow(2)).scale(&unit) * &x.pow(i + j - 2)) * &y.pow(2);
            if !(&lhs - &rhs).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn monomial_relation_check(p: u64, n: u32) -> Result<bool, CatalogError> {
    let field = BaseField::prime(p)?;
    monomial_relation_check_with(p, n, &MPoly::constant(field.one()))
}

/// The hypersurface `u^(3n+2) + u v_1^3 + v_2^3` and its normalization map
/// in characteristic 3.
pub fn wild_normalization_char3(n: u32, h0: &MPoly) -> Result<(MPoly, HashMap<String, MPoly>), CatalogError> {
    let field = BaseField::prime(3)?;
    let hyp = MPoly::parse(field, &format!("u^{} + u*v1^3 + v2^3", 3 * n + 2))?;
    let x = MPoly::var(field, "x");
    let y = MPoly::var(field, "y");
    let v1 = &x.pow(3 * n + 1) - &(h0 * &y);
    let v2 = &x.pow(3 * n + 2) - &(&(h0 * &x) * &y).scale(&field.from_i64(2));
    let map = HashMap::from([
        ("u".to_string(), x.pow(3)),
        ("v1".to_string(), v1),
        ("v2".to_string(), v2),
    ]);
    Ok((hyp, map))
}

/// `u (u^(2n+1) + v^2)^2 + w^2` and its normalization map in characteristic 2.
pub fn wild_normalization_char2(n: u32) -> Result<(MPoly, HashMap<String, MPoly>), CatalogError> {
    let field = BaseField::prime(2)?;
    let hyp = MPoly::parse(field, &format!("u*(u^{} + v^2)^2 + w^2", 2 * n + 1))?;
    let map = subst(field, &[("u", "x^2"), ("v", &format!("x^{} + y", 2 * n + 1)), ("w", "x*y^2")])?;
    Ok((hyp, map))
}

/// A weighted hypersurface with its normalization, and the scenario it
/// realizes.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub equation: String,
    pub hypersurface: MPoly,
    pub substitution: HashMap<String, MPoly>,
    /// `(w, q)` when the normalization is the double cover `w^2 = q`.
    pub cover: Option<(String, MPoly)>,
    pub scenario: GlueScenario,
}

impl CatalogEntry {
    pub fn verify(&self) -> bool {
        match &self.cover {
            None => verify_parametrization(&self.hypersurface, &self.substitution),
            Some((w, q)) => verify_parametrization_on_cover(&self.hypersurface, &self.substitution, w, q),
        }
    }
}

/// Type of the normalization of `y^2 = l^2 q` with `l = x_3`, from the rank
/// of `q` and its restriction to `l`. `q` is a symmetric 3x3 Gram matrix in
/// characteristic ≠ 2.
pub fn quartic_normalization_type(q: &[[i64; 3]; 3], field: BaseField) -> Result<(CaseTag, u32), CatalogError> {
    let s: Vec<Vec<Scalar>> = q.iter().map(|r| r.iter().map(|&c| field.from_i64(c)).collect()).collect();
    let rank = crate::linalg::rank(&s, 3);
    // Binary form q(x_1, x_2, 0).
    let (a, b, c) = (s[0][0].clone(), s[0][1].clone(), s[1][1].clone());
    let restriction_zero = a.is_zero() && b.is_zero() && c.is_zero();
    let disc = b.clone() * b - a * c;
    Ok(match (rank, restriction_zero, disc.is_zero()) {
        (3, _, false) => (CaseTag::D0, 0),
        (3, _, true) => (CaseTag::D1, 0),
        (2, true, _) => (CaseTag::C2, 2),
        (2, false, false) => (CaseTag::C0, 2),
        (2, false, true) => (CaseTag::C1, 2),
        _ => {
            return Err(CatalogError::Scenario(format!(
                "the conic must have rank 2 or 3, found rank {rank}"
            )))
        }
    })
}

fn conic_form(q: &[[i64; 3]; 3]) -> String {
    let v = ["x1", "x2", "x3"];
    let mut out = String::new();
    for i in 0..3 {
        for j in i..3 {
            let c = if i == j { q[i][j] } else { 2 * q[i][j] };
            if c == 0 {
                continue;
            }
            let mono = if i == j { format!("{}^2", v[i]) } else { format!("{}*{}", v[i], v[j]) };
            let sign = match (out.is_empty(), c < 0) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let coeff = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
            out.push_str(&format!("{sign}{coeff}{mono}"));
        }
    }
    out
}

fn entry_scenario(
    name: &str,
    field: BaseField,
    blocks: &[(CaseTag, u32)],
    equation: &str,
) -> Result<GlueScenario, CatalogError> {
    let blocks = blocks
        .iter()
        .map(|&(c, a)| BuildingBlock::new(c, a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut s = GlueScenario::new(name, field, blocks);
    let class = classify_blocks(&s.blocks)?;
    s.declared = Some(class.case);
    match class.case {
        GlueCase::C(r) => s.matchings = standard_cycle(field, r),
        GlueCase::D(r) => {
            let b: Vec<&str> = (0..r).map(|_| "1").collect();
            s.derivation = Some(GlueData::parse(field, "0", &b)?);
        }
        _ => {}
    }
    s.equations.push(equation.to_string());
    Ok(s)
}

/// Degree 1: the sextics `z^2 = y^3 + x_1 x_2 y^2`, `z^2 = y^3 + x_1^2 y^2`,
/// `z^2 = y^3` normalized by `P^2`. Degree 2: `y^2 = q^2` and the five
/// quartics `y^2 = l^2 q`. Characteristic 0.
pub fn degree12_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    let q = BaseField::rationals();
    let mut out = Vec::new();
    let sextics = [
        ("u2^2 - u1*u3", "z^2 - y^3 - x1*x2*y^2", CaseTag::A1, "degree 1, smooth conic"),
        ("u2^2 - u1^2", "z^2 - y^3 - x1^2*y^2", CaseTag::A2, "degree 1, line pair"),
        ("u2^2", "z^2 - y^3", CaseTag::A3, "degree 1, double line"),
    ];
    for (conic, eq, tag, name) in sextics {
        let map = subst(q, &[("x1", "u1"), ("x2", "u3"), ("y", conic), ("z", &format!("u2*({conic})"))])?;
        out.push(CatalogEntry {
            equation: format!("{eq} = 0"),
            hypersurface: MPoly::parse(q, eq)?,
            substitution: map,
            cover: None,
            scenario: entry_scenario(name, q, &[(tag, 0)], eq)?,
        });
    }
    // Two planes y = q and y = -q glued along the conic.
    let conic = "x1*x3 - x2^2";
    for sign in ["", "-"] {
        let eq = format!("y^2 - ({conic})^2");
        out.push(CatalogEntry {
            equation: format!("{eq} = 0"),
            hypersurface: MPoly::parse(q, &eq)?,
            substitution: subst(q, &[("y", &format!("{sign}({conic})"))])?,
            cover: None,
            scenario: entry_scenario(
                &format!("degree 2, two planes (sheet {})", if sign.is_empty() { "+" } else { "-" }),
                q,
                &[(CaseTag::A1, 0), (CaseTag::A1, 0)],
                &eq,
            )?,
        });
    }
    let quartics: [(&str, [[i64; 3]; 3]); 5] = [
        ("smooth conic transverse to l", [[1, 0, 0], [0, -1, 0], [0, 0, 1]]),
        ("smooth conic tangent to l", [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        ("line pair, vertex off l", [[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
        ("line pair, vertex on l", [[1, 0, 0], [0, 0, 0], [0, 0, -1]]),
        ("line pair containing l", [[0, 0, 1], [0, 0, 1], [1, 1, 0]]),
    ];
    for (name, gram) in quartics {
        let (tag, a) = quartic_normalization_type(&gram, q)?;
        let form = conic_form(&gram);
        let eq = format!("y^2 - x3^2*({form})");
        out.push(CatalogEntry {
            equation: format!("{eq} = 0"),
            hypersurface: MPoly::parse(q, &eq)?,
            substitution: subst(q, &[("y", "x3*w")])?,
            cover: Some(("w".into(), MPoly::parse(q, &form)?)),
            scenario: entry_scenario(&format!("degree 2, {name}"), q, &[(tag, a)], &eq)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(c: CaseTag, a: u32) -> BuildingBlock {
        BuildingBlock::new(c, a).unwrap()
    }

    #[test]
    fn pairing_examples() {
        for a in 0..6 {
            let s = Surface::Hirzebruch(a);
            let fibre = PicardClass::scroll(s, 1, 0);
            assert_eq!(hirzebruch_pairing(&fibre, &fibre).unwrap(), 0);
            let h = PicardClass::scroll(s, a as i64 + 2, 1);
            assert_eq!(hirzebruch_pairing(&h, &h).unwrap(), a as i64 + 4);
            let cone = PicardClass::scroll(Surface::HirzebruchCone(a), a as i64, 1);
            let b = PicardClass::scroll(Surface::HirzebruchCone(a), 0, 1);
            assert_eq!(hirzebruch_pairing(&cone, &b).unwrap(), 0);
        }
        assert!(hirzebruch_pairing(&PicardClass::line(1), &PicardClass::scroll(Surface::Hirzebruch(1), 1, 0)).is_err());
    }

    #[test]
    fn blocks_match_the_table() {
        assert!(verify_block(&block(CaseTag::B, 0)));
        assert_eq!(block(CaseTag::B, 0).degree(), 4);
        let d = block(CaseTag::D1, 2);
        assert_eq!((d.h.to_string(), d.c.to_string(), d.degree()), ("3A+1B".into(), "1A+1B".into(), 4));
        assert!(verify_block(&d));
        let c = block(CaseTag::C1, 3);
        assert_eq!(c.degree(), 3);
        assert!(verify_block(&c));
        assert!(BuildingBlock::new(CaseTag::C0, 3).is_err());
        assert!(BuildingBlock::new(CaseTag::D0, 2).is_err());
        assert!(BuildingBlock::new(CaseTag::C1, 1).is_err());
        assert_eq!(block_table(5).len(), 4 + 6 * 2 + 4 * 2 + 1 + 2);
        assert!(block_table(10).iter().all(verify_block));
        assert_eq!("c0".parse::<CaseTag>().unwrap(), CaseTag::C0);
        assert_eq!(CaseTag::D1.to_string(), "d1");
    }

    #[test]
    fn classifier() {
        let c = |tags: &[(CaseTag, u32)]| {
            classify_blocks(&tags.iter().map(|&(t, a)| block(t, a)).collect::<Vec<_>>())
        };
        assert_eq!(c(&[(CaseTag::E, 1)]).unwrap().case, GlueCase::A);
        assert_eq!(c(&[(CaseTag::B, 0), (CaseTag::E, 0)]).unwrap().case, GlueCase::B);
        assert_eq!(
            c(&[(CaseTag::C1, 2), (CaseTag::C1, 3), (CaseTag::D1, 0)]).unwrap().case,
            GlueCase::C(3)
        );
        assert_eq!(c(&[(CaseTag::C2, 4)]).unwrap().case, GlueCase::D(1));
        assert!(c(&[(CaseTag::A1, 0), (CaseTag::A1, 0)]).unwrap().degenerate);
        assert!(!c(&[(CaseTag::A3, 0), (CaseTag::C2, 2)]).unwrap().degenerate);
        assert!(c(&[(CaseTag::B, 0), (CaseTag::C2, 2)]).is_err());
        assert!(c(&[(CaseTag::B, 0), (CaseTag::E, 0), (CaseTag::E, 1)]).is_err());
        assert_eq!("C3".parse::<GlueCase>().unwrap(), GlueCase::C(3));
        assert!("C0".parse::<GlueCase>().is_err());
    }

    #[test]
    fn mobius_and_nodes() {
        let q = BaseField::rationals();
        let pt = |s: &str| P1Point::parse(q, s).unwrap();
        let m = Mobius::from_three_points(q, &[pt("0"), pt("1"), pt("inf")], &[pt("1"), pt("inf"), pt("0")]).unwrap();
        assert_eq!(m.apply(&pt("0")), pt("1"));
        assert_eq!(m.apply(&pt("1")), pt("inf"));
        assert_eq!(m.apply(&pt("inf")), pt("0"));
        assert!(Mobius::from_three_points(q, &[pt("0"), pt("0"), pt("1")], &[pt("0"), pt("1"), pt("2")]).is_err());
        let mut cycle = standard_cycle(q, 2);
        assert!(node_matching_check(&cycle));
        assert!(node_matching_check(&standard_cycle(q, 1)));
        cycle[1].map = cycle[1].map.then(&Mobius::translation(q, q.one()));
        let clashes = node_clashes(&cycle);
        assert_eq!(clashes.len(), 1);
        assert_eq!((clashes[0].index, clashes[0].transported.clone()), (2, pt("1")));
    }

    #[test]
    fn reports() {
        let q = BaseField::rationals();
        let mut d1 = GlueScenario::new("cone", q, vec![block(CaseTag::C2, 3)]);
        d1.derivation = Some(GlueData::parse(q, "x", &["1"]).unwrap());
        let r = scenario_report(&d1);
        assert!(r.gorenstein && r.tame == Some(true) && r.errors.is_empty(), "{r:?}");
        assert_eq!((r.chi, r.h1, r.singularity), (Some(1), Some(0), Some(SingularityType::Cusp)));
        assert_eq!(r.oracle, Some(SectionCounts { h0: 1, h1: 0 }));

        let f3 = BaseField::prime(3).unwrap();
        let mut wild = GlueScenario::new("wild", f3, vec![block(CaseTag::A3, 0)]);
        wild.derivation = Some(GlueData::parse(f3, "1/x^3", &["1"]).unwrap());
        let r = scenario_report(&wild);
        assert!(r.gorenstein && r.tame == Some(false));
        assert_eq!((r.chi, r.h1), (Some(-1), Some(2)));
        assert_eq!(r.wild_points, vec![WildPointReport { place: "(x)".into(), n: 1, delta: 2 }]);
        assert_eq!(r.oracle, Some(SectionCounts { h0: 1, h1: 2 }));

        d1.derivation = Some(GlueData::parse(q, "1/x", &["1"]).unwrap());
        let r = scenario_report(&d1);
        assert!(!r.gorenstein);
        assert_eq!(r.failing_places, vec!["(x)".to_string()]);

        let mut cyc = GlueScenario::new("cycle", q, vec![block(CaseTag::C1, 2), block(CaseTag::D1, 1)]);
        cyc.matchings = standard_cycle(q, 2);
        let r = scenario_report(&cyc);
        assert!(r.gorenstein);
        assert_eq!((r.case, r.degree, r.singularity), (Some(GlueCase::C(2)), 5, Some(SingularityType::Node)));
        assert_eq!(r.oracle, Some(SectionCounts { h0: 1, h1: 0 }));
        cyc.matchings[0].node_second = P1Point::Infinity;
        assert!(!scenario_report(&cyc).gorenstein);

        let f2 = BaseField::prime(2).unwrap();
        let mut a = GlueScenario::new("insep", f2, vec![block(CaseTag::A1, 0)]);
        a.cover = CoverKind::Inseparable;
        assert_eq!(scenario_report(&a).singularity, Some(SingularityType::InseparableNode));
        a.cover = CoverKind::Separable;
        assert_eq!(scenario_report(&a).singularity, Some(SingularityType::Node));
    }

    #[test]
    fn polynomial_identities() {
        let f3 = BaseField::prime(3).unwrap();
        for n in 1..=3 {
            let (h, m) = wild_normalization_char3(n, &MPoly::parse(f3, "1 + x").unwrap()).unwrap();
            assert!(verify_parametrization(&h, &m));
        }
        for n in 1..=3 {
            let (h, m) = wild_normalization_char2(n).unwrap();
            assert!(verify_parametrization(&h, &m));
        }
        assert!(monomial_relation_check(3, 1).unwrap());
        assert!(monomial_relation_check(5, 1).unwrap());
        assert!(monomial_relation_check(5, 2).unwrap());
        let f5 = BaseField::prime(5).unwrap();
        assert!(!monomial_relation_check_with(5, 1, &MPoly::parse(f5, "x").unwrap()).unwrap());
        // Wrong map: v_2 without the factor 2.
        let (h, mut m) = wild_normalization_char3(1, &MPoly::constant(f3.one())).unwrap();
        m.insert("v2".into(), MPoly::parse(f3, "x^5 - x*y").unwrap());
        assert!(!verify_parametrization(&h, &m));
    }

    #[test]
    fn degree_one_and_two() {
        let cat = degree12_catalog().unwrap();
        assert_eq!(cat.len(), 10);
        for e in &cat {
            assert!(e.verify(), "{}", e.equation);
            let r = scenario_report(&e.scenario);
            assert!(r.errors.is_empty() && r.gorenstein && r.blocks_ok, "{r:?}");
            assert_eq!(r.chi, Some(1));
        }
        let cases: Vec<_> = cat.iter().map(|e| e.scenario.declared.unwrap()).collect();
        assert_eq!(&cases[..3], &[GlueCase::A, GlueCase::C(1), GlueCase::D(1)]);
        assert!(scenario_report(&cat[3].scenario).degenerate);
        let tags: Vec<_> = cat[5..].iter().map(|e| e.scenario.blocks[0].case).collect();
        assert_eq!(tags, vec![CaseTag::D0, CaseTag::D1, CaseTag::C0, CaseTag::C1, CaseTag::C2]);
        assert!(cat.iter().all(|e| e.scenario.degree() as usize <= 2));
    }
}
