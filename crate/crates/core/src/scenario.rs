//! Scenario files: JSON descriptions of glued surfaces with optional
//! expected outcomes.
//!
//! ```json
//! {
//!   "version": 1,
//!   "scenarios": [{
//!     "name": "cuspidal cone",
//!     "characteristic": 0,
//!     "blocks": [{"case": "c2", "a": 3}],
//!     "glueCase": "D1",
//!     "derivation": {"a": "x", "b": ["1"]},
//!     "expect": {"gorenstein": true, "chi": 1, "h1": 0}
//!   }]
//! }
//! ```

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{BaseField, MPoly};
use crate::catalog::{
    self, BuildingBlock, CaseTag, CoverKind, GlueCase, GlueScenario, LineMatching, Mobius, P1Point,
    ScenarioReport,
};
use crate::filling::SingularityType;
use crate::glue::GlueData;

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub scenarios: Vec<ScenarioSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ScenarioSpec {
    pub name: String,
    pub characteristic: u64,
    pub blocks: Vec<BlockSpec>,
    #[serde(default)]
    pub glue_case: Option<String>,
    #[serde(default)]
    pub identifications: Option<Identifications>,
    #[serde(default)]
    pub derivation: Option<DerivationSpec>,
    #[serde(default)]
    pub equations: Vec<String>,
    #[serde(default)]
    pub expect: Option<Expect>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub case: String,
    #[serde(default)]
    pub a: u32,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Identifications {
    #[serde(default)]
    pub cover: Option<CoverKind>,
    #[serde(default)]
    pub lines: Vec<LineSpec>,
}

/// `ℓ'_i -> ℓ''_i` by three point pairs; nodes default to `0`.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct LineSpec {
    #[serde(default)]
    pub node_prime: Option<String>,
    #[serde(default)]
    pub node_second: Option<String>,
    #[serde(default)]
    pub map: Option<[[String; 2]; 3]>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationSpec {
    pub a: String,
    pub b: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default)]
    pub gorenstein: Option<bool>,
    #[serde(default)]
    pub tame: Option<bool>,
    #[serde(default)]
    pub chi: Option<i64>,
    #[serde(default)]
    pub h1: Option<u64>,
    #[serde(default)]
    pub case: Option<String>,
    #[serde(default)]
    pub singularity: Option<String>,
    #[serde(default)]
    pub degree: Option<u64>,
}

/// A syntax error with its position, or a list of schema violations.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadError {
    Syntax { line: usize, column: usize, message: String },
    Schema(Vec<String>),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Syntax { line, column, message } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            LoadError::Schema(v) => write!(f, "{}", v.join("; ")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LoadedScenario {
    pub scenario: GlueScenario,
    pub expect: Option<Expect>,
}

fn syntax(e: serde_json::Error) -> LoadError {
    LoadError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_file(text: &str) -> Result<Vec<LoadedScenario>, LoadError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(syntax)?;
    let mut errors = Vec::new();
    if file.version != VERSION {
        errors.push(format!("version: expected {VERSION}, found {}", file.version));
    }
    let mut out = Vec::new();
    for (i, spec) in file.scenarios.iter().enumerate() {
        match build(spec) {
            Ok(s) => out.push(LoadedScenario {
                scenario: s,
                expect: spec.expect.clone(),
            }),
            Err(es) => errors.extend(es.into_iter().map(|e| format!("scenarios[{i}] ({}): {e}", spec.name))),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(LoadError::Schema(errors))
    }
}

fn build(spec: &ScenarioSpec) -> Result<GlueScenario, Vec<String>> {
    let mut errors = Vec::new();
    let field = match BaseField::new(spec.characteristic) {
        Ok(f) => f,
        Err(e) => return Err(vec![format!("characteristic: {e}")]),
    };
    let mut blocks = Vec::new();
    for (j, b) in spec.blocks.iter().enumerate() {
        match b.case.parse::<CaseTag>().and_then(|c| BuildingBlock::new(c, b.a)) {
            Ok(block) => blocks.push(block),
            Err(e) => errors.push(format!("blocks[{j}]: {e}")),
        }
    }
    if spec.blocks.is_empty() {
        errors.push("blocks: at least one block is required".into());
    }
    let mut s = GlueScenario::new(&spec.name, field, blocks);
    s.equations = spec.equations.clone();
    if let Some(c) = &spec.glue_case {
        match c.parse::<GlueCase>() {
            Ok(c) => s.declared = Some(c),
            Err(e) => errors.push(format!("glueCase: {e}")),
        }
    }
    if let Some(ids) = &spec.identifications {
        if let Some(c) = ids.cover {
            s.cover = c;
        }
        for (j, l) in ids.lines.iter().enumerate() {
            match line(field, l) {
                Ok(m) => s.matchings.push(m),
                Err(e) => errors.push(format!("identifications.lines[{j}]: {e}")),
            }
        }
    }
    if let Some(d) = &spec.derivation {
        let b: Vec<&str> = d.b.iter().map(String::as_str).collect();
        match GlueData::parse(field, &d.a, &b) {
            Ok(data) => s.derivation = Some(data),
            Err(e) => errors.push(format!("derivation: {e}")),
        }
    }
    if let Some(e) = &spec.expect {
        if let Some(c) = &e.case {
            if let Err(err) = c.parse::<GlueCase>() {
                errors.push(format!("expect.case: {err}"));
            }
        }
    }
    if errors.is_empty() {
        Ok(s)
    } else {
        Err(errors)
    }
}

fn line(field: BaseField, l: &LineSpec) -> Result<LineMatching, String> {
    let pt = |s: &Option<String>| match s {
        None => Ok(P1Point::Finite(field.zero())),
        Some(s) => P1Point::parse(field, s).map_err(|e| e.to_string()),
    };
    let map = match &l.map {
        None => Mobius::identity(field),
        Some(pairs) => {
            let mut src = Vec::new();
            let mut dst = Vec::new();
            for [a, b] in pairs {
                src.push(P1Point::parse(field, a).map_err(|e| e.to_string())?);
                dst.push(P1Point::parse(field, b).map_err(|e| e.to_string())?);
            }
            let src: [P1Point; 3] = src.try_into().expect("three pairs");
            let dst: [P1Point; 3] = dst.try_into().expect("three pairs");
            Mobius::from_three_points(field, &src, &dst).map_err(|e| e.to_string())?
        }
    };
    Ok(LineMatching {
        node_prime: pt(&l.node_prime)?,
        node_second: pt(&l.node_second)?,
        map,
    })
}

/// A file of parametrization checks: each substitution should make the
/// hypersurface vanish, possibly modulo `w^2 = q` on a double cover.
///
/// ```json
/// {"version": 1, "checks": [{"name": "cone", "characteristic": 0,
///   "hypersurface": "z^2 - x*y", "substitution": {"x": "s^2", "y": "t^2", "z": "s*t"}}]}
/// ```
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub version: u32,
    pub checks: Vec<ParamSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSpec {
    pub name: String,
    pub characteristic: u64,
    pub hypersurface: String,
    pub substitution: BTreeMap<String, String>,
    #[serde(default)]
    pub cover: Option<CoverSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub variable: String,
    pub square: String,
}

#[derive(Clone, Debug)]
pub struct ParamCheck {
    pub name: String,
    pub hypersurface: MPoly,
    pub substitution: HashMap<String, MPoly>,
    pub cover: Option<(String, MPoly)>,
}

impl ParamCheck {
    pub fn holds(&self) -> bool {
        match &self.cover {
            None => catalog::verify_parametrization(&self.hypersurface, &self.substitution),
            Some((w, q)) => {
                catalog::verify_parametrization_on_cover(&self.hypersurface, &self.substitution, w, q)
            }
        }
    }
}

pub fn parse_param_file(text: &str) -> Result<Vec<ParamCheck>, LoadError> {
    let file: ParamFile = serde_json::from_str(text).map_err(syntax)?;
    let mut errors = Vec::new();
    if file.version != VERSION {
        errors.push(format!("version: expected {VERSION}, found {}", file.version));
    }
    let mut out = Vec::new();
    for (i, spec) in file.checks.iter().enumerate() {
        let mut local = Vec::new();
        let field = match BaseField::new(spec.characteristic) {
            Ok(f) => f,
            Err(e) => {
                errors.push(format!("checks[{i}] ({}): characteristic: {e}", spec.name));
                continue;
            }
        };
        let mut parse = |what: String, s: &str| match MPoly::parse(field, s) {
            Ok(p) => Some(p),
            Err(e) => {
                local.push(format!("{what}: {e}"));
                None
            }
        };
        let hypersurface = parse("hypersurface".into(), &spec.hypersurface);
        let substitution: HashMap<String, MPoly> = spec
            .substitution
            .iter()
            .filter_map(|(v, e)| Some((v.clone(), parse(format!("substitution.{v}"), e)?)))
            .collect();
        let cover = spec
            .cover
            .as_ref()
            .and_then(|c| Some((c.variable.clone(), parse("cover.square".into(), &c.square)?)));
        match hypersurface {
            Some(hypersurface) if local.is_empty() => out.push(ParamCheck {
                name: spec.name.clone(),
                hypersurface,
                substitution,
                cover,
            }),
            _ => errors.extend(local.into_iter().map(|e| format!("checks[{i}] ({}): {e}", spec.name))),
        }
    }
    if errors.is_empty() {
        Ok(out)
    } else {
        Err(LoadError::Schema(errors))
    }
}

/// Differences between a report and its expected outcome.
pub fn mismatches(report: &ScenarioReport, expect: &Expect) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |what: &str, want: String, got: String| {
        if want != got {
            out.push(format!("{what}: expected {want}, got {got}"));
        }
    };
    let show = |v: Option<String>| v.unwrap_or_else(|| "none".into());
    if let Some(g) = expect.gorenstein {
        check("gorenstein", g.to_string(), report.gorenstein.to_string());
    }
    if let Some(t) = expect.tame {
        check("tame", t.to_string(), show(report.tame.map(|t| t.to_string())));
    }
    if let Some(c) = expect.chi {
        check("chi", c.to_string(), show(report.chi.map(|c| c.to_string())));
    }
    if let Some(h) = expect.h1 {
        check("h1", h.to_string(), show(report.h1.map(|h| h.to_string())));
    }
    if let Some(c) = &expect.case {
        let want = c.parse::<GlueCase>().map(|c| c.to_string()).unwrap_or_else(|_| c.clone());
        check("case", want, show(report.case.map(|c| c.to_string())));
    }
    if let Some(s) = &expect.singularity {
        check(
            "singularity",
            s.clone(),
            show(report.singularity.as_ref().map(SingularityType::to_string)),
        );
    }
    if let Some(d) = expect.degree {
        check("degree", d.to_string(), report.degree.to_string());
    }
    if !report.errors.is_empty() && expect != &Expect::default() {
        out.push(format!("errors: {}", report.errors.join("; ")));
    }
    out
}
