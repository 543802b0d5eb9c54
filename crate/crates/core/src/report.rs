//! JSON report types shared by the library and the command-line tool.

use std::fmt::{self, Display};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{
    block_dims, build_killing_algebra, export_structure_constants, JacobiMode, KillingAlgebra,
    SPHERES,
};
use crate::error::{Error, Result};
use crate::exact::ldlt_signature;
use crate::geometry::check_geometry;
use crate::identify::{identify, killing_form};
use crate::rep::{evaluate_fixture, parse_fixtures, AlgebraType, DEFAULT_FIXTURES};

pub(crate) fn ser_display<T: Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_opt_display<T: Display, S: Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Status {
    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Envelope for every command's output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub inputs: Value,
    pub status: Status,
    pub payload: Value,
    pub wall_ms: u128,
}

impl VerificationReport {
    pub fn new(command: &str, inputs: Value, passed: bool, payload: Value, start: Instant) -> Self {
        Self {
            command: command.into(),
            inputs,
            status: Status::from_passed(passed),
            payload,
            wall_ms: start.elapsed().as_millis(),
        }
    }

    /// A failed report carrying the error message.
    pub fn from_error(command: &str, inputs: Value, err: &Error, start: Instant) -> Self {
        Self::new(command, inputs, false, json!({ "error": err.to_string() }), start)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The report as JSON with every `wall_ms` field removed.
    pub fn without_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip_timing(&mut v);
        v
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("wall_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn catch(command: &str, inputs: Value, start: Instant, f: impl FnOnce() -> Result<VerificationReport>) -> VerificationReport {
    f().unwrap_or_else(|e| VerificationReport::from_error(command, inputs, &e, start))
}

/// Total dimensions of the three algebras.
pub fn expected_dim(n: usize) -> Option<usize> {
    match n {
        7 => Some(36),
        8 => Some(52),
        15 => Some(248),
        _ => None,
    }
}

pub fn check_sphere(n: usize) -> Result<()> {
    if SPHERES.contains(&n) {
        Ok(())
    } else {
        Err(Error::Unsupported {
            what: "sphere",
            value: n.to_string(),
        })
    }
}

/// `build`: table shape and basic symmetries.
pub fn build_report(ka: &KillingAlgebra, export: Option<&Path>, start: Instant) -> Result<VerificationReport> {
    let n = ka.sphere();
    if let Some(path) = export {
        export_structure_constants(ka, path)?;
    }
    let antisymmetric = ka.is_antisymmetric();
    let graded = ka.respects_grading();
    let (d0, d1) = block_dims(n)?;
    let passed = antisymmetric
        && graded
        && Some(ka.dim()) == expected_dim(n)
        && (ka.dim0(), ka.dim1()) == (d0, d1);
    let payload = json!({
        "sphere": n,
        "dim": ka.dim(),
        "dim0": ka.dim0(),
        "dim1": ka.dim1(),
        "nonzero_constants": ka.nnz(),
        "antisymmetric": antisymmetric,
        "respects_grading": graded,
        "exported": export.map(|p| p.display().to_string()),
        "wall_ms": start.elapsed().as_millis(),
    });
    let inputs = json!({ "sphere": n, "export": export.map(|p| p.display().to_string()) });
    Ok(VerificationReport::new("build", inputs, passed, payload, start))
}

pub fn jacobi_report(ka: &KillingAlgebra, mode: JacobiMode) -> VerificationReport {
    let start = Instant::now();
    let inputs = match &mode {
        JacobiMode::Sampled { seed, count } => {
            json!({ "sphere": ka.sphere(), "mode": mode.name(), "seed": seed, "count": count })
        }
        _ => json!({ "sphere": ka.sphere(), "mode": mode.name() }),
    };
    let r = ka.verify_jacobi(mode);
    VerificationReport::new("verify jacobi", inputs, r.passed, to_value(&r), start)
}

/// Killing-form signature and `κ(k₀, k₁) = 0`.
pub fn compactness_report(ka: &KillingAlgebra) -> VerificationReport {
    let start = Instant::now();
    let inputs = json!({ "sphere": ka.sphere() });
    catch("compactness", inputs.clone(), start, || {
        let kappa = killing_form(ka);
        let sig = ldlt_signature(&kappa)?;
        let d0 = ka.dim0();
        let block_orthogonal = kappa
            .triplets()
            .all(|(r, c, _)| (r < d0) == (c < d0));
        let passed = sig.positive == 0 && sig.zero == 0 && sig.negative == ka.dim() && block_orthogonal;
        let payload = json!({
            "sphere": ka.sphere(),
            "signature": sig,
            "block_orthogonal": block_orthogonal,
        });
        Ok(VerificationReport::new("compactness", inputs, passed, payload, start))
    })
}

pub fn identify_report(ka: &KillingAlgebra) -> VerificationReport {
    let start = Instant::now();
    let inputs = json!({ "sphere": ka.sphere() });
    catch("identify", inputs.clone(), start, || {
        let r = identify(ka)?;
        Ok(VerificationReport::new("identify", inputs, r.passed(), to_value(&r), start))
    })
}

/// Fixture groups for `rep check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepCase {
    D4,
    B4,
    D8,
}

impl RepCase {
    pub const ALL: [RepCase; 3] = [RepCase::D4, RepCase::B4, RepCase::D8];

    pub fn algebra(self) -> AlgebraType {
        match self {
            RepCase::D4 => AlgebraType::d(4),
            RepCase::B4 => AlgebraType::b(4),
            RepCase::D8 => AlgebraType::d(8),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepCase::D4 => "d4",
            RepCase::B4 => "b4",
            RepCase::D8 => "d8",
        }
    }
}

impl FromStr for RepCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RepCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported {
                what: "representation case",
                value: s.into(),
            })
    }
}

/// Evaluates every shipped fixture for the case's algebra.
pub fn rep_report(case: RepCase) -> VerificationReport {
    let start = Instant::now();
    let inputs = json!({ "case": case.name() });
    catch("rep check", inputs.clone(), start, || {
        let t = case.algebra();
        let fixtures: Vec<_> = parse_fixtures(DEFAULT_FIXTURES)?
            .into_iter()
            .filter(|f| f.algebra == t)
            .collect();
        let outcomes = fixtures.iter().map(evaluate_fixture).collect::<Result<Vec<_>>>()?;
        let passed = !outcomes.is_empty() && outcomes.iter().all(|o| o.passed);
        let payload = json!({
            "algebra": t.to_string(),
            "fixtures": outcomes.len(),
            "failed": outcomes.iter().filter(|o| !o.passed).count(),
            "outcomes": outcomes,
        });
        Ok(VerificationReport::new("rep check", inputs, passed, payload, start))
    })
}

pub fn geometry_report(n: usize, points: usize, seed: u64) -> VerificationReport {
    let start = Instant::now();
    let inputs = json!({ "sphere": n, "points": points, "seed": seed });
    catch("geometry check", inputs.clone(), start, || {
        let r = check_geometry(n, points, seed)?;
        Ok(VerificationReport::new("geometry check", inputs, r.passed, to_value(&r), start))
    })
}

/// Settings for [`run_all`].
#[derive(Clone, Debug)]
pub struct RunAllOptions {
    pub seed: u64,
    pub points: usize,
    /// Algebras used in place of freshly built ones for their sphere.
    pub algebras: Vec<KillingAlgebra>,
}

impl Default for RunAllOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            points: 100,
            algebras: Vec::new(),
        }
    }
}

/// The full verification suite, in order: dimensions, Jacobi, compactness,
/// identification, representation fixtures, geometry.
pub fn run_all(options: &RunAllOptions) -> VerificationReport {
    let start = Instant::now();
    let inputs = json!({
        "seed": options.seed,
        "points": options.points,
        "algebra_overrides": options.algebras.iter().map(|a| a.sphere()).collect::<Vec<_>>(),
    });
    let mut sections = Vec::new();
    let mut algebras = Vec::new();
    for n in SPHERES {
        let t = Instant::now();
        let ka = match options.algebras.iter().find(|a| a.sphere() == n) {
            Some(a) => Ok(a.clone()),
            None => build_killing_algebra(n),
        };
        match ka {
            Ok(ka) => {
                sections.push(catch("build", json!({ "sphere": n }), t, || build_report(&ka, None, t)));
                algebras.push(ka);
            }
            Err(e) => sections.push(VerificationReport::from_error("build", json!({ "sphere": n }), &e, t)),
        }
    }
    for ka in &algebras {
        if ka.sphere() == 15 {
            sections.push(jacobi_report(ka, JacobiMode::SpinorTriples));
        }
        sections.push(jacobi_report(ka, JacobiMode::Exhaustive));
    }
    for ka in &algebras {
        sections.push(compactness_report(ka));
    }
    for ka in &algebras {
        sections.push(identify_report(ka));
    }
    for case in RepCase::ALL {
        sections.push(rep_report(case));
    }
    for n in SPHERES {
        sections.push(geometry_report(n, options.points, options.seed));
    }
    let passed = algebras.len() == SPHERES.len() && sections.iter().all(VerificationReport::passed);
    let summary: Vec<Value> = sections
        .iter()
        .map(|s| json!({ "command": s.command, "inputs": s.inputs, "status": s.status }))
        .collect();
    let payload = json!({ "summary": summary, "sections": sections });
    VerificationReport::new("report all", inputs, passed, payload, start)
}
