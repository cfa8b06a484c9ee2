//! Instance files: JSON with `n`, `field`, `u`, `v` and `branch`.

use std::path::Path;

use hecke_core::scalar::{Complex, Field, FieldElement, RatFunc};
use hecke_core::tlhecke::{Branch, TLInstance};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::InputError;

/// σ used by a complex field that does not name one.
pub const DEFAULT_COMPLEX_SIGMA: (f64, f64) = (2.0, 0.0);

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldSpec {
    RatfuncSigma,
    Quadext {
        delta: String,
    },
    Complex {
        bits: u32,
        #[serde(default)]
        sigma: Option<(f64, f64)>,
    },
}

/// Unknown keys are ignored, so a `construct` echo loads back.
#[derive(Debug, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub field: FieldSpec,
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub branch: String,
}

pub fn build_field(spec: &FieldSpec) -> Result<Field, InputError> {
    match spec {
        FieldSpec::RatfuncSigma => Ok(Field::RatFunc),
        FieldSpec::Quadext { delta } => {
            let d = Field::RatFunc
                .parse(delta)
                .map_err(|e| InputError(format!("field.delta: {e}")))?;
            let FieldElement::RatFunc(d) = d else {
                unreachable!("Q(s) parses into Q(s)")
            };
            Field::quad_ext(d).map_err(|e| InputError(format!("field.delta: {e}")))
        }
        FieldSpec::Complex { bits, sigma } => {
            if !(16..=4096).contains(bits) {
                return Err(InputError(format!(
                    "field.bits = {bits}, need 16 <= bits <= 4096"
                )));
            }
            let (re, im) = sigma.unwrap_or(DEFAULT_COMPLEX_SIGMA);
            if !(re.is_finite() && im.is_finite()) || (re == 0.0 && im == 0.0) {
                return Err(InputError("field.sigma must be finite and nonzero".into()));
            }
            Ok(Field::complex(*bits, Complex::from_f64(re, im, *bits)))
        }
    }
}

fn parse_entries(
    field: &Field,
    name: &str,
    src: &[String],
) -> Result<Vec<FieldElement>, InputError> {
    src.iter()
        .enumerate()
        .map(|(i, s)| {
            field
                .parse(s)
                .map_err(|e| InputError(format!("{name}[{}] = {s:?}: {e}", i + 1)))
        })
        .collect()
}

impl InstanceFile {
    pub fn build(&self) -> Result<TLInstance, InputError> {
        let field = build_field(&self.field)?;
        if self.u.len() != self.n || self.v.len() != self.n {
            return Err(InputError(format!(
                "n = {} but u has {} entries and v has {}",
                self.n,
                self.u.len(),
                self.v.len()
            )));
        }
        let branch = Branch::parse(&self.branch).ok_or_else(|| {
            InputError(format!("branch {:?}, expected \"+\" or \"-\"", self.branch))
        })?;
        let u = parse_entries(&field, "u", &self.u)?;
        let v = parse_entries(&field, "v", &self.v)?;
        TLInstance::new(field, u, v, branch).map_err(|e| InputError(e.to_string()))
    }
}

pub fn load(path: &Path) -> Result<TLInstance, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let file: InstanceFile =
        serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    file.build()
}

fn strings(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn field_json(field: &Field) -> Value {
    match field {
        Field::QuadExt { delta } => json!({"kind": "quadext", "delta": RatFunc::to_string(delta)}),
        Field::Complex { bits, sigma, .. } => {
            let (re, im) = sigma.to_f64_pair();
            json!({"kind": "complex", "bits": bits, "sigma": [re, im]})
        }
        other => json!({"kind": other.kind()}),
    }
}

/// Canonical echo: the input keys in canonical form plus derived values.
pub fn echo(inst: &TLInstance) -> Value {
    json!({
        "n": inst.n(),
        "field": field_json(inst.field()),
        "u": strings(inst.u()),
        "v": strings(inst.v()),
        "branch": inst.branch().to_string(),
        "derived": {
            "q": inst.q().to_string(),
            "z": strings(inst.z()),
            "m": inst.m().to_string(),
            "lambda": inst.lambda().to_string(),
        },
    })
}
