//! Field tags and model files.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use eds_core::algebra::{Field, FunctionField, Poly, RatFunc};
use eds_core::weierstrass::local::bundle_degree;
use eds_core::weierstrass::{NormalizedTriple, Point, Weierstrass, WeierstrassModel};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parse::parse_ratfunc;

/// `Q` or `Fp:<prime>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldTag {
    Q,
    Fp(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => f.write_str("Q"),
            FieldTag::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::Q);
        }
        match s.strip_prefix("Fp:").map(str::parse::<u64>) {
            Some(Ok(p)) => Ok(FieldTag::Fp(p)),
            _ => Err(format!("unknown field '{s}': expected Q or Fp:<prime>")),
        }
    }
}

impl From<FieldTag> for String {
    fn from(t: FieldTag) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for FieldTag {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    /// `y² + a₃y = x³ + a₂x² + a₄x` with `P = (0, 0)`.
    Normalized,
    General,
}

/// Contents of a model file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldTag>,
    pub chart: Chart,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a3: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a4: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a6: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    /// Section `(x, y)`; defaults to `(0, 0)` on the normalized chart.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<[String; 2]>,
}

impl ModelSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Field for a command: the flag and the model file must agree.
pub fn resolve_field(
    flag: Option<FieldTag>,
    spec: Option<&ModelSpec>,
) -> Result<FieldTag, CliError> {
    match (flag, spec.and_then(|s| s.field)) {
        (Some(a), Some(b)) if a != b => Err(CliError::Input(format!(
            "--field {a} conflicts with the model file field {b}"
        ))),
        (Some(a), _) | (None, Some(a)) => Ok(a),
        (None, None) => Ok(FieldTag::Q),
    }
}

#[derive(Clone, Debug)]
pub struct BuiltModel<F: Field> {
    pub model: WeierstrassModel<F>,
    pub point: Option<Point<RatFunc<F>>>,
    pub d: i64,
    /// Present when the chart is normalized with polynomial coefficients
    /// within the degree bounds for `d`.
    pub triple: Option<NormalizedTriple<F>>,
}

impl<F: Field> BuiltModel<F> {
    pub fn from_triple(triple: NormalizedTriple<F>) -> Self {
        BuiltModel {
            model: triple.model(),
            point: Some(triple.point()),
            d: triple.d as i64,
            triple: Some(triple),
        }
    }

    pub fn section(&self) -> Result<&Point<RatFunc<F>>, CliError> {
        self.point.as_ref().ok_or_else(|| {
            CliError::Input("the model file needs a point on the general chart".into())
        })
    }
}

fn coefficient<F: Field>(
    field: &F,
    name: &str,
    text: Option<&String>,
) -> Result<RatFunc<F>, CliError> {
    match text {
        None => Ok(RatFunc::zero(field)),
        Some(s) => parse_ratfunc(field, s).map_err(|e| CliError::Parse {
            context: name.to_string(),
            source: e,
        }),
    }
}

pub fn build_model<F: Field>(field: &F, spec: &ModelSpec) -> Result<BuiltModel<F>, CliError> {
    let k = FunctionField::new(field.clone());
    let get = |name: &str, text: Option<&String>| coefficient(field, name, text);
    if spec.chart == Chart::Normalized {
        for (name, v) in [("a1", &spec.a1), ("a6", &spec.a6)] {
            if v.is_some() {
                return Err(CliError::Input(format!(
                    "{name} is not part of the normalized chart"
                )));
            }
        }
        for (name, v) in [("a2", &spec.a2), ("a3", &spec.a3), ("a4", &spec.a4)] {
            if v.is_none() {
                return Err(CliError::Input(format!(
                    "the normalized chart needs {name}"
                )));
            }
        }
    }
    let a = [
        get("a1", spec.a1.as_ref())?,
        get("a2", spec.a2.as_ref())?,
        get("a3", spec.a3.as_ref())?,
        get("a4", spec.a4.as_ref())?,
        get("a6", spec.a6.as_ref())?,
    ];
    let model = Weierstrass::new(&k, a)?;
    let point = match (&spec.point, spec.chart) {
        (Some([x, y]), _) => Some(Point::affine(
            get("point.x", Some(x))?,
            get("point.y", Some(y))?,
        )),
        (None, Chart::Normalized) => Some(Point::affine(k.zero(), k.zero())),
        (None, Chart::General) => None,
    };
    if let Some(p) = &point {
        if !model.is_on(p) {
            return Err(CliError::Input("the point is not on the model".into()));
        }
    }
    let d = match spec.d {
        Some(d) => d as i64,
        None => bundle_degree(&model)?,
    };
    let triple = match (spec.chart, &spec.point) {
        (Chart::Normalized, None) => {
            let polys: Option<Vec<Poly<F>>> = [&model.a2, &model.a3, &model.a4]
                .iter()
                .map(|r| r.as_poly().cloned())
                .collect();
            match (polys, u32::try_from(d)) {
                (Some(p), Ok(d)) => {
                    let [a2, a3, a4]: [Poly<F>; 3] = p.try_into().unwrap();
                    NormalizedTriple::new(a2, a3, a4, d).ok()
                }
                _ => None,
            }
        }
        _ => None,
    };
    Ok(BuiltModel {
        model,
        point,
        d,
        triple,
    })
}
