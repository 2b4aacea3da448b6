//! Report envelope and JSON encodings of algebraic values.

use eds_core::algebra::{Field, Poly, RatFunc};
use eds_core::eds::{Divisor, Place};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const VERSION: &str = concat!("eds-lab ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub inputs: Value,
    pub records: Vec<Value>,
    pub findings: Map<String, Value>,
    pub timings: Timings,
}

impl Report {
    /// JSON with the timing field removed, for replay comparison.
    pub fn canonical(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string_pretty(&v).unwrap()
    }
}

pub fn elem<F: Field>(field: &F, e: &F::Elem) -> Value {
    Value::String(field.format(e))
}

pub fn poly<F: Field>(p: &Poly<F>) -> Value {
    Value::String(p.format_with("t"))
}

pub fn ratfunc<F: Field>(r: &RatFunc<F>) -> Value {
    Value::String(r.format_with("t"))
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn place<F: Field>(p: &Place<F>) -> Value {
    match p {
        Place::Finite(g) => poly(g),
        Place::Infinity => Value::String("infinity".into()),
    }
}

pub fn place_mults<F: Field>(items: &[(Place<F>, i64)]) -> Value {
    Value::Array(
        items
            .iter()
            .map(|(p, m)| json!({"handle": place(p), "mult": m}))
            .collect(),
    )
}

/// `{"places": [{handle, mult}], "infinity": m, "degree": deg}`.
pub fn divisor<F: Field>(d: &Divisor<F>) -> Value {
    let places: Vec<Value> = d
        .layers()
        .map(|(g, m)| json!({"handle": poly(g), "mult": m}))
        .collect();
    json!({"places": places, "infinity": d.infinity_mult(), "degree": d.degree()})
}
