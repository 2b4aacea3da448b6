//! Subcommands; each wraps one library operation and fills a [`Report`].

use std::path::PathBuf;

use clap::{Args, Subcommand};
use eds_core::algebra::{Field, PrimeField, Rationals};
use eds_core::eds::{compare_routes, scan_m, ScanReport};
use eds_core::families::{
    geography, geography_search, kummer_family, nodal_gm_coordinate, root_of_unity_order_quad,
    sample_v_delta, witness_family, GeographyReport, KummerInput,
};
use eds_core::heights::{class_formula_check, height_with_corrections};
use eds_core::weierstrass::component_of_section;
use eds_core::weierstrass::local::{bad_fibers, minimality_gap};
use eds_core::EdsError;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::model::{build_model, resolve_field, BuiltModel, FieldTag, ModelSpec};
use crate::parse::parse_elem;
use crate::report::{self, divisor, elem, place, place_mults, poly, ratfunc, rational};

/// Model taken from `--model-file`; echoed inline in reports.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ModelArgs {
    /// JSON model file.
    #[arg(long)]
    #[serde(skip)]
    pub model_file: Option<PathBuf>,
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
}

impl ModelArgs {
    fn resolve(&mut self) -> Result<(), CliError> {
        if let Some(path) = self.model_file.take() {
            self.model = Some(ModelSpec::load(&path)?);
        }
        Ok(())
    }

    fn spec(&self) -> Result<&ModelSpec, CliError> {
        self.model
            .as_ref()
            .ok_or_else(|| CliError::Input("--model-file is required".into()))
    }
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub field: Option<FieldTag>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdsArgs {
    #[arg(long)]
    pub field: Option<FieldTag>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Bundle degree; defaults to the model file value or deg D'.
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightsArgs {
    #[arg(long)]
    pub field: Option<FieldTag>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, default_value_t = 6)]
    pub n_max: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KummerArgs {
    #[arg(long, default_value = "Q")]
    pub field: FieldTag,
    /// `a,b,c` for the cubic `t³ + at² + bt + c`.
    #[arg(long, value_delimiter = ',', default_value = "0,0,1")]
    pub f_coeffs: Vec<String>,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessArgs {
    #[arg(long, default_value = "Q")]
    pub field: FieldTag,
    #[arg(long, default_value = "1")]
    pub c: String,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 10)]
    pub n_max: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleArgs {
    #[arg(long, default_value = "Fp:101")]
    pub field: FieldTag,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalArgs {
    #[arg(long)]
    pub field: Option<FieldTag>,
    /// Normalized chart; without it the witness family for `--c`, `--d`.
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value = "1")]
    pub c: String,
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    /// Fiber to examine; by default every zero of Δ in the base field.
    #[arg(long)]
    pub t0: Option<String>,
    /// Bound for the order of the coordinate as a root of unity.
    #[arg(long, default_value_t = 24)]
    pub n_max: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeographyArgs {
    #[arg(long)]
    pub g: u64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub g: u64,
    /// Threshold for K_X^2.
    #[arg(long = "N", allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub big_n: String,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Report to re-run.
    pub report: PathBuf,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "inputs", rename_all = "kebab-case")]
pub enum Command {
    /// c4, c6, Δ, the minimality gap and bad fibers of a model.
    Invariants(InvariantsArgs),
    /// D_n, D'_n and the non-reduced indices M for n ≤ n_max.
    Eds(EdsArgs),
    /// Height of the section and the class-formula check.
    Heights(HeightsArgs),
    /// Checks the explicit Kummer family for n ≤ n_max.
    KummerVerify(KummerArgs),
    /// Builds (0, c, t^{4d}) and runs eds on it.
    Witness(WitnessArgs),
    /// Samples random normalized triples.
    Sample(SampleArgs),
    /// 𝔾m coordinate of P on nodal fibers.
    NodalCoord(NodalArgs),
    /// K_X^2 and discrepancies for (g, n).
    Geography(GeographyArgs),
    /// Least certified n with K_X^2 > N.
    GeographySearch(SearchArgs),
    /// Re-runs a report and checks it reproduces byte for byte.
    #[serde(skip)]
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Invariants(_) => "invariants",
            Command::Eds(_) => "eds",
            Command::Heights(_) => "heights",
            Command::KummerVerify(_) => "kummer-verify",
            Command::Witness(_) => "witness",
            Command::Sample(_) => "sample",
            Command::NodalCoord(_) => "nodal-coord",
            Command::Geography(_) => "geography",
            Command::GeographySearch(_) => "geography-search",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Default)]
pub struct Output {
    pub seed: Option<u64>,
    pub records: Vec<Value>,
    pub findings: Map<String, Value>,
}

impl Output {
    fn set(&mut self, key: &str, v: Value) {
        self.findings.insert(key.to_string(), v);
    }
}

macro_rules! with_field {
    ($tag:expr, |$k:ident| $body:expr) => {
        match $tag {
            FieldTag::Q => {
                let $k = Rationals;
                $body
            }
            FieldTag::Fp(p) => {
                let $k = PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// Reads any model file so that the echoed inputs are self-contained.
pub fn resolve_inputs(cmd: &mut Command) -> Result<(), CliError> {
    match cmd {
        Command::Invariants(a) => a.model.resolve(),
        Command::Eds(a) => a.model.resolve(),
        Command::Heights(a) => a.model.resolve(),
        Command::NodalCoord(a) => a.model.resolve(),
        _ => Ok(()),
    }
}

/// Runs a resolved command other than `replay`.
pub fn execute(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Invariants(a) => {
            let spec = a.model.spec()?;
            with_field!(resolve_field(a.field, Some(spec))?, |k| invariants(
                &build_model(&k, spec)?
            ))
        }
        Command::Eds(a) => {
            let spec = with_d(a.model.spec()?, a.d);
            with_field!(resolve_field(a.field, Some(&spec))?, |k| eds(
                &build_model(&k, &spec)?,
                a.n_max
            ))
        }
        Command::Heights(a) => {
            let spec = with_d(a.model.spec()?, a.d);
            with_field!(resolve_field(a.field, Some(&spec))?, |k| heights(
                &build_model(&k, &spec)?,
                a.n_max
            ))
        }
        Command::KummerVerify(a) => {
            with_field!(a.field, |k| kummer_verify(&k, &a.f_coeffs, a.n_max))
        }
        Command::Witness(a) => with_field!(a.field, |k| witness(&k, a)),
        Command::Sample(a) => with_field!(a.field, |k| sample(&k, a)),
        Command::NodalCoord(a) => {
            with_field!(resolve_field(a.field, a.model.model.as_ref())?, |k| nodal(
                &k, a
            ))
        }
        Command::Geography(a) => Ok(geography_output(&geography(a.g, a.n)?)),
        Command::GeographySearch(a) => search(a),
        Command::Replay(_) => Err(CliError::Input("replay cannot be nested".into())),
    }
}

fn with_d(spec: &ModelSpec, d: Option<u32>) -> ModelSpec {
    let mut s = spec.clone();
    if d.is_some() {
        s.d = d;
    }
    s
}

fn fibers_json<F: Field>(built: &BuiltModel<F>) -> Result<Value, CliError> {
    let mut out = Vec::new();
    for (pl, ty) in bad_fibers(&built.model)? {
        let mut v = json!({"place": place(&pl), "degree": pl.degree(), "type": ty.to_string()});
        if let Some(p) = &built.point {
            if let Ok(c) = component_of_section(&built.model, p, &pl) {
                v["component"] = Value::String(c.to_string());
            }
        }
        out.push(v);
    }
    Ok(Value::Array(out))
}

fn invariants<F: Field>(built: &BuiltModel<F>) -> Result<Output, CliError> {
    let m = &built.model;
    let inv = m.invariants();
    let gap = minimality_gap(m)?;
    let mut out = Output::default();
    out.set("c4", ratfunc(&inv.c4));
    out.set("c6", ratfunc(&inv.c6));
    out.set("delta", ratfunc(&inv.delta));
    out.set("j", inv.j.as_ref().map_or(Value::Null, ratfunc));
    out.set("D", divisor(&gap.d));
    out.set("D_prime", divisor(&gap.d_prime));
    out.set("minimality_gap", divisor(&gap.gap));
    out.set("minimal", Value::Bool(gap.gap.is_zero()));
    out.set("d", json!(built.d));
    out.set("bad_fibers", fibers_json(built)?);
    Ok(out)
}

fn scan_records<F: Field>(scan: &ScanReport<F>) -> Vec<Value> {
    scan.records
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "dn": divisor(&r.dn),
                "dn_prime": divisor(&r.dn_prime),
                "reduced": r.reduced,
                "gcd_degree": r.gcd_degree.degree,
                "inseparable": r.gcd_degree.inseparable,
            })
        })
        .collect()
}

fn scan_findings<F: Field>(out: &mut Output, scan: &ScanReport<F>) {
    let witnesses: Map<String, Value> = scan
        .witnesses
        .iter()
        .map(|(m, w)| (m.to_string(), place_mults(w)))
        .collect();
    out.set("M", json!(scan.m));
    out.set("non_reduced_found", Value::Bool(!scan.m.is_empty()));
    out.set("witnesses", Value::Object(witnesses));
    out.set("T", Value::Array(scan.t.iter().map(place).collect()));
    out.set("disjoint", Value::Bool(scan.disjoint()));
    out.set("overlapping", json!(scan.overlapping));
    out.set("divisibility_failures", json!(scan.divisibility_failures));
    out.set("skipped", json!(scan.skipped));
    let max_gcd = scan
        .records
        .iter()
        .map(|r| r.gcd_degree.degree)
        .max()
        .unwrap_or(0);
    out.set("max_gcd_degree", json!(max_gcd));
}

fn torsion_or<T>(r: eds_core::Result<T>, out: &mut Output) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(EdsError::TorsionSection { order }) => {
            out.set("torsion_order", json!(order));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn eds<F: Field>(built: &BuiltModel<F>, n_max: u64) -> Result<Output, CliError> {
    let p = built.section()?;
    let mut out = Output::default();
    out.set("d", json!(built.d));
    let Some(scan) = torsion_or(scan_m(&built.model, p, built.d, n_max), &mut out)? else {
        return Ok(out);
    };
    out.records = scan_records(&scan);
    scan_findings(&mut out, &scan);
    let law = scan
        .records
        .iter()
        .all(|r| r.dn.degree() == built.d * ((r.n * r.n) as i64 - 1));
    out.set("degree_law", Value::Bool(law));
    if let Some(triple) = &built.triple {
        let routes = match compare_routes(triple, n_max) {
            Ok(cs) => json!({
                "agree_at_good_places": cs.iter().all(|c| c.agree_at_good_places),
                "compared": cs.iter().map(|c| c.n).collect::<Vec<_>>(),
                "bad_place_differences": cs.iter()
                    .filter(|c| !c.bad_place_difference.is_zero())
                    .map(|c| json!({"n": c.n, "difference": divisor(&c.bad_place_difference)}))
                    .collect::<Vec<_>>(),
            }),
            Err(e @ EdsError::Minimality(_)) => json!({"unavailable": e.to_string()}),
            Err(e) => return Err(e.into()),
        };
        out.set("routes", routes);
    }
    Ok(out)
}

fn heights<F: Field>(built: &BuiltModel<F>, n_max: u64) -> Result<Output, CliError> {
    let p = built.section()?;
    let mut out = Output::default();
    let h = height_with_corrections(&built.model, p, built.d)?;
    out.set("d", json!(h.d));
    out.set("p_dot_o", json!(h.p_dot_o));
    out.set("ht", rational(&h.ht));
    out.set("torsion_order", json!(h.torsion_order));
    let corrections: Vec<Value> = h
        .corrections
        .iter()
        .map(|c| {
            json!({
                "place": place(&c.place),
                "type": c.kind.to_string(),
                "component": c.component.to_string(),
                "value": rational(&c.value),
            })
        })
        .collect();
    out.set("corrections", Value::Array(corrections));
    out.set("total_correction", rational(&h.total_correction()));
    if h.torsion_order.is_some() {
        return Ok(out);
    }
    let cf = class_formula_check(&built.model, p, built.d, n_max)?;
    out.records = cf
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "nP_dot_O": r.computed,
                "predicted": r.predicted,
                "nP_dot_P": r.translated.map(|t| t.0),
                "nP_dot_P_predicted": r.translated.map(|t| t.1),
                "holds": r.holds(),
            })
        })
        .collect();
    out.set("class_formula_holds", Value::Bool(cf.holds()));
    out.set("class_formula_violations", json!(cf.violations));
    Ok(out)
}

fn kummer_verify<F: Field>(k: &F, coeffs: &[String], n_max: u64) -> Result<Output, CliError> {
    let [a, b, c] = coeffs else {
        return Err(CliError::Input(format!(
            "--f-coeffs needs three values, got {}",
            coeffs.len()
        )));
    };
    let parse = |name: &str, s: &String| {
        parse_elem(k, s).map_err(|e| CliError::Parse {
            context: format!("--f-coeffs {name}"),
            source: e,
        })
    };
    let input = KummerInput::new(parse("a", a)?, parse("b", b)?, parse("c", c)?);
    let fam = kummer_family(k, &input)?;
    let scan = scan_m(&fam.model, &fam.point, fam.d, n_max)?;
    let mut out = Output::default();
    out.set("f", poly(&fam.f));
    let mut degrees = Vec::new();
    let mut formula = true;
    let mut reduced = true;
    for r in &scan.records {
        let n2 = (r.n * r.n) as i64;
        let predicted = if r.n % 2 == 1 {
            (n2 - 1) / 2
        } else {
            (n2 - 4) / 2
        };
        let gd = r.gcd_degree.degree;
        formula &= r.dn.degree() == predicted;
        if r.n >= 2 {
            reduced &= gd == 0 && !r.gcd_degree.inseparable;
            degrees.push(r.dn.degree());
        }
        let mut rec = json!({
            "n": r.n,
            "dn": divisor(&r.dn),
            "degree": r.dn.degree(),
            "predicted": predicted,
            "gcd_degree": gd,
            "dn_prime_reduced": r.reduced,
        });
        rec["matches"] = Value::Bool(r.dn.degree() == predicted);
        out.records.push(rec);
    }
    let all_star = fam
        .bad_fibers
        .iter()
        .all(|(_, t)| *t == eds_core::weierstrass::KodairaType::I0Star);
    let h = height_with_corrections(&fam.model, &fam.point, fam.d)?;
    let one = num_rational::BigRational::from_integer(1.into());
    out.set("degrees", json!(degrees));
    out.set("degrees_start_at", json!(2));
    out.set("degree_formula_holds", Value::Bool(formula));
    out.set("all_reduced", Value::Bool(reduced));
    out.set(
        "bad_fibers",
        fibers_json(&BuiltModel {
            model: fam.model.clone(),
            point: Some(fam.point.clone()),
            d: fam.d,
            triple: None,
        })?,
    );
    out.set("all_I0_star", Value::Bool(all_star));
    out.set("height", rational(&h.ht));
    out.set("height_is_one", Value::Bool(h.ht == one));
    scan_findings(&mut out, &scan);
    out.set(
        "verified",
        Value::Bool(formula && reduced && all_star && h.ht == one),
    );
    Ok(out)
}

fn witness<F: Field>(k: &F, a: &WitnessArgs) -> Result<Output, CliError> {
    let c = parse_elem(k, &a.c).map_err(|e| CliError::Parse {
        context: "--c".into(),
        source: e,
    })?;
    let triple = witness_family(k, c, a.d)?;
    let disc = triple.discriminant();
    let mut out = eds(&BuiltModel::from_triple(triple.clone()), a.n_max)?;
    out.set("a4", poly(&triple.a4));
    out.set("discriminant", poly(&disc));
    out.set("in_v_delta", Value::Bool(true));
    Ok(out)
}

fn sample<F: Field>(k: &F, a: &SampleArgs) -> Result<Output, CliError> {
    let r = sample_v_delta(k, a.d, a.trials, a.n_max, a.seed)?;
    let mut out = Output {
        seed: Some(a.seed),
        ..Default::default()
    };
    out.records = r
        .records
        .iter()
        .map(|t| {
            let non_reduced: Map<String, Value> = t
                .non_reduced
                .iter()
                .map(|(m, w)| (m.to_string(), place_mults(w)))
                .collect();
            let bad: Vec<Value> = t
                .bad_fibers
                .iter()
                .map(|b| json!({"handle": poly(&b.handle), "order": b.order, "note": b.note}))
                .collect();
            json!({
                "index": t.index,
                "seed": t.seed,
                "a2": poly(&t.a2),
                "a3": poly(&t.a3),
                "a4": poly(&t.a4),
                "in_v_delta": t.in_v_delta,
                "torsion_order": t.torsion_order,
                "non_reduced": non_reduced,
                "bad_fibers": bad,
                "unexamined_zeros": t.unexamined_zeros,
                "error": t.error,
            })
        })
        .collect();
    out.set("trials", json!(r.trials()));
    out.set("v_delta_hits", json!(r.v_delta_hits()));
    out.set("torsion_sections", json!(r.torsion_sections()));
    out.set("torsion_at_bad_fiber", json!(r.torsion_at_bad_fiber()));
    out.set("non_reduced_trials", json!(r.non_reduced_trials()));
    out.set("unexamined_zeros", json!(r.unexamined_zeros()));
    Ok(out)
}

fn nodal<F: Field>(k: &F, a: &NodalArgs) -> Result<Output, CliError> {
    let built = match &a.model.model {
        Some(spec) => build_model(k, spec)?,
        None => {
            let c = parse_elem(k, &a.c).map_err(|e| CliError::Parse {
                context: "--c".into(),
                source: e,
            })?;
            BuiltModel::from_triple(witness_family(k, c, a.d)?)
        }
    };
    if !built.model.is_normalized() {
        return Err(CliError::Input(
            "nodal-coord needs the normalized chart".into(),
        ));
    }
    let delta = built.model.discriminant();
    let mut out = Output::default();
    let zeros = match &a.t0 {
        Some(s) => vec![parse_elem(k, s).map_err(|e| CliError::Parse {
            context: "--t0".into(),
            source: e,
        })?],
        None => {
            let num = delta.num();
            let zeros = k.roots(num).ok_or_else(|| {
                CliError::Input("zeros of the discriminant are not computable here".into())
            })?;
            out.set("discriminant_degree", json!(num.deg()));
            zeros
        }
    };
    out.set("zeros_examined", json!(zeros.len()));
    let m = &built.model;
    for t0 in &zeros {
        let at = |r: &eds_core::algebra::RatFunc<F>| r.eval(t0);
        let mut rec = json!({"t0": elem(k, t0)});
        match (at(&m.a2), at(&m.a3), at(&m.a4)) {
            (Some(a2), Some(a3), Some(a4)) => match nodal_gm_coordinate(k, &a2, &a3, &a4) {
                Ok(data) => {
                    let ext = &data.ext;
                    rec["node"] = json!([elem(k, &data.node_x), elem(k, &data.node_y)]);
                    rec["gamma_squared"] = elem(k, &data.gamma_squared);
                    rec["split"] = Value::Bool(!ext.is_field());
                    rec["coordinate"] = Value::String(ext.format(&data.coordinate));
                    rec["inverse"] = Value::String(ext.format(&ext.conj(&data.coordinate)));
                    rec["order"] = json!(root_of_unity_order_quad(ext, &data.coordinate, a.n_max));
                }
                Err(e) if e.is_internal() => return Err(e.into()),
                Err(e) => rec["note"] = Value::String(e.to_string()),
            },
            _ => rec["note"] = Value::String("a coefficient has a pole at t0".into()),
        }
        out.records.push(rec);
    }
    Ok(out)
}

fn geography_output(r: &GeographyReport) -> Output {
    let mut out = Output::default();
    out.set("g", json!(r.g));
    out.set("d", json!(r.d));
    out.set("n", json!(r.n));
    out.set("a", Value::String(r.a.to_string()));
    out.set("b", rational(&r.b));
    out.set("KX2", rational(&r.kx2));
    out.set("alpha", rational(&r.alpha));
    out.set("pg", json!(r.pg));
    out.set(
        "singularity",
        json!([r.singularity.0.to_string(), r.singularity.1.to_string()]),
    );
    out.set("log_terminal", Value::Bool(r.log_terminal()));
    out.set("ampleCertified", Value::Bool(r.ample_certified));
    out.set("reasons", json!(r.reasons));
    out
}

fn search(a: &SearchArgs) -> Result<Output, CliError> {
    let big_n: BigInt = a
        .big_n
        .trim()
        .parse()
        .map_err(|_| CliError::Input(format!("--N {} is not an integer", a.big_n)))?;
    let (n, r) = geography_search(a.g, &big_n)?;
    let mut out = geography_output(&r);
    out.set("N", Value::String(big_n.to_string()));
    out.set("found_n", json!(n));
    Ok(out)
}

pub fn report(cmd: &Command, out: Output, total_ms: f64) -> report::Report {
    let mut inputs = serde_json::to_value(cmd).expect("inputs serialize");
    let inputs = inputs
        .get_mut("inputs")
        .map(Value::take)
        .unwrap_or(Value::Null);
    report::Report {
        command: cmd.name().to_string(),
        version: report::VERSION.to_string(),
        seed: out.seed,
        inputs,
        records: out.records,
        findings: out.findings,
        timings: report::Timings { total_ms },
    }
}
