//! The five subcommands, each rendering its output and choosing an exit code.

use std::fmt::Write as _;

use gwzeta::varieties::{PointCountSource, SourceKind};
use gwzeta::zeta::{
    cellular_closed_form, disc_series_direct, dlog_zeta, euler_characteristic_int, fit_dlog_rational,
    res_p1_closed_form, FactorList, ZetaReport,
};
use gwzeta::{FqTag, GwFq, GwFqRing, Series};
use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::report::{int_value, JsonReport, SCHEMA};
use crate::spec::{parse, VarietySpec};
use crate::suites;
use crate::{CliError, EXIT_INCONSISTENT, EXIT_OK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub q: Vec<u64>,
    pub order: usize,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options { q: Vec::new(), order: 12, format: Format::Text }
    }
}

/// Rendered output plus the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// Non-fatal diagnostics for stderr.
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: EXIT_OK, warnings: Vec::new() }
    }

    fn warn(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }
}

/// Shape warnings from every Weil-data leaf of `source`.
pub fn source_warnings(source: &PointCountSource) -> Vec<String> {
    match source.kind() {
        SourceKind::Weil(data) => data.warnings().into_iter().map(|w| format!("{}: {w}", source.label())).collect(),
        SourceKind::Product(a, b) | SourceKind::DisjointUnion(a, b) => {
            let mut out = source_warnings(a);
            out.extend(source_warnings(b));
            out
        }
        _ => Vec::new(),
    }
}

/// The field from `--q`, cross-checked against any file leaf, or taken from
/// the file when `--q` is absent.
fn resolve_field(spec: &VarietySpec, qs: &[u64]) -> Result<FqTag, CliError> {
    let flag = match qs {
        [] => None,
        [q] => Some(FqTag::new(*q)?),
        _ => return Err(CliError::Usage("this command takes a single --q".into())),
    };
    match (flag, spec.file_field()?) {
        (Some(f), Some(g)) if f != g => {
            Err(CliError::Usage(format!("--q {} disagrees with the file, which is over F_{}", f.q(), g.q())))
        }
        (Some(f), _) | (None, Some(f)) => Ok(f),
        (None, None) => Err(CliError::Usage("--q is required".into())),
    }
}

fn load(spec_text: &str, opts: &Options) -> Result<(VarietySpec, PointCountSource), CliError> {
    let spec = parse(spec_text)?;
    let field = resolve_field(&spec, &opts.q)?;
    let source = spec.build(field)?;
    Ok((spec, source))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn series_lines(out: &mut String, series: &Series<GwFqRing>) {
    for (k, c) in series.coeffs().iter().enumerate() {
        let _ = writeln!(out, "t^{k}: {c}");
    }
}

fn realization_rows(out: &mut String, series: &Series<GwFqRing>) {
    let _ = writeln!(out, "rank: {}", join(series.coeffs().iter().map(GwFq::rank)));
    let _ = writeln!(out, "disc: {}", join(series.coeffs().iter().map(GwFq::disc_bit)));
}

fn standard_checks(
    report: &ZetaReport,
    source: &PointCountSource,
    order: usize,
) -> Result<Vec<(&'static str, bool)>, CliError> {
    let mut checks = vec![
        ("rank_equals_count", true),
        ("disc_two_path", disc_series_direct(source, order)? == report.disc_series),
        ("disc_odd_m_trivial", report.disc_series.iter().step_by(2).all(|&d| d == 0)),
    ];
    if let Some(cf) = &report.closed_form {
        checks.push(("closed_form", cf.expand(order) == report.enriched));
    }
    Ok(checks)
}

pub fn cmd_zeta(spec_text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let (spec, source) = load(spec_text, opts)?;
    let field = source.field();
    let report = dlog_zeta(&source, opts.order)?;
    let checks = standard_checks(&report, &source, opts.order)?;
    let output = match opts.format {
        Format::Json => {
            let mut json = JsonReport::new(field.q(), &spec.to_string(), &report.enriched);
            if let Some(cf) = &report.closed_form {
                json = json.with_closed_form(cf);
            }
            for (name, ok) in &checks {
                json = json.check(name, *ok);
            }
            json.to_json() + "\n"
        }
        Format::Text => {
            let mut out = format!("dlog zeta of {spec} over {field}, order {}\n", opts.order);
            series_lines(&mut out, &report.enriched);
            realization_rows(&mut out, &report.enriched);
            if let Some(sign) = &report.sign_series {
                let _ = writeln!(out, "sign: {}", join(sign.coeffs()));
            }
            out
        }
    };
    Ok(Outcome::ok(output).warn(source_warnings(&source)))
}

fn closed_form_for(
    spec: &VarietySpec,
    field: FqTag,
    order: usize,
) -> Result<(FactorList<GwFqRing>, Series<GwFqRing>), CliError> {
    if let Some(cells) = spec.cells()? {
        return Ok(cellular_closed_form(field, &cells, order));
    }
    if *spec == VarietySpec::ResP1 {
        return Ok(res_p1_closed_form(field, order)?);
    }
    Err(gwzeta::zeta::ZetaError::NoCellData(spec.to_string()).into())
}

pub fn cmd_cellular(spec_text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let spec = parse(spec_text)?;
    let field = resolve_field(&spec, &opts.q)?;
    let (list, expansion) = closed_form_for(&spec, field, opts.order)?;
    let source = spec.build(field)?;
    let report = dlog_zeta(&source, opts.order)?;
    let matched = report.enriched == expansion;
    let code = if matched { EXIT_OK } else { EXIT_INCONSISTENT };
    let output = match opts.format {
        Format::Json => {
            JsonReport::new(field.q(), &spec.to_string(), &expansion)
                .with_closed_form(&list)
                .check("pipeline_match", matched)
                .to_json()
                + "\n"
        }
        Format::Text => {
            let mut out = format!("closed form of {spec} over {field}, order {}\n", opts.order);
            let _ = writeln!(out, "{list}");
            series_lines(&mut out, &expansion);
            let _ = writeln!(out, "pipeline: {}", if matched { "MATCH" } else { "MISMATCH" });
            out
        }
    };
    Ok(Outcome { output, code, warnings: Vec::new() })
}

pub fn cmd_fit(spec_text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let (spec, source) = load(spec_text, opts)?;
    let field = source.field();
    let report = dlog_zeta(&source, opts.order)?;
    let list = fit_dlog_rational(&report.enriched, None)?;
    let output = match opts.format {
        Format::Json => {
            JsonReport::new(field.q(), &spec.to_string(), &report.enriched)
                .with_closed_form(&list)
                .check("fit_reexpands", list.expand(opts.order) == report.enriched)
                .to_json()
                + "\n"
        }
        Format::Text => {
            let mut out = format!("fit of {spec} over {field}, order {}: {} factors\n", opts.order, list.len());
            let _ = writeln!(out, "{list}");
            for f in list.factors() {
                let _ = writeln!(out, "  weight {}  pole {}  mult {}", f.weight, f.pole, f.mult);
            }
            out
        }
    };
    Ok(Outcome::ok(output).warn(source_warnings(&source)))
}

pub fn cmd_check(suite: &str, opts: &Options) -> Result<Outcome, CliError> {
    let qs = if opts.q.is_empty() { vec![3, 5, 7] } else { opts.q.clone() };
    let fields = qs.iter().map(|&q| FqTag::new(q)).collect::<Result<Vec<_>, _>>()?;
    let results = suites::run(suite, &fields, opts.order)?;
    let all_pass = results.iter().all(|(_, ok)| *ok);
    let output = match opts.format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("schema".into(), Value::String(SCHEMA.into()));
            obj.insert("suite".into(), Value::String(suite.into()));
            obj.insert("q".into(), Value::Array(qs.iter().map(|&q| int_value(&q.into())).collect()));
            obj.insert("order".into(), int_value(&opts.order.into()));
            let checks = results.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
            obj.insert("checks".into(), Value::Object(checks));
            serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for (name, ok) in &results {
                let _ = writeln!(out, "[{}] {name}", if *ok { "PASS" } else { "FAIL" });
            }
            let passed = results.iter().filter(|(_, ok)| *ok).count();
            let _ = writeln!(out, "{passed}/{} passed", results.len());
            out
        }
    };
    Ok(Outcome { output, code: if all_pass { EXIT_OK } else { EXIT_INCONSISTENT }, warnings: Vec::new() })
}

pub fn cmd_euler(spec_text: &str, opts: &Options) -> Result<Outcome, CliError> {
    let spec = parse(spec_text)?;
    let cells = spec.cells()?.ok_or_else(|| gwzeta::zeta::ZetaError::NoCellData(spec.to_string()))?;
    let chi = euler_characteristic_int(&cells);
    let field = match opts.q.as_slice() {
        [] => None,
        [q] => Some(FqTag::new(*q)?),
        _ => return Err(CliError::Usage("this command takes a single --q".into())),
    };
    let reduced = field.map(|f| chi.reduce_mod_p(f));
    let hyperbolic = (chi.c1 == chi.cm1).then(|| chi.c1.clone());
    let output = match opts.format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("schema".into(), Value::String(SCHEMA.into()));
            if let Some(f) = field {
                obj.insert("q".into(), int_value(&f.q().into()));
            }
            obj.insert("variety".into(), Value::String(spec.to_string()));
            let mut gw = Map::new();
            gw.insert("plus_one".into(), int_value(&chi.c1));
            gw.insert("minus_one".into(), int_value(&chi.cm1));
            obj.insert("euler".into(), Value::Object(gw));
            if let Some(c) = &hyperbolic {
                obj.insert("hyperbolic_multiple".into(), int_value(c));
            }
            if let Some(x) = &reduced {
                let mut e = Map::new();
                e.insert("rank".into(), int_value(x.rank()));
                e.insert("disc".into(), int_value(&BigInt::from(x.disc_bit())));
                obj.insert("reduced".into(), Value::Object(e));
            }
            serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut out = chi.to_string();
            match &reduced {
                Some(x) => {
                    let _ = write!(out, " = ({},{})", x.rank(), x.disc_bit());
                }
                None => {
                    if let Some(c) = &hyperbolic {
                        let _ = write!(out, " = {c}h");
                    }
                }
            }
            out.push('\n');
            if let (Some(c), Some(_)) = (&hyperbolic, &reduced) {
                let _ = writeln!(out, "hyperbolic: {c}h");
            }
            out
        }
    };
    Ok(Outcome::ok(output))
}
