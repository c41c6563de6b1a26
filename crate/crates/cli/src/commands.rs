use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};

use adjunct_core::adjoint::{check_superadditivity, check_second_adjoint, nonvanishing_report};
use adjunct_core::classify::classify;
use adjunct_core::genus::{chi_h_i, g_i};
use adjunct_core::hrr::{chi_divisor, chi_multi};
use adjunct_core::semigroup::{closure, coin_solve, empirical_min_r, guaranteed_threshold, parse_set, AdjointPair};
use adjunct_core::suites::run_suite;
use adjunct_core::variety::{by_name, standard_fourfolds, CATALOG_NAMES};
use adjunct_core::{
    DeclaredInvariants, DivisorClass, Error, Kappa, MultiIndex, Rational, Suite, SuiteConfig, VarietyData,
    VerificationReport,
};

use crate::{CatalogAction, Cli, Command, Format, Status};

/// Resolves `catalog:NAME` (directory override first) or a JSON file path.
pub fn load_variety(source: &str, catalog_dir: Option<&Path>) -> Result<VarietyData> {
    if let Some(name) = source.strip_prefix("catalog:") {
        if let Some(dir) = catalog_dir {
            let path = dir.join(format!("{name}.json"));
            if path.is_file() {
                return VarietyData::from_path(&path).with_context(|| format!("loading {}", path.display()));
            }
        }
        return Ok(by_name(name)?);
    }
    VarietyData::from_path(source).with_context(|| format!("loading {source}"))
}

fn divisor(v: &VarietyData, expr: &str) -> Result<DivisorClass> {
    v.parse_divisor(expr).with_context(|| format!("divisor `{expr}` on {}", v.name()))
}

fn render_record(record: Map<String, Value>, format: Format) -> Result<String> {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&Value::Object(record))? + "\n",
        Format::Table => {
            let width = record.keys().map(String::len).max().unwrap_or(0);
            record
                .iter()
                .filter(|(_, v)| !v.is_null() && v.as_str() != Some(""))
                .map(|(k, v)| format!("{k:<width$}  {}\n", plain(v)))
                .collect()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(record.keys())?;
            w.write_record(record.values().map(plain))?;
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Table => report.to_table(),
    }
}

fn report_status(report: &VerificationReport) -> Status {
    if !report.passed() {
        Status::Fail
    } else if report.summary.abstained > 0 {
        Status::Abstained
    } else {
        Status::Pass
    }
}

fn record(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

pub fn run(cli: &Cli) -> Result<(String, Status)> {
    let dir = cli.catalog_dir.as_deref();
    let load = |s: &str| load_variety(s, dir);
    match &cli.command {
        Command::Chi { variety, divisor: expr, expand } => {
            let v = load(variety)?;
            let d = divisor(&v, expr)?;
            let mut out = record([
                ("variety", json!(v.name())),
                ("divisor", json!(v.format_divisor(&d))),
                ("chi", json!(chi_divisor(&v, &d)?)),
            ]);
            if *expand {
                let poly = chi_multi(&v, std::slice::from_ref(&d))?;
                let coeffs: Vec<String> = (0..=v.dim() as u32)
                    .map(|j| poly.coeff(&MultiIndex(vec![j])).to_string())
                    .collect();
                out.insert("coefficients".into(), json!(format!("({})", coeffs.join(","))));
            }
            Ok((render_record(out, cli.format)?, Status::Pass))
        }
        Command::Genus { variety, index, bundles } => {
            let v = load(variety)?;
            let classes = bundles.iter().map(|b| divisor(&v, b)).collect::<Result<Vec<_>>>()?;
            let names: Vec<String> = classes.iter().map(|c| v.format_divisor(c)).collect();
            let out = record([
                ("variety", json!(v.name())),
                ("i", json!(index)),
                ("bundles", json!(names.join(", "))),
                ("g", json!(g_i(&v, *index, &classes)?)),
                ("chi_h", json!(chi_h_i(&v, *index, &classes)?)),
            ]);
            Ok((render_record(out, cli.format)?, Status::Pass))
        }
        Command::Verify { suite, seed, draws, m_max, variety } => {
            let suite: Suite = suite.parse()?;
            let varieties = if variety.is_empty() {
                standard_fourfolds()
            } else {
                variety.iter().map(|s| load(s)).collect::<Result<Vec<_>>>()?
            };
            let cfg = SuiteConfig { seed: *seed, draws: *draws, m_max: *m_max, varieties };
            let report = run_suite(suite, &cfg)?;
            Ok((render_report(&report, cli.format), report_status(&report)))
        }
        Command::Semigroup { set, threshold, bound, coin, entry, r_max } => {
            let mut out = Map::new();
            if let Some(text) = set {
                let s = parse_set(text)?;
                out.insert("set".into(), json!(text));
                out.insert("min".into(), json!(s.first()));
                if *threshold {
                    out.insert("threshold".into(), json!(guaranteed_threshold(&s)?));
                }
                if let Some(b) = bound {
                    let c = closure(&s, *b)?;
                    let members: Vec<String> = c.members().iter().map(u64::to_string).collect();
                    out.insert("closure".into(), json!(members.join(",")));
                }
            }
            if let Some(text) = coin {
                let parts = text
                    .split(',')
                    .map(|t| t.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .with_context(|| format!("coin problem `{text}`"))?;
                let [p, q, l] = parts[..] else { bail!(Error::InvalidInput("--coin needs p,q,l".into())) };
                let (i, j) = coin_solve(p, q, l)?;
                out.insert("coin".into(), json!(format!("{l} = {p}*{i} + {q}*{j}")));
            }
            let mut status = Status::Pass;
            if !entry.is_empty() {
                let loaded = entry
                    .iter()
                    .map(|e| {
                        let (src, l) = e
                            .rsplit_once('=')
                            .ok_or_else(|| Error::InvalidInput(format!("entry `{e}` is not SOURCE=L")))?;
                        let v = load(src)?;
                        let l = divisor(&v, l)?;
                        Ok((v, l))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let pairs = loaded
                    .iter()
                    .map(|(v, l)| AdjointPair::new(v, l.clone()))
                    .collect::<adjunct_core::Result<Vec<_>>>()?;
                let m = empirical_min_r(&pairs, *r_max)?;
                out.insert("min_r".into(), json!(m.min_r));
                out.insert("eventual_threshold".into(), json!(m.eventual_threshold));
                out.insert("abstentions".into(), json!(m.abstentions.len()));
                if !m.abstentions.is_empty() {
                    status = Status::Abstained;
                }
            }
            if out.is_empty() {
                bail!(Error::InvalidInput("nothing to do: give --set, --coin or --entry".into()));
            }
            Ok((render_record(out, cli.format)?, status))
        }
        Command::Classify { variety, l, fine_type, case, tau } => {
            let v = load(variety)?;
            let l = divisor(&v, l)?;
            let mut inv = DeclaredInvariants::from_variety(&v, &l);
            inv.fine_type = fine_type.as_deref().map(str::parse).transpose()?;
            inv.fujita = case.clone();
            inv.tau = tau
                .as_deref()
                .map(|t| t.parse::<Rational>().map_err(|e| Error::InvalidInput(format!("tau `{t}`: {e}"))))
                .transpose()?;
            let label = classify(&inv)?;
            let kappas: Vec<String> = inv
                .kappa
                .iter()
                .map(|(a, k): (&u32, &Kappa)| format!("kappa(K+{a}L)={k}"))
                .collect();
            let out = record([
                ("label", json!(label.primary())),
                ("type", json!(label.type_label)),
                ("type_certainty", json!(label.type_certainty.to_string())),
                ("declared", json!(kappas.join(" "))),
                ("case", json!(label.fujita)),
                ("notes", json!(label.notes.join("; "))),
            ]);
            Ok((render_record(out, cli.format)?, Status::Pass))
        }
        Command::Bounds { variety, l, m_max } => {
            let v = load(variety)?;
            let l = divisor(&v, l)?;
            let mut report = nonvanishing_report(&v, &l, *m_max)?.to_verification();
            if v.kappa_x().is_some_and(Kappa::is_nonnegative) {
                report.merge(check_second_adjoint(&v, &l)?.to_verification());
            }
            report.merge(check_superadditivity(&v, &l, *m_max)?.to_verification());
            report.suite = "bounds".into();
            Ok((render_report(&report, cli.format), report_status(&report)))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let out = record([("catalog", json!(CATALOG_NAMES.join(", ")))]);
                Ok((render_record(out, cli.format)?, Status::Pass))
            }
            CatalogAction::Show { source } => Ok((load(source)?.to_json() + "\n", Status::Pass)),
            CatalogAction::Export { source, out } => {
                let v = load(source)?;
                std::fs::write(out, v.to_json() + "\n").with_context(|| format!("writing {}", out.display()))?;
                let rec = record([("exported", json!(v.name())), ("path", json!(out.display().to_string()))]);
                Ok((render_record(rec, cli.format)?, Status::Pass))
            }
            CatalogAction::Validate { source } => {
                let report = load(source)?.validate();
                Ok((render_report(&report, cli.format), report_status(&report)))
            }
        },
    }
}
