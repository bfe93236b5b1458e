use std::io::Write;

use anyhow::{bail, Context, Result};
use cbent_core::analysis::{c_ddt, c_uniformity};
use cbent_core::families::build_source;
use cbent_core::fnrep::parse_constant;
use cbent_core::spectra::{walsh1_spectrum, walsh2_spectrum};
use cbent_core::{FieldCtx, FieldElem, FnTable, Method, Predicate, PredicateReport, Witness};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{parse_d_range, CSet, SourceArgs};
use crate::{Format, Kind, Outcome};

pub const CHECK_CSV_HEADER: &str = "schema,predicate,c,verdict,witness,method,elapsed_ms,caveat";
pub const SCAN_CSV_HEADER: &str = "schema,field,d,c,gcd,delta,bent1";

fn parse_preds(s: &str) -> Result<Vec<Predicate>> {
    if s.trim() == "all" {
        return Ok(Predicate::ALL.to_vec());
    }
    s.split(',')
        .map(|t| t.trim().parse::<Predicate>().map_err(Into::into))
        .collect()
}

/// "u=3;b=5", or empty when there is no witness.
fn witness_cell(w: &Option<Witness>) -> String {
    let Some(w) = w else { return String::new() };
    match serde_json::to_value(w) {
        Ok(Value::Object(m)) => m
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";"),
        _ => String::new(),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn check(
    out: &mut dyn Write,
    src: &SourceArgs,
    cset: &str,
    preds: &str,
    method: Option<&str>,
    expect: Option<bool>,
    format: Format,
    deterministic: bool,
) -> Result<Outcome> {
    let f = src.load()?;
    let cs = cset.parse::<CSet>()?.resolve(f.cod())?;
    let preds = parse_preds(preds)?;
    let method = method.map(|m| m.parse::<Method>()).transpose()?;
    if format == Format::Csv {
        writeln!(out, "{CHECK_CSV_HEADER}")?;
    }
    let mut mismatch = false;
    for &pred in &preds {
        for &c in &cs {
            let mut r = PredicateReport::run(&f, pred, c, method)?;
            if deterministic {
                r.elapsed_ms = 0;
            }
            mismatch |= expect.is_some_and(|e| e != r.verdict);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&r)?)?,
                Format::Csv => writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.schema,
                    r.predicate,
                    r.c,
                    r.verdict,
                    witness_cell(&r.witness),
                    r.method,
                    r.elapsed_ms,
                    r.caveat.unwrap_or("")
                )?,
            }
        }
    }
    Ok(if mismatch {
        Outcome::Mismatch
    } else {
        Outcome::Ok
    })
}

/// One catalog row of `scan-monomials`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub d: u64,
    pub c: u32,
    pub gcd: u64,
    pub delta: u32,
    pub bent1: bool,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn scan_rows(ctx: &std::sync::Arc<FieldCtx>, ds: &[u64], cs: &[FieldElem]) -> Vec<ScanRow> {
    let units = ctx.order() as u64 - 1;
    ds.par_iter()
        .flat_map_iter(|&d| {
            let f = FnTable::monomial(ctx.clone(), d);
            cs.iter()
                .map(|&c| ScanRow {
                    d,
                    c: c.0,
                    gcd: gcd(d, units),
                    delta: c_uniformity(&f, c),
                    bent1: Predicate::Bent1
                        .evaluate(&f, c, None)
                        .expect("default method")
                        .holds,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn scan_monomials(
    out: &mut dyn Write,
    field: &str,
    d: &str,
    cset: &str,
    format: Format,
) -> Result<Outcome> {
    let ctx = FieldCtx::parse(field).with_context(|| format!("bad --field {field:?}"))?;
    let ds = parse_d_range(d, ctx.order())?;
    if let Some(&big) = ds.iter().find(|&&d| d >= ctx.order() as u64) {
        bail!("exponent {big} is out of range for {}", ctx.spec());
    }
    let cs = cset.parse::<CSet>()?.resolve(&ctx)?;
    let field_label = field.trim();
    let rows = scan_rows(&ctx, &ds, &cs);
    if format == Format::Csv {
        writeln!(out, "{SCAN_CSV_HEADER}")?;
    }
    for r in rows {
        match format {
            Format::Csv => writeln!(
                out,
                "1,{field_label},{},{},{},{},{}",
                r.d, r.c, r.gcd, r.delta, r.bent1
            )?,
            Format::Json => writeln!(
                out,
                "{}",
                json!({"schema": 1, "field": field_label, "d": r.d, "c": r.c, "gcd": r.gcd, "delta": r.delta, "bent1": r.bent1})
            )?,
        }
    }
    Ok(Outcome::Ok)
}

fn coeff_cell(row: &Value) -> String {
    row["coeffs"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .map(|c| c.to_string().trim_matches('"').to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

pub fn spectrum(
    out: &mut dyn Write,
    src: &SourceArgs,
    kind: Kind,
    format: Format,
) -> Result<Outcome> {
    let f = src.load()?;
    let (name, rows) = match kind {
        Kind::Walsh1 => ("walsh1", walsh1_spectrum(&f)?.rows()),
        Kind::Walsh2 => ("walsh2", walsh2_spectrum(&f)?.rows()),
    };
    match format {
        Format::Json => writeln!(out, "{}", json!({"schema": 1, "kind": name, "rows": rows}))?,
        Format::Csv => {
            let two_d = kind == Kind::Walsh1;
            writeln!(
                out,
                "{}",
                if two_d {
                    "a,b,coeffs,re,im"
                } else {
                    "a,coeffs,re,im"
                }
            )?;
            for r in &rows {
                let lead = if two_d {
                    format!("{},{}", r["a"], r["b"])
                } else {
                    r["a"].to_string()
                };
                writeln!(
                    out,
                    "{lead},{},{},{}",
                    coeff_cell(r),
                    r["approx"][0],
                    r["approx"][1]
                )?;
            }
        }
    }
    Ok(Outcome::Ok)
}

pub fn ddt(out: &mut dyn Write, src: &SourceArgs, c: &str, format: Format) -> Result<Outcome> {
    let f = src.load()?;
    let c = parse_constant(c, f.cod()).with_context(|| format!("bad --c {c:?}"))?;
    let t = c_ddt(&f, c);
    let (delta, a, b) = t.max_entry();
    match format {
        Format::Json => {
            let rows: Vec<&[u32]> = f.dom().elements().map(|a| t.row(a)).collect();
            writeln!(
                out,
                "{}",
                json!({"schema": 1, "c": c.0, "delta": delta, "max_at": {"a": a.0, "b": b.0}, "rows": rows})
            )?;
        }
        Format::Csv => {
            let cols: Vec<String> = (0..t.cols).map(|b| format!("b{b}")).collect();
            writeln!(out, "a,{}", cols.join(","))?;
            for a in f.dom().elements() {
                let row: Vec<String> = t.row(a).iter().map(u32::to_string).collect();
                writeln!(out, "{},{}", a.0, row.join(","))?;
            }
        }
    }
    Ok(Outcome::Ok)
}

pub fn family(out: &mut dyn Write, field: &str, spec: &str) -> Result<Outcome> {
    let ctx = FieldCtx::parse(field).with_context(|| format!("bad --field {field:?}"))?;
    let f = build_source(spec, &ctx)?;
    write!(out, "{}", f.to_table_file())?;
    Ok(Outcome::Ok)
}
