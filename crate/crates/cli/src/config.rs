//! Shared option parsing: fields, function sources and c-sets.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use cbent_core::families::build_source;
use cbent_core::fnrep::{eval_to_table, parse_constant, parse_poly};
use cbent_core::gf::FieldSpec;
use cbent_core::{FieldCtx, FieldElem, FnTable, SubfieldEmbedding};
use clap::Args;

/// Where the function under test comes from.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Field as "p^n" or "p^n/c_n,...,c_0" (defining polynomial high to low).
    #[arg(long)]
    pub field: Option<String>,
    /// Polynomial expression, e.g. "x^3 + g*x^5".
    #[arg(long = "fn", group = "source")]
    pub poly: Option<String>,
    /// Family spec, e.g. "gold:k=1" or "do_trace:k=2,a=g^21".
    #[arg(long, group = "source")]
    pub family: Option<String>,
    /// Table file: "p n m" then p^n codomain indices.
    #[arg(long, group = "source")]
    pub table: Option<PathBuf>,
    /// Codomain subfield; with --fn the values are pushed through the relative trace.
    #[arg(long)]
    pub cod: Option<String>,
}

impl SourceArgs {
    pub fn field(&self) -> Result<Option<Arc<FieldCtx>>> {
        self.field
            .as_deref()
            .map(|s| FieldCtx::parse(s).with_context(|| format!("bad --field {s:?}")))
            .transpose()
    }

    fn cod(&self) -> Result<Option<Arc<FieldCtx>>> {
        self.cod
            .as_deref()
            .map(|s| FieldCtx::parse(s).with_context(|| format!("bad --cod {s:?}")))
            .transpose()
    }

    pub fn load(&self) -> Result<FnTable> {
        let field = self.field()?;
        let cod = self.cod()?;
        if let Some(path) = &self.table {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            return Ok(FnTable::from_table_file(&text, field, cod)?);
        }
        let field = field.ok_or_else(|| anyhow!("--field is required unless --table is given"))?;
        if let Some(spec) = &self.family {
            if cod.is_some() {
                bail!("--cod only applies to --fn and --table");
            }
            return build_source_strict(spec, &field);
        }
        let src = self
            .poly
            .as_deref()
            .ok_or_else(|| anyhow!("one of --fn, --family or --table is required"))?;
        let e = parse_poly(src, &field).with_context(|| format!("bad --fn {src:?}"))?;
        match cod {
            Some(sub) if sub.spec() != field.spec() => {
                let emb = SubfieldEmbedding::new(&field, sub)?;
                Ok(eval_to_table(&e, &field, Some(&emb))?)
            }
            _ => Ok(eval_to_table(&e, &field, None)?),
        }
    }
}

fn build_source_strict(spec: &str, field: &Arc<FieldCtx>) -> Result<FnTable> {
    if !spec.contains(':') {
        bail!("family spec {spec:?} needs the form name:key=value,...");
    }
    Ok(build_source(spec, field)?)
}

/// Which multipliers c to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CSet {
    All,
    AllBut1,
    /// The embedded copy of GF(p^m) inside the codomain.
    Subfield(u32),
    /// Constant expressions such as "0", "2", "g^3+g^2+g".
    List(Vec<String>),
}

impl FromStr for CSet {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "all" => CSet::All,
            "all-but-1" => CSet::AllBut1,
            _ => match s.strip_prefix("subfield:") {
                Some(m) => CSet::Subfield(
                    m.parse()
                        .with_context(|| format!("bad subfield degree {m:?}"))?,
                ),
                None if s.is_empty() => bail!("empty c-set"),
                None => CSet::List(s.split(',').map(|t| t.trim().to_string()).collect()),
            },
        })
    }
}

impl fmt::Display for CSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSet::All => f.write_str("all"),
            CSet::AllBut1 => f.write_str("all-but-1"),
            CSet::Subfield(m) => write!(f, "subfield:{m}"),
            CSet::List(v) => f.write_str(&v.join(",")),
        }
    }
}

impl CSet {
    /// The sorted, deduplicated multipliers in the codomain.
    pub fn resolve(&self, cod: &Arc<FieldCtx>) -> Result<Vec<FieldElem>> {
        let mut out: Vec<FieldElem> = match self {
            CSet::All => cod.elements().collect(),
            CSet::AllBut1 => cod.elements().filter(|&c| c != FieldElem::ONE).collect(),
            CSet::Subfield(m) => {
                let sub = Arc::new(FieldCtx::new(FieldSpec::builtin(cod.p(), *m)?)?);
                SubfieldEmbedding::new(cod, sub)?.image().collect()
            }
            CSet::List(items) => items
                .iter()
                .map(|t| parse_constant(t, cod).with_context(|| format!("bad c value {t:?}")))
                .collect::<Result<_>>()?,
        };
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Inclusive exponent range "lo..hi", a single value, or "all" (1..p^n−1).
pub fn parse_d_range(s: &str, order: u32) -> Result<Vec<u64>> {
    let s = s.trim();
    if s == "all" {
        return Ok((1..order as u64).collect());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .with_context(|| format!("bad range start in {s:?}"))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .with_context(|| format!("bad range end in {s:?}"))?;
        return Ok((lo..=hi).collect());
    }
    Ok(vec![s
        .parse()
        .with_context(|| format!("bad exponent {s:?}"))?])
}
