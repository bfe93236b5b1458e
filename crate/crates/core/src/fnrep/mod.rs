//! Lookup-table representation of (n,m)-functions GF(p^n) → GF(p^m).

mod parser;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{FieldCtx, FieldElem, FieldSpec, GfError, SubfieldEmbedding};

pub use parser::{parse_constant, parse_poly, ParseError, PolyExpr, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FnError {
    #[error("table has {got} entries, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("entry {value} at input {input} is outside the codomain of order {order}")]
    BadEntry {
        input: usize,
        value: u32,
        order: u32,
    },
    #[error("domain and codomain characteristics differ ({0} vs {1})")]
    CharacteristicMismatch(u32, u32),
    #[error("domain and codomain differ")]
    DomainMismatch,
    #[error("functions do not share domain and codomain")]
    ShapeMismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("malformed table file: {0}")]
    TableFormat(String),
}

/// A function GF(p^n) → GF(p^m) stored as its full value table.
#[derive(Clone)]
pub struct FnTable {
    dom: Arc<FieldCtx>,
    cod: Arc<FieldCtx>,
    table: Vec<FieldElem>,
}

impl fmt::Debug for FnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnTable")
            .field("dom", &self.dom.spec().to_string())
            .field("cod", &self.cod.spec().to_string())
            .field("table", &self.table)
            .finish()
    }
}

impl PartialEq for FnTable {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.table == other.table
    }
}

impl FnTable {
    pub fn new(
        dom: Arc<FieldCtx>,
        cod: Arc<FieldCtx>,
        table: Vec<FieldElem>,
    ) -> Result<Self, FnError> {
        if dom.p() != cod.p() {
            return Err(FnError::CharacteristicMismatch(dom.p(), cod.p()));
        }
        if table.len() != dom.size() {
            return Err(FnError::BadLength {
                expected: dom.size(),
                got: table.len(),
            });
        }
        if let Some((i, v)) = table.iter().enumerate().find(|(_, v)| !cod.contains(**v)) {
            return Err(FnError::BadEntry {
                input: i,
                value: v.0,
                order: cod.order(),
            });
        }
        Ok(FnTable { dom, cod, table })
    }

    pub fn from_fn(
        dom: Arc<FieldCtx>,
        cod: Arc<FieldCtx>,
        f: impl Fn(FieldElem) -> FieldElem,
    ) -> Result<Self, FnError> {
        let table = dom.elements().map(f).collect();
        Self::new(dom, cod, table)
    }

    pub fn identity(ctx: Arc<FieldCtx>) -> Self {
        let table = ctx.elements().collect();
        FnTable {
            dom: ctx.clone(),
            cod: ctx,
            table,
        }
    }

    pub fn constant(dom: Arc<FieldCtx>, cod: Arc<FieldCtx>, v: FieldElem) -> Result<Self, FnError> {
        Self::from_fn(dom, cod, |_| v)
    }

    /// x ↦ x^d on a single field.
    pub fn monomial(ctx: Arc<FieldCtx>, d: u64) -> Self {
        let table = ctx.elements().map(|x| ctx.pow(x, d)).collect();
        FnTable {
            dom: ctx.clone(),
            cod: ctx,
            table,
        }
    }

    pub fn dom(&self) -> &Arc<FieldCtx> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FieldCtx> {
        &self.cod
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.table
    }

    #[inline]
    pub fn at(&self, x: FieldElem) -> FieldElem {
        self.table[x.index()]
    }

    pub fn is_square(&self) -> bool {
        self.dom == self.cod
    }

    pub fn same_shape(&self, other: &FnTable) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    /// x ↦ c·F(x) for c in the codomain.
    pub fn scaled(&self, c: FieldElem) -> FnTable {
        let table = self.table.iter().map(|&y| self.cod.mul(c, y)).collect();
        FnTable {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table,
        }
    }

    /// True iff the table is a bijection of the field onto itself.
    pub fn is_permutation(&self) -> Result<bool, FnError> {
        if !self.is_square() {
            return Err(FnError::DomainMismatch);
        }
        let mut seen = vec![false; self.cod.size()];
        for &y in &self.table {
            if std::mem::replace(&mut seen[y.index()], true) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serializes to the table file format: `p n m` then p^n codomain indices.
    pub fn to_table_file(&self) -> String {
        let mut out = format!("{} {} {}\n", self.dom.p(), self.dom.n(), self.cod.n());
        let width = self.cod.p().pow(self.cod.n().min(8)).min(16) as usize;
        for chunk in self.table.chunks(width.max(1)) {
            let line: Vec<String> = chunk.iter().map(|v| v.0.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads the table file format. Contexts that are not supplied fall back
    /// to the built-in polynomials; supplied ones must match the header.
    pub fn from_table_file(
        text: &str,
        dom: Option<Arc<FieldCtx>>,
        cod: Option<Arc<FieldCtx>>,
    ) -> Result<Self, FnError> {
        let mut tokens = text.split_whitespace();
        let mut header = [0u32; 3];
        for h in header.iter_mut() {
            *h = tokens
                .next()
                .ok_or_else(|| FnError::TableFormat("missing \"p n m\" header".into()))?
                .parse()
                .map_err(|_| FnError::TableFormat("header must be three integers".into()))?;
        }
        let [p, n, m] = header;
        let resolve = |given: Option<Arc<FieldCtx>>, deg: u32| -> Result<Arc<FieldCtx>, FnError> {
            match given {
                Some(c) if c.p() == p && c.n() == deg => Ok(c),
                Some(c) => Err(FnError::TableFormat(format!(
                    "header says {p}^{deg} but the context is {}",
                    c.spec()
                ))),
                None => Ok(Arc::new(FieldCtx::new(FieldSpec::builtin(p, deg)?)?)),
            }
        };
        let dom = resolve(dom, n)?;
        let cod = if m == n && cod.is_none() {
            dom.clone()
        } else {
            resolve(cod, m)?
        };
        let table = tokens
            .map(|t| {
                t.parse::<u32>()
                    .map(FieldElem)
                    .map_err(|_| FnError::TableFormat(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dom, cod, table)
    }
}

/// Evaluates `e` on every element of `dom`; with a post-map the result is
/// pushed through the relative trace into the embedded subfield.
pub fn eval_to_table(
    e: &PolyExpr,
    dom: &Arc<FieldCtx>,
    postmap: Option<&SubfieldEmbedding>,
) -> Result<FnTable, FnError> {
    match postmap {
        None => {
            let table = dom.elements().map(|x| e.eval(dom, x)).collect();
            FnTable::new(dom.clone(), dom.clone(), table)
        }
        Some(emb) => {
            let table = dom
                .elements()
                .map(|x| emb.rel_trace(dom, e.eval(dom, x)))
                .collect::<Result<Vec<_>, _>>()?;
            FnTable::new(dom.clone(), emb.sub().clone(), table)
        }
    }
}

/// Uniformly random table, deterministic in `seed`.
pub fn random_fn(dom: Arc<FieldCtx>, cod: Arc<FieldCtx>, seed: u64) -> Result<FnTable, FnError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = cod.order();
    let table = (0..dom.size())
        .map(|_| FieldElem(rng.gen_range(0..q)))
        .collect();
    FnTable::new(dom, cod, table)
}

/// Uniformly random permutation of the field, deterministic in `seed`.
pub fn random_permutation(ctx: Arc<FieldCtx>, seed: u64) -> FnTable {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table: Vec<FieldElem> = ctx.elements().collect();
    table.shuffle(&mut rng);
    FnTable {
        dom: ctx.clone(),
        cod: ctx,
        table,
    }
}
