//! Constructors for the named function families, each validating the
//! hypotheses of the result it is used with, plus the `name:key=value,…`
//! spec strings the CLI accepts.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::fnrep::{
    eval_to_table, parse_constant, parse_poly, random_permutation, FnError, FnTable, ParseError,
};
use crate::gf::{FieldCtx, FieldElem, FieldSpec, GfError, SubfieldEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("pi is not a permutation")]
    NotPermutation,
    #[error("bad family spec {spec:?}: {msg}")]
    Spec { spec: String, msg: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Fn(#[from] FnError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::BadParam(msg.into()))
}

fn need_char(ctx: &FieldCtx, p: u32, family: &str) -> Result<(), FamilyError> {
    if ctx.p() != p {
        return bad(format!(
            "{family} needs characteristic {p}, got {}",
            ctx.p()
        ));
    }
    Ok(())
}

/// x^d.
pub fn monomial(ctx: &Arc<FieldCtx>, d: u64) -> FnTable {
    FnTable::monomial(ctx.clone(), d)
}

/// x^{p^k+1}, 1 ≤ k < n.
pub fn gold(ctx: &Arc<FieldCtx>, k: u32) -> Result<FnTable, FamilyError> {
    if k == 0 || k >= ctx.n() {
        return bad(format!("gold needs 1 <= k < n = {}, got k = {k}", ctx.n()));
    }
    Ok(monomial(ctx, (ctx.p() as u64).pow(k) + 1))
}

/// x^{(3^k+1)/2} over a field of characteristic 3.
pub fn coulter_matthews(ctx: &Arc<FieldCtx>, k: u32) -> Result<FnTable, FamilyError> {
    need_char(ctx, 3, "coulter_matthews")?;
    if k == 0 || k >= ctx.n() {
        return bad(format!(
            "coulter_matthews needs 1 <= k < n = {}, got k = {k}",
            ctx.n()
        ));
    }
    Ok(monomial(ctx, coulter_matthews_exponent(k)))
}

pub fn coulter_matthews_exponent(k: u32) -> u64 {
    3u64.pow(k).div_ceil(2)
}

/// gcd((3^k+1)/2, 3^n − 1), which decides the monomial theorem's branch.
pub fn coulter_matthews_gcd(ctx: &FieldCtx, k: u32) -> u64 {
    coulter_matthews_exponent(k).gcd(&(ctx.order() as u64 - 1))
}

/// x^{p^k} for 0 ≤ k < n.
pub fn linearized_monomial(ctx: &Arc<FieldCtx>, k: u32) -> Result<FnTable, FamilyError> {
    if k >= ctx.n() {
        return bad(format!(
            "linearized_monomial needs k < n = {}, got {k}",
            ctx.n()
        ));
    }
    Ok(monomial(ctx, (ctx.p() as u64).pow(k)))
}

/// Σ_i coeffs[i]·x^{p^i}; additivity is checked on the finished table.
pub fn linearized_poly(ctx: &Arc<FieldCtx>, coeffs: &[FieldElem]) -> Result<FnTable, FamilyError> {
    if coeffs.len() > ctx.n() as usize {
        return bad(format!(
            "at most n = {} coefficients, got {}",
            ctx.n(),
            coeffs.len()
        ));
    }
    if let Some(c) = coeffs.iter().find(|c| !ctx.contains(**c)) {
        return bad(format!("coefficient {c} is outside the field"));
    }
    let t = FnTable::from_fn(ctx.clone(), ctx.clone(), |x| {
        coeffs
            .iter()
            .enumerate()
            .fold(FieldElem::ZERO, |acc, (i, &c)| {
                ctx.add(acc, ctx.mul(c, ctx.frobenius(x, i as u32)))
            })
    })?;
    for x in ctx.elements() {
        for y in ctx.elements() {
            assert_eq!(
                t.at(ctx.add(x, y)),
                ctx.add(t.at(x), t.at(y)),
                "linearized polynomial is not additive"
            );
        }
    }
    Ok(t)
}

/// Tr_{n/k}(x) = Σ_{i < n/k} x^{p^{ki}} inside the big field.
fn rel_trace_in_place(ctx: &FieldCtx, k: u32, x: FieldElem) -> FieldElem {
    (0..ctx.n() / k).fold(FieldElem::ZERO, |acc, i| {
        ctx.add(acc, ctx.frobenius(x, k * i))
    })
}

/// F(x) = x(Tr_{n/k}(x) + a·x) over GF(2^n), with k | n, k ≥ 2, n/k odd and
/// a ∈ F_{2^k} \ F_2.
pub fn do_trace(ctx: &Arc<FieldCtx>, k: u32, a: FieldElem) -> Result<FnTable, FamilyError> {
    need_char(ctx, 2, "do_trace")?;
    let n = ctx.n();
    if k < 2 || !n.is_multiple_of(k) {
        return bad(format!(
            "do_trace needs k >= 2 dividing n = {n}, got k = {k}"
        ));
    }
    if (n / k).is_multiple_of(2) {
        return bad(format!("do_trace needs n/k odd, got n/k = {}", n / k));
    }
    if !ctx.contains(a) || ctx.frobenius(a, k) != a {
        return bad(format!("a = {a} is not in the subfield F_(2^{k})"));
    }
    if a == FieldElem::ZERO || a == FieldElem::ONE {
        return bad("a must lie outside F_2");
    }
    let t = FnTable::from_fn(ctx.clone(), ctx.clone(), |x| {
        ctx.mul(x, ctx.add(rel_trace_in_place(ctx, k, x), ctx.mul(a, x)))
    })?;
    // Tr_{n/k}(F(x)) = (1 + a)·Tr_{n/k}(x)^2
    let one_plus_a = ctx.add(FieldElem::ONE, a);
    for x in ctx.elements() {
        let tx = rel_trace_in_place(ctx, k, x);
        assert_eq!(
            rel_trace_in_place(ctx, k, t.at(x)),
            ctx.mul(one_plus_a, ctx.mul(tx, tx)),
            "trace identity fails at {x}"
        );
    }
    Ok(t)
}

/// log_g(a) is not a multiple of 2^d − 1, i.e. a ≠ g^{t(2^d−1)} for all t.
fn outside_coset(ctx: &FieldCtx, a: FieldElem, d: u32) -> Result<(), FamilyError> {
    match ctx.log(a) {
        None => bad("a must be nonzero"),
        Some(l) if (l as u64).is_multiple_of((1u64 << d) - 1) => {
            bad(format!("a = g^{l} lies in the excluded set g^(t(2^{d}-1))"))
        }
        Some(_) => Ok(()),
    }
}

fn blokhuis_f_table(ctx: &Arc<FieldCtx>, k: u32, a: FieldElem) -> FnTable {
    let n = ctx.n();
    let e1 = (1u64 << k) + 1;
    let e2 = (1u64 << ((n - k % n) % n)) + 1;
    FnTable::from_fn(ctx.clone(), ctx.clone(), |x| {
        ctx.add(ctx.pow(x, e1), ctx.mul(a, ctx.pow(x, e2)))
    })
    .expect("same field")
}

/// F_a(x) = x^{2^k+1} + a·x^{2^{n−k}+1}, with d = gcd(n, k), n/d odd and
/// a ≠ g^{t(2^d−1)}.
pub fn blokhuis_f(ctx: &Arc<FieldCtx>, k: u32, a: FieldElem) -> Result<FnTable, FamilyError> {
    need_char(ctx, 2, "blokhuis_f")?;
    let n = ctx.n();
    if k == 0 || k >= n {
        return bad(format!("blokhuis_f needs 1 <= k < n = {n}, got {k}"));
    }
    let d = n.gcd(&k);
    if (n / d).is_multiple_of(2) {
        return bad(format!("blokhuis_f needs n/gcd(n,k) odd, got {}", n / d));
    }
    outside_coset(ctx, a, d)?;
    Ok(blokhuis_f_table(ctx, k, a))
}

/// The same polynomial as [`blokhuis_f`] with no hypothesis checks.
pub fn blokhuis_f_unchecked(ctx: &Arc<FieldCtx>, k: u32, a: FieldElem) -> FnTable {
    blokhuis_f_table(ctx, k, a)
}

/// G_a(x) = x^{2^{2k}+1} + a^{2^k+1}·x^{2^k+1} + a·x^2 on GF(2^{3k}), with
/// a ≠ g^{t(2^k−1)}.
pub fn blokhuis_g(ctx: &Arc<FieldCtx>, k: u32, a: FieldElem) -> Result<FnTable, FamilyError> {
    need_char(ctx, 2, "blokhuis_g")?;
    if k == 0 || ctx.n() != 3 * k {
        return bad(format!(
            "blokhuis_g needs n = 3k, got n = {} and k = {k}",
            ctx.n()
        ));
    }
    outside_coset(ctx, a, k)?;
    let e1 = (1u64 << (2 * k)) + 1;
    let e2 = (1u64 << k) + 1;
    let a2 = ctx.pow(a, e2);
    Ok(FnTable::from_fn(ctx.clone(), ctx.clone(), |x| {
        let t = ctx.add(ctx.pow(x, e1), ctx.mul(a2, ctx.pow(x, e2)));
        ctx.add(t, ctx.mul(a, ctx.pow(x, 2)))
    })?)
}

/// F(x, y) = x·π(y) as a (2m, m)-function. The pair (x, y) is the element of
/// GF(p^{2m}) with index idx(x)·p^m + idx(y) under the built-in polynomial.
pub fn maiorana_mcfarland(pi: &FnTable) -> Result<FnTable, FamilyError> {
    if !pi.is_permutation()? {
        return Err(FamilyError::NotPermutation);
    }
    let small = pi.cod().clone();
    let dom = Arc::new(FieldCtx::new(FieldSpec::builtin(
        small.p(),
        2 * small.n(),
    )?)?);
    let q = small.order();
    let table = (0..dom.order())
        .map(|i| small.mul(FieldElem(i / q), pi.at(FieldElem(i % q))))
        .collect();
    Ok(FnTable::new(dom, small, table)?)
}

/// F = Tr_{n/m} ∘ G for a proper subfield GF(p^m).
pub fn trace_of(g: &FnTable, sub: Arc<FieldCtx>) -> Result<FnTable, FamilyError> {
    let dom = g.dom();
    if !g.is_square() {
        return bad("trace_of needs an (n,n)-function");
    }
    if sub.n() >= dom.n() {
        return Err(GfError::DegreeMismatch(format!(
            "trace_of needs m < n, got m = {} and n = {}",
            sub.n(),
            dom.n()
        ))
        .into());
    }
    let emb = SubfieldEmbedding::new(dom, sub.clone())?;
    let table = g
        .values()
        .iter()
        .map(|&y| emb.rel_trace(dom, y))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FnTable::new(dom.clone(), sub, table)?)
}

/// Exchanges the outputs α^i and α^j wherever they occur.
pub fn fiber_swap(f: &FnTable, i: u32, j: u32) -> Result<FnTable, FamilyError> {
    let cod = f.cod();
    let units = cod.order() - 1;
    if i == j || i >= units || j >= units {
        return bad(format!(
            "fiber_swap needs distinct i, j < {units}, got {i} and {j}"
        ));
    }
    let (ai, aj) = (cod.exp(i as u64), cod.exp(j as u64));
    let table = f
        .values()
        .iter()
        .map(|&y| {
            if y == ai {
                aj
            } else if y == aj {
                ai
            } else {
                y
            }
        })
        .collect();
    Ok(FnTable::new(f.dom().clone(), cod.clone(), table)?)
}

pub const FAMILY_NAMES: [&str; 12] = [
    "gold",
    "coulter_matthews",
    "linearized_monomial",
    "linearized_poly",
    "do_trace",
    "blokhuis_f",
    "blokhuis_g",
    "mm",
    "trace_of",
    "fiber_swap",
    "monomial",
    "poly",
];

/// A parsed `name:key=value,…` string. An `inner=` value runs to the end of
/// the string, so nested specs need no quoting; list values use `;`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| FamilyError::Spec {
            spec: s.into(),
            msg: msg.into(),
        };
        let (name, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        if !FAMILY_NAMES.contains(&name) {
            return Err(err("unknown family name"));
        }
        let mut params = Vec::new();
        let mut rest = rest.trim();
        while !rest.is_empty() {
            let (key, tail) = rest
                .split_once('=')
                .ok_or_else(|| err("expected key=value"))?;
            let key = key.trim();
            if key.is_empty() || key.contains(',') {
                return Err(err("expected key=value"));
            }
            let (value, tail) = if key == "inner" {
                (tail, "")
            } else {
                tail.split_once(',').unwrap_or((tail, ""))
            };
            if params.iter().any(|(k, _): &(String, String)| k == key) {
                return Err(err("repeated key"));
            }
            params.push((key.to_string(), value.trim().to_string()));
            rest = tail.trim();
        }
        Ok(FamilySpec {
            name: name.to_string(),
            params,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

impl FamilySpec {
    fn get(&self, key: &str) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, FamilyError> {
        self.get(key).ok_or_else(|| FamilyError::Spec {
            spec: self.to_string(),
            msg: format!("missing parameter {key}"),
        })
    }

    fn uint(&self, key: &str) -> Result<u64, FamilyError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| FamilyError::Spec {
            spec: self.to_string(),
            msg: format!("{key} must be a nonnegative integer, got {v:?}"),
        })
    }

    fn small(&self, key: &str) -> Result<u32, FamilyError> {
        let v = self.uint(key)?;
        u32::try_from(v).or_else(|_| bad(format!("{key} = {v} is too large")))
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, FamilyError> {
        match self.get(key) {
            None => Ok(default),
            Some("true" | "1") => Ok(true),
            Some("false" | "0") => Ok(false),
            Some(v) => bad(format!("{key} must be true or false, got {v:?}")),
        }
    }

    /// Instantiates the family over `ctx`. For `mm` the context is the
    /// half-size field GF(p^m) that π lives on.
    pub fn build(&self, ctx: &Arc<FieldCtx>) -> Result<FnTable, FamilyError> {
        let konst = |key: &str| -> Result<FieldElem, FamilyError> {
            Ok(parse_constant(self.require(key)?, ctx)?)
        };
        match self.name.as_str() {
            "gold" => gold(ctx, self.small("k")?),
            "coulter_matthews" => coulter_matthews(ctx, self.small("k")?),
            "linearized_monomial" => linearized_monomial(ctx, self.small("k")?),
            "linearized_poly" => {
                let coeffs = self
                    .require("coeffs")?
                    .split(';')
                    .map(|c| parse_constant(c, ctx))
                    .collect::<Result<Vec<_>, _>>()?;
                linearized_poly(ctx, &coeffs)
            }
            "do_trace" => do_trace(ctx, self.small("k")?, konst("a")?),
            "blokhuis_f" => {
                let (k, a) = (self.small("k")?, konst("a")?);
                if self.flag("check", true)? {
                    blokhuis_f(ctx, k, a)
                } else {
                    Ok(blokhuis_f_unchecked(ctx, k, a))
                }
            }
            "blokhuis_g" => blokhuis_g(ctx, self.small("k")?, konst("a")?),
            "mm" => {
                let src = self.require("pi")?;
                let pi = match src.strip_prefix("random:") {
                    Some(seed) => random_permutation(
                        ctx.clone(),
                        seed.parse()
                            .or_else(|_| bad(format!("bad seed {seed:?}")))?,
                    ),
                    None => eval_to_table(&parse_poly(src, ctx)?, ctx, None)?,
                };
                maiorana_mcfarland(&pi)
            }
            "trace_of" => {
                let sub = FieldCtx::parse(self.require("sub")?)?;
                let inner = build_source(self.require("inner")?, ctx)?;
                trace_of(&inner, sub)
            }
            "fiber_swap" => {
                let inner = build_source(self.require("inner")?, ctx)?;
                fiber_swap(&inner, self.small("i")?, self.small("j")?)
            }
            "monomial" => Ok(monomial(ctx, self.uint("d")?)),
            "poly" => Ok(eval_to_table(
                &parse_poly(self.require("f")?, ctx)?,
                ctx,
                None,
            )?),
            _ => unreachable!("name checked at parse time"),
        }
    }
}

/// A family spec if the text starts with a known `name:`, else a polynomial.
pub fn build_source(src: &str, ctx: &Arc<FieldCtx>) -> Result<FnTable, FamilyError> {
    let looks_like_family = src
        .split_once(':')
        .is_some_and(|(name, _)| FAMILY_NAMES.contains(&name.trim()));
    if looks_like_family {
        src.parse::<FamilySpec>()?.build(ctx)
    } else {
        Ok(eval_to_table(&parse_poly(src, ctx)?, ctx, None)?)
    }
}

/// A named member of the built-in corpus.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub f: FnTable,
}

fn instance(name: impl Into<String>, f: FnTable) -> Instance {
    Instance {
        name: name.into(),
        f,
    }
}

fn builtin_ctx(p: u32, n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(FieldSpec::builtin(p, n).expect("small field")).expect("small field"))
}

/// x^{p^i+p^j} for 0 <= i <= j < n.
pub fn do_monomials(ctx: &Arc<FieldCtx>) -> Vec<Instance> {
    let (p, n) = (ctx.p() as u64, ctx.n());
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let d = p.pow(i) + p.pow(j);
            out.push(instance(
                format!("x^{d} on {}", ctx.spec()),
                monomial(ctx, d),
            ));
        }
    }
    out
}

/// The two quadratic examples over GF(32) and GF(64) with their defining
/// polynomials, as (name, field, F, the three listed c values).
pub fn blokhuis_examples() -> Vec<(Instance, Vec<FieldElem>)> {
    let c_list = |ctx: &Arc<FieldCtx>| {
        ["0", "g^3+g^2+g", "g^3+g^2+g+1"]
            .iter()
            .map(|s| parse_constant(s, ctx).expect("constant"))
            .collect::<Vec<_>>()
    };
    let f32 = FieldCtx::parse("2^5/1,0,0,1,0,1").expect("field");
    let f64 = FieldCtx::parse("2^6/1,0,1,1,0,1,1").expect("field");
    let g32 = f32.primitive();
    let g64 = f64.primitive();
    vec![
        (
            instance(
                "blokhuis_f:k=1,a=g on 2^5",
                blokhuis_f_unchecked(&f32, 1, g32),
            ),
            c_list(&f32),
        ),
        (
            instance(
                "blokhuis_g:k=2,a=g on 2^6",
                blokhuis_g(&f64, 2, g64).expect("hypotheses hold"),
            ),
            c_list(&f64),
        ),
    ]
}

/// Every concrete example function used by the test suites.
pub fn named_instances() -> Vec<Instance> {
    let f8 = builtin_ctx(2, 3);
    let f27 = builtin_ctx(3, 3);
    let mut out = vec![
        instance("x^3 on 2^3", monomial(&f8, 3)),
        instance("x^5 on 2^3", monomial(&f8, 5)),
        instance(
            "x^3+x^5 on 2^3",
            eval_to_table(&parse_poly("x^3+x^5", &f8).expect("poly"), &f8, None).expect("table"),
        ),
        instance("x^5 on 3^3", monomial(&f27, 5)),
        instance("x^15 on 3^3", monomial(&f27, 15)),
        instance("x^21 on 3^4", monomial(&builtin_ctx(3, 4), 21)),
        instance(
            "gold:k=1 on 2^5",
            gold(&builtin_ctx(2, 5), 1).expect("gold"),
        ),
        instance("gold:k=1 on 3^3", gold(&f27, 1).expect("gold")),
    ];
    let f64 = builtin_ctx(2, 6);
    for a in f64
        .nonzero()
        .filter(|&a| a != FieldElem::ONE && f64.frobenius(a, 2) == a)
    {
        out.push(instance(
            format!("do_trace:k=2,a={a} on 2^6"),
            do_trace(&f64, 2, a).expect("hypotheses hold"),
        ));
    }
    out.extend(blokhuis_examples().into_iter().map(|(i, _)| i));
    for m in [2, 3] {
        let small = builtin_ctx(2, m);
        let frob = FnTable::monomial(small.clone(), 2);
        for (label, pi) in [
            ("identity", FnTable::identity(small.clone())),
            ("frobenius", frob),
            ("random:1", random_permutation(small.clone(), 1)),
        ] {
            out.push(instance(
                format!("mm:pi={label} on 2^{m}"),
                maiorana_mcfarland(&pi).expect("permutation"),
            ));
        }
    }
    for (p, n) in [(2, 3), (3, 2), (2, 4)] {
        let ctx = builtin_ctx(p, n);
        for k in 0..n {
            out.push(instance(
                format!("linearized_monomial:k={k} on {p}^{n}"),
                linearized_monomial(&ctx, k).expect("k < n"),
            ));
        }
    }
    out
}
