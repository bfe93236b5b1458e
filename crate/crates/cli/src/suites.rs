//! Property suites behind `cbent verify`. Each prints one line per field
//! and the first counterexample it meets.

use std::io::Write;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use cbent_core::analysis::{
    do_theorem_check, is_bent1, is_bent1_by_balance, is_bent2, is_perfect1, is_perfect2,
    perfect2_by_profile,
};
use cbent_core::families::{do_monomials, gold, maiorana_mcfarland, named_instances};
use cbent_core::fnrep::{random_fn, random_permutation};
use cbent_core::spectra::{verify_lemma1, verify_lemma2};
use cbent_core::{FieldCtx, FieldElem, FnTable, Method};

use crate::Outcome;

pub const SUITES: [&str; 8] = [
    "lemma1", "lemma2", "equiv1", "equiv2", "mm", "gold", "do", "profiles",
];

#[derive(Debug, Clone, Default)]
pub struct SuiteOpts {
    pub field: Option<String>,
    pub cod: Option<String>,
    pub seed: u64,
    pub count: u64,
    pub m: Option<u32>,
}

const DEFAULT_PAIRS: [(&str, &str); 5] = [
    ("2^2", "2^2"),
    ("2^3", "2^3"),
    ("2^3", "2^1"),
    ("3^2", "3^2"),
    ("3^2", "3^1"),
];

fn ctx(s: &str) -> Result<Arc<FieldCtx>> {
    FieldCtx::parse(s).with_context(|| format!("bad field {s:?}"))
}

/// (domain, codomain) pairs, from the options or the default list.
fn pairs(o: &SuiteOpts) -> Result<Vec<(Arc<FieldCtx>, Arc<FieldCtx>)>> {
    match &o.field {
        Some(f) => {
            let dom = ctx(f)?;
            let cod = o
                .cod
                .as_deref()
                .map(ctx)
                .transpose()?
                .unwrap_or_else(|| dom.clone());
            Ok(vec![(dom, cod)])
        }
        None => DEFAULT_PAIRS
            .iter()
            .map(|(a, b)| Ok((ctx(a)?, ctx(b)?)))
            .collect(),
    }
}

fn fields(o: &SuiteOpts, default: &[&str]) -> Result<Vec<Arc<FieldCtx>>> {
    match &o.field {
        Some(f) => Ok(vec![ctx(f)?]),
        None => default.iter().map(|s| ctx(s)).collect(),
    }
}

/// Seeded random functions plus the named instances of the same shape.
fn corpus(
    dom: &Arc<FieldCtx>,
    cod: &Arc<FieldCtx>,
    o: &SuiteOpts,
) -> Result<Vec<(String, FnTable)>> {
    let mut out = Vec::new();
    for i in 0..o.count {
        let seed = o.seed.wrapping_mul(1_000_003).wrapping_add(i);
        out.push((
            format!("random seed {seed}"),
            random_fn(dom.clone(), cod.clone(), seed)?,
        ));
    }
    for inst in named_instances() {
        if inst.f.dom().spec() == dom.spec() && inst.f.cod().spec() == cod.spec() {
            out.push((inst.name, inst.f));
        }
    }
    Ok(out)
}

struct Tally<'a> {
    out: &'a mut dyn Write,
    failed: bool,
}

impl Tally<'_> {
    fn line(&mut self, label: &str, cases: u64, counterexample: Option<String>) -> Result<()> {
        match counterexample {
            None => writeln!(self.out, "{label}: {cases} cases, PASS")?,
            Some(c) => {
                self.failed = true;
                writeln!(self.out, "{label}: FAIL, counterexample: {c}")?;
            }
        }
        Ok(())
    }
}

fn nonunit(cod: &FieldCtx) -> impl Iterator<Item = FieldElem> + '_ {
    cod.elements().filter(|&c| c != FieldElem::ONE)
}

pub fn run(out: &mut dyn Write, suite: &str, o: &SuiteOpts) -> Result<Outcome> {
    if !SUITES.contains(&suite) {
        bail!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        );
    }
    let mut t = Tally { out, failed: false };
    match suite {
        "lemma1" | "lemma2" => {
            for (dom, cod) in pairs(o)? {
                let mut bad = None;
                let elems: Vec<FieldElem> = cod.elements().collect();
                for i in 0..o.count {
                    let s = o.seed.wrapping_mul(1_000_003).wrapping_add(2 * i);
                    let f = random_fn(dom.clone(), cod.clone(), s)?;
                    let g = random_fn(dom.clone(), cod.clone(), s + 1)?;
                    let c = elems[i as usize % elems.len()];
                    let ok = if suite == "lemma1" {
                        verify_lemma1(&f, &g, c)?
                    } else {
                        verify_lemma2(&f, &g, c)?
                    };
                    if !ok {
                        bad = Some(format!("seeds {s},{} c={c}", s + 1));
                        break;
                    }
                }
                t.line(
                    &format!("{suite} {} -> {}", dom.spec(), cod.spec()),
                    o.count,
                    bad,
                )?;
            }
        }
        "equiv1" | "equiv2" => {
            for (dom, cod) in pairs(o)? {
                let fs = corpus(&dom, &cod, o)?;
                let mut cases = 0;
                let mut bad = None;
                'outer: for (name, f) in &fs {
                    for c in nonunit(&cod) {
                        cases += 1;
                        let (a, b, d) = if suite == "equiv1" {
                            (
                                is_perfect1(f, c, false, Method::Definition).holds,
                                is_bent1(f, c).holds,
                                is_bent1_by_balance(f, c).holds,
                            )
                        } else {
                            (
                                is_perfect2(f, c, false, Method::Definition).holds,
                                is_bent2(f, c).holds,
                                perfect2_by_profile(f, c).holds,
                            )
                        };
                        if a != b || b != d {
                            bad = Some(format!(
                                "{name} c={c}: perfect={a} bent={b} characterization={d}"
                            ));
                            break 'outer;
                        }
                    }
                }
                t.line(
                    &format!("{suite} {} -> {}", dom.spec(), cod.spec()),
                    cases,
                    bad,
                )?;
            }
        }
        "profiles" => {
            for (dom, cod) in pairs(o)? {
                let fs = corpus(&dom, &cod, o)?;
                let mut cases = 0;
                let mut bad = None;
                'outer: for (name, f) in &fs {
                    for c in cod.elements() {
                        for strict in [false, true] {
                            cases += 1;
                            let d = is_perfect2(f, c, strict, Method::Definition);
                            let p = is_perfect2(f, c, strict, Method::Profile);
                            if d.witness != p.witness {
                                bad = Some(format!(
                                    "{name} c={c} strict={strict}: {:?} vs {:?}",
                                    d.witness, p.witness
                                ));
                                break 'outer;
                            }
                        }
                    }
                }
                t.line(
                    &format!("profiles {} -> {}", dom.spec(), cod.spec()),
                    cases,
                    bad,
                )?;
            }
        }
        "mm" => {
            let ms = o.m.map_or(vec![2, 3], |m| vec![m]);
            for m in ms {
                let small = ctx(&format!("2^{m}"))?;
                let pis = [
                    ("identity".to_string(), FnTable::identity(small.clone())),
                    ("frobenius".to_string(), FnTable::monomial(small.clone(), 2)),
                    (
                        format!("random:{}", o.seed),
                        random_permutation(small.clone(), o.seed),
                    ),
                ];
                let mut cases = 0;
                let mut bad = None;
                'outer: for (label, pi) in &pis {
                    let f = maiorana_mcfarland(pi)?;
                    for c in nonunit(&small) {
                        cases += 1;
                        if is_bent1(&f, c).holds {
                            bad = Some(format!("pi={label} c={c} is bent"));
                            break 'outer;
                        }
                    }
                }
                t.line(&format!("mm m={m}"), cases, bad)?;
            }
        }
        "gold" => {
            for k in fields(o, &["2^3", "2^5", "3^3"])? {
                let (p, n) = (k.p() as u64, k.n());
                let mut bad = None;
                for i in 1..n {
                    let f = gold(&k, i)?;
                    let d = p.pow(i) + 1;
                    let coprime = num_gcd(d, k.order() as u64 - 1) == 1;
                    let bent = is_bent1(&f, FieldElem::ZERO).holds;
                    if bent != coprime {
                        bad = Some(format!(
                            "k={i}: bent1@0={bent} but gcd(d, q-1)=1 is {coprime}"
                        ));
                        break;
                    }
                }
                t.line(
                    &format!("gold {}", k.spec()),
                    n.saturating_sub(1) as u64,
                    bad,
                )?;
            }
        }
        "do" => {
            for k in fields(o, &["2^3", "3^3"])? {
                let mut cases = 0;
                let mut bad = None;
                'outer: for inst in do_monomials(&k) {
                    for c in k.elements() {
                        cases += 1;
                        let r = do_theorem_check(&inst.f, c)?;
                        if !r.consistent || !r.companion_agrees {
                            bad = Some(format!("{} c={c}: {r:?}", inst.name));
                            break 'outer;
                        }
                    }
                }
                t.line(&format!("do {}", k.spec()), cases, bad)?;
            }
        }
        _ => unreachable!("suite name checked above"),
    }
    let failed = t.failed;
    writeln!(t.out, "{}", if failed { "FAIL" } else { "PASS" })?;
    Ok(if failed {
        Outcome::Mismatch
    } else {
        Outcome::Ok
    })
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}
