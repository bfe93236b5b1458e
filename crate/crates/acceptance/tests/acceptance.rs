//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails. Everything is exact; there is no
//! tolerance anywhere.

use std::path::PathBuf;
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use cbent_core::analysis::{
    c_ddt, c_uniformity, do_theorem_check, is_bent1, is_bent1_by_balance, is_bent2, is_pcn,
    is_perfect1, is_perfect2, perfect2_by_profile,
};
use cbent_core::families::{
    blokhuis_examples, do_monomials, do_trace, gold, linearized_monomial, maiorana_mcfarland,
    named_instances, Instance,
};
use cbent_core::fnrep::{random_fn, random_permutation};
use cbent_core::spectra::{verify_lemma1, verify_lemma2, walsh1, walsh2};
use cbent_core::{FieldCtx, FieldElem, FieldSpec, FnTable, Method, SubfieldEmbedding};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ctx(s: &str) -> Arc<FieldCtx> {
    FieldCtx::parse(s).unwrap()
}

/// The `cbent` binary from the same target directory, built once up front.
fn cbent_bin() -> &'static PathBuf {
    static BIN: OnceLock<PathBuf> = OnceLock::new();
    BIN.get_or_init(|| {
        let exe = std::env::current_exe().expect("test executable path");
        let dir = exe
            .parent()
            .and_then(|d| d.parent())
            .expect("target profile dir")
            .to_path_buf();
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let mut build = Command::new(cargo);
        build.args(["build", "--quiet", "-p", "cbent-cli", "--bin", "cbent"]);
        if dir.file_name().is_some_and(|n| n == "release") {
            build.arg("--release");
        }
        let status = build.status().expect("run cargo build");
        assert!(status.success(), "building cbent failed");
        dir.join(format!("cbent{}", std::env::consts::EXE_SUFFIX))
    })
}

fn cbent(args: &[&str]) -> (i32, String) {
    let out = Command::new(cbent_bin())
        .args(args)
        .output()
        .expect("spawn cbent");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8"),
    )
}

/// Runs `check` and returns the (c, verdict) pairs it reported.
fn check_verdicts(field: &str, f: &str, c: &str, pred: &str) -> Vec<(u64, bool)> {
    let (code, out) = cbent(&[
        "check",
        "--field",
        field,
        "--fn",
        f,
        "--c",
        c,
        "--pred",
        pred,
        "--deterministic",
    ]);
    assert_ne!(code, 2, "usage error for {field} {f} {c} {pred}");
    out.lines()
        .map(|l| {
            let v: Value = serde_json::from_str(l).expect("json line");
            (v["c"].as_u64().unwrap(), v["verdict"].as_bool().unwrap())
        })
        .collect()
}

fn collect(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_1() -> Outcome {
    let cases = [
        ("2^3", "x^3", "0", "perfect1", 1),
        ("2^3", "x^5", "0", "strict-perfect1", 1),
        ("3^3", "x^5", "0,2", "strict-perfect1", 2),
        ("3^4", "x^21", "all-but-1", "perfect1", 80),
        ("3^3", "x^15", "0,2", "strict-perfect1", 2),
    ];
    let mut failures = Vec::new();
    for (field, f, c, pred, expected_rows) in cases {
        let rows = check_verdicts(field, f, c, pred);
        let bad: Vec<u64> = rows.iter().filter(|r| !r.1).map(|r| r.0).collect();
        if rows.len() != expected_rows {
            failures.push(format!(
                "{f} on {field}: {} rows, expected {expected_rows}",
                rows.len()
            ));
        } else if !bad.is_empty() {
            failures.push(format!(
                "{pred} {f} on {field} is false for {} of {} c values, e.g. c={}",
                bad.len(),
                rows.len(),
                bad[0]
            ));
        }
    }
    collect(failures, "5 example families all true".into())
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    for f in ["x^3", "x^3+x^5"] {
        if check_verdicts("2^3", f, "0", "perfect2") != vec![(0, true)] {
            failures.push(format!("{f} is not perfect2 at c=0"));
        }
        let (code, _) = cbent(&[
            "check", "--field", "2^3", "--fn", f, "--c", "0", "--pred", "perfect2", "--expect",
            "true",
        ]);
        if code != 0 {
            failures.push(format!("{f}: --expect true exited {code}"));
        }
    }
    collect(failures, "x^3 and x^3+x^5 perfect2 at c=0".into())
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut rows_seen = 0;
    for field in ["2^3", "3^3", "3^4"] {
        let (code, out) = cbent(&["scan-monomials", "--field", field, "--d", "all", "--c", "0"]);
        if code != 0 {
            failures.push(format!("scan over {field} exited {code}"));
            continue;
        }
        let mut lines = out.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
        let col = |name: &str| header.iter().position(|h| *h == name).expect("column");
        let (gcd_col, bent_col, d_col) = (col("gcd"), col("bent1"), col("d"));
        let q: u64 = ctx(field).order() as u64;
        let mut n = 0;
        for l in lines {
            let cells: Vec<&str> = l.split(',').collect();
            let g: u64 = cells[gcd_col].parse().unwrap();
            let bent = cells[bent_col] == "true";
            n += 1;
            if (g == 1 && !bent) || (g == 2 && bent) {
                failures.push(format!("{field} d={} gcd={g} bent1={bent}", cells[d_col]));
            }
        }
        if n != q - 1 {
            failures.push(format!("{field}: {n} rows, expected {}", q - 1));
        }
        rows_seen += n;
    }
    collect(
        failures,
        format!("{rows_seen} catalog rows, zero exceptions"),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    if !is_bent1(&gold(&ctx("2^5"), 1).unwrap(), FieldElem::ZERO).holds {
        failures.push("x^3 on GF(32) is not bent1 at 0".to_string());
    }
    if is_bent1(&gold(&ctx("3^3"), 1).unwrap(), FieldElem::ZERO).holds {
        failures.push("x^4 on GF(27) is bent1 at 0".to_string());
    }
    collect(failures, "GF(32) true, GF(27) false".into())
}

fn criterion_5() -> Outcome {
    let f64 = ctx("2^6");
    let emb = SubfieldEmbedding::new(&f64, ctx("2^2")).unwrap();
    let f4: Vec<FieldElem> = emb.image().collect();
    let cs: Vec<FieldElem> = f4
        .iter()
        .copied()
        .filter(|&c| c != FieldElem::ONE)
        .collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for &a in f4
        .iter()
        .filter(|&&a| a != FieldElem::ZERO && a != FieldElem::ONE)
    {
        let f = do_trace(&f64, 2, a).unwrap();
        for &c in &cs {
            checked += 1;
            if !is_pcn(&f, c).holds {
                failures.push(format!("a={a} c={c}: not PcN"));
            }
            if !is_bent1(&f, c).holds {
                failures.push(format!("a={a} c={c}: not bent1"));
            }
        }
    }
    if cs.len() != 3 {
        failures.push(format!("expected 3 values of c, found {}", cs.len()));
    }
    collect(failures, format!("{checked} (a, c) pairs PcN and bent1"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for (inst, cs) in blokhuis_examples() {
        let bad: Vec<String> = cs
            .iter()
            .filter(|&&c| !is_bent1(&inst.f, c).holds)
            .map(|c| c.to_string())
            .collect();
        if !bad.is_empty() {
            failures.push(format!(
                "{} is not bent1 for c in {{{}}}",
                inst.name,
                bad.join(", ")
            ));
        }
    }
    collect(failures, "both functions bent1 at all three c".into())
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for m in [2, 3] {
        let small = ctx(&format!("2^{m}"));
        let pis = [
            ("identity", FnTable::identity(small.clone())),
            ("frobenius", FnTable::monomial(small.clone(), 2)),
            ("random", random_permutation(small.clone(), 2024)),
        ];
        for (label, pi) in pis {
            let f = maiorana_mcfarland(&pi).unwrap();
            for c in small.elements().filter(|&c| c != FieldElem::ONE) {
                checked += 1;
                if is_bent1(&f, c).holds {
                    failures.push(format!("m={m} pi={label} c={c} is bent1"));
                }
            }
        }
    }
    collect(failures, format!("{checked} (m, pi, c) cases all non-bent"))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for (d, m) in [
        ("2^2", "2^2"),
        ("2^3", "2^3"),
        ("2^3", "2^1"),
        ("3^2", "3^2"),
        ("3^2", "3^1"),
    ] {
        let (dom, cod) = (ctx(d), ctx(m));
        let elems: Vec<FieldElem> = cod.elements().collect();
        for i in 0..50u64 {
            let f = random_fn(dom.clone(), cod.clone(), 10_000 + 2 * i).unwrap();
            let g = random_fn(dom.clone(), cod.clone(), 10_001 + 2 * i).unwrap();
            let c = elems[(i as usize * 7 + 3) % elems.len()];
            if !verify_lemma1(&f, &g, c).unwrap() {
                failures.push(format!("lemma1 {d}->{m} triple {i}"));
            }
            if !verify_lemma2(&f, &g, c).unwrap() {
                failures.push(format!("lemma2 {d}->{m} triple {i}"));
            }
        }
    }
    collect(failures, "250 triples, both identities".into())
}

/// (field, codomain) pairs with p^n ≤ 27 and m | n.
fn small_shapes() -> Vec<(Arc<FieldCtx>, Arc<FieldCtx>)> {
    let mut out = Vec::new();
    for (p, n) in [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
    ] {
        let dom = Arc::new(FieldCtx::new(FieldSpec::builtin(p, n).unwrap()).unwrap());
        for m in (1..=n).filter(|m| n % m == 0) {
            let cod = if m == n {
                dom.clone()
            } else {
                Arc::new(FieldCtx::new(FieldSpec::builtin(p, m).unwrap()).unwrap())
            };
            out.push((dom.clone(), cod));
        }
    }
    out
}

fn corpus() -> Vec<Instance> {
    let mut out = named_instances();
    for (i, (dom, cod)) in small_shapes().into_iter().enumerate() {
        for s in 0..200u64 {
            let seed = 1_000_000 * i as u64 + s;
            out.push(Instance {
                name: format!("random {} -> {} seed {seed}", dom.spec(), cod.spec()),
                f: random_fn(dom.clone(), cod.clone(), seed).unwrap(),
            });
        }
    }
    out
}

fn criterion_9(corpus: &[Instance]) -> Outcome {
    use rayon::prelude::*;
    let checked: Vec<Result<u64, String>> = corpus
        .par_iter()
        .map(|inst| {
            let f = &inst.f;
            let mut n = 0;
            for c in f.cod().elements().filter(|&c| c != FieldElem::ONE) {
                n += 1;
                let one = [
                    is_perfect1(f, c, false, Method::Definition).holds,
                    is_bent1(f, c).holds,
                    is_bent1_by_balance(f, c).holds,
                ];
                let two = [
                    is_perfect2(f, c, false, Method::Definition).holds,
                    is_bent2(f, c).holds,
                    perfect2_by_profile(f, c).holds,
                ];
                if one.iter().any(|&v| v != one[0]) {
                    return Err(format!("{} c={c}: first kind {one:?}", inst.name));
                }
                if two.iter().any(|&v| v != two[0]) {
                    return Err(format!("{} c={c}: second kind {two:?}", inst.name));
                }
            }
            Ok(n)
        })
        .collect();
    let failures: Vec<String> = checked.iter().filter_map(|r| r.clone().err()).collect();
    let total: u64 = checked.iter().filter_map(|r| r.as_ref().ok()).sum();
    collect(
        failures,
        format!(
            "{} functions, {total} (F, c) cases, no disagreement",
            corpus.len()
        ),
    )
}

fn criterion_10(corpus: &[Instance]) -> Outcome {
    use rayon::prelude::*;
    let square: Vec<&Instance> = corpus.iter().filter(|i| i.f.is_square()).collect();
    let failures: Vec<String> = square
        .par_iter()
        .filter_map(|inst| {
            let f = &inst.f;
            let z = FieldElem::ZERO;
            let bent1 = is_bent1(f, z).holds;
            let origin1 = f.cod().nonzero().all(|b| walsh1(f, z, b).is_zero());
            let perm = f.is_permutation().unwrap();
            let bent2 = is_bent2(f, z).holds;
            let origin2 = walsh2(f, z).is_zero();
            (bent1 != origin1 || bent1 != perm || bent2 != origin2).then(|| {
                format!("{}: bent1={bent1} walsh1 origin={origin1} perm={perm} bent2={bent2} walsh2 origin={origin2}", inst.name)
            })
        })
        .collect();
    collect(
        failures,
        format!("{} (n,n)-functions, both ladders hold", square.len()),
    )
}

fn criterion_11() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for field in ["2^3", "3^2", "2^4"] {
        let k = ctx(field);
        for e in 0..k.n() {
            let f = linearized_monomial(&k, e).unwrap();
            let mut bad1 = Vec::new();
            let mut bad2 = Vec::new();
            for c in k.elements().filter(|&c| c != FieldElem::ONE) {
                checked += 1;
                if !is_perfect1(&f, c, false, Method::Definition).holds {
                    bad1.push(c.0);
                }
                if !is_perfect2(&f, c, false, Method::Definition).holds {
                    bad2.push(c.0);
                }
            }
            if !bad1.is_empty() {
                failures.push(format!(
                    "x^{} on {field}: not perfect1 at c in {bad1:?}",
                    k.p().pow(e)
                ));
            }
            if !bad2.is_empty() {
                failures.push(format!(
                    "x^{} on {field}: not perfect2 at c in {bad2:?}",
                    k.p().pow(e)
                ));
            }
        }
    }
    collect(
        failures,
        format!("{checked} (F, c) cases, perfect of both kinds"),
    )
}

/// Schoolbook polynomial arithmetic over Z_p, independent of the library's
/// log tables.
struct NaiveField {
    p: u32,
    poly: Vec<u32>,
}

impl NaiveField {
    fn n(&self) -> usize {
        self.poly.len() - 1
    }

    fn digits(&self, x: u32) -> Vec<u32> {
        let mut x = x;
        (0..self.n())
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &v| acc * self.p + v)
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.digits(a), self.digits(b));
        let d: Vec<u32> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        self.pack(&d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.digits(a), self.digits(b));
        let d: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&d)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (a, b) = (self.digits(a), self.digits(b));
        let n = self.n();
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            for i in 0..=n {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + p * p - top * self.poly[i] as u64 % p) % p;
            }
        }
        let d: Vec<u32> = prod[..n].iter().map(|&v| v as u32).collect();
        self.pack(&d)
    }
}

fn naive_ddt(nf: &NaiveField, table: &[u32], c: u32) -> Vec<u32> {
    let q = table.len();
    let mut counts = vec![0u32; q * q];
    for a in 0..q as u32 {
        for x in 0..q as u32 {
            let y = nf.sub(table[nf.add(x, a) as usize], nf.mul(c, table[x as usize]));
            counts[a as usize * q + y as usize] += 1;
        }
    }
    counts
}

fn criterion_12() -> Outcome {
    let mut failures = Vec::new();
    let mut tables = 0;
    for (p, n) in [
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
        (3, 3),
        (5, 1),
        (5, 2),
        (7, 1),
        (11, 1),
        (13, 1),
        (17, 1),
        (19, 1),
        (23, 1),
    ] {
        let spec = FieldSpec::builtin(p, n).unwrap();
        let nf = NaiveField {
            p,
            poly: spec.poly.clone(),
        };
        let k = Arc::new(FieldCtx::new(spec).unwrap());
        for s in 0..20u64 {
            let f = random_fn(k.clone(), k.clone(), 77 * s + n as u64).unwrap();
            let raw: Vec<u32> = f.values().iter().map(|v| v.0).collect();
            let rc = ((s * 2_654_435_761 + p as u64) % k.order() as u64) as u32;
            for c in [0, 1, rc] {
                tables += 1;
                if c_ddt(&f, FieldElem(c)).counts != naive_ddt(&nf, &raw, c) {
                    failures.push(format!("{p}^{n} seed {s} c={c}"));
                }
            }
        }
    }
    let sq = c_uniformity(&FnTable::monomial(ctx("3^1"), 2), FieldElem::ONE);
    let cube = c_uniformity(&FnTable::monomial(ctx("2^3"), 3), FieldElem::ONE);
    if sq != 1 {
        failures.push(format!("x^2 on GF(3): uniformity {sq}"));
    }
    if cube != 2 {
        failures.push(format!("x^3 on GF(8): uniformity {cube}"));
    }
    collect(
        failures,
        format!("{tables} tables match entrywise; uniformities 1 and 2"),
    )
}

fn criterion_13() -> Outcome {
    use rayon::prelude::*;
    let mut instances = do_monomials(&ctx("2^3"));
    instances.extend(do_monomials(&ctx("3^3")));
    instances.extend(blokhuis_examples().into_iter().map(|(i, _)| i));
    let cases: Vec<(usize, FieldElem)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| inst.f.cod().elements().map(move |c| (i, c)))
        .collect();
    let results: Vec<Result<(bool, bool), String>> = cases
        .par_iter()
        .map(|&(i, c)| {
            let inst = &instances[i];
            let r = do_theorem_check(&inst.f, c).map_err(|e| format!("{}: {e}", inst.name))?;
            let bent = is_bent1(&inst.f, c).holds;
            let fired_i = r.applicable && r.hypothesis_i.is_some();
            let fired_ii = r.applicable && r.condition_ii_all;
            if fired_i && bent {
                return Err(format!(
                    "{} c={c}: hypothesis (i) holds but F is bent1",
                    inst.name
                ));
            }
            if fired_ii && !bent {
                return Err(format!(
                    "{} c={c}: condition (ii) certified but F is not bent1",
                    inst.name
                ));
            }
            if !r.companion_agrees {
                return Err(format!(
                    "{} c={c}: companion zero set disagrees with the derivative sums",
                    inst.name
                ));
            }
            Ok((fired_i, fired_ii))
        })
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    let fired_i = results
        .iter()
        .filter(|r| matches!(r, Ok((true, _))))
        .count();
    let fired_ii = results
        .iter()
        .filter(|r| matches!(r, Ok((_, true))))
        .count();
    collect(
        failures,
        format!(
            "{} (F, c) cases; (i) fired {fired_i} times, (ii) {fired_ii} times, no contradiction",
            cases.len()
        ),
    )
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        (1, "check: first-kind example list", Box::new(criterion_1)),
        (2, "check: second-kind examples", Box::new(criterion_2)),
        (
            3,
            "scan-monomials: gcd branches of the monomial theorem",
            Box::new(criterion_3),
        ),
        (4, "Gold exponents at c = 0", Box::new(criterion_4)),
        (
            5,
            "do_trace on GF(64) is PcN and bent1 on F_4 minus 1",
            Box::new(criterion_5),
        ),
        (
            6,
            "Blokhuis-type F and G at the listed c",
            Box::new(criterion_6),
        ),
        (
            7,
            "Maiorana-McFarland functions are never bent1",
            Box::new(criterion_7),
        ),
        (
            8,
            "both crosscorrelation identities on random triples",
            Box::new(criterion_8),
        ),
        (
            9,
            "perfect = bent = characterization on the corpus",
            Box::new(|| criterion_9(&corpus)),
        ),
        (
            10,
            "c = 0 ladders on the corpus",
            Box::new(|| criterion_10(&corpus)),
        ),
        (
            11,
            "linearized permutations are perfect of both kinds",
            Box::new(criterion_11),
        ),
        (12, "c-DDT against a naive oracle", Box::new(criterion_12)),
        (
            13,
            "DO theorem hypotheses never contradict bent1",
            Box::new(criterion_13),
        ),
    ];
    let mut failed = 0;
    for (n, title, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n:>2}: {title} ({detail}) [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n:>2}: {title} ({detail}) [{secs:.2}s]");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
