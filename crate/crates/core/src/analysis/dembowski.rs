//! Dembowski–Ostrom forms F(x) = Σ a_ij x^{p^i+p^j} and their linearized
//! companions.
//!
//! For u ≠ 0 the derivative F(x+u) − F(x) equals Σ_i A_i x^{p^i} + F(u) with
//! A_i = Σ_k u^{p^k}(a_ik + a_ki). The companion
//!   L_u(b) = A_{n−1} b + A_{n−2}^p b^p + … + A_0^{p^{n−1}} b^{p^{n−1}}
//! is the adjoint of b ↦ b·Σ A_i x^{p^i} raised to the p^{n−1}, so it vanishes
//! exactly when Σ_x ζ^{Tr(b(F(x+u) − F(x)))} is nonzero.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{is_bent1, AnalysisError};
use crate::cyclo::CycInt;
use crate::fnrep::FnTable;
use crate::gf::{FieldCtx, FieldElem};
use crate::spectra::order1;

/// Coefficients a_ij with i ≤ j (row-major n×n, zero below the diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct DoForm {
    ctx: Arc<FieldCtx>,
    a: Vec<FieldElem>,
}

impl DoForm {
    /// Builds a form from an arbitrary n×n matrix, folding a_ji into a_ij
    /// for i < j.
    pub fn from_matrix(ctx: Arc<FieldCtx>, m: &[FieldElem]) -> Self {
        let n = ctx.n() as usize;
        assert_eq!(m.len(), n * n, "matrix must be n×n");
        let mut a = vec![FieldElem::ZERO; n * n];
        for i in 0..n {
            a[i * n + i] = m[i * n + i];
            for j in i + 1..n {
                a[i * n + j] = ctx.add(m[i * n + j], m[j * n + i]);
            }
        }
        DoForm { ctx, a }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n() as usize
    }

    #[inline]
    pub fn coef(&self, i: usize, j: usize) -> FieldElem {
        self.a[i * self.n() + j]
    }

    /// Nonzero coefficients as ((i, j), a_ij).
    pub fn terms(&self) -> Vec<((usize, usize), FieldElem)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.coef(i, j)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let ctx = &self.ctx;
        self.terms()
            .into_iter()
            .fold(FieldElem::ZERO, |acc, ((i, j), a)| {
                let t = ctx.mul(ctx.frobenius(x, i as u32), ctx.frobenius(x, j as u32));
                ctx.add(acc, ctx.mul(a, t))
            })
    }

    pub fn to_table(&self) -> FnTable {
        FnTable::from_fn(self.ctx.clone(), self.ctx.clone(), |x| self.eval(x)).expect("same field")
    }
}

/// Position (i, j), i ≤ j, of each exponent p^i + p^j after reduction into
/// [1, q−1]. For p = 2 the diagonal gives the linear exponents 2^{i+1}.
fn do_exponents(ctx: &FieldCtx) -> Vec<Option<(usize, usize)>> {
    let q = ctx.order() as u64;
    let n = ctx.n() as usize;
    let mut slot = vec![None; q as usize];
    for i in 0..n {
        for j in i..n {
            let mut e = (ctx.p() as u64).pow(i as u32) + (ctx.p() as u64).pow(j as u32);
            if e >= q {
                e -= q - 1;
            }
            slot[e as usize] = Some((i, j));
        }
    }
    slot
}

/// Recovers the DO form of a table by interpolation:
/// a_0 = F(0), a_e = −Σ_{x≠0} F(x) x^{−e} for 1 ≤ e ≤ q−2, a_{q−1} = −Σ_x F(x).
pub fn do_decompose(f: &FnTable) -> Result<DoForm, AnalysisError> {
    if !f.is_square() {
        return Err(AnalysisError::DomainMismatch);
    }
    let ctx = f.dom().clone();
    let q = ctx.order() as u64;
    let n = ctx.n() as usize;
    let slots = do_exponents(&ctx);
    let mut a = vec![FieldElem::ZERO; n * n];
    for e in 0..q {
        let coef = match e {
            0 => f.at(FieldElem::ZERO),
            e if e == q - 1 => ctx.neg(
                f.values()
                    .iter()
                    .fold(FieldElem::ZERO, |s, &y| ctx.add(s, y)),
            ),
            e => {
                let s = ctx.nonzero().fold(FieldElem::ZERO, |s, x| {
                    let lx = ctx.log(x).unwrap() as u64;
                    let xe = ctx.exp((q - 1) - (lx * e) % (q - 1));
                    ctx.add(s, ctx.mul(f.at(x), xe))
                });
                ctx.neg(s)
            }
        };
        if coef.is_zero() {
            continue;
        }
        match slots[e as usize] {
            Some((i, j)) => a[i * n + j] = ctx.add(a[i * n + j], coef),
            None => {
                return Err(AnalysisError::NotDoPolynomial(format!(
                    "term x^{e} is present"
                )))
            }
        }
    }
    let form = DoForm { ctx, a };
    debug_assert_eq!(form.to_table().values(), f.values());
    Ok(form)
}

/// The companion data at a fixed u ≠ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Companion {
    pub u: FieldElem,
    /// A_i, the coefficient of x^{p^i} in F(x+u) − F(x) − F(u).
    pub a: Vec<FieldElem>,
    ctx: Arc<FieldCtx>,
}

impl Companion {
    /// L_u(b) = Σ_i A_{n−1−i}^{p^i} b^{p^i}.
    pub fn eval(&self, b: FieldElem) -> FieldElem {
        let ctx = &self.ctx;
        let n = self.a.len();
        (0..n).fold(FieldElem::ZERO, |acc, i| {
            let t = ctx.frobenius(ctx.mul(self.a[n - 1 - i], b), i as u32);
            ctx.add(acc, t)
        })
    }

    /// Σ_i A_i x^{p^i}.
    pub fn linear_part(&self, x: FieldElem) -> FieldElem {
        let ctx = &self.ctx;
        self.a
            .iter()
            .enumerate()
            .fold(FieldElem::ZERO, |acc, (i, &ai)| {
                ctx.add(acc, ctx.mul(ai, ctx.frobenius(x, i as u32)))
            })
    }
}

pub fn do_companion(d: &DoForm, u: FieldElem) -> Companion {
    let ctx = d.ctx.clone();
    let n = d.n();
    let upk: Vec<FieldElem> = (0..n).map(|k| ctx.frobenius(u, k as u32)).collect();
    let a = (0..n)
        .map(|i| {
            (0..n).fold(FieldElem::ZERO, |acc, k| {
                // a_ik + a_ki against the triangular storage
                let s = if i == k {
                    ctx.add(d.coef(i, i), d.coef(i, i))
                } else {
                    d.coef(i.min(k), i.max(k))
                };
                ctx.add(acc, ctx.mul(upk[k], s))
            })
        })
        .collect();
    Companion { u, a, ctx }
}

/// Outcome of evaluating the DO theorem's hypotheses for one c.
#[derive(Debug, Clone, Serialize)]
pub struct DoTheoremReport {
    pub c: u32,
    /// False at c = 1, where b(1−c)F vanishes and the hypotheses degenerate.
    pub applicable: bool,
    /// L_u(b) = 0 exactly when Σ_x ζ^{Tr(b D_uF(x))} = ζ^{Tr(bF(u))} p^n,
    /// and otherwise the sum is 0, for every u, b ≠ 0.
    pub companion_agrees: bool,
    /// First (u, b) at which hypothesis (i) fires.
    pub hypothesis_i: Option<(u32, u32)>,
    /// Number of (u, b) satisfying the per-pair condition of (ii).
    pub condition_ii_pairs: u64,
    /// Condition (ii) holds at every (u, b) with u, b ≠ 0.
    pub condition_ii_all: bool,
    pub bent1: bool,
    /// No fired hypothesis contradicts the direct bent₁ verdict.
    pub consistent: bool,
}

struct PairScan {
    agrees: bool,
    fires_i: Option<u32>,
    ii_pairs: u64,
}

/// Evaluates both hypotheses of the DO theorem at every (u, b) and compares
/// their conclusions with the definitional bent₁ verdict.
///
/// For (ii) the per-pair condition is the one the proof needs:
///   Σ_{i≥1} (1 − ζ^i) Σ_{x∈Ω_i} ζ^{Tr(b D_uF(x))} = 0 if L_u(b) ≠ 0,
///                                                  = ζ^{Tr(bF(u))} p^n if L_u(b) = 0,
/// where Ω_i = {x : Tr(b(1−c)F(x)) = i}. It is certified only when it holds
/// at every pair.
pub fn do_theorem_check(f: &FnTable, c: FieldElem) -> Result<DoTheoremReport, AnalysisError> {
    let form = do_decompose(f)?;
    let ctx = f.dom().clone();
    let p = ctx.p() as usize;
    let pn = ctx.order() as i64;
    let order = order1(f);
    let applicable = c != FieldElem::ONE;
    let one_minus_c = ctx.sub(FieldElem::ONE, c);

    let scans: Vec<PairScan> = (1..ctx.order())
        .into_par_iter()
        .map(|u| {
            let u = FieldElem(u);
            let comp = do_companion(&form, u);
            let fu = f.at(u);
            let d: Vec<FieldElem> = ctx
                .elements()
                .map(|x| ctx.sub(f.at(ctx.add(x, u)), f.at(x)))
                .collect();
            let mut scan = PairScan {
                agrees: true,
                fires_i: None,
                ii_pairs: 0,
            };
            for b in ctx.nonzero() {
                let l_zero = comp.eval(b).is_zero();
                let shift = ctx.abs_trace(ctx.mul(b, fu)) as i64;
                let expected = if l_zero {
                    CycInt::root_power(order, shift).scale_int(pn)
                } else {
                    CycInt::zero(order)
                };
                let mut full = vec![0i64; p];
                let mut weighted = vec![0i64; p];
                let mut support = 0u32;
                let bg = ctx.mul(b, one_minus_c);
                for x in ctx.elements() {
                    let e = ctx.abs_trace(ctx.mul(b, d[x.index()])) as usize;
                    full[e] += 1;
                    let i = ctx.abs_trace(ctx.mul(bg, f.at(x))) as usize;
                    if i != 0 {
                        support += 1;
                        weighted[e] += 1;
                        weighted[(e + i) % p] -= 1;
                    }
                }
                if CycInt::from_exponent_counts(order, &full) != expected {
                    scan.agrees = false;
                }
                if !applicable {
                    continue;
                }
                if l_zero && (support as i64) < pn / p as i64 && scan.fires_i.is_none() {
                    scan.fires_i = Some(b.0);
                }
                if CycInt::from_exponent_counts(order, &weighted) == expected {
                    scan.ii_pairs += 1;
                }
            }
            scan
        })
        .collect();

    let companion_agrees = scans.iter().all(|s| s.agrees);
    let hypothesis_i = scans
        .iter()
        .enumerate()
        .find_map(|(k, s)| s.fires_i.map(|b| (k as u32 + 1, b)));
    let condition_ii_pairs: u64 = scans.iter().map(|s| s.ii_pairs).sum();
    let total = (ctx.order() as u64 - 1).pow(2);
    let condition_ii_all = applicable && condition_ii_pairs == total;
    let bent1 = is_bent1(f, c).holds;
    let consistent =
        companion_agrees && (hypothesis_i.is_none() || !bent1) && (!condition_ii_all || bent1);
    Ok(DoTheoremReport {
        c: c.0,
        applicable,
        companion_agrees,
        hypothesis_i,
        condition_ii_pairs,
        condition_ii_all,
        bent1,
        consistent,
    })
}
