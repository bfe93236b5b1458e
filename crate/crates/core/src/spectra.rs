//! Walsh transforms and c-crosscorrelations as exact cyclotomic integers.
//!
//! First kind values live in Z[ζ_p]. Second kind values live in Z[ζ_{p^m}],
//! where the output F(x) enters the exponent as the integer σ(F(x)) and the
//! character ζ_p^{-Tr_n(ax)} is rewritten as ζ_{p^m}^{-p^{m-1} Tr_n(ax)}.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{CycInt, CycOrder, CycloError};
use crate::fnrep::FnTable;
use crate::gf::{sigma, FieldElem};

/// Full spectra are only materialized when p^{n+m} stays below this.
pub const MAX_SPECTRUM_CELLS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("spectrum would hold {cells} values, more than the bound {max}")]
    TooLarge { cells: u64, max: u64 },
    #[error("functions do not share domain and codomain")]
    ShapeMismatch,
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

/// Z[ζ_p] for first-kind sums.
pub fn order1(f: &FnTable) -> CycOrder {
    CycOrder::prime_power(f.dom().p(), 1)
}

/// Z[ζ_{p^m}] for second-kind sums.
pub fn order2(f: &FnTable) -> CycOrder {
    CycOrder::prime_power(f.cod().p(), f.cod().n())
}

fn check_shape(f: &FnTable, g: &FnTable) -> Result<(), SpectraError> {
    if f.same_shape(g) {
        Ok(())
    } else {
        Err(SpectraError::ShapeMismatch)
    }
}

/// Σ_x ζ_p^{Tr_m(bF(x)) − Tr_n(ax)}.
pub fn walsh1(f: &FnTable, a: FieldElem, b: FieldElem) -> CycInt {
    let (dom, cod) = (f.dom(), f.cod());
    let p = dom.p();
    let mut counts = vec![0i64; p as usize];
    for x in dom.elements() {
        let e = cod.abs_trace(cod.mul(b, f.at(x))) + p - dom.abs_trace(dom.mul(a, x));
        counts[(e % p) as usize] += 1;
    }
    CycInt::from_exponent_counts(order1(f), &counts)
}

/// Σ_x ζ_p^{Tr_m(b(F(x+u) − cG(x)))}. At b = 0 this is p^n.
pub fn xcorr1(
    f: &FnTable,
    g: &FnTable,
    c: FieldElem,
    u: FieldElem,
    b: FieldElem,
) -> Result<CycInt, SpectraError> {
    check_shape(f, g)?;
    let (dom, cod) = (f.dom(), f.cod());
    let mut counts = vec![0i64; dom.p() as usize];
    for x in dom.elements() {
        let d = cod.sub(f.at(dom.add(x, u)), cod.mul(c, g.at(x)));
        counts[cod.abs_trace(cod.mul(b, d)) as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(order1(f), &counts))
}

/// Σ_x ζ_{p^m}^{σ(F(x))} ζ_p^{−Tr_n(ax)}.
pub fn walsh2(f: &FnTable, a: FieldElem) -> CycInt {
    let (dom, cod) = (f.dom(), f.cod());
    let q = cod.order() as u64;
    let step = q / cod.p() as u64;
    let mut counts = vec![0i64; q as usize];
    for x in dom.elements() {
        let e = sigma(cod, f.at(x)) as u64 + q - step * dom.abs_trace(dom.mul(a, x)) as u64;
        counts[(e % q) as usize] += 1;
    }
    CycInt::from_exponent_counts(order2(f), &counts)
}

/// The second-kind exponent σ(y) − σ(z) mod p^m.
#[inline]
pub fn exponent2(q: u32, sy: u32, sz: u32) -> u32 {
    (sy + q - sz) % q
}

/// Σ_x ζ_{p^m}^{σ(F(x+u)) − σ(cG(x))}.
pub fn xcorr2(
    f: &FnTable,
    g: &FnTable,
    c: FieldElem,
    u: FieldElem,
) -> Result<CycInt, SpectraError> {
    check_shape(f, g)?;
    let (dom, cod) = (f.dom(), f.cod());
    let q = cod.order();
    let mut counts = vec![0i64; q as usize];
    for x in dom.elements() {
        let e = exponent2(
            q,
            sigma(cod, f.at(dom.add(x, u))),
            sigma(cod, cod.mul(c, g.at(x))),
        );
        counts[e as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(order2(f), &counts))
}

fn bound(cells: u64) -> Result<(), SpectraError> {
    if cells > MAX_SPECTRUM_CELLS {
        Err(SpectraError::TooLarge {
            cells,
            max: MAX_SPECTRUM_CELLS,
        })
    } else {
        Ok(())
    }
}

/// walsh1 over every (a, b), stored row-major in a.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum1 {
    pub dom_order: u32,
    pub cod_order: u32,
    pub values: Vec<CycInt>,
}

impl Spectrum1 {
    #[inline]
    pub fn get(&self, a: FieldElem, b: FieldElem) -> &CycInt {
        &self.values[a.index() * self.cod_order as usize + b.index()]
    }

    pub fn get_mut(&mut self, a: FieldElem, b: FieldElem) -> &mut CycInt {
        &mut self.values[a.index() * self.cod_order as usize + b.index()]
    }

    pub fn rows(&self) -> Vec<Value> {
        let q = self.cod_order as usize;
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let (re, im) = v.to_complex();
                json!({"a": i / q, "b": i % q, "coeffs": v.coeffs_json(), "approx": [re, im]})
            })
            .collect()
    }
}

pub fn walsh1_spectrum(f: &FnTable) -> Result<Spectrum1, SpectraError> {
    let (qn, qm) = (f.dom().order(), f.cod().order());
    bound(qn as u64 * qm as u64)?;
    let values = (0..qn)
        .into_par_iter()
        .flat_map_iter(|a| (0..qm).map(move |b| walsh1(f, FieldElem(a), FieldElem(b))))
        .collect();
    Ok(Spectrum1 {
        dom_order: qn,
        cod_order: qm,
        values,
    })
}

/// walsh2 over every a.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2 {
    pub values: Vec<CycInt>,
}

impl Spectrum2 {
    #[inline]
    pub fn get(&self, a: FieldElem) -> &CycInt {
        &self.values[a.index()]
    }

    pub fn rows(&self) -> Vec<Value> {
        self.values
            .iter()
            .enumerate()
            .map(|(a, v)| {
                let (re, im) = v.to_complex();
                json!({"a": a, "coeffs": v.coeffs_json(), "approx": [re, im]})
            })
            .collect()
    }
}

pub fn walsh2_spectrum(f: &FnTable) -> Result<Spectrum2, SpectraError> {
    bound(f.dom().order() as u64)?;
    let values = f
        .dom()
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| walsh2(f, a))
        .collect();
    Ok(Spectrum2 { values })
}

/// Everything Lemma 1 relates, kept as plain data so a test can corrupt any
/// piece and watch the check fail.
#[derive(Debug, Clone)]
pub struct Lemma1Data {
    pub c: FieldElem,
    pub wf: Spectrum1,
    pub wg: Spectrum1,
    /// C(u, b) row-major in u.
    pub xcorr: Vec<CycInt>,
}

pub fn lemma1_data(f: &FnTable, g: &FnTable, c: FieldElem) -> Result<Lemma1Data, SpectraError> {
    check_shape(f, g)?;
    let wf = walsh1_spectrum(f)?;
    let wg = walsh1_spectrum(g)?;
    let (dom, cod) = (f.dom(), f.cod());
    let xcorr = dom
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|u| cod.elements().map(move |b| xcorr1(f, g, c, u, b).unwrap()))
        .collect();
    Ok(Lemma1Data { c, wf, wg, xcorr })
}

/// Checks, for every (x, b),
///   Σ_u C(u,b) ζ^{−Tr(ux)} = W_F(x,b)·conj(W_G(x,bc))
/// and, for every (u, b),
///   p^n C(u,b) = Σ_x W_F(x,b)·conj(W_G(x,bc)) ζ^{Tr(ux)}.
pub fn check_lemma1(f: &FnTable, d: &Lemma1Data) -> bool {
    let (dom, cod) = (f.dom(), f.cod());
    let qm = cod.size();
    let pn = dom.order() as i64;
    let nonzero =
        |x: FieldElem, b: FieldElem| d.wf.get(x, b) * &d.wg.get(x, cod.mul(b, d.c)).conj();
    let pairs: Vec<(FieldElem, FieldElem)> = dom
        .elements()
        .flat_map(|x| cod.elements().map(move |b| (x, b)))
        .collect();
    let products: Vec<CycInt> = pairs.par_iter().map(|&(x, b)| nonzero(x, b)).collect();
    let order = order1(f);
    pairs.par_iter().all(|&(x, b)| {
        let mut lhs = CycInt::zero(order);
        for u in dom.elements() {
            let t = dom.abs_trace(dom.mul(u, x)) as i64;
            lhs = &lhs + &d.xcorr[u.index() * qm + b.index()].mul_root(-t);
        }
        lhs == products[x.index() * qm + b.index()]
    }) && pairs.par_iter().all(|&(u, b)| {
        let mut rhs = CycInt::zero(order);
        for x in dom.elements() {
            let t = dom.abs_trace(dom.mul(u, x)) as i64;
            rhs = &rhs + &products[x.index() * qm + b.index()].mul_root(t);
        }
        d.xcorr[u.index() * qm + b.index()].scale_int(pn) == rhs
    })
}

pub fn verify_lemma1(f: &FnTable, g: &FnTable, c: FieldElem) -> Result<bool, SpectraError> {
    let d = lemma1_data(f, g, c)?;
    Ok(check_lemma1(f, &d))
}

#[derive(Debug, Clone)]
pub struct Lemma2Data {
    pub c: FieldElem,
    /// walsh2 of F.
    pub wf: Spectrum2,
    /// walsh2 of x ↦ cG(x).
    pub wcg: Spectrum2,
    /// C(u) indexed by u.
    pub xcorr: Vec<CycInt>,
}

pub fn lemma2_data(f: &FnTable, g: &FnTable, c: FieldElem) -> Result<Lemma2Data, SpectraError> {
    check_shape(f, g)?;
    let wf = walsh2_spectrum(f)?;
    let wcg = walsh2_spectrum(&g.scaled(c))?;
    let xcorr = f
        .dom()
        .elements()
        .map(|u| xcorr2(f, g, c, u))
        .collect::<Result<_, _>>()?;
    Ok(Lemma2Data { c, wf, wcg, xcorr })
}

/// The second-kind analogue of [`check_lemma1`], with the ζ_p character
/// written as ζ_{p^m}^{p^{m−1}}.
pub fn check_lemma2(f: &FnTable, d: &Lemma2Data) -> bool {
    let dom = f.dom();
    let order = order2(f);
    let step = (order.n() / order.p()) as i64;
    let pn = dom.order() as i64;
    let products: Vec<CycInt> = dom
        .elements()
        .map(|x| d.wf.get(x) * &d.wcg.get(x).conj())
        .collect();
    let all: Vec<FieldElem> = dom.elements().collect();
    all.par_iter().all(|&x| {
        let mut lhs = CycInt::zero(order);
        for u in dom.elements() {
            let t = dom.abs_trace(dom.mul(u, x)) as i64;
            lhs = &lhs + &d.xcorr[u.index()].mul_root(-t * step);
        }
        lhs == products[x.index()]
    }) && all.par_iter().all(|&u| {
        let mut rhs = CycInt::zero(order);
        for x in dom.elements() {
            let t = dom.abs_trace(dom.mul(u, x)) as i64;
            rhs = &rhs + &products[x.index()].mul_root(t * step);
        }
        d.xcorr[u.index()].scale_int(pn) == rhs
    })
}

pub fn verify_lemma2(f: &FnTable, g: &FnTable, c: FieldElem) -> Result<bool, SpectraError> {
    let d = lemma2_data(f, g, c)?;
    Ok(check_lemma2(f, &d))
}
