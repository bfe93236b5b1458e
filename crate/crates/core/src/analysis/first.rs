use rayon::prelude::*;
use serde::Serialize;

use super::{Method, Verdict, Witness};
use crate::fnrep::FnTable;
use crate::gf::FieldElem;
use crate::spectra::{walsh1, walsh2, xcorr1};

/// perfect₁: the c-autocorrelation vanishes for all u ≠ 0, b ≠ 0. The strict
/// form also takes u = 0. b = 0 is never part of the domain.
///
/// `Method::Balance` decides each (u, b) by checking that x ↦ Tr_m(b·D(x))
/// hits every value of Z_p exactly p^{n−1} times, which is the same as the
/// sum vanishing because 1 + ζ + … + ζ^{p−1} is the only relation in Z[ζ_p].
pub fn is_perfect1(f: &FnTable, c: FieldElem, strict: bool, method: Method) -> Verdict {
    let (dom, cod) = (f.dom(), f.cod());
    let p = dom.p() as usize;
    let fiber = dom.order() / dom.p();
    let start = u32::from(!strict);
    let witness = (start..dom.order()).into_par_iter().find_map_first(|u| {
        let u = FieldElem(u);
        match method {
            Method::Definition => cod
                .nonzero()
                .find(|&b| !xcorr1(f, f, c, u, b).expect("same table").is_zero())
                .map(|b| Witness::Ub { u: u.0, b: b.0 }),
            _ => {
                let d: Vec<FieldElem> = dom
                    .elements()
                    .map(|x| cod.sub(f.at(dom.add(x, u)), cod.mul(c, f.at(x))))
                    .collect();
                let mut hist = vec![0u32; p];
                cod.nonzero()
                    .find(|&b| {
                        hist.iter_mut().for_each(|h| *h = 0);
                        for &y in &d {
                            hist[cod.abs_trace(cod.mul(b, y)) as usize] += 1;
                        }
                        hist.iter().any(|&h| h != fiber)
                    })
                    .map(|b| Witness::Ub { u: u.0, b: b.0 })
            }
        }
    });
    let method = if method == Method::Definition {
        Method::Definition
    } else {
        Method::Balance
    };
    Verdict::from_witness(method, witness)
}

/// bent₁ by definition: W_F(x,b)·conj(W_F(x,bc)) equals the u = 0
/// autocorrelation for every x and every b ≠ 0.
pub fn is_bent1(f: &FnTable, c: FieldElem) -> Verdict {
    let (dom, cod) = (f.dom(), f.cod());
    let witness = (1..cod.order()).into_par_iter().find_map_first(|b| {
        let b = FieldElem(b);
        let rhs = xcorr1(f, f, c, FieldElem::ZERO, b).expect("same table");
        let bc = cod.mul(b, c);
        dom.elements()
            .find(|&x| &walsh1(f, x, b) * &walsh1(f, x, bc).conj() != rhs)
            .map(|x| Witness::Xb { x: x.0, b: b.0 })
    });
    Verdict::from_witness(Method::Definition, witness)
}

/// bent₁ through the balance characterization; only meaningful for c ≠ 1.
pub fn is_bent1_by_balance(f: &FnTable, c: FieldElem) -> Verdict {
    is_perfect1(f, c, false, Method::Balance)
}

/// The conditions that should all coincide at c = 0.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroCReport {
    pub bent1: bool,
    /// W_F(0, b) = 0 for every b ≠ 0.
    pub walsh1_origin_zero: bool,
    /// Every output value is taken p^{n−m} times.
    pub balanced: bool,
    /// Only reported when m = n.
    pub permutation: Option<bool>,
    pub bent2: bool,
    /// W_F(0) = 0 for the semi-vectorial transform.
    pub walsh2_origin_zero: bool,
    pub consistent: bool,
}

pub fn zero_c_characterization(f: &FnTable) -> ZeroCReport {
    let (dom, cod) = (f.dom(), f.cod());
    let zero = FieldElem::ZERO;
    let bent1 = is_bent1(f, zero).holds;
    let walsh1_origin_zero = cod.nonzero().all(|b| walsh1(f, zero, b).is_zero());
    let mut counts = vec![0u32; cod.size()];
    for &y in f.values() {
        counts[y.index()] += 1;
    }
    let balanced = counts.iter().all(|&k| k == dom.order() / cod.order());
    let permutation = f.is_square().then_some(balanced);
    let bent2 = super::second::is_bent2(f, zero).holds;
    let walsh2_origin_zero = walsh2(f, zero).is_zero();
    let consistent = bent1 == walsh1_origin_zero
        && bent1 == balanced
        && permutation.is_none_or(|p| p == bent1)
        && bent2 == walsh2_origin_zero;
    ZeroCReport {
        bent1,
        walsh1_origin_zero,
        balanced,
        permutation,
        bent2,
        walsh2_origin_zero,
        consistent,
    }
}
