use rayon::prelude::*;
use serde::Serialize;

use super::{Method, Verdict, Witness};
use crate::fnrep::FnTable;
use crate::gf::{sigma, FieldElem};
use crate::spectra::{exponent2, walsh2, xcorr2};

/// counts[j] = |S_j^u|, the number of x whose second-kind exponent
/// σ(F(x+u)) − σ(cF(x)) mod p^m equals j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportProfile2 {
    pub u: u32,
    pub counts: Vec<u32>,
}

impl SupportProfile2 {
    /// |S_{j+p^{m−1}ℓ}| = |S_{j+p^{m−1}(p−1)}| for all j < p^{m−1}, ℓ < p.
    pub fn is_flat(&self, p: u32) -> bool {
        let q = self.counts.len();
        let step = q / p as usize;
        (0..step).all(|j| {
            let top = self.counts[j + step * (p as usize - 1)];
            (0..p as usize).all(|l| self.counts[j + step * l] == top)
        })
    }
}

pub fn support_profile2(f: &FnTable, c: FieldElem, u: FieldElem) -> SupportProfile2 {
    let (dom, cod) = (f.dom(), f.cod());
    let q = cod.order();
    let mut counts = vec![0u32; q as usize];
    for x in dom.elements() {
        let e = exponent2(
            q,
            sigma(cod, f.at(dom.add(x, u))),
            sigma(cod, cod.mul(c, f.at(x))),
        );
        counts[e as usize] += 1;
    }
    SupportProfile2 { u: u.0, counts }
}

/// perfect₂: the second-kind autocorrelation vanishes for all u ≠ 0, and
/// also at u = 0 when `strict`.
pub fn is_perfect2(f: &FnTable, c: FieldElem, strict: bool, method: Method) -> Verdict {
    let dom = f.dom();
    let p = f.cod().p();
    let start = u32::from(!strict);
    let definition = method == Method::Definition;
    let witness = (start..dom.order()).into_par_iter().find_map_first(|u| {
        let fails = if definition {
            !xcorr2(f, f, c, FieldElem(u)).expect("same table").is_zero()
        } else {
            !support_profile2(f, c, FieldElem(u)).is_flat(p)
        };
        fails.then_some(Witness::U { u })
    });
    Verdict::from_witness(
        if definition {
            Method::Definition
        } else {
            Method::Profile
        },
        witness,
    )
}

/// bent₂ by definition: W_F(x)·conj(W_{cF}(x)) equals the u = 0
/// autocorrelation for every x.
pub fn is_bent2(f: &FnTable, c: FieldElem) -> Verdict {
    let rhs = xcorr2(f, f, c, FieldElem::ZERO).expect("same table");
    let cf = f.scaled(c);
    let witness = (0..f.dom().order()).into_par_iter().find_map_first(|x| {
        let x = FieldElem(x);
        (&walsh2(f, x) * &walsh2(&cf, x).conj() != rhs).then_some(Witness::X { x: x.0 })
    });
    Verdict::from_witness(Method::Definition, witness)
}

/// bent₂ through the support-profile characterization (c ≠ 1).
pub fn perfect2_by_profile(f: &FnTable, c: FieldElem) -> Verdict {
    is_perfect2(f, c, false, Method::Profile)
}
