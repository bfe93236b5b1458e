use rayon::prelude::*;

use super::{Method, Verdict, Witness};
use crate::fnrep::FnTable;
use crate::gf::FieldElem;

/// counts[a][b] = #{x : F(x+a) − cF(x) = b}, stored row-major in a.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DdtTable {
    pub c: FieldElem,
    pub rows: usize,
    pub cols: usize,
    pub counts: Vec<u32>,
}

impl DdtTable {
    #[inline]
    pub fn get(&self, a: FieldElem, b: FieldElem) -> u32 {
        self.counts[a.index() * self.cols + b.index()]
    }

    pub fn row(&self, a: FieldElem) -> &[u32] {
        &self.counts[a.index() * self.cols..(a.index() + 1) * self.cols]
    }

    /// Rows that count towards δ: all of them, except a = 0 when c = 1.
    fn first_legal_row(&self) -> usize {
        usize::from(self.c == FieldElem::ONE)
    }

    /// Largest entry over the legal region, with its position.
    pub fn max_entry(&self) -> (u32, FieldElem, FieldElem) {
        let start = self.first_legal_row();
        let mut best = (0, FieldElem(start as u32), FieldElem::ZERO);
        for a in start..self.rows {
            for (b, &v) in self.row(FieldElem(a as u32)).iter().enumerate() {
                if v > best.0 {
                    best = (v, FieldElem(a as u32), FieldElem(b as u32));
                }
            }
        }
        best
    }
}

pub fn c_ddt(f: &FnTable, c: FieldElem) -> DdtTable {
    let (dom, cod) = (f.dom(), f.cod());
    let cols = cod.size();
    let scaled: Vec<FieldElem> = f.values().iter().map(|&y| cod.mul(c, y)).collect();
    let counts = dom
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut row = vec![0u32; cols];
            for x in dom.elements() {
                row[cod.sub(f.at(dom.add(x, a)), scaled[x.index()]).index()] += 1;
            }
            row
        })
        .collect();
    DdtTable {
        c,
        rows: dom.size(),
        cols,
        counts,
    }
}

/// δ_{F,c}; the row a = 0 is excluded only when c = 1.
pub fn c_uniformity(f: &FnTable, c: FieldElem) -> u32 {
    c_ddt(f, c).max_entry().0
}

fn uniformity_at_most(f: &FnTable, c: FieldElem, target: u32) -> Verdict {
    let t = c_ddt(f, c);
    let (max, a, b) = t.max_entry();
    let witness = (max > target).then_some(Witness::Ab {
        a: a.0,
        b: b.0,
        count: max,
    });
    Verdict::from_witness(Method::Counting, witness)
}

/// δ_{F,c} = 1.
pub fn is_pcn(f: &FnTable, c: FieldElem) -> Verdict {
    uniformity_at_most(f, c, 1)
}

/// δ_{F,c} = 2. On failure the witness is a maximal entry of the table.
pub fn is_apcn(f: &FnTable, c: FieldElem) -> Verdict {
    let t = c_ddt(f, c);
    let (max, a, b) = t.max_entry();
    let witness = (max != 2).then_some(Witness::Ab {
        a: a.0,
        b: b.0,
        count: max,
    });
    Verdict::from_witness(Method::Counting, witness)
}

/// Whether x ↦ F(x+a) − cF(x) is a bijection (m = n only).
pub fn c_derivative_is_permutation(f: &FnTable, c: FieldElem, a: FieldElem) -> bool {
    let (dom, cod) = (f.dom(), f.cod());
    let mut seen = vec![false; cod.size()];
    dom.elements().all(|x| {
        let y = cod.sub(f.at(dom.add(x, a)), cod.mul(c, f.at(x)));
        !std::mem::replace(&mut seen[y.index()], true)
    }) && dom.size() == cod.size()
}
