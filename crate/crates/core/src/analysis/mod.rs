//! Verdict-level predicates: c-DDT and uniformity, perfect/bent of both
//! kinds, support profiles and the Dembowski–Ostrom companion checks.
//!
//! Every predicate returns a [`Verdict`]. A false verdict always carries the
//! first failing point in a fixed scan order, so results do not depend on how
//! rayon schedules the work.

mod ddt;
mod dembowski;
mod first;
mod second;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::fnrep::FnTable;
use crate::gf::FieldElem;

pub use ddt::{c_ddt, c_derivative_is_permutation, c_uniformity, is_apcn, is_pcn, DdtTable};
pub use dembowski::{
    do_companion, do_decompose, do_theorem_check, Companion, DoForm, DoTheoremReport,
};
pub use first::{is_bent1, is_bent1_by_balance, is_perfect1, zero_c_characterization, ZeroCReport};
pub use second::{is_bent2, is_perfect2, perfect2_by_profile, support_profile2, SupportProfile2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("not a Dembowski-Ostrom polynomial: {0}")]
    NotDoPolynomial(String),
    #[error("predicate needs domain equal to codomain")]
    DomainMismatch,
    #[error("method {method} does not apply to {predicate}")]
    BadMethod {
        predicate: Predicate,
        method: Method,
    },
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
}

/// The point at which a predicate failed. Fields are element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// c-autocorrelation of the first kind nonzero at (u, b).
    Ub { u: u32, b: u32 },
    /// bent₁ identity broken at (x, b).
    Xb { x: u32, b: u32 },
    /// second-kind autocorrelation nonzero at u.
    U { u: u32 },
    /// bent₂ identity broken at x.
    X { x: u32 },
    /// c-DDT entry above the target.
    Ab { a: u32, b: u32, count: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact cyclotomic evaluation of the defining sums.
    Definition,
    /// Fiber counting of the traced c-derivative.
    Balance,
    /// Support-profile counting for the second kind.
    Profile,
    /// Direct c-DDT enumeration.
    Counting,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Definition => "definition",
            Method::Balance => "balance",
            Method::Profile => "profile",
            Method::Counting => "counting",
        })
    }
}

impl FromStr for Method {
    type Err = AnalysisError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "definition" => Ok(Method::Definition),
            "balance" => Ok(Method::Balance),
            "profile" => Ok(Method::Profile),
            "counting" => Ok(Method::Counting),
            _ => Err(AnalysisError::Unknown {
                kind: "method",
                name: s.into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub method: Method,
}

impl Verdict {
    /// True exactly when the scan found no witness.
    pub fn from_witness(method: Method, witness: Option<Witness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
            method,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Pcn,
    Apcn,
    Perfect1,
    StrictPerfect1,
    Bent1,
    Perfect2,
    StrictPerfect2,
    Bent2,
}

impl Predicate {
    pub const ALL: [Predicate; 8] = [
        Predicate::Pcn,
        Predicate::Apcn,
        Predicate::Perfect1,
        Predicate::StrictPerfect1,
        Predicate::Bent1,
        Predicate::Perfect2,
        Predicate::StrictPerfect2,
        Predicate::Bent2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Pcn => "pcn",
            Predicate::Apcn => "apcn",
            Predicate::Perfect1 => "perfect1",
            Predicate::StrictPerfect1 => "strict-perfect1",
            Predicate::Bent1 => "bent1",
            Predicate::Perfect2 => "perfect2",
            Predicate::StrictPerfect2 => "strict-perfect2",
            Predicate::Bent2 => "bent2",
        }
    }

    /// Cheapest sound method. The bent predicates fall back to the
    /// definition at c = 1, where the equivalence with perfectness fails.
    pub fn default_method(self, c: FieldElem) -> Method {
        match self {
            Predicate::Pcn | Predicate::Apcn => Method::Counting,
            Predicate::Perfect1 | Predicate::StrictPerfect1 => Method::Balance,
            Predicate::Perfect2 | Predicate::StrictPerfect2 => Method::Profile,
            Predicate::Bent1 if c != FieldElem::ONE => Method::Balance,
            Predicate::Bent2 if c != FieldElem::ONE => Method::Profile,
            Predicate::Bent1 | Predicate::Bent2 => Method::Definition,
        }
    }

    pub fn evaluate(
        self,
        f: &FnTable,
        c: FieldElem,
        method: Option<Method>,
    ) -> Result<Verdict, AnalysisError> {
        let method = method.unwrap_or_else(|| self.default_method(c));
        let bad = || AnalysisError::BadMethod {
            predicate: self,
            method,
        };
        let one = c == FieldElem::ONE;
        match (self, method) {
            (Predicate::Pcn, Method::Counting) => Ok(is_pcn(f, c)),
            (Predicate::Apcn, Method::Counting) => Ok(is_apcn(f, c)),
            (Predicate::Perfect1, Method::Definition | Method::Balance) => {
                Ok(is_perfect1(f, c, false, method))
            }
            (Predicate::StrictPerfect1, Method::Definition | Method::Balance) => {
                Ok(is_perfect1(f, c, true, method))
            }
            (Predicate::Bent1, Method::Definition) => Ok(is_bent1(f, c)),
            (Predicate::Bent1, Method::Balance) if !one => Ok(is_bent1_by_balance(f, c)),
            (Predicate::Perfect2, Method::Definition | Method::Profile) => {
                Ok(is_perfect2(f, c, false, method))
            }
            (Predicate::StrictPerfect2, Method::Definition | Method::Profile) => {
                Ok(is_perfect2(f, c, true, method))
            }
            (Predicate::Bent2, Method::Definition) => Ok(is_bent2(f, c)),
            (Predicate::Bent2, Method::Profile) if !one => Ok(perfect2_by_profile(f, c)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = AnalysisError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| AnalysisError::Unknown {
                kind: "predicate",
                name: s.into(),
            })
    }
}

/// One line of the JSON report stream.
#[derive(Debug, Clone, Serialize)]
pub struct PredicateReport {
    pub schema: u32,
    pub predicate: Predicate,
    /// The multiplier, as an element index of the codomain.
    pub c: u32,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub method: Method,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<&'static str>,
}

pub const C_ONE_CAVEAT: &str = "the perfect/bent equivalences assume c != 1";

impl PredicateReport {
    pub fn run(
        f: &FnTable,
        predicate: Predicate,
        c: FieldElem,
        method: Option<Method>,
    ) -> Result<Self, AnalysisError> {
        let start = Instant::now();
        let v = predicate.evaluate(f, c, method)?;
        let caveat = matches!(predicate, Predicate::Bent1 | Predicate::Bent2)
            .then_some(C_ONE_CAVEAT)
            .filter(|_| c == FieldElem::ONE);
        Ok(PredicateReport {
            schema: 1,
            predicate,
            c: c.0,
            verdict: v.holds,
            witness: v.witness,
            method: v.method,
            elapsed_ms: start.elapsed().as_millis() as u64,
            caveat,
        })
    }
}

/// All verdicts for one (F, c), each by its default method.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub c: u32,
    pub delta: u32,
    pub pcn: bool,
    pub apcn: bool,
    pub perfect1: Verdict,
    pub strict_perfect1: Verdict,
    pub bent1: Verdict,
    pub perfect2: Verdict,
    pub strict_perfect2: Verdict,
    pub bent2: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<&'static str>,
}

pub fn analyze(f: &FnTable, c: FieldElem) -> AnalysisReport {
    let delta = c_uniformity(f, c);
    let run = |p: Predicate| {
        p.evaluate(f, c, None)
            .expect("default methods always apply")
    };
    AnalysisReport {
        c: c.0,
        delta,
        pcn: delta == 1,
        apcn: delta == 2,
        perfect1: run(Predicate::Perfect1),
        strict_perfect1: run(Predicate::StrictPerfect1),
        bent1: run(Predicate::Bent1),
        perfect2: run(Predicate::Perfect2),
        strict_perfect2: run(Predicate::StrictPerfect2),
        bent2: run(Predicate::Bent2),
        caveat: (c == FieldElem::ONE).then_some(C_ONE_CAVEAT),
    }
}
