//! Exact c-differential analysis of p-ary functions over small finite fields.
//!
//! Functions are stored as full lookup tables over [`gf::FieldCtx`]; every
//! character sum is an exact element of Z[ζ_{p^k}] ([`cyclo::CycInt`]), so
//! each predicate is decided without floating point.
//!
//! ```
//! use cbent_core::{analysis, FieldCtx, FieldElem, FnTable};
//!
//! let f8 = FieldCtx::parse("2^3").unwrap();
//! let cube = FnTable::monomial(f8, 3);
//! assert!(analysis::is_bent1(&cube, FieldElem::ZERO).holds);
//! ```

pub mod analysis;
pub mod cyclo;
pub mod families;
pub mod fnrep;
pub mod gf;
pub mod spectra;

pub use analysis::{AnalysisReport, Method, Predicate, PredicateReport, Verdict, Witness};
pub use cyclo::{CycInt, CycOrder};
pub use families::FamilySpec;
pub use fnrep::{FnTable, PolyExpr};
pub use gf::{sigma, FieldCtx, FieldElem, FieldSpec, SubfieldEmbedding};
