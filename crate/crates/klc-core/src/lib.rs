//! Exact linear-complexity analysis of binary sequences whose period is a
//! power of two.
//!
//! The crate has four layers:
//!
//! - [`seq`]: bit-packed periodic sequences, the Games-Chan recursion, the
//!   halving (fold) map, and a minimal-polynomial multiplicity oracle that
//!   recomputes the same quantity by polynomial division.
//! - [`kerror`]: k-error linear complexity by brute-force minimization over
//!   weight-bounded error patterns, complexity-bounded subspaces, and
//!   Hamming-ball membership counts over a presence bitmap.
//! - [`counting`]: closed-form counting functions for the number of
//!   sequences with a given k-error complexity (k = 2, 3, 4), evaluated in
//!   unbounded-precision arithmetic with runtime exactness checks.
//! - [`verify`]: exhaustive and ball-method oracles plus comparison reports
//!   that confront every closed form with independently counted truth.

pub mod counting;
pub mod error;
pub mod kerror;
pub mod seq;
pub mod verify;

mod shard;

pub use counting::{
    classify_2error, classify_4error_lt, counting_table, CountingTable, LClass, Provenance,
    SeqClass, TableEntry,
};
pub use error::{Error, Result};
pub use kerror::{
    ball_membership_count, error_patterns, kerror_lc, kurosawa_kmin, profile, ComplexityProfile,
    ComplexitySubspace, ErrorPattern, Parity, PatternMode,
};
pub use seq::{PeriodicSequence, UnitPairSpec, MAX_EXPONENT};
pub use verify::{
    compare, exhaustive_distribution, targeted_count, EngineOpts, Method, ReportRow,
    VerificationReport, Verdict,
};
