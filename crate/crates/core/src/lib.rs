//! Finite unital rings given by tables.
//!
//! The crate computes Jacobson, socle and Zhou radicals (the latter through
//! several independent characterizations that are cross-checked), decides
//! reversibility-type ring predicates with re-checkable witnesses, builds
//! matrix, triangular, corner, quotient and block extensions, and runs a
//! registry of ring-theoretic implications over a corpus of small rings.

pub mod bitset;
pub mod construct;
pub mod elements;
pub mod error;
pub mod ideals;
pub mod predicates;
pub mod ring;
pub mod suite;

pub use bitset::BitSet;
pub use construct::{build, parse_expr, RingExpr};
pub use error::{Error, Result};
pub use ideals::{IdealLattice, RingAnalysis};
pub use predicates::{Predicate, PropertyReport, Verdict};
pub use ring::{validate_ring, ElementSet, FiniteRing, Limits, RawRing, SetKind};
pub use suite::{build_corpus, hunt_counterexample, run_theorem_suite, CorpusEntry, HuntQuery, SuiteReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
