//! Distance-based belief merging over fragments of propositional logic.
//!
//! Interpretations over a universe of at most 24 atoms are bitmasks; model
//! sets, knowledge bases and profiles are built on top of them in
//! [`logic`]. [`fragments`] provides the Horn, Krom (2CNF) and 1CNF closure
//! operators, [`metrics`] and [`merge`] the IC-merging operators, and
//! [`distribute`] the constructions and bounded search that build a fragment
//! profile and constraint merging to a given target.
//!
//! ```
//! use fragmerge::logic::{parse_kb, AtomUniverse, KnowledgeBase, Profile};
//! use fragmerge::fragments::Fragment;
//! use fragmerge::merge::{merge, MergeSpec};
//! use fragmerge::metrics::{Aggregation, Distance};
//!
//! let u = AtomUniverse::parse_list("a,b").unwrap();
//! let e = Profile::new(vec![
//!     parse_kb("horn\na\nb\n", &u).unwrap(),
//!     parse_kb("horn\n-a -b\n", &u).unwrap(),
//! ])
//! .unwrap();
//! let mu = KnowledgeBase::tautology(&u, Fragment::Horn);
//! let r = merge(&e, &mu, MergeSpec::new(Distance::Hamming, Aggregation::Sum)).unwrap();
//! assert_eq!(r.models.format_members(), ["{a}", "{b}", "{a,b}"]);
//! ```

pub mod cli;
pub mod compact;
pub mod distribute;
pub mod error;
pub mod fragments;
pub mod logic;
pub mod merge;
pub mod metrics;

pub use error::{Error, Result};
