//! Atom universes, interpretations, model sets, clause syntax and the text
//! formats built on them.

mod clause;
mod interpretation;
mod kb;
mod model_set;
pub mod text;
mod universe;

pub use clause::Clause;
pub use interpretation::Interpretation;
pub use kb::{enumerate_models, KnowledgeBase};
pub use model_set::ModelSet;
pub use text::{format_kb, format_model_set, parse_kb, parse_model_set};
pub use universe::{AtomUniverse, FRESH_PREFIX};

use crate::error::{Error, Result};

/// Largest supported universe. Model sets are enumerated explicitly.
pub const MAX_ATOMS: usize = 24;

/// An ordered, non-empty tuple of consistent knowledge bases over one
/// universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    bases: Vec<KnowledgeBase>,
}

impl Profile {
    pub fn new(bases: Vec<KnowledgeBase>) -> Result<Self> {
        let first = bases.first().ok_or(Error::EmptyProfile)?;
        for (i, kb) in bases.iter().enumerate() {
            if kb.universe() != first.universe() {
                return Err(Error::UniverseMismatch);
            }
            if !kb.is_consistent() {
                return Err(Error::InconsistentProfileMember(i));
            }
        }
        Ok(Self { bases })
    }

    pub fn single(kb: KnowledgeBase) -> Result<Self> {
        Self::new(vec![kb])
    }

    pub fn universe(&self) -> &AtomUniverse {
        self.bases[0].universe()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bases(&self) -> &[KnowledgeBase] {
        &self.bases
    }

    pub fn iter(&self) -> impl Iterator<Item = &KnowledgeBase> {
        self.bases.iter()
    }
}
