use crate::error::{Error, Result};
use crate::fragments::Fragment;
use crate::logic::{AtomUniverse, Clause, Interpretation, ModelSet};

/// A clause set tagged with a fragment, with its model set computed once at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeBase {
    universe: AtomUniverse,
    fragment: Fragment,
    clauses: Vec<Clause>,
    models: ModelSet,
}

impl KnowledgeBase {
    pub fn new<I>(universe: &AtomUniverse, fragment: Fragment, clauses: I) -> Result<Self>
    where
        I: IntoIterator<Item = Clause>,
    {
        let mut clauses: Vec<Clause> = clauses.into_iter().collect();
        let mask = universe.full_mask();
        for c in &clauses {
            if (c.positives() | c.negatives()) & !mask != 0 {
                return Err(Error::InterpretationOutOfRange {
                    bits: c.positives() | c.negatives(),
                    atoms: universe.len(),
                });
            }
            if !c.fits(fragment) {
                return Err(Error::FragmentViolation {
                    clause: c.format(universe),
                    fragment,
                });
            }
        }
        clauses.sort_unstable();
        clauses.dedup();
        let models = models_of(universe, &clauses);
        Ok(Self {
            universe: universe.clone(),
            fragment,
            clauses,
            models,
        })
    }

    /// The empty clause set, satisfied by every interpretation.
    pub fn tautology(universe: &AtomUniverse, fragment: Fragment) -> Self {
        Self::new(universe, fragment, []).expect("empty clause set is valid in every fragment")
    }

    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn is_consistent(&self) -> bool {
        !self.models.is_empty()
    }

    /// Conjunction of two KBs over the same universe. The result carries the
    /// least fragment admitting both clause sets.
    pub fn conjoin(&self, other: &KnowledgeBase) -> Result<KnowledgeBase> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let fragment = if self.fragment == other.fragment {
            self.fragment
        } else {
            Fragment::ALL
                .into_iter()
                .rev()
                .find(|f| self.clauses.iter().chain(other.clauses.iter()).all(|c| c.fits(*f)))
                .unwrap_or(Fragment::Full)
        };
        Self::new(
            &self.universe,
            fragment,
            self.clauses.iter().chain(other.clauses.iter()).copied(),
        )
    }

    /// Same clauses, reinterpreted over a universe that extends this one.
    pub fn embed(&self, target: &AtomUniverse) -> Result<KnowledgeBase> {
        if !self.universe.is_prefix_of(target) {
            return Err(Error::IncompatibleUniverse {
                from: self.universe.names().to_vec(),
                to: target.names().to_vec(),
            });
        }
        Self::new(target, self.fragment, self.clauses.iter().copied())
    }
}

/// Interpretations satisfying every clause, ascending by bitmask.
pub fn enumerate_models(kb: &KnowledgeBase) -> ModelSet {
    models_of(kb.universe(), kb.clauses())
}

pub(crate) fn models_of(universe: &AtomUniverse, clauses: &[Clause]) -> ModelSet {
    let members = (0..=universe.full_mask())
        .map(Interpretation::new)
        .filter(|w| clauses.iter().all(|c| c.is_satisfied_by(*w)))
        .collect();
    ModelSet::from_sorted(universe, members)
}
