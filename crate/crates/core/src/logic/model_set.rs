use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{AtomUniverse, Interpretation};

/// A finite set of interpretations over one universe, kept sorted by
/// ascending bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    universe: AtomUniverse,
    members: Vec<Interpretation>,
}

impl ModelSet {
    pub fn new<I>(universe: &AtomUniverse, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interpretation>,
    {
        let mut members: Vec<Interpretation> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|w| !universe.contains(**w)) {
            return Err(Error::InterpretationOutOfRange {
                bits: bad.bits(),
                atoms: universe.len(),
            });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            universe: universe.clone(),
            members,
        })
    }

    /// Builds from raw bitmasks. Panics on out-of-range bits; intended for
    /// internal code and tests where the masks are known to fit.
    pub fn from_bits<I: IntoIterator<Item = u32>>(universe: &AtomUniverse, bits: I) -> Self {
        Self::new(universe, bits.into_iter().map(Interpretation::new)).expect("interpretation outside universe")
    }

    /// Members must already be sorted, unique and in range.
    pub(crate) fn from_sorted(universe: &AtomUniverse, members: Vec<Interpretation>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|w| universe.contains(*w)));
        Self {
            universe: universe.clone(),
            members,
        }
    }

    pub fn empty(universe: &AtomUniverse) -> Self {
        Self::from_sorted(universe, Vec::new())
    }

    /// All `2^n` interpretations.
    pub fn full(universe: &AtomUniverse) -> Self {
        let members = (0..=universe.full_mask()).map(Interpretation::new).collect();
        Self::from_sorted(universe, members)
    }

    pub fn singleton(universe: &AtomUniverse, w: Interpretation) -> Result<Self> {
        Self::new(universe, [w])
    }

    pub fn universe(&self) -> &AtomUniverse {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Interpretation> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Interpretation] {
        &self.members
    }

    pub fn contains(&self, w: Interpretation) -> bool {
        self.members.binary_search(&w).is_ok()
    }

    pub fn is_subset_of(&self, other: &ModelSet) -> bool {
        self.universe == other.universe && self.iter().all(|w| other.contains(w))
    }

    fn check_same(&self, other: &ModelSet) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &ModelSet) -> Result<ModelSet> {
        self.check_same(other)?;
        Self::new(&self.universe, self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &ModelSet) -> Result<ModelSet> {
        self.check_same(other)?;
        let members = self.iter().filter(|w| other.contains(*w)).collect();
        Ok(Self::from_sorted(&self.universe, members))
    }

    pub fn difference(&self, other: &ModelSet) -> Result<ModelSet> {
        self.check_same(other)?;
        let members = self.iter().filter(|w| !other.contains(*w)).collect();
        Ok(Self::from_sorted(&self.universe, members))
    }

    /// Intersection of all members, `None` for the empty set.
    pub fn bottom(&self) -> Option<Interpretation> {
        self.iter().reduce(Interpretation::meet)
    }

    /// Union of all members, `None` for the empty set.
    pub fn top(&self) -> Option<Interpretation> {
        self.iter().reduce(Interpretation::join)
    }

    /// Moves the set to `target`. When `target` extends the current universe,
    /// every interpretation is embedded with the new atoms false. When
    /// `target` is a prefix, the trailing atoms are projected away.
    pub fn extend_universe(&self, target: &AtomUniverse) -> Result<ModelSet> {
        if self.universe.is_prefix_of(target) {
            Ok(Self::from_sorted(target, self.members.clone()))
        } else if target.is_prefix_of(&self.universe) {
            let mask = target.full_mask();
            Ok(Self::new(
                target,
                self.iter().map(|w| Interpretation::new(w.bits() & mask)),
            )?)
        } else {
            Err(Error::IncompatibleUniverse {
                from: self.universe.names().to_vec(),
                to: target.names().to_vec(),
            })
        }
    }

    /// Alias of [`ModelSet::extend_universe`] for the projecting direction.
    pub fn restrict_to(&self, target: &AtomUniverse) -> Result<ModelSet> {
        self.extend_universe(target)
    }

    /// One `{a,b}` line per member.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in self.iter() {
            out.push_str(&self.universe.format(w));
            out.push('\n');
        }
        out
    }

    pub fn format_members(&self) -> Vec<String> {
        self.iter().map(|w| self.universe.format(w)).collect()
    }
}

impl fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.format_members()).finish()
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.format_members().join(", "))
    }
}
