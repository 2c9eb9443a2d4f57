use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::{Interpretation, MAX_ATOMS};

/// Prefix reserved for atoms introduced by constructions.
pub const FRESH_PREFIX: &str = "_x";

/// An ordered, fixed alphabet of atoms. Position `i` is bit `i` of every
/// interpretation over this universe.
///
/// Cloning is cheap: the name list is shared.
#[derive(Clone)]
pub struct AtomUniverse {
    names: Arc<[String]>,
}

impl AtomUniverse {
    /// Builds a user universe. Names starting with `_` are rejected because
    /// that prefix is reserved for fresh atoms.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = names.iter().find(|n| n.starts_with('_')) {
            return Err(Error::ReservedAtom(bad.clone()));
        }
        Self::with_reserved(names)
    }

    /// Like [`AtomUniverse::new`] but accepts reserved (`_`-prefixed) names.
    /// Used when reloading working universes produced by constructions.
    pub fn with_reserved<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if names.len() > MAX_ATOMS {
            return Err(Error::UniverseTooLarge(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_atom_name(name) {
                return Err(Error::InvalidAtomName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateAtom(name.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// Parses the comma-separated `--atoms a,b,c` form.
    pub fn parse_list(list: &str) -> Result<Self> {
        if list.trim().is_empty() {
            return Err(Error::EmptyUniverse);
        }
        Self::new(list.split(',').map(|s| s.trim().to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Mask with one bit per atom.
    pub fn full_mask(&self) -> u32 {
        low_mask(self.len())
    }

    /// Number of interpretations, `2^n`.
    pub fn interpretation_count(&self) -> u64 {
        1u64 << self.len()
    }

    pub fn contains(&self, w: Interpretation) -> bool {
        w.bits() & !self.full_mask() == 0
    }

    /// True when `self` is an initial segment of `other` (including equality).
    pub fn is_prefix_of(&self, other: &AtomUniverse) -> bool {
        self.len() <= other.len() && other.names[..self.len()] == self.names[..]
    }

    /// Number of reserved fresh atoms already present.
    pub fn fresh_count(&self) -> usize {
        self.names.iter().filter(|n| n.starts_with('_')).count()
    }

    /// Appends `count` fresh atoms named `_x<k>`, numbered after any fresh
    /// atoms already present. Existing bit positions are unchanged.
    pub fn with_fresh_atoms(&self, count: usize) -> Result<Self> {
        if count == 0 {
            return Ok(self.clone());
        }
        let start = self
            .names
            .iter()
            .filter_map(|n| n.strip_prefix(FRESH_PREFIX)?.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        let mut names = self.names.to_vec();
        names.extend((1..=count).map(|k| format!("{FRESH_PREFIX}{}", start + k)));
        Self::with_reserved(names)
    }

    /// Renders `w` as `{a,b}`.
    pub fn format(&self, w: Interpretation) -> String {
        let atoms: Vec<&str> = w.atoms().map(|i| self.name(i)).collect();
        format!("{{{}}}", atoms.join(","))
    }

    /// Parses `{a,b}` / `{}` into an interpretation over this universe.
    pub fn parse_interpretation(&self, text: &str) -> Result<Interpretation> {
        parse_braced(self, text, 1, 1)
    }
}

pub(crate) fn parse_braced(universe: &AtomUniverse, text: &str, line: usize, column: usize) -> Result<Interpretation> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let syntax = |col: usize, message: &str| Error::Syntax {
        line,
        column: column + offset + col,
        message: message.to_string(),
    };
    let inner = trimmed
        .strip_prefix('{')
        .ok_or_else(|| syntax(0, "expected `{`"))?
        .strip_suffix('}')
        .ok_or_else(|| syntax(trimmed.len().saturating_sub(1), "expected `}`"))?;
    let mut bits = 0u32;
    if inner.trim().is_empty() {
        return Ok(Interpretation::new(0));
    }
    let mut col = 1;
    for part in inner.split(',') {
        let name = part.trim();
        let at = column + offset + col + (part.len() - part.trim_start().len());
        if name.is_empty() {
            return Err(Error::Syntax {
                line,
                column: at,
                message: "empty atom name".into(),
            });
        }
        let idx = universe.index_of(name).ok_or_else(|| Error::UnknownAtom {
            line,
            column: at,
            name: name.to_string(),
        })?;
        bits |= 1 << idx;
        col += part.len() + 1;
    }
    Ok(Interpretation::new(bits))
}

pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn valid_atom_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('-')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '#'))
}

impl PartialEq for AtomUniverse {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for AtomUniverse {}

impl std::hash::Hash for AtomUniverse {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Debug for AtomUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

impl fmt::Display for AtomUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}
