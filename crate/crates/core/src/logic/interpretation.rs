use std::fmt;

/// A set of atoms, stored as a bitmask over an [`AtomUniverse`](super::AtomUniverse).
///
/// Interpretations do not carry their universe; containers such as
/// [`ModelSet`](super::ModelSet) do.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Interpretation(u32);

impl Interpretation {
    pub const EMPTY: Interpretation = Interpretation(0);

    pub const fn new(bits: u32) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Self {
        Self(atoms.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn with(self, atom: usize) -> Self {
        Self(self.0 | 1 << atom)
    }

    pub fn without(self, atom: usize) -> Self {
        Self(self.0 & !(1 << atom))
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Atom indices in ascending order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    pub fn meet(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn join(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn comparable(self, other: Self) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    /// Size of the symmetric difference.
    pub fn hamming(self, other: Self) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    /// Bitwise majority of three interpretations.
    pub fn maj3(a: Self, b: Self, c: Self) -> Self {
        Self((a.0 & b.0) | (a.0 & c.0) | (b.0 & c.0))
    }

    /// Complement relative to a universe mask.
    pub fn complement(self, full_mask: u32) -> Self {
        Self(!self.0 & full_mask)
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω{:#b}", self.0)
    }
}
