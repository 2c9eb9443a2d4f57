use crate::error::{Error, Result};
use crate::fragments::Fragment;
use crate::logic::{AtomUniverse, Interpretation};

/// A disjunction of literals. Both literal sets are atom-index bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    positives: u32,
    negatives: u32,
}

impl Clause {
    /// Fails when an atom occurs both positively and negatively.
    pub fn new(positives: u32, negatives: u32) -> Result<Self> {
        if positives & negatives != 0 {
            return Err(Error::Syntax {
                line: 0,
                column: 0,
                message: "clause contains complementary literals".into(),
            });
        }
        Ok(Self { positives, negatives })
    }

    pub fn positive_unit(atom: usize) -> Self {
        Self {
            positives: 1 << atom,
            negatives: 0,
        }
    }

    pub fn negative_unit(atom: usize) -> Self {
        Self {
            positives: 0,
            negatives: 1 << atom,
        }
    }

    pub fn positives(&self) -> u32 {
        self.positives
    }

    pub fn negatives(&self) -> u32 {
        self.negatives
    }

    pub fn len(&self) -> u32 {
        self.positives.count_ones() + self.negatives.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_satisfied_by(&self, w: Interpretation) -> bool {
        w.bits() & self.positives != 0 || !w.bits() & self.negatives != 0
    }

    /// Whether the clause meets the syntactic restriction of `fragment`.
    pub fn fits(&self, fragment: Fragment) -> bool {
        match fragment {
            Fragment::Full => true,
            Fragment::Horn => self.positives.count_ones() <= 1,
            Fragment::Krom => self.len() <= 2,
            Fragment::OneCnf => self.len() == 1,
        }
    }

    /// Literals in atom order, negated atoms prefixed with `-`.
    pub fn format(&self, universe: &AtomUniverse) -> String {
        let used = self.positives | self.negatives;
        (0..universe.len())
            .filter(|i| used >> i & 1 == 1)
            .map(|i| {
                if self.negatives >> i & 1 == 1 {
                    format!("-{}", universe.name(i))
                } else {
                    universe.name(i).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satisfaction() {
        // -a b
        let c = Clause::new(0b10, 0b01).unwrap();
        assert!(c.is_satisfied_by(Interpretation::new(0b00)));
        assert!(!c.is_satisfied_by(Interpretation::new(0b01)));
        assert!(c.is_satisfied_by(Interpretation::new(0b11)));
        assert!(Clause::new(0b1, 0b1).is_err());
    }

    #[test]
    fn fragment_restrictions() {
        let ab = Clause::new(0b11, 0).unwrap();
        assert!(!ab.fits(Fragment::Horn));
        assert!(ab.fits(Fragment::Krom));
        assert!(!ab.fits(Fragment::OneCnf));
        let horn3 = Clause::new(0b001, 0b110).unwrap();
        assert!(horn3.fits(Fragment::Horn));
        assert!(!horn3.fits(Fragment::Krom));
        assert!(Clause::negative_unit(0).fits(Fragment::OneCnf));
    }
}
