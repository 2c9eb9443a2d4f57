//! Per-fragment evidence for the summary table of simplifiability and
//! distributability results, gathered over every target up to a small
//! number of atoms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compact;
use crate::error::Result;
use crate::fragments::{is_expressible, Fragment};
use crate::logic::{AtomUniverse, ModelSet};
use crate::merge::MergeSpec;
use crate::metrics::{Aggregation, Distance};

use super::{auto_witness, search, DistributionTask, Mode, SearchBounds, SearchOutcome, DEFAULT_NODE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symbol {
    /// Every target can be handled.
    #[serde(rename = "✓")]
    All,
    /// Only trivial (already expressible) targets.
    #[serde(rename = "×")]
    OnlyTrivial,
    /// Some non-trivial targets are known to work.
    #[serde(rename = "−")]
    Partial,
    /// Some, but not all, non-trivial targets.
    #[serde(rename = "○")]
    SomeNotAll,
    /// No witness and no complete negative evidence, or no non-trivial
    /// target to test.
    #[serde(rename = "?")]
    Unknown,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::All => "✓",
            Symbol::OnlyTrivial => "×",
            Symbol::Partial => "−",
            Symbol::SomeNotAll => "○",
            Symbol::Unknown => "?",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Question {
    SimplifiableDrastic,
    SimplifiableHamming,
    DistributableDrasticSum,
    DistributableHammingSum,
    DistributableHammingGMax,
    DistributableHammingGMin,
}

impl Question {
    pub const ALL: [Question; 6] = [
        Question::SimplifiableDrastic,
        Question::SimplifiableHamming,
        Question::DistributableDrasticSum,
        Question::DistributableHammingSum,
        Question::DistributableHammingGMax,
        Question::DistributableHammingGMin,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Question::SimplifiableDrastic => "simplifiable w.r.t. Δ^D",
            Question::SimplifiableHamming => "simplifiable w.r.t. Δ^H",
            Question::DistributableDrasticSum => "distributable w.r.t. Δ^{D,Σ}",
            Question::DistributableHammingSum => "distributable w.r.t. Δ^{H,Σ}",
            Question::DistributableHammingGMax => "distributable w.r.t. Δ^{H,GMax}",
            Question::DistributableHammingGMin => "distributable w.r.t. Δ^{H,GMin}",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            Question::SimplifiableDrastic | Question::SimplifiableHamming => Mode::Simplify,
            _ => Mode::Distribute,
        }
    }

    pub fn spec(self) -> MergeSpec {
        let (d, a) = match self {
            Question::SimplifiableDrastic => (Distance::Drastic, Aggregation::Sum),
            Question::SimplifiableHamming => (Distance::Hamming, Aggregation::Sum),
            Question::DistributableDrasticSum => (Distance::Drastic, Aggregation::Sum),
            Question::DistributableHammingSum => (Distance::Hamming, Aggregation::Sum),
            Question::DistributableHammingGMax => (Distance::Hamming, Aggregation::GMax),
            Question::DistributableHammingGMin => (Distance::Hamming, Aggregation::GMin),
        };
        MergeSpec::new(d, a)
    }

    /// The published entry for this question and fragment.
    pub fn expected(self, fragment: Fragment) -> Option<Symbol> {
        use Symbol::{All, OnlyTrivial, Partial, SomeNotAll};
        let row = match self {
            Question::SimplifiableDrastic => [OnlyTrivial, OnlyTrivial, OnlyTrivial],
            Question::SimplifiableHamming => [OnlyTrivial, All, SomeNotAll],
            Question::DistributableDrasticSum => [All, All, All],
            Question::DistributableHammingSum => [OnlyTrivial, All, Partial],
            Question::DistributableHammingGMax => [Partial, All, Partial],
            Question::DistributableHammingGMin => [Partial, All, Partial],
        };
        match fragment {
            Fragment::OneCnf => Some(row[0]),
            Fragment::Krom => Some(row[1]),
            Fragment::Horn => Some(row[2]),
            Fragment::Full => None,
        }
    }
}

/// Fragments shown as columns, in table order.
pub const REPORT_FRAGMENTS: [Fragment; 3] = [Fragment::OneCnf, Fragment::Krom, Fragment::Horn];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub max_atoms: usize,
    /// Profile-length bound for 1CNF distribution searches.
    pub one_cnf_len: usize,
    /// Profile-length bound for the other fragments.
    pub other_len: usize,
    pub node_budget: u64,
}

impl ReportConfig {
    pub fn new(max_atoms: usize) -> Self {
        Self {
            max_atoms,
            one_cnf_len: 3,
            other_len: 2,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    fn search_len(&self, fragment: Fragment, mode: Mode) -> usize {
        match (mode, fragment) {
            (Mode::Simplify, _) => 1,
            (_, Fragment::OneCnf) => self.one_cnf_len,
            _ => self.other_len,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub question: Question,
    pub fragment: Fragment,
    pub expected: Symbol,
    pub observed: Symbol,
    pub targets: u64,
    /// Targets already expressible in the fragment.
    pub trivial: u64,
    /// Non-trivial targets with a verified witness from a construction.
    pub constructed: u64,
    /// Non-trivial targets with a verified witness found by search.
    pub searched: u64,
    /// Non-trivial targets whose bounded search space was exhausted.
    pub certificates: u64,
    /// Non-trivial targets left undecided because the search was too large.
    pub undecided: u64,
    pub search_len: usize,
    pub consistent: bool,
}

impl Cell {
    pub fn witnesses(&self) -> u64 {
        self.constructed + self.searched
    }

    fn nontrivial(&self) -> u64 {
        self.targets - self.trivial
    }

    fn classify(&self) -> Symbol {
        let w = self.witnesses();
        if self.nontrivial() == 0 {
            Symbol::Unknown
        } else if w == self.nontrivial() {
            Symbol::All
        } else if w == 0 && self.certificates == self.nontrivial() {
            Symbol::OnlyTrivial
        } else if w > 0 && self.certificates > 0 {
            Symbol::SomeNotAll
        } else if w > 0 {
            Symbol::Partial
        } else {
            Symbol::Unknown
        }
    }

    /// Whether the observation supports the published entry at these bounds.
    fn agrees(&self) -> bool {
        if self.nontrivial() == 0 {
            return true;
        }
        match self.expected {
            Symbol::All | Symbol::OnlyTrivial | Symbol::SomeNotAll => self.observed == self.expected,
            Symbol::Partial => self.witnesses() > 0,
            Symbol::Unknown => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub config: ReportConfig,
    pub cells: Vec<Cell>,
}

impl EvidenceReport {
    pub fn cell(&self, question: Question, fragment: Fragment) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.question == question && c.fragment == fragment)
    }

    pub fn consistent(&self) -> bool {
        self.cells.iter().all(|c| c.consistent)
    }

    pub fn to_markdown(&self) -> String {
        let cfg = &self.config;
        let mut out = String::new();
        out.push_str(&format!(
            "# Summary of results: evidence over universes of 1 to {} atoms\n\n",
            cfg.max_atoms
        ));
        out.push_str(
            "Each cell shows the published entry, then the entry observed at these bounds. \
             Observations cover only the checked universes and search bounds; \
             they do not prove the universally quantified claims.\n\n",
        );
        out.push('|');
        out.push_str(" |");
        for f in REPORT_FRAGMENTS {
            out.push_str(&format!(" {} |", f.label()));
        }
        out.push_str("\n|---|");
        for _ in REPORT_FRAGMENTS {
            out.push_str("---|");
        }
        out.push('\n');
        for q in Question::ALL {
            out.push_str(&format!("| {} |", q.label()));
            for f in REPORT_FRAGMENTS {
                let c = self.cell(q, f).expect("every cell is computed");
                let mark = if c.consistent { "" } else { " MISMATCH" };
                out.push_str(&format!(" {} / {}{} |", c.expected, c.observed, mark));
            }
            out.push('\n');
        }
        out.push_str(
            "\n| question | fragment | targets | trivial | constructed | searched | certificates | undecided | search len |\n\
             |---|---|---|---|---|---|---|---|---|\n",
        );
        for c in &self.cells {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                c.question.label(),
                c.fragment.label(),
                c.targets,
                c.trivial,
                c.constructed,
                c.searched,
                c.certificates,
                c.undecided,
                c.search_len
            ));
        }
        out.push_str(&format!(
            "\nSearches use no fresh atoms and a node budget of {}. Certificates are exhaustive for those bounds.\n",
            cfg.node_budget
        ));
        out.push_str(if self.consistent() {
            "\nAll cells consistent with the published table at these bounds.\n"
        } else {
            "\nSome cells disagree with the published table at these bounds.\n"
        });
        out
    }
}

fn universe(n: usize) -> AtomUniverse {
    AtomUniverse::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).expect("small alphabetic universe")
}

/// Every non-empty model set over `n` atoms named `a, b, …`, `n ≤ 4`.
pub fn all_targets(n: usize) -> impl Iterator<Item = ModelSet> {
    assert!(n <= 4, "enumerating all targets is limited to four atoms");
    let u = universe(n);
    let count: u64 = 1 << (1u32 << n);
    (1..count).map(move |s| compact::to_model_set(s, &u))
}

fn evaluate(question: Question, fragment: Fragment, config: &ReportConfig) -> Result<Cell> {
    let spec = question.spec();
    let mode = question.mode();
    let search_len = config.search_len(fragment, mode);
    let mut cell = Cell {
        question,
        fragment,
        expected: question.expected(fragment).unwrap_or(Symbol::Unknown),
        observed: Symbol::Unknown,
        targets: 0,
        trivial: 0,
        constructed: 0,
        searched: 0,
        certificates: 0,
        undecided: 0,
        search_len,
        consistent: false,
    };
    for n in 1..=config.max_atoms {
        for target in all_targets(n) {
            cell.targets += 1;
            if is_expressible(&target, fragment) {
                cell.trivial += 1;
                continue;
            }
            let built = auto_witness(&target, fragment, spec)?.filter(|w| {
                w.verified && w.specs.contains(&spec) && (mode == Mode::Distribute || w.profile.len() == 1)
            });
            if built.is_some() {
                cell.constructed += 1;
                continue;
            }
            let bounds = SearchBounds {
                max_profile_len: search_len,
                max_fresh_atoms: 0,
            };
            let task =
                DistributionTask::new(target, fragment, spec, mode, bounds)?.with_node_budget(config.node_budget);
            match search(&task) {
                Ok(SearchOutcome::Found(_)) => cell.searched += 1,
                Ok(SearchOutcome::Exhausted(_)) => cell.certificates += 1,
                Err(crate::error::Error::BoundsTooLarge { .. }) => cell.undecided += 1,
                Err(e) => return Err(e),
            }
        }
    }
    cell.observed = cell.classify();
    cell.consistent = cell.agrees();
    Ok(cell)
}

/// Gathers evidence for every question and reported fragment.
pub fn evidence_report(config: ReportConfig) -> Result<EvidenceReport> {
    let mut cells = Vec::new();
    for q in Question::ALL {
        for f in REPORT_FRAGMENTS {
            cells.push(evaluate(q, f, &config)?);
        }
    }
    Ok(EvidenceReport { config, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_atom_report() {
        let r = evidence_report(ReportConfig::new(2)).unwrap();
        assert_eq!(r.cells.len(), 18);
        let c = r.cell(Question::DistributableDrasticSum, Fragment::Horn).unwrap();
        assert_eq!(c.targets, 3 + 15);
        assert_eq!(c.observed, Symbol::All);
        // Over two atoms every model set is 2CNF-expressible.
        let k = r.cell(Question::SimplifiableHamming, Fragment::Krom).unwrap();
        assert_eq!(k.trivial, k.targets);
        assert_eq!(k.observed, Symbol::Unknown);
        assert!(k.consistent);
        assert!(r.consistent());
        assert!(r.to_markdown().contains("| simplifiable w.r.t. Δ^D |"));
    }

    #[test]
    fn symbols_classify() {
        let base = Cell {
            question: Question::SimplifiableHamming,
            fragment: Fragment::Horn,
            expected: Symbol::SomeNotAll,
            observed: Symbol::Unknown,
            targets: 10,
            trivial: 4,
            constructed: 0,
            searched: 0,
            certificates: 6,
            undecided: 0,
            search_len: 1,
            consistent: false,
        };
        assert_eq!(base.classify(), Symbol::OnlyTrivial);
        let mixed = Cell {
            searched: 2,
            certificates: 4,
            ..base.clone()
        };
        assert_eq!(mixed.classify(), Symbol::SomeNotAll);
        let all = Cell {
            constructed: 6,
            certificates: 0,
            ..base.clone()
        };
        assert_eq!(all.classify(), Symbol::All);
        let partial = Cell {
            constructed: 1,
            certificates: 0,
            undecided: 5,
            ..base
        };
        assert_eq!(partial.classify(), Symbol::Partial);
    }
}
