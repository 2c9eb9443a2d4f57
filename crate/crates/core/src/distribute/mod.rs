//! Knowledge distribution: building a fragment profile and a fragment
//! constraint whose merge is equivalent to a given target model set.
//!
//! The constructive procedures live in [`constructions`]; [`search`] decides
//! the question exhaustively within explicit bounds; [`critical`] holds the
//! 1CNF critical-pair analysis and the cap-cup identity; [`report`] turns
//! all of it into per-fragment evidence.

pub mod constructions;
pub mod critical;
pub mod report;
pub mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fragments::{synthesize_kb, Fragment};
use crate::logic::{AtomUniverse, KnowledgeBase, ModelSet, Profile};
use crate::merge::{merge, MergeSpec};
use crate::metrics::{Aggregation, Distance};

pub use constructions::{
    auto_witness, distribute_1cnf_gmax_two_models, distribute_drastic, distribute_gmin_equidistant,
    distribute_horn_three_models, expressible_witness, simplify_horn_two_models, simplify_krom,
};
pub use critical::{cap_cup_sweep, check_cap_cup_lemma, find_critical_pairs, CapCupSweep, CriticalCase, CriticalPair};
pub use report::{evidence_report, EvidenceReport, ReportConfig};
pub use search::{search, ExhaustionCertificate, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Profiles of any length up to the bound.
    Distribute,
    /// Profiles of length one.
    Simplify,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Distribute => "distribute",
            Mode::Simplify => "simplify",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "distribute" => Ok(Mode::Distribute),
            "simplify" => Ok(Mode::Simplify),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_profile_len: usize,
    pub max_fresh_atoms: usize,
}

/// Default cap on candidate profiles examined by [`search`].
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTask {
    pub target: ModelSet,
    pub fragment: Fragment,
    pub spec: MergeSpec,
    pub mode: Mode,
    pub bounds: SearchBounds,
    pub node_budget: u64,
}

impl DistributionTask {
    pub fn new(
        target: ModelSet,
        fragment: Fragment,
        spec: MergeSpec,
        mode: Mode,
        bounds: SearchBounds,
    ) -> Result<Self> {
        if target.is_empty() {
            return Err(Error::InconsistentKb);
        }
        if bounds.max_profile_len == 0 {
            return Err(Error::InvalidBounds("profile length must be at least 1".into()));
        }
        let bounds = match mode {
            Mode::Simplify => SearchBounds {
                max_profile_len: 1,
                ..bounds
            },
            Mode::Distribute => bounds,
        };
        Ok(Self {
            target,
            fragment,
            spec,
            mode,
            bounds,
            node_budget: DEFAULT_NODE_BUDGET,
        })
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }
}

/// Which case of the three-model Horn construction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HornCase {
    /// One incomparable pair, both below the third model.
    OneIncomparableBelow,
    /// One incomparable pair, both above the third model.
    OneIncomparableAbove,
    /// Two incomparable pairs, the comparable pair ordered low-to-high.
    TwoIncomparableAscending,
    /// Two incomparable pairs, the comparable pair ordered high-to-low.
    TwoIncomparableDescending,
}

impl HornCase {
    fn code(self) -> &'static str {
        match self {
            HornCase::OneIncomparableBelow => "1.1",
            HornCase::OneIncomparableAbove => "1.2",
            HornCase::TwoIncomparableAscending => "2.1",
            HornCase::TwoIncomparableDescending => "2.2",
        }
    }
}

/// Provenance of a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    /// The target is itself expressible: profile and constraint are the
    /// target's own fragment KB.
    Expressible,
    /// One single-model base per target model.
    Drastic,
    /// Single-model bases for a target whose models are pairwise equidistant.
    GMinEquidistant,
    /// A single Krom base over fresh atoms that penalize the closure.
    KromFreshAtoms,
    /// Complements of the 1CNF closure's extra interpretations.
    OneCnfGMaxTwoModels,
    /// A single Horn base with two comparable models.
    HornTwoModels,
    HornThreeModels(HornCase),
    /// Found by exhaustive search.
    Search,
}

impl Construction {
    pub fn tag(self) -> String {
        match self {
            Construction::Expressible => "expressible".into(),
            Construction::Drastic => "drastic".into(),
            Construction::GMinEquidistant => "gmin-equidistant".into(),
            Construction::KromFreshAtoms => "krom".into(),
            Construction::OneCnfGMaxTwoModels => "1cnf-gmax".into(),
            Construction::HornTwoModels => "horn2".into(),
            Construction::HornThreeModels(case) => format!("horn3/{}", case.code()),
            Construction::Search => "search".into(),
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "expressible" => Construction::Expressible,
            "drastic" => Construction::Drastic,
            "gmin-equidistant" => Construction::GMinEquidistant,
            "krom" => Construction::KromFreshAtoms,
            "1cnf-gmax" => Construction::OneCnfGMaxTwoModels,
            "horn2" => Construction::HornTwoModels,
            "horn3/1.1" => Construction::HornThreeModels(HornCase::OneIncomparableBelow),
            "horn3/1.2" => Construction::HornThreeModels(HornCase::OneIncomparableAbove),
            "horn3/2.1" => Construction::HornThreeModels(HornCase::TwoIncomparableAscending),
            "horn3/2.2" => Construction::HornThreeModels(HornCase::TwoIncomparableDescending),
            "search" => Construction::Search,
            _ => return None,
        })
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// A profile and constraint, both in the declared fragment, together with
/// the merge specifications under which they reproduce the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionWitness {
    /// Target over its original universe.
    pub target: ModelSet,
    pub fragment: Fragment,
    /// Members may live over an extended (working) universe.
    pub profile: Profile,
    pub constraint: KnowledgeBase,
    pub construction: Construction,
    pub specs: Vec<MergeSpec>,
    /// True iff merging under every spec in `specs` yields the embedded target.
    pub verified: bool,
}

impl DistributionWitness {
    pub fn working_universe(&self) -> &AtomUniverse {
        self.constraint.universe()
    }

    pub fn fresh_atoms(&self) -> usize {
        self.working_universe().len() - self.target.universe().len()
    }

    /// The target with every fresh atom false.
    pub fn embedded_target(&self) -> ModelSet {
        self.target
            .extend_universe(self.working_universe())
            .expect("working universe extends the target universe")
    }

    /// Re-runs the merge under `spec` and compares with the embedded target.
    pub fn check(&self, spec: MergeSpec) -> Result<bool> {
        let result = merge(&self.profile, &self.constraint, spec)?;
        Ok(result.models == self.embedded_target())
    }

    /// Restriction of a merge result back to the target universe, provided
    /// it is free of fresh atoms.
    pub fn restricted_result(&self, spec: MergeSpec) -> Result<Option<ModelSet>> {
        let result = merge(&self.profile, &self.constraint, spec)?;
        let base_mask = self.target.universe().full_mask();
        if result.models.iter().any(|w| w.bits() & !base_mask != 0) {
            return Ok(None);
        }
        result.models.restrict_to(self.target.universe()).map(Some)
    }
}

/// Synthesizes fragment KBs for the given model sets, then verifies.
pub(crate) fn assemble(
    target: &ModelSet,
    fragment: Fragment,
    bases: Vec<ModelSet>,
    constraint: &ModelSet,
    construction: Construction,
    specs: Vec<MergeSpec>,
) -> Result<DistributionWitness> {
    let profile = Profile::new(
        bases
            .iter()
            .map(|ms| synthesize_kb(ms, fragment))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let constraint = synthesize_kb(constraint, fragment)?;
    let mut witness = DistributionWitness {
        target: target.clone(),
        fragment,
        profile,
        constraint,
        construction,
        specs,
        verified: false,
    };
    let mut ok = !witness.specs.is_empty();
    for spec in witness.specs.clone() {
        ok &= witness.check(spec)?;
    }
    witness.verified = ok;
    Ok(witness)
}

pub(crate) fn specs_for(distance: Distance) -> Vec<MergeSpec> {
    Aggregation::ALL
        .into_iter()
        .map(|a| MergeSpec::new(distance, a))
        .collect()
}
