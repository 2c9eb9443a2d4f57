//! The distance-based IC-merging operator: the models of the constraint that
//! are minimal in the preorder induced by aggregated distances to the
//! profile.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Interpretation, KnowledgeBase, ModelSet, Profile};
use crate::metrics::{vector_of, AggregateValue, Aggregation, Distance, DistanceVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MergeSpec {
    pub distance: Distance,
    pub aggregation: Aggregation,
}

impl MergeSpec {
    pub const fn new(distance: Distance, aggregation: Aggregation) -> Self {
        Self { distance, aggregation }
    }

    /// All six distance/aggregation combinations.
    pub fn all() -> impl Iterator<Item = MergeSpec> {
        Distance::ALL
            .into_iter()
            .flat_map(|d| Aggregation::ALL.into_iter().map(move |a| MergeSpec::new(d, a)))
    }
}

impl fmt::Display for MergeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.distance, self.aggregation)
    }
}

impl std::str::FromStr for MergeSpec {
    type Err = String;

    /// Parses `distance,aggregation`, e.g. `hamming,gmax`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (d, a) = s
            .split_once(',')
            .ok_or_else(|| format!("expected distance,aggregation, got {s:?}"))?;
        Ok(MergeSpec::new(d.trim().parse()?, a.trim().parse()?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRow {
    pub interpretation: Interpretation,
    pub vector: DistanceVector,
    pub aggregate: AggregateValue,
    pub minimal: bool,
}

/// Distance table with one row per model of the constraint, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub spec: MergeSpec,
    pub rows: Vec<MatrixRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeResult {
    pub models: ModelSet,
    pub matrix: Option<DistanceMatrix>,
}

impl MergeResult {
    pub fn from_models(models: ModelSet) -> Self {
        Self { models, matrix: None }
    }
}

pub fn merge(profile: &Profile, mu: &KnowledgeBase, spec: MergeSpec) -> Result<MergeResult> {
    if profile.universe() != mu.universe() {
        return Err(Error::UniverseMismatch);
    }
    if let Some(i) = profile.iter().position(|kb| !kb.is_consistent()) {
        return Err(Error::InconsistentProfileMember(i));
    }

    let mut rows = mu
        .models()
        .iter()
        .map(|w| {
            let vector = vector_of(w, profile, spec.distance)?;
            let aggregate = vector.aggregate(spec.aggregation);
            Ok(MatrixRow {
                interpretation: w,
                vector,
                aggregate,
                minimal: false,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let best = rows.iter().map(|r| r.aggregate.clone()).min();
    let mut winners = Vec::new();
    if let Some(best) = best {
        for row in &mut rows {
            if row.aggregate == best {
                row.minimal = true;
                winners.push(row.interpretation);
            }
        }
    }
    Ok(MergeResult {
        models: ModelSet::new(mu.universe(), winners)?,
        matrix: Some(DistanceMatrix { spec, rows }),
    })
}

/// Merging of a single base: revision of `base` by `mu`.
pub fn revise(base: &KnowledgeBase, mu: &KnowledgeBase, d: Distance) -> Result<MergeResult> {
    let profile = Profile::single(base.clone())?;
    let result = merge(&profile, mu, MergeSpec::new(d, Aggregation::Sum))?;
    debug_assert!(
        [Aggregation::GMax, Aggregation::GMin]
            .iter()
            .all(|&a| { merge(&profile, mu, MergeSpec::new(d, a)).map(|r| r.models) == Ok(result.models.clone()) }),
        "aggregations disagree on a singleton profile"
    );
    Ok(result)
}

/// Model-set equality between a merge result and a KB.
pub fn equiv(result: &MergeResult, kb: &KnowledgeBase) -> Result<bool> {
    if result.models.universe() != kb.universe() {
        return Err(Error::UniverseMismatch);
    }
    Ok(&result.models == kb.models())
}
