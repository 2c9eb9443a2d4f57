//! Distances between interpretations and knowledge bases, and aggregation of
//! per-base distance vectors into the profile preorder.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Interpretation, KnowledgeBase, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distance {
    /// 0 between equal interpretations, 1 otherwise.
    Drastic,
    /// Size of the symmetric difference.
    Hamming,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregation {
    Sum,
    /// Leximax: sort decreasing, compare lexicographically.
    GMax,
    /// Leximin: sort increasing, compare lexicographically.
    GMin,
}

impl Distance {
    pub const ALL: [Distance; 2] = [Distance::Drastic, Distance::Hamming];
}

impl Aggregation {
    pub const ALL: [Aggregation; 3] = [Aggregation::Sum, Aggregation::GMax, Aggregation::GMin];
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distance::Drastic => "drastic",
            Distance::Hamming => "hamming",
        })
    }
}

impl FromStr for Distance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "drastic" | "D" => Ok(Distance::Drastic),
            "hamming" | "H" => Ok(Distance::Hamming),
            other => Err(format!("unknown distance {other:?}")),
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Sum => "sum",
            Aggregation::GMax => "gmax",
            Aggregation::GMin => "gmin",
        })
    }
}

impl FromStr for Aggregation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sum" => Ok(Aggregation::Sum),
            "gmax" | "leximax" => Ok(Aggregation::GMax),
            "gmin" | "leximin" => Ok(Aggregation::GMin),
            other => Err(format!("unknown aggregation {other:?}")),
        }
    }
}

pub fn dist(w1: Interpretation, w2: Interpretation, d: Distance) -> u32 {
    match d {
        Distance::Drastic => u32::from(w1 != w2),
        Distance::Hamming => w1.hamming(w2),
    }
}

/// Minimum distance from `w` to a model of `kb`.
pub fn dist_to_kb(w: Interpretation, kb: &KnowledgeBase, d: Distance) -> Result<u32> {
    if !kb.universe().contains(w) {
        return Err(Error::UniverseMismatch);
    }
    kb.models()
        .iter()
        .map(|m| dist(w, m, d))
        .min()
        .ok_or(Error::InconsistentKb)
}

/// Per-base distances of one interpretation, in profile order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceVector(Vec<u32>);

impl DistanceVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn aggregate(&self, agg: Aggregation) -> AggregateValue {
        match agg {
            Aggregation::Sum => AggregateValue::Scalar(self.0.iter().map(|&x| u64::from(x)).sum()),
            Aggregation::GMax => {
                let mut v = self.0.clone();
                v.sort_unstable_by(|a, b| b.cmp(a));
                AggregateValue::Sorted(v)
            }
            Aggregation::GMin => {
                let mut v = self.0.clone();
                v.sort_unstable();
                AggregateValue::Sorted(v)
            }
        }
    }
}

impl fmt::Display for DistanceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Aggregated distance: a scalar for sum, a sorted vector for GMax/GMin.
/// Values produced by the same aggregation compare with `Ord`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggregateValue {
    Scalar(u64),
    Sorted(Vec<u32>),
}

impl fmt::Display for AggregateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregateValue::Scalar(x) => write!(f, "{x}"),
            AggregateValue::Sorted(v) => write_tuple(f, v),
        }
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    write!(f, "({})", parts.join(","))
}

pub fn vector_of(w: Interpretation, profile: &Profile, d: Distance) -> Result<DistanceVector> {
    profile
        .iter()
        .map(|kb| dist_to_kb(w, kb, d))
        .collect::<Result<Vec<_>>>()
        .map(DistanceVector)
}

/// Compares two vectors under an aggregation. `Equal` means a tie in the
/// aggregated preorder, not entrywise equality.
pub fn compare(v1: &DistanceVector, v2: &DistanceVector, agg: Aggregation) -> Result<Ordering> {
    if v1.len() != v2.len() {
        return Err(Error::LengthMismatch(v1.len(), v2.len()));
    }
    Ok(v1.aggregate(agg).cmp(&v2.aggregate(agg)))
}
