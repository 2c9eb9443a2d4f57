//! Bounded exhaustive search for distribution witnesses.
//!
//! The constraint is fixed to the fragment closure of the target (with any
//! fresh atoms false), and profiles are enumerated as multisets of non-empty
//! closed model sets, shortest first. Within one length, the search returns
//! the lexicographically least tuple of closed-set indices, so the answer is
//! the same under any thread schedule.

use rayon::prelude::*;

use crate::compact::{self, SetMask, MAX_COMPACT_ATOMS};
use crate::error::{Error, Result};
use crate::fragments::Fragment;
use crate::logic::{AtomUniverse, ModelSet};
use crate::merge::MergeSpec;
use crate::metrics::{Aggregation, Distance};

use super::{assemble, Construction, DistributionTask, DistributionWitness, Mode};

/// Longest profile the packed aggregate keys can represent.
pub const MAX_SEARCH_PROFILE_LEN: usize = 15;

/// Upper bound on closed sets materialized for one universe size.
const MAX_CLOSED_SETS: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(DistributionWitness),
    Exhausted(ExhaustionCertificate),
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&DistributionWitness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&ExhaustionCertificate> {
        match self {
            SearchOutcome::Found(_) => None,
            SearchOutcome::Exhausted(c) => Some(c),
        }
    }
}

/// Record of a search space enumerated in full without a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustionCertificate {
    pub target: ModelSet,
    pub fragment: Fragment,
    pub spec: MergeSpec,
    pub mode: Mode,
    pub max_profile_len: usize,
    pub max_fresh_atoms: usize,
    /// Non-empty closed sets per fresh-atom count `0..=max_fresh_atoms`.
    pub closed_sets: Vec<u64>,
    /// Candidate profiles examined.
    pub candidates: u64,
    /// True when no fresh atoms were allowed. With fresh atoms the fixed
    /// constraint may exclude witnesses, so the negative answer only covers
    /// that constraint.
    pub complete: bool,
}

struct Level {
    universe: AtomUniverse,
    sets: Vec<SetMask>,
    mu: SetMask,
}

fn multisets(n: u64, k: usize) -> u128 {
    // C(n + k - 1, k)
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.saturating_mul(n as u128 + i) / (i + 1);
    }
    acc
}

/// Number of candidate profiles of length `1..=max_len` over `n` sets.
pub fn candidate_count(n: u64, max_len: usize) -> u128 {
    (1..=max_len).map(|k| multisets(n, k)).fold(0u128, u128::saturating_add)
}

/// Additive per-entry weight whose row sums order rows exactly as the
/// aggregation does, for vectors of equal length.
///
/// For GMax the weight `16^d` turns a row sum into the count of each distance
/// value, most significant for the largest distance; lexicographic order on
/// decreasingly sorted vectors of equal length is exactly the order of these
/// counts. GMin mirrors it with smaller distances more significant.
fn weight(d: u32, agg: Aggregation) -> u64 {
    let top = MAX_COMPACT_ATOMS as u32;
    match agg {
        Aggregation::Sum => d as u64,
        Aggregation::GMax => 1 << (4 * d),
        Aggregation::GMin => (1u64 << (4 * (top + 1))) - (1 << (4 * (top - d))),
    }
}

fn set_distance(row: u32, set: SetMask, d: Distance) -> u32 {
    match d {
        Distance::Drastic => u32::from(set & (1 << row) == 0),
        Distance::Hamming => compact::members(set)
            .map(|w| (w ^ row).count_ones())
            .min()
            .expect("closed sets are non-empty"),
    }
}

struct Table {
    rows: usize,
    /// `weights[set * rows + row]`
    weights: Vec<u64>,
    is_target: Vec<bool>,
}

impl Table {
    fn new(level: &Level, target: SetMask, spec: MergeSpec) -> Self {
        let rows: Vec<u32> = compact::members(level.mu).collect();
        let weights = level
            .sets
            .iter()
            .flat_map(|&s| {
                rows.iter()
                    .map(move |&r| weight(set_distance(r, s, spec.distance), spec.aggregation))
            })
            .collect();
        Self {
            rows: rows.len(),
            weights,
            is_target: rows.iter().map(|&r| target & (1 << r) != 0).collect(),
        }
    }

    fn row(&self, set: usize) -> &[u64] {
        &self.weights[set * self.rows..(set + 1) * self.rows]
    }

    /// True iff the minimal rows are exactly the target rows.
    fn accepts(&self, sums: &[u64]) -> bool {
        let mut best = None;
        for (r, &s) in sums.iter().enumerate() {
            if self.is_target[r] {
                match best {
                    None => best = Some(s),
                    Some(b) if b != s => return false,
                    _ => {}
                }
            }
        }
        let Some(best) = best else { return false };
        sums.iter().zip(&self.is_target).all(|(&s, &t)| t || s > best)
    }

    /// Lexicographically least accepted non-decreasing tuple of length
    /// `len` starting with `first`.
    fn least_from(&self, first: usize, len: usize, count: usize) -> Option<Vec<usize>> {
        let mut tuple = vec![first];
        let mut sums = vec![self.row(first).to_vec()];
        if len == 1 {
            return self.accepts(&sums[0]).then_some(tuple);
        }
        let mut next = first;
        loop {
            if next < count {
                let depth = tuple.len();
                let acc: Vec<u64> = sums[depth - 1].iter().zip(self.row(next)).map(|(a, b)| a + b).collect();
                if depth + 1 == len {
                    if self.accepts(&acc) {
                        tuple.push(next);
                        return Some(tuple);
                    }
                    next += 1;
                } else {
                    tuple.push(next);
                    sums.push(acc);
                }
            } else {
                if tuple.len() == 1 {
                    return None;
                }
                sums.pop();
                next = tuple.pop().expect("non-empty") + 1;
            }
        }
    }
}

/// Decides the task within its bounds.
///
/// Fails with [`Error::BoundsTooLarge`] when the candidate count exceeds the
/// task's node budget, before any candidate is examined.
pub fn search(task: &DistributionTask) -> Result<SearchOutcome> {
    let target = &task.target;
    let n = target.universe().len();
    let fresh_max = task.bounds.max_fresh_atoms;
    let len_max = task.bounds.max_profile_len;
    if n + fresh_max > MAX_COMPACT_ATOMS {
        return Err(Error::InvalidBounds(format!(
            "search supports at most {MAX_COMPACT_ATOMS} atoms including fresh ones, got {}",
            n + fresh_max
        )));
    }
    if len_max > MAX_SEARCH_PROFILE_LEN {
        return Err(Error::InvalidBounds(format!(
            "search supports profiles of length at most {MAX_SEARCH_PROFILE_LEN}"
        )));
    }
    if target.is_empty() {
        return Err(Error::InconsistentKb);
    }

    let limit = MAX_CLOSED_SETS.min(task.node_budget.max(1));
    let mut levels = Vec::with_capacity(fresh_max + 1);
    let mut estimate: u128 = 0;
    for fresh in 0..=fresh_max {
        let universe = target.universe().with_fresh_atoms(fresh)?;
        let m = universe.len();
        let sets = compact::closed_sets(m, task.fragment, limit).map_err(|seen| Error::BoundsTooLarge {
            estimated: seen as u128,
            budget: task.node_budget,
        })?;
        estimate = estimate.saturating_add(candidate_count(sets.len() as u64, len_max));
        let embedded = target.extend_universe(&universe)?;
        let mu = compact::closure(compact::from_model_set(&embedded), m, task.fragment);
        levels.push(Level { universe, sets, mu });
    }
    if estimate > task.node_budget as u128 {
        return Err(Error::BoundsTooLarge {
            estimated: estimate,
            budget: task.node_budget,
        });
    }

    for level in &levels {
        let embedded = compact::from_model_set(&target.extend_universe(&level.universe)?);
        let table = Table::new(level, embedded, task.spec);
        let count = level.sets.len();
        for len in 1..=len_max {
            let found = (0..count)
                .into_par_iter()
                .find_map_first(|first| table.least_from(first, len, count));
            if let Some(tuple) = found {
                let bases = tuple
                    .iter()
                    .map(|&i| compact::to_model_set(level.sets[i], &level.universe))
                    .collect();
                let mu = compact::to_model_set(level.mu, &level.universe);
                let witness = assemble(target, task.fragment, bases, &mu, Construction::Search, vec![task.spec])?;
                debug_assert!(witness.verified, "search accepted an unverified profile");
                return Ok(SearchOutcome::Found(witness));
            }
        }
    }

    Ok(SearchOutcome::Exhausted(ExhaustionCertificate {
        target: target.clone(),
        fragment: task.fragment,
        spec: task.spec,
        mode: task.mode,
        max_profile_len: len_max,
        max_fresh_atoms: fresh_max,
        closed_sets: levels.iter().map(|l| l.sets.len() as u64).collect(),
        candidates: estimate as u64,
        complete: fresh_max == 0,
    }))
}
