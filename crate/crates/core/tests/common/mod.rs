//! Brute-force reference implementations used by the integration tests.
//! Model sets are plain bitmask vectors here; nothing below calls into the
//! library's closure, distance or merge code.

#![allow(dead_code)]

use fragmerge::fragments::Fragment;
use fragmerge::logic::{AtomUniverse, ModelSet};

pub const FRAGMENTS: [Fragment; 4] = [Fragment::Full, Fragment::Horn, Fragment::Krom, Fragment::OneCnf];

pub fn universe(n: usize) -> AtomUniverse {
    AtomUniverse::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

/// Members of a set-of-interpretations mask (bit `w` set iff `w` is a member).
pub fn members(set: u64) -> Vec<u32> {
    (0..64).filter(|w| set >> w & 1 == 1).collect()
}

pub fn mask(members: &[u32]) -> u64 {
    members.iter().fold(0, |m, &w| m | 1 << w)
}

pub fn to_model_set(set: u64, u: &AtomUniverse) -> ModelSet {
    ModelSet::from_bits(u, members(set))
}

pub fn from_model_set(ms: &ModelSet) -> u64 {
    mask(&ms.iter().map(|w| w.bits()).collect::<Vec<_>>())
}

pub fn popcount(x: u32) -> u32 {
    let mut c = 0;
    let mut x = x;
    while x != 0 {
        c += x & 1;
        x >>= 1;
    }
    c
}

pub fn hamming(x: u32, y: u32) -> u32 {
    popcount(x ^ y)
}

pub fn drastic(x: u32, y: u32) -> u32 {
    u32::from(x != y)
}

/// Closedness read directly off the fragment's defining operation.
pub fn is_closed(set: &[u32], fragment: Fragment) -> bool {
    let has = |w: u32| set.contains(&w);
    match fragment {
        Fragment::Full => true,
        Fragment::Horn => set.iter().all(|&x| set.iter().all(|&y| has(x & y))),
        Fragment::Krom => set.iter().all(|&x| {
            set.iter()
                .all(|&y| set.iter().all(|&z| has((x & y) | (y & z) | (x & z))))
        }),
        // A 1CNF model set is a subcube: everything between its meet and join.
        Fragment::OneCnf => {
            if set.is_empty() {
                return true;
            }
            let meet = set.iter().fold(u32::MAX, |m, &w| m & w);
            let join = set.iter().fold(0, |m, &w| m | w);
            let free = meet ^ join;
            let mut count = 0u64;
            let mut sub = free;
            loop {
                if !has(meet | sub) {
                    return false;
                }
                count += 1;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            count == set.len() as u64
        }
    }
}

/// Smallest closed superset, as the intersection of every closed superset.
/// Only practical for n ≤ 3.
pub fn closure(set: u64, n: usize, fragment: Fragment) -> u64 {
    assert!(n <= 3);
    let all = 1u64 << (1 << n);
    let mut acc = all - 1;
    for cand in 0..all {
        if cand & set == set && is_closed(&members(cand), fragment) {
            acc &= cand;
        }
    }
    acc
}

/// Closure onto the enclosing subcube, usable at any size.
pub fn one_cnf_closure(set: &[u32]) -> Vec<u32> {
    if set.is_empty() {
        return vec![];
    }
    let meet = set.iter().fold(u32::MAX, |m, &w| m & w);
    let join = set.iter().fold(0, |m, &w| m | w);
    (0..=join).filter(|&w| w & meet == meet && w & !join == 0).collect()
}

/// All closed non-empty sets over n atoms, by filtering every subset.
pub fn closed_sets(n: usize, fragment: Fragment) -> Vec<u64> {
    let all = 1u64 << (1 << n);
    (1..all).filter(|&s| is_closed(&members(s), fragment)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agg {
    Sum,
    GMax,
    GMin,
}

fn key(v: &[u32], agg: Agg) -> Vec<u32> {
    let mut v = v.to_vec();
    match agg {
        Agg::Sum => vec![v.iter().sum()],
        Agg::GMax => {
            v.sort_by(|a, b| b.cmp(a));
            v
        }
        Agg::GMin => {
            v.sort();
            v
        }
    }
}

/// Distance from each constraint model to each profile member, row by row.
pub fn vectors(profile: &[Vec<u32>], mu: &[u32], d: fn(u32, u32) -> u32) -> Vec<Vec<u32>> {
    mu.iter()
        .map(|&w| {
            profile
                .iter()
                .map(|k| k.iter().map(|&m| d(w, m)).min().expect("consistent base"))
                .collect()
        })
        .collect()
}

/// Two passes: find the least aggregate key, then keep every row attaining it.
pub fn merge(profile: &[Vec<u32>], mu: &[u32], d: fn(u32, u32) -> u32, agg: Agg) -> Vec<u32> {
    let rows = vectors(profile, mu, d);
    let keys: Vec<_> = rows.iter().map(|v| key(v, agg)).collect();
    let Some(best) = keys.iter().min().cloned() else {
        return vec![];
    };
    let mut out: Vec<u32> = mu
        .iter()
        .zip(&keys)
        .filter(|(_, k)| **k == best)
        .map(|(&w, _)| w)
        .collect();
    out.sort();
    out
}

/// Sum of Hamming distances from `w` to each member.
pub fn hamming_sum(profile: &[Vec<u32>], w: u32) -> u32 {
    profile
        .iter()
        .map(|k| k.iter().map(|&m| hamming(w, m)).min().unwrap())
        .sum()
}

/// Case number of a pair under the five membership patterns, if any.
/// The pair must be incomparable; case 5 is asymmetric (first in, second out).
pub fn critical_case(target: &[u32], w1: u32, w2: u32) -> Option<u8> {
    if w1 & w2 == w1 || w1 & w2 == w2 {
        return None;
    }
    let k = |w: u32| target.contains(&w);
    match (k(w1), k(w2), k(w1 & w2), k(w1 | w2)) {
        (true, true, false, false) => Some(1),
        (true, true, true, false) => Some(2),
        (true, true, false, true) => Some(3),
        (false, false, true, true) => Some(4),
        (true, false, true, true) => Some(5),
        _ => None,
    }
}

pub fn choose(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
