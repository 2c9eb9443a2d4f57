//! Fragment closure operators, expressibility, and synthesis of a fragment
//! KB from a closed model set.
//!
//! Each fragment pairs a clause restriction with a closure operator on sets
//! of interpretations; a model set is expressible in the fragment exactly
//! when it is a fixpoint of that operator.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Clause, Interpretation, KnowledgeBase, ModelSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    /// Unrestricted clauses; the closure operator is the identity.
    Full,
    /// At most one positive literal per clause; closed under intersection.
    Horn,
    /// At most two literals per clause; closed under ternary majority.
    Krom,
    /// Unit clauses; closed under intersection, union and betweenness.
    #[serde(rename = "1cnf")]
    OneCnf,
}

impl Fragment {
    pub const ALL: [Fragment; 4] = [Fragment::Full, Fragment::Horn, Fragment::Krom, Fragment::OneCnf];

    /// Conventional display name (`1CNF`, `2CNF`, `Horn`, `full`).
    pub fn label(self) -> &'static str {
        match self {
            Fragment::Full => "full",
            Fragment::Horn => "Horn",
            Fragment::Krom => "2CNF",
            Fragment::OneCnf => "1CNF",
        }
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Full => "full",
            Fragment::Horn => "horn",
            Fragment::Krom => "krom",
            Fragment::OneCnf => "1cnf",
        })
    }
}

impl FromStr for Fragment {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full" => Ok(Fragment::Full),
            "horn" => Ok(Fragment::Horn),
            "krom" | "2cnf" => Ok(Fragment::Krom),
            "1cnf" => Ok(Fragment::OneCnf),
            other => Err(format!("unknown fragment {other:?}")),
        }
    }
}

/// One application of the fragment's generating function, unioned with the
/// input.
pub fn closure_step(ms: &ModelSet, fragment: Fragment) -> ModelSet {
    let members = ms.as_slice();
    let mut out: Vec<Interpretation> = members.to_vec();
    match fragment {
        Fragment::Full => {}
        Fragment::Horn => {
            for (i, &x) in members.iter().enumerate() {
                for &y in &members[i + 1..] {
                    out.push(x.meet(y));
                }
            }
        }
        Fragment::Krom => {
            for (i, &x) in members.iter().enumerate() {
                for (j, &y) in members.iter().enumerate().skip(i + 1) {
                    for &z in &members[j + 1..] {
                        out.push(Interpretation::maj3(x, y, z));
                    }
                }
            }
        }
        Fragment::OneCnf => {
            for &x in members {
                for &y in members {
                    out.push(x.meet(y));
                    out.push(x.join(y));
                    if x.is_subset_of(y) {
                        let free = y.minus(x).bits();
                        let mut sub = free;
                        loop {
                            out.push(Interpretation::new(x.bits() | sub));
                            if sub == 0 {
                                break;
                            }
                            sub = (sub - 1) & free;
                        }
                    }
                }
            }
        }
    }
    ModelSet::new(ms.universe(), out).expect("closure stays inside the universe")
}

/// Least fixpoint of [`closure_step`] above `ms`, by plain iteration.
///
/// Reference route for testing [`closure`]; quadratic to cubic per round.
pub fn naive_closure(ms: &ModelSet, fragment: Fragment) -> ModelSet {
    let mut current = ms.clone();
    loop {
        let next = closure_step(&current, fragment);
        if next.len() == current.len() {
            return current;
        }
        current = next;
    }
}

/// The fragment's closure operator.
///
/// Horn and Krom closures are computed semi-naively (only combinations that
/// involve a newly added interpretation are tried each round). The 1CNF
/// closure is the interval between the meet and the join of all members.
pub fn closure(ms: &ModelSet, fragment: Fragment) -> ModelSet {
    match fragment {
        Fragment::Full => ms.clone(),
        Fragment::OneCnf => match (ms.bottom(), ms.top()) {
            (Some(bottom), Some(top)) => {
                let free = top.minus(bottom).bits();
                let mut members = Vec::with_capacity(1 << free.count_ones());
                let mut sub = 0u32;
                loop {
                    members.push(Interpretation::new(bottom.bits() | sub));
                    sub = sub.wrapping_sub(free) & free;
                    if sub == 0 {
                        break;
                    }
                }
                members.sort_unstable();
                ModelSet::new(ms.universe(), members).expect("interval stays inside the universe")
            }
            _ => ms.clone(),
        },
        Fragment::Horn => semi_naive(ms, |frontier, all, out| {
            for &f in frontier {
                for &x in all {
                    out.push(f.meet(x));
                }
            }
        }),
        Fragment::Krom => semi_naive(ms, |frontier, all, out| {
            for &f in frontier {
                for (i, &x) in all.iter().enumerate() {
                    for &y in &all[i..] {
                        out.push(Interpretation::maj3(f, x, y));
                    }
                }
            }
        }),
    }
}

fn semi_naive<F>(ms: &ModelSet, combine: F) -> ModelSet
where
    F: Fn(&[Interpretation], &[Interpretation], &mut Vec<Interpretation>),
{
    let mut seen: HashSet<Interpretation> = ms.iter().collect();
    let mut all: Vec<Interpretation> = ms.iter().collect();
    let mut frontier = all.clone();
    let mut candidates = Vec::new();
    while !frontier.is_empty() {
        candidates.clear();
        combine(&frontier, &all, &mut candidates);
        frontier.clear();
        for &w in &candidates {
            if seen.insert(w) {
                frontier.push(w);
            }
        }
        all.extend_from_slice(&frontier);
    }
    ModelSet::new(ms.universe(), all).expect("closure stays inside the universe")
}

/// Closedness test without materializing the closure.
pub fn is_closed(ms: &ModelSet, fragment: Fragment) -> bool {
    let members = ms.as_slice();
    match fragment {
        Fragment::Full => true,
        Fragment::Horn => members
            .iter()
            .enumerate()
            .all(|(i, &x)| members[i + 1..].iter().all(|&y| ms.contains(x.meet(y)))),
        Fragment::Krom => members.iter().enumerate().all(|(i, &x)| {
            members.iter().enumerate().skip(i + 1).all(|(j, &y)| {
                members[j + 1..]
                    .iter()
                    .all(|&z| ms.contains(Interpretation::maj3(x, y, z)))
            })
        }),
        Fragment::OneCnf => match (ms.bottom(), ms.top()) {
            (Some(bottom), Some(top)) => {
                let width = top.minus(bottom).len();
                width < 32 && ms.len() as u64 == 1u64 << width
            }
            _ => true,
        },
    }
}

/// True iff `closure(ms, fragment) == ms`.
pub fn is_expressible(ms: &ModelSet, fragment: Fragment) -> bool {
    is_closed(ms, fragment)
}

/// Builds a `fragment` KB whose models are exactly `ms`.
///
/// 1CNF and Krom keep every unit (resp. every clause of length at most two)
/// satisfied by all members. Horn and full KBs get one clause per
/// non-member, chosen to be falsified by it and satisfied by all members.
/// The result is checked against `ms` before it is returned.
pub fn synthesize_kb(ms: &ModelSet, fragment: Fragment) -> Result<KnowledgeBase> {
    if !is_closed(ms, fragment) {
        return Err(Error::NotClosed(fragment));
    }
    let universe = ms.universe();
    let n = universe.len();
    let members = ms.as_slice();

    let clauses: Vec<Clause> = if ms.is_empty() {
        vec![Clause::positive_unit(0), Clause::negative_unit(0)]
    } else {
        match fragment {
            Fragment::OneCnf => unit_implicates(members, n),
            Fragment::Krom => {
                let mut out = unit_implicates(members, n);
                for i in 0..n {
                    for j in i + 1..n {
                        for (pi, pj) in [(true, true), (true, false), (false, true), (false, false)] {
                            let c = literal_pair(i, pi, j, pj);
                            if members.iter().all(|w| c.is_satisfied_by(*w)) {
                                out.push(c);
                            }
                        }
                    }
                }
                out
            }
            Fragment::Horn => {
                let mut out = Vec::new();
                for w in (0..=universe.full_mask()).map(Interpretation::new) {
                    if ms.contains(w) {
                        continue;
                    }
                    let above = members
                        .iter()
                        .filter(|m| w.is_subset_of(**m))
                        .copied()
                        .reduce(Interpretation::meet);
                    let clause = match above {
                        None => Clause::new(0, w.bits()),
                        Some(meet) => {
                            let extra = meet.minus(w).bits();
                            if extra == 0 {
                                return Err(Error::SynthesisFailure(fragment));
                            }
                            Clause::new(1 << extra.trailing_zeros(), w.bits())
                        }
                    }
                    .map_err(|_| Error::SynthesisFailure(fragment))?;
                    out.push(clause);
                }
                out
            }
            Fragment::Full => (0..=universe.full_mask())
                .map(Interpretation::new)
                .filter(|w| !ms.contains(*w))
                .map(|w| Clause::new(w.complement(universe.full_mask()).bits(), w.bits()))
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::SynthesisFailure(fragment))?,
        }
    };

    let kb = KnowledgeBase::new(universe, fragment, clauses)?;
    if kb.models() != ms {
        return Err(Error::SynthesisFailure(fragment));
    }
    Ok(kb)
}

fn unit_implicates(members: &[Interpretation], n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for i in 0..n {
        if members.iter().all(|w| w.contains(i)) {
            out.push(Clause::positive_unit(i));
        }
        if members.iter().all(|w| !w.contains(i)) {
            out.push(Clause::negative_unit(i));
        }
    }
    out
}

fn literal_pair(i: usize, pos_i: bool, j: usize, pos_j: bool) -> Clause {
    let mut p = 0;
    let mut q = 0;
    if pos_i {
        p |= 1 << i
    } else {
        q |= 1 << i
    }
    if pos_j {
        p |= 1 << j
    } else {
        q |= 1 << j
    }
    Clause::new(p, q).expect("distinct atoms")
}

/// Every clause over `n` atoms that fits `fragment`, excluding the empty
/// clause.
pub fn all_clauses(n: usize, fragment: Fragment) -> Vec<Clause> {
    let mut out = Vec::new();
    // Each atom is absent (0), positive (1) or negative (2).
    let total = 3usize.pow(n as u32);
    for code in 1..total {
        let (mut p, mut q, mut c) = (0u32, 0u32, code);
        for i in 0..n {
            match c % 3 {
                1 => p |= 1 << i,
                2 => q |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        let clause = Clause::new(p, q).expect("disjoint by construction");
        if clause.fits(fragment) {
            out.push(clause);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_model_set, AtomUniverse};

    fn ms(atoms: &str, text: &str) -> ModelSet {
        let u = AtomUniverse::parse_list(atoms).unwrap();
        parse_model_set(&text.replace(' ', "\n"), &u).unwrap()
    }

    #[test]
    fn horn_step_adds_bottom() {
        let m = ms("a,b", "{a} {b} {a,b}");
        assert_eq!(
            closure_step(&m, Fragment::Horn).format_members(),
            ["{}", "{a}", "{b}", "{a,b}"]
        );
        assert!(!is_expressible(&m, Fragment::Horn));
    }

    #[test]
    fn krom_step_adds_majority() {
        let m = ms("a,b,c,d,e", "{a,b} {b,c,e} {a,c,d}");
        let step = closure_step(&m, Fragment::Krom);
        assert_eq!(step.difference(&m).unwrap().format_members(), ["{a,b,c}"]);
        assert_eq!(closure(&m, Fragment::Krom), step);
        assert!(!is_expressible(&m, Fragment::Krom));
    }

    #[test]
    fn one_cnf_step_adds_missing_corner() {
        let m = ms("a,b,c", "{} {a} {b} {c} {a,c} {b,c} {a,b,c}");
        let step = closure_step(&m, Fragment::OneCnf);
        assert_eq!(step.difference(&m).unwrap().format_members(), ["{a,b}"]);
    }

    #[test]
    fn closure_axioms_on_small_cases() {
        let single = ms("a,b", "{a,b}");
        let empty = ms("a,b", "");
        for f in Fragment::ALL {
            assert_eq!(closure(&single, f), single);
            assert_eq!(closure(&empty, f), empty);
            assert!(is_expressible(&single, f));
        }
        let two = ms("a,b", "{a} {b}");
        assert_eq!(closure(&two, Fragment::OneCnf).len(), 4);
    }

    #[test]
    fn synthesize_singleton_and_full() {
        let single = ms("a,b", "{a,b}");
        let kb = synthesize_kb(&single, Fragment::OneCnf).unwrap();
        assert_eq!(kb.clauses(), [Clause::positive_unit(0), Clause::positive_unit(1)]);
        let horn = synthesize_kb(&single, Fragment::Horn).unwrap();
        assert_eq!(horn.models(), &single);
        assert!(horn.clauses().iter().all(|c| c.fits(Fragment::Horn)));
        let full = ms("a,b", "{} {a} {b} {a,b}");
        for f in Fragment::ALL {
            assert!(synthesize_kb(&full, f).unwrap().clauses().is_empty());
        }
    }

    #[test]
    fn synthesize_krom_not_both() {
        let m = ms("a,b", "{} {a} {b}");
        let kb = synthesize_kb(&m, Fragment::Krom).unwrap();
        // Oracle: filter every clause of length <= 2 by satisfaction.
        let expected: Vec<Clause> = all_clauses(2, Fragment::Krom)
            .into_iter()
            .filter(|c| m.iter().all(|w| c.is_satisfied_by(w)))
            .collect();
        assert_eq!(expected, [Clause::new(0, 0b11).unwrap()]);
        assert_eq!(kb.clauses(), expected);
    }

    #[test]
    fn synthesize_rejects_open_sets() {
        let m = ms("a,b", "{a} {b}");
        assert_eq!(synthesize_kb(&m, Fragment::Horn), Err(Error::NotClosed(Fragment::Horn)));
    }

    #[test]
    fn synthesize_empty_set() {
        let m = ms("a,b", "");
        for f in Fragment::ALL {
            let kb = synthesize_kb(&m, f).unwrap();
            assert!(!kb.is_consistent());
        }
    }

    #[test]
    fn clause_space_sizes() {
        // 3^2 - 1 clauses over two atoms; Horn excludes `a b`.
        assert_eq!(all_clauses(2, Fragment::Full).len(), 8);
        assert_eq!(all_clauses(2, Fragment::Horn).len(), 7);
        assert_eq!(all_clauses(3, Fragment::Krom).len(), 6 + 12);
        assert_eq!(all_clauses(3, Fragment::OneCnf).len(), 6);
    }
}
