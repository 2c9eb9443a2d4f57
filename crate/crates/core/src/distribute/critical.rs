//! Critical pairs witnessing non-1CNF-expressibility, and the cap-cup
//! identity satisfied by Hamming-sum distances to 1CNF profiles.

use std::fmt;

use crate::error::{Error, Result};
use crate::fragments::{closure, is_closed, Fragment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{AtomUniverse, Clause, Interpretation, KnowledgeBase, ModelSet, Profile};
use crate::metrics::{dist_to_kb, Distance};

/// Membership pattern of `(w1, w2, w1∩w2, w1∪w2)` in the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CriticalCase {
    /// Both in, meet and join out.
    BothInMeetJoinOut = 1,
    /// Both and meet in, join out.
    JoinMissing = 2,
    /// Both and join in, meet out.
    MeetMissing = 3,
    /// Meet and join in, both out.
    BothOut = 4,
    /// First, meet and join in, second out.
    SecondOut = 5,
}

impl CriticalCase {
    pub fn number(self) -> u8 {
        self as u8
    }

    /// The case matching a membership pattern, if any.
    pub fn classify(w1: bool, w2: bool, meet: bool, join: bool) -> Option<Self> {
        match (w1, w2, meet, join) {
            (true, true, false, false) => Some(Self::BothInMeetJoinOut),
            (true, true, true, false) => Some(Self::JoinMissing),
            (true, true, false, true) => Some(Self::MeetMissing),
            (false, false, true, true) => Some(Self::BothOut),
            (true, false, true, true) => Some(Self::SecondOut),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CriticalPair {
    pub w1: Interpretation,
    pub w2: Interpretation,
    pub case: CriticalCase,
}

impl CriticalPair {
    /// Re-checks incomparability and the membership pattern against `target`.
    pub fn is_valid_for(&self, target: &ModelSet) -> bool {
        !self.w1.comparable(self.w2)
            && CriticalCase::classify(
                target.contains(self.w1),
                target.contains(self.w2),
                target.contains(self.w1.meet(self.w2)),
                target.contains(self.w1.join(self.w2)),
            ) == Some(self.case)
    }
}

impl fmt::Display for CriticalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// All critical pairs drawn from the 1CNF closure of `target`.
///
/// Symmetric cases are reported once with `w1 < w2`; the asymmetric case is
/// reported with `w1` the member inside the target. The list is empty
/// exactly when the target is 1CNF-expressible.
pub fn find_critical_pairs(target: &ModelSet) -> Vec<CriticalPair> {
    let cl = closure(target, Fragment::OneCnf);
    let members = cl.as_slice();
    let mut out = Vec::new();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if x.comparable(y) {
                continue;
            }
            let (inx, iny) = (target.contains(x), target.contains(y));
            let meet = target.contains(x.meet(y));
            let join = target.contains(x.join(y));
            let pair = match CriticalCase::classify(inx, iny, meet, join) {
                Some(case) => Some(CriticalPair { w1: x, w2: y, case }),
                None => CriticalCase::classify(iny, inx, meet, join).map(|case| CriticalPair { w1: y, w2: x, case }),
            };
            out.extend(pair);
        }
    }
    debug_assert!(
        out.is_empty() == is_closed(target, Fragment::OneCnf),
        "a non-expressible target always has a critical pair"
    );
    out
}

fn hamming_sum(w: Interpretation, profile: &Profile) -> Result<u64> {
    profile
        .iter()
        .map(|kb| dist_to_kb(w, kb, Distance::Hamming).map(u64::from))
        .sum()
}

/// Checks `H(w1,E) + H(w2,E) = H(w1∩w2,E) + H(w1∪w2,E)` with Hamming-sum
/// distances, for a profile of 1CNF-closed bases.
pub fn check_cap_cup_lemma(profile: &Profile, w1: Interpretation, w2: Interpretation) -> Result<bool> {
    if let Some(i) = profile.iter().position(|kb| !is_closed(kb.models(), Fragment::OneCnf)) {
        return Err(Error::NotOneCnfProfile(i));
    }
    let lhs = hamming_sum(w1, profile)? + hamming_sum(w2, profile)?;
    let rhs = hamming_sum(w1.meet(w2), profile)? + hamming_sum(w1.join(w2), profile)?;
    Ok(lhs == rhs)
}

/// A random consistent 1CNF KB: each atom is independently required true,
/// required false, or left free.
pub fn random_one_cnf_kb<R: Rng>(rng: &mut R, universe: &AtomUniverse) -> KnowledgeBase {
    let clauses: Vec<Clause> = (0..universe.len())
        .filter_map(|i| match rng.gen_range(0..3) {
            0 => Some(Clause::positive_unit(i)),
            1 => Some(Clause::negative_unit(i)),
            _ => None,
        })
        .collect();
    KnowledgeBase::new(universe, Fragment::OneCnf, clauses).expect("unit clauses fit 1CNF")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapCupFailure {
    pub profile: Profile,
    pub w1: Interpretation,
    pub w2: Interpretation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapCupSweep {
    pub seed: u64,
    pub profiles: usize,
    pub cases: u64,
    pub failures: Vec<CapCupFailure>,
}

/// Checks the cap-cup identity on `profiles` seeded random 1CNF profiles of
/// length `1..=max_len` over `1..=max_atoms` atoms, with `pairs` random
/// interpretation pairs each.
pub fn cap_cup_sweep(
    seed: u64,
    profiles: usize,
    pairs: usize,
    max_atoms: usize,
    max_len: usize,
) -> Result<CapCupSweep> {
    if max_atoms == 0 || max_len == 0 {
        return Err(Error::InvalidBounds(
            "atoms and profile length must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweep = CapCupSweep {
        seed,
        profiles,
        cases: 0,
        failures: Vec::new(),
    };
    for _ in 0..profiles {
        let n = rng.gen_range(1..=max_atoms);
        let universe = AtomUniverse::new((0..n).map(|i| format!("p{i}")))?;
        let len = rng.gen_range(1..=max_len);
        let profile = Profile::new((0..len).map(|_| random_one_cnf_kb(&mut rng, &universe)).collect())?;
        for _ in 0..pairs {
            let w1 = Interpretation::new(rng.gen_range(0..=universe.full_mask()));
            let w2 = Interpretation::new(rng.gen_range(0..=universe.full_mask()));
            sweep.cases += 1;
            if !check_cap_cup_lemma(&profile, w1, w2)? {
                sweep.failures.push(CapCupFailure {
                    profile: profile.clone(),
                    w1,
                    w2,
                });
            }
        }
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments::synthesize_kb;
    use crate::logic::{parse_kb, parse_model_set};

    fn ms(atoms: &str, text: &str) -> ModelSet {
        let u = AtomUniverse::parse_list(atoms).unwrap();
        parse_model_set(&text.replace(' ', "\n"), &u).unwrap()
    }

    #[test]
    fn three_atom_example() {
        let t = ms("a,b,c", "{} {a} {b} {c} {a,c} {b,c} {a,b,c}");
        let u = t.universe().clone();
        let pairs = find_critical_pairs(&t);
        let show: Vec<(String, String, u8)> = pairs
            .iter()
            .map(|p| (u.format(p.w1), u.format(p.w2), p.case.number()))
            .collect();
        assert!(show.contains(&("{a,c}".into(), "{a,b}".into(), 5)));
        assert!(show.contains(&("{b,c}".into(), "{a,b}".into(), 5)));
        assert!(show.contains(&("{a}".into(), "{b}".into(), 2)));
        assert!(pairs.iter().all(|p| p.is_valid_for(&t)));
    }

    #[test]
    fn both_corners_missing() {
        let t = ms("a,b", "{a} {b}");
        let pairs = find_critical_pairs(&t);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].case, CriticalCase::BothInMeetJoinOut);
    }

    #[test]
    fn expressible_has_none() {
        assert!(find_critical_pairs(&ms("a,b", "{a} {a,b}")).is_empty());
    }

    #[test]
    fn cap_cup_on_singletons() {
        let t = ms("a,b", "{a} {b}");
        let u = t.universe().clone();
        let e = Profile::new(
            t.iter()
                .map(|w| synthesize_kb(&ModelSet::singleton(&u, w).unwrap(), Fragment::OneCnf).unwrap())
                .collect(),
        )
        .unwrap();
        let (a, b) = (Interpretation::new(1), Interpretation::new(2));
        // {a}: 0+2, {b}: 2+0, {}: 1+1, {a,b}: 1+1.
        assert_eq!(check_cap_cup_lemma(&e, a, b), Ok(true));
        assert_eq!(check_cap_cup_lemma(&e, a, a), Ok(true));
    }

    #[test]
    fn small_sweep_is_deterministic() {
        let a = cap_cup_sweep(7, 20, 10, 4, 3).unwrap();
        assert_eq!(a.cases, 200);
        assert!(a.failures.is_empty());
        assert_eq!(a, cap_cup_sweep(7, 20, 10, 4, 3).unwrap());
    }

    #[test]
    fn cap_cup_rejects_non_1cnf_member() {
        let u = AtomUniverse::parse_list("a,b").unwrap();
        let e = Profile::single(parse_kb("full\na b\n", &u).unwrap()).unwrap();
        assert_eq!(
            check_cap_cup_lemma(&e, Interpretation::EMPTY, Interpretation::EMPTY),
            Err(Error::NotOneCnfProfile(0))
        );
    }
}
