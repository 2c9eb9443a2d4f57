//! Model sets over at most six atoms packed into a `u64`, bit `k` standing
//! for the interpretation with bitmask `k`. Used by the exhaustive search,
//! where closures and distances are evaluated millions of times.

use crate::fragments::Fragment;
use crate::logic::{AtomUniverse, Interpretation, ModelSet};

pub const MAX_COMPACT_ATOMS: usize = 6;

pub type SetMask = u64;

pub fn members(set: SetMask) -> impl Iterator<Item = u32> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let k = rest.trailing_zeros();
            rest &= rest - 1;
            Some(k)
        }
    })
}

pub fn from_model_set(ms: &ModelSet) -> SetMask {
    debug_assert!(ms.universe().len() <= MAX_COMPACT_ATOMS);
    ms.iter().fold(0, |acc, w| acc | 1 << w.bits())
}

pub fn to_model_set(set: SetMask, universe: &AtomUniverse) -> ModelSet {
    ModelSet::new(universe, members(set).map(Interpretation::new)).expect("compact set fits its universe")
}

fn universe_mask(n: usize) -> SetMask {
    if n >= MAX_COMPACT_ATOMS {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

pub fn closure(set: SetMask, n: usize, fragment: Fragment) -> SetMask {
    if set == 0 {
        return 0;
    }
    match fragment {
        Fragment::Full => set,
        Fragment::OneCnf => {
            let (mut bottom, mut top) = (u32::MAX, 0u32);
            for w in members(set) {
                bottom &= w;
                top |= w;
            }
            let mut out = 0;
            for w in 0..(1u32 << n) {
                if w & bottom == bottom && w | top == top {
                    out |= 1 << w;
                }
            }
            out
        }
        Fragment::Horn => {
            let mut cur = set;
            loop {
                let mut next = cur;
                for x in members(cur) {
                    for y in members(cur) {
                        next |= 1 << (x & y);
                    }
                }
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
        Fragment::Krom => {
            let mut cur = set;
            loop {
                let mut next = cur;
                let ms: Vec<u32> = members(cur).collect();
                for (i, &x) in ms.iter().enumerate() {
                    for (j, &y) in ms.iter().enumerate().skip(i + 1) {
                        for &z in &ms[j + 1..] {
                            next |= 1 << ((x & y) | (x & z) | (y & z));
                        }
                    }
                }
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
    }
}

/// All non-empty closed sets over `n` atoms in ascending `u64` order, or
/// `Err(count_so_far)` once more than `limit` have been seen.
///
/// Enumeration follows Ganter's NextClosure algorithm over the ground set of
/// `2^n` interpretations, which visits every closed set exactly once.
pub fn closed_sets(n: usize, fragment: Fragment, limit: u64) -> Result<Vec<SetMask>, u64> {
    assert!(n <= MAX_COMPACT_ATOMS);
    let ground = 1usize << n;
    let full = universe_mask(n);
    let mut out = Vec::new();
    let mut current = closure(0, n, fragment);
    loop {
        if current != 0 {
            if out.len() as u64 >= limit {
                return Err(out.len() as u64 + 1);
            }
            out.push(current);
        }
        if current == full {
            break;
        }
        let mut a = current;
        let mut advanced = false;
        for i in (0..ground).rev() {
            let bit = 1u64 << i;
            if a & bit != 0 {
                a &= !bit;
                continue;
            }
            let b = closure(a | bit, n, fragment);
            if (b & !a) & (bit - 1) == 0 {
                current = b;
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments;

    fn brute_closed(n: usize, f: Fragment) -> Vec<SetMask> {
        (1..(1u64 << (1 << n))).filter(|&s| closure(s, n, f) == s).collect()
    }

    #[test]
    fn next_closure_matches_brute_force() {
        for n in 1..=3 {
            for f in Fragment::ALL {
                assert_eq!(closed_sets(n, f, u64::MAX).unwrap(), brute_closed(n, f), "n={n} {f}");
            }
        }
    }

    #[test]
    fn closed_set_counts() {
        // Counts over three atoms, computed independently by brute force.
        let count = |f| closed_sets(3, f, u64::MAX).unwrap().len();
        assert_eq!(count(Fragment::Horn), 121);
        assert_eq!(count(Fragment::Krom), 165);
        assert_eq!(count(Fragment::OneCnf), 27);
        assert_eq!(count(Fragment::Full), 255);
        assert_eq!(closed_sets(4, Fragment::OneCnf, u64::MAX).unwrap().len(), 81);
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(closed_sets(3, Fragment::Full, 10), Err(11));
    }

    #[test]
    fn agrees_with_model_set_closure() {
        let u = AtomUniverse::parse_list("a,b,c").unwrap();
        for s in 1..=255u64 {
            let ms = to_model_set(s, &u);
            for f in Fragment::ALL {
                let expected = from_model_set(&fragments::closure(&ms, f));
                assert_eq!(closure(s, 3, f), expected);
            }
        }
    }
}
