//! Constructive distribution and simplification procedures.
//!
//! Every public procedure first checks whether the target is already
//! expressible in the fragment and, if so, returns the trivial witness (the
//! target's own KB as both profile and constraint). The raw builders are
//! kept separate so they can also be exercised on expressible targets.

use crate::error::{Error, Result};
use crate::fragments::{closure, is_expressible, Fragment};
use crate::logic::{AtomUniverse, Interpretation, ModelSet, MAX_ATOMS};
use crate::merge::MergeSpec;
use crate::metrics::{dist, Aggregation, Distance};

use super::{assemble, specs_for, Construction, DistributionWitness, HornCase};

fn require_consistent(target: &ModelSet) -> Result<()> {
    if target.is_empty() {
        Err(Error::InconsistentKb)
    } else {
        Ok(())
    }
}

fn require_count(target: &ModelSet, expected: usize) -> Result<()> {
    if target.len() == expected {
        Ok(())
    } else {
        Err(Error::WrongModelCount {
            expected,
            found: target.len(),
        })
    }
}

fn singletons(target: &ModelSet) -> Vec<ModelSet> {
    target
        .iter()
        .map(|w| ModelSet::singleton(target.universe(), w).expect("member of its own universe"))
        .collect()
}

fn set_of(universe: &AtomUniverse, members: impl IntoIterator<Item = Interpretation>) -> ModelSet {
    ModelSet::new(universe, members).expect("constructed interpretations fit the working universe")
}

/// Profile and constraint are both the target's own fragment KB. Valid for
/// every distance and aggregation.
pub fn expressible_witness(target: &ModelSet, fragment: Fragment) -> Result<DistributionWitness> {
    require_consistent(target)?;
    if !is_expressible(target, fragment) {
        return Err(Error::NotClosed(fragment));
    }
    assemble(
        target,
        fragment,
        vec![target.clone()],
        target,
        Construction::Expressible,
        MergeSpec::all().collect(),
    )
}

/// One single-model base per target model, constraint = closure. Works for
/// the drastic distance under every aggregation.
pub fn distribute_drastic(target: &ModelSet, fragment: Fragment) -> Result<DistributionWitness> {
    require_consistent(target)?;
    if is_expressible(target, fragment) {
        return expressible_witness(target, fragment);
    }
    drastic_profile(target, fragment)
}

pub(crate) fn drastic_profile(target: &ModelSet, fragment: Fragment) -> Result<DistributionWitness> {
    assemble(
        target,
        fragment,
        singletons(target),
        &closure(target, fragment),
        Construction::Drastic,
        specs_for(Distance::Drastic),
    )
}

/// Single-model bases under leximin, for targets whose distinct models are
/// all at the same positive distance.
pub fn distribute_gmin_equidistant(
    target: &ModelSet,
    fragment: Fragment,
    distance: Distance,
) -> Result<DistributionWitness> {
    require_consistent(target)?;
    check_equidistant(target, distance)?;
    if is_expressible(target, fragment) {
        return expressible_witness(target, fragment);
    }
    gmin_profile(target, fragment, distance)
}

pub(crate) fn check_equidistant(target: &ModelSet, distance: Distance) -> Result<Option<u32>> {
    let members = target.as_slice();
    let mut expected = None;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let d = dist(x, y, distance);
            match expected {
                None => expected = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotEquidistant {
                        first: target.universe().format(x),
                        second: target.universe().format(y),
                        expected: e,
                        found: d,
                    })
                }
                Some(_) => {}
            }
        }
    }
    Ok(expected)
}

pub(crate) fn gmin_profile(target: &ModelSet, fragment: Fragment, distance: Distance) -> Result<DistributionWitness> {
    assemble(
        target,
        fragment,
        singletons(target),
        &closure(target, fragment),
        Construction::GMinEquidistant,
        vec![MergeSpec::new(distance, Aggregation::GMin)],
    )
}

/// Single Krom base over `|target|` fresh atoms. Each target model is
/// lifted with all fresh atoms but its own; the Krom closure of the lifted
/// models only adds interpretations containing every fresh atom, which puts
/// all non-target constraint models strictly further away.
pub fn simplify_krom(target: &ModelSet) -> Result<DistributionWitness> {
    require_consistent(target)?;
    if is_expressible(target, Fragment::Krom) {
        return expressible_witness(target, Fragment::Krom);
    }
    krom_profile(target)
}

pub(crate) fn krom_profile(target: &ModelSet) -> Result<DistributionWitness> {
    let base = target.universe();
    let n = target.len();
    if base.len() + n > MAX_ATOMS {
        return Err(Error::UniverseTooLarge(base.len() + n));
    }
    let working = base.with_fresh_atoms(n)?;
    let first_fresh = base.len();
    let all_fresh = working.full_mask() & !base.full_mask();
    let lifted = set_of(
        &working,
        target
            .iter()
            .enumerate()
            .map(|(i, w)| Interpretation::new(w.bits() | (all_fresh & !(1 << (first_fresh + i))))),
    );
    let constraint = closure(target, Fragment::Krom).extend_universe(&working)?;
    assemble(
        target,
        Fragment::Krom,
        vec![closure(&lifted, Fragment::Krom)],
        &constraint,
        Construction::KromFreshAtoms,
        specs_for(Distance::Hamming),
    )
}

/// For a two-model target, one single-model base per interpretation that
/// the 1CNF closure adds, holding that interpretation's complement.
pub fn distribute_1cnf_gmax_two_models(target: &ModelSet) -> Result<DistributionWitness> {
    require_count(target, 2)?;
    if is_expressible(target, Fragment::OneCnf) {
        return expressible_witness(target, Fragment::OneCnf);
    }
    let universe = target.universe();
    let cl = closure(target, Fragment::OneCnf);
    let extra = cl.difference(target)?;
    let bases = extra
        .iter()
        .map(|w| set_of(universe, [w.complement(universe.full_mask())]))
        .collect();
    assemble(
        target,
        Fragment::OneCnf,
        bases,
        &cl,
        Construction::OneCnfGMaxTwoModels,
        vec![MergeSpec::new(Distance::Hamming, Aggregation::GMax)],
    )
}

/// Horn simplification of a two-model target under Hamming distance.
///
/// With `d1 = |ω1∖ω2| <= d2 = |ω2∖ω1|`, the single base has the comparable
/// models `ω1 ∪ S` and `ω1 ∪ ω2`, where `S` is the `d1` lowest-indexed atoms
/// of `ω2∖ω1`. Both target models then sit at distance `d1`, their meet
/// strictly further.
pub fn simplify_horn_two_models(target: &ModelSet) -> Result<DistributionWitness> {
    require_count(target, 2)?;
    let (x, y) = (target.as_slice()[0], target.as_slice()[1]);
    if x.comparable(y) {
        return expressible_witness(target, Fragment::Horn);
    }
    horn_two_profile(target, x, y)
}

pub(crate) fn horn_two_profile(target: &ModelSet, x: Interpretation, y: Interpretation) -> Result<DistributionWitness> {
    let (w1, w2) = if x.minus(y).len() <= y.minus(x).len() {
        (x, y)
    } else {
        (y, x)
    };
    let d1 = w1.minus(w2).len() as usize;
    let lifted = w2.minus(w1).atoms().take(d1).fold(w1, Interpretation::with);
    let universe = target.universe();
    let base = set_of(universe, [lifted, w1.join(w2)]);
    let constraint = set_of(universe, [w1, w2, w1.meet(w2)]);
    assemble(
        target,
        Fragment::Horn,
        vec![base],
        &constraint,
        Construction::HornTwoModels,
        specs_for(Distance::Hamming),
    )
}

fn lowest(w: Interpretation) -> usize {
    w.bits().trailing_zeros() as usize
}

/// Horn distribution of a three-model target whose models are not all
/// pairwise incomparable, by case analysis on the comparability pattern.
pub fn distribute_horn_three_models(target: &ModelSet) -> Result<DistributionWitness> {
    require_count(target, 3)?;
    if is_expressible(target, Fragment::Horn) {
        return expressible_witness(target, Fragment::Horn);
    }
    let m = target.as_slice();
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let incomparable: Vec<(usize, usize, usize)> =
        pairs.into_iter().filter(|&(i, j, _)| !m[i].comparable(m[j])).collect();
    let universe = target.universe();
    let specs = specs_for(Distance::Hamming);

    match incomparable.as_slice() {
        [(i, j, k)] => {
            let (w1, w2, w3) = (m[*i], m[*j], m[*k]);
            let a = lowest(w1.minus(w2));
            let b = lowest(w2.minus(w1));
            let meet = w1.meet(w2);
            if w1.is_subset_of(w3) && w2.is_subset_of(w3) {
                let working = universe.with_fresh_atoms(1)?;
                let c = universe.len();
                let k1 = set_of(&working, [w1.with(b), w2.with(a), w3, meet.with(a).with(b)]);
                let k2 = set_of(&working, [w1, w2, w3.with(c), meet]);
                let mu = closure(target, Fragment::Horn).extend_universe(&working)?;
                assemble(
                    target,
                    Fragment::Horn,
                    vec![k1, k2],
                    &mu,
                    Construction::HornThreeModels(HornCase::OneIncomparableBelow),
                    specs,
                )
            } else if w3.is_subset_of(w1) && w3.is_subset_of(w2) {
                let c = lowest(meet.minus(w3));
                let k1 = set_of(
                    universe,
                    [w1.with(b), w2.with(a), w3, meet.without(c), meet.with(a).with(b)],
                );
                let k2 = set_of(universe, [w1, w2.with(a), w3, meet.with(a)]);
                let k3 = set_of(universe, [w1.with(b), w2, w3, meet.with(b)]);
                let k4 = set_of(universe, [w1, w2, w3.with(c), meet]);
                assemble(
                    target,
                    Fragment::Horn,
                    vec![k1, k2, k3, k4.clone(), k4],
                    &closure(target, Fragment::Horn),
                    Construction::HornThreeModels(HornCase::OneIncomparableAbove),
                    specs,
                )
            } else {
                unreachable!("a model comparable to both members of an incomparable pair lies above or below both")
            }
        }
        [_, _] => {
            // The middle model is the one in both incomparable pairs.
            let (lo, _, mid) = pairs
                .into_iter()
                .find(|&(i, j, _)| m[i].comparable(m[j]))
                .expect("exactly one comparable pair");
            let hi = 3 - lo - mid;
            let (w1, w2, w3) = (m[lo], m[mid], m[hi]);
            let m12 = w1.meet(w2);
            let m23 = w2.meet(w3);
            let (shift1, shift2, case) = if w1.is_subset_of(w3) {
                // c ∈ ω2∖ω3, a ∈ ω1∖ω2
                (
                    lowest(w2.minus(w3)),
                    lowest(w1.minus(w2)),
                    HornCase::TwoIncomparableAscending,
                )
            } else {
                // b ∈ ω2∖ω1, d ∈ ω3∖ω2
                (
                    lowest(w2.minus(w1)),
                    lowest(w3.minus(w2)),
                    HornCase::TwoIncomparableDescending,
                )
            };
            let k1 = set_of(
                universe,
                [w1.with(shift1), w2, w3.with(shift1), m12.with(shift1), m23.with(shift1)],
            );
            let k2 = set_of(universe, [w1, w2.with(shift2), w3, m12.with(shift2), m23.with(shift2)]);
            assemble(
                target,
                Fragment::Horn,
                vec![k1, k2],
                &closure(target, Fragment::Horn),
                Construction::HornThreeModels(case),
                specs,
            )
        }
        _ => Err(Error::PairwiseIncomparableUnsupported),
    }
}

/// Picks the construction that applies to `(fragment, spec, target)`, if
/// any. Returns `Ok(None)` when no constructive procedure covers the case.
pub fn auto_witness(target: &ModelSet, fragment: Fragment, spec: MergeSpec) -> Result<Option<DistributionWitness>> {
    require_consistent(target)?;
    if is_expressible(target, fragment) {
        return expressible_witness(target, fragment).map(Some);
    }
    let hamming = spec.distance == Distance::Hamming;
    let w = match fragment {
        _ if spec.distance == Distance::Drastic => distribute_drastic(target, fragment)?,
        Fragment::Krom if hamming => simplify_krom(target)?,
        Fragment::OneCnf if spec.aggregation == Aggregation::GMax && target.len() == 2 => {
            distribute_1cnf_gmax_two_models(target)?
        }
        Fragment::Horn if target.len() == 2 => simplify_horn_two_models(target)?,
        Fragment::Horn if target.len() == 3 => match distribute_horn_three_models(target) {
            Ok(w) => w,
            Err(Error::PairwiseIncomparableUnsupported) => return gmin_fallback(target, fragment, spec),
            Err(e) => return Err(e),
        },
        _ => return gmin_fallback(target, fragment, spec),
    };
    Ok(Some(w))
}

fn gmin_fallback(target: &ModelSet, fragment: Fragment, spec: MergeSpec) -> Result<Option<DistributionWitness>> {
    if spec.aggregation == Aggregation::GMin && check_equidistant(target, spec.distance).is_ok() {
        return distribute_gmin_equidistant(target, fragment, spec.distance).map(Some);
    }
    Ok(None)
}
