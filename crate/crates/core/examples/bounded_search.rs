//! Exhaustive search: a Horn witness for `a ∨ b`, and an exhaustion
//! certificate for the same target in 1CNF.

use fragmerge::distribute::{search, DistributionTask, Mode, SearchBounds, SearchOutcome};
use fragmerge::fragments::Fragment;
use fragmerge::logic::{parse_model_set, AtomUniverse};
use fragmerge::merge::MergeSpec;
use fragmerge::metrics::{Aggregation, Distance};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b")?;
    let target = parse_model_set("{a}\n{b}\n{a,b}\n", &u)?;
    let spec = MergeSpec::new(Distance::Hamming, Aggregation::Sum);
    let bounds = SearchBounds {
        max_profile_len: 3,
        max_fresh_atoms: 0,
    };

    for f in [Fragment::Horn, Fragment::OneCnf] {
        let task = DistributionTask::new(target.clone(), f, spec, Mode::Distribute, bounds)?;
        match search(&task)? {
            SearchOutcome::Found(w) => {
                let bases: Vec<String> = w
                    .profile
                    .iter()
                    .map(|k| k.models().format_members().join(" "))
                    .collect();
                println!("{f}: witness [{}]", bases.join(" | "));
            }
            SearchOutcome::Exhausted(c) => println!(
                "{f}: none within len {} ({} closed sets, {} profiles, complete {})",
                c.max_profile_len, c.closed_sets[0], c.candidates, c.complete
            ),
        }
    }
    Ok(())
}
