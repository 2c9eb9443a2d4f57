//! Two agents, one believing `a ∧ b`, the other `¬a ∨ ¬b`, merged with no
//! constraint. Every aggregation gives the models of `a ∨ b`.

use fragmerge::cli::render_matrix;
use fragmerge::fragments::Fragment;
use fragmerge::logic::{parse_kb, AtomUniverse, KnowledgeBase, Profile};
use fragmerge::merge::{merge, MergeSpec};
use fragmerge::metrics::{Aggregation, Distance};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b")?;
    let profile = Profile::new(vec![parse_kb("horn\na\nb\n", &u)?, parse_kb("horn\n-a -b\n", &u)?])?;
    let mu = KnowledgeBase::tautology(&u, Fragment::Horn);

    for agg in Aggregation::ALL {
        let r = merge(&profile, &mu, MergeSpec::new(Distance::Hamming, agg))?;
        println!("hamming,{agg}: {}", r.models.format_members().join(" "));
        if agg == Aggregation::Sum {
            print!("{}", render_matrix(&r, &profile));
        }
    }
    Ok(())
}
