//! Single-base Krom simplification with fresh atoms.

use fragmerge::distribute::simplify_krom;
use fragmerge::logic::{parse_model_set, AtomUniverse};
use fragmerge::merge::{merge, MergeSpec};
use fragmerge::metrics::{Aggregation, Distance};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b,c,d,e")?;
    let target = parse_model_set("{a,b}\n{b,c,e}\n{a,c,d}\n", &u)?;
    let w = simplify_krom(&target)?;
    let wu = w.working_universe();
    println!("working universe: {}", wu.names().join(","));
    println!(
        "K' models: {}",
        w.profile.bases()[0].models().format_members().join(" ")
    );

    let spec = MergeSpec::new(Distance::Hamming, Aggregation::Sum);
    let r = merge(&w.profile, &w.constraint, spec)?;
    for row in &r.matrix.expect("merge keeps its matrix").rows {
        let mark = if row.minimal { "*" } else { "" };
        println!("{:<10} {}{mark}", wu.format(row.interpretation), row.aggregate);
    }
    println!(
        "restricted result: {:?}",
        w.restricted_result(spec)?.map(|m| m.format_members())
    );
    Ok(())
}
