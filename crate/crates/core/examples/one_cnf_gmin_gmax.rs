//! `{a}, {b}` is not 1CNF-expressible, yet two single-model 1CNF bases
//! produce it under leximin, and two others under leximax.

use fragmerge::distribute::{distribute_1cnf_gmax_two_models, distribute_gmin_equidistant, DistributionWitness};
use fragmerge::fragments::Fragment;
use fragmerge::logic::{format_kb, parse_model_set, AtomUniverse};
use fragmerge::metrics::Distance;

fn show(w: &DistributionWitness) {
    println!("# {} (verified: {})", w.construction.tag(), w.verified);
    for kb in w.profile.iter() {
        println!("  base  {}", kb.models().format_members().join(" "));
    }
    print!("{}", format_kb(&w.constraint));
}

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b")?;
    let target = parse_model_set("{a}\n{b}\n", &u)?;
    show(&distribute_gmin_equidistant(
        &target,
        Fragment::OneCnf,
        Distance::Hamming,
    )?);
    show(&distribute_1cnf_gmax_two_models(&target)?);
    Ok(())
}
