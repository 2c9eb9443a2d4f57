//! Under the drastic distance every target is distributable: one
//! single-model base per model, constrained by the closure.

use fragmerge::distribute::distribute_drastic;
use fragmerge::fragments::Fragment;
use fragmerge::logic::{parse_model_set, AtomUniverse};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b,c")?;
    let target = parse_model_set("{a,b}\n{b,c}\n{a,c}\n", &u)?;
    for f in [Fragment::Horn, Fragment::Krom, Fragment::OneCnf] {
        let w = distribute_drastic(&target, f)?;
        println!(
            "{f}: {} bases, constraint has {} models, verified {}",
            w.profile.len(),
            w.constraint.models().len(),
            w.verified
        );
    }
    Ok(())
}
