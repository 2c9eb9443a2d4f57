//! Horn witnesses for two- and three-model targets.

use fragmerge::distribute::{distribute_horn_three_models, simplify_horn_two_models};
use fragmerge::logic::{parse_model_set, AtomUniverse};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b,c")?;

    let two = parse_model_set("{a}\n{b,c}\n", &u)?;
    let w = simplify_horn_two_models(&two)?;
    println!(
        "{}: K' = {}",
        w.construction.tag(),
        w.profile.bases()[0].models().format_members().join(" ")
    );
    println!("  mu = {}", w.constraint.models().format_members().join(" "));

    for text in ["{a}\n{b}\n{a,b,c}\n", "{a}\n{a,b}\n{c}\n"] {
        let t = parse_model_set(text, &u)?;
        match distribute_horn_three_models(&t) {
            Ok(w) => println!(
                "{}: {} bases over {}, specs {:?}, verified {}",
                w.construction.tag(),
                w.profile.len(),
                w.working_universe().names().join(","),
                w.specs.iter().map(ToString::to_string).collect::<Vec<_>>(),
                w.verified
            ),
            Err(e) => println!("{}: {e}", t.format_members().join(" ")),
        }
    }
    Ok(())
}
