//! Closure, expressibility and synthesis of `{a}, {b}, {a,b}` in each fragment.

use fragmerge::fragments::{closure, is_expressible, synthesize_kb, Fragment};
use fragmerge::logic::{format_kb, parse_model_set, AtomUniverse};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b")?;
    let target = parse_model_set("{a}\n{b}\n{a,b}\n", &u)?;
    for f in [Fragment::Horn, Fragment::Krom, Fragment::OneCnf, Fragment::Full] {
        let cl = closure(&target, f);
        println!(
            "{f}: expressible={} closure={}",
            is_expressible(&target, f),
            cl.format_members().join(" ")
        );
        print!("{}", format_kb(&synthesize_kb(&cl, f)?));
    }
    Ok(())
}
