//! Critical pairs witness non-1CNF-expressibility; the cap-cup identity
//! is what rules out Hamming-sum distribution for such targets.

use fragmerge::distribute::{cap_cup_sweep, find_critical_pairs};
use fragmerge::logic::{parse_model_set, AtomUniverse};

fn main() -> anyhow::Result<()> {
    let u = AtomUniverse::parse_list("a,b,c")?;
    let k = parse_model_set("{}\n{a}\n{b}\n{c}\n{a,c}\n{b,c}\n{a,b,c}\n", &u)?;
    for p in find_critical_pairs(&k) {
        println!("{} {} case {}", u.format(p.w1), u.format(p.w2), p.case);
    }

    let sweep = cap_cup_sweep(0, 200, 50, 6, 4)?;
    println!("cap-cup: {} cases, {} failures", sweep.cases, sweep.failures.len());
    Ok(())
}
