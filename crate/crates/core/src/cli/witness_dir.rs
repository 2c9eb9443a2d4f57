//! On-disk witness layout:
//!
//! ```text
//! <dir>/profile/001.kb, 002.kb, ...
//! <dir>/constraint.kb
//! <dir>/meta.json
//! ```

use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use crate::distribute::{Construction, DistributionWitness, SearchBounds};
use crate::fragments::Fragment;
use crate::logic::{format_kb, parse_kb, parse_model_set, AtomUniverse, Profile};
use crate::merge::MergeSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessMeta {
    pub construction: String,
    pub fragment: Fragment,
    /// Working universe, fresh atoms included.
    pub universe: Vec<String>,
    pub target_universe: Vec<String>,
    pub target: Vec<String>,
    pub specs: Vec<MergeSpec>,
    pub bounds: Option<SearchBounds>,
}

pub fn write_witness(dir: &Path, w: &DistributionWitness, bounds: Option<SearchBounds>) -> anyhow::Result<()> {
    let profile_dir = dir.join("profile");
    fs::create_dir_all(&profile_dir).with_context(|| format!("creating {}", profile_dir.display()))?;
    for (i, kb) in w.profile.iter().enumerate() {
        let path = profile_dir.join(format!("{:03}.kb", i + 1));
        fs::write(&path, format_kb(kb)).with_context(|| format!("writing {}", path.display()))?;
    }
    fs::write(dir.join("constraint.kb"), format_kb(&w.constraint))?;
    let meta = WitnessMeta {
        construction: w.construction.tag(),
        fragment: w.fragment,
        universe: w.working_universe().names().to_vec(),
        target_universe: w.target.universe().names().to_vec(),
        target: w.target.format_members(),
        specs: w.specs.clone(),
        bounds,
    };
    fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(())
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Loads a witness directory. `verified` is recomputed from the files.
pub fn read_witness(dir: &Path) -> anyhow::Result<(DistributionWitness, WitnessMeta)> {
    let meta: WitnessMeta = serde_json::from_str(&read(&dir.join("meta.json"))?).context("parsing meta.json")?;
    let construction = Construction::from_tag(&meta.construction)
        .with_context(|| format!("unknown construction tag {:?}", meta.construction))?;
    let universe = AtomUniverse::with_reserved(meta.universe.iter().cloned())?;
    let target_universe = AtomUniverse::new(meta.target_universe.iter().cloned())?;
    if !target_universe.is_prefix_of(&universe) {
        bail!("target universe is not a prefix of the working universe");
    }
    let target = parse_model_set(&meta.target.join("\n"), &target_universe)?;

    let mut files: Vec<_> = fs::read_dir(dir.join("profile"))
        .with_context(|| format!("reading {}", dir.join("profile").display()))?
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "kb"))
        .collect();
    files.sort();
    let mut bases = Vec::with_capacity(files.len());
    for path in &files {
        let kb = parse_kb(&read(path)?, &universe).with_context(|| format!("in {}", path.display()))?;
        if kb.fragment() != meta.fragment {
            bail!(
                "{} is tagged {}, expected {}",
                path.display(),
                kb.fragment(),
                meta.fragment
            );
        }
        bases.push(kb);
    }
    let constraint = parse_kb(&read(&dir.join("constraint.kb"))?, &universe).context("in constraint.kb")?;
    if constraint.fragment() != meta.fragment {
        bail!(
            "constraint is tagged {}, expected {}",
            constraint.fragment(),
            meta.fragment
        );
    }
    let mut witness = DistributionWitness {
        target,
        fragment: meta.fragment,
        profile: Profile::new(bases)?,
        constraint,
        construction,
        specs: meta.specs.clone(),
        verified: false,
    };
    let mut ok = !witness.specs.is_empty();
    for &spec in &meta.specs {
        ok &= witness.check(spec)?;
    }
    witness.verified = ok;
    Ok((witness, meta))
}
