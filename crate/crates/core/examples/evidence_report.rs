//! Regenerates the summary table as desk-scale evidence.
//!
//! cargo run --release --example evidence_report -- 3

use fragmerge::distribute::{evidence_report, ReportConfig};

fn main() -> anyhow::Result<()> {
    let max_atoms = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let report = evidence_report(ReportConfig::new(max_atoms))?;
    print!("{}", report.to_markdown());
    Ok(())
}
