//! Text rendering of command payloads. Every payload renders from its own
//! fields alone, so a payload read back from JSON prints identically.

use serde::{Deserialize, Serialize};

use crate::distribute::EvidenceReport;
use crate::logic::Profile;
use crate::merge::MergeResult;

/// Distance table: one row per constraint model, one column per profile
/// member, then one column per aggregation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixView {
    pub labels: Vec<String>,
    pub aggregations: Vec<String>,
    pub rows: Vec<MatrixRowView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRowView {
    pub interpretation: String,
    pub distances: Vec<u32>,
    pub aggregates: Vec<String>,
    /// Per aggregation: whether the row is minimal.
    pub minimal: Vec<bool>,
}

impl MatrixView {
    /// Combines merge results over the same profile and constraint, one per
    /// aggregation, into a single table.
    ///
    /// Panics if a result carries no matrix or the results disagree on rows.
    pub fn from_results(results: &[MergeResult], labels: Vec<String>) -> Self {
        let matrices: Vec<_> = results
            .iter()
            .map(|r| r.matrix.as_ref().expect("merge result with matrix"))
            .collect();
        let universe = results[0].models.universe();
        let first = matrices[0];
        let rows = first
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                for m in &matrices[1..] {
                    assert_eq!(m.rows[i].interpretation, row.interpretation);
                }
                MatrixRowView {
                    interpretation: universe.format(row.interpretation),
                    distances: row.vector.entries().to_vec(),
                    aggregates: matrices.iter().map(|m| m.rows[i].aggregate.to_string()).collect(),
                    minimal: matrices.iter().map(|m| m.rows[i].minimal).collect(),
                }
            })
            .collect();
        Self {
            labels,
            aggregations: matrices.iter().map(|m| m.spec.aggregation.to_string()).collect(),
            rows,
        }
    }

    pub fn without_aggregates(mut self) -> Self {
        self.aggregations.clear();
        for row in &mut self.rows {
            row.aggregates.clear();
            row.minimal.clear();
        }
        self
    }

    pub fn render(&self) -> String {
        let bar = !self.aggregations.is_empty();
        let mut table: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        if bar {
            header.push("|".into());
        }
        header.extend(self.aggregations.iter().cloned());
        table.push(header);
        for row in &self.rows {
            let mut line = vec![row.interpretation.clone()];
            line.extend(row.distances.iter().map(u32::to_string));
            if bar {
                line.push("|".into());
            }
            line.extend(
                row.aggregates
                    .iter()
                    .zip(&row.minimal)
                    .map(|(a, &m)| if m { format!("{a}*") } else { a.clone() }),
            );
            table.push(line);
        }
        let cols = table[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| table.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &table {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push(' ');
                }
                line.push_str(cell);
                line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Default column labels `K1, K2, …`.
pub fn default_labels(len: usize) -> Vec<String> {
    (1..=len).map(|i| format!("K{i}")).collect()
}

/// Renders a merge result's matrix with default labels. Rows are the
/// constraint's models in ascending order; `*` marks minimal rows.
pub fn render_matrix(result: &MergeResult, profile: &Profile) -> String {
    MatrixView::from_results(std::slice::from_ref(result), default_labels(profile.len())).render()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessView {
    pub construction: String,
    pub fragment: String,
    pub universe: Vec<String>,
    pub fresh_atoms: usize,
    /// Profile members in KB text format.
    pub profile: Vec<String>,
    pub constraint: String,
    /// Requested spec and whether the merge reproduces the target under it.
    pub spec: String,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPairView {
    pub w1: String,
    pub w2: String,
    pub case: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecCheck {
    pub spec: String,
    pub equivalent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Models {
        models: Vec<String>,
    },
    Expressible {
        fragment: String,
        expressible: bool,
    },
    Kb {
        text: String,
    },
    Matrix {
        matrix: MatrixView,
    },
    Merge {
        models: Vec<String>,
        matrix: Option<MatrixView>,
    },
    Witness {
        witness: WitnessView,
    },
    Undistributable {
        max_profile_len: usize,
        max_fresh_atoms: usize,
        candidates: u64,
        complete: bool,
    },
    Verify {
        construction: String,
        checks: Vec<SpecCheck>,
    },
    CriticalPairs {
        pairs: Vec<CriticalPairView>,
    },
    CapCup {
        seed: Option<u64>,
        cases: u64,
        failures: Vec<String>,
    },
    Report {
        report: EvidenceReport,
    },
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("{s}\n")).collect()
}

impl Payload {
    pub fn render(&self) -> String {
        match self {
            Payload::Models { models } => lines(models),
            Payload::Expressible { expressible, .. } => if *expressible { "yes\n" } else { "no\n" }.to_string(),
            Payload::Kb { text } => text.clone(),
            Payload::Matrix { matrix } => matrix.render(),
            Payload::Merge { models, matrix } => {
                let mut out = lines(models);
                if let Some(m) = matrix {
                    out.push('\n');
                    out.push_str(&m.render());
                }
                out
            }
            Payload::Witness { witness: w } => {
                let mut out = String::new();
                for (i, kb) in w.profile.iter().enumerate() {
                    out.push_str(&format!("# profile {}\n{kb}", i + 1));
                }
                out.push_str(&format!("# constraint\n{}", w.constraint));
                out.push_str(&format!("# universe: {}\n", w.universe.join(",")));
                out.push_str(&format!("# construction: {}\n", w.construction));
                out.push_str(&format!(
                    "# verified: {} {}\n",
                    w.spec,
                    if w.verified { "yes" } else { "no" }
                ));
                out
            }
            Payload::Undistributable {
                max_profile_len,
                max_fresh_atoms,
                candidates,
                complete,
            } => {
                let mut out = format!("UNDISTRIBUTABLE within bounds len={max_profile_len} fresh={max_fresh_atoms}\n");
                out.push_str(&format!("# candidates examined: {candidates}\n"));
                if !complete {
                    out.push_str(
                        "# fresh-atom search fixes the constraint; a witness with another constraint is not excluded\n",
                    );
                }
                out
            }
            Payload::Verify { construction, checks } => {
                let mut out = format!("# construction: {construction}\n");
                for c in checks {
                    out.push_str(&format!(
                        "{}: {}\n",
                        c.spec,
                        if c.equivalent { "equivalent" } else { "NOT equivalent" }
                    ));
                }
                out
            }
            Payload::CriticalPairs { pairs } => {
                if pairs.is_empty() {
                    return "none\n".into();
                }
                pairs
                    .iter()
                    .map(|p| format!("{} {} case {}\n", p.w1, p.w2, p.case))
                    .collect()
            }
            Payload::CapCup { seed, cases, failures } => {
                let mut out = String::new();
                for f in failures {
                    out.push_str(&format!("counterexample: {f}\n"));
                }
                out.push_str(&format!(
                    "cap-cup identity held in {} of {} cases",
                    cases - failures.len() as u64,
                    cases
                ));
                if let Some(s) = seed {
                    out.push_str(&format!(" (seed {s})"));
                }
                out.push('\n');
                out
            }
            Payload::Report { report } => report.to_markdown(),
        }
    }
}
