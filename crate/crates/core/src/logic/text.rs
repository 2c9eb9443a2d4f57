//! Line-oriented text formats for knowledge bases and model sets.
//!
//! KB format: the first significant line is the fragment tag
//! (`full`, `horn`, `krom`, `1cnf`); every following non-empty line that does
//! not start with `#` is a clause of whitespace-separated literals, `-`
//! marking negation.
//!
//! Model-set format: one `{a,b}` or `{}` per line.

use crate::error::{Error, Result};
use crate::fragments::Fragment;
use crate::logic::universe::parse_braced;
use crate::logic::{AtomUniverse, Clause, KnowledgeBase, ModelSet};

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

fn leading_ws(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

pub fn parse_kb(text: &str, universe: &AtomUniverse) -> Result<KnowledgeBase> {
    let mut lines = significant_lines(text);
    let (tag_line, tag) = lines.next().ok_or(Error::Syntax {
        line: 1,
        column: 1,
        message: "missing fragment tag".into(),
    })?;
    let fragment: Fragment = tag.trim().parse().map_err(|_| Error::Syntax {
        line: tag_line,
        column: leading_ws(tag) + 1,
        message: format!("unknown fragment tag {:?}, expected full|horn|krom|1cnf", tag.trim()),
    })?;

    let mut clauses = Vec::new();
    for (line_no, line) in lines {
        let mut positives = 0u32;
        let mut negatives = 0u32;
        let mut column = 1;
        for token in line.split_inclusive(char::is_whitespace) {
            let lit = token.trim();
            let start = column + leading_ws(token);
            column += token.len();
            if lit.is_empty() {
                continue;
            }
            let (negated, name) = match lit.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, lit),
            };
            if name.is_empty() {
                return Err(Error::Syntax {
                    line: line_no,
                    column: start,
                    message: "negation without an atom".into(),
                });
            }
            let idx = universe.index_of(name).ok_or_else(|| Error::UnknownAtom {
                line: line_no,
                column: start + usize::from(negated),
                name: name.to_string(),
            })?;
            if negated {
                negatives |= 1 << idx;
            } else {
                positives |= 1 << idx;
            }
            if positives & negatives != 0 {
                return Err(Error::Syntax {
                    line: line_no,
                    column: start,
                    message: format!("atom {name:?} occurs with both signs"),
                });
            }
        }
        let clause = Clause::new(positives, negatives)?;
        if !clause.fits(fragment) {
            return Err(Error::FragmentViolation {
                clause: line.trim().to_string(),
                fragment,
            });
        }
        clauses.push(clause);
    }
    KnowledgeBase::new(universe, fragment, clauses)
}

/// Renders a KB in the format read by [`parse_kb`].
pub fn format_kb(kb: &KnowledgeBase) -> String {
    let mut out = format!("{}\n", kb.fragment());
    for c in kb.clauses() {
        out.push_str(&c.format(kb.universe()));
        out.push('\n');
    }
    out
}

pub fn parse_model_set(text: &str, universe: &AtomUniverse) -> Result<ModelSet> {
    let mut members = Vec::new();
    for (line_no, line) in significant_lines(text) {
        members.push(parse_braced(universe, line, line_no, 1)?);
    }
    ModelSet::new(universe, members)
}

pub fn format_model_set(ms: &ModelSet) -> String {
    ms.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> AtomUniverse {
        AtomUniverse::parse_list("a,b").unwrap()
    }

    #[test]
    fn horn_clause() {
        let kb = parse_kb("horn\n-a -b\n", &ab()).unwrap();
        assert_eq!(kb.fragment(), Fragment::Horn);
        assert_eq!(kb.clauses(), [Clause::new(0, 0b11).unwrap()]);
    }

    #[test]
    fn one_cnf_rejects_binary_clause() {
        let err = parse_kb("1cnf\na b\n", &ab()).unwrap_err();
        assert_eq!(
            err,
            Error::FragmentViolation {
                clause: "a b".into(),
                fragment: Fragment::OneCnf
            }
        );
    }

    #[test]
    fn full_disjunction() {
        let kb = parse_kb("full\na b\n", &ab()).unwrap();
        assert_eq!(kb.models().format_members(), ["{a}", "{b}", "{a,b}"]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let kb = parse_kb("# header\n\nkrom\n# c\n  a\n\n-b\n", &ab()).unwrap();
        assert_eq!(kb.models().format_members(), ["{a}"]);
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            parse_kb("horn\n-a  z\n", &ab()).unwrap_err(),
            Error::UnknownAtom {
                line: 2,
                column: 5,
                name: "z".into()
            }
        );
        assert_eq!(
            parse_kb("horn\n-a -\n", &ab()).unwrap_err(),
            Error::Syntax {
                line: 2,
                column: 4,
                message: "negation without an atom".into()
            }
        );
        assert!(matches!(parse_kb("cnf\n", &ab()), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_kb("", &ab()), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_kb("full\na -a\n", &ab()),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn kb_text_round_trip() {
        let text = "krom\n-a b\na\n";
        let kb = parse_kb(text, &ab()).unwrap();
        let again = parse_kb(&format_kb(&kb), &ab()).unwrap();
        assert_eq!(kb, again);
    }

    #[test]
    fn model_set_text() {
        let ms = parse_model_set("{a,b}\n{}\n# x\n{ b }\n", &ab()).unwrap();
        assert_eq!(format_model_set(&ms), "{}\n{b}\n{a,b}\n");
        assert!(matches!(
            parse_model_set("{a}\n{c}\n", &ab()),
            Err(Error::UnknownAtom { line: 2, .. })
        ));
    }
}
