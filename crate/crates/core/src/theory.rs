//! Default theories: the facts `W` and the ordered default rules `D`, with a
//! plain-text format.
//!
//! ```text
//! # comment to end of line
//! W: a. b | c.
//! D:
//!   a : ~b / d.
//!   c : e / e.
//!   : b / ~b.          # omitted prerequisite parses as true
//!   a : / c.           # empty justification list is allowed
//! ```
//!
//! `W:` and `D:` must appear at the start of a line; each section holds
//! `.`-terminated entries. A rule is `prereq? ":" justifs? "/" conseq` with
//! justifications separated by commas. An atom named `W` or `D` opening a
//! rule must be parenthesized to avoid reading it as a section header.

use crate::formula::{parse_formula, Formula, ParseError};
use std::fmt;
use thiserror::Error;

/// A default rule `prereq : justifs / conseq`. `id` equals the rule's
/// position in its theory's default list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Default {
    pub id: usize,
    pub prereq: Formula,
    pub justifs: Vec<Formula>,
    pub conseq: Formula,
}

impl fmt::Display for Default {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prereq != Formula::True {
            write!(f, "{} ", self.prereq)?;
        }
        write!(f, ":")?;
        for (i, j) in self.justifs.iter().enumerate() {
            write!(f, "{}{j}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, " / {}", self.conseq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DefaultTheory {
    pub facts: Vec<Formula>,
    pub defaults: Vec<Default>,
}

impl DefaultTheory {
    pub fn new(facts: Vec<Formula>, rules: Vec<(Formula, Vec<Formula>, Formula)>) -> DefaultTheory {
        DefaultTheory {
            facts,
            defaults: rules
                .into_iter()
                .enumerate()
                .map(|(id, (prereq, justifs, conseq))| Default {
                    id,
                    prereq,
                    justifs,
                    conseq,
                })
                .collect(),
        }
    }
}

impl fmt::Display for DefaultTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W:")?;
        for fact in &self.facts {
            writeln!(f, "  {fact}.")?;
        }
        writeln!(f, "D:")?;
        for d in &self.defaults {
            writeln!(f, "  {d}.")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("{0}")]
    Syntax(ParseError),
    #[error("duplicate section '{name}:' at line {line}")]
    DuplicateSection { name: char, line: u32 },
    #[error("text before the first section at line {line}")]
    TextBeforeSection { line: u32 },
}

/// Replaces `#`-to-end-of-line comments with spaces, preserving offsets.
fn blank_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_comment = false;
    for c in text.chars() {
        match c {
            '#' => {
                in_comment = true;
                out.push(' ');
            }
            '\n' => {
                in_comment = false;
                out.push('\n');
            }
            _ => out.push(if in_comment { ' ' } else { c }),
        }
    }
    out
}

fn syntax_error(text: &str, offset: usize, message: impl Into<String>) -> TheoryError {
    let (line, col) = crate::formula::line_col(text, offset);
    TheoryError::Syntax(ParseError {
        line,
        col,
        message: message.into(),
    })
}

/// Parses a formula slice of the original text, rebasing error positions.
fn parse_slice(text: &str, start: usize, end: usize, what: &str) -> Result<Formula, TheoryError> {
    let slice = &text[start..end];
    if slice.trim().is_empty() {
        return Err(syntax_error(text, start, format!("empty {what}")));
    }
    parse_formula(slice).map_err(|e| {
        // rebase the slice-relative position onto the full text
        let mut line_start = start;
        for _ in 1..e.line {
            line_start += slice[line_start - start..]
                .find('\n')
                .map(|i| i + 1)
                .unwrap_or(slice.len());
        }
        let offset = line_start + (e.col as usize - 1);
        let (line, col) = crate::formula::line_col(text, offset.min(text.len()));
        TheoryError::Syntax(ParseError {
            line,
            col,
            message: e.message,
        })
    })
}

type SectionRange = Option<(usize, usize)>;

/// Byte ranges of the `W` and `D` section bodies.
fn section_ranges(clean: &str) -> Result<(SectionRange, SectionRange), TheoryError> {
    let mut w: Option<(usize, usize)> = None;
    let mut d: Option<(usize, usize)> = None;
    let mut current: Option<(char, usize)> = None;
    let mut pos = 0;
    for line in clean.split_inclusive('\n') {
        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        let header = match trimmed.as_bytes() {
            [b'W', b':', ..] => Some('W'),
            [b'D', b':', ..] => Some('D'),
            _ => None,
        };
        if let Some(name) = header {
            let body_start = pos + indent + 2;
            let (line_no, _) = crate::formula::line_col(clean, pos + indent);
            if let Some((prev, start)) = current.take() {
                let slot = if prev == 'W' { &mut w } else { &mut d };
                *slot = Some((start, pos));
            }
            let slot = if name == 'W' { &w } else { &d };
            if slot.is_some() {
                return Err(TheoryError::DuplicateSection { name, line: line_no });
            }
            current = Some((name, body_start));
        } else if current.is_none() && !trimmed.trim().is_empty() {
            let (line_no, _) = crate::formula::line_col(clean, pos + indent);
            return Err(TheoryError::TextBeforeSection { line: line_no });
        }
        pos += line.len();
    }
    if let Some((prev, start)) = current {
        let slot = if prev == 'W' { &mut w } else { &mut d };
        *slot = Some((start, clean.len()));
    }
    Ok((w, d))
}

/// Splits a section body into `.`-terminated entries, yielding byte ranges.
fn entries(
    clean: &str,
    range: (usize, usize),
) -> Result<Vec<(usize, usize)>, TheoryError> {
    let (start, end) = range;
    let mut out = Vec::new();
    let mut entry_start = start;
    for (i, b) in clean[start..end].bytes().enumerate() {
        if b == b'.' {
            out.push((entry_start, start + i));
            entry_start = start + i + 1;
        }
    }
    if !clean[entry_start..end].trim().is_empty() {
        return Err(syntax_error(clean, entry_start, "entry not terminated by '.'"));
    }
    Ok(out)
}

/// Parses the theory format described in the module docs.
pub fn parse_theory(text: &str) -> Result<DefaultTheory, TheoryError> {
    let clean = blank_comments(text);
    let (w_range, d_range) = section_ranges(&clean)?;

    let mut facts = Vec::new();
    if let Some(range) = w_range {
        for (s, e) in entries(&clean, range)? {
            facts.push(parse_slice(&clean, s, e, "fact")?);
        }
    }

    let mut rules = Vec::new();
    if let Some(range) = d_range {
        for (s, e) in entries(&clean, range)? {
            let body = &clean[s..e];
            let colon = body
                .find(':')
                .ok_or_else(|| syntax_error(&clean, s, "default rule missing ':'"))?;
            let slash = body[colon..]
                .find('/')
                .map(|i| colon + i)
                .ok_or_else(|| syntax_error(&clean, s, "default rule missing '/'"))?;

            let prereq = if body[..colon].trim().is_empty() {
                Formula::True
            } else {
                parse_slice(&clean, s, s + colon, "prerequisite")?
            };

            let justif_text = &body[colon + 1..slash];
            let mut justifs = Vec::new();
            if !justif_text.trim().is_empty() {
                let mut piece_start = colon + 1;
                for (i, b) in justif_text.bytes().enumerate() {
                    if b == b',' {
                        justifs.push(parse_slice(&clean, s + piece_start, s + colon + 1 + i, "justification")?);
                        piece_start = colon + 1 + i + 1;
                    }
                }
                justifs.push(parse_slice(&clean, s + piece_start, s + slash, "justification")?);
            }

            let conseq = parse_slice(&clean, s + slash + 1, e, "consequent")?;
            rules.push((prereq, justifs, conseq));
        }
    }

    Ok(DefaultTheory::new(facts, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn example_one_theory() {
        let t = parse_theory("W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.").unwrap();
        assert_eq!(t.facts, vec![f("a"), f("b | c")]);
        assert_eq!(t.defaults.len(), 3);
        assert_eq!(t.defaults[0].prereq, f("a"));
        assert_eq!(t.defaults[0].justifs, vec![f("~b")]);
        assert_eq!(t.defaults[0].conseq, f("d"));
        assert_eq!(t.defaults[2].id, 2);
    }

    #[test]
    fn omitted_prerequisite_is_true() {
        let t = parse_theory("W:\nD: : b / ~b.").unwrap();
        assert!(t.facts.is_empty());
        assert_eq!(t.defaults[0].prereq, Formula::True);
        assert_eq!(t.defaults[0].justifs, vec![f("b")]);
        assert_eq!(t.defaults[0].conseq, f("~b"));
    }

    #[test]
    fn empty_defaults_section() {
        let t = parse_theory("W: a.\nD:").unwrap();
        assert_eq!(t.facts, vec![f("a")]);
        assert!(t.defaults.is_empty());
    }

    #[test]
    fn empty_justification_list() {
        let t = parse_theory("W:\nD: a : / c.").unwrap();
        assert!(t.defaults[0].justifs.is_empty());
    }

    #[test]
    fn multiple_justifications() {
        let t = parse_theory("W:\nD: adult : ~student, ~priest / married.").unwrap();
        assert_eq!(t.defaults[0].justifs, vec![f("~student"), f("~priest")]);
    }

    #[test]
    fn comments_and_layout() {
        let t = parse_theory("# header\nW: a.   # fact\n  b | c.\nD:\n  a : ~b / d.\n").unwrap();
        assert_eq!(t.facts.len(), 2);
        assert_eq!(t.defaults.len(), 1);
    }

    #[test]
    fn duplicate_section_rejected() {
        let e = parse_theory("W: a.\nW: b.\nD:").unwrap_err();
        assert_eq!(e, TheoryError::DuplicateSection { name: 'W', line: 2 });
    }

    #[test]
    fn error_positions_are_absolute() {
        let e = parse_theory("W: a.\nD: a : ~ / c.").unwrap_err();
        match e {
            TheoryError::Syntax(pe) => assert_eq!(pe.line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_theory("W: a\nD:").is_err()); // missing '.'
        assert!(parse_theory("a.\nW:\nD:").is_err()); // text before sections
        assert!(parse_theory("W: a.\nD: a ~b / d.").is_err()); // missing ':'
        assert!(parse_theory("W: a.\nD: a : b c.").is_err()); // missing '/'
    }

    #[test]
    fn roundtrip_through_display() {
        let srcs = [
            "W: a. b|c.\nD: a : ~b / d. c : e / e. d : f / g.",
            "W:\nD: : b / ~b.",
            "W: a.\nD: a : / c.",
            "W: ~x | y.\nD: x & y : ~z, w -> v / u & ~z.",
        ];
        for src in srcs {
            let t = parse_theory(src).unwrap();
            let printed = t.to_string();
            assert_eq!(parse_theory(&printed).unwrap(), t, "roundtrip of {src}");
        }
    }
}
