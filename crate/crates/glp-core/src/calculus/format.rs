//! Line-oriented proof file format.
//!
//! ```text
//! 1. <1>T -> <0>T ; MONO(0,1)
//! 2. T ; TAUT
//! GOAL <1>T -> <0>T
//! ```
//!
//! One numbered line per proof step, `formula ; justification`, then a final
//! `GOAL` line. Justifications: `K(a)`, `LOEB(a)`, `MONO(a,b)`,
//! `NEGINTRO(a,b)`, `TAUT`, `MP(i,j)`, `NEC(i,a)` with `a`, `b` in the
//! ordinal grammar and `i`, `j` 1-based line numbers. `MP(i,j)` reads: line
//! `i` proves `A`, line `j` proves `A -> B`. Printing and parsing are exact
//! inverses on canonical files.

use super::{Justification, Proof, ProofLine};
use crate::ordinal::parse_ord;
use crate::syntax::{parse_formula, print_formula, ModalIndex};
use crate::text::{Cursor, ParseError};
use std::fmt::Write;

pub(crate) fn print_justification(j: &Justification) -> String {
    match j {
        Justification::AxiomK(a) => format!("K({a})"),
        Justification::AxiomLoeb(a) => format!("LOEB({a})"),
        Justification::AxiomMono(a, b) => format!("MONO({a},{b})"),
        Justification::AxiomNegIntro(a, b) => format!("NEGINTRO({a},{b})"),
        Justification::PropTaut => "TAUT".to_string(),
        Justification::ModusPonens(i, j) => format!("MP({i},{j})"),
        Justification::Necessitation(i, a) => format!("NEC({i},{a})"),
    }
}

pub fn print_proof(p: &Proof) -> String {
    let mut out = String::new();
    for (idx, line) in p.lines.iter().enumerate() {
        writeln!(
            out,
            "{}. {} ; {}",
            idx + 1,
            print_formula(&line.formula),
            print_justification(&line.justification)
        )
        .unwrap();
    }
    writeln!(out, "GOAL {}", print_formula(&p.goal)).unwrap();
    out
}

pub fn parse_proof(text: &str) -> Result<Proof, ParseError> {
    let mut lines = Vec::new();
    let mut goal = None;
    let mut offset = 0;
    for raw in text.lines() {
        let line_start = offset;
        offset += raw.len() + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if goal.is_some() {
            return Err(ParseError::new(line_start, "content after the GOAL line"));
        }
        if let Some(rest) = trimmed.strip_prefix("GOAL") {
            goal = Some(parse_formula(rest).map_err(|e| ParseError::new(line_start, e.msg))?);
            continue;
        }
        let Some(dot) = trimmed.find('.') else {
            return Err(ParseError::new(
                line_start,
                "expected 'n. formula ; justification'",
            ));
        };
        let number: usize = trimmed[..dot]
            .trim()
            .parse()
            .map_err(|_| ParseError::new(line_start, "bad line number"))?;
        if number != lines.len() + 1 {
            return Err(ParseError::new(
                line_start,
                format!("line numbered {number}, expected {}", lines.len() + 1),
            ));
        }
        let body = &trimmed[dot + 1..];
        // formulas never contain ';', so the first one separates the justification
        let Some(semi) = body.find(';') else {
            return Err(ParseError::new(
                line_start,
                "missing ';' before justification",
            ));
        };
        let formula =
            parse_formula(&body[..semi]).map_err(|e| ParseError::new(line_start, e.msg))?;
        let justification = parse_justification(body[semi + 1..].trim())
            .map_err(|e| ParseError::new(line_start, e.msg))?;
        lines.push(ProofLine {
            formula,
            justification,
        });
    }
    let goal = goal.ok_or_else(|| ParseError::new(offset, "missing GOAL line"))?;
    Ok(Proof { lines, goal })
}

fn parse_justification(text: &str) -> Result<Justification, ParseError> {
    let mut cur = Cursor::new(text);
    let keyword_end = text.find('(').unwrap_or(text.len());
    let keyword = text[..keyword_end].trim();
    let j = match keyword {
        "TAUT" => Justification::PropTaut,
        "K" | "LOEB" => {
            cur.pos = keyword_end;
            cur.expect(b'(', "'('")?;
            let a = ModalIndex(parse_ord(&mut cur)?);
            cur.expect(b')', "')'")?;
            if keyword == "K" {
                Justification::AxiomK(a)
            } else {
                Justification::AxiomLoeb(a)
            }
        }
        "MONO" | "NEGINTRO" => {
            cur.pos = keyword_end;
            cur.expect(b'(', "'('")?;
            let a = ModalIndex(parse_ord(&mut cur)?);
            cur.expect(b',', "','")?;
            let b = ModalIndex(parse_ord(&mut cur)?);
            cur.expect(b')', "')'")?;
            if keyword == "MONO" {
                Justification::AxiomMono(a, b)
            } else {
                Justification::AxiomNegIntro(a, b)
            }
        }
        "MP" => {
            cur.pos = keyword_end;
            cur.expect(b'(', "'('")?;
            let i = nat_usize(&mut cur)?;
            cur.expect(b',', "','")?;
            let j = nat_usize(&mut cur)?;
            cur.expect(b')', "')'")?;
            Justification::ModusPonens(i, j)
        }
        "NEC" => {
            cur.pos = keyword_end;
            cur.expect(b'(', "'('")?;
            let i = nat_usize(&mut cur)?;
            cur.expect(b',', "','")?;
            let a = ModalIndex(parse_ord(&mut cur)?);
            cur.expect(b')', "')'")?;
            Justification::Necessitation(i, a)
        }
        other => {
            return Err(ParseError::new(
                0,
                format!("unknown justification '{other}'"),
            ));
        }
    };
    if !matches!(j, Justification::PropTaut) && !cur.at_end() {
        return Err(cur.error("trailing input after justification"));
    }
    Ok(j)
}

fn nat_usize(cur: &mut Cursor) -> Result<usize, ParseError> {
    let n = cur.nat()?;
    usize::try_from(&n).map_err(|_| ParseError::new(0, "line number out of range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;

    #[test]
    fn round_trip() {
        let text = "\
1. <1>T -> <0>T ; MONO(0,1)
2. T ; TAUT
3. ([1]T -> [0]T) -> T -> [1]T -> [0]T ; TAUT
4. [w+1]T ; NEC(2,w+1)
GOAL [w+1]T
";
        let p = parse_proof(text).unwrap();
        assert_eq!(print_proof(&p), text);
        assert_eq!(parse_proof(&print_proof(&p)).unwrap(), p);
    }

    #[test]
    fn checked_example_from_text() {
        let text = "\
1. T ; TAUT
2. [0]T ; NEC(1,0)
GOAL [0]T
";
        let p = parse_proof(text).unwrap();
        assert_eq!(check_proof(&p), Ok(()));
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_proof("1. T ; TAUT\n").is_err()); // no GOAL
        assert!(parse_proof("2. T ; TAUT\nGOAL T\n").is_err()); // bad numbering
        assert!(parse_proof("1. T  TAUT\nGOAL T\n").is_err()); // missing ';'
        assert!(parse_proof("1. T ; ZAP\nGOAL T\n").is_err()); // unknown keyword
    }
}
