//! Line-oriented automaton text format.
//!
//! ```text
//! # comment
//! alphabet a c d f
//! states 6
//! initial 0
//! final 1 2 5
//! edge 0 a 1
//! ```
//!
//! The listed alphabet order is the symbol order (leftmost smallest).

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::OrderedAlphabet;
use crate::automaton::{Automaton, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("expected {0}")]
    Syntax(String),
    #[error("undefined state {0}")]
    UndefinedState(String),
    #[error("undefined symbol `{0}`")]
    UndefinedSymbol(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("bad alphabet: {0}")]
    Alphabet(#[from] crate::alphabet::AlphabetError),
}

/// Meaningful lines with their 1-based line numbers and the column (1-based)
/// of each whitespace-separated token.
pub(crate) fn tokenize(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..]
                .find(char::is_whitespace)
                .unwrap_or(rest.len() - start);
            tokens.push((
                line[..offset + start].chars().count() + 1,
                &rest[start..start + len],
            ));
            offset += start + len;
            rest = &rest[start + len..];
        }
        Some((i + 1, tokens))
    })
}

pub(crate) fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let mut lines = tokenize(text);
    let mut header = |name: &'static str| -> Result<(usize, Vec<(usize, &str)>), ParseError> {
        match lines.next() {
            Some((line, tokens)) if tokens[0].1 == name => Ok((line, tokens[1..].to_vec())),
            Some((line, tokens)) => Err(err(line, tokens[0].0, ParseErrorKind::MissingHeader(name))),
            None => Err(err(0, 0, ParseErrorKind::MissingHeader(name))),
        }
    };

    let (line, syms) = header("alphabet")?;
    let alphabet = OrderedAlphabet::new(syms.iter().map(|&(_, s)| s.to_string()))
        .map_err(|e| err(line, syms.first().map_or(1, |t| t.0), e.into()))?;

    let (line, args) = header("states")?;
    let count = match args.as_slice() {
        [(col, n)] => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| err(line, *col, ParseErrorKind::Syntax("a positive state count".into())))?,
        _ => return Err(err(line, 1, ParseErrorKind::Syntax("`states <n>`".into()))),
    };
    let state = |line: usize, (col, tok): (usize, &str)| -> Result<StateId, ParseError> {
        match tok.parse::<StateId>() {
            Ok(q) if q < count => Ok(q),
            _ => Err(err(line, col, ParseErrorKind::UndefinedState(tok.to_string()))),
        }
    };

    let (line, args) = header("initial")?;
    let initial = match args.as_slice() {
        [t] => state(line, *t)?,
        _ => return Err(err(line, 1, ParseErrorKind::Syntax("`initial <id>`".into()))),
    };

    let (line, args) = header("final")?;
    let finals = args
        .iter()
        .map(|&t| state(line, t))
        .collect::<Result<Vec<_>, _>>()?;

    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, tokens) in lines {
        match tokens.as_slice() {
            [(_, "edge"), src, (col, sym), dst] => {
                let src = state(line, *src)?;
                let dst = state(line, *dst)?;
                let a = alphabet
                    .sym(sym)
                    .ok_or_else(|| err(line, *col, ParseErrorKind::UndefinedSymbol(sym.to_string())))?;
                if !seen.insert((src, a, dst)) {
                    return Err(err(
                        line,
                        1,
                        ParseErrorKind::DuplicateEdge(format!("{src} {sym} {dst}")),
                    ));
                }
                edges.push((src, a, dst));
            }
            [(col, _), ..] => {
                return Err(err(
                    line,
                    *col,
                    ParseErrorKind::Syntax("`edge <src> <sym> <dst>`".into()),
                ))
            }
            [] => unreachable!("blank lines are skipped"),
        }
    }
    Ok(Automaton::new(alphabet, count, initial, finals, edges).expect("validated while parsing"))
}

pub fn serialize_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "alphabet {}", a.alphabet().symbols().join(" "));
    let _ = writeln!(out, "states {}", a.state_count());
    let _ = writeln!(out, "initial {}", a.initial());
    let finals: Vec<String> = a.finals().map(|q| q.to_string()).collect();
    if finals.is_empty() {
        out.push_str("final\n");
    } else {
        let _ = writeln!(out, "final {}", finals.join(" "));
    }
    for (u, s, v) in a.edges() {
        let _ = writeln!(out, "edge {u} {} {v}", a.alphabet().name(s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_fig1() {
        let a = fixtures::fig1();
        assert_eq!(a.state_count(), 6);
        assert_eq!(a.edge_count(), 8);
        assert!(a.is_deterministic());
        assert_eq!(a.alphabet().symbols(), ["a", "c", "d", "f"]);
    }

    #[test]
    fn epsilon_automaton() {
        let a = parse_automaton("alphabet a\nstates 1\ninitial 0\nfinal 0\n").unwrap();
        assert_eq!(a.state_count(), 1);
        assert_eq!(a.edge_count(), 0);
        assert!(a.accepts(&[]));
    }

    #[test]
    fn error_cases() {
        let e = parse_automaton("alphabet a\nstates 2\ninitial 0\nfinal 1\nedge 0 b 1\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert_eq!(e.column, 8);
        assert!(matches!(e.kind, ParseErrorKind::UndefinedSymbol(_)));

        let e = parse_automaton("alphabet a\nstates 2\ninitial 0\nfinal 1\nedge 0 a 1\nedge 0 a 1\n")
            .unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::DuplicateEdge(_)));

        let e = parse_automaton("alphabet a\nstates 2\ninitial 0\nfinal 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::UndefinedState(_)));

        let e = parse_automaton("states 2\ninitial 0\nfinal 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader("alphabet"));

        let e = parse_automaton("alphabet a\nstates 1\ninitial 0\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader("final"));

        let e = parse_automaton("alphabet a #\nstates 1\ninitial 0\nfinal\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Alphabet(_)));
    }

    #[test]
    fn comments_and_blank_lines() {
        let a = parse_automaton("# hi\n\nalphabet a\n  # x\nstates 1\ninitial 0\nfinal\n").unwrap();
        assert_eq!(a.finals().count(), 0);
    }

    #[test]
    fn round_trips_figures() {
        for a in [fixtures::fig1(), fixtures::fig3b()] {
            assert_eq!(parse_automaton(&serialize_automaton(&a)).unwrap(), a);
        }
    }
}
