//! Reader and writer for the HOA subset used by this crate.
//!
//! Letters are declared positionally on the `AP:` line and edge labels name a
//! single letter, either by index (`[1]`) or through an `Alias:` (`[@b]`).
//! Acceptance must be `1 Fin(0)` on edges; an edge carrying `{0}` is an
//! α-transition.
//!
//! ```text
//! HOA: v1
//! States: 1
//! Start: 0
//! AP: 2 "a" "b"
//! acc-name: co-Buchi
//! Acceptance: 1 Fin(0)
//! --BODY--
//! State: 0
//! [0] 0
//! [1] 0 {0}
//! --END--
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::{Alphabet, Automaton, Mark, Transition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unsupported HOA at line {line}: {msg}")]
    Semantic { line: usize, msg: String },
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> HoaError {
    HoaError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn semantic(line: usize, msg: impl Into<String>) -> HoaError {
    HoaError::Semantic {
        line,
        msg: msg.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(usize),
    Str(String),
    Ident(String),
    Alias(String),
    Punct(char),
}

/// Splits one line into tokens, remembering 1-based columns.
fn lex(line_no: usize, s: &str) -> Result<Vec<(usize, Tok)>, HoaError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| syntax(line_no, col, "integer too large"))?;
            out.push((col, Tok::Int(n)));
        } else if c == '"' {
            i += 1;
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(syntax(line_no, col, "unterminated string")),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        let esc = chars
                            .get(i + 1)
                            .ok_or_else(|| syntax(line_no, i + 1, "dangling escape"))?;
                        text.push(*esc);
                        i += 2;
                    }
                    Some(&ch) => {
                        text.push(ch);
                        i += 1;
                    }
                }
            }
            out.push((col, Tok::Str(text)));
        } else if c == '@' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                i += 1;
            }
            if i == start {
                return Err(syntax(line_no, col, "empty alias name"));
            }
            out.push((col, Tok::Alias(chars[start..i].iter().collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else if "[]{}()!&|".contains(c) {
            out.push((col, Tok::Punct(c)));
            i += 1;
        } else {
            return Err(syntax(line_no, col, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn shifted(e: HoaError, by: usize) -> HoaError {
    match e {
        HoaError::Syntax { line, col, msg } => syntax(line, col + by, msg),
        other => other,
    }
}

fn expect_int(line: usize, toks: &[(usize, Tok)], idx: usize, what: &str) -> Result<usize, HoaError> {
    match toks.get(idx) {
        Some((_, Tok::Int(n))) => Ok(*n),
        Some((col, t)) => Err(syntax(line, *col, format!("expected {what}, found {t:?}"))),
        None => Err(syntax(line, 0, format!("expected {what}"))),
    }
}

/// Parses the HOA subset into an automaton and checks totality.
pub fn parse_hoa(text: &str) -> Result<Automaton, HoaError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let mut saw_version = false;
    let mut num_states: Option<usize> = None;
    let mut start: Option<(usize, usize)> = None;
    let mut letters: Option<Vec<String>> = None;
    let mut aliases: BTreeMap<String, usize> = BTreeMap::new();
    let mut acceptance_ok = false;
    let mut name: Option<String> = None;
    let mut body_line = 0;

    // header
    for (ln, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "--BODY--" {
            body_line = ln;
            break;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(syntax(ln, 1, "expected a header item `key: value`"));
        };
        let key = key.trim();
        let col0 = raw.find(':').map_or(1, |c| c + 2);
        let toks = lex(ln, rest).map_err(|e| shifted(e, col0 - 1))?;
        match key {
            "HOA" => {
                if rest.trim() != "v1" {
                    return Err(semantic(ln, format!("unsupported HOA version {:?}", rest.trim())));
                }
                saw_version = true;
            }
            "name" => match toks.first() {
                Some((_, Tok::Str(s))) => name = Some(s.clone()),
                _ => return Err(syntax(ln, col0, "expected a quoted name")),
            },
            "States" => num_states = Some(expect_int(ln, &toks, 0, "a state count")?),
            "Start" => {
                if start.is_some() || toks.len() != 1 {
                    return Err(semantic(ln, "exactly one initial state is required"));
                }
                start = Some((expect_int(ln, &toks, 0, "an initial state")?, ln));
            }
            "AP" => {
                let n = expect_int(ln, &toks, 0, "a letter count")?;
                let mut ls = Vec::new();
                for (col, t) in &toks[1..] {
                    match t {
                        Tok::Str(s) => ls.push(s.clone()),
                        other => {
                            return Err(syntax(ln, col + col0 - 1, format!("expected a quoted letter, found {other:?}")))
                        }
                    }
                }
                if ls.len() != n {
                    return Err(semantic(ln, format!("AP declares {n} letters but lists {}", ls.len())));
                }
                letters = Some(ls);
            }
            "Alias" => match (toks.first(), toks.get(1), toks.len()) {
                (Some((_, Tok::Alias(a))), Some((_, Tok::Int(i))), 2) => {
                    aliases.insert(a.clone(), *i);
                }
                _ => {
                    return Err(semantic(
                        ln,
                        "aliases must name a single letter index, as in `Alias: @a 0`",
                    ))
                }
            },
            "acc-name" => match toks.first() {
                Some((_, Tok::Ident(n))) if n == "co-Buchi" => {}
                Some((_, Tok::Ident(n))) => {
                    return Err(semantic(ln, format!("acceptance {n:?} is not co-Buchi")))
                }
                _ => return Err(syntax(ln, col0, "expected an acceptance name")),
            },
            "Acceptance" => {
                let compact: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
                if compact != "1Fin(0)" {
                    return Err(semantic(
                        ln,
                        format!("acceptance condition {:?} is not `1 Fin(0)`", rest.trim()),
                    ));
                }
                acceptance_ok = true;
            }
            "properties" | "tool" => {}
            other => return Err(semantic(ln, format!("unsupported header item {other:?}"))),
        }
    }

    if body_line == 0 {
        return Err(syntax(text.lines().count().max(1), 1, "missing --BODY--"));
    }
    if !saw_version {
        return Err(semantic(1, "missing `HOA: v1`"));
    }
    if !acceptance_ok {
        return Err(semantic(body_line, "missing `Acceptance: 1 Fin(0)`"));
    }
    let num_states = num_states.ok_or_else(|| semantic(body_line, "missing `States:`"))?;
    let (initial, start_line) = start.ok_or_else(|| semantic(body_line, "missing `Start:`"))?;
    if initial >= num_states {
        return Err(semantic(start_line, "initial state out of range"));
    }
    let letters = letters.ok_or_else(|| semantic(body_line, "missing `AP:` letter list"))?;
    let alphabet = Alphabet::new(letters).map_err(|e| semantic(body_line, e.to_string()))?;
    for (a, &i) in &aliases {
        if i >= alphabet.len() {
            return Err(semantic(body_line, format!("alias @{a} names letter {i} out of range")));
        }
    }

    // body
    let mut transitions = Vec::new();
    let mut current: Option<usize> = None;
    let mut seen_states = vec![false; num_states];
    let mut ended = false;
    for (ln, raw) in lines {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if ended {
            return Err(syntax(ln, 1, "content after --END--"));
        }
        if line == "--END--" {
            ended = true;
            continue;
        }
        let lead = raw.len() - raw.trim_start().len();
        if let Some(rest) = line.strip_prefix("State:") {
            let col0 = lead + "State:".len() + 1;
            let toks = lex(ln, rest).map_err(|e| shifted(e, col0 - 1))?;
            let q = expect_int(ln, &toks, 0, "a state index")?;
            if q >= num_states {
                return Err(semantic(ln, format!("state {q} out of range")));
            }
            if seen_states[q] {
                return Err(semantic(ln, format!("state {q} declared twice")));
            }
            seen_states[q] = true;
            let mut i = 1;
            if let Some((_, Tok::Str(_))) = toks.get(i) {
                i += 1;
            }
            if let Some((_, Tok::Punct('{'))) = toks.get(i) {
                return Err(semantic(ln, "state-based acceptance is not supported"));
            }
            if let Some((col, t)) = toks.get(i) {
                return Err(syntax(ln, col + col0 - 1, format!("unexpected {t:?}")));
            }
            current = Some(q);
            continue;
        }
        let q = current.ok_or_else(|| syntax(ln, lead + 1, "edge before any `State:`"))?;
        let toks = lex(ln, line).map_err(|e| shifted(e, lead))?;
        let col = |i: usize| toks.get(i).map_or(line.len() + lead + 1, |(c, _)| c + lead);
        if toks.first().map(|(_, t)| t) != Some(&Tok::Punct('[')) {
            return Err(syntax(ln, col(0), "edges must start with a `[letter]` label"));
        }
        let letter = match toks.get(1).map(|(_, t)| t) {
            Some(Tok::Int(l)) => *l,
            Some(Tok::Alias(a)) => *aliases
                .get(a)
                .ok_or_else(|| semantic(ln, format!("unknown alias @{a}")))?,
            Some(Tok::Ident(t)) if t == "t" => {
                return Err(semantic(ln, "edge labels must name exactly one letter"))
            }
            _ => return Err(syntax(ln, col(1), "expected a letter index or alias")),
        };
        if toks.get(2).map(|(_, t)| t) != Some(&Tok::Punct(']')) {
            return Err(syntax(ln, col(2), "edge labels must name exactly one letter"));
        }
        if letter >= alphabet.len() {
            return Err(semantic(ln, format!("letter {letter} out of range")));
        }
        let dst = expect_int(ln, &toks, 3, "a target state")?;
        if dst >= num_states {
            return Err(semantic(ln, format!("target state {dst} out of range")));
        }
        let mark = match toks.get(4).map(|(_, t)| t) {
            None => Mark::NonAlpha,
            Some(Tok::Punct('{')) => {
                let mut i = 5;
                let mut mark = Mark::NonAlpha;
                loop {
                    match toks.get(i).map(|(_, t)| t) {
                        Some(Tok::Punct('}')) => break,
                        Some(Tok::Int(0)) => mark = Mark::Alpha,
                        Some(Tok::Int(n)) => {
                            return Err(semantic(ln, format!("acceptance set {n} is not declared")))
                        }
                        _ => return Err(syntax(ln, col(i), "malformed acceptance set")),
                    }
                    i += 1;
                }
                if i + 1 != toks.len() {
                    return Err(syntax(ln, col(i + 1), "trailing tokens after edge"));
                }
                mark
            }
            Some(_) => return Err(syntax(ln, col(4), "trailing tokens after edge")),
        };
        transitions.push(Transition::new(q, letter, dst, mark));
    }
    if !ended {
        return Err(syntax(text.lines().count(), 1, "missing --END--"));
    }

    let mut a = Automaton::from_parts(alphabet, num_states, initial, transitions);
    if let Some(n) = name {
        a = a.with_name(n);
    }
    let violations = a.validate();
    if !violations.is_empty() {
        let msg = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(semantic(body_line, msg));
    }
    Ok(a)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Serializes an automaton. The output depends only on the automaton value:
/// states ascending, letters ascending, ᾱ-edges before α-edges.
pub fn write_hoa(a: &Automaton) -> Result<String, crate::Error> {
    a.ensure_valid()?;
    let mut s = String::new();
    s.push_str("HOA: v1\n");
    if let Some(n) = a.name() {
        let _ = writeln!(s, "name: {}", quote(n));
    }
    let _ = writeln!(s, "States: {}", a.num_states());
    let _ = writeln!(s, "Start: {}", a.initial());
    let _ = write!(s, "AP: {}", a.num_letters());
    for l in a.alphabet().letters() {
        let _ = write!(s, " {}", quote(l));
    }
    s.push('\n');
    s.push_str("acc-name: co-Buchi\nAcceptance: 1 Fin(0)\n--BODY--\n");
    for q in a.states() {
        let _ = writeln!(s, "State: {q}");
        for l in a.letters() {
            for &(d, m) in a.succ(q, l) {
                match m {
                    Mark::NonAlpha => {
                        let _ = writeln!(s, "[{l}] {d}");
                    }
                    Mark::Alpha => {
                        let _ = writeln!(s, "[{l}] {d} {{0}}");
                    }
                }
            }
        }
    }
    s.push_str("--END--\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIVERSAL: &str = "HOA: v1\nStates: 1\nStart: 0\nAP: 2 \"a\" \"b\"\nacc-name: co-Buchi\nAcceptance: 1 Fin(0)\n--BODY--\nState: 0\n[0] 0\n[1] 0\n--END--\n";

    #[test]
    fn universal_round_trip() {
        let a = parse_hoa(UNIVERSAL).unwrap();
        assert_eq!(a.num_states(), 1);
        let w = write_hoa(&a).unwrap();
        assert_eq!(w, UNIVERSAL);
        assert!(w.contains("Acceptance: 1 Fin(0)"));
        assert!(!w.contains("{0}"));
    }

    #[test]
    fn alpha_edges_and_aliases() {
        let text = "HOA: v1\nStates: 2\nStart: 1\nAP: 2 \"a\" \"b\"\nAlias: @b 1\nAcceptance: 1 Fin(0)\nproperties: trans-acc\n--BODY--\nState: 0 \"zero\"\n[0] 1 {0}\n[@b] 0\nState: 1\n[0] 0\n[1] 1 {0}\n--END--\n";
        let a = parse_hoa(text).unwrap();
        assert_eq!(a.initial(), 1);
        assert_eq!(a.mark_of(0, 0, 1), Some(Mark::Alpha));
        assert_eq!(a.mark_of(0, 1, 0), Some(Mark::NonAlpha));
        assert_eq!(parse_hoa(&write_hoa(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn buchi_is_rejected() {
        let text = UNIVERSAL.replace("acc-name: co-Buchi", "acc-name: Buchi");
        assert!(matches!(parse_hoa(&text), Err(HoaError::Semantic { line: 5, .. })));
        let text = UNIVERSAL.replace("Fin(0)", "Inf(0)");
        assert!(matches!(parse_hoa(&text), Err(HoaError::Semantic { .. })));
    }

    #[test]
    fn state_based_acceptance_is_rejected() {
        let text = UNIVERSAL.replace("State: 0\n", "State: 0 {0}\n");
        let err = parse_hoa(&text).unwrap_err();
        assert!(matches!(err, HoaError::Semantic { line: 8, .. }), "{err}");
    }

    #[test]
    fn non_total_is_rejected() {
        let text = UNIVERSAL.replace("[1] 0\n", "");
        let err = parse_hoa(&text).unwrap_err();
        assert!(err.to_string().contains("missing successor"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let text = UNIVERSAL.replace("[1] 0", "[1] 0 %");
        match parse_hoa(&text).unwrap_err() {
            HoaError::Syntax { line, col, .. } => assert_eq!((line, col), (10, 7)),
            e => panic!("unexpected {e}"),
        }
        let text = UNIVERSAL.replace("[1] 0", "[1 0");
        assert!(matches!(parse_hoa(&text), Err(HoaError::Syntax { line: 10, .. })));
        assert!(matches!(
            parse_hoa("HOA: v1\nStates: 1\n"),
            Err(HoaError::Syntax { .. })
        ));
    }
}
