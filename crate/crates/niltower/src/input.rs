//! JSON ingestion for spaces and presentations, and the word syntax.

use niltower_core::nilpotent::FreeWord;
use niltower_core::quotient::Presentation;
use niltower_core::simplicial::{Cell, SimplexRef, SimplicialSet, Violation, ViolationKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Why an input file was rejected.
///
/// `code` is 1 for malformed JSON, 2 for a schema or canonical-form
/// violation, 3 for a broken simplicial identity.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{rule} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub code: u8,
    pub rule: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn from_json(e: serde_json::Error) -> Self {
        let (code, rule) = match e.classify() {
            serde_json::error::Category::Data => (2, "schema"),
            _ => (1, "json syntax"),
        };
        let message = e.to_string();
        let message = message.split(" at line ").next().unwrap_or_default().to_string();
        ParseError { code, rule: rule.to_string(), line: e.line(), column: e.column(), message }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    name: String,
    simplices: Vec<Vec<CellFile>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellFile {
    id: String,
    faces: Vec<RefFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RefFile {
    degeneracies: Vec<usize>,
    base: String,
}

/// Line and column (1-based) of the `"id"` entry naming `id`, or of the
/// start of the document.
fn locate_id(text: &str, id: &str) -> (usize, usize) {
    let quoted = serde_json::to_string(id).unwrap_or_default();
    let mut from = 0;
    while let Some(k) = text[from..].find("\"id\"") {
        let at = from + k;
        let rest = text[at + 4..].trim_start();
        if let Some(rest) = rest.strip_prefix(':') {
            if rest.trim_start().starts_with(&quoted) {
                let before = &text[..at];
                let line = before.matches('\n').count() + 1;
                let column = at - before.rfind('\n').map_or(0, |p| p + 1) + 1;
                return (line, column);
            }
        }
        from = at + 4;
    }
    (1, 1)
}

fn violation_error(text: &str, v: &Violation) -> ParseError {
    let code = if v.kind == ViolationKind::Identity { 3 } else { 2 };
    let (line, column) = if v.simplex.is_empty() { (1, 1) } else { locate_id(text, &v.simplex) };
    ParseError {
        code,
        rule: format!("{}: {}", v.kind.as_str(), v.rule),
        line,
        column,
        message: format!("simplex {:?}: {}", v.simplex, v.detail),
    }
}

/// Reads a space without validating it.
pub fn read_space(bytes: &[u8]) -> Result<(SimplicialSet, String), ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError {
        code: 1,
        rule: "utf-8".to_string(),
        line: 1,
        column: e.valid_up_to() + 1,
        message: "input is not UTF-8".to_string(),
    })?;
    let file: SpaceFile = serde_json::from_str(text).map_err(ParseError::from_json)?;
    let cells = file
        .simplices
        .into_iter()
        .map(|layer| {
            layer
                .into_iter()
                .map(|c| Cell {
                    id: c.id,
                    faces: c.faces.into_iter().map(|r| SimplexRef { degeneracies: r.degeneracies, base: r.base }).collect(),
                })
                .collect()
        })
        .collect();
    Ok((SimplicialSet::new(file.name, cells), text.to_string()))
}

/// Violations of a read space, each with its source position.
pub fn violations(x: &SimplicialSet, text: &str) -> Vec<(Violation, ParseError)> {
    x.validate().violations.into_iter().map(|v| {
        let e = violation_error(text, &v);
        (v, e)
    }).collect()
}

/// Parses and validates a space.
pub fn parse_space(bytes: &[u8]) -> Result<SimplicialSet, ParseError> {
    let (x, text) = read_space(bytes)?;
    match violations(&x, &text).into_iter().next() {
        Some((_, e)) => Err(e),
        None => Ok(x),
    }
}

/// The JSON form of a space, as read by [`parse_space`].
pub fn space_to_json(x: &SimplicialSet) -> String {
    let file = SpaceFile {
        name: x.name().to_string(),
        simplices: x
            .cells()
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|c| CellFile {
                        id: c.id.clone(),
                        faces: c
                            .faces
                            .iter()
                            .map(|r| RefFile { degeneracies: r.degeneracies.clone(), base: r.base.clone() })
                            .collect(),
                    })
                    .collect()
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

/// Parses `b a b^-1` against generator names. Names resolve first against
/// `names`, then as `x1, x2, ...`; with no names, `a`..`z` are the first
/// 26 generators.
pub fn parse_word(s: &str, names: &[String], k: usize) -> Result<FreeWord, String> {
    let mut out = Vec::new();
    for token in s.split_whitespace() {
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| format!("bad exponent in {token:?}"))?),
            None => (token, 1),
        };
        let g = letter_index(name, names, k).ok_or_else(|| format!("unknown generator {name:?}"))?;
        out.push((g, exp));
    }
    Ok(FreeWord::new(out))
}

fn letter_index(name: &str, names: &[String], k: usize) -> Option<usize> {
    if let Some(i) = names.iter().position(|n| n == name) {
        return Some(i);
    }
    if let Some(i) = name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
        return (1..=k).contains(&i).then(|| i - 1);
    }
    let mut chars = name.chars();
    match (chars.next(), chars.next()) {
        (Some(c @ 'a'..='z'), None) if names.is_empty() => {
            let i = c as usize - 'a' as usize;
            (i < k).then_some(i)
        }
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<String>,
    relators: Vec<String>,
}

pub fn parse_presentation(bytes: &[u8]) -> Result<Presentation, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError {
        code: 1,
        rule: "utf-8".to_string(),
        line: 1,
        column: e.valid_up_to() + 1,
        message: "input is not UTF-8".to_string(),
    })?;
    let file: PresentationFile = serde_json::from_str(text).map_err(ParseError::from_json)?;
    let schema = |message: String| ParseError { code: 2, rule: "schema".to_string(), line: 1, column: 1, message };
    for (i, g) in file.generators.iter().enumerate() {
        if g.is_empty() || g.contains(char::is_whitespace) || g.contains('^') {
            return Err(schema(format!("generator name {g:?} is not a single token")));
        }
        if file.generators[..i].contains(g) {
            return Err(schema(format!("generator {g:?} listed twice")));
        }
    }
    let k = file.generators.len();
    let relators = file
        .relators
        .iter()
        .map(|r| parse_word(r, &file.generators, k).map_err(|m| schema(format!("relator {r:?}: {m}"))))
        .collect::<Result<_, _>>()?;
    Ok(Presentation { generators: file.generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use niltower_core::simplicial::{moore, sphere};

    #[test]
    fn round_trip() {
        for x in [sphere(2).unwrap(), moore(2, 2).unwrap()] {
            assert_eq!(parse_space(space_to_json(&x).as_bytes()).unwrap(), x);
        }
    }

    #[test]
    fn error_codes() {
        assert_eq!(parse_space(b"{\"name\": ").unwrap_err().code, 1);
        let e = parse_space(b"{\"name\":\"x\",\n \"simplices\": 3}").unwrap_err();
        assert_eq!((e.code, e.line), (2, 2));
        let dup = br#"{"name":"d","simplices":[[{"id":"*","faces":[]}],
            [{"id":"x","faces":[{"degeneracies":[],"base":"*"},{"degeneracies":[],"base":"*"}]},
             {"id":"x","faces":[{"degeneracies":[],"base":"*"},{"degeneracies":[],"base":"*"}]}]]}"#;
        let e = parse_space(dup).unwrap_err();
        assert_eq!((e.code, e.line), (2, 2));
        assert!(e.message.contains("\"x\""));
    }

    #[test]
    fn words() {
        let w = parse_word("b a b^-1", &[], 2).unwrap();
        assert_eq!(w.syllables(), &[(1, 1), (0, 1), (1, -1)]);
        assert_eq!(parse_word("x2^3", &[], 2).unwrap().syllables(), &[(1, 3)]);
        assert!(parse_word("c", &[], 2).is_err());
        assert!(parse_word("a^x", &[], 2).is_err());
        let names = vec!["u".to_string(), "v".to_string()];
        assert_eq!(parse_word("v u", &names, 2).unwrap().syllables(), &[(1, 1), (0, 1)]);
    }
}
