//! Line-oriented text formats for structures and multi-valued functions.
//!
//! Structure files:
//!
//! ```text
//! # comments run to the end of the line
//! universe 3
//! labels a b c        # optional; default labels are 1..k
//! rel R 2
//! a b
//! b c
//! end
//! ```
//!
//! Every `rel <name> <arity>` block lists one tuple per line and ends with
//! `end`. Elements are written by label; labels map to `0..k` in the order
//! they are listed. Multi-valued functions are written one source element
//! per line as `i : j1 j2 ...` with 1-based elements.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::homomorphisms::MultiValuedFunction;
use crate::structure::{is_identifier, Elem, Signature, Structure, Symbol};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Parses a structure in strict mode.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let s = parse_structure_lenient(text)?;
    s.with_strict(true)
}

/// Parses a structure without enforcing the strict conventions.
pub fn parse_structure_lenient(text: &str) -> Result<Structure> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    let (lineno, first) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty structure file"))?;
    let words: Vec<&str> = first.split_whitespace().collect();
    if words.len() != 2 || words[0] != "universe" {
        return Err(syntax(lineno, "expected `universe <k>`"));
    }
    let size: usize = words[1]
        .parse()
        .map_err(|_| syntax(lineno, format!("bad universe size `{}`", words[1])))?;

    let mut labels: Vec<String> = (1..=size).map(|i| i.to_string()).collect();
    if let Some(&(lineno, line)) = lines.peek() {
        let mut words = line.split_whitespace();
        if words.next() == Some("labels") {
            let given: Vec<String> = words.map(str::to_string).collect();
            if given.len() != size {
                return Err(syntax(
                    lineno,
                    format!("{} labels for a universe of size {size}", given.len()),
                ));
            }
            labels = given;
            lines.next();
        }
    }
    let mut index = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(syntax(lineno, format!("duplicate label `{l}`")));
        }
    }

    let mut symbols = Vec::new();
    let mut relations = Vec::new();
    while let Some((lineno, line)) = lines.next() {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 3 || words[0] != "rel" {
            return Err(syntax(lineno, "expected `rel <name> <arity>`"));
        }
        let name = words[1];
        if !is_identifier(name) {
            return Err(syntax(lineno, format!("bad relation name `{name}`")));
        }
        let arity: usize = words[2]
            .parse()
            .map_err(|_| syntax(lineno, format!("bad arity `{}`", words[2])))?;
        let mut tuples: Vec<Vec<Elem>> = Vec::new();
        loop {
            let (tl, tline) = lines
                .next()
                .ok_or_else(|| syntax(lineno, format!("relation `{name}` is missing `end`")))?;
            if tline == "end" {
                break;
            }
            let t = tline
                .split_whitespace()
                .map(|w| {
                    index
                        .get(w)
                        .copied()
                        .ok_or_else(|| syntax(tl, format!("unknown element `{w}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if t.len() != arity {
                return Err(syntax(
                    tl,
                    format!("tuple of length {} for `{name}` of arity {arity}", t.len()),
                ));
            }
            tuples.push(t);
        }
        symbols.push(Symbol::new(name, arity));
        relations.push(tuples);
    }
    let signature = Signature::new(symbols).map_err(|e| syntax(1, e.to_string()))?;
    Structure::lenient(signature, size, relations)
}

/// Serializes a structure with 1-based element labels.
pub fn structure_to_text(s: &Structure) -> String {
    let mut out = String::new();
    writeln!(out, "universe {}", s.size()).unwrap();
    for (sym, rel) in s.signature().symbols().iter().zip(s.relations()) {
        writeln!(out, "rel {} {}", sym.name, sym.arity).unwrap();
        for t in rel.tuples() {
            let words: Vec<String> = t.iter().map(|e| (e + 1).to_string()).collect();
            writeln!(out, "{}", words.join(" ")).unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}

/// Parses `i : j1 j2 ...` lines (1-based) into a multi-valued function.
pub fn parse_mvf(text: &str, source: usize, target: usize) -> Result<MultiValuedFunction> {
    let mut values: Vec<Option<Vec<Elem>>> = vec![None; source];
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| syntax(lineno, "expected `i : j1 j2 ...`"))?;
        let a: usize = lhs
            .trim()
            .parse()
            .map_err(|_| syntax(lineno, format!("bad source element `{}`", lhs.trim())))?;
        if a == 0 || a > source {
            return Err(syntax(lineno, format!("source element {a} out of range")));
        }
        let vals = rhs
            .split_whitespace()
            .map(|w| match w.parse::<usize>() {
                Ok(b) if b >= 1 && b <= target => Ok(b - 1),
                _ => Err(syntax(lineno, format!("bad target element `{w}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if values[a - 1].replace(vals).is_some() {
            return Err(syntax(lineno, format!("element {a} given twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| syntax(1, format!("element {} has no values", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    MultiValuedFunction::new(target, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K2: &str = "\
# equality on two elements
universe 2
rel Q 2
1 1
2 2
end
";

    #[test]
    fn parses_and_prints() {
        let s = parse_structure(K2).unwrap();
        assert_eq!(s, Structure::equality("Q", 2).unwrap());
        assert_eq!(
            structure_to_text(&s),
            K2.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n"
        );
        assert_eq!(parse_structure(&structure_to_text(&s)).unwrap(), s);
    }

    #[test]
    fn labels_map_in_order() {
        let s = parse_structure("universe 3\nlabels a b c\nrel E 2\nc a # edge\nend\n").unwrap();
        assert_eq!(s.relation("E").unwrap().tuples(), &[vec![2, 0]]);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_structure("universe 2\nrel R 2\n1 3\nend\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = parse_structure("universe 2\nrel R 2\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }));
        let err = parse_structure("universes 2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn strict_violations_surface() {
        let err = parse_structure("universe 2\nrel R 1\n1\n2\nend\n").unwrap_err();
        assert!(matches!(err, Error::Strict(_)));
        assert!(parse_structure_lenient("universe 2\nrel R 1\n1\n2\nend\n").is_ok());
    }

    #[test]
    fn mvf_round_trip() {
        let f = parse_mvf("1 : 1 2\n2 : 2\n", 2, 2).unwrap();
        assert_eq!(f.values(0), vec![0, 1]);
        assert_eq!(parse_mvf(&f.to_string(), 2, 2).unwrap(), f);
        assert!(parse_mvf("1 : 1\n", 2, 2).is_err());
        assert!(parse_mvf("1 : \n2 : 1\n", 2, 2).is_err());
    }
}
