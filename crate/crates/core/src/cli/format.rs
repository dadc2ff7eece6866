//! Line-based text formats. `#` starts a comment anywhere on a line.
//!
//! Algebra file:
//!
//! ```text
//! size 4
//! m 2
//! n 3
//! f rule mod-add
//! g table
//! 0 0 0 0  0 1 2 3 ...
//! ```
//!
//! Tables are row-major with the leftmost argument most significant and may
//! span any number of lines. Rules: `mod-add`, `mod-mul`, `union`,
//! `intersection` (the last two read elements as bitmasks and need a
//! power-of-two size).
//!
//! Poset file: one `a <= b` per line; a bare name declares an atom.
//! Assignment file: one `a = p/q` per line.

use std::fmt::Write as _;

use num_rational::BigRational;

use crate::algebra::{Element, Limits, MNSemiring, OpTable};
use crate::error::{Error, Result};
use crate::ft::{AtomPoset, ReliabilityAssignment};

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub const RULES: [&str; 4] = ["mod-add", "mod-mul", "union", "intersection"];

/// Tabulates a named rule.
pub fn rule_table(name: &str, size: usize, arity: usize, limits: &Limits) -> Result<OpTable, String> {
    let bitwise = matches!(name, "union" | "intersection");
    if bitwise && !size.is_power_of_two() {
        return Err(format!("rule `{name}` needs a power-of-two size, got {size}"));
    }
    let rule: Box<dyn Fn(&[Element]) -> Element> = match name {
        "mod-add" => Box::new(move |t| t.iter().sum::<usize>() % size),
        "mod-mul" => Box::new(move |t| t.iter().fold(1 % size, |acc, &x| acc * x % size)),
        "union" => Box::new(|t| t.iter().fold(0, |acc, &x| acc | x)),
        "intersection" => Box::new(move |t| t.iter().fold(size - 1, |acc, &x| acc & x)),
        _ => return Err(format!("unknown rule `{name}` (expected one of {})", RULES.join(", "))),
    };
    OpTable::from_fn_with_limits(size, arity, rule, limits).map_err(|e| e.to_string())
}

enum Payload {
    Table(Vec<Element>),
    Rule(String),
}

struct OpSection {
    line: usize,
    payload: Payload,
}

pub fn parse_algebra(text: &str) -> Result<MNSemiring> {
    parse_algebra_with_limits(text, &Limits::default())
}

pub fn parse_algebra_with_limits(text: &str, limits: &Limits) -> Result<MNSemiring> {
    let mut size = None;
    let mut m = None;
    let mut n = None;
    let mut ops: [Option<OpSection>; 2] = [None, None];
    let mut current: Option<usize> = None;
    let mut last_line = 0;

    for (line, l) in content_lines(text) {
        last_line = line;
        let mut words = l.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "size" | "m" | "n" => {
                if current.is_some() {
                    return Err(format_err(line, format!("`{head}` must come before the operations")));
                }
                let value: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| format_err(line, format!("`{head}` needs a non-negative integer")))?;
                if words.next().is_some() {
                    return Err(format_err(line, "trailing text after header value"));
                }
                let slot = match head {
                    "size" => &mut size,
                    "m" => &mut m,
                    _ => &mut n,
                };
                if slot.replace(value).is_some() {
                    return Err(format_err(line, format!("duplicate `{head}`")));
                }
            }
            "f" | "g" => {
                let idx = usize::from(head == "g");
                if ops[idx].is_some() {
                    return Err(format_err(line, format!("duplicate `{head}` section")));
                }
                let payload = match (words.next(), words.next(), words.next()) {
                    (Some("table"), None, _) => Payload::Table(Vec::new()),
                    (Some("rule"), Some(name), None) => Payload::Rule(name.to_owned()),
                    _ => return Err(format_err(line, format!("expected `{head} table` or `{head} rule NAME`"))),
                };
                ops[idx] = Some(OpSection { line, payload });
                current = Some(idx);
            }
            _ => {
                let section = current
                    .and_then(|i| ops[i].as_mut())
                    .ok_or_else(|| format_err(line, format!("unexpected `{head}`")))?;
                let Payload::Table(entries) = &mut section.payload else {
                    return Err(format_err(line, "table entries after a rule"));
                };
                for w in l.split_whitespace() {
                    let x = w
                        .parse()
                        .map_err(|_| format_err(line, format!("`{w}` is not a table entry")))?;
                    entries.push(x);
                }
            }
        }
    }

    let end = last_line + 1;
    let size = size.ok_or_else(|| format_err(end, "missing `size`"))?;
    let m = m.ok_or_else(|| format_err(end, "missing `m`"))?;
    let n = n.ok_or_else(|| format_err(end, "missing `n`"))?;
    let mut tables = Vec::with_capacity(2);
    for (idx, (name, arity)) in [("f", m), ("g", n)].into_iter().enumerate() {
        let section = ops[idx]
            .take()
            .ok_or_else(|| format_err(end, format!("missing `{name}` section")))?;
        let table = match section.payload {
            Payload::Table(entries) => match OpTable::with_limits(size, arity, entries, limits) {
                Err(Error::TableLength { expected, got }) => {
                    return Err(format_err(
                        section.line,
                        format!("`{name}` table has {got} entries, expected {expected}"),
                    ))
                }
                Err(Error::IndexOutOfRange { index, size }) => {
                    return Err(format_err(
                        section.line,
                        format!("`{name}` table entry {index} is outside 0..{size}"),
                    ))
                }
                other => other?,
            },
            Payload::Rule(rule) => {
                limits.check_shape(size, arity)?;
                rule_table(&rule, size, arity, limits).map_err(|msg| format_err(section.line, msg))?
            }
        };
        tables.push(table);
    }
    let g = tables.pop().unwrap();
    let f = tables.pop().unwrap();
    MNSemiring::new(f, g)
}

/// Writes both operations as explicit tables, one row per leading argument
/// prefix. [`parse_algebra`] reads the result back to identical tables.
pub fn serialize_algebra(s: &MNSemiring) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "size {}", s.size());
    let _ = writeln!(out, "m {}", s.m());
    let _ = writeln!(out, "n {}", s.n());
    for (name, t) in [("f", s.f()), ("g", s.g())] {
        let _ = writeln!(out, "{name} table");
        for row in t.entries().chunks(s.size()) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
    }
    out
}

fn is_ident(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_alphabetic()) && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_poset(text: &str) -> Result<AtomPoset> {
    let mut atoms = Vec::new();
    let mut facts = Vec::new();
    for (line, l) in content_lines(text) {
        match l.split_once("<=") {
            Some((a, b)) => {
                let (a, b) = (a.trim(), b.trim());
                if !is_ident(a) || !is_ident(b) {
                    return Err(format_err(line, "expected `a <= b` with identifier atoms"));
                }
                facts.push((a.to_owned(), b.to_owned()));
            }
            None if is_ident(l) => atoms.push(l),
            None => return Err(format_err(line, "expected `a <= b` or an atom name")),
        }
    }
    AtomPoset::new(atoms, &facts)
}

pub fn parse_assignment(text: &str) -> Result<ReliabilityAssignment> {
    let mut r = ReliabilityAssignment::new();
    for (line, l) in content_lines(text) {
        let (a, p) = l
            .split_once('=')
            .ok_or_else(|| format_err(line, "expected `atom = p/q`"))?;
        let (a, p) = (a.trim(), p.trim());
        if !is_ident(a) {
            return Err(format_err(line, format!("`{a}` is not an atom name")));
        }
        if r.get(a).is_some() {
            return Err(format_err(line, format!("`{a}` assigned twice")));
        }
        let p: BigRational = p
            .parse()
            .map_err(|_| format_err(line, format!("`{p}` is not a rational p/q")))?;
        r.set(a, p).map_err(|e| format_err(line, e.to_string()))?;
    }
    Ok(r)
}
