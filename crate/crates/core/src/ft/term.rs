use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A system built from atomic components by series (`F`) and parallel
/// (`G`) composition.
///
/// `Zero` is the component that never fails and `One` the one that always
/// fails. The derived ordering (constants, atoms by name, `F`, `G`, with
/// children compared lexicographically) is the canonical order used to sort
/// children during normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemTerm {
    Zero,
    One,
    Atom(String),
    /// Series: fails as soon as any child fails.
    F(Vec<SystemTerm>),
    /// Parallel: fails only when every child fails.
    G(Vec<SystemTerm>),
}

impl SystemTerm {
    pub fn atom(name: &str) -> Self {
        SystemTerm::Atom(name.to_owned())
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, SystemTerm::F(_) | SystemTerm::G(_))
    }

    pub fn children(&self) -> &[SystemTerm] {
        match self {
            SystemTerm::F(c) | SystemTerm::G(c) => c,
            _ => &[],
        }
    }

    /// Distinct atom names.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            SystemTerm::Atom(a) => {
                out.insert(a);
            }
            SystemTerm::F(c) | SystemTerm::G(c) => c.iter().for_each(|t| t.collect_atoms(out)),
            _ => {}
        }
    }

    /// Number of atom occurrences, counting repeats.
    pub fn atom_occurrences(&self) -> usize {
        match self {
            SystemTerm::Atom(_) => 1,
            SystemTerm::F(c) | SystemTerm::G(c) => c.iter().map(SystemTerm::atom_occurrences).sum(),
            _ => 0,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SystemTerm::F(c) | SystemTerm::G(c) => 1 + c.iter().map(SystemTerm::depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

impl fmt::Display for SystemTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, children) = match self {
            SystemTerm::Zero => return f.write_str("0"),
            SystemTerm::One => return f.write_str("1"),
            SystemTerm::Atom(a) => return f.write_str(a),
            SystemTerm::F(c) => ("f", c),
            SystemTerm::G(c) => ("g", c),
        };
        write!(f, "({op}")?;
        for c in children {
            write!(f, " {c}")?;
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for SystemTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// Parses `term := "0" | "1" | IDENT | "(" ("f"|"g") term term+ ")"`.
pub fn parse_term(text: &str) -> Result<SystemTerm> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn term(&mut self) -> Result<SystemTerm> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("expected a term")),
            Some('(') => self.compound(),
            Some(')') => Err(self.error("unexpected `)`")),
            Some(_) => {
                let start = self.pos;
                let w = self.word();
                match w {
                    "" => {
                        self.pos = start;
                        Err(self.error("unexpected character"))
                    }
                    "0" => Ok(SystemTerm::Zero),
                    "1" => Ok(SystemTerm::One),
                    w if w.starts_with(|c: char| c.is_ascii_alphabetic()) => Ok(SystemTerm::Atom(w.to_owned())),
                    _ => {
                        self.pos = start;
                        Err(self.error("identifiers start with a letter; the only constants are 0 and 1"))
                    }
                }
            }
        }
    }

    fn compound(&mut self) -> Result<SystemTerm> {
        let open = self.pos;
        self.pos += 1;
        self.skip_ws();
        let op_pos = self.pos;
        let series = match self.word() {
            "f" => true,
            "g" => false,
            _ => {
                self.pos = op_pos;
                return Err(self.error("expected operator `f` or `g`"));
            }
        };
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.error("unclosed `(`")),
                _ => children.push(self.term()?),
            }
        }
        match children.len() {
            0 => Err(Error::EmptyOperator { pos: open }),
            1 => Err(Error::Syntax {
                pos: open,
                msg: "operator needs at least two operands".into(),
            }),
            _ if series => Ok(SystemTerm::F(children)),
            _ => Ok(SystemTerm::G(children)),
        }
    }
}

/// AC normal form: flattened, identities dropped, absorbing constants
/// propagated, singletons unwrapped, children sorted. Repeated children are
/// kept: `f(x, x)` is a different system from `x`.
pub fn normalize(t: &SystemTerm) -> SystemTerm {
    match t {
        SystemTerm::F(c) => rebuild(c, true),
        SystemTerm::G(c) => rebuild(c, false),
        leaf => leaf.clone(),
    }
}

fn rebuild(children: &[SystemTerm], series: bool) -> SystemTerm {
    // Under F the identity is Zero and One absorbs; under G the reverse.
    let (identity, absorber) = if series {
        (SystemTerm::Zero, SystemTerm::One)
    } else {
        (SystemTerm::One, SystemTerm::Zero)
    };
    let mut flat = Vec::with_capacity(children.len());
    for c in children.iter().map(normalize) {
        match c {
            SystemTerm::F(inner) if series => flat.extend(inner),
            SystemTerm::G(inner) if !series => flat.extend(inner),
            c if c == absorber => return absorber,
            c if c == identity => {}
            c => flat.push(c),
        }
    }
    match flat.len() {
        0 => identity,
        1 => flat.pop().unwrap(),
        _ => {
            flat.sort();
            if series {
                SystemTerm::F(flat)
            } else {
                SystemTerm::G(flat)
            }
        }
    }
}

/// Equality modulo AC normalization.
pub fn term_equal(a: &SystemTerm, b: &SystemTerm) -> bool {
    normalize(a) == normalize(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use SystemTerm::{One, Zero, F, G};

    fn a(name: &str) -> SystemTerm {
        SystemTerm::atom(name)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_term("(f a (g b c) 0)").unwrap(),
            F(vec![a("a"), G(vec![a("b"), a("c")]), Zero])
        );
        assert!(matches!(parse_term("(g a)"), Err(Error::Syntax { pos: 0, .. })));
        assert_eq!(parse_term("1").unwrap(), One);
        assert_eq!(parse_term("  pump_2 ").unwrap(), a("pump_2"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_term("(f)"), Err(Error::EmptyOperator { pos: 0 })));
        assert!(matches!(parse_term("(h a b)"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_term("(f a b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("a b"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_term("2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("_x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term(")"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["(f a (g b c) 0)", "1", "x", "(g (f a b) (f c d) 1)"] {
            let t = parse_term(s).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&F(vec![a("a"), Zero, Zero])), a("a"));
        assert_eq!(normalize(&G(vec![a("a"), Zero])), Zero);
        assert_eq!(
            normalize(&F(vec![F(vec![a("a"), a("b")]), a("c")])),
            F(vec![a("a"), a("b"), a("c")])
        );
        assert_eq!(normalize(&F(vec![a("b"), One])), One);
        assert_eq!(normalize(&G(vec![One, One])), One);
        assert_eq!(normalize(&F(vec![Zero, Zero])), Zero);
        assert_eq!(normalize(&F(vec![a("x"), a("x")])), F(vec![a("x"), a("x")]));
        assert_eq!(
            normalize(&G(vec![F(vec![a("b"), Zero]), G(vec![a("c"), One, a("a")])])),
            G(vec![a("a"), a("b"), a("c")])
        );
    }

    #[test]
    fn canonical_order_ranks_constants_atoms_series_parallel() {
        let mut xs = vec![G(vec![a("a"), a("b")]), F(vec![a("a"), a("b")]), a("b"), a("a"), One, Zero];
        xs.sort();
        assert_eq!(
            xs,
            vec![Zero, One, a("a"), a("b"), F(vec![a("a"), a("b")]), G(vec![a("a"), a("b")])]
        );
    }

    #[test]
    fn term_equal_examples() {
        assert!(term_equal(&F(vec![a("a"), Zero, a("b")]), &F(vec![a("b"), a("a")])));
        assert!(!term_equal(&F(vec![a("a"), a("b")]), &G(vec![a("a"), a("b")])));
        assert!(term_equal(
            &F(vec![F(vec![a("a"), a("b")]), a("c")]),
            &F(vec![a("a"), F(vec![a("b"), a("c")])])
        ));
    }

    #[test]
    fn normal_forms_are_fixpoints() {
        let t = parse_term("(f (g a (f 0 b) (g c 1)) (f d (f e 0)) (g 1 h))").unwrap();
        let n = normalize(&t);
        assert_eq!(normalize(&n), n);
        assert_eq!(n.to_string(), "(f d e h (g a b c))");
    }
}
