//! The textual diagram language.
//!
//! ```text
//! # corner with one spider inside S1
//! diagram d1 {
//!   labels: S1, S2, M, X;
//!   zones: {S1 M X}, {S2 M X}, {S1 S2 M X} shaded, {M X}, {X}, {};
//!   spider in {S1 M X};
//! }
//! compound c = d1 and (d1 or TOP);
//! ```
//!
//! A zone lists its `ins`; outs default to the remaining labels and may be
//! given explicitly after `|`. `and` binds tighter than `or`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use indexmap::IndexMap;
use thiserror::Error;

use crate::diagram::{CompoundDiagram, Label, Region, SpiderEntry, UnitaryDiagram, Zone};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("in `{item}`: {message}")]
    Semantic { item: String, message: String },
}

/// A compound expression over names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Top,
    Bottom,
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn write(&self, out: &mut String, parent: Option<(&str, bool)>) {
        let (op, a, b) = match self {
            Expr::Name(n) => return out.push_str(n),
            Expr::Top => return out.push_str("TOP"),
            Expr::Bottom => return out.push_str("BOTTOM"),
            Expr::And(a, b) => ("and", a, b),
            Expr::Or(a, b) => ("or", a, b),
        };
        // parenthesize looser operators and right-nested equal ones
        let parens = match parent {
            None => false,
            Some((p, right)) => (p == "and" && op == "or") || (p == op && right),
        };
        if parens {
            out.push('(');
        }
        a.write(out, Some((op, false)));
        let _ = write!(out, " {op} ");
        b.write(out, Some((op, true)));
        if parens {
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, None);
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCompound {
    pub expr: Expr,
    pub value: CompoundDiagram,
}

/// Named unitary diagrams and compounds, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub diagrams: IndexMap<String, UnitaryDiagram>,
    pub compounds: IndexMap<String, NamedCompound>,
}

impl Document {
    pub fn new() -> Self {
        Document::default()
    }

    /// Looks up a diagram or compound by name.
    pub fn get(&self, name: &str) -> Option<CompoundDiagram> {
        if let Some(d) = self.diagrams.get(name) {
            return Some(CompoundDiagram::Unit(d.clone()));
        }
        self.compounds.get(name).map(|c| c.value.clone())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.diagrams.contains_key(name) || self.compounds.contains_key(name)
    }

    pub fn add_diagram(&mut self, name: &str, d: UnitaryDiagram) -> Result<(), DslError> {
        if self.contains(name) {
            return Err(semantic(name, "duplicate name"));
        }
        self.diagrams.insert(name.to_string(), d);
        Ok(())
    }

    /// Adds a compound, resolving its expression against earlier items.
    pub fn add_compound(&mut self, name: &str, expr: Expr) -> Result<(), DslError> {
        if self.contains(name) {
            return Err(semantic(name, "duplicate name"));
        }
        let value = self.resolve(&expr).map_err(|m| semantic(name, m))?;
        value
            .validate()
            .map_err(|e| semantic(name, e.to_string()))?;
        self.compounds
            .insert(name.to_string(), NamedCompound { expr, value });
        Ok(())
    }

    pub fn resolve(&self, expr: &Expr) -> Result<CompoundDiagram, String> {
        Ok(match expr {
            Expr::Name(n) => self.get(n).ok_or_else(|| format!("unknown name `{n}`"))?,
            Expr::Top => CompoundDiagram::Top,
            Expr::Bottom => CompoundDiagram::Bottom,
            Expr::And(a, b) => CompoundDiagram::and(self.resolve(a)?, self.resolve(b)?),
            Expr::Or(a, b) => CompoundDiagram::or(self.resolve(a)?, self.resolve(b)?),
        })
    }

    /// Prints the document back in the textual language.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (name, d) in &self.diagrams {
            out.push_str(&pretty_diagram(name, d));
        }
        for (name, c) in &self.compounds {
            let _ = writeln!(out, "compound {name} = {};", c.expr);
        }
        out
    }
}

fn semantic(item: &str, message: impl Into<String>) -> DslError {
    DslError::Semantic {
        item: item.to_string(),
        message: message.into(),
    }
}

fn zone_text(z: &Zone) -> String {
    let names: Vec<&str> = z.ins().iter().map(Label::as_str).collect();
    format!("{{{}}}", names.join(" "))
}

/// One `diagram` item in the textual language.
pub fn pretty_diagram(name: &str, d: &UnitaryDiagram) -> String {
    let mut out = String::new();
    let labels: Vec<&str> = d.labels().iter().map(Label::as_str).collect();
    let zones: Vec<String> = d
        .zones()
        .iter()
        .map(|z| {
            if d.is_shaded(z) {
                format!("{} shaded", zone_text(z))
            } else {
                zone_text(z)
            }
        })
        .collect();
    let _ = writeln!(out, "diagram {name} {{");
    let _ = writeln!(out, "  labels: {};", labels.join(", "));
    let _ = writeln!(out, "  zones: {};", zones.join(", "));
    for (r, &n) in d.spiders() {
        let feet: Vec<String> = r.iter().map(zone_text).collect();
        let count = if n == 1 {
            String::new()
        } else {
            format!("x{n} ")
        };
        let _ = writeln!(out, "  spider {count}in {};", feet.join(", "));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars
                .peek()
                .filter(|c| c.is_ascii_alphanumeric() || **c == '_')
            {
                word.push(c);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Word(word),
                line: l,
                col: k,
            });
        } else if "{};:,|()=".contains(c) {
            chars.next();
            col += 1;
            out.push(Spanned {
                tok: Tok::Sym(c),
                line: l,
                col: k,
            });
        } else {
            return Err(DslError::Syntax {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

const KEYWORDS: [&str; 10] = [
    "diagram", "compound", "labels", "zones", "spider", "in", "shaded", "and", "or", "TOP",
];

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

/// A zone as written, before it is checked against the label set.
struct RawZone {
    ins: Vec<(String, usize, usize)>,
    outs: Option<Vec<(String, usize, usize)>>,
    shaded: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        let t = &self.toks[self.at];
        Err(DslError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == &Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(x) if x == w)
    }

    fn sym(&mut self, c: char) -> Result<(), DslError> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn keyword(&mut self, w: &str) -> Result<(), DslError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected `{w}`, found {}", self.peek()))
        }
    }

    fn name(&mut self) -> Result<(String, usize, usize), DslError> {
        let t = &self.toks[self.at];
        let (line, col) = (t.line, t.col);
        match self.peek().clone() {
            Tok::Word(w) if !KEYWORDS.contains(&w.as_str()) && w != "BOTTOM" => {
                self.bump();
                Ok((w, line, col))
            }
            other => self.err(format!("expected a name, found {other}")),
        }
    }

    fn document(&mut self) -> Result<Document, DslError> {
        let mut doc = Document::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(doc),
                Tok::Word(w) if w == "diagram" => self.diagram(&mut doc)?,
                Tok::Word(w) if w == "compound" => {
                    self.bump();
                    let (name, _, _) = self.name()?;
                    self.sym('=')?;
                    let expr = self.expr()?;
                    self.sym(';')?;
                    doc.add_compound(&name, expr)?;
                }
                other => {
                    let msg = format!("expected `diagram` or `compound`, found {other}");
                    return self.err(msg);
                }
            }
        }
    }

    fn raw_zone(&mut self) -> Result<RawZone, DslError> {
        self.sym('{')?;
        let mut ins = Vec::new();
        while !self.is_sym('}') && !self.is_sym('|') {
            ins.push(self.name()?);
        }
        let outs = if self.is_sym('|') {
            self.bump();
            let mut outs = Vec::new();
            while !self.is_sym('}') {
                outs.push(self.name()?);
            }
            Some(outs)
        } else {
            None
        };
        self.sym('}')?;
        let shaded = self.is_word("shaded");
        if shaded {
            self.bump();
        }
        Ok(RawZone { ins, outs, shaded })
    }

    fn diagram(&mut self, doc: &mut Document) -> Result<(), DslError> {
        self.keyword("diagram")?;
        let (name, _, _) = self.name()?;
        self.sym('{')?;
        self.keyword("labels")?;
        self.sym(':')?;
        let mut labels = BTreeSet::new();
        loop {
            let (l, line, col) = self.name()?;
            let label = Label::new(l).map_err(|e| DslError::Syntax {
                line,
                col,
                message: e.to_string(),
            })?;
            if !labels.insert(label) {
                return Err(semantic(&name, "duplicate label"));
            }
            if !self.is_sym(',') {
                break;
            }
            self.bump();
        }
        self.sym(';')?;
        self.keyword("zones")?;
        self.sym(':')?;
        let mut zones = BTreeSet::new();
        let mut shaded = BTreeSet::new();
        loop {
            let raw = self.raw_zone()?;
            let z = build_zone(&name, &raw, &labels)?;
            if raw.shaded {
                shaded.insert(z.clone());
            }
            if !zones.insert(z.clone()) {
                return Err(semantic(&name, format!("duplicate zone {}", zone_text(&z))));
            }
            if !self.is_sym(',') {
                break;
            }
            self.bump();
        }
        self.sym(';')?;
        let mut spiders: BTreeMap<Region, u32> = BTreeMap::new();
        while self.is_word("spider") {
            self.bump();
            let count = self.spider_count()?;
            self.keyword("in")?;
            let mut feet = Vec::new();
            loop {
                let raw = self.raw_zone()?;
                if raw.shaded {
                    return self.err("`shaded` is not allowed in a habitat");
                }
                feet.push(build_zone(&name, &raw, &labels)?);
                if !self.is_sym(',') {
                    break;
                }
                self.bump();
            }
            self.sym(';')?;
            let habitat = Region::new(feet).map_err(|e| semantic(&name, e.to_string()))?;
            *spiders.entry(habitat).or_insert(0) += count;
        }
        self.sym('}')?;
        let d = UnitaryDiagram::new(
            labels,
            zones,
            shaded,
            spiders.into_iter().map(|(r, n)| SpiderEntry::new(n, r)),
        )
        .map_err(|e| semantic(&name, e.to_string()))?;
        doc.add_diagram(&name, d)
    }

    /// Parses an optional `xN` multiplicity.
    fn spider_count(&mut self) -> Result<u32, DslError> {
        let Tok::Word(w) = self.peek().clone() else {
            return Ok(1);
        };
        let digits = if w == "x" {
            self.bump();
            match self.peek().clone() {
                Tok::Word(n) => n,
                other => return self.err(format!("expected a count, found {other}")),
            }
        } else if let Some(rest) = w.strip_prefix('x').filter(|r| !r.is_empty()) {
            rest.to_string()
        } else {
            return Ok(1);
        };
        match digits.parse::<u32>() {
            Ok(n) if n > 0 => {
                self.bump();
                Ok(n)
            }
            _ => self.err(format!("invalid spider count `{digits}`")),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.conj()?;
        while self.is_word("or") {
            self.bump();
            lhs = Expr::Or(Box::new(lhs), Box::new(self.conj()?));
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.atom()?;
        while self.is_word("and") {
            self.bump();
            lhs = Expr::And(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        if self.is_sym('(') {
            self.bump();
            let e = self.expr()?;
            self.sym(')')?;
            return Ok(e);
        }
        if self.is_word("TOP") {
            self.bump();
            return Ok(Expr::Top);
        }
        if self.is_word("BOTTOM") {
            self.bump();
            return Ok(Expr::Bottom);
        }
        Ok(Expr::Name(self.name()?.0))
    }
}

fn build_zone(item: &str, raw: &RawZone, labels: &BTreeSet<Label>) -> Result<Zone, DslError> {
    let to_set = |names: &[(String, usize, usize)]| -> Result<BTreeSet<Label>, DslError> {
        names
            .iter()
            .map(|(n, line, col)| {
                let l = Label::new(n.clone()).map_err(|e| DslError::Syntax {
                    line: *line,
                    col: *col,
                    message: e.to_string(),
                })?;
                if labels.contains(&l) {
                    Ok(l)
                } else {
                    Err(semantic(item, format!("unknown label `{n}` in zone")))
                }
            })
            .collect()
    };
    let ins = to_set(&raw.ins)?;
    match &raw.outs {
        None => Zone::from_ins(ins, labels).map_err(|e| semantic(item, e.to_string())),
        Some(outs) => {
            let z = Zone::new(ins, to_set(outs)?)
                .map_err(|_| semantic(item, "ins/outs overlap in zone"))?;
            if &z.labels() != labels {
                return Err(semantic(
                    item,
                    format!("zone {} does not mention every label", zone_text(&z)),
                ));
            }
            Ok(z)
        }
    }
}

/// Parses a document.
pub fn parse(text: &str) -> Result<Document, DslError> {
    let toks = lex(text)?;
    Parser { toks, at: 0 }.document()
}

/// Parses a single compound expression against `doc`.
pub fn parse_expr(text: &str, doc: &Document) -> Result<CompoundDiagram, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return p.err(format!("unexpected {}", p.peek()));
    }
    doc.resolve(&e).map_err(|m| semantic(text, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    const D1: &str = "diagram d1 { labels: S1,S2,M,X; zones: {S1 M X},{S2 M X},{S1 S2 M X} shaded,{M X},{X},{}; spider in {S1 M X}; }";

    #[test]
    fn parses_corner() {
        let doc = parse(D1).unwrap();
        let d = &doc.diagrams["d1"];
        assert_eq!(d.zones().len(), 6);
        assert_eq!(d.shaded().len(), 1);
        assert_eq!(d.spider_count(), 1);
    }

    #[test]
    fn compound_precedence() {
        let text =
            format!("{D1}\ncompound c = d1 and d1 or TOP;\ncompound e = d1 and (d1 or BOTTOM);");
        let doc = parse(&text).unwrap();
        assert!(matches!(doc.compounds["c"].expr, Expr::Or(..)));
        assert!(matches!(doc.compounds["e"].expr, Expr::And(..)));
        assert_eq!(doc.compounds["e"].expr.to_string(), "d1 and (d1 or BOTTOM)");
    }

    #[test]
    fn overlap_is_an_error() {
        let text = "diagram d { labels: S1,S2,M,X; zones: {S1 S2 M X | S1},{}; }";
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("overlap"), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse("diagram d {\n  labels A;").unwrap_err();
        assert_eq!(
            err,
            DslError::Syntax {
                line: 2,
                col: 10,
                message: "expected `:`, found `A`".into()
            }
        );
        assert!(matches!(
            parse("diagram d { labels: A; zones: {}, {A}; } ?"),
            Err(DslError::Syntax { .. })
        ));
    }

    #[test]
    fn semantic_errors_name_the_item() {
        let missing = "diagram bad { labels: A; zones: {}, {A}; spider in {B}; }";
        assert!(matches!(parse(missing), Err(DslError::Semantic { item, .. }) if item == "bad"));
        let absent = "diagram bad { labels: A, B; zones: {}, {A}, {B}; spider in {A B}; }";
        assert!(parse(absent).unwrap_err().to_string().contains("absent"));
        let dup = "diagram bad { labels: A; zones: {}, {A}, {A}; }";
        assert!(parse(dup)
            .unwrap_err()
            .to_string()
            .contains("duplicate zone"));
        assert!(parse("compound c = nope;").is_err());
    }

    #[test]
    fn pretty_print_round_trips() {
        let text = format!(
            "{D1}\ndiagram two {{ labels: A; zones: {{}}, {{A}}; spider x2 in {{A}}, {{}}; }}\ncompound c = d1 and (d1 or d1 and TOP);"
        );
        let doc = parse(&text).unwrap();
        let again = parse(&doc.pretty()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(again.diagrams["two"].spider_count(), 2);
    }
}
