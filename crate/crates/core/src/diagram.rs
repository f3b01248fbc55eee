//! Unitary and compound spider diagrams.
//!
//! A unitary diagram is the 4-tuple of contour labels, zones, shaded zones
//! and spider identifiers. Every collection is stored in a `BTree*`, so the
//! derived `Ord` of each value type is already the canonical ordering
//! (lexicographic on sorted label names).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest label set for which zone enumeration is attempted.
pub const MAX_LABELS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("invalid label `{0}`: expected a nonempty identifier of letters, digits or `_`")]
    InvalidLabel(String),
    #[error("zone {0} lists a label both inside and outside")]
    ZoneOverlap(String),
    #[error("zone {zone} mentions label `{label}` which is not in the label set")]
    UnknownLabel { zone: String, label: String },
    #[error("a region needs at least one zone")]
    EmptyRegion,
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("compound mixes label sets {0} and {1}")]
    LabelMismatch(String, String),
    #[error("no subterm at position {0}")]
    BadPosition(Position),
    #[error("too many labels ({0}); at most {MAX_LABELS} are supported")]
    TooManyLabels(usize),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A contour label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(name: impl Into<String>) -> Result<Self, DiagramError> {
        let name = name.into();
        let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(Label(name))
        } else {
            Err(DiagramError::InvalidLabel(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Label {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label::new(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a label set from string names.
pub fn label_set<I, S>(names: I) -> Result<BTreeSet<Label>, DiagramError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    names.into_iter().map(Label::new).collect()
}

/// A zone `(ins, outs)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Zone {
    ins: BTreeSet<Label>,
    outs: BTreeSet<Label>,
}

impl Zone {
    pub fn new(ins: BTreeSet<Label>, outs: BTreeSet<Label>) -> Result<Self, DiagramError> {
        let zone = Zone { ins, outs };
        if zone.ins.intersection(&zone.outs).next().is_some() {
            return Err(DiagramError::ZoneOverlap(zone.to_string()));
        }
        Ok(zone)
    }

    /// The zone inside exactly `ins` with respect to `labels`.
    pub fn from_ins(ins: BTreeSet<Label>, labels: &BTreeSet<Label>) -> Result<Self, DiagramError> {
        if let Some(l) = ins.iter().find(|l| !labels.contains(*l)) {
            return Err(DiagramError::UnknownLabel {
                zone: fmt_ins(&ins),
                label: l.to_string(),
            });
        }
        let outs = labels.difference(&ins).cloned().collect();
        Ok(Zone { ins, outs })
    }

    /// Convenience constructor from string names; panics on malformed labels.
    pub fn of(ins: &[&str], labels: &BTreeSet<Label>) -> Zone {
        let ins = label_set(ins.iter().copied()).expect("valid label names");
        Zone::from_ins(ins, labels).expect("labels drawn from the label set")
    }

    pub fn ins(&self) -> &BTreeSet<Label> {
        &self.ins
    }

    pub fn outs(&self) -> &BTreeSet<Label> {
        &self.outs
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.ins.union(&self.outs).cloned().collect()
    }
}

fn fmt_ins(ins: &BTreeSet<Label>) -> String {
    let names: Vec<&str> = ins.iter().map(Label::as_str).collect();
    format!("{{{}}}", names.join(" "))
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_ins(&self.ins))
    }
}

/// A nonempty set of zones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Region(BTreeSet<Zone>);

impl Region {
    pub fn new(zones: impl IntoIterator<Item = Zone>) -> Result<Self, DiagramError> {
        let zones: BTreeSet<Zone> = zones.into_iter().collect();
        if zones.is_empty() {
            Err(DiagramError::EmptyRegion)
        } else {
            Ok(Region(zones))
        }
    }

    pub fn single(zone: Zone) -> Self {
        Region(BTreeSet::from([zone]))
    }

    pub fn zones(&self) -> &BTreeSet<Zone> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, zone: &Zone) -> bool {
        self.0.contains(zone)
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn with_zone(&self, zone: Zone) -> Region {
        let mut zones = self.0.clone();
        zones.insert(zone);
        Region(zones)
    }

    pub fn union(&self, other: &Region) -> Region {
        Region(self.0.union(&other.0).cloned().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Zone> {
        self.0.iter()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|z| z.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `count` spiders sharing one habitat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpiderEntry {
    pub count: u32,
    pub habitat: Region,
}

impl SpiderEntry {
    pub fn new(count: u32, habitat: Region) -> Self {
        SpiderEntry { count, habitat }
    }

    pub fn one(habitat: Region) -> Self {
        SpiderEntry { count: 1, habitat }
    }
}

/// One violated well-formedness clause of a unitary diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingOuterZone,
    UncoveredLabel(Label),
    ZoneLabelMismatch(Zone),
    ZoneOverlap(Zone),
    ShadedNotAZone(Zone),
    HabitatZoneAbsent { habitat: Region, zone: Zone },
    ZeroCount(Region),
    DuplicateHabitat(Region),
    TooManyLabels(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingOuterZone => write!(f, "missing outer zone"),
            Violation::UncoveredLabel(l) => write!(f, "label `{l}` is inside no zone"),
            Violation::ZoneLabelMismatch(z) => {
                write!(f, "zone {z} does not partition the label set")
            }
            Violation::ZoneOverlap(z) => write!(f, "zone {z} has overlapping ins and outs"),
            Violation::ShadedNotAZone(z) => write!(f, "shaded zone {z} is not a zone"),
            Violation::HabitatZoneAbsent { habitat, zone } => {
                write!(
                    f,
                    "habitat {habitat} uses zone {zone}, which is absent from the diagram"
                )
            }
            Violation::ZeroCount(r) => write!(f, "spider entry on {r} has count 0"),
            Violation::DuplicateHabitat(r) => write!(f, "habitat {r} listed twice"),
            Violation::TooManyLabels(n) => write!(f, "{n} labels exceed the supported maximum"),
        }
    }
}

/// A unitary spider diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitaryDiagram {
    labels: BTreeSet<Label>,
    zones: BTreeSet<Zone>,
    shaded: BTreeSet<Zone>,
    spiders: BTreeMap<Region, u32>,
}

impl UnitaryDiagram {
    /// Builds and validates a diagram.
    pub fn new(
        labels: BTreeSet<Label>,
        zones: impl IntoIterator<Item = Zone>,
        shaded: impl IntoIterator<Item = Zone>,
        spiders: impl IntoIterator<Item = SpiderEntry>,
    ) -> Result<Self, DiagramError> {
        let mut violations = Vec::new();
        let mut map = BTreeMap::new();
        for entry in spiders {
            if map.contains_key(&entry.habitat) {
                violations.push(Violation::DuplicateHabitat(entry.habitat.clone()));
            }
            map.insert(entry.habitat, entry.count);
        }
        let d = UnitaryDiagram {
            labels,
            zones: zones.into_iter().collect(),
            shaded: shaded.into_iter().collect(),
            spiders: map,
        };
        violations.extend(validate_unitary(&d));
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(DiagramError::Invalid(violations))
        }
    }

    /// Builds a diagram without checking any invariant.
    pub fn from_parts_unchecked(
        labels: BTreeSet<Label>,
        zones: BTreeSet<Zone>,
        shaded: BTreeSet<Zone>,
        spiders: BTreeMap<Region, u32>,
    ) -> Self {
        UnitaryDiagram {
            labels,
            zones,
            shaded,
            spiders,
        }
    }

    pub fn labels(&self) -> &BTreeSet<Label> {
        &self.labels
    }

    pub fn zones(&self) -> &BTreeSet<Zone> {
        &self.zones
    }

    pub fn shaded(&self) -> &BTreeSet<Zone> {
        &self.shaded
    }

    /// Spider identifiers as habitat -> count.
    pub fn spiders(&self) -> &BTreeMap<Region, u32> {
        &self.spiders
    }

    pub fn spider_entries(&self) -> impl Iterator<Item = SpiderEntry> + '_ {
        self.spiders
            .iter()
            .map(|(r, &n)| SpiderEntry::new(n, r.clone()))
    }

    /// Total number of spiders, counting multiplicity.
    pub fn spider_count(&self) -> u32 {
        self.spiders.values().sum()
    }

    pub fn count_in(&self, habitat: &Region) -> u32 {
        self.spiders.get(habitat).copied().unwrap_or(0)
    }

    pub fn is_shaded(&self, zone: &Zone) -> bool {
        self.shaded.contains(zone)
    }

    pub fn zone_by_ins(&self, ins: &BTreeSet<Label>) -> Option<&Zone> {
        self.zones.iter().find(|z| z.ins() == ins)
    }

    /// The same diagram with its spiders replaced.
    pub fn with_spiders(&self, spiders: BTreeMap<Region, u32>) -> UnitaryDiagram {
        UnitaryDiagram {
            labels: self.labels.clone(),
            zones: self.zones.clone(),
            shaded: self.shaded.clone(),
            spiders,
        }
    }

    /// Adds one spider with the given habitat.
    pub fn add_spider(&self, habitat: Region) -> UnitaryDiagram {
        let mut spiders = self.spiders.clone();
        *spiders.entry(habitat).or_insert(0) += 1;
        self.with_spiders(spiders)
    }

    /// Removes one spider with the given habitat; `None` if there is none.
    pub fn remove_spider(&self, habitat: &Region) -> Option<UnitaryDiagram> {
        let mut spiders = self.spiders.clone();
        let n = spiders.get_mut(habitat)?;
        *n -= 1;
        if *n == 0 {
            spiders.remove(habitat);
        }
        Some(self.with_spiders(spiders))
    }

    /// `d` with every zone absent from it, i.e. the full powerset family minus `Z(d)`.
    pub fn missing_zones(&self) -> BTreeSet<Zone> {
        all_zones(&self.labels)
            .into_iter()
            .filter(|z| !self.zones.contains(z))
            .collect()
    }

    pub(crate) fn write_key(&self, out: &mut String) {
        out.push_str("U(");
        push_joined(out, self.labels.iter().map(Label::as_str), ",");
        out.push('|');
        for (i, z) in self.zones.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&z.to_string());
        }
        out.push('|');
        for (i, z) in self.shaded.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&z.to_string());
        }
        out.push('|');
        for (i, (r, n)) in self.spiders.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&format!("{n}*{r}"));
        }
        out.push(')');
    }
}

fn push_joined<'a>(out: &mut String, items: impl Iterator<Item = &'a str>, sep: &str) {
    for (i, s) in items.enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        out.push_str(s);
    }
}

impl fmt::Display for UnitaryDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_key(&mut s);
        f.write_str(&s)
    }
}

/// Every zone `(a, L - a)` for `a ⊆ L`, in canonical order.
pub fn all_zones(labels: &BTreeSet<Label>) -> BTreeSet<Zone> {
    let list: Vec<&Label> = labels.iter().collect();
    let n = list.len().min(MAX_LABELS);
    (0u32..(1u32 << n))
        .map(|mask| {
            let ins = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| list[i].clone())
                .collect();
            Zone::from_ins(ins, labels).expect("ins drawn from labels")
        })
        .collect()
}

/// Checks every clause of the unitary diagram definition.
pub fn validate_unitary(d: &UnitaryDiagram) -> Vec<Violation> {
    let mut out = Vec::new();
    if d.labels.len() > MAX_LABELS {
        out.push(Violation::TooManyLabels(d.labels.len()));
    }
    for z in &d.zones {
        if z.ins.intersection(&z.outs).next().is_some() {
            out.push(Violation::ZoneOverlap(z.clone()));
        } else if z.labels() != d.labels {
            out.push(Violation::ZoneLabelMismatch(z.clone()));
        }
    }
    for l in &d.labels {
        if !d.zones.iter().any(|z| z.ins.contains(l)) {
            out.push(Violation::UncoveredLabel(l.clone()));
        }
    }
    let outer = Zone {
        ins: BTreeSet::new(),
        outs: d.labels.clone(),
    };
    if !d.zones.contains(&outer) {
        out.push(Violation::MissingOuterZone);
    }
    for z in &d.shaded {
        if !d.zones.contains(z) {
            out.push(Violation::ShadedNotAZone(z.clone()));
        }
    }
    for (habitat, &count) in &d.spiders {
        if count == 0 {
            out.push(Violation::ZeroCount(habitat.clone()));
        }
        for z in habitat.iter() {
            if !d.zones.contains(z) {
                out.push(Violation::HabitatZoneAbsent {
                    habitat: habitat.clone(),
                    zone: z.clone(),
                });
            }
        }
    }
    out
}

/// Path from the root of a compound: `0` selects the left child, `1` the right.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(pub Vec<u8>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: u8) -> Position {
        let mut p = self.0.clone();
        p.push(i);
        Position(p)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// A tree of unitary diagrams under conjunction and disjunction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CompoundDiagram {
    Unit(UnitaryDiagram),
    Top,
    Bottom,
    And(Box<CompoundDiagram>, Box<CompoundDiagram>),
    Or(Box<CompoundDiagram>, Box<CompoundDiagram>),
}

impl From<UnitaryDiagram> for CompoundDiagram {
    fn from(d: UnitaryDiagram) -> Self {
        CompoundDiagram::Unit(d)
    }
}

impl CompoundDiagram {
    pub fn and(a: impl Into<CompoundDiagram>, b: impl Into<CompoundDiagram>) -> Self {
        CompoundDiagram::And(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn or(a: impl Into<CompoundDiagram>, b: impl Into<CompoundDiagram>) -> Self {
        CompoundDiagram::Or(Box::new(a.into()), Box::new(b.into()))
    }

    /// Right-nested conjunction of `items`; `Top` when empty.
    pub fn and_all(items: impl IntoIterator<Item = CompoundDiagram>) -> Self {
        let mut items: Vec<CompoundDiagram> = items.into_iter().collect();
        let Some(mut acc) = items.pop() else {
            return CompoundDiagram::Top;
        };
        while let Some(next) = items.pop() {
            acc = CompoundDiagram::and(next, acc);
        }
        acc
    }

    pub fn as_unit(&self) -> Option<&UnitaryDiagram> {
        match self {
            CompoundDiagram::Unit(d) => Some(d),
            _ => None,
        }
    }

    /// Unitary leaves, left to right.
    pub fn units(&self) -> Vec<&UnitaryDiagram> {
        let mut out = Vec::new();
        self.collect_units(&mut out);
        out
    }

    fn collect_units<'a>(&'a self, out: &mut Vec<&'a UnitaryDiagram>) {
        match self {
            CompoundDiagram::Unit(d) => out.push(d),
            CompoundDiagram::Top | CompoundDiagram::Bottom => {}
            CompoundDiagram::And(a, b) | CompoundDiagram::Or(a, b) => {
                a.collect_units(out);
                b.collect_units(out);
            }
        }
    }

    /// The shared label set, or `None` when the compound has no unitary leaf.
    pub fn labels(&self) -> Option<&BTreeSet<Label>> {
        self.units().first().map(|d| d.labels())
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            CompoundDiagram::And(a, b) | CompoundDiagram::Or(a, b) => {
                a.leaf_count() + b.leaf_count()
            }
            _ => 1,
        }
    }

    /// Validates every leaf and the shared label set.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let units = self.units();
        let mut violations = Vec::new();
        for d in &units {
            violations.extend(validate_unitary(d));
        }
        if !violations.is_empty() {
            return Err(DiagramError::Invalid(violations));
        }
        if let Some(first) = units.first() {
            if let Some(other) = units.iter().find(|d| d.labels() != first.labels()) {
                return Err(DiagramError::LabelMismatch(
                    fmt_labels(first.labels()),
                    fmt_labels(other.labels()),
                ));
            }
        }
        Ok(())
    }

    pub fn subterm(&self, pos: &Position) -> Option<&CompoundDiagram> {
        let mut cur = self;
        for &step in &pos.0 {
            cur = match (cur, step) {
                (CompoundDiagram::And(a, _) | CompoundDiagram::Or(a, _), 0) => a,
                (CompoundDiagram::And(_, b) | CompoundDiagram::Or(_, b), 1) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// A copy with the subterm at `pos` replaced by `new`.
    pub fn replace_at(
        &self,
        pos: &Position,
        new: CompoundDiagram,
    ) -> Result<CompoundDiagram, DiagramError> {
        fn go(cur: &CompoundDiagram, path: &[u8], new: CompoundDiagram) -> Option<CompoundDiagram> {
            let Some((&step, rest)) = path.split_first() else {
                return Some(new);
            };
            match cur {
                CompoundDiagram::And(a, b) => Some(match step {
                    0 => CompoundDiagram::And(Box::new(go(a, rest, new)?), b.clone()),
                    1 => CompoundDiagram::And(a.clone(), Box::new(go(b, rest, new)?)),
                    _ => return None,
                }),
                CompoundDiagram::Or(a, b) => Some(match step {
                    0 => CompoundDiagram::Or(Box::new(go(a, rest, new)?), b.clone()),
                    1 => CompoundDiagram::Or(a.clone(), Box::new(go(b, rest, new)?)),
                    _ => return None,
                }),
                _ => None,
            }
        }
        go(self, &pos.0, new).ok_or_else(|| DiagramError::BadPosition(pos.clone()))
    }

    /// Every position in preorder (root first, then left subtree, then right).
    pub fn positions(&self) -> Vec<Position> {
        fn go(cur: &CompoundDiagram, here: Position, out: &mut Vec<Position>) {
            out.push(here.clone());
            if let CompoundDiagram::And(a, b) | CompoundDiagram::Or(a, b) = cur {
                go(a, here.child(0), out);
                go(b, here.child(1), out);
            }
        }
        let mut out = Vec::new();
        go(self, Position::root(), &mut out);
        out
    }

    /// Canonical key without validation; used internally for deduplication.
    pub fn canonical_key(&self) -> String {
        match self {
            CompoundDiagram::Unit(d) => {
                let mut s = String::new();
                d.write_key(&mut s);
                s
            }
            CompoundDiagram::Top => "TOP".to_string(),
            CompoundDiagram::Bottom => "BOTTOM".to_string(),
            CompoundDiagram::And(a, b) => sorted_pair("AND", a, b),
            CompoundDiagram::Or(a, b) => sorted_pair("OR", a, b),
        }
    }

    /// The same compound with the children of every connective in canonical order.
    pub fn normalized(&self) -> CompoundDiagram {
        match self {
            CompoundDiagram::And(a, b) => {
                let (x, y) = ordered(a.normalized(), b.normalized());
                CompoundDiagram::And(Box::new(x), Box::new(y))
            }
            CompoundDiagram::Or(a, b) => {
                let (x, y) = ordered(a.normalized(), b.normalized());
                CompoundDiagram::Or(Box::new(x), Box::new(y))
            }
            other => other.clone(),
        }
    }
}

fn ordered(a: CompoundDiagram, b: CompoundDiagram) -> (CompoundDiagram, CompoundDiagram) {
    if a.canonical_key() <= b.canonical_key() {
        (a, b)
    } else {
        (b, a)
    }
}

fn sorted_pair(op: &str, a: &CompoundDiagram, b: &CompoundDiagram) -> String {
    let (ka, kb) = (a.canonical_key(), b.canonical_key());
    let (x, y) = if ka <= kb { (ka, kb) } else { (kb, ka) };
    format!("{op}({x},{y})")
}

fn fmt_labels(labels: &BTreeSet<Label>) -> String {
    let names: Vec<&str> = labels.iter().map(Label::as_str).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for CompoundDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompoundDiagram::Unit(d) => write!(f, "{d}"),
            CompoundDiagram::Top => f.write_str("TOP"),
            CompoundDiagram::Bottom => f.write_str("BOTTOM"),
            CompoundDiagram::And(a, b) => write!(f, "({a} and {b})"),
            CompoundDiagram::Or(a, b) => write!(f, "({a} or {b})"),
        }
    }
}

/// Canonical byte string of a valid compound.
///
/// Equal strings iff the compounds are structurally identical up to set
/// ordering and the order of conjuncts and disjuncts.
pub fn canonical_form(d: &CompoundDiagram) -> Result<String, DiagramError> {
    d.validate()?;
    Ok(d.canonical_key())
}

/// `{(a, L - a) | a ⊆ L} \ Z(d)`.
pub fn missing_zones(d: &UnitaryDiagram) -> BTreeSet<Zone> {
    d.missing_zones()
}
