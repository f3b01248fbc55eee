//! The inference rules, applied at any position of a compound.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{CompoundDiagram, DiagramError, Position, Region, UnitaryDiagram, Zone};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleName {
    Combine,
    ConjElim,
    SplitSpider,
    AddFeet,
    EraseSpider,
    CopySpider,
    IdempotencyIntro,
    IdempotencyElim,
}

impl RuleName {
    pub const ALL: [RuleName; 8] = [
        RuleName::Combine,
        RuleName::ConjElim,
        RuleName::SplitSpider,
        RuleName::AddFeet,
        RuleName::EraseSpider,
        RuleName::CopySpider,
        RuleName::IdempotencyIntro,
        RuleName::IdempotencyElim,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Combine => "Combine",
            RuleName::ConjElim => "ConjElim",
            RuleName::SplitSpider => "SplitSpider",
            RuleName::AddFeet => "AddFeet",
            RuleName::EraseSpider => "EraseSpider",
            RuleName::CopySpider => "CopySpider",
            RuleName::IdempotencyIntro => "IdempotencyIntro",
            RuleName::IdempotencyElim => "IdempotencyElim",
        }
    }

    /// Both directions of idempotency share the family name `Idempotency`.
    pub fn family(self) -> &'static str {
        match self {
            RuleName::IdempotencyIntro | RuleName::IdempotencyElim => "Idempotency",
            other => other.as_str(),
        }
    }

    /// Number of premises the rule consumes.
    pub fn arity(self) -> usize {
        match self {
            RuleName::Combine | RuleName::CopySpider => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleName {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, RuleError> {
        RuleName::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| RuleError::UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// The `index`-th spider with the given habitat.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpiderAddr {
    pub habitat: Region,
    pub index: u32,
}

impl SpiderAddr {
    pub fn new(habitat: Region, index: u32) -> Self {
        SpiderAddr { habitat, index }
    }

    pub fn first(habitat: Region) -> Self {
        SpiderAddr { habitat, index: 0 }
    }
}

impl fmt::Display for SpiderAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.habitat, self.index)
    }
}

/// A rule together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Binary: the subterm of the first input with the whole second input.
    Combine,
    ConjElim {
        side: Side,
    },
    /// ConjElim stated on a combined unitary diagram with its decomposition.
    ConjElimUnitary {
        left: UnitaryDiagram,
        right: UnitaryDiagram,
        side: Side,
    },
    SplitSpider {
        spider: SpiderAddr,
        r1: Region,
        r2: Region,
    },
    AddFeet {
        spider: SpiderAddr,
        zone: Zone,
    },
    EraseSpider {
        spider: SpiderAddr,
    },
    /// Binary: copies `spider` of the second input into the subterm of the first.
    CopySpider {
        r1: Region,
        r2: Region,
        xi: Vec<(SpiderAddr, SpiderAddr)>,
        spider: SpiderAddr,
    },
    IdempotencyIntro,
    IdempotencyElim,
}

impl Rule {
    pub fn name(&self) -> RuleName {
        match self {
            Rule::Combine => RuleName::Combine,
            Rule::ConjElim { .. } | Rule::ConjElimUnitary { .. } => RuleName::ConjElim,
            Rule::SplitSpider { .. } => RuleName::SplitSpider,
            Rule::AddFeet { .. } => RuleName::AddFeet,
            Rule::EraseSpider { .. } => RuleName::EraseSpider,
            Rule::CopySpider { .. } => RuleName::CopySpider,
            Rule::IdempotencyIntro => RuleName::IdempotencyIntro,
            Rule::IdempotencyElim => RuleName::IdempotencyElim,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleInstance {
    pub position: Position,
    pub rule: Rule,
}

impl RuleInstance {
    pub fn new(position: Position, rule: Rule) -> Self {
        RuleInstance { position, rule }
    }

    pub fn at_root(rule: Rule) -> Self {
        RuleInstance::new(Position::root(), rule)
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.rule.name(), self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("{rule} takes {expected} input(s), got {got}")]
    Arity {
        rule: RuleName,
        expected: usize,
        got: usize,
    },
    #[error("no subterm at position {0}")]
    BadPosition(Position),
    #[error("expected {expected} at position {position}")]
    Shape {
        expected: &'static str,
        position: Position,
    },
    #[error("combine needs alpha-diagrams")]
    NotAlpha,
    #[error("combine needs equal zone sets")]
    ZoneMismatch,
    #[error("inputs have different label sets")]
    LabelMismatch,
    #[error("no spider {0}")]
    NoSuchSpider(SpiderAddr),
    #[error("{r1} and {r2} do not partition the habitat")]
    NotAPartition { r1: Region, r2: Region },
    #[error("zone {0} is not a zone of the diagram")]
    ZoneAbsent(Zone),
    #[error("zone {0} is already in the habitat")]
    AlreadyInHabitat(Zone),
    #[error("spider habitat {0} touches a shaded zone")]
    TouchesShading(Region),
    #[error("disjuncts are not identical")]
    DistinctDisjuncts,
    #[error("witness does not recombine to the diagram")]
    BadWitness,
    #[error("copy spider clause {clause}: {reason}")]
    CopyClause { clause: u8, reason: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// True iff every spider's habitat is a single zone.
pub fn is_alpha(d: &UnitaryDiagram) -> bool {
    d.spiders().keys().all(|r| r.len() == 1)
}

/// Combines two diagrams into one.
///
/// `Top` is the identity and `Bottom` absorbs; otherwise both inputs must be
/// alpha-diagrams over the same zones.
pub fn combine(d0: &CompoundDiagram, d1: &CompoundDiagram) -> Result<CompoundDiagram, RuleError> {
    use CompoundDiagram::*;
    match (d0, d1) {
        (Bottom, Unit(_) | Top | Bottom) | (Unit(_) | Top, Bottom) => Ok(Bottom),
        (Top, other @ (Unit(_) | Top)) | (other @ Unit(_), Top) => Ok(other.clone()),
        (Unit(a), Unit(b)) => combine_unitary(a, b),
        _ => Err(RuleError::Shape {
            expected: "a unitary diagram, TOP or BOTTOM",
            position: Position::root(),
        }),
    }
}

fn combine_unitary(a: &UnitaryDiagram, b: &UnitaryDiagram) -> Result<CompoundDiagram, RuleError> {
    if a.labels() != b.labels() {
        return Err(RuleError::LabelMismatch);
    }
    if !is_alpha(a) || !is_alpha(b) {
        return Err(RuleError::NotAlpha);
    }
    if a.zones() != b.zones() {
        return Err(RuleError::ZoneMismatch);
    }
    for z in a.zones() {
        let r = Region::single(z.clone());
        let (ca, cb) = (a.count_in(&r), b.count_in(&r));
        if (a.is_shaded(z) && cb > ca) || (b.is_shaded(z) && ca > cb) {
            return Ok(CompoundDiagram::Bottom);
        }
    }
    let mut spiders: BTreeMap<Region, u32> = a.spiders().clone();
    for (r, &n) in b.spiders() {
        let e = spiders.entry(r.clone()).or_insert(0);
        *e = (*e).max(n);
    }
    let shaded = a.shaded().union(b.shaded()).cloned().collect();
    Ok(CompoundDiagram::Unit(UnitaryDiagram::from_parts_unchecked(
        a.labels().clone(),
        a.zones().clone(),
        shaded,
        spiders,
    )))
}

fn check_spider(d: &UnitaryDiagram, s: &SpiderAddr) -> Result<(), RuleError> {
    if s.index < d.count_in(&s.habitat) {
        Ok(())
    } else {
        Err(RuleError::NoSuchSpider(s.clone()))
    }
}

/// Moves one spider from its habitat to `to`.
fn move_spider(d: &UnitaryDiagram, from: &Region, to: Region) -> UnitaryDiagram {
    d.remove_spider(from)
        .expect("caller checked the spider exists")
        .add_spider(to)
}

pub fn split_spider(
    d: &UnitaryDiagram,
    spider: &SpiderAddr,
    r1: &Region,
    r2: &Region,
) -> Result<CompoundDiagram, RuleError> {
    check_spider(d, spider)?;
    let partition =
        !r1.is_empty() && !r2.is_empty() && r1.is_disjoint(r2) && r1.union(r2) == spider.habitat;
    if !partition {
        return Err(RuleError::NotAPartition {
            r1: r1.clone(),
            r2: r2.clone(),
        });
    }
    Ok(CompoundDiagram::or(
        move_spider(d, &spider.habitat, r1.clone()),
        move_spider(d, &spider.habitat, r2.clone()),
    ))
}

pub fn add_feet(
    d: &UnitaryDiagram,
    spider: &SpiderAddr,
    zone: &Zone,
) -> Result<UnitaryDiagram, RuleError> {
    check_spider(d, spider)?;
    if !d.zones().contains(zone) {
        return Err(RuleError::ZoneAbsent(zone.clone()));
    }
    if spider.habitat.contains(zone) {
        return Err(RuleError::AlreadyInHabitat(zone.clone()));
    }
    Ok(move_spider(
        d,
        &spider.habitat,
        spider.habitat.with_zone(zone.clone()),
    ))
}

pub fn erase_spider(d: &UnitaryDiagram, spider: &SpiderAddr) -> Result<UnitaryDiagram, RuleError> {
    check_spider(d, spider)?;
    if spider.habitat.iter().any(|z| d.is_shaded(z)) {
        return Err(RuleError::TouchesShading(spider.habitat.clone()));
    }
    Ok(d.remove_spider(&spider.habitat).expect("checked"))
}

/// ConjElim on a unitary diagram known to be `combine(left, right)`.
pub fn conj_elim_unitary(
    d: &UnitaryDiagram,
    left: &UnitaryDiagram,
    right: &UnitaryDiagram,
    side: Side,
) -> Result<UnitaryDiagram, RuleError> {
    let recombined = combine_unitary(left, right)?;
    if recombined.canonical_key() != CompoundDiagram::Unit(d.clone()).canonical_key() {
        return Err(RuleError::BadWitness);
    }
    Ok(match side {
        Side::Left => left.clone(),
        Side::Right => right.clone(),
    })
}

fn copy_err(clause: u8, reason: impl Into<String>) -> RuleError {
    RuleError::CopyClause {
        clause,
        reason: reason.into(),
    }
}

/// Spiders of `d` whose habitat lies within `r`, as `(habitat, count)`.
fn spiders_within(d: &UnitaryDiagram, r: &Region) -> Vec<(Region, u32)> {
    d.spiders()
        .iter()
        .filter(|(h, _)| h.is_subset(r))
        .map(|(h, &n)| (h.clone(), n))
        .collect()
}

/// Copies spider `s` of `d2` into `d1`, returning `And(d1', d2)`.
///
/// Errors name the violated clause: 0 correspondence of `r1`/`r2`, 1
/// shading in `r1`, 2 spiders straddling `r1`, 3 the map `xi`, 4 the
/// choice of `s`.
pub fn copy_spider(
    d1: &UnitaryDiagram,
    d2: &UnitaryDiagram,
    r1: &Region,
    r2: &Region,
    xi: &[(SpiderAddr, SpiderAddr)],
    s: &SpiderAddr,
) -> Result<CompoundDiagram, RuleError> {
    if d1.labels() != d2.labels() {
        return Err(RuleError::LabelMismatch);
    }
    if r1 != r2 {
        return Err(copy_err(0, "regions do not correspond"));
    }
    if !r1.iter().all(|z| d1.zones().contains(z)) || !r2.iter().all(|z| d2.zones().contains(z)) {
        return Err(copy_err(0, "region is not made of zones of its diagram"));
    }
    if r1.iter().any(|z| d1.is_shaded(z)) {
        return Err(copy_err(1, "r1 contains a shaded zone"));
    }
    if let Some(h) = d1
        .spiders()
        .keys()
        .find(|h| !h.is_disjoint(r1) && !h.is_subset(r1))
    {
        return Err(copy_err(2, format!("spider with habitat {h} straddles r1")));
    }

    let dom = spiders_within(d1, r1);
    let cod = spiders_within(d2, r2);
    let dom_size: u32 = dom.iter().map(|(_, n)| n).sum();
    let cod_size: u32 = cod.iter().map(|(_, n)| n).sum();
    let valid = |spiders: &[(Region, u32)], a: &SpiderAddr| {
        spiders.iter().any(|(h, n)| h == &a.habitat && a.index < *n)
    };
    let mut sources = std::collections::BTreeSet::new();
    let mut targets = std::collections::BTreeSet::new();
    for (a, b) in xi {
        if !valid(&dom, a) {
            return Err(copy_err(3, format!("{a} is not a spider of S(r1, d1)")));
        }
        if !valid(&cod, b) {
            return Err(copy_err(3, format!("{b} is not a spider of S(r2, d2)")));
        }
        if a.habitat != b.habitat {
            return Err(copy_err(3, format!("{a} and {b} have different habitats")));
        }
        if !sources.insert(a) {
            return Err(copy_err(3, format!("{a} is mapped twice")));
        }
        if !targets.insert(b) {
            return Err(copy_err(3, "map is not injective"));
        }
    }
    if sources.len() as u32 != dom_size {
        return Err(copy_err(3, "map is not total on S(r1, d1)"));
    }
    if targets.len() as u32 >= cod_size {
        return Err(copy_err(3, "map is surjective"));
    }
    if !valid(&cod, s) || targets.contains(s) {
        return Err(copy_err(
            4,
            format!("{s} is not in S(r2, d2) outside the image"),
        ));
    }
    if !s.habitat.iter().all(|z| d1.zones().contains(z)) {
        return Err(copy_err(
            4,
            format!("no region of d1 corresponds to {}", s.habitat),
        ));
    }
    Ok(CompoundDiagram::and(
        d1.add_spider(s.habitat.clone()),
        d2.clone(),
    ))
}

fn unit_at<'a>(d: &'a CompoundDiagram, pos: &Position) -> Result<&'a UnitaryDiagram, RuleError> {
    subterm(d, pos)?.as_unit().ok_or_else(|| RuleError::Shape {
        expected: "a unitary diagram",
        position: pos.clone(),
    })
}

fn subterm<'a>(d: &'a CompoundDiagram, pos: &Position) -> Result<&'a CompoundDiagram, RuleError> {
    d.subterm(pos)
        .ok_or_else(|| RuleError::BadPosition(pos.clone()))
}

/// Applies `instance` to `inputs` (one for unary rules, two for binary).
///
/// The rule rewrites the subterm of `inputs[0]` at the instance position;
/// a binary rule's second input is used whole.
pub fn apply(
    instance: &RuleInstance,
    inputs: &[&CompoundDiagram],
) -> Result<CompoundDiagram, RuleError> {
    let name = instance.rule.name();
    if inputs.len() != name.arity() {
        return Err(RuleError::Arity {
            rule: name,
            expected: name.arity(),
            got: inputs.len(),
        });
    }
    let d = inputs[0];
    let pos = &instance.position;
    let replacement = match &instance.rule {
        Rule::Combine => {
            let sub = subterm(d, pos)?;
            if let (Some(a), Some(b)) = (d.labels(), inputs[1].labels()) {
                if a != b {
                    return Err(RuleError::LabelMismatch);
                }
            }
            combine(sub, inputs[1]).map_err(|e| match e {
                RuleError::Shape { expected, .. } => RuleError::Shape {
                    expected,
                    position: pos.clone(),
                },
                e => e,
            })?
        }
        Rule::CopySpider { r1, r2, xi, spider } => {
            let d2 = inputs[1].as_unit().ok_or(RuleError::Shape {
                expected: "a unitary second input",
                position: Position::root(),
            })?;
            copy_spider(unit_at(d, pos)?, d2, r1, r2, xi, spider)?
        }
        Rule::ConjElim { side } => match subterm(d, pos)? {
            CompoundDiagram::And(a, b) => match side {
                Side::Left => (**a).clone(),
                Side::Right => (**b).clone(),
            },
            _ => {
                return Err(RuleError::Shape {
                    expected: "a conjunction",
                    position: pos.clone(),
                })
            }
        },
        Rule::ConjElimUnitary { left, right, side } => {
            conj_elim_unitary(unit_at(d, pos)?, left, right, *side)?.into()
        }
        Rule::SplitSpider { spider, r1, r2 } => split_spider(unit_at(d, pos)?, spider, r1, r2)?,
        Rule::AddFeet { spider, zone } => add_feet(unit_at(d, pos)?, spider, zone)?.into(),
        Rule::EraseSpider { spider } => erase_spider(unit_at(d, pos)?, spider)?.into(),
        Rule::IdempotencyIntro => {
            let sub = subterm(d, pos)?;
            CompoundDiagram::or(sub.clone(), sub.clone())
        }
        Rule::IdempotencyElim => match subterm(d, pos)? {
            CompoundDiagram::Or(a, b) => {
                if a.canonical_key() != b.canonical_key() {
                    return Err(RuleError::DistinctDisjuncts);
                }
                (**a).clone()
            }
            _ => {
                return Err(RuleError::Shape {
                    expected: "a disjunction",
                    position: pos.clone(),
                })
            }
        },
    };
    Ok(d.replace_at(pos, replacement)?)
}

/// Which rules an enumeration may produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleFilter(pub Vec<RuleName>);

impl RuleFilter {
    pub fn all() -> Self {
        RuleFilter(RuleName::ALL.to_vec())
    }

    pub fn only(names: &[RuleName]) -> Self {
        RuleFilter(names.to_vec())
    }

    pub fn allows(&self, name: RuleName) -> bool {
        self.0.contains(&name)
    }
}

impl Default for RuleFilter {
    fn default() -> Self {
        RuleFilter::all()
    }
}

/// Every legal unary instance on `d`, in a fixed order.
///
/// Positions are visited in preorder. SplitSpider partitions are
/// `({z}, rest)` for each foot `z`, and spiders are always addressed by
/// ordinal 0 since spiders sharing a habitat are interchangeable.
pub fn applicable_instances(d: &CompoundDiagram, filter: &RuleFilter) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for pos in d.positions() {
        let sub = d.subterm(&pos).expect("own position");
        let mut push = |rule: Rule| {
            if filter.allows(rule.name()) {
                out.push(RuleInstance::new(pos.clone(), rule));
            }
        };
        if let CompoundDiagram::And(..) = sub {
            push(Rule::ConjElim { side: Side::Left });
            push(Rule::ConjElim { side: Side::Right });
        }
        if let CompoundDiagram::Unit(u) = sub {
            for habitat in u.spiders().keys() {
                if habitat.len() < 2 {
                    continue;
                }
                for z in habitat.iter() {
                    let r1 = Region::single(z.clone());
                    let rest = habitat.zones().iter().filter(|x| *x != z).cloned();
                    push(Rule::SplitSpider {
                        spider: SpiderAddr::first(habitat.clone()),
                        r1,
                        r2: Region::new(rest).expect("habitat has another zone"),
                    });
                }
            }
            for habitat in u.spiders().keys() {
                for z in u.zones().iter().filter(|z| !habitat.contains(z)) {
                    push(Rule::AddFeet {
                        spider: SpiderAddr::first(habitat.clone()),
                        zone: z.clone(),
                    });
                }
            }
            for habitat in u.spiders().keys() {
                if habitat.iter().all(|z| !u.is_shaded(z)) {
                    push(Rule::EraseSpider {
                        spider: SpiderAddr::first(habitat.clone()),
                    });
                }
            }
        }
        push(Rule::IdempotencyIntro);
        if let CompoundDiagram::Or(a, b) = sub {
            if a.canonical_key() == b.canonical_key() {
                push(Rule::IdempotencyElim);
            }
        }
    }
    out
}

/// Positions where `Combine` with `other` as second input applies.
pub fn combine_instances(d: &CompoundDiagram, other: &CompoundDiagram) -> Vec<RuleInstance> {
    d.positions()
        .into_iter()
        .filter(|pos| {
            let sub = d.subterm(pos).expect("own position");
            match (sub, other) {
                (CompoundDiagram::Unit(a), CompoundDiagram::Unit(b)) => {
                    a.labels() == b.labels() && is_alpha(a) && is_alpha(b) && a.zones() == b.zones()
                }
                _ => false,
            }
        })
        .map(|pos| RuleInstance::new(pos, Rule::Combine))
        .collect()
}

/// CopySpider instances with `r1 = r2 = h` for each habitat `h` of `other`.
///
/// `xi` maps the i-th spider of `d1` in each habitat inside `h` to the i-th
/// of `other` in the same habitat, and the copied spider is the first one
/// of `other` in `h` outside the image.
pub fn copy_instances(d: &CompoundDiagram, other: &UnitaryDiagram) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for pos in d.positions() {
        let Some(d1) = d.subterm(&pos).and_then(CompoundDiagram::as_unit) else {
            continue;
        };
        if d1.labels() != other.labels() {
            continue;
        }
        for (h, &c2) in other.spiders() {
            if h.iter().any(|z| !d1.zones().contains(z) || d1.is_shaded(z)) {
                continue;
            }
            let straddles = d1
                .spiders()
                .keys()
                .any(|g| !g.is_disjoint(h) && !g.is_subset(h));
            let inside: Vec<(&Region, u32)> = d1
                .spiders()
                .iter()
                .filter(|(g, _)| g.is_subset(h))
                .map(|(g, &n)| (g, n))
                .collect();
            let fits = inside.iter().all(|(g, n)| *n <= other.count_in(g));
            let c1 = d1.count_in(h);
            if straddles || !fits || c1 >= c2 {
                continue;
            }
            let xi = inside
                .iter()
                .flat_map(|(g, n)| {
                    (0..*n).map(|i| {
                        (
                            SpiderAddr::new((*g).clone(), i),
                            SpiderAddr::new((*g).clone(), i),
                        )
                    })
                })
                .collect();
            out.push(RuleInstance::new(
                pos.clone(),
                Rule::CopySpider {
                    r1: h.clone(),
                    r2: h.clone(),
                    xi,
                    spider: SpiderAddr::new(h.clone(), c1),
                },
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{all_zones, label_set, Label, SpiderEntry};
    use std::collections::BTreeSet;

    fn ab() -> BTreeSet<Label> {
        label_set(["A", "B"]).unwrap()
    }

    fn diagram(shaded: &[&[&str]], spiders: &[(u32, &[&[&str]])]) -> UnitaryDiagram {
        let l = ab();
        UnitaryDiagram::new(
            l.clone(),
            all_zones(&l),
            shaded.iter().map(|z| Zone::of(z, &l)),
            spiders.iter().map(|(n, h)| {
                SpiderEntry::new(*n, Region::new(h.iter().map(|z| Zone::of(z, &l))).unwrap())
            }),
        )
        .unwrap()
    }

    fn region(zones: &[&[&str]]) -> Region {
        let l = ab();
        Region::new(zones.iter().map(|z| Zone::of(z, &l))).unwrap()
    }

    #[test]
    fn alpha_detection() {
        assert!(is_alpha(&diagram(&[], &[(1, &[&["A"]])])));
        assert!(!is_alpha(&diagram(&[], &[(1, &[&["A"], &["B"]])])));
        assert!(is_alpha(&diagram(&[], &[])));
    }

    #[test]
    fn combine_cases() {
        let a = CompoundDiagram::from(diagram(&[&["A"]], &[]));
        let b = CompoundDiagram::from(diagram(&[], &[(1, &[&["A"]])]));
        assert_eq!(combine(&a, &b).unwrap(), CompoundDiagram::Bottom);
        assert_eq!(combine(&b, &CompoundDiagram::Top).unwrap(), b);
        assert_eq!(
            combine(&CompoundDiagram::Bottom, &b).unwrap(),
            CompoundDiagram::Bottom
        );
        let c = CompoundDiagram::from(diagram(&[&["B"]], &[(2, &[&["A"]])]));
        let merged = combine(&b, &c).unwrap();
        assert_eq!(
            merged,
            CompoundDiagram::from(diagram(&[&["B"]], &[(2, &[&["A"]])]))
        );
        let not_alpha = CompoundDiagram::from(diagram(&[], &[(1, &[&["A"], &["B"]])]));
        assert_eq!(combine(&b, &not_alpha), Err(RuleError::NotAlpha));
    }

    #[test]
    fn split_requires_partition() {
        let d = diagram(&[], &[(1, &[&["A"], &["B"]])]);
        let s = SpiderAddr::first(region(&[&["A"], &["B"]]));
        let out = split_spider(&d, &s, &region(&[&["A"]]), &region(&[&["B"]])).unwrap();
        assert_eq!(
            out,
            CompoundDiagram::or(
                diagram(&[], &[(1, &[&["A"]])]),
                diagram(&[], &[(1, &[&["B"]])])
            )
        );
        assert!(split_spider(&d, &s, &region(&[&["A"]]), &region(&[&["A"]])).is_err());
        let single = diagram(&[], &[(1, &[&["A"]])]);
        let s1 = SpiderAddr::first(region(&[&["A"]]));
        assert!(split_spider(&single, &s1, &region(&[&["A"]]), &region(&[&["A"]])).is_err());
    }

    #[test]
    fn add_feet_and_erase() {
        let d = diagram(&[&["A", "B"]], &[(1, &[&["A"]])]);
        let s = SpiderAddr::first(region(&[&["A"]]));
        let l = ab();
        let grown = add_feet(&d, &s, &Zone::of(&["B"], &l)).unwrap();
        assert_eq!(grown.count_in(&region(&[&["A"], &["B"]])), 1);
        assert!(add_feet(&d, &s, &Zone::of(&["A"], &l)).is_err());
        assert_eq!(erase_spider(&d, &s).unwrap().spider_count(), 0);
        let shaded = diagram(&[&["A"]], &[(1, &[&["A"]])]);
        assert!(matches!(
            erase_spider(&shaded, &s),
            Err(RuleError::TouchesShading(_))
        ));
    }

    #[test]
    fn copy_spider_clauses() {
        let d1 = diagram(&[], &[]);
        let d2 = diagram(&[], &[(1, &[&["A"]])]);
        let r = region(&[&["A"]]);
        let s = SpiderAddr::first(r.clone());
        let out = copy_spider(&d1, &d2, &r, &r, &[], &s).unwrap();
        assert_eq!(out, CompoundDiagram::and(d2.clone(), d2.clone()));

        let shaded = diagram(&[&["A"]], &[]);
        let err = |e: RuleError| match e {
            RuleError::CopyClause { clause, .. } => clause,
            other => panic!("{other}"),
        };
        assert_eq!(
            err(copy_spider(&shaded, &d2, &r, &r, &[], &s).unwrap_err()),
            1
        );
        assert_eq!(
            err(copy_spider(&d1, &d2, &r, &region(&[&["B"]]), &[], &s).unwrap_err()),
            0
        );
        let straddle = diagram(&[], &[(1, &[&["A"], &["B"]])]);
        assert_eq!(
            err(copy_spider(&straddle, &d2, &r, &r, &[], &s).unwrap_err()),
            2
        );
        let same = diagram(&[], &[(1, &[&["A"]])]);
        let xi = [(s.clone(), s.clone())];
        assert_eq!(
            err(copy_spider(&same, &d2, &r, &r, &xi, &s).unwrap_err()),
            3
        );
        let two = diagram(&[], &[(2, &[&["A"]])]);
        assert_eq!(
            err(copy_spider(&same, &two, &r, &r, &xi, &s).unwrap_err()),
            4
        );
        assert!(copy_spider(&same, &two, &r, &r, &xi, &SpiderAddr::new(r.clone(), 1)).is_ok());
    }

    #[test]
    fn idempotency_and_conj_elim() {
        let a = CompoundDiagram::from(diagram(&[], &[(1, &[&["A"]])]));
        let b = CompoundDiagram::from(diagram(&[], &[(1, &[&["B"]])]));
        let intro = RuleInstance::at_root(Rule::IdempotencyIntro);
        let elim = RuleInstance::at_root(Rule::IdempotencyElim);
        let doubled = apply(&intro, &[&a]).unwrap();
        assert_eq!(doubled, CompoundDiagram::or(a.clone(), a.clone()));
        assert_eq!(apply(&elim, &[&doubled]).unwrap(), a);
        let mixed = CompoundDiagram::or(a.clone(), b.clone());
        assert_eq!(apply(&elim, &[&mixed]), Err(RuleError::DistinctDisjuncts));
        let conj = CompoundDiagram::and(a.clone(), b.clone());
        let right = RuleInstance::at_root(Rule::ConjElim { side: Side::Right });
        assert_eq!(apply(&right, &[&conj]).unwrap(), b);
        assert!(apply(&right, &[&a]).is_err());
        let top_left = CompoundDiagram::and(CompoundDiagram::Top, a.clone());
        let left = RuleInstance::at_root(Rule::ConjElim { side: Side::Left });
        assert_eq!(apply(&left, &[&top_left]).unwrap(), CompoundDiagram::Top);
    }

    #[test]
    fn positional_application() {
        let a = CompoundDiagram::from(diagram(&[], &[(1, &[&["A"]])]));
        let b = CompoundDiagram::from(diagram(&[], &[(1, &[&["B"]])]));
        let d = CompoundDiagram::or(a.clone(), b.clone());
        let inst = RuleInstance::new(Position(vec![1]), Rule::Combine);
        let out = apply(&inst, &[&d, &a]).unwrap();
        assert_eq!(
            out,
            CompoundDiagram::or(a.clone(), diagram(&[], &[(1, &[&["A"]]), (1, &[&["B"]])]))
        );
        assert!(matches!(
            apply(&inst, &[&d]),
            Err(RuleError::Arity {
                expected: 2,
                got: 1,
                ..
            })
        ));
        let bad = RuleInstance::new(Position(vec![0, 0]), Rule::IdempotencyIntro);
        assert!(matches!(apply(&bad, &[&d]), Err(RuleError::BadPosition(_))));
    }

    #[test]
    fn instance_enumeration() {
        let top = applicable_instances(&CompoundDiagram::Top, &RuleFilter::all());
        assert_eq!(top, vec![RuleInstance::at_root(Rule::IdempotencyIntro)]);
        let d = CompoundDiagram::from(diagram(&[], &[(1, &[&["A"], &["B"]])]));
        let splits = applicable_instances(&d, &RuleFilter::only(&[RuleName::SplitSpider]));
        assert_eq!(splits.len(), 2);
        for inst in applicable_instances(&d, &RuleFilter::all()) {
            apply(&inst, &[&d]).unwrap();
        }
    }

    #[test]
    fn rule_names_round_trip() {
        for name in RuleName::ALL {
            assert_eq!(name.as_str().parse::<RuleName>().unwrap(), name);
        }
        assert!("Nope".parse::<RuleName>().is_err());
        assert_eq!(RuleName::IdempotencyElim.family(), "Idempotency");
    }
}
