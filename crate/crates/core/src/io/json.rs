//! JSON interchange for diagrams, compounds, documents and proofs.
//!
//! Zones are written by their `ins` only; `outs` are inferred from the
//! label set. Every set is emitted in sorted order, so equal values always
//! produce identical text.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{CompoundDiagram, Label, Position, Region, SpiderEntry, UnitaryDiagram, Zone};
use crate::io::dsl::{Document, Expr};
use crate::proof::{Justification, ProofTree};
use crate::rules::{Rule, RuleInstance, RuleName, Side, SpiderAddr};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZoneJson {
    pub ins: Vec<String>,
    #[serde(default)]
    pub shaded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpiderJson {
    pub count: u32,
    pub habitat: Vec<Vec<String>>,
}

/// The wire form of a unitary diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub labels: Vec<String>,
    pub zones: Vec<ZoneJson>,
    pub spiders: Vec<SpiderJson>,
}

fn names(labels: &BTreeSet<Label>) -> Vec<String> {
    labels.iter().map(|l| l.to_string()).collect()
}

fn region_json(r: &Region) -> Vec<Vec<String>> {
    r.iter().map(|z| names(z.ins())).collect()
}

impl From<&UnitaryDiagram> for DiagramJson {
    fn from(d: &UnitaryDiagram) -> Self {
        DiagramJson {
            labels: names(d.labels()),
            zones: d
                .zones()
                .iter()
                .map(|z| ZoneJson {
                    ins: names(z.ins()),
                    shaded: d.is_shaded(z),
                })
                .collect(),
            spiders: d
                .spiders()
                .iter()
                .map(|(r, &count)| SpiderJson {
                    count,
                    habitat: region_json(r),
                })
                .collect(),
        }
    }
}

fn zone_from(ins: &[String], labels: &BTreeSet<Label>) -> Result<Zone, String> {
    let ins = ins
        .iter()
        .map(|n| Label::new(n.clone()))
        .collect::<Result<BTreeSet<_>, _>>()
        .map_err(|e| e.to_string())?;
    Zone::from_ins(ins, labels).map_err(|e| e.to_string())
}

fn region_from(zones: &[Vec<String>], labels: &BTreeSet<Label>) -> Result<Region, String> {
    let zones = zones
        .iter()
        .map(|z| zone_from(z, labels))
        .collect::<Result<Vec<_>, _>>()?;
    Region::new(zones).map_err(|e| e.to_string())
}

impl TryFrom<DiagramJson> for UnitaryDiagram {
    type Error = String;

    fn try_from(j: DiagramJson) -> Result<Self, String> {
        let labels = j
            .labels
            .iter()
            .map(|n| Label::new(n.clone()))
            .collect::<Result<BTreeSet<_>, _>>()
            .map_err(|e| e.to_string())?;
        let mut zones = BTreeSet::new();
        let mut shaded = BTreeSet::new();
        for zj in &j.zones {
            let z = zone_from(&zj.ins, &labels)?;
            if zj.shaded {
                shaded.insert(z.clone());
            }
            if !zones.insert(z.clone()) {
                return Err(format!("duplicate zone {z}"));
            }
        }
        let spiders = j
            .spiders
            .iter()
            .map(|s| Ok(SpiderEntry::new(s.count, region_from(&s.habitat, &labels)?)))
            .collect::<Result<Vec<_>, String>>()?;
        UnitaryDiagram::new(labels, zones, shaded, spiders).map_err(|e| e.to_string())
    }
}

/// A unitary diagram with the JSON wire format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramRepr(pub UnitaryDiagram);

impl Serialize for DiagramRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramJson::from(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagramRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        UnitaryDiagram::try_from(j)
            .map(DiagramRepr)
            .map_err(de::Error::custom)
    }
}

/// Compound JSON, with optional name references (documents only).
#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Inline(UnitaryDiagram),
    Name(String),
    Top,
    Bottom,
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
}

const DIAGRAM_FIELDS: &[&str] = &["labels", "zones", "spiders"];

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(NodeVisitor)
    }
}

struct NodeVisitor;

impl<'de> Visitor<'de> for NodeVisitor {
    type Value = Node;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a diagram object, \"TOP\", \"BOTTOM\", {\"and\": [a, b]} or {\"or\": [a, b]}")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Node, E> {
        Ok(match v {
            "TOP" => Node::Top,
            "BOTTOM" => Node::Bottom,
            name => Node::Name(name.to_string()),
        })
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Node, A::Error> {
        let Some(first) = map.next_key::<String>()? else {
            return Err(de::Error::custom("empty object is not a diagram"));
        };
        if first == "and" || first == "or" {
            let [a, b]: [Node; 2] = map.next_value()?;
            if let Some(extra) = map.next_key::<String>()? {
                return Err(de::Error::unknown_field(&extra, &["and", "or"]));
            }
            let (a, b) = (Box::new(a), Box::new(b));
            return Ok(if first == "and" {
                Node::And(a, b)
            } else {
                Node::Or(a, b)
            });
        }
        let mut labels: Option<Vec<String>> = None;
        let mut zones: Option<Vec<ZoneJson>> = None;
        let mut spiders: Option<Vec<SpiderJson>> = None;
        let mut key = Some(first);
        while let Some(k) = key {
            match k.as_str() {
                "labels" if labels.is_none() => labels = Some(map.next_value()?),
                "zones" if zones.is_none() => zones = Some(map.next_value()?),
                "spiders" if spiders.is_none() => spiders = Some(map.next_value()?),
                "labels" => return Err(de::Error::duplicate_field("labels")),
                "zones" => return Err(de::Error::duplicate_field("zones")),
                "spiders" => return Err(de::Error::duplicate_field("spiders")),
                other => return Err(de::Error::unknown_field(other, DIAGRAM_FIELDS)),
            }
            key = map.next_key()?;
        }
        let j = DiagramJson {
            labels: labels.ok_or_else(|| de::Error::missing_field("labels"))?,
            zones: zones.ok_or_else(|| de::Error::missing_field("zones"))?,
            spiders: spiders.ok_or_else(|| de::Error::missing_field("spiders"))?,
        };
        UnitaryDiagram::try_from(j)
            .map(Node::Inline)
            .map_err(de::Error::custom)
    }
}

impl Node {
    fn into_compound(self) -> Result<CompoundDiagram, String> {
        Ok(match self {
            Node::Inline(d) => CompoundDiagram::Unit(d),
            Node::Name(n) => return Err(format!("unexpected name reference `{n}`")),
            Node::Top => CompoundDiagram::Top,
            Node::Bottom => CompoundDiagram::Bottom,
            Node::And(a, b) => CompoundDiagram::and(a.into_compound()?, b.into_compound()?),
            Node::Or(a, b) => CompoundDiagram::or(a.into_compound()?, b.into_compound()?),
        })
    }

    fn into_expr(self) -> Result<Expr, String> {
        Ok(match self {
            Node::Inline(_) => {
                return Err("inline diagrams are not allowed in a document compound".into())
            }
            Node::Name(n) => Expr::Name(n),
            Node::Top => Expr::Top,
            Node::Bottom => Expr::Bottom,
            Node::And(a, b) => Expr::And(Box::new(a.into_expr()?), Box::new(b.into_expr()?)),
            Node::Or(a, b) => Expr::Or(Box::new(a.into_expr()?), Box::new(b.into_expr()?)),
        })
    }
}

/// A compound diagram with the JSON wire format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundRepr(pub CompoundDiagram);

impl Serialize for CompoundRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match &self.0 {
            CompoundDiagram::Unit(d) => DiagramJson::from(d).serialize(s),
            CompoundDiagram::Top => s.serialize_str("TOP"),
            CompoundDiagram::Bottom => s.serialize_str("BOTTOM"),
            CompoundDiagram::And(a, b) | CompoundDiagram::Or(a, b) => {
                let key = if matches!(self.0, CompoundDiagram::And(..)) {
                    "and"
                } else {
                    "or"
                };
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry(
                    key,
                    &[CompoundRepr((**a).clone()), CompoundRepr((**b).clone())],
                )?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for CompoundRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Node::deserialize(d)?
            .into_compound()
            .map(CompoundRepr)
            .map_err(de::Error::custom)
    }
}

struct ExprRepr<'a>(&'a Expr);

impl Serialize for ExprRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self.0 {
            Expr::Name(n) => s.serialize_str(n),
            Expr::Top => s.serialize_str("TOP"),
            Expr::Bottom => s.serialize_str("BOTTOM"),
            Expr::And(a, b) | Expr::Or(a, b) => {
                let key = if matches!(self.0, Expr::And(..)) {
                    "and"
                } else {
                    "or"
                };
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry(key, &[ExprRepr(a), ExprRepr(b)])?;
                m.end()
            }
        }
    }
}

pub fn diagram_to_json(d: &UnitaryDiagram) -> String {
    serde_json::to_string_pretty(&DiagramRepr(d.clone())).expect("serializable")
}

pub fn diagram_from_json(text: &str) -> Result<UnitaryDiagram, JsonError> {
    Ok(serde_json::from_str::<DiagramRepr>(text)?.0)
}

pub fn compound_to_json(d: &CompoundDiagram) -> String {
    serde_json::to_string_pretty(&CompoundRepr(d.clone())).expect("serializable")
}

pub fn compound_to_value(d: &CompoundDiagram) -> serde_json::Value {
    serde_json::to_value(CompoundRepr(d.clone())).expect("serializable")
}

pub fn compound_from_json(text: &str) -> Result<CompoundDiagram, JsonError> {
    Ok(serde_json::from_str::<CompoundRepr>(text)?.0)
}

#[derive(Serialize)]
struct DocumentOut<'a> {
    diagrams: IndexMap<&'a str, DiagramRepr>,
    compounds: IndexMap<&'a str, ExprRepr<'a>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentIn {
    #[serde(default)]
    diagrams: IndexMap<String, DiagramRepr>,
    #[serde(default)]
    compounds: IndexMap<String, Node>,
}

/// `{"diagrams": {name: diagram}, "compounds": {name: expression}}`.
///
/// Compound expressions refer to other items by name.
pub fn document_to_json(doc: &Document) -> String {
    let out = DocumentOut {
        diagrams: doc
            .diagrams
            .iter()
            .map(|(n, d)| (n.as_str(), DiagramRepr(d.clone())))
            .collect(),
        compounds: doc
            .compounds
            .iter()
            .map(|(n, c)| (n.as_str(), ExprRepr(&c.expr)))
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("serializable")
}

pub fn document_from_json(text: &str) -> Result<Document, JsonError> {
    let raw: DocumentIn = serde_json::from_str(text)?;
    let mut doc = Document::new();
    for (name, d) in raw.diagrams {
        doc.add_diagram(&name, d.0)
            .map_err(|e| JsonError::Schema(e.to_string()))?;
    }
    for (name, node) in raw.compounds {
        let expr = node
            .into_expr()
            .map_err(|m| JsonError::Schema(format!("compound `{name}`: {m}")))?;
        doc.add_compound(&name, expr)
            .map_err(|e| JsonError::Schema(e.to_string()))?;
    }
    Ok(doc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AddrJson {
    pub habitat: Vec<Vec<String>>,
    #[serde(default)]
    pub index: u32,
}

/// Rule parameters; which fields are required depends on the rule.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    #[serde(default)]
    pub position: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<[DiagramJson; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spider: Option<AddrJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zone: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r2: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<(AddrJson, AddrJson)>>,
}

fn addr_json(a: &SpiderAddr) -> AddrJson {
    AddrJson {
        habitat: region_json(&a.habitat),
        index: a.index,
    }
}

fn addr_from(a: &AddrJson, labels: &BTreeSet<Label>) -> Result<SpiderAddr, String> {
    Ok(SpiderAddr::new(region_from(&a.habitat, labels)?, a.index))
}

pub fn params_to_json(inst: &RuleInstance) -> ParamsJson {
    let mut p = ParamsJson {
        position: inst.position.0.clone(),
        ..ParamsJson::default()
    };
    match &inst.rule {
        Rule::Combine | Rule::IdempotencyIntro | Rule::IdempotencyElim => {}
        Rule::ConjElim { side } => p.side = Some(side.as_str().into()),
        Rule::ConjElimUnitary { left, right, side } => {
            p.side = Some(side.as_str().into());
            p.witness = Some([left.into(), right.into()]);
        }
        Rule::SplitSpider { spider, r1, r2 } => {
            p.spider = Some(addr_json(spider));
            p.r1 = Some(region_json(r1));
            p.r2 = Some(region_json(r2));
        }
        Rule::AddFeet { spider, zone } => {
            p.spider = Some(addr_json(spider));
            p.zone = Some(names(zone.ins()));
        }
        Rule::EraseSpider { spider } => p.spider = Some(addr_json(spider)),
        Rule::CopySpider { r1, r2, xi, spider } => {
            p.r1 = Some(region_json(r1));
            p.r2 = Some(region_json(r2));
            p.xi = Some(
                xi.iter()
                    .map(|(a, b)| (addr_json(a), addr_json(b)))
                    .collect(),
            );
            p.spider = Some(addr_json(spider));
        }
    }
    p
}

fn need<T>(v: Option<T>, field: &str, rule: RuleName) -> Result<T, String> {
    v.ok_or_else(|| format!("{rule} needs parameter `{field}`"))
}

/// Builds a rule instance from its name and parameters.
///
/// `labels` resolves zones given by their `ins`.
pub fn params_from_json(
    rule: RuleName,
    p: ParamsJson,
    labels: Option<&BTreeSet<Label>>,
) -> Result<RuleInstance, String> {
    let empty = BTreeSet::new();
    let labels = labels.unwrap_or(&empty);
    let side = |s: Option<String>| -> Result<Side, String> {
        match need(s, "side", rule)?.as_str() {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("side must be \"left\" or \"right\", not {other:?}")),
        }
    };
    let r = match rule {
        RuleName::Combine => Rule::Combine,
        RuleName::IdempotencyIntro => Rule::IdempotencyIntro,
        RuleName::IdempotencyElim => Rule::IdempotencyElim,
        RuleName::ConjElim => match p.witness {
            None => Rule::ConjElim {
                side: side(p.side)?,
            },
            Some([l, r]) => Rule::ConjElimUnitary {
                left: l.try_into()?,
                right: r.try_into()?,
                side: side(p.side)?,
            },
        },
        RuleName::SplitSpider => Rule::SplitSpider {
            spider: addr_from(&need(p.spider, "spider", rule)?, labels)?,
            r1: region_from(&need(p.r1, "r1", rule)?, labels)?,
            r2: region_from(&need(p.r2, "r2", rule)?, labels)?,
        },
        RuleName::AddFeet => Rule::AddFeet {
            spider: addr_from(&need(p.spider, "spider", rule)?, labels)?,
            zone: zone_from(&need(p.zone, "zone", rule)?, labels)?,
        },
        RuleName::EraseSpider => Rule::EraseSpider {
            spider: addr_from(&need(p.spider, "spider", rule)?, labels)?,
        },
        RuleName::CopySpider => Rule::CopySpider {
            r1: region_from(&need(p.r1, "r1", rule)?, labels)?,
            r2: region_from(&need(p.r2, "r2", rule)?, labels)?,
            xi: need(p.xi, "xi", rule)?
                .iter()
                .map(|(a, b)| Ok((addr_from(a, labels)?, addr_from(b, labels)?)))
                .collect::<Result<_, String>>()?,
            spider: addr_from(&need(p.spider, "spider", rule)?, labels)?,
        },
    };
    Ok(RuleInstance::new(Position(p.position), r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Premise,
    Assert,
    Rule,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JustJson {
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<ParamsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<ProofJson>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofJson {
    conclusion: CompoundRepr,
    just: JustJson,
}

fn proof_json(t: &ProofTree) -> ProofJson {
    let just = match &t.justification {
        Justification::Premise | Justification::Assertion => JustJson {
            kind: if t.justification == Justification::Premise {
                Kind::Premise
            } else {
                Kind::Assert
            },
            rule: None,
            params: None,
            children: None,
        },
        Justification::Rule { instance, children } => JustJson {
            kind: Kind::Rule,
            rule: Some(instance.rule.name().to_string()),
            params: Some(params_to_json(instance)),
            children: Some(children.iter().map(|c| proof_json(c)).collect()),
        },
    };
    ProofJson {
        conclusion: CompoundRepr(t.conclusion.clone()),
        just,
    }
}

fn subtree_labels(j: &ProofJson) -> Option<BTreeSet<Label>> {
    if let Some(l) = j.conclusion.0.labels() {
        return Some(l.clone());
    }
    j.just.children.iter().flatten().find_map(subtree_labels)
}

fn proof_from(j: ProofJson, path: &mut Vec<usize>) -> Result<ProofTree, String> {
    let at = |path: &Vec<usize>, m: String| {
        let p: Vec<String> = path.iter().map(|i| i.to_string()).collect();
        let p = if p.is_empty() {
            "root".to_string()
        } else {
            p.join(".")
        };
        format!("proof node {p}: {m}")
    };
    let labels = subtree_labels(&j);
    let ProofJson { conclusion, just } = j;
    match just.kind {
        Kind::Premise | Kind::Assert => {
            if just.rule.is_some() || just.params.is_some() || just.children.is_some() {
                return Err(at(path, "leaves take no rule, params or children".into()));
            }
            Ok(if just.kind == Kind::Premise {
                ProofTree::premise(conclusion.0)
            } else {
                ProofTree::assertion(conclusion.0)
            })
        }
        Kind::Rule => {
            let name: RuleName = just
                .rule
                .ok_or_else(|| at(path, "missing field `rule`".into()))?
                .parse()
                .map_err(|e: crate::rules::RuleError| at(path, e.to_string()))?;
            let inst = params_from_json(name, just.params.unwrap_or_default(), labels.as_ref())
                .map_err(|m| at(path, m))?;
            let mut children = Vec::new();
            for (i, c) in just.children.unwrap_or_default().into_iter().enumerate() {
                path.push(i);
                children.push(Arc::new(proof_from(c, path)?));
                path.pop();
            }
            Ok(ProofTree::rule(conclusion.0, inst, children))
        }
    }
}

pub fn proof_to_value(t: &ProofTree) -> serde_json::Value {
    serde_json::to_value(proof_json(t)).expect("serializable")
}

pub fn proof_to_json(t: &ProofTree) -> String {
    serde_json::to_string_pretty(&proof_json(t)).expect("serializable")
}

pub fn proof_from_json(text: &str) -> Result<ProofTree, JsonError> {
    let j: ProofJson = serde_json::from_str(text)?;
    proof_from(j, &mut Vec::new()).map_err(JsonError::Schema)
}
