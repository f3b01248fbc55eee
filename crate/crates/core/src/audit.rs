//! Exhaustive soundness audit of the inference rules.
//!
//! Every legal instance over a family of diagrams is applied and its
//! conclusion compared with its premises on every interpretation up to a
//! universe bound. Equivalence rules must preserve the model set exactly,
//! weakening rules must not add models.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::diagram::{
    all_zones, label_set, CompoundDiagram, Label, Region, SpiderEntry, UnitaryDiagram, Zone,
};
use crate::exec::Exec;
use crate::greimas::{corner, m_witness, meta_term_target, neg_diag, Corner, MetaTerm, Seme};
use crate::rules::{
    applicable_instances, apply, combine_instances, copy_instances, Rule, RuleFilter, RuleInstance,
    RuleName, Side,
};
use crate::semantics::{Evaluator, SemanticsError};

/// What a rule must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Obligation {
    Equivalence,
    Weakening,
}

pub fn obligation(rule: RuleName) -> Obligation {
    match rule {
        RuleName::AddFeet | RuleName::EraseSpider | RuleName::ConjElim => Obligation::Weakening,
        _ => Obligation::Equivalence,
    }
}

/// Every valid unitary diagram over `{A, B}` with at most two spiders,
/// each living in at most two zones.
pub fn two_label_family() -> Vec<UnitaryDiagram> {
    let labels = label_set(["A", "B"]).expect("valid labels");
    let all: Vec<Zone> = all_zones(&labels).into_iter().collect();
    let outer = Zone::of(&[], &labels);
    let inner: Vec<Zone> = all.iter().filter(|z| **z != outer).cloned().collect();
    let mut out = Vec::new();
    for mask in 0..(1u32 << inner.len()) {
        let mut zones: BTreeSet<Zone> = (0..inner.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| inner[i].clone())
            .collect();
        zones.insert(outer.clone());
        let zl: Vec<Zone> = zones.iter().cloned().collect();
        let mut habitats = Vec::new();
        for i in 0..zl.len() {
            habitats.push(Region::single(zl[i].clone()));
            for j in i + 1..zl.len() {
                habitats.push(Region::new([zl[i].clone(), zl[j].clone()]).expect("non-empty"));
            }
        }
        let mut spider_sets: Vec<BTreeMap<Region, u32>> = vec![BTreeMap::new()];
        for i in 0..habitats.len() {
            spider_sets.push(BTreeMap::from([(habitats[i].clone(), 1)]));
            spider_sets.push(BTreeMap::from([(habitats[i].clone(), 2)]));
            for h in &habitats[i + 1..] {
                spider_sets.push(BTreeMap::from([(habitats[i].clone(), 1), (h.clone(), 1)]));
            }
        }
        for shade in 0..(1u32 << zl.len()) {
            let shaded: BTreeSet<Zone> = (0..zl.len())
                .filter(|i| shade & (1 << i) != 0)
                .map(|i| zl[i].clone())
                .collect();
            for spiders in &spider_sets {
                // Diagrams missing a label's every zone are not valid.
                if let Ok(d) = UnitaryDiagram::new(
                    labels.clone(),
                    zones.clone(),
                    shaded.clone(),
                    spiders.iter().map(|(h, n)| SpiderEntry::new(*n, h.clone())),
                ) {
                    out.push(d);
                }
            }
        }
    }
    out
}

/// Corners, negations, the `M` witness and the meta-term targets.
pub fn greimas_family() -> Vec<UnitaryDiagram> {
    let mut out: Vec<UnitaryDiagram> = Corner::ALL.into_iter().map(corner).collect();
    out.extend([neg_diag(Seme::S1), neg_diag(Seme::S2), m_witness()]);
    out.extend(MetaTerm::ALL.into_iter().map(meta_term_target));
    let mut seen = BTreeSet::new();
    out.retain(|d| seen.insert(CompoundDiagram::Unit(d.clone()).canonical_key()));
    out
}

/// One rule application whose conclusion broke its obligation.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub instance: String,
    pub premise: String,
    pub conclusion: String,
    /// `premise ⊭ conclusion` (false) or `conclusion ⊭ premise` (true).
    pub reverse: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SoundnessReport {
    pub diagrams: usize,
    pub interpretations: usize,
    pub instances: BTreeMap<&'static str, usize>,
    pub violations: Vec<Violation>,
}

impl SoundnessReport {
    pub fn checked(&self) -> usize {
        self.instances.values().sum()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: SoundnessReport) {
        for (k, v) in other.instances {
            *self.instances.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
    }
}

/// Model bit vectors over one label set, cached per unitary diagram.
struct Models {
    labels: BTreeSet<Label>,
    bound: usize,
    width: usize,
    cache: RwLock<HashMap<UnitaryDiagram, Arc<Vec<u64>>>>,
}

impl Models {
    fn new(labels: BTreeSet<Label>, bound: usize) -> Result<Self, SemanticsError> {
        let width = Evaluator::new(&CompoundDiagram::Top, &labels)?
            .model_bits(bound)?
            .len();
        Ok(Models {
            labels,
            bound,
            width,
            cache: RwLock::new(HashMap::new()),
        })
    }

    fn unit(&self, d: &UnitaryDiagram) -> Result<Arc<Vec<u64>>, SemanticsError> {
        if let Some(b) = self.cache.read().expect("lock").get(d) {
            return Ok(b.clone());
        }
        let b = Arc::new(
            Evaluator::new(&CompoundDiagram::Unit(d.clone()), &self.labels)?
                .model_bits(self.bound)?,
        );
        self.cache
            .write()
            .expect("lock")
            .insert(d.clone(), b.clone());
        Ok(b)
    }

    fn bits(&self, d: &CompoundDiagram) -> Result<Vec<u64>, SemanticsError> {
        Ok(match d {
            CompoundDiagram::Top => Evaluator::new(d, &self.labels)?.model_bits(self.bound)?,
            CompoundDiagram::Bottom => vec![0; self.width],
            CompoundDiagram::Unit(u) => self.unit(u)?.as_ref().clone(),
            CompoundDiagram::And(a, b) => zip(&self.bits(a)?, &self.bits(b)?, |x, y| x & y),
            CompoundDiagram::Or(a, b) => zip(&self.bits(a)?, &self.bits(b)?, |x, y| x | y),
        })
    }
}

fn zip(a: &[u64], b: &[u64], f: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl SoundnessReport {
    /// Applies `instance` to `inputs` and compares the conclusion with `premise`.
    fn check(
        &mut self,
        models: &Models,
        premise: (&CompoundDiagram, &[u64]),
        inputs: &[&CompoundDiagram],
        instance: RuleInstance,
    ) -> Result<(), SemanticsError> {
        let conclusion = apply(&instance, inputs)
            .unwrap_or_else(|e| panic!("generated instance {instance} failed: {e}"));
        let rule = instance.rule.name();
        *self.instances.entry(rule.as_str()).or_default() += 1;
        let c = models.bits(&conclusion)?;
        let forward = subset(premise.1, &c);
        let backward = obligation(rule) == Obligation::Weakening || subset(&c, premise.1);
        if !forward || !backward {
            self.violations.push(Violation {
                rule: rule.as_str(),
                instance: instance.to_string(),
                premise: premise.0.to_string(),
                conclusion: conclusion.to_string(),
                reverse: forward,
            });
        }
        Ok(())
    }

    /// Every unary instance on `d`, optionally skipping the root.
    fn unary(
        &mut self,
        models: &Models,
        d: &CompoundDiagram,
        root: bool,
    ) -> Result<(), SemanticsError> {
        let bits = models.bits(d)?;
        for instance in applicable_instances(d, &RuleFilter::all()) {
            if root || !instance.position.is_root() {
                self.check(models, (d, &bits), &[d], instance)?;
            }
        }
        Ok(())
    }

    /// Binary rules on `(a, b)` and ConjElim on `And(a, b)`.
    fn pair(
        &mut self,
        models: &Models,
        a: &CompoundDiagram,
        b: &CompoundDiagram,
        nested: bool,
    ) -> Result<(), SemanticsError> {
        let both = CompoundDiagram::and(a.clone(), b.clone());
        let bits = models.bits(&both)?;
        let ub = b.as_unit().expect("family is unitary");
        for instance in combine_instances(a, b)
            .into_iter()
            .chain(copy_instances(a, ub))
        {
            self.check(models, (&both, &bits), &[a, b], instance)?;
        }
        for side in [Side::Left, Side::Right] {
            let instance = RuleInstance::at_root(Rule::ConjElim { side });
            self.check(models, (&both, &bits), &[&both], instance)?;
        }
        if nested {
            self.unary(models, &both, false)?;
        }
        Ok(())
    }
}

/// Audits every rule over `family`, which must share one label set.
///
/// Unary rules run on each diagram, on `Or(d, d)` and, when `nested` is set,
/// at every inner position of each pair `And(a, b)`; binary rules and
/// ConjElim run on every ordered pair with equal zone sets.
pub fn audit_family(
    family: &[UnitaryDiagram],
    bound: usize,
    nested: bool,
    exec: Exec,
) -> Result<SoundnessReport, SemanticsError> {
    let Some(first) = family.first() else {
        return Ok(SoundnessReport::default());
    };
    let models = Models::new(first.labels().clone(), bound)?;
    let units: Vec<CompoundDiagram> = family.iter().cloned().map(CompoundDiagram::Unit).collect();
    let mut groups: BTreeMap<&BTreeSet<Zone>, Vec<&CompoundDiagram>> = BTreeMap::new();
    for (d, u) in family.iter().zip(&units) {
        groups.entry(d.zones()).or_default().push(u);
    }
    let rows: Vec<(&CompoundDiagram, &[&CompoundDiagram])> = units
        .iter()
        .map(|u| {
            let zones = u.as_unit().expect("unitary").zones();
            (u, groups[zones].as_slice())
        })
        .collect();
    let parts = exec.map(
        &rows,
        |(a, group)| -> Result<SoundnessReport, SemanticsError> {
            let mut r = SoundnessReport::default();
            r.unary(&models, a, true)?;
            let twice = CompoundDiagram::or((*a).clone(), (*a).clone());
            let bits = models.bits(&twice)?;
            for instance in
                applicable_instances(&twice, &RuleFilter::only(&[RuleName::IdempotencyElim]))
            {
                r.check(&models, (&twice, &bits), &[&twice], instance)?;
            }
            for b in group.iter() {
                r.pair(&models, a, b, nested)?;
            }
            Ok(r)
        },
    );
    let mut report = SoundnessReport {
        diagrams: family.len(),
        interpretations: (0..=bound)
            .map(|n| 1usize << (n * first.labels().len()))
            .sum(),
        ..SoundnessReport::default()
    };
    for part in parts {
        report.merge(part?);
    }
    Ok(report)
}

/// The two-label family and the Greimas fixtures (whose pairs include
/// every meta-term premise), both at `bound`.
pub fn rule_soundness(
    bound: usize,
    exec: Exec,
) -> Result<(SoundnessReport, SoundnessReport), SemanticsError> {
    let small = audit_family(&two_label_family(), bound, false, exec)?;
    let greimas = audit_family(&greimas_family(), bound, true, exec)?;
    Ok((small, greimas))
}
