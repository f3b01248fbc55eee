//! Forward proof search by level saturation.
//!
//! Level `k` holds every compound first reached by a proof tree of height
//! `k`. States are deduplicated by canonical key, so the first proof of
//! the goal is one of minimal height among those the policy allows.
//! Expansion of a level may run in parallel; results are merged in a
//! fixed order, so the outcome does not depend on the strategy.

use std::collections::BTreeSet;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CompoundDiagram, DiagramError, Region, UnitaryDiagram};
use crate::exec::Exec;
use crate::proof::ProofTree;
use crate::rules::{
    applicable_instances, apply, combine_instances, copy_instances, Rule, RuleFilter, RuleInstance,
    RuleName,
};

pub const DEFAULT_MAX_DEPTH: usize = 8;
pub const DEFAULT_MAX_STATES: usize = 2_000_000;

/// Pruning applied on top of the rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchPolicy {
    /// Never erase the only spider of a unitary diagram.
    pub keep_last_spider: bool,
    /// Only add a foot when the new habitat fits inside some goal habitat.
    pub goal_directed_feet: bool,
    /// Largest compound (in leaves); `None` means max(2, premises, goal).
    pub max_leaves: Option<usize>,
    /// Spiders allowed per unitary diagram beyond the goal's largest count.
    pub spider_slack: u32,
}

impl Default for SearchPolicy {
    fn default() -> Self {
        SearchPolicy {
            keep_last_spider: true,
            goal_directed_feet: true,
            max_leaves: None,
            spider_slack: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub premises: Vec<CompoundDiagram>,
    /// Diagrams that may enter a proof as assertion leaves.
    pub assertions: Vec<UnitaryDiagram>,
    pub rules: RuleFilter,
    pub policy: SearchPolicy,
    pub exec: Exec,
    /// Hard cap on stored states; the search reports truncation when hit.
    pub max_states: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: DEFAULT_MAX_DEPTH,
            premises: Vec::new(),
            assertions: Vec::new(),
            rules: RuleFilter::all(),
            policy: SearchPolicy::default(),
            exec: Exec::default(),
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

impl SearchConfig {
    pub fn new(premises: Vec<CompoundDiagram>, assertions: Vec<UnitaryDiagram>) -> Self {
        SearchConfig {
            premises,
            assertions,
            ..SearchConfig::default()
        }
    }

    pub fn with_max_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn with_rules(mut self, rules: RuleFilter) -> Self {
        self.rules = rules;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("max_depth must be at least 1")]
    ZeroDepth,
    #[error("invalid {what}: {source}")]
    Invalid {
        what: &'static str,
        source: DiagramError,
    },
    #[error("goal and pool use different label sets")]
    LabelMismatch,
}

/// Search metadata, recorded alongside any proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub max_depth: usize,
    pub max_leaves: usize,
    pub max_spiders: Option<u32>,
    pub levels_completed: usize,
    pub states: usize,
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub proof: Option<ProofTree>,
    pub stats: SearchStats,
}

/// Bounds derived from the configuration and goal.
struct Limits {
    max_leaves: usize,
    max_spiders: Option<u32>,
    goal_habitats: Option<BTreeSet<Region>>,
}

impl Limits {
    fn new(cfg: &SearchConfig, goal: Option<&CompoundDiagram>) -> Self {
        let widest = cfg
            .premises
            .iter()
            .chain(goal)
            .map(CompoundDiagram::leaf_count)
            .max()
            .unwrap_or(1);
        let goal_habitats = goal.filter(|_| cfg.policy.goal_directed_feet).map(|g| {
            g.units()
                .iter()
                .flat_map(|u| u.spiders().keys().cloned())
                .collect()
        });
        Limits {
            max_leaves: cfg.policy.max_leaves.unwrap_or(widest.max(2)),
            max_spiders: goal.map(|g| {
                g.units()
                    .iter()
                    .map(|u| u.spider_count())
                    .max()
                    .unwrap_or(0)
                    + cfg.policy.spider_slack
            }),
            goal_habitats,
        }
    }

    fn allows_instance(
        &self,
        policy: &SearchPolicy,
        d: &CompoundDiagram,
        inst: &RuleInstance,
    ) -> bool {
        match &inst.rule {
            Rule::EraseSpider { .. } if policy.keep_last_spider => d
                .subterm(&inst.position)
                .and_then(CompoundDiagram::as_unit)
                .is_some_and(|u| u.spider_count() > 1),
            Rule::AddFeet { spider, zone } => match &self.goal_habitats {
                Some(hs) => {
                    let grown = spider.habitat.with_zone(zone.clone());
                    hs.iter().any(|h| grown.is_subset(h))
                }
                None => true,
            },
            _ => true,
        }
    }

    fn accepts(&self, d: &CompoundDiagram) -> bool {
        d.leaf_count() <= self.max_leaves
            && self
                .max_spiders
                .is_none_or(|m| d.units().iter().all(|u| u.spider_count() <= m))
    }
}

struct Engine<'a> {
    cfg: &'a SearchConfig,
    limits: Limits,
    states: IndexMap<String, (Arc<ProofTree>, usize)>,
    assertions: Vec<Arc<ProofTree>>,
    truncated: bool,
    levels_completed: usize,
}

type Candidates = Vec<(String, Arc<ProofTree>)>;

impl<'a> Engine<'a> {
    fn new(cfg: &'a SearchConfig, goal: Option<&CompoundDiagram>) -> Self {
        let mut states = IndexMap::new();
        for p in &cfg.premises {
            states
                .entry(p.canonical_key())
                .or_insert_with(|| (Arc::new(ProofTree::premise(p.clone())), 0));
        }
        let mut seen = BTreeSet::new();
        let assertions = cfg
            .assertions
            .iter()
            .filter(|a| seen.insert(CompoundDiagram::Unit((*a).clone()).canonical_key()))
            .map(|a| Arc::new(ProofTree::assertion(a.clone())))
            .collect();
        Engine {
            cfg,
            limits: Limits::new(cfg, goal),
            states,
            assertions,
            truncated: false,
            levels_completed: 0,
        }
    }

    fn unary(&self, a: &Arc<ProofTree>, out: &mut Candidates) {
        let d = &a.conclusion;
        for inst in applicable_instances(d, &self.cfg.rules) {
            if !self.limits.allows_instance(&self.cfg.policy, d, &inst) {
                continue;
            }
            if let Ok(c) = apply(&inst, &[d]) {
                self.offer(c, inst, vec![a.clone()], out);
            }
        }
    }

    fn binary(&self, a: &Arc<ProofTree>, b: &Arc<ProofTree>, out: &mut Candidates) {
        let Some(bu) = b.conclusion.as_unit() else {
            return;
        };
        let d = &a.conclusion;
        let mut insts = Vec::new();
        if self.cfg.rules.allows(RuleName::Combine) {
            insts.extend(combine_instances(d, &b.conclusion));
        }
        if self.cfg.rules.allows(RuleName::CopySpider) {
            insts.extend(copy_instances(d, bu));
        }
        for inst in insts {
            if let Ok(c) = apply(&inst, &[d, &b.conclusion]) {
                self.offer(c, inst, vec![a.clone(), b.clone()], out);
            }
        }
    }

    fn offer(
        &self,
        c: CompoundDiagram,
        inst: RuleInstance,
        children: Vec<Arc<ProofTree>>,
        out: &mut Candidates,
    ) {
        if !self.limits.accepts(&c) {
            return;
        }
        let key = c.canonical_key();
        if self.states.contains_key(&key) {
            return;
        }
        out.push((key, Arc::new(ProofTree::rule(c, inst, children))));
    }

    /// Computes level `depth`, returning the goal's proof if it appears.
    fn level(&mut self, depth: usize, goal: Option<&str>) -> Option<Arc<ProofTree>> {
        let frontier: Vec<Arc<ProofTree>> = self
            .states
            .values()
            .filter(|(_, d)| *d == depth - 1)
            .map(|(t, _)| t.clone())
            .collect();
        let older: Vec<Arc<ProofTree>> = self
            .states
            .values()
            .filter(|(_, d)| *d < depth - 1)
            .map(|(t, _)| t.clone())
            .collect();
        let units = |ts: &[Arc<ProofTree>]| -> Vec<Arc<ProofTree>> {
            ts.iter()
                .filter(|t| t.conclusion.as_unit().is_some())
                .cloned()
                .collect()
        };
        let frontier_units = units(&frontier);
        let all_units: Vec<Arc<ProofTree>> = self
            .states
            .values()
            .map(|(t, _)| t.clone())
            .filter(|t| t.conclusion.as_unit().is_some())
            .chain(self.assertions.iter().cloned())
            .collect();

        // each frontier item against everything; older items against the new units
        enum Job<'j> {
            Fresh(&'j Arc<ProofTree>),
            Old(&'j Arc<ProofTree>),
        }
        let mut jobs: Vec<Job> = frontier.iter().map(Job::Fresh).collect();
        if !frontier_units.is_empty() {
            jobs.extend(older.iter().map(Job::Old));
        }
        let this = &*self;
        let batches = self.cfg.exec.map(&jobs, |job| {
            let mut out = Vec::new();
            match job {
                Job::Fresh(a) => {
                    this.unary(a, &mut out);
                    for b in &all_units {
                        this.binary(a, b, &mut out);
                    }
                }
                Job::Old(a) => {
                    for b in &frontier_units {
                        this.binary(a, b, &mut out);
                    }
                }
            }
            out
        });

        let mut found = None;
        'merge: for batch in batches {
            for (key, tree) in batch {
                if self.states.len() >= self.cfg.max_states {
                    self.truncated = true;
                    break 'merge;
                }
                if self.states.contains_key(&key) {
                    continue;
                }
                let hit = goal == Some(key.as_str());
                self.states.insert(key, (tree.clone(), depth));
                if hit {
                    found = Some(tree);
                    break 'merge;
                }
            }
        }
        found
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            max_depth: self.cfg.max_depth,
            max_leaves: self.limits.max_leaves,
            max_spiders: self.limits.max_spiders,
            levels_completed: self.levels_completed,
            states: self.states.len(),
            truncated: self.truncated,
        }
    }

    fn run(&mut self, goal: Option<&str>) -> Option<Arc<ProofTree>> {
        if let Some(g) = goal {
            if let Some((t, _)) = self.states.get(g) {
                return Some(t.clone());
            }
        }
        for depth in 1..=self.cfg.max_depth {
            let before = self.states.len();
            let found = self.level(depth, goal);
            self.levels_completed = depth;
            if found.is_some() {
                return found;
            }
            if self.truncated || self.states.len() == before {
                break;
            }
        }
        None
    }
}

fn validate(cfg: &SearchConfig, goal: Option<&CompoundDiagram>) -> Result<(), SearchError> {
    if cfg.max_depth == 0 {
        return Err(SearchError::ZeroDepth);
    }
    let invalid = |what| move |source| SearchError::Invalid { what, source };
    let mut labels = BTreeSet::new();
    for p in &cfg.premises {
        p.validate().map_err(invalid("premise"))?;
        labels.extend(p.labels().cloned());
    }
    for a in &cfg.assertions {
        CompoundDiagram::Unit(a.clone())
            .validate()
            .map_err(invalid("assertion"))?;
        labels.insert(a.labels().clone());
    }
    if let Some(g) = goal {
        g.validate().map_err(invalid("goal"))?;
        labels.extend(g.labels().cloned());
    }
    if labels.len() > 1 {
        return Err(SearchError::LabelMismatch);
    }
    Ok(())
}

/// Searches for a proof of `goal` from the configured pools.
pub fn derive(cfg: &SearchConfig, goal: &CompoundDiagram) -> Result<SearchOutcome, SearchError> {
    validate(cfg, Some(goal))?;
    let mut engine = Engine::new(cfg, Some(goal));
    let proof = engine.run(Some(&goal.canonical_key()));
    Ok(SearchOutcome {
        proof: proof.map(|t| (*t).clone()),
        stats: engine.stats(),
    })
}

/// Every compound reachable within `max_depth`, with the height of its first proof.
///
/// Without a goal, AddFeet is not goal-directed and spider counts are unbounded.
pub fn reachable_set(cfg: &SearchConfig) -> Result<IndexMap<String, usize>, SearchError> {
    validate(cfg, None)?;
    let mut engine = Engine::new(cfg, None);
    engine.run(None);
    Ok(engine
        .states
        .into_iter()
        .map(|(k, (_, d))| (k, d))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{all_zones, label_set, SpiderEntry, Zone};
    use crate::proof::check_proof;

    fn one(zones: &[&[&str]]) -> UnitaryDiagram {
        let l = label_set(["A", "B"]).unwrap();
        UnitaryDiagram::new(
            l.clone(),
            all_zones(&l),
            [],
            [SpiderEntry::one(
                Region::new(zones.iter().map(|z| Zone::of(z, &l))).unwrap(),
            )],
        )
        .unwrap()
    }

    #[test]
    fn top_reaches_its_doubling() {
        let cfg = SearchConfig::new(vec![CompoundDiagram::Top], vec![]).with_max_depth(1);
        let r = reachable_set(&cfg).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r["TOP"], 0);
        assert_eq!(r["OR(TOP,TOP)"], 1);
        assert!(reachable_set(&SearchConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn finds_split_proof() {
        let premise = CompoundDiagram::from(one(&[&["A"], &["B"]]));
        let goal = CompoundDiagram::or(one(&[&["A"]]), one(&[&["B"]]));
        let cfg = SearchConfig::new(vec![premise.clone()], vec![]);
        let out = derive(&cfg, &goal).unwrap();
        let proof = out.proof.expect("proof");
        assert_eq!(proof.height(), 1);
        assert!(check_proof(&proof, &[premise]).unwrap().valid);
    }

    #[test]
    fn premise_goal_needs_no_rules() {
        let p = CompoundDiagram::from(one(&[&["A"]]));
        let out = derive(&SearchConfig::new(vec![p.clone()], vec![]), &p).unwrap();
        assert_eq!(out.proof.unwrap().height(), 0);
    }

    #[test]
    fn strategies_agree() {
        let premise = CompoundDiagram::from(one(&[&["A"], &["B"]]));
        let goal = CompoundDiagram::from(one(&[&["B"]]));
        let seq = SearchConfig::new(vec![premise.clone()], vec![one(&[&["B"]])])
            .with_exec(Exec::Sequential);
        let par = seq.clone().with_exec(Exec::Parallel);
        let a = derive(&seq, &goal).unwrap();
        let b = derive(&par, &goal).unwrap();
        assert_eq!(a.proof, b.proof);
        assert_eq!(a.stats, b.stats);
        assert!(a.proof.is_some());
    }
}
