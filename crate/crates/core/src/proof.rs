//! Proof trees and the proof checker.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::diagram::CompoundDiagram;
use crate::rules::{apply, RuleInstance, RuleName};

pub use crate::io::json::{proof_from_json, proof_to_json};

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Justification {
    Premise,
    /// A diagram introduced from outside the premises.
    Assertion,
    Rule {
        instance: RuleInstance,
        children: Vec<Arc<ProofTree>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: CompoundDiagram,
    pub justification: Justification,
}

impl ProofTree {
    pub fn premise(d: impl Into<CompoundDiagram>) -> Self {
        ProofTree {
            conclusion: d.into(),
            justification: Justification::Premise,
        }
    }

    pub fn assertion(d: impl Into<CompoundDiagram>) -> Self {
        ProofTree {
            conclusion: d.into(),
            justification: Justification::Assertion,
        }
    }

    pub fn rule(
        conclusion: CompoundDiagram,
        instance: RuleInstance,
        children: Vec<Arc<ProofTree>>,
    ) -> Self {
        ProofTree {
            conclusion,
            justification: Justification::Rule { instance, children },
        }
    }

    /// Applies `instance` to the children's conclusions and wraps the result.
    pub fn derive(
        instance: RuleInstance,
        children: Vec<Arc<ProofTree>>,
    ) -> Result<Self, crate::rules::RuleError> {
        let inputs: Vec<&CompoundDiagram> = children.iter().map(|c| &c.conclusion).collect();
        let conclusion = apply(&instance, &inputs)?;
        Ok(ProofTree::rule(conclusion, instance, children))
    }

    pub fn children(&self) -> &[Arc<ProofTree>] {
        match &self.justification {
            Justification::Rule { children, .. } => children,
            _ => &[],
        }
    }

    /// Leaves have height 0.
    pub fn height(&self) -> usize {
        self.children()
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Rule names in post-order.
    pub fn rules_used(&self) -> Vec<RuleName> {
        let mut out = Vec::new();
        self.collect_rules(&mut out);
        out
    }

    fn collect_rules(&self, out: &mut Vec<RuleName>) {
        for c in self.children() {
            c.collect_rules(out);
        }
        if let Justification::Rule { instance, .. } = &self.justification {
            out.push(instance.rule.name());
        }
    }

    /// Multiset of rule families, with both idempotency directions as `Idempotency`.
    pub fn rule_multiset(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for r in self.rules_used() {
            *out.entry(r.family()).or_insert(0) += 1;
        }
        out
    }

    /// Set of rule families used.
    pub fn rule_families(&self) -> BTreeSet<&'static str> {
        self.rule_multiset().into_keys().collect()
    }

    /// Leaf conclusions of the given kind, left to right, deduplicated canonically.
    pub fn leaves(&self, assertions: bool) -> Vec<CompoundDiagram> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_leaves(assertions, &mut seen, &mut out);
        out
    }

    fn collect_leaves(
        &self,
        assertions: bool,
        seen: &mut BTreeSet<String>,
        out: &mut Vec<CompoundDiagram>,
    ) {
        let wanted = match self.justification {
            Justification::Premise => !assertions,
            Justification::Assertion => assertions,
            Justification::Rule { .. } => false,
        };
        if wanted && seen.insert(self.conclusion.canonical_key()) {
            out.push(self.conclusion.clone());
        }
        for c in self.children() {
            c.collect_leaves(assertions, seen, out);
        }
    }
}

/// Child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreePath(pub Vec<usize>);

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub path: TreePath,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub valid: bool,
    /// Rule applications verified before the first failure.
    pub steps_checked: usize,
    pub first_failure: Option<Failure>,
    pub premises_used: Vec<CompoundDiagram>,
    pub assertions_used: Vec<CompoundDiagram>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("node {path}: {rule} needs {expected} children, found {found}")]
    Arity {
        path: TreePath,
        rule: RuleName,
        expected: usize,
        found: usize,
    },
}

fn check_arity(t: &ProofTree, path: &mut Vec<usize>) -> Result<(), ProofError> {
    if let Justification::Rule { instance, children } = &t.justification {
        let name = instance.rule.name();
        if children.len() != name.arity() {
            return Err(ProofError::Arity {
                path: TreePath(path.clone()),
                rule: name,
                expected: name.arity(),
                found: children.len(),
            });
        }
        for (i, c) in children.iter().enumerate() {
            path.push(i);
            check_arity(c, path)?;
            path.pop();
        }
    }
    Ok(())
}

/// Checks every step of `t` against `premises`.
///
/// Children are checked before their parent, left to right, so the
/// reported failure is the leftmost-deepest one. Assertion leaves are
/// accepted and listed separately.
pub fn check_proof(t: &ProofTree, premises: &[CompoundDiagram]) -> Result<CheckReport, ProofError> {
    check_arity(t, &mut Vec::new())?;
    let allowed: BTreeSet<String> = premises.iter().map(|p| p.canonical_key()).collect();
    let mut steps = 0;
    let first_failure = check_node(t, &allowed, &mut Vec::new(), &mut steps).err();
    Ok(CheckReport {
        valid: first_failure.is_none(),
        steps_checked: steps,
        first_failure,
        premises_used: t.leaves(false),
        assertions_used: t.leaves(true),
    })
}

fn check_node(
    t: &ProofTree,
    allowed: &BTreeSet<String>,
    path: &mut Vec<usize>,
    steps: &mut usize,
) -> Result<(), Failure> {
    let fail = |path: &Vec<usize>, reason: String| Failure {
        path: TreePath(path.clone()),
        reason,
    };
    match &t.justification {
        Justification::Premise | Justification::Assertion => {
            if let Err(e) = t.conclusion.validate() {
                return Err(fail(path, format!("invalid leaf diagram: {e}")));
            }
            if t.justification == Justification::Premise
                && !allowed.contains(&t.conclusion.canonical_key())
            {
                return Err(fail(
                    path,
                    "premise is not among the allowed premises".into(),
                ));
            }
            Ok(())
        }
        Justification::Rule { instance, children } => {
            for (i, c) in children.iter().enumerate() {
                path.push(i);
                check_node(c, allowed, path, steps)?;
                path.pop();
            }
            let inputs: Vec<&CompoundDiagram> = children.iter().map(|c| &c.conclusion).collect();
            let out =
                apply(instance, &inputs).map_err(|e| fail(path, format!("{instance}: {e}")))?;
            if out.canonical_key() != t.conclusion.canonical_key() {
                return Err(fail(
                    path,
                    format!("{instance}: conclusion differs from the rule's output"),
                ));
            }
            *steps += 1;
            Ok(())
        }
    }
}
