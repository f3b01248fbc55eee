use std::sync::Arc;

use spidersq_core::diagram::{CompoundDiagram, Position, Region};
use spidersq_core::greimas::{corner, diagram, neg_diag, Corner, GZone, Seme};
use spidersq_core::io::json::{proof_from_json, proof_to_json};
use spidersq_core::proof::{check_proof, Justification, ProofTree};
use spidersq_core::rules::{Rule, RuleFilter, RuleInstance, RuleName, SpiderAddr};
use spidersq_core::search::{derive, reachable_set, SearchConfig};
use spidersq_core::semantics::entails;

fn unit(d: spidersq_core::UnitaryDiagram) -> CompoundDiagram {
    d.into()
}

/// SplitSpider on d5, Combine the right disjunct with the asserted z2
/// witness, erase the zX spider, then Idempotency.
fn t3_tree(root: CompoundDiagram) -> ProofTree {
    use GZone::*;
    let habitat = Region::new([Z2.zone(), ZX.zone()]).unwrap();
    let premise = Arc::new(ProofTree::premise(root));
    let split = ProofTree::derive(
        RuleInstance::at_root(Rule::SplitSpider {
            spider: SpiderAddr::first(habitat),
            r1: Region::single(Z2.zone()),
            r2: Region::single(ZX.zone()),
        }),
        vec![premise],
    )
    .unwrap();
    let witness = Arc::new(ProofTree::assertion(diagram(&[&[Z2]])));
    let combined = ProofTree::derive(
        RuleInstance::new(Position(vec![1]), Rule::Combine),
        vec![Arc::new(split), witness],
    )
    .unwrap();
    let erased = ProofTree::derive(
        RuleInstance::new(
            Position(vec![1]),
            Rule::EraseSpider {
                spider: SpiderAddr::first(Region::single(ZX.zone())),
            },
        ),
        vec![Arc::new(combined)],
    )
    .unwrap();
    ProofTree::derive(
        RuleInstance::at_root(Rule::IdempotencyElim),
        vec![Arc::new(erased)],
    )
    .unwrap()
}

#[test]
fn t3_tree_checks() {
    let d5 = unit(corner(Corner::D2));
    let t = t3_tree(d5.clone());
    assert_eq!(
        t.conclusion.canonical_key(),
        unit(corner(Corner::D3)).canonical_key()
    );
    let report = check_proof(&t, &[d5]).unwrap();
    assert!(report.valid);
    assert_eq!(report.steps_checked, 4);
    assert_eq!(report.assertions_used, vec![unit(diagram(&[&[GZone::Z2]]))]);
    let families: Vec<_> = t.rule_families().into_iter().collect();
    assert_eq!(
        families,
        ["Combine", "EraseSpider", "Idempotency", "SplitSpider"]
    );
}

#[test]
fn t3_tree_with_wrong_premise_fails_at_the_leaf() {
    let t = t3_tree(unit(corner(Corner::D2)));
    let report = check_proof(&t, &[unit(corner(Corner::D4))]).unwrap();
    assert!(!report.valid);
    let failure = report.first_failure.unwrap();
    // Leftmost-deepest: root > erase > combine > split > premise.
    assert_eq!(failure.path.to_string(), "0.0.0.0");
    assert_eq!(report.steps_checked, 0);
}

#[test]
fn proofs_survive_json() {
    let t = t3_tree(unit(corner(Corner::D2)));
    let text = proof_to_json(&t);
    let back = proof_from_json(&text).unwrap();
    assert_eq!(proof_to_json(&back), text);
    assert!(
        check_proof(&back, &[unit(corner(Corner::D2))])
            .unwrap()
            .valid
    );
}

fn joint(cfg: &SearchConfig) -> CompoundDiagram {
    CompoundDiagram::and_all(
        cfg.premises
            .iter()
            .cloned()
            .chain(cfg.assertions.iter().cloned().map(CompoundDiagram::from)),
    )
}

#[test]
fn negation_t1_from_its_assertion() {
    let cfg = SearchConfig::new(vec![unit(corner(Corner::D1))], vec![neg_diag(Seme::S1)]);
    let goal = unit(corner(Corner::D2));
    let proof = derive(&cfg, &goal)
        .unwrap()
        .proof
        .expect("a proof within depth 8");
    assert_eq!(proof.conclusion.canonical_key(), goal.canonical_key());
    assert!(check_proof(&proof, &cfg.premises).unwrap().valid);
    assert!(entails(&joint(&cfg), &proof.conclusion, 3).unwrap().holds);
}

#[test]
fn t3_search_matches_the_figure() {
    let cfg = SearchConfig::new(vec![unit(corner(Corner::D2))], vec![corner(Corner::D3)])
        .with_max_depth(6);
    let proof = derive(&cfg, &unit(corner(Corner::D3)))
        .unwrap()
        .proof
        .unwrap();
    let multiset: Vec<(&str, usize)> = proof.rule_multiset().into_iter().collect();
    assert_eq!(
        multiset,
        [
            ("Combine", 1),
            ("EraseSpider", 1),
            ("Idempotency", 1),
            ("SplitSpider", 1)
        ]
    );
    assert!(check_proof(&proof, &cfg.premises).unwrap().valid);
}

#[test]
fn contrary_corner_is_unreachable() {
    let cfg = SearchConfig::new(vec![unit(corner(Corner::D1))], vec![]).with_max_depth(8);
    let d3 = unit(corner(Corner::D3));
    let outcome = derive(&cfg, &d3).unwrap();
    assert!(outcome.proof.is_none());
    assert!(!outcome.stats.truncated);
    let verdict = entails(&unit(corner(Corner::D1)), &d3, 3).unwrap();
    assert!(!verdict.holds && verdict.countermodel.is_some());
}

#[test]
fn reachable_sets() {
    let top = SearchConfig::new(vec![CompoundDiagram::Top], vec![]).with_max_depth(1);
    let keys: Vec<String> = reachable_set(&top).unwrap().into_keys().collect();
    assert_eq!(
        keys,
        [
            CompoundDiagram::Top.canonical_key(),
            CompoundDiagram::or(CompoundDiagram::Top, CompoundDiagram::Top).canonical_key()
        ]
    );

    let feet = SearchConfig::new(vec![unit(corner(Corner::D1))], vec![])
        .with_max_depth(1)
        .with_rules(RuleFilter::only(&[RuleName::AddFeet]));
    assert_eq!(reachable_set(&feet).unwrap().len(), 6);

    let empty = SearchConfig::new(vec![], vec![]).with_max_depth(3);
    assert!(reachable_set(&empty).unwrap().is_empty());
}

#[test]
fn leaves_are_premises_or_assertions() {
    let cfg = SearchConfig::new(vec![unit(corner(Corner::D4))], vec![corner(Corner::D1)]);
    let proof = derive(&cfg, &unit(corner(Corner::D1)))
        .unwrap()
        .proof
        .unwrap();
    fn walk(t: &ProofTree, out: &mut Vec<&'static str>) {
        match &t.justification {
            Justification::Premise => out.push("premise"),
            Justification::Assertion => out.push("assertion"),
            Justification::Rule { children, .. } => children.iter().for_each(|c| walk(c, out)),
        }
    }
    let mut leaves = Vec::new();
    walk(&proof, &mut leaves);
    assert!(leaves.contains(&"premise") && leaves.contains(&"assertion"));
}
