mod common;

use proptest::prelude::*;
use spidersq_core::audit::{
    audit_family, greimas_family, obligation, two_label_family, Obligation,
};
use spidersq_core::diagram::{CompoundDiagram, Region};
use spidersq_core::greimas::{corner, diagram, m_witness, Corner, GZone};
use spidersq_core::rules::{
    applicable_instances, apply, combine, copy_instances, split_spider, RuleFilter, RuleName,
    SpiderAddr,
};
use spidersq_core::semantics::{entails, equivalent};
use spidersq_core::Exec;

#[test]
fn greimas_fixtures_are_sound() {
    let report = audit_family(&greimas_family(), 3, true, Exec::default()).unwrap();
    assert!(report.passed(), "{:#?}", report.violations);
    for rule in RuleName::ALL {
        assert!(
            report.instances.get(rule.as_str()).copied().unwrap_or(0) > 0,
            "{rule} never applied"
        );
    }
}

#[test]
fn two_label_family_shape() {
    let family = two_label_family();
    assert!(family.iter().all(|d| d.labels().len() == 2));
    assert!(family.iter().all(|d| d.spider_count() <= 2));
    assert!(family
        .iter()
        .all(|d| d.spiders().keys().all(|h| h.len() <= 2)));
    // 5 zone sets cover both labels; the largest has 16 shadings x 66 spider sets.
    let zone_sets: std::collections::BTreeSet<_> =
        family.iter().map(|d| d.zones().clone()).collect();
    assert_eq!(zone_sets.len(), 5);
    assert_eq!(family.len(), 1768);
}

#[test]
fn split_of_three_feet_is_equivalent() {
    use GZone::*;
    let d = diagram(&[&[Z1, Z2, ZX]]);
    let habitat = Region::new([Z1.zone(), Z2.zone(), ZX.zone()]).unwrap();
    let out = split_spider(
        &d,
        &SpiderAddr::first(habitat),
        &Region::single(Z1.zone()),
        &Region::new([Z2.zone(), ZX.zone()]).unwrap(),
    )
    .unwrap();
    assert!(equivalent(&d.into(), &out, 3).unwrap());
}

#[test]
fn combine_merges_witnesses() {
    use GZone::*;
    let a: CompoundDiagram = diagram(&[&[Z1]]).into();
    let b: CompoundDiagram = m_witness().into();
    let c = combine(&a, &b).unwrap();
    assert_eq!(
        c.canonical_key(),
        CompoundDiagram::from(diagram(&[&[Z1], &[ZM]])).canonical_key()
    );
    assert!(equivalent(&CompoundDiagram::and(a, b), &c, 3).unwrap());
}

#[test]
fn copy_over_a_two_zone_habitat() {
    let d1 = corner(Corner::D1);
    let d2 = corner(Corner::D2);
    let insts = copy_instances(&d1.clone().into(), &d2);
    assert_eq!(insts.len(), 1);
    let out = apply(&insts[0], &[&d1.clone().into(), &d2.clone().into()]).unwrap();
    let both = CompoundDiagram::and(d1, d2);
    assert!(equivalent(&both, &out, 3).unwrap());
}

#[test]
fn instance_counts_on_corners() {
    let d1: CompoundDiagram = corner(Corner::D1).into();
    let add = applicable_instances(&d1, &RuleFilter::only(&[RuleName::AddFeet]));
    assert_eq!(add.len(), 5);
    let d5: CompoundDiagram = corner(Corner::D2).into();
    let split = applicable_instances(&d5, &RuleFilter::only(&[RuleName::SplitSpider]));
    assert_eq!(split.len(), 2);
    let top = applicable_instances(&CompoundDiagram::Top, &RuleFilter::all());
    assert_eq!(top.len(), 1);
    assert_eq!(top[0].rule.name(), RuleName::IdempotencyIntro);
}

proptest! {
    #![proptest_config(common::config(48))]

    /// Every unary instance on a random diagram keeps its obligation.
    #[test]
    fn unary_rules_are_sound(d in common::arb_diagram()) {
        let unit = CompoundDiagram::Unit(d);
        for inst in applicable_instances(&unit, &RuleFilter::all()) {
            let out = apply(&inst, &[&unit]).unwrap();
            prop_assert!(entails(&unit, &out, 2).unwrap().holds, "{inst}");
            if obligation(inst.rule.name()) == Obligation::Equivalence {
                prop_assert!(entails(&out, &unit, 2).unwrap().holds, "{inst}");
            }
        }
    }

    /// Binary instances on random pairs over a shared label set.
    #[test]
    fn binary_rules_are_sound(a in common::arb_diagram(), b in common::arb_diagram()) {
        prop_assume!(a.labels() == b.labels());
        let (ca, cb) = (CompoundDiagram::Unit(a), CompoundDiagram::Unit(b.clone()));
        let both = CompoundDiagram::and(ca.clone(), cb.clone());
        let insts = spidersq_core::rules::combine_instances(&ca, &cb)
            .into_iter()
            .chain(copy_instances(&ca, &b));
        for inst in insts {
            let out = apply(&inst, &[&ca, &cb]).unwrap();
            prop_assert!(equivalent(&both, &out, 2).unwrap(), "{inst}");
        }
    }
}
