#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use spidersq_core::diagram::{
    all_zones, label_set, Label, Region, SpiderEntry, UnitaryDiagram, Zone,
};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures())
        .expect("fixtures directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "sd"))
        .collect();
    files.sort();
    files
}

pub fn labels(n: usize) -> BTreeSet<Label> {
    label_set(["A", "B", "C"].into_iter().take(n)).expect("valid labels")
}

/// Valid unitary diagrams over one to three labels.
pub fn arb_diagram() -> impl Strategy<Value = UnitaryDiagram> {
    (1usize..=3).prop_flat_map(|n| {
        let all: Vec<Zone> = all_zones(&labels(n)).into_iter().collect();
        let k = all.len();
        (
            Just(n),
            Just(all),
            any::<u8>(),
            any::<u8>(),
            prop::collection::vec((1u8..(1 << k.min(7)), 1u32..=2), 0..=3),
        )
            .prop_filter_map(
                "labels must be covered",
                |(n, all, zmask, smask, spiders)| {
                    let outer = Zone::of(&[], &labels(n));
                    let zones: Vec<Zone> = all
                        .iter()
                        .enumerate()
                        .filter(|(i, z)| **z == outer || zmask & (1 << i) != 0)
                        .map(|(_, z)| z.clone())
                        .collect();
                    let shaded: Vec<Zone> = zones
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| smask & (1 << i) != 0)
                        .map(|(_, z)| z.clone())
                        .collect();
                    let mut seen = BTreeSet::new();
                    let entries: Vec<SpiderEntry> = spiders
                        .into_iter()
                        .filter_map(|(mask, count)| {
                            let feet: Vec<Zone> = zones
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| mask & (1 << i) != 0)
                                .map(|(_, z)| z.clone())
                                .collect();
                            let habitat = Region::new(feet).ok()?;
                            seen.insert(habitat.clone())
                                .then(|| SpiderEntry::new(count, habitat))
                        })
                        .collect();
                    UnitaryDiagram::new(labels(n), zones, shaded, entries).ok()
                },
            )
    })
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
