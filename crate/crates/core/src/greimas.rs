//! The semiotic square as spider diagrams.
//!
//! Everything lives over the language `L = {S1, S2, M, X}` with
//! `S1, S2 ⊆ M ⊆ X`. Six zones are drawn and the overlap of `S1` and `S2`
//! is shaded, so the two semes never share a witness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    label_set, CompoundDiagram, Label, Region, SpiderEntry, UnitaryDiagram, Zone,
};
use crate::exec::Exec;
use crate::proof::{check_proof, CheckReport, ProofTree};
use crate::search::{derive, SearchConfig, SearchStats, DEFAULT_MAX_DEPTH};
use crate::semantics::{entails, zone_denotation, ElementSet, Interpretation, SemanticsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreimasError {
    #[error("diagram is not over the canonical square language")]
    LanguageMismatch,
    #[error("interpretation violates S1, S2 ⊆ M ⊆ X with S1 ∩ S2 = ∅")]
    Nesting,
    #[error("seme names must be nonempty and distinct")]
    BadSpec,
    #[error("unknown meta-term `{0}`")]
    UnknownTag(String),
    #[error("derivation {0} failed")]
    DerivationFailed(String),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

/// The six drawn zones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GZone {
    /// Inside `S1` (hence `M` and `X`).
    Z1,
    /// Inside `S2`.
    Z2,
    /// Inside both semes; always shaded.
    Z12,
    /// Inside `M` but neither seme.
    ZM,
    /// Inside `X` only.
    ZX,
    /// Outside everything.
    Z0,
}

impl GZone {
    pub const ALL: [GZone; 6] = [
        GZone::Z1,
        GZone::Z2,
        GZone::Z12,
        GZone::ZM,
        GZone::ZX,
        GZone::Z0,
    ];

    pub fn ins(self) -> &'static [&'static str] {
        match self {
            GZone::Z1 => &["S1", "M", "X"],
            GZone::Z2 => &["S2", "M", "X"],
            GZone::Z12 => &["S1", "S2", "M", "X"],
            GZone::ZM => &["M", "X"],
            GZone::ZX => &["X"],
            GZone::Z0 => &[],
        }
    }

    pub fn zone(self) -> Zone {
        Zone::of(self.ins(), &labels())
    }

    pub fn name(self) -> &'static str {
        match self {
            GZone::Z1 => "z1",
            GZone::Z2 => "z2",
            GZone::Z12 => "z12",
            GZone::ZM => "zM",
            GZone::ZX => "zX",
            GZone::Z0 => "z0",
        }
    }
}

/// One of the two contrary semes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Seme {
    S1,
    S2,
}

impl Seme {
    pub fn other(self) -> Seme {
        match self {
            Seme::S1 => Seme::S2,
            Seme::S2 => Seme::S1,
        }
    }

    pub fn label(self) -> Label {
        Label::new(match self {
            Seme::S1 => "S1",
            Seme::S2 => "S2",
        })
        .expect("valid")
    }

    /// The zone of this seme within `M`.
    pub fn zone(self) -> GZone {
        match self {
            Seme::S1 => GZone::Z1,
            Seme::S2 => GZone::Z2,
        }
    }

    pub fn from_index(i: u8) -> Option<Seme> {
        match i {
            1 => Some(Seme::S1),
            2 => Some(Seme::S2),
            _ => None,
        }
    }
}

pub fn labels() -> BTreeSet<Label> {
    label_set(["S1", "S2", "M", "X"]).expect("valid labels")
}

/// `(labels, zones, shaded)` of the square language.
pub fn canonical_language() -> (BTreeSet<Label>, BTreeSet<Zone>, BTreeSet<Zone>) {
    let zones = GZone::ALL.iter().map(|z| z.zone()).collect();
    (labels(), zones, BTreeSet::from([GZone::Z12.zone()]))
}

/// A diagram over the square language with one spider per listed habitat.
pub fn diagram(habitats: &[&[GZone]]) -> UnitaryDiagram {
    let (l, zones, shaded) = canonical_language();
    let mut counts: BTreeMap<Region, u32> = BTreeMap::new();
    for h in habitats {
        let r = Region::new(h.iter().map(|z| z.zone())).expect("nonempty habitat");
        *counts.entry(r).or_insert(0) += 1;
    }
    UnitaryDiagram::new(
        l,
        zones,
        shaded,
        counts.into_iter().map(|(r, n)| SpiderEntry::new(n, r)),
    )
    .expect("square diagrams are valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Corner {
    D1,
    D2,
    D3,
    D4,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::D1, Corner::D2, Corner::D3, Corner::D4];

    pub fn name(self) -> &'static str {
        match self {
            Corner::D1 => "d1",
            Corner::D2 => "d2",
            Corner::D3 => "d3",
            Corner::D4 => "d4",
        }
    }
}

/// `d1`: spider in `S1`; `d3`: spider in `S2`; `d2`, `d4`: their negations.
pub fn corner(c: Corner) -> UnitaryDiagram {
    match c {
        Corner::D1 => diagram(&[&[GZone::Z1]]),
        Corner::D2 => neg_diag(Seme::S1),
        Corner::D3 => diagram(&[&[GZone::Z2]]),
        Corner::D4 => neg_diag(Seme::S2),
    }
}

/// `¬diag(Si)`: one spider in the other seme's zone or outside `M`.
pub fn neg_diag(i: Seme) -> UnitaryDiagram {
    diagram(&[&[i.other().zone(), GZone::ZX]])
}

/// The single-spider diagram in `M` outside both semes.
pub fn m_witness() -> UnitaryDiagram {
    diagram(&[&[GZone::ZM]])
}

fn check_language(d: &UnitaryDiagram) -> Result<(), GreimasError> {
    let (l, zones, _) = canonical_language();
    if d.labels() == &l && d.zones() == &zones {
        Ok(())
    } else {
        Err(GreimasError::LanguageMismatch)
    }
}

fn z12_only(d: &UnitaryDiagram) -> bool {
    d.shaded() == &BTreeSet::from([GZone::Z12.zone()])
}

/// Contrariety: one spider each, shading `{z12}`, habitats `{z1}` and `{z2}`.
pub fn contrariety_check(a: &UnitaryDiagram, b: &UnitaryDiagram) -> Result<bool, GreimasError> {
    check_language(a)?;
    check_language(b)?;
    let single = |d: &UnitaryDiagram| -> Option<Region> {
        (d.spider_count() == 1)
            .then(|| d.spiders().keys().next().cloned())
            .flatten()
    };
    let (Some(ha), Some(hb)) = (single(a), single(b)) else {
        return Ok(false);
    };
    let (r1, r2) = (
        Region::single(GZone::Z1.zone()),
        Region::single(GZone::Z2.zone()),
    );
    let complementary = (ha == r1 && hb == r2) || (ha == r2 && hb == r1);
    Ok(z12_only(a) && z12_only(b) && complementary)
}

/// Clause-by-clause verdict of [`implication_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImplicationClauses {
    pub negation_source: bool,
    pub single_seme_target: bool,
    pub shading_preserved: bool,
    pub habitat_inclusion: bool,
}

impl ImplicationClauses {
    pub fn all(&self) -> bool {
        self.negation_source
            && self.single_seme_target
            && self.shading_preserved
            && self.habitat_inclusion
    }
}

pub fn implication_clauses(
    a: &UnitaryDiagram,
    b: &UnitaryDiagram,
    i: Seme,
) -> Result<ImplicationClauses, GreimasError> {
    check_language(a)?;
    check_language(b)?;
    let target = Region::single(i.other().zone().zone());
    let only = |d: &UnitaryDiagram| -> Option<Region> {
        (d.spider_count() == 1)
            .then(|| d.spiders().keys().next().cloned())
            .flatten()
    };
    let hb = only(b);
    let ha = only(a);
    Ok(ImplicationClauses {
        negation_source: CompoundDiagram::Unit(a.clone()).canonical_key()
            == CompoundDiagram::Unit(neg_diag(i)).canonical_key(),
        single_seme_target: hb.as_ref() == Some(&target),
        shading_preserved: z12_only(a) && z12_only(b),
        habitat_inclusion: matches!((&hb, &ha), (Some(hb), Some(ha)) if hb.is_subset(ha)),
    })
}

/// `a ⇒ b` for `a = ¬diag(Si)` and `b` a single witness of the other seme.
pub fn implication_check(
    a: &UnitaryDiagram,
    b: &UnitaryDiagram,
    i: Seme,
) -> Result<bool, GreimasError> {
    Ok(implication_clauses(a, b, i)?.all())
}

fn set(i: &Interpretation, name: &str) -> Result<ElementSet, GreimasError> {
    Ok(i.get(&Label::new(name).expect("valid"))?)
}

/// `S1, S2 ⊆ M ⊆ X` and `S1 ∩ S2 = ∅`.
pub fn nesting_holds(i: &Interpretation) -> Result<bool, GreimasError> {
    let (s1, s2, m, x) = (set(i, "S1")?, set(i, "S2")?, set(i, "M")?, set(i, "X")?);
    Ok(s1.is_subset(m) && s2.is_subset(m) && m.is_subset(x) && s1.intersection(s2).is_empty())
}

/// Denotation of the habitat of `¬diag(Si)`.
pub fn negation_denotation(i: &Interpretation, s: Seme) -> Result<ElementSet, GreimasError> {
    if !nesting_holds(i)? {
        return Err(GreimasError::Nesting);
    }
    Ok(zone_denotation(i, &s.other().zone().zone())?.union(zone_denotation(i, &GZone::ZX.zone())?))
}

/// The negation is `(Sj \ Si) ∪ (X \ (M ∪ S1 ∪ S2))`, and falls strictly
/// short of `X \ Si` exactly when `M \ (S1 ∪ S2)` is inhabited.
pub fn proposition_check(i: &Interpretation, s: Seme) -> Result<bool, GreimasError> {
    let den = negation_denotation(i, s)?;
    let (si, sj) = (
        set(i, s.label().as_str())?,
        set(i, s.other().label().as_str())?,
    );
    let (s1, s2, m, x) = (set(i, "S1")?, set(i, "S2")?, set(i, "M")?, set(i, "X")?);
    let expected = sj.difference(si).union(x.difference(m.union(s1).union(s2)));
    let complement = x.difference(si);
    let strict = den.is_subset(complement) && den != complement;
    let m_rest = !m.difference(s1.union(s2)).is_empty();
    Ok(den == expected && den.is_subset(complement) && strict == m_rest)
}

/// The six derived positions of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum MetaTerm {
    S,
    Sbar,
    Pos,
    Neg,
    PosSchema,
    NegSchema,
}

impl MetaTerm {
    pub const ALL: [MetaTerm; 6] = [
        MetaTerm::S,
        MetaTerm::Sbar,
        MetaTerm::Pos,
        MetaTerm::Neg,
        MetaTerm::PosSchema,
        MetaTerm::NegSchema,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MetaTerm::S => "S",
            MetaTerm::Sbar => "Sbar",
            MetaTerm::Pos => "Pos",
            MetaTerm::Neg => "Neg",
            MetaTerm::PosSchema => "PosSchema",
            MetaTerm::NegSchema => "NegSchema",
        }
    }

    /// The two corners it is derived from.
    pub fn inputs(self) -> (Corner, Corner) {
        match self {
            MetaTerm::S => (Corner::D1, Corner::D3),
            MetaTerm::Sbar => (Corner::D2, Corner::D4),
            MetaTerm::Pos => (Corner::D1, Corner::D4),
            MetaTerm::Neg => (Corner::D3, Corner::D2),
            MetaTerm::PosSchema => (Corner::D1, Corner::D2),
            MetaTerm::NegSchema => (Corner::D3, Corner::D4),
        }
    }

    /// Derivation name, `T5` to `T10`.
    pub fn derivation(self) -> &'static str {
        match self {
            MetaTerm::S => "T5",
            MetaTerm::Sbar => "T6",
            MetaTerm::Pos => "T7",
            MetaTerm::Neg => "T8",
            MetaTerm::PosSchema => "T9",
            MetaTerm::NegSchema => "T10",
        }
    }
}

impl FromStr for MetaTerm {
    type Err = GreimasError;

    fn from_str(s: &str) -> Result<Self, GreimasError> {
        MetaTerm::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| GreimasError::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for MetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn meta_term_target(tag: MetaTerm) -> UnitaryDiagram {
    use GZone::*;
    match tag {
        MetaTerm::S => diagram(&[&[Z1], &[Z2], &[ZM]]),
        MetaTerm::Sbar => diagram(&[&[Z1, ZX], &[Z2, ZX], &[ZM]]),
        MetaTerm::Pos => diagram(&[&[Z1, ZX], &[ZM]]),
        MetaTerm::Neg => diagram(&[&[Z2, ZX], &[ZM]]),
        MetaTerm::PosSchema => diagram(&[&[Z1], &[Z2, ZX], &[ZM]]),
        MetaTerm::NegSchema => diagram(&[&[Z2], &[Z1, ZX], &[ZM]]),
    }
}

pub fn meta_term_premise(tag: MetaTerm) -> CompoundDiagram {
    let (a, b) = tag.inputs();
    CompoundDiagram::and(corner(a), corner(b))
}

/// Structural conditions every meta-term conclusion must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetaTermClauses {
    /// Each input habitat lies within some spider habitat of the conclusion.
    pub inputs_witnessed: bool,
    /// A spider lives in `{zM}`.
    pub m_witness: bool,
    /// The inputs are covered without using the `{zM}` spider.
    pub m_witness_distinct: bool,
    pub shading_preserved: bool,
}

impl MetaTermClauses {
    pub fn all(&self) -> bool {
        self.inputs_witnessed && self.m_witness && self.m_witness_distinct && self.shading_preserved
    }
}

pub fn meta_term_clauses(tag: MetaTerm, d: &UnitaryDiagram) -> MetaTermClauses {
    let (a, b) = tag.inputs();
    let inputs: Vec<Region> = [a, b]
        .into_iter()
        .flat_map(|c| corner(c).spiders().keys().cloned().collect::<Vec<_>>())
        .collect();
    let zm = Region::single(GZone::ZM.zone());
    let covered = |skip_m: bool| {
        inputs.iter().all(|h| {
            d.spiders()
                .keys()
                .any(|r| !(skip_m && r == &zm) && h.is_subset(r))
        })
    };
    MetaTermClauses {
        inputs_witnessed: covered(false),
        m_witness: d.count_in(&zm) >= 1,
        m_witness_distinct: covered(true),
        shading_preserved: d.is_shaded(&GZone::Z12.zone()),
    }
}

/// Display names for the two semes; metadata only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareSpec {
    pub s1_name: String,
    pub s2_name: String,
}

impl SquareSpec {
    pub fn new(s1: impl Into<String>, s2: impl Into<String>) -> Result<Self, GreimasError> {
        let (s1_name, s2_name) = (s1.into(), s2.into());
        if s1_name.trim().is_empty() || s2_name.trim().is_empty() || s1_name == s2_name {
            return Err(GreimasError::BadSpec);
        }
        Ok(SquareSpec { s1_name, s2_name })
    }

    fn name(&self, s: Seme) -> &str {
        match s {
            Seme::S1 => &self.s1_name,
            Seme::S2 => &self.s2_name,
        }
    }

    /// `/life/`, `/not-life/` and so on.
    pub fn gloss(&self, c: Corner) -> String {
        match c {
            Corner::D1 => format!("/{}/", self.name(Seme::S1)),
            Corner::D2 => format!("/not-{}/", self.name(Seme::S1)),
            Corner::D3 => format!("/{}/", self.name(Seme::S2)),
            Corner::D4 => format!("/not-{}/", self.name(Seme::S2)),
        }
    }
}

/// One of the ten derivations of the square.
#[derive(Debug, Clone)]
pub struct DerivationTask {
    pub tag: String,
    pub gloss: String,
    pub meta_term: Option<MetaTerm>,
    pub premises: Vec<CompoundDiagram>,
    pub assertions: Vec<UnitaryDiagram>,
    pub goal: UnitaryDiagram,
}

/// The ten derivations `T1`..`T10` in order.
pub fn derivation_tasks(spec: &SquareSpec) -> Vec<DerivationTask> {
    let arrow = |from: Corner, to: Corner| format!("{} -> {}", spec.gloss(from), spec.gloss(to));
    let negation = |tag: &str, from: Corner, to: Corner, witness: UnitaryDiagram| DerivationTask {
        tag: tag.to_string(),
        gloss: arrow(from, to),
        meta_term: None,
        premises: vec![corner(from).into()],
        assertions: vec![witness],
        goal: corner(to),
    };
    let mut tasks = vec![
        negation("T1", Corner::D1, Corner::D2, neg_diag(Seme::S1)),
        negation("T2", Corner::D3, Corner::D4, neg_diag(Seme::S2)),
        negation("T3", Corner::D2, Corner::D3, corner(Corner::D3)),
        negation("T4", Corner::D4, Corner::D1, corner(Corner::D1)),
    ];
    for m in MetaTerm::ALL {
        let (a, b) = m.inputs();
        tasks.push(DerivationTask {
            tag: m.derivation().to_string(),
            gloss: format!("{} + {}", spec.gloss(a), spec.gloss(b)),
            meta_term: Some(m),
            premises: vec![meta_term_premise(m)],
            assertions: vec![m_witness()],
            goal: meta_term_target(m),
        });
    }
    tasks
}

#[derive(Debug, Clone)]
pub struct DerivationResult {
    pub task: DerivationTask,
    pub proof: Option<ProofTree>,
    pub stats: SearchStats,
    pub check: Option<CheckReport>,
    /// Premises and assertions jointly entail the conclusion at the bound.
    pub entailed: Option<bool>,
    pub clauses: Option<MetaTermClauses>,
}

impl DerivationResult {
    pub fn ok(&self) -> bool {
        self.check.as_ref().is_some_and(|c| c.valid)
            && self.entailed != Some(false)
            && self.clauses.is_none_or(|c| c.all())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareOptions {
    pub max_depth: usize,
    /// Universe bound for the entailment cross-check.
    pub bound: usize,
    pub exec: Exec,
}

impl Default for SquareOptions {
    fn default() -> Self {
        SquareOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            bound: 3,
            exec: Exec::default(),
        }
    }
}

pub fn run_derivation(task: DerivationTask, opts: &SquareOptions) -> DerivationResult {
    let cfg = SearchConfig::new(task.premises.clone(), task.assertions.clone())
        .with_max_depth(opts.max_depth)
        .with_exec(opts.exec);
    let goal = CompoundDiagram::Unit(task.goal.clone());
    let outcome = derive(&cfg, &goal).expect("square pools are valid");
    let check = outcome
        .proof
        .as_ref()
        .map(|p| check_proof(p, &task.premises).expect("search builds well-formed trees"));
    let entailed = outcome.proof.as_ref().map(|p| {
        let pool = CompoundDiagram::and_all(
            task.premises
                .iter()
                .cloned()
                .chain(task.assertions.iter().cloned().map(CompoundDiagram::Unit)),
        );
        entails(&pool, &p.conclusion, opts.bound).is_ok_and(|v| v.holds)
    });
    let clauses = match (task.meta_term, &outcome.proof) {
        (Some(m), Some(p)) => p.conclusion.as_unit().map(|u| meta_term_clauses(m, u)),
        _ => None,
    };
    DerivationResult {
        task,
        proof: outcome.proof,
        stats: outcome.stats,
        check,
        entailed,
        clauses,
    }
}

/// Searches for a proof of a meta-term target.
pub fn derive_meta_term(tag: MetaTerm, opts: &SquareOptions) -> Result<ProofTree, GreimasError> {
    let spec = SquareSpec::new("s1", "s2").expect("distinct");
    let task = derivation_tasks(&spec)
        .into_iter()
        .find(|t| t.meta_term == Some(tag))
        .expect("every meta-term has a task");
    let r = run_derivation(task, opts);
    if !r.ok() {
        return Err(GreimasError::DerivationFailed(tag.derivation().to_string()));
    }
    Ok(r.proof.expect("ok implies a proof"))
}

#[derive(Debug, Clone)]
pub struct SquareReport {
    pub spec: SquareSpec,
    pub options: SquareOptions,
    pub derivations: Vec<DerivationResult>,
    /// Contrariety verdict for every ordered pair of corners.
    pub contrariety: Vec<(Corner, Corner, bool)>,
    /// Implication verdict for every ordered pair of corners and seme.
    pub implications: Vec<(Corner, Corner, Seme, bool)>,
}

impl SquareReport {
    /// Named corners, with `d5..d8` the sources and targets of `T3`/`T4`.
    pub fn corners(&self) -> Vec<(&'static str, UnitaryDiagram)> {
        vec![
            ("d1", corner(Corner::D1)),
            ("d2", corner(Corner::D2)),
            ("d3", corner(Corner::D3)),
            ("d4", corner(Corner::D4)),
            ("d5", corner(Corner::D2)),
            ("d6", corner(Corner::D3)),
            ("d7", corner(Corner::D4)),
            ("d8", corner(Corner::D1)),
        ]
    }

    pub fn complex_axis(&self) -> (UnitaryDiagram, UnitaryDiagram) {
        (corner(Corner::D1), corner(Corner::D3))
    }

    pub fn neutral_axis(&self) -> (UnitaryDiagram, UnitaryDiagram) {
        (corner(Corner::D2), corner(Corner::D4))
    }

    pub fn derivation(&self, tag: &str) -> Option<&DerivationResult> {
        self.derivations.iter().find(|d| d.task.tag == tag)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.derivations
            .iter()
            .filter(|d| !d.ok())
            .map(|d| d.task.tag.as_str())
            .collect()
    }

    pub fn all_ok(&self) -> bool {
        self.failed().is_empty()
    }
}

/// Runs every derivation and relation check, recording failures in the report.
pub fn assemble_square(spec: &SquareSpec, opts: &SquareOptions) -> SquareReport {
    let tasks = derivation_tasks(spec);
    let derivations = opts.exec.map(&tasks, |t| run_derivation(t.clone(), opts));
    let mut contrariety = Vec::new();
    let mut implications = Vec::new();
    for a in Corner::ALL {
        for b in Corner::ALL {
            let (da, db) = (corner(a), corner(b));
            contrariety.push((a, b, contrariety_check(&da, &db).expect("square language")));
            for s in [Seme::S1, Seme::S2] {
                implications.push((
                    a,
                    b,
                    s,
                    implication_check(&da, &db, s).expect("square language"),
                ));
            }
        }
    }
    SquareReport {
        spec: spec.clone(),
        options: *opts,
        derivations,
        contrariety,
        implications,
    }
}

/// [`assemble_square`], failing with the first derivation that did not check.
pub fn build_square(spec: &SquareSpec, opts: &SquareOptions) -> Result<SquareReport, GreimasError> {
    let report = assemble_square(spec, opts);
    if let Some(tag) = report.failed().first() {
        return Err(GreimasError::DerivationFailed(tag.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::is_alpha;

    #[test]
    fn language_shape() {
        let (l, zones, shaded) = canonical_language();
        assert_eq!(l.len(), 4);
        assert_eq!(zones.len(), 6);
        assert!(shaded.contains(&GZone::Z12.zone()));
        assert!(zones.contains(&GZone::Z0.zone()));
    }

    #[test]
    fn corners() {
        let d2 = corner(Corner::D2);
        let h: Vec<&Region> = d2.spiders().keys().collect();
        assert_eq!(
            h,
            vec![&Region::new([GZone::Z2.zone(), GZone::ZX.zone()]).unwrap()]
        );
        assert!(is_alpha(&corner(Corner::D1)));
        assert!(!is_alpha(&corner(Corner::D4)));
    }

    #[test]
    fn relations() {
        let [d1, d2, d3, d4] = Corner::ALL.map(corner);
        assert!(contrariety_check(&d1, &d3).unwrap());
        assert!(contrariety_check(&d3, &d1).unwrap());
        assert!(!contrariety_check(&d1, &d2).unwrap());
        assert!(!contrariety_check(&d1, &d1).unwrap());
        assert!(implication_check(&d4, &d1, Seme::S2).unwrap());
        assert!(implication_check(&d2, &d3, Seme::S1).unwrap());
        assert!(!implication_check(&d1, &d3, Seme::S1).unwrap());
        let other = crate::diagram::UnitaryDiagram::new(
            labels(),
            crate::diagram::all_zones(&labels()),
            [],
            [],
        )
        .unwrap();
        assert_eq!(
            contrariety_check(&other, &d1),
            Err(GreimasError::LanguageMismatch)
        );
    }

    #[test]
    fn proposition_example() {
        let i = Interpretation::of(
            3,
            &[
                ("S1", &[0]),
                ("S2", &[1]),
                ("M", &[0, 1, 2]),
                ("X", &[0, 1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(
            negation_denotation(&i, Seme::S1).unwrap(),
            ElementSet::from_elements([1])
        );
        assert!(proposition_check(&i, Seme::S1).unwrap());
        assert!(proposition_check(&i, Seme::S2).unwrap());
        let bad =
            Interpretation::of(1, &[("S1", &[0]), ("S2", &[]), ("M", &[]), ("X", &[])]).unwrap();
        assert_eq!(
            negation_denotation(&bad, Seme::S1),
            Err(GreimasError::Nesting)
        );
    }

    #[test]
    fn targets() {
        for m in MetaTerm::ALL {
            let t = meta_term_target(m);
            assert_eq!(t.count_in(&Region::single(GZone::ZM.zone())), 1, "{m}");
            assert!(meta_term_clauses(m, &t).all(), "{m}");
        }
        assert_eq!(meta_term_target(MetaTerm::S).spider_count(), 3);
        assert!(SquareSpec::new("a", "a").is_err());
        assert!(SquareSpec::new("", "b").is_err());
    }
}
