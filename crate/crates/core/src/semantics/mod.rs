//! Model-theoretic semantics: interpretations, satisfaction, bounded
//! entailment and model counting.
//!
//! Missing zones denote the empty set, spiders denote pairwise distinct
//! elements, and a shaded zone holds nothing but spider images.

mod fol;

pub use fol::{evaluate, to_fol, Formula, Var};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CompoundDiagram, Label, UnitaryDiagram, Zone};
use crate::exec::Exec;

/// Largest universe an interpretation may have.
pub const MAX_UNIVERSE: usize = 16;
/// Largest `universe_size * |labels|` accepted by the enumerators.
pub const MAX_ENUMERATION_BITS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("label `{0}` has no assignment in the interpretation")]
    UnknownLabel(String),
    #[error("interpretation labels {interp} do not match diagram labels {diagram}")]
    LabelMismatch { interp: String, diagram: String },
    #[error("universe of size {0} exceeds the supported maximum {MAX_UNIVERSE}")]
    UniverseTooLarge(usize),
    #[error("element e{element} is outside a universe of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("enumerating {labels} labels over {size} elements is too large")]
    EnumerationTooLarge { labels: usize, size: usize },
    #[error("free variable x{0} in formula")]
    FreeVariable(u32),
}

/// A subset of the universe `{e0, ..., e(n-1)}` as a bitmask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(pub u64);

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet(0)
    }

    pub fn full(size: usize) -> Self {
        ElementSet(universe_mask(size))
    }

    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Self {
        ElementSet(elements.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 & (1 << e) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&e| self.0 & (1 << e) != 0)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|e| format!("e{e}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.elements().map(|e| format!("e{e}")))
    }
}

fn universe_mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

/// `I = (U, Φ)` with `U = {e0, ..., e(size-1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interpretation {
    size: usize,
    assignment: BTreeMap<Label, ElementSet>,
}

impl Interpretation {
    pub fn new(
        size: usize,
        assignment: impl IntoIterator<Item = (Label, ElementSet)>,
    ) -> Result<Self, SemanticsError> {
        if size > MAX_UNIVERSE {
            return Err(SemanticsError::UniverseTooLarge(size));
        }
        let assignment: BTreeMap<Label, ElementSet> = assignment.into_iter().collect();
        for set in assignment.values() {
            if let Some(e) = set.elements().find(|&e| e >= size) {
                return Err(SemanticsError::ElementOutOfRange { element: e, size });
            }
        }
        Ok(Interpretation { size, assignment })
    }

    /// Convenience constructor from `(label name, elements)` pairs; panics on bad names.
    pub fn of(size: usize, sets: &[(&str, &[usize])]) -> Result<Self, SemanticsError> {
        Interpretation::new(
            size,
            sets.iter().map(|(l, es)| {
                (
                    Label::new(*l).expect("valid label"),
                    ElementSet::from_elements(es.iter().copied()),
                )
            }),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn universe(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.assignment.keys().cloned().collect()
    }

    pub fn get(&self, label: &Label) -> Result<ElementSet, SemanticsError> {
        self.assignment
            .get(label)
            .copied()
            .ok_or_else(|| SemanticsError::UnknownLabel(label.to_string()))
    }

    pub fn assignment(&self) -> &BTreeMap<Label, ElementSet> {
        &self.assignment
    }

    fn masks(&self) -> Vec<u64> {
        self.assignment.values().map(|s| s.0).collect()
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U={}", self.universe())?;
        for (l, s) in &self.assignment {
            write!(f, " {l}={s}")?;
        }
        Ok(())
    }
}

/// `Φ(in, out)`: the intersection of the `ins` with the complements of the `outs`.
pub fn zone_denotation(i: &Interpretation, z: &Zone) -> Result<ElementSet, SemanticsError> {
    let mut acc = i.universe();
    for l in z.ins() {
        acc = acc.intersection(i.get(l)?);
    }
    for l in z.outs() {
        acc = acc.difference(i.get(l)?);
    }
    Ok(acc)
}

/// Union of the zone denotations of a habitat.
pub fn region_denotation<'a>(
    i: &Interpretation,
    zones: impl IntoIterator<Item = &'a Zone>,
) -> Result<ElementSet, SemanticsError> {
    zones.into_iter().try_fold(ElementSet::empty(), |acc, z| {
        Ok(acc.union(zone_denotation(i, z)?))
    })
}

fn fmt_labels(labels: &BTreeSet<Label>) -> String {
    let names: Vec<&str> = labels.iter().map(Label::as_str).collect();
    format!("{{{}}}", names.join(","))
}

/// A unitary diagram compiled against a fixed label order.
#[derive(Debug, Clone)]
struct CompiledUnit {
    missing: Vec<u32>,
    shaded: Vec<u32>,
    /// One entry per spider (multiplicity expanded), equal habitats adjacent.
    habitats: Vec<Vec<u32>>,
}

fn zone_mask(z: &Zone, order: &[Label]) -> u32 {
    order
        .iter()
        .enumerate()
        .filter(|(_, l)| z.ins().contains(*l))
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

#[inline]
fn den(mask: u32, masks: &[u64], universe: u64) -> u64 {
    let mut acc = universe;
    for (i, &m) in masks.iter().enumerate() {
        if mask & (1 << i) != 0 {
            acc &= m;
        } else {
            acc &= !m;
        }
    }
    acc
}

impl CompiledUnit {
    fn new(d: &UnitaryDiagram, order: &[Label]) -> Self {
        let missing = d
            .missing_zones()
            .iter()
            .map(|z| zone_mask(z, order))
            .collect();
        let shaded = d.shaded().iter().map(|z| zone_mask(z, order)).collect();
        let mut habitats = Vec::new();
        for (r, &n) in d.spiders() {
            let h: Vec<u32> = r.iter().map(|z| zone_mask(z, order)).collect();
            for _ in 0..n {
                habitats.push(h.clone());
            }
        }
        CompiledUnit {
            missing,
            shaded,
            habitats,
        }
    }

    fn satisfied(&self, masks: &[u64], size: usize) -> bool {
        let universe = universe_mask(size);
        if self.missing.iter().any(|&z| den(z, masks, universe) != 0) {
            return false;
        }
        let n = self.habitats.len();
        if n > size {
            return false;
        }
        let shaded = self
            .shaded
            .iter()
            .fold(0u64, |acc, &z| acc | den(z, masks, universe));
        if shaded.count_ones() as usize > n {
            return false;
        }
        let dens: Vec<u64> = self
            .habitats
            .iter()
            .map(|h| h.iter().fold(0u64, |acc, &z| acc | den(z, masks, universe)))
            .collect();
        let same_as_prev: Vec<bool> = (0..n)
            .map(|k| k > 0 && self.habitats[k] == self.habitats[k - 1])
            .collect();
        assign(&dens, &same_as_prev, shaded, 0, 0, 0)
    }
}

/// Injective assignment of spiders `k..` to unused elements covering `shaded`.
fn assign(dens: &[u64], same: &[bool], shaded: u64, k: usize, used: u64, prev: u32) -> bool {
    let uncovered = (shaded & !used).count_ones() as usize;
    if uncovered > dens.len() - k {
        return false;
    }
    if k == dens.len() {
        return uncovered == 0;
    }
    let mut options = dens[k] & !used;
    // interchangeable spiders take increasing elements
    if same[k] {
        options &= !((2u64 << prev) - 1);
    }
    while options != 0 {
        let e = options.trailing_zeros();
        options &= options - 1;
        if assign(dens, same, shaded, k + 1, used | (1 << e), e) {
            return true;
        }
    }
    false
}

#[derive(Debug, Clone)]
enum Compiled {
    Unit(CompiledUnit),
    Top,
    Bottom,
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(d: &CompoundDiagram, order: &[Label]) -> Self {
        match d {
            CompoundDiagram::Unit(u) => Compiled::Unit(CompiledUnit::new(u, order)),
            CompoundDiagram::Top => Compiled::Top,
            CompoundDiagram::Bottom => Compiled::Bottom,
            CompoundDiagram::And(a, b) => Compiled::And(
                Box::new(Compiled::new(a, order)),
                Box::new(Compiled::new(b, order)),
            ),
            CompoundDiagram::Or(a, b) => Compiled::Or(
                Box::new(Compiled::new(a, order)),
                Box::new(Compiled::new(b, order)),
            ),
        }
    }

    fn eval(&self, masks: &[u64], size: usize) -> bool {
        match self {
            Compiled::Unit(u) => u.satisfied(masks, size),
            Compiled::Top => true,
            Compiled::Bottom => false,
            Compiled::And(a, b) => a.eval(masks, size) && b.eval(masks, size),
            Compiled::Or(a, b) => a.eval(masks, size) || b.eval(masks, size),
        }
    }
}

/// A compound compiled for repeated satisfaction checks over one label set.
#[derive(Debug, Clone)]
pub struct Evaluator {
    order: Vec<Label>,
    compiled: Compiled,
}

impl Evaluator {
    pub fn new(d: &CompoundDiagram, labels: &BTreeSet<Label>) -> Result<Self, SemanticsError> {
        if let Some(own) = d.labels() {
            if own != labels {
                return Err(SemanticsError::LabelMismatch {
                    interp: fmt_labels(labels),
                    diagram: fmt_labels(own),
                });
            }
        }
        let order: Vec<Label> = labels.iter().cloned().collect();
        let compiled = Compiled::new(d, &order);
        Ok(Evaluator { order, compiled })
    }

    pub fn labels(&self) -> &[Label] {
        &self.order
    }

    pub fn satisfies(&self, i: &Interpretation) -> Result<bool, SemanticsError> {
        let have = i.labels();
        let want: BTreeSet<Label> = self.order.iter().cloned().collect();
        if have != want {
            return Err(SemanticsError::LabelMismatch {
                interp: fmt_labels(&have),
                diagram: fmt_labels(&want),
            });
        }
        Ok(self.compiled.eval(&i.masks(), i.size()))
    }

    /// Verdicts on every interpretation of size `0..=max_universe`, one bit
    /// each, in [`enumerate_interpretations`] order size by size.
    pub fn model_bits(&self, max_universe: usize) -> Result<Vec<u64>, SemanticsError> {
        let mut bits = Vec::new();
        let mut offset = 0usize;
        for size in 0..=max_universe {
            let total = space(self.order.len(), size)?;
            for index in 0..total {
                let at = offset + index as usize;
                if at / 64 >= bits.len() {
                    bits.push(0);
                }
                if self.eval_index(index, size) {
                    bits[at / 64] |= 1 << (at % 64);
                }
            }
            offset += total as usize;
        }
        Ok(bits)
    }

    fn eval_index(&self, index: u64, size: usize) -> bool {
        let masks = decode(index, self.order.len(), size);
        self.compiled.eval(&masks, size)
    }
}

/// Does `i` satisfy `d`?
pub fn satisfies(i: &Interpretation, d: &CompoundDiagram) -> Result<bool, SemanticsError> {
    let labels = match d.labels() {
        Some(l) => l.clone(),
        None => i.labels(),
    };
    Evaluator::new(d, &labels)?.satisfies(i)
}

fn decode(index: u64, labels: usize, size: usize) -> Vec<u64> {
    let digit = universe_mask(size);
    (0..labels)
        .map(|j| {
            let shift = (labels - 1 - j) * size;
            if shift >= 64 {
                0
            } else {
                (index >> shift) & digit
            }
        })
        .collect()
}

fn space(labels: usize, size: usize) -> Result<u64, SemanticsError> {
    if size > MAX_UNIVERSE || labels * size > MAX_ENUMERATION_BITS {
        return Err(SemanticsError::EnumerationTooLarge { labels, size });
    }
    Ok(1u64 << (labels * size))
}

/// All `(2^size)^|labels|` interpretations over `{e0..e(size-1)}`.
///
/// Ordered lexicographically with the first label (in canonical order) as
/// the most significant digit and each subset read as a binary number.
#[derive(Debug, Clone)]
pub struct Interpretations {
    order: Vec<Label>,
    size: usize,
    next: u64,
    end: u64,
}

impl Interpretations {
    fn at(&self, index: u64) -> Interpretation {
        let masks = decode(index, self.order.len(), self.size);
        Interpretation {
            size: self.size,
            assignment: self
                .order
                .iter()
                .cloned()
                .zip(masks.into_iter().map(ElementSet))
                .collect(),
        }
    }
}

impl Iterator for Interpretations {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.next >= self.end {
            return None;
        }
        let out = self.at(self.next);
        self.next += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Interpretations {}

pub fn enumerate_interpretations(
    labels: &BTreeSet<Label>,
    universe_size: usize,
) -> Result<Interpretations, SemanticsError> {
    let end = space(labels.len(), universe_size)?;
    Ok(Interpretations {
        order: labels.iter().cloned().collect(),
        size: universe_size,
        next: 0,
        end,
    })
}

/// Result of a bounded entailment check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntailmentVerdict {
    pub holds: bool,
    pub bound: usize,
    pub countermodel: Option<Interpretation>,
}

fn shared_labels(
    d1: &CompoundDiagram,
    d2: &CompoundDiagram,
) -> Result<BTreeSet<Label>, SemanticsError> {
    match (d1.labels(), d2.labels()) {
        (Some(a), Some(b)) if a != b => Err(SemanticsError::LabelMismatch {
            interp: fmt_labels(a),
            diagram: fmt_labels(b),
        }),
        (Some(a), _) | (None, Some(a)) => Ok(a.clone()),
        (None, None) => Ok(BTreeSet::new()),
    }
}

/// Checks `d1 ⊨ d2` over every universe of size `0..=max_universe`.
pub fn entails(
    d1: &CompoundDiagram,
    d2: &CompoundDiagram,
    max_universe: usize,
) -> Result<EntailmentVerdict, SemanticsError> {
    entails_with(Exec::default(), d1, d2, max_universe)
}

pub fn entails_with(
    exec: Exec,
    d1: &CompoundDiagram,
    d2: &CompoundDiagram,
    max_universe: usize,
) -> Result<EntailmentVerdict, SemanticsError> {
    let labels = shared_labels(d1, d2)?;
    let lhs = Evaluator::new(d1, &labels)?;
    let rhs = Evaluator::new(d2, &labels)?;
    for size in 0..=max_universe {
        let total = space(labels.len(), size)?;
        let hit = exec.find_first(0..total, |i| {
            lhs.eval_index(i, size) && !rhs.eval_index(i, size)
        });
        if let Some(index) = hit {
            let it = enumerate_interpretations(&labels, size)?;
            return Ok(EntailmentVerdict {
                holds: false,
                bound: max_universe,
                countermodel: Some(it.at(index)),
            });
        }
    }
    Ok(EntailmentVerdict {
        holds: true,
        bound: max_universe,
        countermodel: None,
    })
}

/// Both directions of [`entails`].
pub fn equivalent(
    d1: &CompoundDiagram,
    d2: &CompoundDiagram,
    max_universe: usize,
) -> Result<bool, SemanticsError> {
    Ok(entails(d1, d2, max_universe)?.holds && entails(d2, d1, max_universe)?.holds)
}

/// Number of interpretations of exactly `universe_size` elements satisfying `d`.
pub fn count_models(d: &CompoundDiagram, universe_size: usize) -> Result<u64, SemanticsError> {
    let labels = d.labels().cloned().unwrap_or_default();
    count_models_with(Exec::default(), d, &labels, universe_size)
}

/// [`count_models`] over an explicit label set (needed for `Top`/`Bottom`).
pub fn count_models_over(
    d: &CompoundDiagram,
    labels: &BTreeSet<Label>,
    universe_size: usize,
) -> Result<u64, SemanticsError> {
    count_models_with(Exec::default(), d, labels, universe_size)
}

pub fn count_models_with(
    exec: Exec,
    d: &CompoundDiagram,
    labels: &BTreeSet<Label>,
    universe_size: usize,
) -> Result<u64, SemanticsError> {
    let eval = Evaluator::new(d, labels)?;
    let total = space(labels.len(), universe_size)?;
    Ok(exec.count(0..total, |i| eval.eval_index(i, universe_size)))
}

/// Every satisfying interpretation of exactly `universe_size` elements, in enumeration order.
pub fn models(
    d: &CompoundDiagram,
    labels: &BTreeSet<Label>,
    universe_size: usize,
) -> Result<Vec<Interpretation>, SemanticsError> {
    let eval = Evaluator::new(d, labels)?;
    Ok(enumerate_interpretations(labels, universe_size)?
        .filter(|i| eval.satisfies(i).unwrap_or(false))
        .collect())
}
