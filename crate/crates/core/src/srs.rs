//! String rewriting front end: rule application, normalisation, critical
//! overlaps, synthesis of local-confluence structures and the free group.

use std::collections::BTreeMap;
use std::fmt;

use crate::coherence::{
    classify_redexes, overlap_first, peak_label, LocalConfluence, OverlapKey, PeakKind,
    ResolutionShape, DEFAULT_MAX_STEPS,
};
use crate::error::{Error, Result};
use crate::order::TerminationOrder;
use crate::system::{Mode, RewritingSystem, RuleSpec};
use crate::zigzag::{GeneratorId, Object, StepRef, Word, ZigZag};

/// Replace the occurrence of `rule`'s left-hand side at `position`.
pub fn apply_rule(
    system: &RewritingSystem,
    word: &Word,
    rule: GeneratorId,
    position: usize,
) -> Result<Word> {
    let r = system
        .rule(rule)
        .ok_or_else(|| Error::UnknownGenerator(format!("#{}", rule.0)))?;
    if !word.occurs_at(&r.lhs, position) {
        return Err(Error::NoMatch {
            rule: r.name.clone(),
            position,
            word: system.word_text(word),
        });
    }
    Ok(word.splice(position, r.lhs.len(), &r.rhs))
}

/// Reduce `x` to normal form, always taking the leftmost redex (first
/// declared rule on ties; first declared step in graph mode).
pub fn normalize(system: &RewritingSystem, x: &Object) -> Result<(Object, ZigZag)> {
    normalize_with_limit(system, x, DEFAULT_MAX_STEPS)
}

pub fn normalize_with_limit(
    system: &RewritingSystem,
    x: &Object,
    max_steps: u64,
) -> Result<(Object, ZigZag)> {
    let mut steps = Vec::new();
    let mut current = x.clone();
    while let Some(&step) = system.reductions_from(&current).first() {
        if steps.len() as u64 >= max_steps {
            return Err(Error::MeasureViolation(format!(
                "normalisation of {} exceeded {} steps",
                system.object_label(x),
                max_steps
            )));
        }
        current = system.step_target(step, &current)?;
        steps.push(step.forward());
    }
    let seq = system.zigzag(x.clone(), steps)?;
    Ok((current, seq))
}

/// Two rule applications on a minimal common word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPeak {
    pub word: Word,
    pub left: StepRef,
    pub right: StepRef,
    pub kind: PeakKind,
}

impl CriticalPeak {
    /// The peak `left⁻¹ · right` as a zig-zag.
    pub fn zigzag(&self, system: &RewritingSystem) -> Result<ZigZag> {
        let apex = Object::Word(self.word.clone());
        let y = system.step_target(self.left, &apex)?;
        system.zigzag(y, vec![self.left.backward(), self.right.forward()])
    }
}

/// All critical peaks of a string system: for every ordered rule pair, each
/// offset at which the left-hand sides share letters, plus the adjacent
/// (Peiffer) placement. Peaks whose word is longer than `bound` are
/// skipped.
pub fn critical_peaks(system: &RewritingSystem, bound: Option<usize>) -> Vec<CriticalPeak> {
    let rules = system.rules();
    let mut out = Vec::new();
    let fits = |len: usize| bound.is_none_or(|b| len <= b);
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (gi, gj) = (GeneratorId(i as u32), GeneratorId(j as u32));
            for offset in 0..ri.lhs.len() {
                if offset == 0 && j < i {
                    // same start: keep one orientation
                    continue;
                }
                let shared = (ri.lhs.len() - offset).min(rj.lhs.len());
                if ri.lhs.0[offset..offset + shared] != rj.lhs.0[..shared] {
                    continue;
                }
                let len = ri.lhs.len().max(offset + rj.lhs.len());
                if !fits(len) {
                    continue;
                }
                let mut word = ri.lhs.0.clone();
                word.extend_from_slice(&rj.lhs.0[shared..]);
                let kind = if offset == 0 && i == j {
                    PeakKind::FullOverlap
                } else {
                    PeakKind::PartialOverlap
                };
                out.push(CriticalPeak {
                    word: Word(word),
                    left: StepRef::new(gi, 0),
                    right: StepRef::new(gj, offset),
                    kind,
                });
            }
            if fits(ri.lhs.len() + rj.lhs.len()) {
                let mut word = ri.lhs.0.clone();
                word.extend_from_slice(&rj.lhs.0);
                out.push(CriticalPeak {
                    word: Word(word),
                    left: StepRef::new(gi, 0),
                    right: StepRef::new(gj, ri.lhs.len()),
                    kind: PeakKind::Peiffer,
                });
            }
        }
    }
    out
}

/// A local peak whose two legs have different normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceFailure {
    pub peak: ZigZag,
    pub left_normal_form: Object,
    pub right_normal_form: Object,
    pub description: String,
}

impl fmt::Display for ConfluenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

/// Why synthesis did not produce a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    NotConfluent(ConfluenceFailure),
    Engine(Error),
}

impl From<Error> for SynthesisError {
    fn from(e: Error) -> Self {
        SynthesisError::Engine(e)
    }
}

impl fmt::Display for SynthesisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthesisError::NotConfluent(c) => write!(f, "not locally confluent: {c}"),
            SynthesisError::Engine(e) => write!(f, "{e}"),
        }
    }
}

/// Join the two legs of a peak by normalising both ends. Returns the valley
/// `y ⇝* n ⇜* z`, or the failure when the normal forms differ.
fn join(
    system: &RewritingSystem,
    peak: &ZigZag,
    max_steps: u64,
) -> std::result::Result<ZigZag, SynthesisError> {
    let (y, z) = (peak.start(), peak.target());
    if y == z {
        return Ok(ZigZag::empty(y.clone()));
    }
    let (ny, sy) = normalize_with_limit(system, y, max_steps)?;
    let (nz, sz) = normalize_with_limit(system, z, max_steps)?;
    if ny != nz {
        let description = format!(
            "peak {} has distinct normal forms {} and {}",
            peak_label(system, peak),
            system.object_label(&ny),
            system.object_label(&nz)
        );
        return Err(SynthesisError::NotConfluent(ConfluenceFailure {
            peak: peak.clone(),
            left_normal_form: ny,
            right_normal_form: nz,
            description,
        }));
    }
    Ok(sy.compose(&sz.inverse())?)
}

/// Build the local-confluence structure of a terminating system by joining
/// every critical overlap (string mode) or every local peak (graph mode)
/// through normal forms. Identical redexes and equal results get the empty
/// valley; disjoint redexes are resolved by applying the other redex.
pub fn synthesize_lc(system: &RewritingSystem) -> std::result::Result<LocalConfluence, SynthesisError> {
    synthesize_lc_with_limit(system, DEFAULT_MAX_STEPS)
}

pub fn synthesize_lc_with_limit(
    system: &RewritingSystem,
    max_steps: u64,
) -> std::result::Result<LocalConfluence, SynthesisError> {
    match system.mode() {
        Mode::Srs => {
            let mut overlaps = BTreeMap::new();
            for cp in critical_peaks(system, None) {
                if cp.kind != PeakKind::PartialOverlap {
                    continue;
                }
                let peak = cp.zigzag(system)?;
                let valley = join(system, &peak, max_steps)?;
                let key = OverlapKey {
                    left: cp.left.generator,
                    right: cp.right.generator,
                    offset: cp.right.position,
                };
                overlaps.insert(key, valley);
            }
            Ok(LocalConfluence::from_overlaps(ResolutionShape::Valley, overlaps))
        }
        Mode::Graph => {
            let mut entries = Vec::new();
            for (index, _) in system.nodes().iter().enumerate() {
                let x = Object::Node(crate::zigzag::NodeId(index as u32));
                let out = system.reductions_from(&x);
                for (k, &s) in out.iter().enumerate() {
                    for &t in &out[k + 1..] {
                        let y = system.step_target(s, &x)?;
                        let peak = system.zigzag(y, vec![s.backward(), t.forward()])?;
                        let valley = join(system, &peak, max_steps)?;
                        entries.push((peak, valley));
                    }
                }
            }
            Ok(LocalConfluence::from_table(
                system,
                ResolutionShape::Valley,
                entries,
            )?)
        }
    }
}

/// All local peaks `[s⁻¹, t]` out of `apex`, one per unordered pair of
/// distinct steps, oriented with the leftmost redex first; identical
/// steps are included as `[s⁻¹, s]`.
pub fn local_peaks_at(system: &RewritingSystem, apex: &Object) -> Result<Vec<(ZigZag, Option<PeakKind>)>> {
    let out = system.reductions_from(apex);
    let mut peaks = Vec::new();
    for (k, &s) in out.iter().enumerate() {
        for &t in &out[k..] {
            let (a, b) = if overlap_first(s, t) { (s, t) } else { (t, s) };
            let y = system.step_target(a, apex)?;
            let peak = system.zigzag(y, vec![a.backward(), b.forward()])?;
            let kind = (system.mode() == Mode::Srs).then(|| classify_redexes(system, a, b));
            peaks.push((peak, kind));
        }
    }
    Ok(peaks)
}

/// Name of the formal inverse of a generator: the upper-case letter for a
/// single lower-case letter, otherwise the name with a trailing `'`.
pub fn inverse_letter(generator: &str) -> String {
    let mut chars = generator.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_lowercase() => c.to_uppercase().collect(),
        _ => format!("{generator}'"),
    }
}

/// The free group on `generators`: alphabet `x, x⁻¹` for each generator and
/// a rule `x·x⁻¹ → ε` for every letter of either polarity.
pub fn free_group_system<S: AsRef<str>>(generators: &[S]) -> Result<RewritingSystem> {
    let mut alphabet = Vec::with_capacity(2 * generators.len());
    for g in generators {
        alphabet.push(g.as_ref().to_string());
        alphabet.push(inverse_letter(g.as_ref()));
    }
    let mut rules = Vec::with_capacity(alphabet.len());
    for pair in alphabet.chunks(2) {
        let (x, x_inv) = (&pair[0], &pair[1]);
        rules.push(RuleSpec {
            name: format!("{x}{x_inv}"),
            lhs: vec![x.clone(), x_inv.clone()],
            rhs: vec![],
        });
        rules.push(RuleSpec {
            name: format!("{x_inv}{x}"),
            lhs: vec![x_inv.clone(), x.clone()],
            rhs: vec![],
        });
    }
    let names: Vec<&str> = generators.iter().map(|g| g.as_ref()).collect();
    RewritingSystem::srs(
        &format!("free-group({})", names.join(",")),
        &alphabet,
        &rules,
        TerminationOrder::RuleLengthDecreasing,
    )
}
