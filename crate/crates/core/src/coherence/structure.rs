use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::system::{Mode, RewritingSystem};
use crate::zigzag::{Direction, GeneratorId, OrientedStep, StepRef, ZigZag};

/// Which resolutions a structure accepts for a local peak.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionShape {
    /// Forward steps then backward steps (local confluence).
    Valley,
    /// Any zig-zag whose objects all lie below the apex.
    BelowApex,
}

/// Key of a critical overlap: two rules whose left-hand sides overlap, the
/// right one starting `offset` letters after the left one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OverlapKey {
    pub left: GeneratorId,
    pub right: GeneratorId,
    pub offset: usize,
}

#[derive(Debug, Clone)]
enum Resolver {
    /// Graph mode: resolutions for canonically ordered step pairs.
    Table(BTreeMap<(StepRef, StepRef), ZigZag>),
    /// String mode: resolutions of the critical overlaps, on the overlap
    /// word alone; disjoint redexes are resolved positionally.
    Overlaps(BTreeMap<OverlapKey, ZigZag>),
}

/// A chosen resolution for every local peak.
#[derive(Debug, Clone)]
pub struct LocalConfluence {
    shape: ResolutionShape,
    resolver: Resolver,
}

/// How a pair of distinct string-rule redexes in the same word relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeakKind {
    FullOverlap,
    PartialOverlap,
    Peiffer,
}

impl fmt::Display for PeakKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeakKind::FullOverlap => "FullOverlap",
            PeakKind::PartialOverlap => "PartialOverlap",
            PeakKind::Peiffer => "Peiffer",
        })
    }
}

/// Classify two redexes of a string system.
pub fn classify_redexes(system: &RewritingSystem, a: StepRef, b: StepRef) -> PeakKind {
    if a == b {
        return PeakKind::FullOverlap;
    }
    let (a, b) = if a.position <= b.position { (a, b) } else { (b, a) };
    let a_end = a.position + system.rules()[a.generator.0 as usize].lhs.len();
    if a_end <= b.position {
        PeakKind::Peiffer
    } else {
        PeakKind::PartialOverlap
    }
}

impl LocalConfluence {
    pub fn shape(&self) -> ResolutionShape {
        self.shape
    }

    pub(crate) fn from_overlaps(
        shape: ResolutionShape,
        overlaps: BTreeMap<OverlapKey, ZigZag>,
    ) -> Self {
        LocalConfluence {
            shape,
            resolver: Resolver::Overlaps(overlaps),
        }
    }

    /// Build a graph-mode structure from explicit `(peak, resolution)`
    /// pairs, where each peak is a zig-zag `[s⁻¹, t]`. Every entry is
    /// checked against `shape` and against the order (all objects of the
    /// resolution below the apex).
    pub fn from_table(
        system: &RewritingSystem,
        shape: ResolutionShape,
        entries: Vec<(ZigZag, ZigZag)>,
    ) -> Result<Self> {
        if system.mode() != Mode::Graph {
            return Err(Error::ModeMismatch {
                order: "explicit resolution table",
                mode: system.mode().as_str(),
            });
        }
        let mut table = BTreeMap::new();
        for (peak, resolution) in entries {
            let (s, t) = peak_steps(&peak)?;
            system.validate_zigzag(&peak)?;
            system.validate_zigzag(&resolution)?;
            if !resolution.is_parallel_to(&peak) {
                return Err(Error::NotParallel(format!(
                    "resolution of peak {}",
                    peak_label(system, &peak)
                )));
            }
            check_resolution(system, shape, &peak, &resolution)?;
            if s == t {
                continue;
            }
            if canonical_first(system, s, t) {
                table.insert((s, t), resolution);
            } else {
                table.insert((t, s), resolution.inverse());
            }
        }
        Ok(LocalConfluence {
            shape,
            resolver: Resolver::Table(table),
        })
    }

    /// Number of stored resolutions (graph peaks or critical overlaps).
    pub fn len(&self) -> usize {
        match &self.resolver {
            Resolver::Table(t) => t.len(),
            Resolver::Overlaps(o) => o.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Resolution of the local peak `peak = [s⁻¹, t]`, a zig-zag from the
    /// peak's start to its target.
    pub fn resolve(&self, system: &RewritingSystem, peak: &ZigZag) -> Result<ZigZag> {
        let (s, t) = peak_steps(peak)?;
        let resolution = if s == t {
            ZigZag::empty(peak.start().clone())
        } else {
            match &self.resolver {
                Resolver::Table(table) => {
                    let (a, b, flipped) = if canonical_first(system, s, t) {
                        (s, t, false)
                    } else {
                        (t, s, true)
                    };
                    let found = table
                        .get(&(a, b))
                        .ok_or_else(|| Error::UnresolvedPeak(peak_label(system, peak)))?;
                    if flipped {
                        found.inverse()
                    } else {
                        found.clone()
                    }
                }
                Resolver::Overlaps(overlaps) => resolve_in_word(system, overlaps, peak, s, t)?,
            }
        };
        if !resolution.is_parallel_to(peak) {
            return Err(Error::UnresolvedPeak(peak_label(system, peak)));
        }
        check_resolution(system, self.shape, peak, &resolution)?;
        Ok(resolution)
    }
}

/// Split a local peak zig-zag into its backward and forward step.
pub(crate) fn peak_steps(peak: &ZigZag) -> Result<(StepRef, StepRef)> {
    match peak.steps() {
        [OrientedStep {
            step: s,
            direction: Direction::Backward,
        }, OrientedStep {
            step: t,
            direction: Direction::Forward,
        }] => Ok((*s, *t)),
        _ => Err(Error::InvalidZigZag {
            index: 0,
            reason: "a local peak is one backward step followed by one forward step".into(),
        }),
    }
}

/// Graph peaks are keyed by (generator name, position).
fn canonical_first(system: &RewritingSystem, s: StepRef, t: StepRef) -> bool {
    system.step_key(s) <= system.step_key(t)
}

/// String peaks are keyed by position, then generator id, matching the
/// orientation of critical overlaps.
pub(crate) fn overlap_first(s: StepRef, t: StepRef) -> bool {
    (s.position, s.generator) <= (t.position, t.generator)
}

fn resolve_in_word(
    system: &RewritingSystem,
    overlaps: &BTreeMap<OverlapKey, ZigZag>,
    peak: &ZigZag,
    s: StepRef,
    t: StepRef,
) -> Result<ZigZag> {
    let (a, b, flipped) = if overlap_first(s, t) {
        (s, t, false)
    } else {
        (t, s, true)
    };
    let apex = peak.objects()[1].clone();
    let rules = system.rules();
    let ra = &rules[a.generator.0 as usize];
    let a_target = system.step_target(a, &apex)?;
    let resolution = match classify_redexes(system, a, b) {
        PeakKind::FullOverlap => unreachable!("identical steps are handled by the caller"),
        PeakKind::Peiffer => {
            let shifted = StepRef::new(
                b.generator,
                b.position + ra.rhs.len() - ra.lhs.len(),
            );
            system.zigzag(a_target, vec![shifted.forward(), a.backward()])?
        }
        PeakKind::PartialOverlap => {
            let key = OverlapKey {
                left: a.generator,
                right: b.generator,
                offset: b.position - a.position,
            };
            let core = overlaps
                .get(&key)
                .ok_or_else(|| Error::UnresolvedPeak(peak_label(system, peak)))?;
            let lo = a.position;
            let shifted = core
                .steps()
                .iter()
                .map(|os| {
                    OrientedStep::new(
                        StepRef::new(os.step.generator, os.step.position + lo),
                        os.direction,
                    )
                })
                .collect();
            system.zigzag(a_target, shifted)?
        }
    };
    Ok(if flipped {
        resolution.inverse()
    } else {
        resolution
    })
}

fn check_resolution(
    system: &RewritingSystem,
    shape: ResolutionShape,
    peak: &ZigZag,
    resolution: &ZigZag,
) -> Result<()> {
    if shape == ResolutionShape::Valley && !resolution.is_valley() {
        return Err(Error::UnresolvedPeak(format!(
            "{} (resolution is not a valley)",
            peak_label(system, peak)
        )));
    }
    let apex = &peak.objects()[1];
    if let Some(bad) = resolution.objects().iter().find(|o| !system.gt(apex, o)) {
        return Err(Error::MeasureViolation(format!(
            "resolution of peak {} visits {} which is not below the apex",
            peak_label(system, peak),
            system.object_label(bad)
        )));
    }
    Ok(())
}

/// `y ⇜s x ⇝t z` rendering of a local peak.
pub fn peak_label(system: &RewritingSystem, peak: &ZigZag) -> String {
    if peak.len() != 2 {
        return format!("<{} steps>", peak.len());
    }
    let o = peak.objects();
    format!(
        "{} ⇜ {} ⇝ {} [{}, {}]",
        system.object_label(&o[0]),
        system.object_label(&o[1]),
        system.object_label(&o[2]),
        system.step_label(peak.steps()[0].step),
        system.step_label(peak.steps()[1].step),
    )
}
