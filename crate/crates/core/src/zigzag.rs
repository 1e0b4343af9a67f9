//! Objects, reduction steps and reduction zig-zags.
//!
//! A [`ZigZag`] keeps its full object sequence next to its step list, so the
//! endpoints of every step are available without consulting the system.
//! Values are only built through [`crate::RewritingSystem`] (which checks
//! every step) or derived from valid values by [`ZigZag::compose`],
//! [`ZigZag::inverse`] and slicing, all of which preserve validity.

use std::fmt;

use crate::error::{Error, Result};

/// Interned alphabet letter (index into the system's alphabet).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

/// A finite word over the alphabet of a string rewriting system.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Whether `pattern` occurs at `position`.
    pub fn occurs_at(&self, pattern: &Word, position: usize) -> bool {
        position + pattern.len() <= self.len()
            && self.0[position..position + pattern.len()] == pattern.0[..]
    }

    /// Replace `len` letters starting at `position` by `replacement`.
    pub fn splice(&self, position: usize, len: usize, replacement: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() - len + replacement.len());
        out.extend_from_slice(&self.0[..position]);
        out.extend_from_slice(&replacement.0);
        out.extend_from_slice(&self.0[position + len..]);
        Word(out)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

/// Node of a graph-mode system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

/// An object of a rewriting system: a named node (graph mode) or a word
/// (string mode).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Node(NodeId),
    Word(Word),
}

impl Object {
    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Object::Word(w) => Some(w),
            Object::Node(_) => None,
        }
    }

    pub fn as_node(&self) -> Option<NodeId> {
        match self {
            Object::Node(n) => Some(*n),
            Object::Word(_) => None,
        }
    }
}

/// Index of a reduction-step generator (graph step or string rule).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId(pub u32);

/// A reduction step: a generator, applied at `position` in string mode
/// (always 0 in graph mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepRef {
    pub generator: GeneratorId,
    pub position: usize,
}

impl StepRef {
    pub fn new(generator: GeneratorId, position: usize) -> Self {
        StepRef { generator, position }
    }

    pub fn forward(self) -> OrientedStep {
        OrientedStep::new(self, Direction::Forward)
    }

    pub fn backward(self) -> OrientedStep {
        OrientedStep::new(self, Direction::Backward)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedStep {
    pub step: StepRef,
    pub direction: Direction,
}

impl OrientedStep {
    pub fn new(step: StepRef, direction: Direction) -> Self {
        OrientedStep { step, direction }
    }

    pub fn inverse(self) -> OrientedStep {
        OrientedStep::new(self.step, self.direction.flip())
    }

    pub fn is_forward(self) -> bool {
        self.direction == Direction::Forward
    }
}

/// A local peak found inside a zig-zag: `prefix · (left⁻¹ · right) · suffix`.
///
/// `left` is the backward step and `right` the forward one; both leave the
/// apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalPeakSplit {
    pub prefix: ZigZag,
    pub peak: ZigZag,
    pub suffix: ZigZag,
    pub index: usize,
}

impl LocalPeakSplit {
    pub fn left(&self) -> StepRef {
        self.peak.steps()[0].step
    }

    pub fn right(&self) -> StepRef {
        self.peak.steps()[1].step
    }

    pub fn apex(&self) -> &Object {
        &self.peak.objects()[1]
    }
}

/// A composable sequence of oriented steps, with its object sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZigZag {
    objects: Vec<Object>,
    steps: Vec<OrientedStep>,
}

impl ZigZag {
    /// The trivial zig-zag at `x`.
    pub fn empty(x: Object) -> Self {
        ZigZag {
            objects: vec![x],
            steps: Vec::new(),
        }
    }

    /// Callers guarantee that step `i` connects `objects[i]` and
    /// `objects[i + 1]` in the system the zig-zag belongs to.
    pub(crate) fn from_parts(objects: Vec<Object>, steps: Vec<OrientedStep>) -> Self {
        debug_assert_eq!(objects.len(), steps.len() + 1);
        ZigZag { objects, steps }
    }

    pub fn start(&self) -> &Object {
        &self.objects[0]
    }

    pub fn target(&self) -> &Object {
        self.objects.last().expect("object sequence is never empty")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[OrientedStep] {
        &self.steps
    }

    /// The full object sequence `x_0, …, x_n`.
    pub fn objects(&self) -> &[Object] {
        &self.objects
    }

    /// Objects strictly between the endpoints: `x_1, …, x_{n-1}`.
    pub fn inner_objects(&self) -> &[Object] {
        if self.steps.is_empty() {
            &[]
        } else {
            &self.objects[1..self.objects.len() - 1]
        }
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.target()
    }

    pub fn is_parallel_to(&self, other: &ZigZag) -> bool {
        self.start() == other.start() && self.target() == other.target()
    }

    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(|s| s.is_forward())
    }

    pub fn is_negative(&self) -> bool {
        self.steps.iter().all(|s| !s.is_forward())
    }

    /// Forward steps followed by backward steps.
    pub fn is_valley(&self) -> bool {
        let turn = self
            .steps
            .iter()
            .position(|s| !s.is_forward())
            .unwrap_or(self.steps.len());
        self.steps[turn..].iter().all(|s| !s.is_forward())
    }

    /// Index of the forward/backward turning point of a valley, i.e. the
    /// position of its reduct in the object sequence.
    pub fn valley_turn(&self) -> Option<usize> {
        if !self.is_valley() {
            return None;
        }
        Some(
            self.steps
                .iter()
                .position(|s| !s.is_forward())
                .unwrap_or(self.steps.len()),
        )
    }

    pub fn compose(&self, other: &ZigZag) -> Result<ZigZag> {
        if self.target() != other.start() {
            return Err(Error::EndpointMismatch {
                left: format!("{:?}", self.target()),
                right: format!("{:?}", other.start()),
            });
        }
        let mut objects = Vec::with_capacity(self.objects.len() + other.steps.len());
        objects.extend_from_slice(&self.objects);
        objects.extend_from_slice(&other.objects[1..]);
        let mut steps = Vec::with_capacity(self.steps.len() + other.steps.len());
        steps.extend_from_slice(&self.steps);
        steps.extend_from_slice(&other.steps);
        Ok(ZigZag { objects, steps })
    }

    /// Compose a chain of zig-zags left to right.
    pub fn compose_all<'a, I>(parts: I) -> Result<ZigZag>
    where
        I: IntoIterator<Item = &'a ZigZag>,
    {
        let mut iter = parts.into_iter();
        let first = iter.next().expect("compose_all needs at least one zig-zag");
        iter.try_fold(first.clone(), |acc, next| acc.compose(next))
    }

    /// Reverse the order of the steps and flip every direction.
    pub fn inverse(&self) -> ZigZag {
        ZigZag {
            objects: self.objects.iter().rev().cloned().collect(),
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// The sub-zig-zag made of steps `from..to`.
    pub fn slice(&self, from: usize, to: usize) -> ZigZag {
        ZigZag {
            objects: self.objects[from..=to].to_vec(),
            steps: self.steps[from..to].to_vec(),
        }
    }

    /// The leftmost local peak, i.e. the first backward step immediately
    /// followed by a forward step. `None` exactly when `self` is a valley.
    pub fn find_local_peak(&self) -> Option<LocalPeakSplit> {
        let index = self
            .steps
            .windows(2)
            .position(|w| !w[0].is_forward() && w[1].is_forward())?;
        Some(LocalPeakSplit {
            prefix: self.slice(0, index),
            peak: self.slice(index, index + 2),
            suffix: self.slice(index + 2, self.len()),
            index,
        })
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => f.write_str("+"),
            Direction::Backward => f.write_str("-"),
        }
    }
}
