//! 2-cells: atomic cells, whiskering, rewrite zig-zags and their checker.

use crate::coherence::LocalConfluence;
use crate::error::{Error, Result};
use crate::report::{Location, Report};
use crate::system::RewritingSystem;
use crate::zigzag::{Direction, StepRef, ZigZag};

/// What an atomic 2-cell is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// A declared 2-cell generator.
    Generator(String),
    /// The chosen local-confluence cell for the peak `left⁻¹ · right`.
    Diamond { left: StepRef, right: StepRef },
    /// `s · s⁻¹ ⇒ ε`.
    RInv(StepRef),
    /// `s⁻¹ · s ⇒ ε`.
    LInv(StepRef),
}

/// An atomic 2-cell together with its source and target zig-zags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomicCell {
    kind: CellKind,
    source: ZigZag,
    target: ZigZag,
}

impl AtomicCell {
    /// Assemble a cell from stored parts. Nothing is checked here;
    /// [`check_rewrite_zigzag`] validates the parts against the system.
    pub fn from_parts(kind: CellKind, source: ZigZag, target: ZigZag) -> Self {
        AtomicCell {
            kind,
            source,
            target,
        }
    }

    pub fn generator(system: &RewritingSystem, name: &str) -> Result<Self> {
        let cell = system
            .cell(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(AtomicCell {
            kind: CellKind::Generator(name.to_string()),
            source: cell.source.clone(),
            target: cell.target.clone(),
        })
    }

    /// The diamond for a local peak zig-zag `[s⁻¹, t]`, with its chosen
    /// resolution as target.
    pub fn diamond(
        system: &RewritingSystem,
        lc: &LocalConfluence,
        peak: &ZigZag,
    ) -> Result<Self> {
        let resolution = lc.resolve(system, peak)?;
        Ok(AtomicCell {
            kind: CellKind::Diamond {
                left: peak.steps()[0].step,
                right: peak.steps()[1].step,
            },
            source: peak.clone(),
            target: resolution,
        })
    }

    /// `s · s⁻¹ ⇒ ε` for a single oriented step `s`: an `RInv` cell for a
    /// forward step, `LInv` for a backward one.
    pub fn cancel(step: &ZigZag) -> Self {
        assert_eq!(step.len(), 1, "cancellation cells take a single step");
        let s = step.steps()[0];
        let kind = match s.direction {
            Direction::Forward => CellKind::RInv(s.step),
            Direction::Backward => CellKind::LInv(s.step),
        };
        AtomicCell {
            kind,
            source: step.compose(&step.inverse()).expect("s ends where s⁻¹ starts"),
            target: ZigZag::empty(step.start().clone()),
        }
    }

    pub fn kind(&self) -> &CellKind {
        &self.kind
    }

    pub fn source(&self) -> &ZigZag {
        &self.source
    }

    pub fn target(&self) -> &ZigZag {
        &self.target
    }
}

/// `left · cell · right`, taken forward or backward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiskeredCell {
    left: ZigZag,
    cell: AtomicCell,
    right: ZigZag,
    direction: Direction,
    source: ZigZag,
    target: ZigZag,
}

impl WhiskeredCell {
    pub fn new(
        left: ZigZag,
        cell: AtomicCell,
        right: ZigZag,
        direction: Direction,
    ) -> Result<Self> {
        let outer = left.compose(&cell.source)?.compose(&right)?;
        let inner = left.compose(&cell.target)?.compose(&right)?;
        let (source, target) = match direction {
            Direction::Forward => (outer, inner),
            Direction::Backward => (inner, outer),
        };
        Ok(WhiskeredCell {
            left,
            cell,
            right,
            direction,
            source,
            target,
        })
    }

    pub fn forward(left: ZigZag, cell: AtomicCell, right: ZigZag) -> Result<Self> {
        Self::new(left, cell, right, Direction::Forward)
    }

    pub fn left(&self) -> &ZigZag {
        &self.left
    }

    pub fn cell(&self) -> &AtomicCell {
        &self.cell
    }

    pub fn right(&self) -> &ZigZag {
        &self.right
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn source(&self) -> &ZigZag {
        &self.source
    }

    pub fn target(&self) -> &ZigZag {
        &self.target
    }

    pub fn inverse(&self) -> WhiskeredCell {
        WhiskeredCell {
            left: self.left.clone(),
            cell: self.cell.clone(),
            right: self.right.clone(),
            direction: self.direction.flip(),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    fn whiskered(&self, left: &ZigZag, right: &ZigZag) -> Result<WhiskeredCell> {
        WhiskeredCell::new(
            left.compose(&self.left)?,
            self.cell.clone(),
            self.right.compose(right)?,
            self.direction,
        )
    }
}

/// A chain of whiskered cells from `source` to [`RewriteZigZag::target`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteZigZag {
    source: ZigZag,
    cells: Vec<WhiskeredCell>,
}

impl RewriteZigZag {
    /// The empty rewrite zig-zag at `u`.
    pub fn empty(u: ZigZag) -> Self {
        RewriteZigZag {
            source: u,
            cells: Vec::new(),
        }
    }

    pub fn from_cells(source: ZigZag, cells: Vec<WhiskeredCell>) -> Result<Self> {
        let mut rz = RewriteZigZag::empty(source);
        for cell in cells {
            rz.push(cell)?;
        }
        Ok(rz)
    }

    /// Assemble without checking the chain condition; used when loading
    /// witnesses that are about to be checked.
    pub fn from_cells_unchecked(source: ZigZag, cells: Vec<WhiskeredCell>) -> Self {
        RewriteZigZag { source, cells }
    }

    pub fn source(&self) -> &ZigZag {
        &self.source
    }

    pub fn target(&self) -> &ZigZag {
        self.cells.last().map_or(&self.source, |c| c.target())
    }

    pub fn cells(&self) -> &[WhiskeredCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn push(&mut self, cell: WhiskeredCell) -> Result<()> {
        if cell.source() != self.target() {
            return Err(Error::CellChainMismatch {
                index: self.cells.len(),
                reason: "cell source differs from the current target".into(),
            });
        }
        self.cells.push(cell);
        Ok(())
    }

    pub fn compose(&self, other: &RewriteZigZag) -> Result<RewriteZigZag> {
        if self.target() != other.source() {
            return Err(Error::CellChainMismatch {
                index: self.cells.len(),
                reason: "target of the first rewrite differs from source of the second".into(),
            });
        }
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Ok(RewriteZigZag {
            source: self.source.clone(),
            cells,
        })
    }

    pub fn inverse(&self) -> RewriteZigZag {
        RewriteZigZag {
            source: self.target().clone(),
            cells: self.cells.iter().rev().map(WhiskeredCell::inverse).collect(),
        }
    }
}

/// Extend every cell of `rz` by `left` and `right`.
pub fn whisker(left: &ZigZag, rz: &RewriteZigZag, right: &ZigZag) -> Result<RewriteZigZag> {
    let source = left.compose(rz.source())?.compose(right)?;
    let cells = rz
        .cells()
        .iter()
        .map(|c| c.whiskered(left, right))
        .collect::<Result<Vec<_>>>()?;
    Ok(RewriteZigZag { source, cells })
}

pub fn rz_compose(a: &RewriteZigZag, b: &RewriteZigZag) -> Result<RewriteZigZag> {
    a.compose(b)
}

pub fn rz_invert(a: &RewriteZigZag) -> RewriteZigZag {
    a.inverse()
}

/// `u · u⁻¹ ⇒ ε`, cancelling the innermost pair first.
pub fn inv_cancellation(u: &ZigZag) -> RewriteZigZag {
    let source = u.compose(&u.inverse()).expect("u ends where u⁻¹ starts");
    let cells = (0..u.len())
        .rev()
        .map(|i| {
            let left = u.slice(0, i);
            let right = left.inverse();
            let cell = AtomicCell::cancel(&u.slice(i, i + 1));
            WhiskeredCell::forward(left, cell, right).expect("contexts meet the cancelled pair")
        })
        .collect();
    RewriteZigZag { source, cells }
}

/// Validate an atomic cell's stored source and target against its kind.
fn check_atomic(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    cell: &AtomicCell,
) -> std::result::Result<(), String> {
    system
        .validate_zigzag(cell.source())
        .map_err(|e| format!("atomic source: {e}"))?;
    system
        .validate_zigzag(cell.target())
        .map_err(|e| format!("atomic target: {e}"))?;
    match cell.kind() {
        CellKind::Generator(name) => {
            let decl = system
                .cell(name)
                .ok_or_else(|| format!("unknown cell generator `{name}`"))?;
            if &decl.source != cell.source() || &decl.target != cell.target() {
                return Err(format!("cell `{name}` does not match its declaration"));
            }
        }
        CellKind::Diamond { left, right } => {
            let src = cell.source();
            let shape_ok = src.len() == 2
                && src.steps()[0] == left.backward()
                && src.steps()[1] == right.forward();
            if !shape_ok {
                return Err("diamond source is not the declared local peak".into());
            }
            let expected = lc.resolve(system, src).map_err(|e| e.to_string())?;
            if &expected != cell.target() {
                return Err("diamond target is not the chosen resolution".into());
            }
        }
        CellKind::RInv(s) | CellKind::LInv(s) => {
            let steps = match cell.kind() {
                CellKind::RInv(_) => [s.forward(), s.backward()],
                _ => [s.backward(), s.forward()],
            };
            if cell.source().steps() != steps {
                return Err("inverse-cancellation source has the wrong steps".into());
            }
            if !cell.target().is_empty() || cell.target().start() != cell.source().start() {
                return Err("inverse-cancellation target must be empty at the source".into());
            }
        }
    }
    Ok(())
}

/// Check every cell of `rz` and the chain condition; reports the first
/// violation with its cell index.
pub fn check_rewrite_zigzag(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    rz: &RewriteZigZag,
) -> Report {
    if let Err(e) = system.validate_zigzag(rz.source()) {
        return Report::fail(Location::Whole, format!("source: {e}"));
    }
    let mut current = rz.source();
    for (index, cell) in rz.cells().iter().enumerate() {
        let at = Location::Cell(index);
        if let Err(e) = system
            .validate_zigzag(cell.left())
            .and_then(|_| system.validate_zigzag(cell.right()))
        {
            return Report::fail(at, format!("context: {e}"));
        }
        if let Err(reason) = check_atomic(system, lc, cell.cell()) {
            return Report::fail(at, reason);
        }
        let rebuilt = match WhiskeredCell::new(
            cell.left().clone(),
            cell.cell().clone(),
            cell.right().clone(),
            cell.direction(),
        ) {
            Ok(c) => c,
            Err(e) => return Report::fail(at, format!("contexts not composable: {e}")),
        };
        if rebuilt.source() != cell.source() || rebuilt.target() != cell.target() {
            return Report::fail(at, "stored boundary disagrees with the whiskering");
        }
        if cell.source() != current {
            return Report::fail(at, "source differs from the previous target");
        }
        current = cell.target();
    }
    if !rz.source().is_parallel_to(rz.target()) {
        return Report::fail(Location::Whole, "source and target are not parallel");
    }
    Report::Pass
}
