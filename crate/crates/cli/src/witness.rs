//! Witness files.
//!
//! ```text
//! POLYBASIS-WITNESS 1
//! system free-group(a)
//! u "aA" ; aA@0
//! v "aA" ; aA@0
//! cell forward rinv aA@0
//!   left "aA" ; aA@0
//!   source "" ; aA@0!, aA@0
//!   target ""
//!   right ""
//! ```
//!
//! Each `cell` block is one whiskered cell `left · (source ⇒ target) · right`
//! taken in the stated direction; the cells form a chain from `u` to `v`.

use polybasis_core::{
    AtomicCell, BasisWitness, CellKind, Direction, RewriteZigZag, RewritingSystem, WhiskeredCell,
    ZigZag,
};

use crate::error::{CliError, CliResult};
use crate::literal::{format_step, format_zigzag, parse_step, parse_zigzag};
use crate::text::Lines;

pub const WITNESS_HEADER: &str = "POLYBASIS-WITNESS 1";

/// A parsed witness: the claimed endpoints and the cell chain, not yet
/// checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub system: String,
    pub u: ZigZag,
    pub v: ZigZag,
    pub cells: Vec<WhiskeredCell>,
}

impl WitnessFile {
    pub fn from_basis(system: &RewritingSystem, w: &BasisWitness) -> Self {
        WitnessFile {
            system: system.name().to_string(),
            u: w.u.clone(),
            v: w.v.clone(),
            cells: w.witness.cells().to_vec(),
        }
    }

    pub fn rewrite(&self) -> RewriteZigZag {
        RewriteZigZag::from_cells_unchecked(self.u.clone(), self.cells.clone())
    }

    pub fn render(&self, system: &RewritingSystem) -> String {
        let lit = |z: &ZigZag| format_zigzag(system, z);
        let mut out = String::new();
        out.push_str(WITNESS_HEADER);
        out.push('\n');
        out.push_str(&format!("system {}\n", self.system));
        out.push_str(&format!("u {}\n", lit(&self.u)));
        out.push_str(&format!("v {}\n", lit(&self.v)));
        for c in &self.cells {
            let dir = match c.direction() {
                Direction::Forward => "forward",
                Direction::Backward => "backward",
            };
            let kind = match c.cell().kind() {
                CellKind::Generator(name) => format!("generator {name}"),
                CellKind::Diamond { left, right } => format!(
                    "diamond {} {}",
                    format_step(system, *left),
                    format_step(system, *right)
                ),
                CellKind::RInv(s) => format!("rinv {}", format_step(system, *s)),
                CellKind::LInv(s) => format!("linv {}", format_step(system, *s)),
            };
            out.push_str(&format!("cell {dir} {kind}\n"));
            out.push_str(&format!("  left {}\n", lit(c.left())));
            out.push_str(&format!("  source {}\n", lit(c.cell().source())));
            out.push_str(&format!("  target {}\n", lit(c.cell().target())));
            out.push_str(&format!("  right {}\n", lit(c.right())));
        }
        out
    }

    pub fn parse(system: &RewritingSystem, text: &str) -> CliResult<Self> {
        let mut lines = Lines::new(text);
        if lines.peek() != Some(WITNESS_HEADER) {
            return Err(CliError::parse(format!("missing `{WITNESS_HEADER}` header")));
        }
        lines.expect("POLYBASIS-WITNESS")?;
        let name = lines.expect("system")?.to_string();
        let zigzag = |lines: &mut Lines, key: &str| -> CliResult<ZigZag> {
            let text = lines.expect(key)?;
            parse_zigzag(system, text).map_err(|e| lines.at_previous(e))
        };
        let u = zigzag(&mut lines, "u")?;
        let v = zigzag(&mut lines, "v")?;
        let mut cells = Vec::new();
        while !lines.is_done() {
            let head = lines.expect("cell")?;
            let words: Vec<&str> = head.split_whitespace().collect();
            let direction = match words.first() {
                Some(&"forward") => Direction::Forward,
                Some(&"backward") => Direction::Backward,
                _ => return Err(lines.at_previous(CliError::parse("cell direction must be forward or backward"))),
            };
            let step = |i: usize| -> CliResult<polybasis_core::StepRef> {
                let token = words
                    .get(i)
                    .ok_or_else(|| CliError::parse("missing step in cell kind"))?;
                Ok(parse_step(system, token)?.step)
            };
            let kind = match (words.get(1).copied(), words.len()) {
                (Some("generator"), 3) => Ok(CellKind::Generator(words[2].to_string())),
                (Some("diamond"), 4) => step(2).and_then(|l| Ok(CellKind::Diamond { left: l, right: step(3)? })),
                (Some("rinv"), 3) => step(2).map(CellKind::RInv),
                (Some("linv"), 3) => step(2).map(CellKind::LInv),
                _ => Err(CliError::parse(format!("bad cell kind `{head}`"))),
            }
            .map_err(|e| lines.at_previous(e))?;
            let left = zigzag(&mut lines, "left")?;
            let source = zigzag(&mut lines, "source")?;
            let target = zigzag(&mut lines, "target")?;
            let right = zigzag(&mut lines, "right")?;
            let cell = WhiskeredCell::new(left, AtomicCell::from_parts(kind, source, target), right, direction)
                .map_err(|e| lines.at_previous(CliError::parse(format!("cell does not compose: {e}"))))?;
            cells.push(cell);
        }
        Ok(WitnessFile {
            system: name,
            u,
            v,
            cells,
        })
    }
}
