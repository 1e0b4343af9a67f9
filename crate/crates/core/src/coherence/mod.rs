//! Church-Rosser rewriting and the homotopy-basis construction.
//!
//! [`Coherence::wb_to_cr`] rewrites any zig-zag into a valley by repeatedly
//! replacing its leftmost local peak with the chosen resolution.
//! [`Coherence::contract_closed`] fills a closed zig-zag down to the empty
//! zig-zag by recursion on its base object, and
//! [`Coherence::basis_witness`] connects any two parallel zig-zags.
//!
//! Both recursions are driven by decreasing measures that are checked at
//! every step: the inner object list of the zig-zag under the list
//! extension, and the base object under the system order. A failed check is
//! reported as [`Error::MeasureViolation`].

mod structure;

use std::sync::atomic::{AtomicU64, Ordering};

pub use structure::{
    classify_redexes, peak_label, LocalConfluence, OverlapKey, PeakKind, ResolutionShape,
};
pub(crate) use structure::overlap_first;

use crate::error::{Error, Result};
use crate::order::measure_decreases;
use crate::polygraph::{inv_cancellation, whisker, AtomicCell, RewriteZigZag, WhiskeredCell};
use crate::system::RewritingSystem;
use crate::zigzag::ZigZag;

/// Default iteration cap for every loop of the engine.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

/// Name of the environment variable overriding [`DEFAULT_MAX_STEPS`].
pub const MAX_STEPS_ENV: &str = "POLYBASIS_MAX_STEPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl Limits {
    /// Read `POLYBASIS_MAX_STEPS`, falling back to the default when it is
    /// unset or not a positive integer.
    pub fn from_env() -> Self {
        std::env::var(MAX_STEPS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&n| n > 0)
            .map(|max_steps| Limits { max_steps })
            .unwrap_or_default()
    }
}

/// Output of [`Coherence::wb_to_cr`]: a rewrite from the input to `valley`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChurchRosser {
    pub witness: RewriteZigZag,
    pub valley: ZigZag,
}

/// A rewrite zig-zag between two parallel zig-zags `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisWitness {
    pub witness: RewriteZigZag,
    pub u: ZigZag,
    pub v: ZigZag,
}

/// Witness constructor over a terminating system with a chosen
/// local-confluence (or Winkler-Buchberger) structure.
#[derive(Debug)]
pub struct Coherence<'a> {
    system: &'a RewritingSystem,
    lc: &'a LocalConfluence,
    limits: Limits,
    measure_checks: AtomicU64,
}

impl<'a> Coherence<'a> {
    pub fn new(system: &'a RewritingSystem, lc: &'a LocalConfluence) -> Self {
        Coherence {
            system,
            lc,
            limits: Limits::default(),
            measure_checks: AtomicU64::new(0),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn system(&self) -> &'a RewritingSystem {
        self.system
    }

    pub fn local_confluence(&self) -> &'a LocalConfluence {
        self.lc
    }

    /// How many measure decreases have been asserted so far.
    pub fn measure_checks(&self) -> u64 {
        self.measure_checks.load(Ordering::Relaxed)
    }

    /// Rewrite `u` into a valley.
    pub fn wb_to_cr(&self, u: &ZigZag) -> Result<ChurchRosser> {
        let mut witness = RewriteZigZag::empty(u.clone());
        let mut current = u.clone();
        let mut iterations = 0u64;
        while let Some(split) = current.find_local_peak() {
            iterations += 1;
            if iterations > self.limits.max_steps {
                return Err(Error::MeasureViolation(format!(
                    "Church-Rosser rewriting exceeded {} iterations",
                    self.limits.max_steps
                )));
            }
            let cell = AtomicCell::diamond(self.system, self.lc, &split.peak)?;
            let next = ZigZag::compose_all([&split.prefix, cell.target(), &split.suffix])?;
            if !measure_decreases(self.system, &current, &next) {
                return Err(Error::MeasureViolation(format!(
                    "object sequence did not decrease when resolving peak {}",
                    peak_label(self.system, &split.peak)
                )));
            }
            self.measure_checks.fetch_add(1, Ordering::Relaxed);
            witness.push(WhiskeredCell::forward(split.prefix, cell, split.suffix)?)?;
            current = next;
        }
        debug_assert!(current.is_valley());
        Ok(ChurchRosser {
            witness,
            valley: current,
        })
    }

    /// Fill a closed zig-zag: a rewrite from `u` to the empty zig-zag at its
    /// base object.
    pub fn contract_closed(&self, u: &ZigZag) -> Result<RewriteZigZag> {
        if !u.is_closed() {
            return Err(Error::NotClosed(format!(
                "{} -> {}",
                self.system.object_label(u.start()),
                self.system.object_label(u.target())
            )));
        }
        // Each frame: the Church-Rosser rewrite u ⇒ v·w⁻¹ and the legs v, w⁻¹.
        let mut frames: Vec<(RewriteZigZag, ZigZag, ZigZag)> = Vec::new();
        let mut current = u.clone();
        let base = loop {
            if frames.len() as u64 > self.limits.max_steps {
                return Err(Error::MeasureViolation(format!(
                    "closed zig-zag recursion exceeded depth {}",
                    self.limits.max_steps
                )));
            }
            let cr = self.wb_to_cr(&current)?;
            let turn = cr.valley.valley_turn().expect("wb_to_cr returns a valley");
            let v = cr.valley.slice(0, turn);
            let w_inv = cr.valley.slice(turn, cr.valley.len());
            if v.is_empty() {
                if !w_inv.is_empty() {
                    return Err(Error::MeasureViolation(format!(
                        "closed valley at {} has an empty left leg but a non-empty right leg",
                        self.system.object_label(current.start())
                    )));
                }
                break cr.witness;
            }
            let (base, reduct) = (current.start(), v.target());
            if !self.system.gt(base, reduct) {
                return Err(Error::MeasureViolation(format!(
                    "reduct {} is not below base object {}",
                    self.system.object_label(reduct),
                    self.system.object_label(base)
                )));
            }
            self.measure_checks.fetch_add(1, Ordering::Relaxed);
            let next = w_inv.compose(&v)?;
            frames.push((cr.witness, v, w_inv));
            current = next;
        };

        let mut alpha = base;
        while let Some((cr, v, w_inv)) = frames.pop() {
            // v·w⁻¹ ⇒ v·w⁻¹·v·v⁻¹ ⇒ v·v⁻¹ ⇒ ε
            let valley = v.compose(&w_inv)?;
            let cancel_v = inv_cancellation(&v);
            let end = ZigZag::empty(v.start().clone());
            let grow = whisker(&valley, &cancel_v, &end)?.inverse();
            let shrink = whisker(&v, &alpha, &v.inverse())?;
            alpha = cr.compose(&grow)?.compose(&shrink)?.compose(&cancel_v)?;
        }
        Ok(alpha)
    }

    /// A rewrite zig-zag from `u` to a parallel `v`:
    /// `u ⇒ u·v⁻¹·v ⇒ v`.
    pub fn basis_witness(&self, u: &ZigZag, v: &ZigZag) -> Result<BasisWitness> {
        if !u.is_parallel_to(v) {
            return Err(Error::NotParallel(format!(
                "{} -> {} versus {} -> {}",
                self.system.object_label(u.start()),
                self.system.object_label(u.target()),
                self.system.object_label(v.start()),
                self.system.object_label(v.target())
            )));
        }
        let v_inv = v.inverse();
        let open = whisker(
            u,
            &inv_cancellation(&v_inv),
            &ZigZag::empty(u.target().clone()),
        )?
        .inverse();
        let loop_ = u.compose(&v_inv)?;
        let filled = self.contract_closed(&loop_)?;
        let close = whisker(&ZigZag::empty(u.start().clone()), &filled, v)?;
        Ok(BasisWitness {
            witness: open.compose(&close)?,
            u: u.clone(),
            v: v.clone(),
        })
    }
}

pub fn wb_to_cr(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    u: &ZigZag,
) -> Result<ChurchRosser> {
    Coherence::new(system, lc).wb_to_cr(u)
}

pub fn contract_closed(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    u: &ZigZag,
) -> Result<RewriteZigZag> {
    Coherence::new(system, lc).contract_closed(u)
}

pub fn basis_witness(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    u: &ZigZag,
    v: &ZigZag,
) -> Result<BasisWitness> {
    Coherence::new(system, lc).basis_witness(u, v)
}
