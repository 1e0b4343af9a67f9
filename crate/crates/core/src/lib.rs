//! Coherence engine for terminating rewriting systems.
//!
//! Systems are 1-polygraphs given either as finite graphs or as string
//! rewriting systems, equipped with a termination order. Over such a
//! system and a chosen local-confluence structure the engine constructs
//! explicit 2-dimensional witnesses:
//!
//! * rewrites of any zig-zag into a valley ([`Coherence::wb_to_cr`]),
//! * fillers between any two parallel zig-zags
//!   ([`Coherence::basis_witness`]),
//! * derivation certificates for closed zig-zags over six closure rules
//!   ([`certify::certify_closed`]),
//!
//! together with independent checkers for all of them.

pub mod certify;
pub mod coherence;
pub mod error;
pub mod order;
pub mod polygraph;
pub mod report;
pub mod srs;
pub mod system;
pub mod zigzag;

pub use certify::{certify_closed, check_certificate, Certificate, Rule};
pub use coherence::{
    basis_witness, contract_closed, wb_to_cr, BasisWitness, ChurchRosser, Coherence, Limits,
    LocalConfluence, PeakKind, ResolutionShape,
};
pub use error::{Error, Result};
pub use order::{check_noetherian, gt, list_ext_gt, zigzag_measure, TerminationOrder};
pub use polygraph::{
    check_rewrite_zigzag, inv_cancellation, rz_compose, rz_invert, whisker, AtomicCell, CellKind,
    RewriteZigZag, WhiskeredCell,
};
pub use report::{Failure, Location, Report};
pub use srs::{
    apply_rule, critical_peaks, free_group_system, normalize, synthesize_lc, ConfluenceFailure,
    CriticalPeak, SynthesisError,
};
pub use system::{Mode, RewritingSystem, RuleSpec};
pub use zigzag::{
    Direction, GeneratorId, Letter, NodeId, Object, OrientedStep, StepRef, Word, ZigZag,
};
