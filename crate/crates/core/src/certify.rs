//! Derivation certificates for closed zig-zags.
//!
//! A certificate is a tree over six rules, each concluding that a closed
//! zig-zag is derivable:
//!
//! | rule          | premises                      | conclusion  |
//! |---------------|-------------------------------|-------------|
//! | `EmptyFill(x)`| –                             | `ε_x`       |
//! | `InvPair(u)`  | –                             | `u·u⁻¹`     |
//! | `Rotate(u,v)` | `u·v`                         | `v·u`       |
//! | `Paste(u,v,w)`| `u·v⁻¹`, `v·w⁻¹`              | `u·w⁻¹`     |
//! | `Invert(u)`   | `u`                           | `u⁻¹`       |
//! | `DiamondFill` | –                             | `p·r⁻¹` for a local peak `p` with chosen resolution `r` |
//!
//! [`certify_closed`] compiles the filler produced by
//! [`Coherence::contract_closed`] into such a tree, eliminating every
//! whiskering context by rotation and pasting. [`check_certificate`]
//! re-checks a tree node by node without running the construction.

use crate::coherence::{Coherence, LocalConfluence};
use crate::error::{Error, Result};
use crate::polygraph::{CellKind, RewriteZigZag, WhiskeredCell};
use crate::report::{Location, Report};
use crate::system::RewritingSystem;
use crate::zigzag::{Direction, Object, ZigZag};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    EmptyFill { x: Object },
    InvPair { u: ZigZag },
    Rotate { u: ZigZag, v: ZigZag },
    Paste { u: ZigZag, v: ZigZag, w: ZigZag },
    Invert { u: ZigZag },
    DiamondFill { peak: ZigZag },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::EmptyFill { .. } => "empty",
            Rule::InvPair { .. } => "invpair",
            Rule::Rotate { .. } => "rotate",
            Rule::Paste { .. } => "paste",
            Rule::Invert { .. } => "invert",
            Rule::DiamondFill { .. } => "diamond",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::EmptyFill { .. } | Rule::InvPair { .. } | Rule::DiamondFill { .. } => 0,
            Rule::Rotate { .. } | Rule::Invert { .. } => 1,
            Rule::Paste { .. } => 2,
        }
    }
}

/// A derivation node: the rule applied, the closed zig-zag it concludes and
/// the sub-derivations of its premises.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    pub rule: Rule,
    pub conclusion: ZigZag,
    pub premises: Vec<Certificate>,
}

impl Certificate {
    pub fn empty_fill(x: Object) -> Self {
        Certificate {
            conclusion: ZigZag::empty(x.clone()),
            rule: Rule::EmptyFill { x },
            premises: Vec::new(),
        }
    }

    pub fn inv_pair(u: ZigZag) -> Self {
        Certificate {
            conclusion: u.compose(&u.inverse()).expect("u ends where u⁻¹ starts"),
            rule: Rule::InvPair { u },
            premises: Vec::new(),
        }
    }

    /// From `P(u·v)` conclude `P(v·u)`.
    pub fn rotate(premise: Certificate, u: ZigZag, v: ZigZag) -> Result<Self> {
        Ok(Certificate {
            conclusion: v.compose(&u)?,
            rule: Rule::Rotate { u, v },
            premises: vec![premise],
        })
    }

    /// From `P(u·v⁻¹)` and `P(v·w⁻¹)` conclude `P(u·w⁻¹)`.
    pub fn paste(first: Certificate, second: Certificate, u: ZigZag, v: ZigZag, w: ZigZag) -> Result<Self> {
        Ok(Certificate {
            conclusion: u.compose(&w.inverse())?,
            rule: Rule::Paste { u, v, w },
            premises: vec![first, second],
        })
    }

    /// From `P(u)` conclude `P(u⁻¹)`.
    pub fn invert(premise: Certificate) -> Self {
        let u = premise.conclusion.clone();
        Certificate {
            conclusion: u.inverse(),
            rule: Rule::Invert { u },
            premises: vec![premise],
        }
    }

    pub fn diamond_fill(system: &RewritingSystem, lc: &LocalConfluence, peak: ZigZag) -> Result<Self> {
        let resolution = lc.resolve(system, &peak)?;
        Ok(Certificate {
            conclusion: peak.compose(&resolution.inverse())?,
            rule: Rule::DiamondFill { peak },
            premises: Vec::new(),
        })
    }

    /// Concatenate two closed zig-zags at the same base:
    /// `Paste(c₁, ε, c₂⁻¹)` concludes `c₁·c₂`.
    fn concat(first: Certificate, second: Certificate) -> Result<Self> {
        let base = ZigZag::empty(first.conclusion.start().clone());
        let u = first.conclusion.clone();
        let w = second.conclusion.inverse();
        Certificate::paste(first, second, u, base, w)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            count += 1;
            stack.extend(node.premises.iter());
        }
        count
    }

    /// Leaf rules in depth-first, left-to-right order.
    pub fn leaves(&self) -> Vec<&Rule> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(node) = stack.pop() {
            if node.premises.is_empty() {
                out.push(&node.rule);
            }
            stack.extend(node.premises.iter().rev());
        }
        out
    }

    /// Visit every node with its child-index path, pre-order.
    pub fn walk<'a>(&'a self, mut f: impl FnMut(&[usize], &'a Certificate)) {
        let mut stack: Vec<(Vec<usize>, &Certificate)> = vec![(Vec::new(), self)];
        while let Some((path, node)) = stack.pop() {
            f(&path, node);
            for (i, child) in node.premises.iter().enumerate().rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push((p, child));
            }
        }
    }

    /// Mutable access to the node at `path`.
    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut Certificate> {
        let mut node = self;
        for &i in path {
            node = node.premises.get_mut(i)?;
        }
        Some(node)
    }
}

/// The derivation of `P(s·t⁻¹)` for the atomic cell `s ⇒ t`.
fn atomic_derivation(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    cell: &WhiskeredCell,
) -> Result<Certificate> {
    let atom = cell.cell();
    match atom.kind() {
        CellKind::Diamond { .. } if atom.target().is_empty() && atom.source().is_closed() && {
            let s = atom.source().steps();
            s[0].step == s[1].step
        } =>
        {
            // the peak s⁻¹·s with the empty resolution is an inverse pair
            Ok(Certificate::inv_pair(atom.source().slice(0, 1)))
        }
        CellKind::Diamond { .. } => Certificate::diamond_fill(system, lc, atom.source().clone()),
        CellKind::RInv(_) | CellKind::LInv(_) => Ok(Certificate::inv_pair(atom.source().slice(0, 1))),
        CellKind::Generator(name) => Err(Error::UncertifiableCell(name.clone())),
    }
}

/// The derivation of `P(src·tgt⁻¹)` for one whiskered cell `l·(s ⇒ t)·r`,
/// following `P(l⁻¹·l · s·r·r⁻¹·t⁻¹)` rotated into place.
fn cell_derivation(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    cell: &WhiskeredCell,
) -> Result<Certificate> {
    let (l, r) = (cell.left(), cell.right());
    let (s, t) = (cell.cell().source(), cell.cell().target());
    let t_inv = t.inverse();
    let l_inv = l.inverse();

    let atom = atomic_derivation(system, lc, cell)?;
    // P(t⁻¹·s)
    let rotated = Certificate::rotate(atom, s.clone(), t_inv.clone())?;
    // P(t⁻¹·s·r·r⁻¹)
    let with_r = Certificate::concat(rotated, Certificate::inv_pair(r.clone()))?;
    // P(s·r·r⁻¹·t⁻¹)
    let srr = s.compose(r)?.compose(&r.inverse())?;
    let core = Certificate::rotate(with_r, t_inv.clone(), srr.clone())?;
    // P(l⁻¹·l·s·r·r⁻¹·t⁻¹)
    let with_l = Certificate::concat(Certificate::inv_pair(l_inv.clone()), core)?;
    // P(l·s·r·r⁻¹·t⁻¹·l⁻¹) = P((l·s·r)·(l·t·r)⁻¹)
    let rest = l.compose(&srr)?.compose(&t_inv)?;
    let forward = Certificate::rotate(with_l, l_inv, rest)?;
    Ok(match cell.direction() {
        Direction::Forward => forward,
        Direction::Backward => Certificate::invert(forward),
    })
}

/// Compile a rewrite `α : u ⇒* v` into a derivation of `P(u·v⁻¹)`, pasting
/// the cells from the right.
pub fn compile_rewrite(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    rz: &RewriteZigZag,
) -> Result<Certificate> {
    let v = rz.target().clone();
    let mut acc = if v.is_empty() {
        Certificate::empty_fill(v.start().clone())
    } else {
        Certificate::inv_pair(v.clone())
    };
    for cell in rz.cells().iter().rev() {
        let step = cell_derivation(system, lc, cell)?;
        acc = Certificate::paste(step, acc, cell.source().clone(), cell.target().clone(), v.clone())?;
    }
    Ok(acc)
}

/// A certificate for the closed zig-zag `u`.
pub fn certify_closed(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    u: &ZigZag,
) -> Result<Certificate> {
    certify_closed_with(&Coherence::new(system, lc), u)
}

pub fn certify_closed_with(engine: &Coherence<'_>, u: &ZigZag) -> Result<Certificate> {
    let filler = engine.contract_closed(u)?;
    compile_rewrite(engine.system(), engine.local_confluence(), &filler)
}

/// Check one node against its rule; `None` when it is well formed.
fn check_node(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    node: &Certificate,
) -> Option<String> {
    if node.premises.len() != node.rule.arity() {
        return Some(format!(
            "rule {} takes {} premises, found {}",
            node.rule.name(),
            node.rule.arity(),
            node.premises.len()
        ));
    }
    let stored: Vec<&ZigZag> = match &node.rule {
        Rule::EmptyFill { .. } => vec![],
        Rule::InvPair { u } | Rule::Invert { u } => vec![u],
        Rule::Rotate { u, v } => vec![u, v],
        Rule::Paste { u, v, w } => vec![u, v, w],
        Rule::DiamondFill { peak } => vec![peak],
    };
    for z in stored.into_iter().chain(std::iter::once(&node.conclusion)) {
        if let Err(e) = system.validate_zigzag(z) {
            return Some(format!("invalid zig-zag: {e}"));
        }
    }
    if !node.conclusion.is_closed() {
        return Some("conclusion is not closed".into());
    }
    let premise = |i: usize| &node.premises[i].conclusion;
    let expected: std::result::Result<ZigZag, String> = match &node.rule {
        Rule::EmptyFill { x } => {
            if system.contains_object(x) {
                Ok(ZigZag::empty(x.clone()))
            } else {
                Err("unknown object".into())
            }
        }
        Rule::InvPair { u } => u.compose(&u.inverse()).map_err(|e| e.to_string()),
        Rule::Rotate { u, v } => match (u.compose(v), v.compose(u)) {
            (Ok(uv), Ok(vu)) if premise(0) == &uv => Ok(vu),
            (Ok(_), Ok(_)) => Err("premise is not u·v".into()),
            _ => Err("u and v do not form a closed zig-zag".into()),
        },
        Rule::Paste { u, v, w } => {
            if !(u.is_parallel_to(v) && v.is_parallel_to(w)) {
                Err("u, v, w are not parallel".into())
            } else {
                let uv = u.compose(&v.inverse()).expect("parallel");
                let vw = v.compose(&w.inverse()).expect("parallel");
                if premise(0) != &uv {
                    Err("first premise is not u·v⁻¹".into())
                } else if premise(1) != &vw {
                    Err("second premise is not v·w⁻¹".into())
                } else {
                    Ok(u.compose(&w.inverse()).expect("parallel"))
                }
            }
        }
        Rule::Invert { u } => {
            if !u.is_closed() {
                Err("u is not closed".into())
            } else if premise(0) != u {
                Err("premise is not u".into())
            } else {
                Ok(u.inverse())
            }
        }
        Rule::DiamondFill { peak } => lc
            .resolve(system, peak)
            .map_err(|e| e.to_string())
            .and_then(|r| peak.compose(&r.inverse()).map_err(|e| e.to_string())),
    };
    match expected {
        Err(reason) => Some(format!("{}: {reason}", node.rule.name())),
        Ok(z) if z != node.conclusion => Some(format!(
            "{}: stated conclusion does not follow from the rule",
            node.rule.name()
        )),
        Ok(_) => None,
    }
}

/// Check every node of `cert` locally and that the root concludes `goal`.
pub fn check_certificate(
    system: &RewritingSystem,
    lc: &LocalConfluence,
    cert: &Certificate,
    goal: &ZigZag,
) -> Report {
    let mut failure = None;
    cert.walk(|path, node| {
        if failure.is_none() {
            if let Some(reason) = check_node(system, lc, node) {
                failure = Some(Report::fail(Location::Node(path.to_vec()), reason));
            }
        }
    });
    if let Some(f) = failure {
        return f;
    }
    if &cert.conclusion != goal {
        return Report::fail(Location::Node(Vec::new()), "root does not conclude the goal");
    }
    Report::Pass
}
