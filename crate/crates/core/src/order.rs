//! Termination orders, the Noetherian check and the list extension.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::report::{Location, Report};
use crate::system::{Mode, Presentation, RewritingSystem};
use crate::zigzag::{Object, ZigZag};

/// The strict order declared alongside a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TerminationOrder {
    /// Graph mode: `x > y` iff `y` is reachable from `x` in one or more
    /// steps.
    FiniteGraphReachability,
    /// String mode: `x > y` iff `|x| > |y|`; every rule must shorten.
    RuleLengthDecreasing,
    /// Graph mode: the transitive closure of the listed `(greater, smaller)`
    /// pairs of object names.
    ExplicitFiniteOrder(Vec<(String, String)>),
}

impl TerminationOrder {
    pub fn kind_name(&self) -> &'static str {
        match self {
            TerminationOrder::FiniteGraphReachability => "reachability",
            TerminationOrder::RuleLengthDecreasing => "length",
            TerminationOrder::ExplicitFiniteOrder(_) => "explicit",
        }
    }
}

/// The declared order compiled to a decision procedure.
#[derive(Debug, Clone)]
pub(crate) enum OrderRelation {
    /// Transitive closure over node indices; `edges` is the generating
    /// relation it was computed from.
    Closure {
        edges: Vec<Vec<usize>>,
        rows: Vec<Vec<bool>>,
    },
    Length,
}

impl OrderRelation {
    pub(crate) fn compile(
        order: &TerminationOrder,
        presentation: &Presentation,
        names: &HashMap<String, u32>,
    ) -> Result<Self> {
        let mode = match presentation {
            Presentation::Graph { .. } => Mode::Graph,
            Presentation::Srs { .. } => Mode::Srs,
        };
        let mismatch = || Error::ModeMismatch {
            order: order.kind_name(),
            mode: mode.as_str(),
        };
        match (order, presentation) {
            (TerminationOrder::RuleLengthDecreasing, Presentation::Srs { .. }) => {
                Ok(OrderRelation::Length)
            }
            (TerminationOrder::FiniteGraphReachability, Presentation::Graph { nodes, steps }) => {
                let mut edges = vec![Vec::new(); nodes.len()];
                for s in steps {
                    edges[s.source.0 as usize].push(s.target.0 as usize);
                }
                Ok(OrderRelation::closure(edges))
            }
            (TerminationOrder::ExplicitFiniteOrder(pairs), Presentation::Graph { nodes, .. }) => {
                let mut edges = vec![Vec::new(); nodes.len()];
                for (hi, lo) in pairs {
                    let hi = *names
                        .get(hi)
                        .ok_or_else(|| Error::UnknownObject(hi.clone()))?;
                    let lo = *names
                        .get(lo)
                        .ok_or_else(|| Error::UnknownObject(lo.clone()))?;
                    edges[hi as usize].push(lo as usize);
                }
                Ok(OrderRelation::closure(edges))
            }
            _ => Err(mismatch()),
        }
    }

    fn closure(mut edges: Vec<Vec<usize>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        let n = edges.len();
        let mut rows = vec![vec![false; n]; n];
        for (from, row) in rows.iter_mut().enumerate() {
            let mut stack: Vec<usize> = edges[from].clone();
            while let Some(v) = stack.pop() {
                if !row[v] {
                    row[v] = true;
                    stack.extend(edges[v].iter().copied());
                }
            }
        }
        OrderRelation::Closure { edges, rows }
    }

    pub(crate) fn gt(&self, x: &Object, y: &Object) -> bool {
        match (self, x, y) {
            (OrderRelation::Length, Object::Word(a), Object::Word(b)) => a.len() > b.len(),
            (OrderRelation::Closure { rows, .. }, Object::Node(a), Object::Node(b)) => rows
                .get(a.0 as usize)
                .and_then(|r| r.get(b.0 as usize))
                .copied()
                .unwrap_or(false),
            _ => false,
        }
    }
}

/// Check that the declared order is Noetherian and that every step
/// generator decreases it.
pub fn check_noetherian(system: &RewritingSystem) -> Report {
    match system.relation() {
        OrderRelation::Length => {
            for rule in system.rules() {
                if rule.lhs.len() <= rule.rhs.len() {
                    return Report::fail(
                        Location::Generator(rule.name.clone()),
                        format!(
                            "rule does not shorten words ({} -> {} letters)",
                            rule.lhs.len(),
                            rule.rhs.len()
                        ),
                    );
                }
            }
            Report::Pass
        }
        OrderRelation::Closure { edges, rows } => {
            if let Some(cycle) = find_cycle(edges) {
                let labels = cycle
                    .iter()
                    .map(|&i| system.nodes()[i].clone())
                    .collect();
                return Report::fail(Location::Cycle(labels), "order is not irreflexive");
            }
            for step in system.graph_steps() {
                if !rows[step.source.0 as usize][step.target.0 as usize] {
                    return Report::fail(
                        Location::Generator(step.name.clone()),
                        format!(
                            "step does not decrease the order: {} > {} does not hold",
                            system.nodes()[step.source.0 as usize],
                            system.nodes()[step.target.0 as usize]
                        ),
                    );
                }
            }
            Report::Pass
        }
    }
}

/// First directed cycle found by depth-first search, as a node path whose
/// last element repeats the first.
pub(crate) fn find_cycle(edges: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = edges.len();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        // (node, next edge index)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&w) = edges[v].get(*next) {
                *next += 1;
                match mark[w] {
                    Mark::New => {
                        mark[w] = Mark::Open;
                        stack.push((w, 0));
                    }
                    Mark::Open => {
                        let from = stack.iter().position(|&(u, _)| u == w).unwrap();
                        let mut cycle: Vec<usize> = stack[from..].iter().map(|&(u, _)| u).collect();
                        cycle.push(w);
                        return Some(cycle);
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// `x > y` in the system's declared order.
pub fn gt(system: &RewritingSystem, x: &Object, y: &Object) -> bool {
    system.gt(x, y)
}

/// The list extension of a transitive strict order `gt`.
///
/// `xs > ys` iff `ys` splits into `xs.len()` consecutive blocks where block
/// `i` is either `[xs[i]]` or a (possibly empty) list of elements all below
/// `xs[i]`, and at least one block is of the second kind.
pub fn list_ext_gt<T, F>(gt: F, xs: &[T], ys: &[T]) -> bool
where
    T: PartialEq,
    F: Fn(&T, &T) -> bool,
{
    let n = xs.len();
    let m = ys.len();
    // reach[i][j] bit 0: some matching of xs[..i] onto ys[..j];
    // bit 1: some such matching with a replaced block.
    let mut reach = vec![vec![0u8; m + 1]; n + 1];
    reach[0][0] = 1;
    for i in 0..n {
        for j in 0..=m {
            let here = reach[i][j];
            if here == 0 {
                continue;
            }
            if j < m && ys[j] == xs[i] {
                reach[i + 1][j + 1] |= here;
            }
            reach[i + 1][j] |= 2;
            for k in j..m {
                if !gt(&xs[i], &ys[k]) {
                    break;
                }
                reach[i + 1][k + 1] |= 2;
            }
        }
    }
    reach[n][m] & 2 != 0
}

/// The object sequence of a zig-zag, the measure of the Church-Rosser
/// construction.
pub fn zigzag_measure(u: &ZigZag) -> Vec<Object> {
    u.objects().to_vec()
}

/// Whether the inner objects of `after` are below those of `before` in the
/// list extension of the system order.
pub fn measure_decreases(system: &RewritingSystem, before: &ZigZag, after: &ZigZag) -> bool {
    list_ext_gt(
        |a: &Object, b: &Object| system.gt(a, b),
        before.inner_objects(),
        after.inner_objects(),
    )
}
