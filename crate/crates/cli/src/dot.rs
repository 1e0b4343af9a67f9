//! Reduction-graph export.

use polybasis_core::{Letter, Mode, Object, RewritingSystem, StepRef, Word};

use crate::error::{CliError, CliResult};

/// Refuse to enumerate more words than this.
pub const MAX_GRAPH_OBJECTS: usize = 1_000_000;

pub struct ReductionGraph {
    pub objects: Vec<Object>,
    pub edges: Vec<(usize, StepRef, usize)>,
}

/// The reduction graph: every node in graph mode, every word of length at
/// most `max_word_len` in string mode.
pub fn reduction_graph(system: &RewritingSystem, max_word_len: Option<usize>) -> CliResult<ReductionGraph> {
    let objects: Vec<Object> = match system.mode() {
        Mode::Graph => (0..system.nodes().len())
            .map(|i| Object::Node(polybasis_core::NodeId(i as u32)))
            .collect(),
        Mode::Srs => {
            let n = max_word_len
                .ok_or_else(|| CliError::parse("string systems need --max-word-len"))?;
            let k = system.alphabet().len();
            let mut total = 1usize;
            let mut layer = 1usize;
            for _ in 0..n {
                layer = layer.saturating_mul(k);
                total = total.saturating_add(layer);
            }
            if total > MAX_GRAPH_OBJECTS {
                return Err(CliError::Failed(format!(
                    "{total} words of length ≤ {n}; the limit is {MAX_GRAPH_OBJECTS}"
                )));
            }
            let mut words = vec![Word::empty()];
            let mut start = 0;
            for _ in 0..n {
                let end = words.len();
                for i in start..end {
                    for l in 0..k {
                        let mut w = words[i].0.clone();
                        w.push(Letter(l as u32));
                        words.push(Word(w));
                    }
                }
                start = end;
            }
            words.into_iter().map(Object::Word).collect()
        }
    };
    let index: std::collections::HashMap<&Object, usize> =
        objects.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut edges = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        for s in system.reductions_from(x) {
            let y = system.step_target(s, x)?;
            if let Some(&j) = index.get(&y) {
                edges.push((i, s, j));
            }
        }
    }
    Ok(ReductionGraph { objects, edges })
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(system: &RewritingSystem, graph: &ReductionGraph) -> String {
    let mut out = format!("digraph {} {{\n", quote(system.name()));
    for o in &graph.objects {
        out.push_str(&format!("  {};\n", quote(&system.object_label(o))));
    }
    for &(i, s, j) in &graph.edges {
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&system.object_label(&graph.objects[i])),
            quote(&system.object_label(&graph.objects[j])),
            quote(&system.step_label(s))
        ));
    }
    out.push_str("}\n");
    out
}

pub fn to_text(system: &RewritingSystem, graph: &ReductionGraph) -> String {
    let mut out = format!("{} objects, {} steps\n", graph.objects.len(), graph.edges.len());
    for &(i, s, j) in &graph.edges {
        out.push_str(&format!(
            "{} -> {} ({})\n",
            system.object_label(&graph.objects[i]),
            system.object_label(&graph.objects[j]),
            system.step_label(s)
        ));
    }
    out
}
