//! System definition files (TOML).
//!
//! ```toml
//! [system]
//! name = "free-group(a)"
//! mode = "srs"
//! alphabet = ["a", "A"]
//!
//! [[rules]]
//! name = "aA"
//! lhs = ["a", "A"]
//! rhs = []
//!
//! [order]
//! kind = "rule-length-decreasing"
//! ```

use serde::{Deserialize, Serialize};

use polybasis_core::{Mode, RewritingSystem, RuleSpec, TerminationOrder};

use crate::error::{CliError, CliResult};
use crate::literal::{format_zigzag, parse_zigzag};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub system: SystemSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rules: Vec<RuleEntry>,
    pub order: OrderSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileMode {
    Graph,
    Srs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub name: String,
    pub mode: FileMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphabet: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleEntry {
    pub name: String,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    FiniteGraphReachability,
    RuleLengthDecreasing,
    ExplicitFiniteOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSection {
    pub kind: OrderKind,
    /// `[greater, smaller]` pairs of an explicit order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Names end up inside zig-zag literals and witness files, so the
/// characters those formats use as delimiters are reserved.
fn check_name(what: &str, name: &str) -> CliResult<()> {
    const RESERVED: &[char] = &['"', ';', ',', '@', '!', '#', '[', ']', '|'];
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
        return Err(CliError::parse(format!("invalid {what} name `{name}`")));
    }
    Ok(())
}

impl SystemFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("system files always serialise")
    }

    pub fn load(path: &str) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{path}: {msg}")),
            other => other,
        })
    }

    /// Build and validate the system. Any inconsistency is a parse error.
    pub fn to_system(&self) -> CliResult<RewritingSystem> {
        let invalid = |e: polybasis_core::Error| CliError::parse(e.to_string());
        let order = match self.order.kind {
            OrderKind::FiniteGraphReachability => TerminationOrder::FiniteGraphReachability,
            OrderKind::RuleLengthDecreasing => TerminationOrder::RuleLengthDecreasing,
            OrderKind::ExplicitFiniteOrder => TerminationOrder::ExplicitFiniteOrder(
                self.order
                    .pairs
                    .iter()
                    .map(|[a, b]| (a.clone(), b.clone()))
                    .collect(),
            ),
        };
        if self.order.kind != OrderKind::ExplicitFiniteOrder && !self.order.pairs.is_empty() {
            return Err(CliError::parse("order pairs are only used by explicit-finite-order"));
        }
        let mut system = match self.system.mode {
            FileMode::Graph => {
                if !self.system.alphabet.is_empty() || !self.rules.is_empty() {
                    return Err(CliError::parse("graph systems take objects and steps, not an alphabet or rules"));
                }
                for o in &self.system.objects {
                    check_name("object", o)?;
                }
                let steps: Vec<(&str, &str, &str)> = self
                    .steps
                    .iter()
                    .map(|s| check_name("step", &s.name).map(|_| (s.name.as_str(), s.src.as_str(), s.tgt.as_str())))
                    .collect::<CliResult<_>>()?;
                let objects: Vec<&str> = self.system.objects.iter().map(String::as_str).collect();
                RewritingSystem::graph(&self.system.name, &objects, &steps, order)
                    .map_err(invalid)?
            }
            FileMode::Srs => {
                if !self.system.objects.is_empty() || !self.steps.is_empty() {
                    return Err(CliError::parse("string systems take an alphabet and rules, not objects or steps"));
                }
                for a in &self.system.alphabet {
                    check_name("letter", a)?;
                }
                let rules: Vec<RuleSpec> = self
                    .rules
                    .iter()
                    .map(|r| {
                        check_name("rule", &r.name).map(|_| RuleSpec {
                            name: r.name.clone(),
                            lhs: r.lhs.clone(),
                            rhs: r.rhs.clone(),
                        })
                    })
                    .collect::<CliResult<_>>()?;
                RewritingSystem::srs(&self.system.name, &self.system.alphabet, &rules, order)
                    .map_err(invalid)?
            }
        };
        for c in &self.cells {
            check_name("cell", &c.name)?;
            let source = parse_zigzag(&system, &c.source)?;
            let target = parse_zigzag(&system, &c.target)?;
            system.add_cell(&c.name, source, target).map_err(invalid)?;
        }
        Ok(system)
    }

    /// Describe an existing system as a file.
    pub fn from_system(system: &RewritingSystem) -> Self {
        let (kind, pairs) = match system.order() {
            TerminationOrder::FiniteGraphReachability => (OrderKind::FiniteGraphReachability, vec![]),
            TerminationOrder::RuleLengthDecreasing => (OrderKind::RuleLengthDecreasing, vec![]),
            TerminationOrder::ExplicitFiniteOrder(p) => (
                OrderKind::ExplicitFiniteOrder,
                p.iter().map(|(a, b)| [a.clone(), b.clone()]).collect(),
            ),
        };
        let letters = |w: &polybasis_core::Word| -> Vec<String> {
            w.letters().iter().map(|&l| system.letter_name(l).to_string()).collect()
        };
        let (mode, objects, alphabet, steps, rules) = match system.mode() {
            Mode::Graph => (
                FileMode::Graph,
                system.nodes().to_vec(),
                vec![],
                system
                    .graph_steps()
                    .iter()
                    .map(|s| StepEntry {
                        name: s.name.clone(),
                        src: system.nodes()[s.source.0 as usize].clone(),
                        tgt: system.nodes()[s.target.0 as usize].clone(),
                    })
                    .collect(),
                vec![],
            ),
            Mode::Srs => (
                FileMode::Srs,
                vec![],
                system.alphabet().to_vec(),
                vec![],
                system
                    .rules()
                    .iter()
                    .map(|r| RuleEntry {
                        name: r.name.clone(),
                        lhs: letters(&r.lhs),
                        rhs: letters(&r.rhs),
                    })
                    .collect(),
            ),
        };
        SystemFile {
            system: SystemSection {
                name: system.name().to_string(),
                mode,
                objects,
                alphabet,
            },
            steps,
            rules,
            order: OrderSection { kind, pairs },
            cells: system
                .cells()
                .iter()
                .map(|c| CellEntry {
                    name: c.name.clone(),
                    source: format_zigzag(system, &c.source),
                    target: format_zigzag(system, &c.target),
                })
                .collect(),
        }
    }
}
