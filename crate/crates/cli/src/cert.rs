//! Certificate files: the derivation tree in pre-order, one `node` line per
//! node followed by its conclusion and rule arguments.
//!
//! ```text
//! POLYBASIS-CERT 1
//! system free-group(a)
//! goal "aA" ; aA@0, aA@0!
//! node paste
//!   concl "aA" ; aA@0, aA@0!
//!   u "aA" ; aA@0
//!   ...
//! ```

use polybasis_core::{Certificate, RewritingSystem, Rule, ZigZag};

use crate::error::{CliError, CliResult};
use crate::literal::{format_object, format_zigzag, parse_object, parse_zigzag};
use crate::text::Lines;

pub const CERT_HEADER: &str = "POLYBASIS-CERT 1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile {
    pub system: String,
    pub goal: ZigZag,
    pub root: Certificate,
}

fn render_node(system: &RewritingSystem, node: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let lit = |z: &ZigZag| format_zigzag(system, z);
    out.push_str(&format!("{pad}node {}\n", node.rule.name()));
    out.push_str(&format!("{pad}  concl {}\n", lit(&node.conclusion)));
    let args: Vec<(&str, String)> = match &node.rule {
        Rule::EmptyFill { x } => vec![("x", format_object(system, x))],
        Rule::InvPair { u } | Rule::Invert { u } => vec![("u", lit(u))],
        Rule::Rotate { u, v } => vec![("u", lit(u)), ("v", lit(v))],
        Rule::Paste { u, v, w } => vec![("u", lit(u)), ("v", lit(v)), ("w", lit(w))],
        Rule::DiamondFill { peak } => vec![("peak", lit(peak))],
    };
    for (k, v) in args {
        out.push_str(&format!("{pad}  {k} {v}\n"));
    }
    for p in &node.premises {
        render_node(system, p, depth + 1, out);
    }
}

fn parse_node(system: &RewritingSystem, lines: &mut Lines) -> CliResult<Certificate> {
    let name = lines.expect("node")?.to_string();
    let zz = |lines: &mut Lines, key: &str| -> CliResult<ZigZag> {
        let text = lines.expect(key)?;
        parse_zigzag(system, text).map_err(|e| lines.at_previous(e))
    };
    let conclusion = zz(lines, "concl")?;
    let rule = match name.as_str() {
        "empty" => {
            let text = lines.expect("x")?;
            Rule::EmptyFill {
                x: parse_object(system, text).map_err(|e| lines.at_previous(e))?,
            }
        }
        "invpair" => Rule::InvPair { u: zz(lines, "u")? },
        "invert" => Rule::Invert { u: zz(lines, "u")? },
        "rotate" => Rule::Rotate {
            u: zz(lines, "u")?,
            v: zz(lines, "v")?,
        },
        "paste" => Rule::Paste {
            u: zz(lines, "u")?,
            v: zz(lines, "v")?,
            w: zz(lines, "w")?,
        },
        "diamond" => Rule::DiamondFill {
            peak: zz(lines, "peak")?,
        },
        other => return Err(lines.at_previous(CliError::parse(format!("unknown rule `{other}`")))),
    };
    let mut premises = Vec::with_capacity(rule.arity());
    for _ in 0..rule.arity() {
        premises.push(parse_node(system, lines)?);
    }
    Ok(Certificate {
        rule,
        conclusion,
        premises,
    })
}

impl CertificateFile {
    pub fn render(&self, system: &RewritingSystem) -> String {
        let mut out = String::new();
        out.push_str(CERT_HEADER);
        out.push('\n');
        out.push_str(&format!("system {}\n", self.system));
        out.push_str(&format!("goal {}\n", format_zigzag(system, &self.goal)));
        render_node(system, &self.root, 0, &mut out);
        out
    }

    pub fn parse(system: &RewritingSystem, text: &str) -> CliResult<Self> {
        let mut lines = Lines::new(text);
        if lines.peek() != Some(CERT_HEADER) {
            return Err(CliError::parse(format!("missing `{CERT_HEADER}` header")));
        }
        lines.expect("POLYBASIS-CERT")?;
        let name = lines.expect("system")?.to_string();
        let goal_text = lines.expect("goal")?;
        let goal = parse_zigzag(system, goal_text).map_err(|e| lines.at_previous(e))?;
        let root = parse_node(system, &mut lines)?;
        if !lines.is_done() {
            return Err(lines.error("trailing lines after the derivation"));
        }
        Ok(CertificateFile {
            system: name,
            goal,
            root,
        })
    }
}
