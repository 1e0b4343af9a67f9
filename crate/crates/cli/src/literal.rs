//! Zig-zag literals: `<start> ; step[@pos][!] , ...`.
//!
//! The start is a node name in graph mode and a quoted word in string mode
//! (`""` is the empty word). A trailing `!` takes the step backward.

use polybasis_core::{Direction, Mode, Object, OrientedStep, RewritingSystem, StepRef, ZigZag};

use crate::error::{CliError, CliResult};

pub fn format_object(system: &RewritingSystem, x: &Object) -> String {
    match x {
        Object::Node(_) => system.object_label(x),
        Object::Word(w) => format!("\"{}\"", system.word_text(w)),
    }
}

pub fn format_step(system: &RewritingSystem, step: StepRef) -> String {
    system.step_label(step)
}

pub fn format_zigzag(system: &RewritingSystem, u: &ZigZag) -> String {
    let mut out = format_object(system, u.start());
    if !u.is_empty() {
        let steps: Vec<String> = u
            .steps()
            .iter()
            .map(|s| {
                let bang = if s.is_forward() { "" } else { "!" };
                format!("{}{bang}", format_step(system, s.step))
            })
            .collect();
        out.push_str(" ; ");
        out.push_str(&steps.join(", "));
    }
    out
}

/// Split a literal into its start and the text after `;`.
fn split_start(text: &str) -> CliResult<(&str, &str)> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix('"') {
        let close = rest
            .find('"')
            .ok_or_else(|| CliError::parse(format!("unterminated word in `{text}`")))?;
        let start = &text[..close + 2];
        let tail = rest[close + 1..].trim_start();
        Ok((start, tail))
    } else {
        match text.find(';') {
            Some(i) => Ok((text[..i].trim(), &text[i..])),
            None => Ok((text, "")),
        }
    }
}

pub fn parse_object(system: &RewritingSystem, text: &str) -> CliResult<Object> {
    let text = text.trim();
    match system.mode() {
        Mode::Srs => {
            let inner = text
                .strip_prefix('"')
                .and_then(|t| t.strip_suffix('"'))
                .ok_or_else(|| CliError::parse(format!("expected a quoted word, found `{text}`")))?;
            system
                .word_object(inner)
                .map_err(|e| CliError::parse(format!("bad word `{text}`: {e}")))
        }
        Mode::Graph => system
            .node(text)
            .map_err(|e| CliError::parse(format!("bad object `{text}`: {e}"))),
    }
}

pub fn parse_step(system: &RewritingSystem, token: &str) -> CliResult<OrientedStep> {
    let token = token.trim();
    let (body, direction) = match token.strip_suffix('!') {
        Some(b) => (b.trim_end(), Direction::Backward),
        None => (token, Direction::Forward),
    };
    let (name, position) = match system.mode() {
        Mode::Srs => {
            let (name, pos) = body
                .rsplit_once('@')
                .ok_or_else(|| CliError::parse(format!("step `{token}` needs a position (`name@pos`)")))?;
            let pos = pos
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::parse(format!("bad position in step `{token}`")))?;
            (name.trim(), pos)
        }
        Mode::Graph => {
            if body.contains('@') {
                return Err(CliError::parse(format!(
                    "step `{token}`: positions are only used in string mode"
                )));
            }
            (body, 0)
        }
    };
    let generator = system
        .generator_by_name(name)
        .ok_or_else(|| CliError::parse(format!("unknown step `{name}` in `{token}`")))?;
    Ok(OrientedStep::new(StepRef::new(generator, position), direction))
}

/// Parse a zig-zag literal; errors name the first step that does not
/// parse or does not compose.
pub fn parse_zigzag(system: &RewritingSystem, text: &str) -> CliResult<ZigZag> {
    let (start, tail) = split_start(text)?;
    let start = parse_object(system, start)?;
    let tail = tail.trim();
    let body = if tail.is_empty() {
        ""
    } else {
        tail.strip_prefix(';')
            .ok_or_else(|| CliError::parse(format!("expected `;` after the start of `{}`", text.trim())))?
            .trim()
    };
    let tokens: Vec<&str> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',').collect()
    };
    let mut steps = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let s = parse_step(system, t)
            .map_err(|e| CliError::parse(format!("step {} `{}`: {e}", i + 1, t.trim())))?;
        steps.push(s);
    }
    system.zigzag(start, steps).map_err(|e| match e {
        polybasis_core::Error::InvalidZigZag { index, reason } => CliError::parse(format!(
            "step {} `{}` does not apply: {reason}",
            index + 1,
            tokens[index].trim()
        )),
        other => CliError::parse(other.to_string()),
    })
}
