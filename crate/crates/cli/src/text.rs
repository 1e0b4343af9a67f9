//! Line reader shared by the witness and certificate formats.

use crate::error::{CliError, CliResult};

pub(crate) struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { lines, at: 0 }
    }

    pub fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.at).map(|&(_, l)| l)
    }

    pub fn is_done(&self) -> bool {
        self.at >= self.lines.len()
    }

    pub fn error(&self, msg: impl std::fmt::Display) -> CliError {
        match self.lines.get(self.at.min(self.lines.len().saturating_sub(1))) {
            Some((n, _)) if !self.lines.is_empty() => CliError::parse(format!("line {n}: {msg}")),
            _ => CliError::parse(format!("{msg}")),
        }
    }

    /// The next line, which must start with `key`; returns the rest.
    pub fn expect(&mut self, key: &str) -> CliResult<&'a str> {
        let line = self
            .peek()
            .ok_or_else(|| CliError::parse(format!("unexpected end of file, expected `{key}`")))?;
        let rest = match line.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => rest.trim(),
            None if line == key => "",
            _ => return Err(self.error(format!("expected `{key}`"))),
        };
        self.at += 1;
        Ok(rest)
    }

    /// Wrap an error with the number of the line just consumed.
    pub fn at_previous(&self, e: CliError) -> CliError {
        let n = self.lines.get(self.at.saturating_sub(1)).map(|&(n, _)| n).unwrap_or(0);
        match e {
            CliError::Parse(msg) => CliError::Parse(format!("line {n}: {msg}")),
            other => other,
        }
    }
}
