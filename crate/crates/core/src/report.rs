use std::fmt;

/// Outcome of a checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Pass,
    Fail(Failure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub location: Location,
    pub reason: String,
}

/// Where a check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Whole,
    /// A step generator or rule, by name.
    Generator(String),
    /// A directed cycle, as object labels with the first repeated at the end.
    Cycle(Vec<String>),
    /// Index into the cell list of a rewrite zig-zag.
    Cell(usize),
    /// Child-index path from the certificate root.
    Node(Vec<usize>),
}

impl Report {
    pub fn fail(location: Location, reason: impl Into<String>) -> Self {
        Report::Fail(Failure {
            location,
            reason: reason.into(),
        })
    }

    pub fn passed(&self) -> bool {
        matches!(self, Report::Pass)
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Report::Pass => None,
            Report::Fail(f) => Some(f),
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Whole => f.write_str("system"),
            Location::Generator(name) => write!(f, "generator `{name}`"),
            Location::Cycle(objects) => write!(f, "cycle [{}]", objects.join(", ")),
            Location::Cell(i) => write!(f, "cell {i}"),
            Location::Node(path) if path.is_empty() => f.write_str("node <root>"),
            Location::Node(path) => {
                let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
                write!(f, "node <root>/{}", parts.join("/"))
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Pass => f.write_str("PASS"),
            Report::Fail(fail) => write!(f, "FAIL at {}: {}", fail.location, fail.reason),
        }
    }
}
