//! The subcommands. Each returns an [`Outcome`] instead of printing, so the
//! binary and the tests share one code path.

use std::fmt::Write as _;

use polybasis_core::certify::certify_closed_with;
use polybasis_core::srs::{local_peaks_at, normalize_with_limit, synthesize_lc_with_limit};
use polybasis_core::{
    check_certificate, check_noetherian, check_rewrite_zigzag, critical_peaks, Coherence, Limits,
    LocalConfluence, Location, Mode, Object, PeakKind, Report, RewritingSystem, SynthesisError,
};

use crate::cert::{CertificateFile, CERT_HEADER};
use crate::dot::{reduction_graph, to_dot, to_text};
use crate::error::{CliError, CliResult};
use crate::file::SystemFile;
use crate::literal::{format_object, format_zigzag, parse_object, parse_zigzag};
use crate::witness::{WitnessFile, WITNESS_HEADER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_result(r: CliResult<String>) -> Self {
        match r {
            Ok(s) => Outcome::ok(s),
            Err(e) => Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        }
    }
}

pub fn load_system(path: &str) -> CliResult<RewritingSystem> {
    SystemFile::load(path)?.to_system()
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

fn write(path: &str, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

/// Termination check and local-confluence synthesis, both required before
/// any witness is built or checked.
fn prepare(system: &RewritingSystem, limits: Limits) -> CliResult<LocalConfluence> {
    let report = check_noetherian(system);
    if !report.passed() {
        return Err(CliError::Failed(format!("termination: {report}")));
    }
    synthesize_lc_with_limit(system, limits.max_steps).map_err(|e| match e {
        SynthesisError::NotConfluent(c) => CliError::Failed(format!("not locally confluent: {c}")),
        SynthesisError::Engine(e) => e.into(),
    })
}

fn kind_name(kind: Option<PeakKind>) -> String {
    kind.map_or_else(|| "Local".to_string(), |k| k.to_string())
}

fn join_text(system: &RewritingSystem, y: &Object, z: &Object, limits: Limits) -> CliResult<String> {
    let (ny, _) = normalize_with_limit(system, y, limits.max_steps)?;
    let (nz, _) = normalize_with_limit(system, z, limits.max_steps)?;
    Ok(if ny == nz {
        format!("joinable at {}", system.object_label(&ny))
    } else {
        format!(
            "NOT joinable: {} vs {}",
            system.object_label(&ny),
            system.object_label(&nz)
        )
    })
}

fn check_impl(path: &str, out: &mut String) -> CliResult<bool> {
    let limits = Limits::from_env();
    let system = load_system(path)?;
    writeln!(
        out,
        "system {} ({}, {})",
        system.name(),
        system.mode().as_str(),
        system.order().kind_name()
    )
    .unwrap();
    let termination = check_noetherian(&system);
    writeln!(out, "termination: {termination}").unwrap();
    if !termination.passed() {
        writeln!(out, "local confluence: skipped").unwrap();
        return Ok(false);
    }

    writeln!(out, "peaks:").unwrap();
    match system.mode() {
        Mode::Srs => {
            for cp in critical_peaks(&system, None) {
                let peak = cp.zigzag(&system)?;
                let (y, z) = (peak.start(), peak.target());
                writeln!(
                    out,
                    "  {:<15} {:<12} {}  {}",
                    cp.kind.to_string(),
                    system.word_text(&cp.word),
                    polybasis_core::coherence::peak_label(&system, &peak),
                    join_text(&system, y, z, limits)?
                )
                .unwrap();
            }
        }
        Mode::Graph => {
            for x in 0..system.nodes().len() {
                let apex = Object::Node(polybasis_core::NodeId(x as u32));
                for (peak, kind) in local_peaks_at(&system, &apex)? {
                    if peak.steps()[0].step == peak.steps()[1].step {
                        continue;
                    }
                    writeln!(
                        out,
                        "  {:<15} {:<12} {}  {}",
                        kind_name(kind),
                        system.object_label(&apex),
                        polybasis_core::coherence::peak_label(&system, &peak),
                        join_text(&system, peak.start(), peak.target(), limits)?
                    )
                    .unwrap();
                }
            }
        }
    }
    match synthesize_lc_with_limit(&system, limits.max_steps) {
        Ok(_) => {
            writeln!(out, "local confluence: PASS").unwrap();
            Ok(true)
        }
        Err(SynthesisError::NotConfluent(c)) => {
            writeln!(out, "local confluence: FAIL: {c}").unwrap();
            Ok(false)
        }
        Err(SynthesisError::Engine(e)) => Err(e.into()),
    }
}

/// Termination verdict, peak table and local-confluence verdict.
pub fn check(path: &str) -> Outcome {
    let mut out = String::new();
    match check_impl(path, &mut out) {
        Ok(ok) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: out,
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Build a witness between two parallel zig-zags and write it to `out`.
pub fn basis(path: &str, u: &str, v: &str, out: &str) -> Outcome {
    Outcome::from_result((|| {
        let limits = Limits::from_env();
        let system = load_system(path)?;
        let u = parse_zigzag(&system, u)?;
        let v = parse_zigzag(&system, v)?;
        let lc = prepare(&system, limits)?;
        let engine = Coherence::new(&system, &lc).with_limits(limits);
        let w = engine.basis_witness(&u, &v)?;
        write(out, &WitnessFile::from_basis(&system, &w).render(&system))?;
        Ok(format!(
            "wrote {out}: {} cells, {} measure checks\n",
            w.witness.len(),
            engine.measure_checks()
        ))
    })())
}

/// Certify a closed zig-zag and write the certificate to `out`.
pub fn certify(path: &str, u: &str, out: &str) -> Outcome {
    Outcome::from_result((|| {
        let limits = Limits::from_env();
        let system = load_system(path)?;
        let u = parse_zigzag(&system, u)?;
        let lc = prepare(&system, limits)?;
        let engine = Coherence::new(&system, &lc).with_limits(limits);
        let root = certify_closed_with(&engine, &u)?;
        let size = root.size();
        let file = CertificateFile {
            system: system.name().to_string(),
            goal: u,
            root,
        };
        write(out, &file.render(&system))?;
        Ok(format!("wrote {out}: {size} nodes\n"))
    })())
}

fn verify_impl(path: &str, artifact: &str) -> CliResult<(Report, String)> {
    let limits = Limits::from_env();
    let system = load_system(path)?;
    let text = read(artifact)?;
    let header = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let lc = prepare(&system, limits)?;
    let wrong_system = |name: &str| {
        CliError::Failed(format!(
            "{artifact} was written for system `{name}`, not `{}`",
            system.name()
        ))
    };
    if header == WITNESS_HEADER {
        let file = WitnessFile::parse(&system, &text)?;
        if file.system != system.name() {
            return Err(wrong_system(&file.system));
        }
        let rz = file.rewrite();
        let mut report = check_rewrite_zigzag(&system, &lc, &rz);
        if report.passed() && rz.target() != &file.v {
            report = Report::fail(
                Location::Cell(rz.len()),
                "the chain does not end at the stated target v",
            );
        }
        let summary = format!(
            "witness: {} cells from {} to {}",
            rz.len(),
            format_zigzag(&system, &file.u),
            format_zigzag(&system, &file.v)
        );
        Ok((report, summary))
    } else if header == CERT_HEADER {
        let file = CertificateFile::parse(&system, &text)?;
        if file.system != system.name() {
            return Err(wrong_system(&file.system));
        }
        let report = check_certificate(&system, &lc, &file.root, &file.goal);
        let summary = format!(
            "certificate: {} nodes for {}",
            file.root.size(),
            format_zigzag(&system, &file.goal)
        );
        Ok((report, summary))
    } else {
        Err(CliError::parse(format!(
            "{artifact}: expected `{WITNESS_HEADER}` or `{CERT_HEADER}` header"
        )))
    }
}

/// Re-check a witness or certificate file with the independent checkers.
pub fn verify(path: &str, artifact: &str) -> Outcome {
    match verify_impl(path, artifact) {
        Ok((report, summary)) => Outcome {
            code: if report.passed() { 0 } else { 1 },
            stdout: format!("{summary}\n{report}\n"),
            stderr: String::new(),
        },
        Err(e) => Outcome::from_result(Err(e)),
    }
}

/// Normal form of a word (or node) and the length of the reduction.
pub fn normalize(path: &str, word: &str) -> Outcome {
    Outcome::from_result((|| {
        let limits = Limits::from_env();
        let system = load_system(path)?;
        let word = word.trim();
        let x = if system.mode() == Mode::Srs && !word.starts_with('"') {
            parse_object(&system, &format!("\"{word}\""))?
        } else {
            parse_object(&system, word)?
        };
        let (nf, seq) = normalize_with_limit(&system, &x, limits.max_steps)?;
        Ok(format!(
            "normal form: {}\nsteps: {}\nsequence: {}\n",
            format_object(&system, &nf),
            seq.len(),
            format_zigzag(&system, &seq)
        ))
    })())
}

/// The reduction graph as DOT (or a plain edge list).
pub fn graph(path: &str, dot: bool, max_word_len: Option<usize>) -> Outcome {
    Outcome::from_result((|| {
        let system = load_system(path)?;
        let g = reduction_graph(&system, max_word_len)?;
        Ok(if dot { to_dot(&system, &g) } else { to_text(&system, &g) })
    })())
}
