//! Command-line front end for the polybasis engine: system files, zig-zag
//! literals, witness and certificate files, and the subcommands.

pub mod cert;
pub mod commands;
pub mod dot;
pub mod error;
pub mod file;
pub mod literal;
mod text;
pub mod witness;

pub use cert::{CertificateFile, CERT_HEADER};
pub use commands::Outcome;
pub use error::{CliError, CliResult};
pub use file::SystemFile;
pub use literal::{format_zigzag, parse_zigzag};
pub use witness::{WitnessFile, WITNESS_HEADER};
