//! Certificate documents, grid scans and output formats behind the
//! `k3clifford` command-line tool.

pub mod document;
pub mod output;
pub mod scan;

pub use document::{certify, CertificateDocument, CertifyOptions, WitnessDocument};
pub use output::Format;
pub use scan::{GridMode, ScanConfig, ScanSummary};
