use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use crate::document::{CertificateDocument, WitnessDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Pretty,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
            Format::Pretty => "txt",
        }
    }
}

/// Scalar verdict fields of a document; the CSV projection.
#[derive(Debug, Serialize)]
struct Row {
    g: i128,
    s: i128,
    d: i128,
    ample: Option<bool>,
    minus_two_agree: bool,
    minus_two_low_degree: usize,
    isotropic: Option<usize>,
    pencil_fixed_free: Option<bool>,
    exceptional: bool,
    no_isotropic_splitting: Option<bool>,
    min_f: Option<i128>,
    cliff_max: i128,
    theorem_holds: bool,
    gamma_rank2: String,
    mercat_lower: String,
    cliff2_equal: bool,
    passed: bool,
}

impl From<&CertificateDocument> for Row {
    fn from(doc: &CertificateDocument) -> Self {
        let p = doc.params;
        Row {
            g: p.g,
            s: p.s,
            d: p.d,
            ample: doc.ample.as_ref().map(|a| a.verdict),
            minus_two_agree: doc.minus_two.agree,
            minus_two_low_degree: doc.minus_two.closed_form.len(),
            isotropic: doc.isotropic.as_ref().map(Vec::len),
            pencil_fixed_free: doc.fixedcomp.pencil.as_ref().map(|r| r.excluded()),
            exceptional: doc.is_exceptional(),
            no_isotropic_splitting: doc
                .fixedcomp
                .isotropic_splitting
                .as_ref()
                .map(|r| r.excluded()),
            min_f: doc.min_f(),
            cliff_max: doc.clifford.cliff_max,
            theorem_holds: doc.clifford.theorem_holds,
            gamma_rank2: doc.clifford.gamma_rank2.to_string(),
            mercat_lower: doc.clifford.mercat_lower.to_string(),
            cliff2_equal: doc.clifford.cliff2_equal,
            passed: doc.passed,
        }
    }
}

fn pretty(doc: &CertificateDocument, out: &mut dyn Write) -> io::Result<()> {
    let p = doc.params;
    let c = &doc.clifford;
    writeln!(
        out,
        "g={} s={} d={} [{}]",
        p.g,
        p.s,
        p.d,
        if doc.passed { "PASS" } else { "FAIL" }
    )?;
    let min = match &c.admissible_min {
        Some(m) => {
            let argmin: Vec<_> = m.argmin.iter().map(ToString::to_string).collect();
            format!("{} at {}", m.f_value, argmin.join(" "))
        }
        None => "none (admissible set empty)".into(),
    };
    writeln!(out, "  min f            {min}")?;
    writeln!(out, "  cliff_max        {}", c.cliff_max)?;
    writeln!(
        out,
        "  rank-2 gamma     {} (lower bound {}, equal: {})",
        c.gamma_rank2, c.mercat_lower, c.cliff2_equal
    )?;
    for check in &doc.checks {
        writeln!(
            out,
            "  {:<32} {}",
            check.name,
            if check.passed { "ok" } else { "FAILED" }
        )?;
    }
    Ok(())
}

pub fn write_documents(
    format: Format,
    docs: &[CertificateDocument],
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            for doc in docs {
                serde_json::to_writer(&mut *out, doc)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for doc in docs {
                w.serialize(Row::from(doc))?;
            }
            w.flush()?;
        }
        Format::Pretty => {
            for doc in docs {
                pretty(doc, out)?;
            }
        }
    }
    Ok(())
}

pub fn write_witnesses(
    format: Format,
    docs: &[WitnessDocument],
    out: &mut dyn Write,
) -> io::Result<()> {
    match format {
        Format::Jsonl => {
            for doc in docs {
                serde_json::to_writer(&mut *out, doc)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let certs: Vec<_> = docs.iter().filter_map(|d| d.certificate.clone()).collect();
            write_documents(format, &certs, out)?;
        }
        Format::Pretty => {
            for doc in docs {
                match (&doc.certificate, &doc.external_reason) {
                    (Some(cert), _) => {
                        writeln!(
                            out,
                            "gamma={} genus={} verified={}",
                            doc.gamma, doc.genus, doc.verified
                        )?;
                        pretty(cert, out)?;
                    }
                    (None, reason) => writeln!(
                        out,
                        "gamma={} genus={} external: {}",
                        doc.gamma,
                        doc.genus,
                        reason.as_deref().unwrap_or("")
                    )?,
                }
            }
        }
    }
    Ok(())
}

/// A single JSON value on one line (jsonl) or indented (pretty).
pub fn write_value<T: Serialize>(format: Format, value: &T, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Pretty => serde_json::to_writer_pretty(&mut *out, value)?,
        _ => serde_json::to_writer(&mut *out, value)?,
    }
    writeln!(out)
}
