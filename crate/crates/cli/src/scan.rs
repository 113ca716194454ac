use k3clifford::par::Execution;
use k3clifford::{Error, Int, Regime, SurfaceParams};

use crate::document::{certify, CertificateDocument, CertifyOptions};

/// How the genus range is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// `g` in a fixed interval.
    Absolute(Int, Int),
    /// `g - 2s` in a fixed interval.
    RelativeToS(Int, Int),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub s_range: (Int, Int),
    pub g_mode: GridMode,
    pub regime: Regime,
    pub window_override: Option<Int>,
    /// Keep only the parameter sets that survive the fixed-component filter.
    pub exceptional_only: bool,
    pub timestamp: bool,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), String> {
        let (lo, hi) = self.s_range;
        if lo > hi {
            return Err(format!("empty s range {lo}:{hi}"));
        }
        let (glo, ghi) = match self.g_mode {
            GridMode::Absolute(a, b) | GridMode::RelativeToS(a, b) => (a, b),
        };
        if glo > ghi {
            return Err(format!("empty genus range {glo}:{ghi}"));
        }
        if let Some(w) = self.window_override {
            if w < 1 {
                return Err(format!("window must be ≥ 1, got {w}"));
            }
        }
        Ok(())
    }

    /// Grid cells `(g, s)`, `s` ascending then `g` ascending.
    pub fn cells(&self) -> Vec<(Int, Int)> {
        let (lo, hi) = self.s_range;
        (lo..=hi)
            .flat_map(|s| {
                let (a, b) = match self.g_mode {
                    GridMode::Absolute(a, b) => (a, b),
                    GridMode::RelativeToS(a, b) => (2 * s + a, 2 * s + b),
                };
                (a..=b).map(move |g| (g, s))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    /// Cells outside the chosen regime.
    pub skipped: usize,
    pub exceptional: usize,
}

impl std::fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "records={} passed={} failed={} skipped={} exceptional_triples={}",
            self.records, self.passed, self.failed, self.skipped, self.exceptional
        )
    }
}

#[derive(Debug)]
pub struct ScanOutcome {
    /// Documents in grid order, up to the first internal error.
    pub documents: Vec<CertificateDocument>,
    pub summary: ScanSummary,
    /// The cell `(g, s)` where certification aborted, if any.
    pub error: Option<((Int, Int), Error)>,
}

enum Cell {
    Certified(Box<CertificateDocument>),
    Skipped,
    Failed(Error),
}

pub fn run_scan(config: &ScanConfig, exec: Execution) -> ScanOutcome {
    let cells = config.cells();
    let opts = CertifyOptions {
        window: config.window_override,
        timestamp: config.timestamp,
    };
    let results = exec.map(&cells, |&(g, s)| {
        match SurfaceParams::new(g, s, config.regime) {
            Ok(p) if p.satisfies(Regime::Base) => match certify(&p, opts) {
                Ok(doc) => Cell::Certified(Box::new(doc)),
                Err(e) => Cell::Failed(e),
            },
            Ok(_) | Err(Error::RegimeViolation(_)) => Cell::Skipped,
            Err(e) => Cell::Failed(e),
        }
    });

    let mut summary = ScanSummary::default();
    let mut documents = Vec::new();
    for (cell, result) in cells.into_iter().zip(results) {
        match result {
            Cell::Certified(doc) => {
                if config.exceptional_only && !doc.is_exceptional() {
                    continue;
                }
                summary.records += 1;
                if doc.passed {
                    summary.passed += 1;
                } else {
                    summary.failed += 1;
                }
                if doc.is_exceptional() {
                    summary.exceptional += 1;
                }
                documents.push(*doc);
            }
            Cell::Skipped => summary.skipped += 1,
            Cell::Failed(e) => {
                return ScanOutcome {
                    documents,
                    summary,
                    error: Some((cell, e)),
                }
            }
        }
    }
    ScanOutcome {
        documents,
        summary,
        error: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(s: (Int, Int), g: GridMode, regime: Regime) -> ScanConfig {
        ScanConfig {
            s_range: s,
            g_mode: g,
            regime,
            window_override: None,
            exceptional_only: false,
            timestamp: false,
        }
    }

    #[test]
    fn cells_are_ordered() {
        let c = config((-1, 0), GridMode::RelativeToS(14, 15), Regime::Theorem);
        assert_eq!(c.cells(), vec![(12, -1), (13, -1), (14, 0), (15, 0)]);
    }

    #[test]
    fn invalid_configs() {
        assert!(config((2, 1), GridMode::Absolute(1, 2), Regime::Base)
            .validate()
            .is_err());
        assert!(config((1, 1), GridMode::Absolute(3, 2), Regime::Base)
            .validate()
            .is_err());
        let mut c = config((1, 1), GridMode::Absolute(1, 2), Regime::Base);
        c.window_override = Some(0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn theorem_sweep_passes() {
        let c = config((-1, 3), GridMode::RelativeToS(14, 24), Regime::Theorem);
        let out = run_scan(&c, Execution::default());
        assert!(out.error.is_none());
        assert_eq!(out.summary.failed, 0);
        assert_eq!(out.summary.records, 5 * 11);
    }

    #[test]
    fn sharp_sweep_fails_everywhere() {
        let c = config((-1, 5), GridMode::RelativeToS(13, 13), Regime::Base);
        let out = run_scan(&c, Execution::default());
        assert_eq!(out.summary.failed, 7);
        for doc in &out.documents {
            assert_eq!(doc.min_f(), Some(doc.params.d - 8));
        }
    }

    #[test]
    fn out_of_regime_cells_are_skipped() {
        let c = config((0, 0), GridMode::Absolute(10, 14), Regime::Theorem);
        let out = run_scan(&c, Execution::default());
        assert_eq!(out.summary.skipped, 4);
        assert_eq!(out.summary.records, 1);
    }

    #[test]
    fn exceptional_filter() {
        let mut c = config((-1, 25), GridMode::RelativeToS(13, 80), Regime::Base);
        c.exceptional_only = true;
        let out = run_scan(&c, Execution::default());
        let hits: Vec<_> = out
            .documents
            .iter()
            .map(|d| (d.params.g, d.params.s))
            .collect();
        assert_eq!(hits, vec![(12, -1), (15, 1), (20, 3)]);
        assert_eq!(out.summary.exceptional, 3);
    }
}
