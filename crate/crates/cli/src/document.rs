use std::time::{SystemTime, UNIX_EPOCH};

use k3clifford::classifier::{
    ample_certificate, isotropic_primitive, minus_two_bruteforce, minus_two_closed_form,
    AmpleCertificate, IsotropicRecord, MinusTwoRecord,
};
use k3clifford::clifford::{
    clifford_certificate, enumeration_bounds, witness_for_gamma, CliffordCertificate, WitnessRecord,
};
use k3clifford::fixedcomp::{
    check_pencil_c_minus_h, exceptional_box_check, fixed_component_filter,
    no_isotropic_decomposition, ExclusionReport, TripleFilter,
};
use k3clifford::{DivisorClass, Int, Regime, Result, SurfaceParams};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CertifyOptions {
    /// Falsifier window; defaults to [`default_window`].
    pub window: Option<Int>,
    pub timestamp: bool,
}

/// `max(50, 4 * n_hi)`, with `n_hi` from the enumeration bounds.
pub fn default_window(p: &SurfaceParams) -> Int {
    let n_hi = enumeration_bounds(p).map(|b| b.n_hi).unwrap_or(0);
    (4 * n_hi).max(50)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusTwoSection {
    pub r_max: Int,
    pub closed_form: Vec<MinusTwoRecord>,
    pub bruteforce: Vec<MinusTwoRecord>,
    pub agree: bool,
}

/// Sections are `None` when their preconditions (`s >= -1`, exceptional
/// triple) do not apply to the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedComponentSection {
    pub pencil: Option<ExclusionReport>,
    pub triple_filter: Option<TripleFilter>,
    pub exceptional_box: Option<ExclusionReport>,
    pub isotropic_splitting: Option<ExclusionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
}

/// Everything verified for one `(g, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub tool_version: String,
    /// Unix seconds; omitted for reproducible output.
    pub generated_at: Option<u64>,
    pub params: SurfaceParams,
    /// `None` when `g < 2` or `g + s <= 2`.
    pub ample: Option<AmpleCertificate>,
    pub minus_two: MinusTwoSection,
    pub isotropic: Option<Vec<IsotropicRecord>>,
    pub fixedcomp: FixedComponentSection,
    /// `chi(H) = h0(S, H)`.
    pub h0_hyperplane: Int,
    pub clifford: CliffordCertificate,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl CertificateDocument {
    pub fn is_exceptional(&self) -> bool {
        self.fixedcomp.triple_filter.is_some_and(|t| t.survives)
    }

    pub fn min_f(&self) -> Option<Int> {
        self.clifford.admissible_min.as_ref().map(|m| m.f_value)
    }

    pub fn argmin(&self) -> &[DivisorClass] {
        self.clifford
            .admissible_min
            .as_ref()
            .map_or(&[], |m| m.argmin.as_slice())
    }
}

fn now() -> Option<u64> {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

/// Runs every check for `p`. `p` must satisfy the base regime.
pub fn certify(p: &SurfaceParams, opts: CertifyOptions) -> Result<CertificateDocument> {
    let window = opts.window.unwrap_or_else(|| default_window(p));
    let ample = if p.g >= 2 && p.g + p.s > 2 {
        Some(ample_certificate(p, window)?)
    } else {
        None
    };

    let r_max = p.d - 6;
    let closed_form = minus_two_closed_form(p)?;
    let bruteforce = minus_two_bruteforce(p, r_max)?;
    let minus_two = MinusTwoSection {
        r_max,
        agree: closed_form == bruteforce,
        closed_form,
        bruteforce,
    };

    let (isotropic, fixedcomp) = if p.s >= -1 {
        let triple_filter = fixed_component_filter(p)?;
        let exceptional_box = match triple_filter {
            Some(t) if t.survives => Some(exceptional_box_check(p)?),
            _ => None,
        };
        (
            Some(isotropic_primitive(p)?),
            FixedComponentSection {
                pencil: Some(check_pencil_c_minus_h(p)?),
                triple_filter,
                exceptional_box,
                isotropic_splitting: Some(no_isotropic_decomposition(p)?),
            },
        )
    } else {
        (
            None,
            FixedComponentSection {
                pencil: None,
                triple_filter: None,
                exceptional_box: None,
                isotropic_splitting: None,
            },
        )
    };

    let clifford = clifford_certificate(p)?;
    let h0_hyperplane = p.chi(DivisorClass::H)?;

    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool| {
        checks.push(CheckResult {
            name: name.into(),
            passed,
        })
    };
    if let Some(a) = &ample {
        check("ample", a.verdict);
    }
    check("minus_two_enumerations_agree", minus_two.agree);
    let sections = [
        ("pencil_c_minus_h_fixed_free", &fixedcomp.pencil),
        ("exceptional_box_excluded", &fixedcomp.exceptional_box),
        ("no_isotropic_splitting", &fixedcomp.isotropic_splitting),
    ];
    for (name, report) in sections {
        if let Some(r) = report {
            check(name, r.excluded());
        }
    }
    check("h0_hyperplane_is_5", h0_hyperplane == 5);
    check("theorem_holds", clifford.theorem_holds);
    check("gamma_below_cliff", clifford.gamma_below_cliff);
    if p.satisfies(Regime::Theorem) {
        check(
            "root_b_between_1_and_2",
            clifford.roots.b_above_one && clifford.roots.b_below_two,
        );
    }
    let passed = checks.iter().all(|c| c.passed);

    Ok(CertificateDocument {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        generated_at: opts.timestamp.then(now).flatten(),
        params: *p,
        ample,
        minus_two,
        isotropic,
        fixedcomp,
        h0_hyperplane,
        clifford,
        checks,
        passed,
    })
}

/// One genus witness for a given Clifford index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub gamma: Int,
    pub genus: Int,
    /// Certificate passes with `Cliff(C) = gamma` and the rank-2 value
    /// `gamma / 2 + 2`.
    pub verified: bool,
    /// Set when the genus relies on a result outside the lattice argument.
    pub external_reason: Option<String>,
    pub certificate: Option<CertificateDocument>,
}

pub fn witness_documents(gamma: Int, opts: CertifyOptions) -> Result<Vec<WitnessDocument>> {
    witness_for_gamma(gamma)?
        .into_iter()
        .map(|record| {
            let genus = record.genus();
            let verified = record.is_verified();
            Ok(match record {
                WitnessRecord::Verified { params, .. } => {
                    let certificate = certify(&params, opts)?;
                    WitnessDocument {
                        gamma,
                        genus,
                        verified: verified && certificate.passed,
                        external_reason: None,
                        certificate: Some(certificate),
                    }
                }
                WitnessRecord::ExternalResultRequired { reason, .. } => WitnessDocument {
                    gamma,
                    genus,
                    verified: false,
                    external_reason: Some(reason),
                    certificate: None,
                },
            })
        })
        .collect()
}
