//! Fixed-component exclusion for `|C - H|` and for splittings `C = D + (C - D)`.
//!
//! Each check evaluates the relevant intersection numbers twice, once from
//! the closed-form polynomial in `s` and once through the pairing, and
//! aborts with [`Error::InternalInconsistency`] if they differ.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    isotropic_primitive, minus_two_closed_form, IsotropicCase, MinusTwoCase, MinusTwoRecord,
};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Int, Regime, SurfaceParams};
use crate::par::Execution;

const H: DivisorClass = DivisorClass::H;
const C: DivisorClass = DivisorClass::C;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    PencilCMinusH,
    GeneralD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    PencilCMinusH,
    ExceptionalBox,
    IsotropicSplitting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contradiction {
    /// No class of the relevant kind exists.
    NoCandidateF,
    /// The moving part `M` would have `M.C <= 0`.
    MdotCNonpositive,
    /// `C.(C - 2E) < 0`, so a splitting along `E` forces a negative square.
    CFdotCNonpositive,
    /// The box of admissible `C - D` contains no lattice point.
    BoxEmpty,
    /// The only admissible `C - D` is `2H`, which has no fixed component.
    OnlyTwoH,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub params: SurfaceParams,
    pub check: Check,
    pub target: Target,
    pub candidate_f: Option<MinusTwoRecord>,
    /// `None` when the argument does not close.
    pub contradiction: Option<Contradiction>,
    /// Evaluated integers backing the contradiction.
    pub detail: BTreeMap<String, Int>,
    /// Classes the check produced: box solutions or isotropic `E`.
    pub witnesses: Vec<DivisorClass>,
}

impl ExclusionReport {
    fn new(params: SurfaceParams, check: Check) -> Self {
        let target = match check {
            Check::PencilCMinusH => Target::PencilCMinusH,
            Check::ExceptionalBox | Check::IsotropicSplitting => Target::GeneralD,
        };
        ExclusionReport {
            params,
            check,
            target,
            candidate_f: None,
            contradiction: None,
            detail: BTreeMap::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn excluded(&self) -> bool {
        self.contradiction.is_some()
    }

    /// Recomputes the report from its parameters and compares.
    pub fn is_consistent(&self) -> Result<bool> {
        let fresh = match self.check {
            Check::PencilCMinusH => check_pencil_c_minus_h(&self.params)?,
            Check::ExceptionalBox => exceptional_box_check(&self.params)?,
            Check::IsotropicSplitting => no_isotropic_decomposition(&self.params)?,
        };
        Ok(fresh == *self)
    }
}

fn agree(quantity: impl Into<String>, closed_form: Int, pairing: Int) -> Result<Int> {
    if closed_form == pairing {
        Ok(pairing)
    } else {
        Err(Error::InternalInconsistency {
            quantity: quantity.into(),
            closed_form,
            pairing,
        })
    }
}

fn require_base_nonneg_offset(p: &SurfaceParams, what: &str) -> Result<()> {
    if p.satisfies(Regime::Base) && p.s >= -1 {
        Ok(())
    } else {
        Err(Error::PreconditionViolation(format!(
            "{what} needs the base regime with s ≥ −1"
        )))
    }
}

/// `|C - H|` has no fixed component.
///
/// A fixed `(-2)`-curve `F` would leave a moving part `M = C - H - F` with
/// `M.H > 2`, forcing `F.H <= d - 9`. The only family that low is
/// `F ~ ((s+5)/2)H - C`, and there `M.C = -(3s^2 + 6s - 9)/4 <= 0`
/// contradicts ampleness of `C`.
pub fn check_pencil_c_minus_h(p: &SurfaceParams) -> Result<ExclusionReport> {
    require_base_nonneg_offset(p, "the |C - H| check")?;
    let mut report = ExclusionReport::new(*p, Check::PencilCMinusH);
    let s = p.s;

    let pencil = C - H;
    let sq = agree("(C-H)^2", 2 * s + 4, p.self_int(pencil)?)?;
    if sq < 2 {
        return Err(Error::PreconditionViolation(format!("(C-H)^2 = {sq} < 2")));
    }
    report.detail.insert("(C-H)^2".into(), sq);

    let candidates: Vec<_> = minus_two_closed_form(p)?
        .into_iter()
        .filter(|f| f.r <= p.d - 9)
        .collect();
    report.contradiction = Some(Contradiction::NoCandidateF);
    for f in candidates {
        report.candidate_f = Some(f);
        report.detail.insert("F.H".into(), f.r);
        match f.case {
            MinusTwoCase::HalfShiftedHMinusC => {
                let moving = pencil - f.class;
                let closed = -(3 * s * s + 6 * s - 9) / 4;
                let m_dot_c = agree("M.C", closed, p.intersect(moving, C)?)?;
                report.detail.insert("M.C".into(), m_dot_c);
                report.contradiction = (m_dot_c <= 0).then_some(Contradiction::MdotCNonpositive);
            }
            MinusTwoCase::CMinusH | MinusTwoCase::ThirdGenusHMinusC => {
                unreachable!("s = -3 families excluded by the s ≥ −1 precondition")
            }
            _ => report.contradiction = None,
        }
        if report.contradiction.is_none() {
            break;
        }
    }
    Ok(report)
}

/// Outcome of the `(C - F).C > 0` filter for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleFilter {
    pub params: SurfaceParams,
    pub candidate: MinusTwoRecord,
    /// `(C - F).C`; the generic argument closes when this is `<= 0`.
    pub cf_dot_c: Int,
    pub survives: bool,
}

/// Applies the `(C - F).C` filter to the families `F ~ (s+4)H - C`
/// (`g = 4s + 16`) and `F ~ ((s+5)/2)H - C` (`2g = 5(s + 5)`). Returns
/// `None` when neither family occurs.
pub fn fixed_component_filter(p: &SurfaceParams) -> Result<Option<TripleFilter>> {
    require_base_nonneg_offset(p, "the fixed-component filter")?;
    let s = p.s;
    for f in minus_two_closed_form(p)? {
        let closed = match f.case {
            MinusTwoCase::ShiftedHMinusC => -(3 * s * s + 12 * s + 4),
            MinusTwoCase::HalfShiftedHMinusC => -(3 * s * s - 59) / 4,
            _ => continue,
        };
        let cf_dot_c = agree("(C-F).C", closed, p.intersect(C - f.class, C)?)?;
        return Ok(Some(TripleFilter {
            params: *p,
            candidate: f,
            cf_dot_c,
            survives: cf_dot_c > 0,
        }));
    }
    Ok(None)
}

/// The parameter sets that survive [`fixed_component_filter`].
pub fn exceptional_triples(scan: &[SurfaceParams]) -> Result<Vec<SurfaceParams>> {
    exceptional_triples_with(scan, Execution::default())
}

pub fn exceptional_triples_with(
    scan: &[SurfaceParams],
    exec: Execution,
) -> Result<Vec<SurfaceParams>> {
    let outcomes = exec.map(scan, fixed_component_filter);
    let mut kept = Vec::new();
    for outcome in outcomes {
        if let Some(hit) = outcome?.filter(|t| t.survives) {
            kept.push(hit.params);
        }
    }
    Ok(kept)
}

/// Bounds on `u = (C-D).H` and `v = (C-D).C` for an exceptional triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxBounds {
    pub u: (Int, Int),
    pub v: (Int, Int),
}

impl BoxBounds {
    pub fn for_candidate(p: &SurfaceParams, f: DivisorClass) -> Result<Self> {
        Ok(BoxBounds {
            u: (p.intersect(f, H)? + 3, p.d - 3),
            v: (p.intersect(f, C)? + 1, p.curve_square() - 1),
        })
    }

    pub fn contains(&self, p: &SurfaceParams, class: DivisorClass) -> Result<bool> {
        let u = p.intersect(class, H)?;
        let v = p.intersect(class, C)?;
        Ok((self.u.0..=self.u.1).contains(&u) && (self.v.0..=self.v.1).contains(&v))
    }

    /// The `(m, n)` bounding box of the parallelogram cut out by the
    /// bounds, from the preimages of its four corners.
    pub fn region(&self, p: &SurfaceParams) -> (RangeInclusive<Int>, RangeInclusive<Int>) {
        // (m, n) = ((2g-2)u - dv, 6v - du) / det, det = 6(2g-2) - d^2 < 0.
        let det = 6 * p.curve_square() - p.d * p.d;
        let corners = [
            (self.u.0, self.v.0),
            (self.u.0, self.v.1),
            (self.u.1, self.v.0),
            (self.u.1, self.v.1),
        ];
        let ms = corners.map(|(u, v)| (p.curve_square() * u - p.d * v, det));
        let ns = corners.map(|(u, v)| (6 * v - p.d * u, det));
        let range = |vals: [(Int, Int); 4]| {
            let lo = vals
                .iter()
                .map(|&(a, b)| Integer::div_floor(&a, &b))
                .min()
                .unwrap();
            let hi = vals
                .iter()
                .map(|&(a, b)| Integer::div_ceil(&a, &b))
                .max()
                .unwrap();
            lo..=hi
        };
        (range(ms), range(ns))
    }
}

/// Lattice points `C - D ~ mH + nC` of the box inside the given scan ranges.
pub fn box_solutions(
    p: &SurfaceParams,
    bounds: &BoxBounds,
    m_range: RangeInclusive<Int>,
    n_range: RangeInclusive<Int>,
) -> Result<Vec<DivisorClass>> {
    let mut out = Vec::new();
    for m in m_range {
        for n in n_range.clone() {
            let class = DivisorClass::new(m, n);
            if bounds.contains(p, class)? {
                out.push(class);
            }
        }
    }
    Ok(out)
}

/// Settles the three parameter sets left by [`fixed_component_filter`].
///
/// With `F` fixed in `|C - D|` and `h0(D), h0(C - D - F) >= 2`, the class
/// `C - D` must satisfy `F.H + 3 <= (C-D).H <= C.H - 3` and
/// `F.C + 1 <= (C-D).C <= C.C - 1`. Eliminating `m` gives
/// `d u - 6 v = disc * n`, recorded as `disc_n_lo..disc_n_hi`.
pub fn exceptional_box_check(p: &SurfaceParams) -> Result<ExclusionReport> {
    let filter = fixed_component_filter(p)?
        .filter(|t| t.survives)
        .ok_or_else(|| {
            Error::PreconditionViolation(format!(
                "(g, s) = ({}, {}) is not an exceptional triple",
                p.g, p.s
            ))
        })?;
    let f = filter.candidate;
    let bounds = BoxBounds::for_candidate(p, f.class)?;
    let (m_range, n_range) = bounds.region(p);
    let solutions = box_solutions(p, &bounds, m_range, n_range)?;

    let mut report = ExclusionReport::new(*p, Check::ExceptionalBox);
    report.candidate_f = Some(f);
    let disc = p.discriminant();
    let entries = [
        ("F.H", f.r),
        ("F.C", p.intersect(f.class, C)?),
        ("(C-D).H_lo", bounds.u.0),
        ("(C-D).H_hi", bounds.u.1),
        ("(C-D).C_lo", bounds.v.0),
        ("(C-D).C_hi", bounds.v.1),
        ("disc", disc),
        ("disc_n_lo", p.d * bounds.u.0 - 6 * bounds.v.1),
        ("disc_n_hi", p.d * bounds.u.1 - 6 * bounds.v.0),
    ];
    report
        .detail
        .extend(entries.into_iter().map(|(k, v)| (k.to_string(), v)));
    report.contradiction = match solutions.as_slice() {
        [] => Some(Contradiction::BoxEmpty),
        [only] if *only == 2 * H => Some(Contradiction::OnlyTwoH),
        _ => None,
    };
    report.witnesses = solutions;
    Ok(report)
}

/// Neither `D` nor `C - D` can be isotropic.
///
/// If `C - D = rE` with `E` primitive isotropic and `r >= 1`, then
/// `D^2 = C.(C - 2rE) <= C.(C - 2E)`, which is negative for every family.
pub fn no_isotropic_decomposition(p: &SurfaceParams) -> Result<ExclusionReport> {
    require_base_nonneg_offset(p, "the isotropic splitting check")?;
    let mut report = ExclusionReport::new(*p, Check::IsotropicSplitting);
    let classes = isotropic_primitive(p)?;
    if classes.is_empty() {
        report.contradiction = Some(Contradiction::NoCandidateF);
        return Ok(report);
    }
    let s = p.s;
    let mut all_negative = true;
    for e in &classes {
        let closed = match e.case {
            IsotropicCase::ShiftedHMinusC => -6 * s * s - 20 * s - 6,
            IsotropicCase::ThreeCMinusFourH => -16 * s - 16,
            IsotropicCase::HalfShiftedHMinusC => (-3 * s * s - 4 * s + 32) / 2,
            IsotropicCase::ThreeCMinusFiveH => -10 * s + 10,
        };
        let split = C.checked_sub(e.class.checked_scale(2)?)?;
        let label = format!("C.(C-2E) for E={}", e.class);
        let value = agree(label.clone(), closed, p.intersect(C, split)?)?;
        report
            .detail
            .insert(format!("E.C for E={}", e.class), p.intersect(e.class, C)?);
        report.detail.insert(label, value);
        all_negative &= value < 0;
        report.witnesses.push(e.class);
    }
    report.contradiction = all_negative.then_some(Contradiction::CFdotCNonpositive);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(g: Int, s: Int) -> SurfaceParams {
        SurfaceParams::base(g, s).unwrap()
    }

    #[test]
    fn pencil_examples() {
        let r = check_pencil_c_minus_h(&base(15, 1)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::MdotCNonpositive));
        assert_eq!(r.detail["M.C"], 0);

        let r = check_pencil_c_minus_h(&base(14, 0)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::NoCandidateF));
        assert!(r.candidate_f.is_none());

        let r = check_pencil_c_minus_h(&base(20, 3)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::MdotCNonpositive));
        assert_eq!(r.detail["M.C"], -9);
        let m = C - H - DivisorClass::new(4, -1);
        assert_eq!(base(20, 3).intersect(m, C), Ok(-9));
    }

    #[test]
    fn pencil_precondition() {
        assert!(matches!(
            check_pencil_c_minus_h(&base(18, -3)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn pencil_never_fails_in_regime() {
        for s in -1..=25 {
            for g in 2 * s + 13..=2 * s + 80 {
                let r = check_pencil_c_minus_h(&base(g, s)).unwrap();
                assert!(r.excluded(), "g={g} s={s}");
            }
        }
    }

    #[test]
    fn triple_filter_examples() {
        let t = fixed_component_filter(&base(16, 0)).unwrap().unwrap();
        assert!(!t.survives);
        assert_eq!(t.cf_dot_c, -4);

        let t = fixed_component_filter(&base(25, 5)).unwrap().unwrap();
        assert_eq!(t.candidate.class, DivisorClass::new(5, -1));
        assert_eq!(t.cf_dot_c, -4);
        assert!(!t.survives);

        assert_eq!(fixed_component_filter(&base(14, 0)).unwrap(), None);
    }

    #[test]
    fn exceptional_triples_on_grid() {
        let grid: Vec<_> = (-1..=25)
            .flat_map(|s| (2 * s + 13..=2 * s + 80).map(move |g| base(g, s)))
            .collect();
        let got: Vec<_> = exceptional_triples(&grid)
            .unwrap()
            .into_iter()
            .map(|p| (p.g, p.s))
            .collect();
        assert_eq!(got, vec![(12, -1), (15, 1), (20, 3)]);
    }

    #[test]
    fn box_examples() {
        let r = exceptional_box_check(&base(12, -1)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::BoxEmpty));
        assert_eq!(r.detail["(C-D).H_lo"], 8);
        assert_eq!(r.detail["(C-D).H_hi"], 10);
        assert_eq!(r.detail["(C-D).C_lo"], 18);
        assert_eq!(r.detail["(C-D).C_hi"], 21);
        assert_eq!(r.detail["disc"], 37);
        assert_eq!(r.detail["disc_n_lo"], -22);
        assert_eq!(r.detail["disc_n_hi"], 22);

        let r = exceptional_box_check(&base(15, 1)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::BoxEmpty));
        assert_eq!(r.detail["(C-D).C_lo"], 15);
        assert_eq!(r.detail["(C-D).C_hi"], 27);

        let r = exceptional_box_check(&base(20, 3)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::OnlyTwoH));
        assert_eq!(r.witnesses, vec![DivisorClass::new(2, 0)]);
        assert_eq!(r.detail["(C-D).H_lo"], 10);
        assert_eq!(r.detail["(C-D).H_hi"], 14);
        assert_eq!(r.detail["(C-D).C_lo"], 31);
        assert_eq!(r.detail["(C-D).C_hi"], 37);
        assert_eq!(r.detail["disc_n_lo"], -52);
        assert_eq!(r.detail["disc_n_hi"], 52);
        assert_eq!(r.detail["disc"], 61);
    }

    #[test]
    fn box_is_stable_under_widening() {
        for (g, s) in [(12, -1), (15, 1), (20, 3)] {
            let p = base(g, s);
            let f = fixed_component_filter(&p).unwrap().unwrap().candidate.class;
            let bounds = BoxBounds::for_candidate(&p, f).unwrap();
            let (m, n) = bounds.region(&p);
            let tight = box_solutions(&p, &bounds, m.clone(), n.clone()).unwrap();
            let widen = |r: RangeInclusive<Int>| {
                let half = (r.end() - r.start()).max(1);
                r.start() - half..=r.end() + half
            };
            let wide = box_solutions(&p, &bounds, widen(m), widen(n)).unwrap();
            assert_eq!(tight, wide);
            let far = box_solutions(&p, &bounds, -100..=100, -100..=100).unwrap();
            assert_eq!(tight, far);
        }
    }

    #[test]
    fn box_precondition() {
        assert!(matches!(
            exceptional_box_check(&base(16, 0)),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn isotropic_splitting_examples() {
        let r = no_isotropic_decomposition(&base(13, 0)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::CFdotCNonpositive));
        assert_eq!(r.detail["C.(C-2E) for E=(3, -1)"], -6);
        assert_eq!(r.detail["E.C for E=(3, -1)"], 15);

        let r = no_isotropic_decomposition(&base(21, 4)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::CFdotCNonpositive));
        assert_eq!(r.detail["C.(C-2E) for E=(4, -1)"], -16);

        let r = no_isotropic_decomposition(&base(14, 0)).unwrap();
        assert_eq!(r.contradiction, Some(Contradiction::NoCandidateF));
    }

    #[test]
    fn reports_are_reproducible() {
        for (g, s) in [(13, 0), (15, 1), (20, 3), (12, -1), (21, 4)] {
            let p = base(g, s);
            assert!(check_pencil_c_minus_h(&p).unwrap().is_consistent().unwrap());
            assert!(no_isotropic_decomposition(&p)
                .unwrap()
                .is_consistent()
                .unwrap());
        }
        for (g, s) in [(12, -1), (15, 1), (20, 3)] {
            assert!(exceptional_box_check(&base(g, s))
                .unwrap()
                .is_consistent()
                .unwrap());
        }
    }
}
