//! `(-2)`-classes, primitive isotropic classes and ampleness of `C`.
//!
//! Every closed-form classification here has a brute-force counterpart so
//! the two can be compared over parameter grids.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, DivisorClass, Int, Regime, SurfaceParams};
use crate::par::Execution;

/// Exact integer square root: `Some(t)` with `t >= 0` and `t * t == x`.
pub fn is_perfect_square(x: Int) -> Option<Int> {
    if x < 0 {
        return None;
    }
    let t = x.isqrt();
    (t * t == x).then_some(t)
}

/// Which family a `(-2)`-class `F` with `r = F.H` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinusTwoCase {
    /// `r >= d - 5`; not enumerated in closed form.
    HighDegree,
    /// `s = -3`, `F ~ C - H`, `r = d - 6`.
    CMinusH,
    /// `s = -3`, `3 | g`, `F ~ (g/3)H - C`, `r = d - 6`.
    ThirdGenusHMinusC,
    /// `g = 4s + 16`, `F ~ (s+4)H - C`, `r = d - 8`.
    ShiftedHMinusC,
    /// `s` odd, `2g = 5(s + 5)`, `F ~ ((s+5)/2)H - C`, `r = d - 10`.
    HalfShiftedHMinusC,
    /// A low-degree class matching none of the families above.
    Unmatched,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinusTwoRecord {
    pub class: DivisorClass,
    /// `F.H`
    pub r: Int,
    pub case: MinusTwoCase,
}

fn sort_minus_two(records: &mut [MinusTwoRecord]) {
    records.sort_by_key(|rec| (rec.r, rec.class.n, rec.class.m));
}

/// The low-degree `(-2)`-classes predicted in closed form for `p`, as
/// `(case, class, r)` with `r` from its formula.
fn minus_two_families(p: &SurfaceParams) -> Vec<(MinusTwoCase, DivisorClass, Int)> {
    let (g, s, d) = (p.g, p.s, p.d);
    let mut out = Vec::new();
    if s == -3 {
        out.push((MinusTwoCase::CMinusH, DivisorClass::new(-1, 1), d - 6));
        if g % 3 == 0 {
            out.push((
                MinusTwoCase::ThirdGenusHMinusC,
                DivisorClass::new(g / 3, -1),
                d - 6,
            ));
        }
    }
    if s >= -1 && g == 4 * s + 16 {
        out.push((
            MinusTwoCase::ShiftedHMinusC,
            DivisorClass::new(s + 4, -1),
            d - 8,
        ));
    }
    if s >= 1 && s.is_odd() && 2 * g == 5 * (s + 5) {
        out.push((
            MinusTwoCase::HalfShiftedHMinusC,
            DivisorClass::new((s + 5) / 2, -1),
            d - 10,
        ));
    }
    out
}

/// Tags an arbitrary `(-2)`-class by family.
pub fn classify_minus_two(p: &SurfaceParams, class: DivisorClass, r: Int) -> MinusTwoCase {
    if let Some((case, _, _)) = minus_two_families(p)
        .into_iter()
        .find(|(_, c, _)| *c == class)
    {
        return case;
    }
    if r >= p.d - 5 {
        MinusTwoCase::HighDegree
    } else {
        MinusTwoCase::Unmatched
    }
}

/// All `(-2)`-classes `F` with `1 <= F.H <= r_max`, by exhaustive search.
///
/// `F^2 = -2` forces `n^2 disc = r^2 + 12`, which bounds `|n|`; for each
/// `(r, n)` the coefficient `m = (r - dn) / 6` must be integral. Each
/// candidate is then checked against the pairing directly.
pub fn minus_two_bruteforce(p: &SurfaceParams, r_max: Int) -> Result<Vec<MinusTwoRecord>> {
    let disc = p.discriminant();
    if disc <= 0 {
        return Err(Error::DegenerateDiscriminant(disc));
    }
    if r_max < 1 {
        return Ok(Vec::new());
    }
    let n_bound =
        Integer::div_floor(&lattice::add(lattice::mul(r_max, r_max)?, 12)?, &disc).isqrt();
    let mut records = Vec::new();
    for r in 1..=r_max {
        // n = 0 would need 3m^2 = -1; the pairing check below rejects it.
        for n in -n_bound..=n_bound {
            let numer = lattice::sub(r, lattice::mul(p.d, n)?)?;
            if numer % 6 != 0 {
                continue;
            }
            let class = DivisorClass::new(numer / 6, n);
            if p.self_int(class)? == -2 {
                debug_assert_eq!(p.intersect(class, DivisorClass::H)?, r);
                records.push(MinusTwoRecord {
                    class,
                    r,
                    case: classify_minus_two(p, class, r),
                });
            }
        }
    }
    sort_minus_two(&mut records);
    Ok(records)
}

/// The `(-2)`-classes with `F.H <= d - 6` given by the closed-form families.
pub fn minus_two_closed_form(p: &SurfaceParams) -> Result<Vec<MinusTwoRecord>> {
    if !p.satisfies(Regime::Base) {
        return Err(Error::PreconditionViolation(
            "(-2)-classification needs the base regime".into(),
        ));
    }
    let mut records = Vec::new();
    for (case, class, r_formula) in minus_two_families(p) {
        let r = p.intersect(class, DivisorClass::H)?;
        if r != r_formula {
            return Err(Error::InternalInconsistency {
                quantity: format!("F.H for F = {class}"),
                closed_form: r_formula,
                pairing: r,
            });
        }
        let sq = p.self_int(class)?;
        if sq != -2 {
            return Err(Error::InternalInconsistency {
                quantity: format!("F^2 for F = {class}"),
                closed_form: -2,
                pairing: sq,
            });
        }
        records.push(MinusTwoRecord { class, r, case });
    }
    sort_minus_two(&mut records);
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropicCase {
    /// `g = 4s + 13`, `E ~ (s+3)H - C`.
    ShiftedHMinusC,
    /// `g = 4s + 13`, `E ~ 3C - 4H`.
    ThreeCMinusFourH,
    /// `s` even, `2g = 5s + 22`, `E ~ ((s+4)/2)H - C`.
    HalfShiftedHMinusC,
    /// `s` even, `2g = 5s + 22`, `E ~ 3C - 5H`.
    ThreeCMinusFiveH,
}

/// A primitive class `E` with `E^2 = 0` and `E.H > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsotropicRecord {
    pub class: DivisorClass,
    pub case: IsotropicCase,
    /// `E.H`
    pub degree: Int,
    /// `t >= 0` with `t^2 = d^2 - 12(g - 1)`.
    pub t: Int,
    /// `b` in `g - s - 6 = t + 2b`.
    pub b: Int,
}

fn isotropic_families(p: &SurfaceParams) -> Vec<(IsotropicCase, DivisorClass)> {
    let s = p.s;
    let mut out = Vec::new();
    if s >= 0 && p.g == 4 * s + 13 {
        out.push((IsotropicCase::ShiftedHMinusC, DivisorClass::new(s + 3, -1)));
        out.push((IsotropicCase::ThreeCMinusFourH, DivisorClass::new(-4, 3)));
    }
    if s >= 4 && s.is_even() && 2 * p.g == 5 * s + 22 {
        out.push((
            IsotropicCase::HalfShiftedHMinusC,
            DivisorClass::new((s + 4) / 2, -1),
        ));
        out.push((IsotropicCase::ThreeCMinusFiveH, DivisorClass::new(-5, 3)));
    }
    out
}

/// Primitive isotropic classes of positive degree.
///
/// `E^2 = 0` has a rational slope `m/n = (-d +- t)/6` only when the
/// discriminant is a square `t^2`; each slope gives one primitive class up
/// to sign, and the sign is fixed by `E.H > 0`.
pub fn isotropic_primitive(p: &SurfaceParams) -> Result<Vec<IsotropicRecord>> {
    if !p.satisfies(Regime::Base) || p.s < -1 {
        return Err(Error::PreconditionViolation(
            "isotropic classification needs the base regime with s ≥ −1".into(),
        ));
    }
    let Some(t) = is_perfect_square(p.discriminant()) else {
        return Ok(Vec::new());
    };
    let b = (p.g - p.s - 6 - t) / 2;
    let families = isotropic_families(p);
    let mut records = Vec::new();
    for numer in [-p.d + t, -p.d - t] {
        let common = numer.gcd(&6);
        let mut class = DivisorClass::new(numer / common, 6 / common);
        let mut degree = p.intersect(class, DivisorClass::H)?;
        if degree < 0 {
            class = -class;
            degree = -degree;
        }
        debug_assert_eq!(p.self_int(class)?, 0);
        if records.iter().any(|r: &IsotropicRecord| r.class == class) {
            continue;
        }
        let case = families
            .iter()
            .find(|(_, c)| *c == class)
            .map(|(case, _)| *case)
            .ok_or(Error::ClassificationMismatch(class))?;
        records.push(IsotropicRecord {
            class,
            case,
            degree,
            t,
            b,
        });
    }
    records.sort_by_key(|r| (r.degree, r.class.n, r.class.m));
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrant {
    /// `m, n >= 0`
    NonNegative,
    /// `m, n <= 0`
    NonPositive,
    /// `m > 0 > n`
    PositiveNegative,
    /// `m < 0 < n`
    NegativePositive,
}

/// One evaluated inequality from the sign-quadrant argument for ampleness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleCheck {
    pub quadrant: Quadrant,
    pub quantity: String,
    pub value: Int,
    /// `true` when `value > 0`, or for the `(C - 2H)^2` check, `value != -2`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleCertificate {
    pub params: SurfaceParams,
    pub verdict: bool,
    pub analytic_cases: Vec<AmpleCheck>,
    pub falsifier_window: Int,
    /// A class with `D.H > 0`, `D^2 >= -2` and `C.D <= 0` inside the window.
    pub counterexample: Option<DivisorClass>,
}

impl AmpleCertificate {
    pub fn analytic_holds(&self) -> bool {
        self.analytic_cases.iter().all(|c| c.holds)
    }
}

fn positive(quadrant: Quadrant, quantity: &str, value: Int) -> AmpleCheck {
    AmpleCheck {
        quadrant,
        quantity: quantity.into(),
        value,
        holds: value > 0,
    }
}

fn ample_analytic(p: &SurfaceParams) -> Result<Vec<AmpleCheck>> {
    let (g, s, d) = (p.g, p.s, p.d);
    let boundary = DivisorClass::new(-2, 1);
    let boundary_sq = p.self_int(boundary)?;
    let boundary_formula = 4 * s - 2 * g + 22;
    if boundary_sq != boundary_formula {
        return Err(Error::InternalInconsistency {
            quantity: "(C-2H)^2".into(),
            closed_form: boundary_formula,
            pairing: boundary_sq,
        });
    }
    Ok(vec![
        positive(Quadrant::NonNegative, "d", d),
        positive(Quadrant::NonNegative, "2g-2", p.curve_square()),
        positive(Quadrant::NonPositive, "d", d),
        positive(
            Quadrant::PositiveNegative,
            "g(g-2s-12)+s^2+12",
            g * (g - 2 * s - 12) + s * s + 12,
        ),
        // m <= -3: n C.D >= -m D.H - 2 >= -m - 2, smallest at m = -3.
        positive(Quadrant::NegativePositive, "-m-2 at m=-3", 1),
        positive(Quadrant::NegativePositive, "g+s-2 (m=-1)", g + s - 2),
        positive(
            Quadrant::NegativePositive,
            "2(g+s-2) (m=-2, n>=2)",
            2 * (g + s - 2),
        ),
        AmpleCheck {
            quadrant: Quadrant::NegativePositive,
            quantity: "(C-2H)^2 (m=-2, n=1)".into(),
            value: boundary_sq,
            holds: boundary_sq != -2,
        },
    ])
}

/// Searches `|m|, |n| <= window` for a candidate irreducible class `D`
/// (`D.H > 0`, `D^2 >= -2`) with `C.D <= 0`. The first hit in `(m, n)`
/// order is returned.
pub fn ample_falsifier(
    p: &SurfaceParams,
    window: Int,
    exec: Execution,
) -> Result<Option<DivisorClass>> {
    let rows: Vec<Int> = (-window..=window).collect();
    let hit = exec.find_map_first(&rows, |&m| {
        (-window..=window).find_map(|n| {
            let class = DivisorClass::new(m, n);
            let check = || -> Result<bool> {
                Ok(!class.is_zero()
                    && p.intersect(class, DivisorClass::H)? > 0
                    && p.self_int(class)? >= -2
                    && p.intersect(class, DivisorClass::C)? <= 0)
            };
            match check() {
                Ok(true) => Some(Ok(class)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        })
    });
    hit.transpose()
}

pub fn ample_certificate(p: &SurfaceParams, window: Int) -> Result<AmpleCertificate> {
    ample_certificate_with(p, window, Execution::default())
}

pub fn ample_certificate_with(
    p: &SurfaceParams,
    window: Int,
    exec: Execution,
) -> Result<AmpleCertificate> {
    if p.g < 2 || p.g + p.s <= 2 {
        return Err(Error::PreconditionViolation(
            "ampleness needs g ≥ 2 and g + s > 2".into(),
        ));
    }
    if window < 1 {
        return Err(Error::PreconditionViolation(
            "falsifier window must be ≥ 1".into(),
        ));
    }
    let analytic_cases = ample_analytic(p)?;
    let counterexample = ample_falsifier(p, window, exec)?;
    let verdict = counterexample.is_none() && analytic_cases.iter().all(|c| c.holds);
    Ok(AmpleCertificate {
        params: *p,
        verdict,
        analytic_cases,
        falsifier_window: window,
        counterexample,
    })
}

/// Both `(-2)` enumerations and the isotropic classification for one
/// parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub params: SurfaceParams,
    /// Search bound `d - 6` used for the brute-force enumeration.
    pub r_max: Int,
    pub minus_two_closed_form: Vec<MinusTwoRecord>,
    pub minus_two_bruteforce: Vec<MinusTwoRecord>,
    pub minus_two_agree: bool,
    /// `None` when `s < -1`, where the isotropic classification does not
    /// apply.
    pub isotropic: Option<Vec<IsotropicRecord>>,
}

pub fn classify(p: &SurfaceParams) -> Result<ClassReport> {
    let r_max = p.d - 6;
    let closed = minus_two_closed_form(p)?;
    let brute = minus_two_bruteforce(p, r_max)?;
    let isotropic = if p.s >= -1 {
        Some(isotropic_primitive(p)?)
    } else {
        None
    };
    Ok(ClassReport {
        params: *p,
        r_max,
        minus_two_agree: closed == brute,
        minus_two_closed_form: closed,
        minus_two_bruteforce: brute,
        isotropic,
    })
}
