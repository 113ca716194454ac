//! The Clifford-index optimization over the Picard lattice.
//!
//! A pencil computing `Cliff(C)` restricts from a divisor `D ~ mH + nC` on
//! the surface, and then `Cliff(D|_C) = D.C - D^2 - 2 = f(m, n)`. The
//! classes that can occur are cut out by three integer constraints
//! ([`Constraints`]); this module enumerates them over provably complete
//! bounds and certifies `min f >= floor((g - 1) / 2)`.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{add, mul, sub, DivisorClass, Int, Regime, SurfaceParams};
use crate::par::Execution;
use crate::ratio::{self, Rational};

/// Inputs every certificate depends on without checking them.
pub const ASSUMPTIONS: &[&str] = &[
    "Cliff(C) is computed by a pencil that restricts from a divisor D on S with h0(D) >= 2 and h0(C - D) >= 2",
    "h0(S, D) >= 2 implies D.H >= 3",
];

/// `f(m, n) = -6m^2 + (1 - 2n)dm + (n - n^2)(2g - 2) - 2`.
pub fn f_value(p: &SurfaceParams, m: Int, n: Int) -> Result<Int> {
    let quad = mul(-6, mul(m, m)?)?;
    let cross = mul(mul(sub(1, mul(2, n)?)?, p.d)?, m)?;
    let tail = mul(sub(n, mul(n, n)?)?, p.curve_square())?;
    sub(add(add(quad, cross)?, tail)?, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    /// `3m^2 + mnd + n^2(g - 1) > 0`, i.e. `D^2 > 0`.
    pub positive_square: bool,
    /// `3 <= 6m + nd <= d - 3`, i.e. `D.H >= 3` and `(C - D).H >= 3`.
    pub degree_window: bool,
    /// `md + (2n - 1)(g - 1) <= 0`, i.e. `deg D|_C <= g - 1`.
    pub below_half_canonical: bool,
}

impl Constraints {
    pub fn all(&self) -> bool {
        self.positive_square && self.degree_window && self.below_half_canonical
    }
}

pub fn admissible(p: &SurfaceParams, m: Int, n: Int) -> Result<Constraints> {
    let (d, g1) = (p.d, p.g - 1);
    let square = add(
        add(mul(3, mul(m, m)?)?, mul(mul(m, n)?, d)?)?,
        mul(mul(n, n)?, g1)?,
    )?;
    let degree = add(mul(6, m)?, mul(n, d)?)?;
    let half = add(mul(m, d)?, mul(sub(mul(2, n)?, 1)?, g1)?)?;
    Ok(Constraints {
        positive_square: square > 0,
        degree_window: (3..=d - 3).contains(&degree),
        below_half_canonical: half <= 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissiblePoint {
    pub class: DivisorClass,
    pub f_value: Int,
    pub constraints: Constraints,
}

/// Smallest `k >= 0` with `k * sqrt(disc) >= x`.
fn ceil_div_sqrt(x: Int, disc: Int) -> Result<Int> {
    if x <= 0 {
        return Ok(0);
    }
    let x2 = mul(x, x)?;
    let mut k = (x2 / disc).isqrt();
    while mul(mul(k, k)?, disc)? < x2 {
        k += 1;
    }
    Ok(k)
}

/// A finite box containing every admissible `(m, n)`.
///
/// For `n < 0`, the lower half of the degree window together with the
/// degree bound on `D|_C` gives `|n| disc <= 6(g - 1) - 3d`. For `n > 0`,
/// positivity of `D^2` and `D.H >= 3` force `m/n > -b`, hence
/// `n sqrt(disc) < 6m + nd <= d - 3`. For each `n` the degree window pins
/// `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub n_lo: Int,
    pub n_hi: Int,
    pub d: Int,
}

impl EnumerationBounds {
    pub fn n_range(&self) -> RangeInclusive<Int> {
        self.n_lo..=self.n_hi
    }

    /// `ceil((3 - nd) / 6) ..= floor((d - 3 - nd) / 6)`.
    pub fn m_range(&self, n: Int) -> RangeInclusive<Int> {
        let nd = n * self.d;
        Integer::div_ceil(&(3 - nd), &6)..=Integer::div_floor(&(self.d - 3 - nd), &6)
    }
}

pub fn enumeration_bounds(p: &SurfaceParams) -> Result<EnumerationBounds> {
    let disc = p.discriminant();
    if disc <= 0 {
        return Err(Error::DegenerateDiscriminant(disc));
    }
    let slack = (6 * (p.g - 1) - 3 * p.d).max(0);
    Ok(EnumerationBounds {
        n_lo: -Integer::div_floor(&slack, &disc),
        n_hi: ceil_div_sqrt(p.d - 3, disc)?,
        d: p.d,
    })
}

/// Every admissible point inside [`enumeration_bounds`], ordered by `(n, m)`.
pub fn admissible_points(p: &SurfaceParams) -> Result<Vec<AdmissiblePoint>> {
    let bounds = enumeration_bounds(p)?;
    let mut points = Vec::new();
    for n in bounds.n_range() {
        for m in bounds.m_range(n) {
            let constraints = admissible(p, m, n)?;
            if constraints.all() {
                points.push(AdmissiblePoint {
                    class: DivisorClass::new(m, n),
                    f_value: f_value(p, m, n)?,
                    constraints,
                });
            }
        }
    }
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilMinimum {
    pub f_value: Int,
    /// All minimizers, ordered by `(n, m)`.
    pub argmin: Vec<DivisorClass>,
}

pub fn min_clifford_pencil(p: &SurfaceParams) -> Result<Option<PencilMinimum>> {
    let points = admissible_points(p)?;
    let Some(best) = points.iter().map(|pt| pt.f_value).min() else {
        return Ok(None);
    };
    Ok(Some(PencilMinimum {
        f_value: best,
        argmin: points
            .iter()
            .filter(|pt| pt.f_value == best)
            .map(|pt| pt.class)
            .collect(),
    }))
}

/// The roots `a, b = (d +- sqrt(disc)) / 6` of `6x^2 - 2dx + 2g - 2`,
/// kept symbolically as `(d, disc)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBounds {
    pub d: Int,
    pub disc: Int,
    /// `b > 1`, i.e. `disc < (d - 6)^2` with `d > 6`.
    pub b_above_one: bool,
    /// `b < 2`, i.e. `d < 12` or `disc > (d - 12)^2`.
    pub b_below_two: bool,
}

impl RootBounds {
    pub fn of(p: &SurfaceParams) -> Result<Self> {
        let (d, disc) = (p.d, p.discriminant());
        if disc <= 0 {
            return Err(Error::DegenerateDiscriminant(disc));
        }
        Ok(RootBounds {
            d,
            disc,
            b_above_one: d > 6 && disc < (d - 6) * (d - 6),
            b_below_two: d < 12 || disc > (d - 12) * (d - 12),
        })
    }

    /// `d^2 - disc = 12(g - 1)`, equivalently `6ab = 2g - 2` and `b` solving
    /// the quadratic.
    pub fn is_root_pair_of(&self, p: &SurfaceParams) -> bool {
        self.d == p.d && self.d * self.d - self.disc == 12 * (p.g - 1)
    }

    /// Sign of `6x + d` relative to `sqrt(disc)` for `x = num / den`, `den > 0`.
    fn shifted_cmp(&self, x: Rational) -> (Int, Ordering) {
        let u = 6 * x.numer() + self.d * x.denom();
        let mag = (u * u).cmp(&(x.denom() * x.denom() * self.disc));
        (u, mag)
    }

    /// Compares `x` with `-b = (-d + sqrt(disc)) / 6`.
    pub fn cmp_neg_b(&self, x: Rational) -> Ordering {
        let (u, mag) = self.shifted_cmp(x);
        if u <= 0 {
            Ordering::Less
        } else {
            mag
        }
    }

    /// Compares `x` with `-a = (-d - sqrt(disc)) / 6`.
    pub fn cmp_neg_a(&self, x: Rational) -> Ordering {
        let (u, mag) = self.shifted_cmp(x);
        if u >= 0 {
            Ordering::Greater
        } else {
            mag.reverse()
        }
    }
}

/// Checks `1 < b < 2` exactly.
pub fn root_bounds(p: &SurfaceParams) -> Result<RootBounds> {
    if !p.satisfies(Regime::Base) {
        return Err(Error::RegimeViolation(p.violations(Regime::Base)));
    }
    let roots = RootBounds::of(p)?;
    if !roots.b_above_one {
        return Err(Error::BoundViolation(format!(
            "disc = {} ≥ (d−6)^2 = {}",
            roots.disc,
            (p.d - 6) * (p.d - 6)
        )));
    }
    if !roots.b_below_two {
        return Err(Error::BoundViolation(format!(
            "disc = {} ≤ (d−12)^2 = {}",
            roots.disc,
            (p.d - 12) * (p.d - 12)
        )));
    }
    Ok(roots)
}

/// `gamma(E) = (deg - 2(h0 - rank)) / rank`.
pub fn gamma_of_bundle(rank: Int, degree: Int, h0: Int) -> Result<Rational> {
    if rank < 1 {
        return Err(Error::InvalidRank(rank));
    }
    let numer = sub(degree, mul(2, sub(h0, rank)?)?)?;
    Ok(Rational::new(numer, rank))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCertificate {
    pub params: SurfaceParams,
    /// `floor((g - 1) / 2)`
    pub cliff_max: Int,
    pub admissible_min: Option<PencilMinimum>,
    pub theorem_holds: bool,
    /// `gamma(E)` for the rank-2 bundle of degree `d` with `h0 = 4`.
    #[serde(with = "ratio::as_string")]
    pub gamma_rank2: Rational,
    /// `cliff_max / 2 + 2`, the least value `Cliff_2` can take.
    #[serde(with = "ratio::as_string")]
    pub mercat_lower: Rational,
    /// `gamma_rank2 < cliff_max`
    pub gamma_below_cliff: bool,
    pub cliff2_equal: bool,
    pub roots: RootBounds,
    pub assumptions: Vec<String>,
}

impl CliffordCertificate {
    pub fn passes(&self) -> bool {
        self.theorem_holds && self.gamma_below_cliff
    }
}

/// Builds the certificate without checking the regime.
pub fn clifford_certificate(p: &SurfaceParams) -> Result<CliffordCertificate> {
    let cliff_max = Integer::div_floor(&(p.g - 1), &2);
    let admissible_min = min_clifford_pencil(p)?;
    let theorem_holds = admissible_min
        .as_ref()
        .is_none_or(|min| min.f_value >= cliff_max);
    let gamma_rank2 = gamma_of_bundle(2, p.d, 4)?;
    let mercat_lower = Rational::new(cliff_max, 2) + 2;
    Ok(CliffordCertificate {
        params: *p,
        cliff_max,
        admissible_min,
        theorem_holds,
        gamma_rank2,
        mercat_lower,
        gamma_below_cliff: gamma_rank2 < Rational::from_integer(cliff_max),
        cliff2_equal: gamma_rank2 == mercat_lower,
        roots: RootBounds::of(p)?,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn verify_theorem31(p: &SurfaceParams) -> Result<CliffordCertificate> {
    let failed = p.violations(Regime::Theorem);
    if !failed.is_empty() {
        return Err(Error::RegimeViolation(failed));
    }
    clifford_certificate(p)
}

/// Certificates for a parameter grid, in input order.
pub fn sweep_theorem(
    params: &[SurfaceParams],
    exec: Execution,
) -> Vec<Result<CliffordCertificate>> {
    exec.map(params, verify_theorem31)
}

/// The offset `s = floor((g - 14) / 2)` that makes the rank-2 bound meet
/// the lower bound.
pub fn optimal_offset(g: Int) -> Int {
    Integer::div_floor(&(g - 14), &2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessRecord {
    Verified {
        gamma: Int,
        params: SurfaceParams,
        certificate: Box<CliffordCertificate>,
    },
    /// The genus is outside the lattice construction and rests on a result
    /// proved elsewhere.
    ExternalResultRequired {
        gamma: Int,
        genus: Int,
        reason: String,
    },
}

impl WitnessRecord {
    pub fn genus(&self) -> Int {
        match self {
            WitnessRecord::Verified { params, .. } => params.g,
            WitnessRecord::ExternalResultRequired { genus, .. } => *genus,
        }
    }

    /// The certificate passes, has `Cliff(C) = gamma`, and the rank-2 value
    /// equals `gamma / 2 + 2`.
    pub fn is_verified(&self) -> bool {
        match self {
            WitnessRecord::Verified {
                gamma, certificate, ..
            } => {
                certificate.passes()
                    && certificate.cliff_max == *gamma
                    && certificate.cliff2_equal
                    && certificate.gamma_rank2 == Rational::new(*gamma, 2) + 2
            }
            WitnessRecord::ExternalResultRequired { .. } => false,
        }
    }
}

fn witness_at_genus(gamma: Int, genus: Int) -> Result<WitnessRecord> {
    let s = optimal_offset(genus);
    match SurfaceParams::theorem(genus, s) {
        Ok(params) => Ok(WitnessRecord::Verified {
            gamma,
            params,
            certificate: Box::new(verify_theorem31(&params)?),
        }),
        Err(Error::RegimeViolation(_)) => Ok(WitnessRecord::ExternalResultRequired {
            gamma,
            genus,
            reason: format!(
                "genus {genus} lies below the lattice construction (s = {s}); \
                 the equality there is a separate known result"
            ),
        }),
        Err(e) => Err(e),
    }
}

/// Witness curves of genus `2 gamma + 1` and `2 gamma + 2`.
pub fn witness_for_gamma(gamma: Int) -> Result<[WitnessRecord; 2]> {
    if gamma < 5 {
        return Err(Error::GammaTooSmall(gamma));
    }
    Ok([
        witness_at_genus(gamma, 2 * gamma + 1)?,
        witness_at_genus(gamma, 2 * gamma + 2)?,
    ])
}
