//! The Picard lattice `Pic(S) = ZH + ZC` with Gram matrix
//! `[[6, d], [d, 2g - 2]]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = i128;

/// Largest accepted `|g|` and `|s|`. Keeps `d`, `2g - 2` and the
/// discriminant well inside `i128`.
pub const PARAM_LIMIT: Int = 1 << 60;

pub(crate) fn mul(a: Int, b: Int) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn add(a: Int, b: Int) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn sub(a: Int, b: Int) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `d = g - s > 0`, `g >= 0`, `g >= 2s + 13`, `(d, g) != (7, 4)`.
    Base,
    /// `s >= -1`, `g >= 2s + 14`. Implies [`Regime::Base`].
    Theorem,
    /// No inequality enforced; used for boundary experiments.
    Unconstrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeCondition {
    DegreePositive,
    GenusNonNegative,
    GenusAtLeast2sPlus13,
    NotExcludedPair,
    OffsetAtLeastMinusOne,
    GenusAtLeast2sPlus14,
}

impl fmt::Display for RegimeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeCondition::DegreePositive => "d > 0",
            RegimeCondition::GenusNonNegative => "g ≥ 0",
            RegimeCondition::GenusAtLeast2sPlus13 => "g ≥ 2s+13",
            RegimeCondition::NotExcludedPair => "(d,g) ≠ (7,4)",
            RegimeCondition::OffsetAtLeastMinusOne => "s ≥ −1",
            RegimeCondition::GenusAtLeast2sPlus14 => "g ≥ 2s+14",
        })
    }
}

/// The integer data `(g, s, d = g - s)` that fixes the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceParams {
    pub g: Int,
    pub s: Int,
    pub d: Int,
    /// The regime that was validated at construction.
    pub regime: Regime,
}

impl SurfaceParams {
    /// Validates `(g, s)` against `regime`, reporting every failed condition.
    pub fn new(g: Int, s: Int, regime: Regime) -> Result<Self> {
        if g.abs() > PARAM_LIMIT || s.abs() > PARAM_LIMIT {
            return Err(Error::ParamsOutOfRange { limit: PARAM_LIMIT });
        }
        let params = SurfaceParams {
            g,
            s,
            d: g - s,
            regime,
        };
        let failed = params.violations(regime);
        if failed.is_empty() {
            Ok(params)
        } else {
            Err(Error::RegimeViolation(failed))
        }
    }

    pub fn base(g: Int, s: Int) -> Result<Self> {
        Self::new(g, s, Regime::Base)
    }

    pub fn theorem(g: Int, s: Int) -> Result<Self> {
        Self::new(g, s, Regime::Theorem)
    }

    pub fn unconstrained(g: Int, s: Int) -> Result<Self> {
        Self::new(g, s, Regime::Unconstrained)
    }

    /// Conditions of `regime` that these numbers fail, whatever regime they
    /// were constructed under.
    pub fn violations(&self, regime: Regime) -> Vec<RegimeCondition> {
        let (g, s, d) = (self.g, self.s, self.d);
        let checks: &[(bool, RegimeCondition)] = match regime {
            Regime::Base => &[
                (d > 0, RegimeCondition::DegreePositive),
                (g >= 0, RegimeCondition::GenusNonNegative),
                (g >= 2 * s + 13, RegimeCondition::GenusAtLeast2sPlus13),
                ((d, g) != (7, 4), RegimeCondition::NotExcludedPair),
            ],
            Regime::Theorem => &[
                (s >= -1, RegimeCondition::OffsetAtLeastMinusOne),
                (g >= 2 * s + 14, RegimeCondition::GenusAtLeast2sPlus14),
            ],
            Regime::Unconstrained => &[],
        };
        checks
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|&(_, cond)| cond)
            .collect()
    }

    pub fn satisfies(&self, regime: Regime) -> bool {
        self.violations(regime).is_empty()
    }

    /// `C^2 = 2g - 2`.
    pub fn curve_square(&self) -> Int {
        2 * self.g - 2
    }

    /// `d^2 - 12(g - 1)`, the discriminant of `6x^2 - 2dx + 2g - 2`.
    pub fn discriminant(&self) -> Int {
        self.d * self.d - 12 * (self.g - 1)
    }

    /// `6 m1 m2 + d (m1 n2 + m2 n1) + (2g - 2) n1 n2`.
    pub fn intersect(&self, a: DivisorClass, b: DivisorClass) -> Result<Int> {
        let hh = mul(6, mul(a.m, b.m)?)?;
        let hc = mul(self.d, add(mul(a.m, b.n)?, mul(b.m, a.n)?)?)?;
        let cc = mul(self.curve_square(), mul(a.n, b.n)?)?;
        add(add(hh, hc)?, cc)
    }

    pub fn self_int(&self, class: DivisorClass) -> Result<Int> {
        self.intersect(class, class)
    }

    /// Riemann–Roch `chi(D) = D^2 / 2 + 2`, defined for every class.
    pub fn chi(&self, class: DivisorClass) -> Result<Int> {
        let sq = self.self_int(class)?;
        debug_assert_eq!(sq % 2, 0, "odd square in an even lattice");
        add(sq / 2, 2)
    }
}

/// A divisor class `mH + nC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorClass {
    pub m: Int,
    pub n: Int,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { m: 0, n: 0 };
    /// The hyperplane class.
    pub const H: DivisorClass = DivisorClass { m: 1, n: 0 };
    /// The curve class.
    pub const C: DivisorClass = DivisorClass { m: 0, n: 1 };

    pub const fn new(m: Int, n: Int) -> Self {
        DivisorClass { m, n }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(DivisorClass::new(add(self.m, rhs.m)?, add(self.n, rhs.n)?))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(DivisorClass::new(sub(self.m, rhs.m)?, sub(self.n, rhs.n)?))
    }

    pub fn checked_scale(self, k: Int) -> Result<Self> {
        Ok(DivisorClass::new(mul(k, self.m)?, mul(k, self.n)?))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

// The operator impls panic on overflow rather than wrap.

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("divisor class overflow")
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("divisor class overflow")
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        self.checked_scale(-1).expect("divisor class overflow")
    }
}

impl Mul<DivisorClass> for Int {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.checked_scale(self).expect("divisor class overflow")
    }
}
