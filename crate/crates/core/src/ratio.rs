//! Exact rationals for Clifford-index values, which are half-integers in
//! general.

use num_rational::Ratio;

use crate::lattice::Int;

pub type Rational = Ratio<Int>;

/// Serializes a [`Rational`] as `"p/q"`, or `"p"` when integral.
pub mod as_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(de)?;
        raw.parse().map_err(de::Error::custom)
    }
}
