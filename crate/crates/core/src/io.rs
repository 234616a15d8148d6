//! The stacky-fan JSON file format and exact-rational JSON encoding.
//!
//! ```json
//! {"name": "football", "rank": 1, "torsion": [],
//!  "rays": [{"beta_free": [1], "beta_torsion": []},
//!           {"beta_free": [-2], "beta_torsion": []}],
//!  "max_cones": [[0], [1]]}
//! ```
//!
//! Rationals are written as `{"num": "-3", "den": "2"}` with decimal
//! strings, never as floats.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::{AbelianGroupSpec, NElement, StackyFan};
use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub beta_free: Vec<i64>,
    #[serde(default)]
    pub beta_torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanFile {
    #[serde(default)]
    pub name: String,
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    pub rays: Vec<RayEntry>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_fan(self) -> Result<StackyFan> {
        let group = AbelianGroupSpec::new(self.rank, self.torsion)?;
        let rays = self
            .rays
            .iter()
            .enumerate()
            .map(|(i, r)| {
                NElement::from_i64(&group, &r.beta_free, &r.beta_torsion)
                    .map_err(|e| Error::Malformed(format!("ray {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        StackyFan::new(self.name, group, rays, self.max_cones)
    }

    pub fn from_fan(fan: &StackyFan) -> Result<Self> {
        let to_i64 = |x: &BigInt| {
            i64::try_from(x).map_err(|_| Error::Malformed(format!("coordinate {x} exceeds i64")))
        };
        let rays = fan
            .rays
            .iter()
            .map(|r| {
                Ok(RayEntry {
                    beta_free: r.free.iter().map(to_i64).collect::<Result<_>>()?,
                    beta_torsion: r.torsion.iter().map(|&t| t as i64).collect(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(FanFile {
            name: fan.name.clone(),
            rank: fan.group.rank,
            torsion: fan.group.torsion_orders.clone(),
            rays,
            max_cones: fan.max_cones.clone(),
        })
    }
}

pub fn parse_fan(text: &str) -> Result<StackyFan> {
    FanFile::parse(text)?.into_fan()
}

pub fn rational_json(x: &Scalar) -> Value {
    json!({"num": x.numer().to_string(), "den": x.denom().to_string()})
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn rational_from_json(v: &Value) -> Result<Scalar> {
    let field = |k: &str| -> Result<BigInt> {
        v.get(k)
            .and_then(Value::as_str)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("rational needs a decimal string field '{k}'")))
    };
    let den = field("den")?;
    if den <= BigInt::from(0) {
        return Err(Error::Parse("rational denominator must be positive".into()));
    }
    Ok(Scalar::new(field("num")?, den))
}
