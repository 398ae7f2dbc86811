//! JSON form of a point configuration:
//! `{"r": 4, "points": [[1, 0, "1/2"], ...], "seed": 7}`.
//!
//! Coordinates are bare integers or `"a/b"` strings; floats are rejected.
//! `seed` is optional.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{PlanePoint, PointConfig};
use crate::error::{Error, Result};
use crate::exactalg::{parse_rat, Rat};

fn coord_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            let i: BigInt = n.to_string().parse().map_err(|_| Error::Parse(n.to_string()))?;
            Ok(Rat::from_integer(i))
        }
        Value::Number(n) => Err(Error::Parse(format!(
            "bare float coordinate {n}; write rationals as \"a/b\" strings"
        ))),
        Value::String(s) => parse_rat(s),
        other => Err(Error::Parse(format!("invalid coordinate {other}"))),
    }
}

pub(crate) fn rat_to_json(c: &Rat) -> Value {
    if c.is_integer() {
        if let Some(i) = c.numer().to_i64() {
            return json!(i);
        }
    }
    Value::String(c.to_string())
}

impl PointConfig {
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("configuration must be a JSON object".into()))?;
        let r = obj
            .get("r")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing integer field \"r\"".into()))? as usize;
        let pts = obj
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing array field \"points\"".into()))?;
        let points: Vec<PlanePoint> = pts
            .iter()
            .map(|p| {
                let coords = p
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::Parse(format!("point {p} must have 3 coordinates")))?;
                Ok([
                    coord_from_json(&coords[0])?,
                    coord_from_json(&coords[1])?,
                    coord_from_json(&coords[2])?,
                ])
            })
            .collect::<Result<_>>()?;
        let mut cfg = PointConfig::new(r, points)?;
        cfg.seed = match obj.get("seed") {
            None | Some(Value::Null) => None,
            Some(s) => Some(
                s.as_u64()
                    .ok_or_else(|| Error::Parse(format!("invalid seed {s}")))?,
            ),
        };
        Ok(cfg)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_value(&self) -> Value {
        let points: Vec<Value> = self
            .points()
            .iter()
            .map(|p| Value::Array(p.iter().map(rat_to_json).collect()))
            .collect();
        let mut v = json!({ "r": self.r(), "points": points });
        if let Some(seed) = self.seed {
            v["seed"] = json!(seed);
        }
        v
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("JSON values serialize")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::ratio;

    #[test]
    fn parse_mixed_coordinates() {
        let cfg = PointConfig::from_json_str(
            r#"{"r": 3, "points": [[1, 0, 0], ["0", "1/2", 0], [0, 0, "-3/4"]], "seed": 9}"#,
        )
        .unwrap();
        assert_eq!(cfg.r(), 3);
        assert_eq!(cfg.point(2)[1], ratio(1, 1));
        assert_eq!(cfg.seed, Some(9));
        let round = PointConfig::from_json_str(&cfg.to_json_string()).unwrap();
        assert_eq!(round, cfg);
    }

    #[test]
    fn floats_rejected() {
        let err = PointConfig::from_json_str(r#"{"r": 3, "points": [[1.5, 0, 0], [0, 1, 0], [0, 0, 1]]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn fractional_output_is_string() {
        assert_eq!(rat_to_json(&ratio(1, 3)), json!("1/3"));
        assert_eq!(rat_to_json(&ratio(-4, 2)), json!(-2));
    }

    #[test]
    fn malformed() {
        assert!(PointConfig::from_json_str(r#"{"points": []}"#).is_err());
        assert!(PointConfig::from_json_str(r#"{"r": 3, "points": [[1, 0]]}"#).is_err());
        assert!(PointConfig::from_json_str(r#"{"r": 3, "points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "seed": -1}"#).is_err());
    }
}
